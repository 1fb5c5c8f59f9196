#![allow(dead_code)]

use std::collections::BTreeSet;

use posets::arrangement::{Arrangement, Hyperplane};
use posets::linalg::Rational;
use posets::monomial::{minimalize, parse_monomial, MonomialIdeal};
use posets::{Label, Poset};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// `A = {x+y, x, x−y, y+1}` in the plane.
pub fn sample_arrangement() -> Arrangement {
    Arrangement::new(
        2,
        vec![
            Hyperplane::from_i64(&[1, 1], 0),
            Hyperplane::from_i64(&[1, 0], 0),
            Hyperplane::from_i64(&[1, -1], 0),
            Hyperplane::from_i64(&[0, 1], 1),
        ],
    )
    .unwrap()
}

pub fn sample_ideal_vars() -> Vec<String> {
    ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect()
}

/// `M = (a³b²c, a³b²d, a²cd, abc²d, b²c²d)`.
pub fn sample_ideal() -> MonomialIdeal {
    let vars = sample_ideal_vars();
    let gens = [
        "a^3*b^2*c",
        "a^3*b^2*d",
        "a^2*c*d",
        "a*b*c^2*d",
        "b^2*c^2*d",
    ]
    .iter()
    .map(|g| parse_monomial(&vars, g).unwrap())
    .collect();
    minimalize(vars, gens).unwrap()
}

/// Divisors of 12 from an explicit divisibility table.
pub fn divisor12_by_hand() -> Poset {
    let ds = [1u32, 2, 3, 4, 6, 12];
    let mut pairs = Vec::new();
    for &a in &ds {
        for &b in &ds {
            if b % a == 0 {
                pairs.push((a.to_string(), b.to_string()));
            }
        }
    }
    Poset::from_relations(ds.iter().map(|d| d.to_string()), pairs).unwrap()
}

/// Random poset: a random DAG on `0..n` (edges only upward), closed.
pub fn random_poset(rng: &mut StdRng, n: usize, density: f64) -> Poset {
    let labels: Vec<String> = (0..n).map(|i| format!("e{i:02}")).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(density) {
                pairs.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    // Shuffle label order relative to the DAG order so indices and order disagree.
    let mut names = labels.clone();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        names.swap(i, j);
    }
    let rename = |s: &String| names[labels.iter().position(|l| l == s).unwrap()].clone();
    let pairs: Vec<(String, String)> = pairs.iter().map(|(a, b)| (rename(a), rename(b))).collect();
    Poset::from_relations(names.clone(), pairs).unwrap()
}

/// Seeded corpus of posets with up to `max_n` elements.
pub fn poset_corpus(seed: u64, count: usize, max_n: usize) -> Vec<Poset> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = vec![
        Poset::empty(),
        Poset::chain(1),
        Poset::chain(5),
        Poset::antichain(4),
        Poset::boolean_lattice(3),
        divisor12_by_hand(),
    ];
    for _ in 0..count {
        let n = rng.gen_range(0..=max_n);
        let density = rng.gen_range(0.05..0.6);
        out.push(random_poset(&mut rng, n, density));
    }
    out
}

/// Relation matrix under a permutation, used for isomorphism-class dedup.
fn relation_key(p: &Poset, perm: &[usize]) -> Vec<bool> {
    let n = p.len();
    let mut key = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            key.push(p.leq_idx(perm[i], perm[j]));
        }
    }
    key
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative of every isomorphism class of posets on `n` elements.
pub fn all_posets(n: usize) -> Vec<Poset> {
    let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0..(1u32 << slots.len()) {
        let pairs: Vec<(String, String)> = slots
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &(i, j))| (labels[i].clone(), labels[j].clone()))
            .collect();
        let p = Poset::from_relations(labels.clone(), pairs).unwrap();
        let canonical = perms
            .iter()
            .map(|perm| relation_key(&p, perm))
            .min()
            .unwrap();
        if seen.insert(canonical) {
            out.push(p);
        }
    }
    out
}

/// Largest antichain by trying every subset.
pub fn brute_force_width(p: &Poset) -> usize {
    let n = p.len();
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let ok = members.iter().enumerate().all(|(k, &a)| {
            members[k + 1..]
                .iter()
                .all(|&b| !p.leq_idx(a, b) && !p.leq_idx(b, a))
        });
        if ok {
            best = best.max(members.len());
        }
    }
    best
}

pub fn labels_of(v: &[Label]) -> Vec<&str> {
    v.iter().map(Label::as_str).collect()
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn sample_points(mut cuts: Vec<Rational>) -> Vec<Rational> {
    cuts.sort();
    cuts.dedup();
    if cuts.is_empty() {
        return vec![q(0)];
    }
    let mut out = vec![&cuts[0] - q(1)];
    for w in cuts.windows(2) {
        out.push((&w[0] + &w[1]) / q(2));
    }
    out.push(cuts.last().unwrap() + q(1));
    out
}

/// Regions of a line arrangement `a·x + b·y + c = 0`, counted as distinct
/// sign vectors over sample points chosen strictly inside every cell.
///
/// Sample columns sit between consecutive x-coordinates of crossings and
/// vertical lines; on each column, sample rows sit between consecutive line
/// heights. Every open convex cell meets one of these points.
pub fn sign_vector_regions(lines: &[(i64, i64, i64)]) -> usize {
    let mut xs = Vec::new();
    for (k, &(a1, b1, c1)) in lines.iter().enumerate() {
        if b1 == 0 {
            xs.push(Rational::new((-c1).into(), a1.into()));
        }
        for &(a2, b2, c2) in &lines[k + 1..] {
            let det = a1 * b2 - a2 * b1;
            if det != 0 {
                xs.push(Rational::new((b1 * c2 - b2 * c1).into(), det.into()));
            }
        }
    }
    let mut signs = BTreeSet::new();
    for x in sample_points(xs) {
        let ys: Vec<Rational> = lines
            .iter()
            .filter(|l| l.1 != 0)
            .map(|&(a, b, c)| -(q(a) * &x + q(c)) / q(b))
            .collect();
        for y in sample_points(ys) {
            let v: Vec<bool> = lines
                .iter()
                .map(|&(a, b, c)| {
                    let value = q(a) * &x + q(b) * &y + q(c);
                    assert_ne!(value, q(0), "sample point landed on a line");
                    value > q(0)
                })
                .collect();
            signs.insert(v);
        }
    }
    signs.len()
}

/// Random line arrangement with small integer coefficients; retries until
/// the lines are valid and pairwise distinct.
pub fn random_lines(rng: &mut StdRng, count: usize) -> (Vec<(i64, i64, i64)>, Arrangement) {
    loop {
        let lines: Vec<(i64, i64, i64)> = (0..count)
            .map(|_| {
                (
                    rng.gen_range(-3..=3),
                    rng.gen_range(-3..=3),
                    rng.gen_range(-3..=3),
                )
            })
            .collect();
        let hs = lines
            .iter()
            .map(|&(a, b, c)| Hyperplane::from_i64(&[a, b], c))
            .collect();
        if let Ok(arr) = Arrangement::new(2, hs) {
            return (lines, arr);
        }
    }
}

/// Random affine arrangement in dimension `dim`.
pub fn random_arrangement(rng: &mut StdRng, dim: usize, count: usize) -> Vec<Hyperplane> {
    let mut out: Vec<Hyperplane> = Vec::new();
    while out.len() < count {
        let normal: Vec<i64> = (0..dim).map(|_| rng.gen_range(-2..=2)).collect();
        let h = Hyperplane::from_i64(&normal, rng.gen_range(-2..=2));
        let mut candidate = out.clone();
        candidate.push(h.clone());
        if Arrangement::new(dim, candidate).is_ok() {
            out.push(h);
        }
    }
    out
}
