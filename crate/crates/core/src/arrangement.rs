//! Affine hyperplane arrangements over the rationals and their intersection
//! semilattices.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, rref_is_inconsistent, Rational, RationalMatrix};
use crate::order::{adjoin_max, moebius_table};
use crate::poset::{Label, Poset};

/// `{x : normal · x + constant = 0}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    pub normal: Vec<Rational>,
    pub constant: Rational,
}

impl Hyperplane {
    pub fn new(normal: Vec<Rational>, constant: Rational) -> Self {
        Hyperplane { normal, constant }
    }

    pub fn from_i64(normal: &[i64], constant: i64) -> Self {
        Hyperplane {
            normal: normal
                .iter()
                .map(|&a| Rational::from_integer(a.into()))
                .collect(),
            constant: Rational::from_integer(constant.into()),
        }
    }

    /// The row `[normal | constant]`.
    pub fn row(&self) -> Vec<Rational> {
        let mut r = self.normal.clone();
        r.push(self.constant.clone());
        r
    }

    /// Scales so the first nonzero coefficient is 1; `None` for a zero normal.
    fn normalized(&self) -> Option<Hyperplane> {
        let lead = self.normal.iter().find(|a| !a.is_zero())?.clone();
        Some(Hyperplane {
            normal: self.normal.iter().map(|a| a / &lead).collect(),
            constant: &self.constant / &lead,
        })
    }

    /// Value of `normal · x + constant` at `x`.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        self.normal
            .iter()
            .zip(point)
            .fold(self.constant.clone(), |acc, (a, x)| acc + a * x)
    }
}

/// A finite list of distinct affine hyperplanes in `ℚ^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    /// Normalizes each hyperplane; rejects zero normals and repeats.
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        let mut seen: HashMap<Hyperplane, usize> = HashMap::new();
        let mut normalized = Vec::with_capacity(hyperplanes.len());
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.normal.len() != dim {
                return Err(Error::ShapeMismatch(format!(
                    "hyperplane {i} has {} coefficients in dimension {dim}",
                    h.normal.len()
                )));
            }
            let h = h.normalized().ok_or(Error::ZeroNormal(i))?;
            if let Some(&j) = seen.get(&h) {
                return Err(Error::DuplicateHyperplane(j, i));
            }
            seen.insert(h.clone(), i);
            normalized.push(h);
        }
        Ok(Arrangement {
            dim,
            hyperplanes: normalized,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    /// Dimension of the span of the normals.
    pub fn rank(&self) -> usize {
        let rows = self.hyperplanes.iter().map(|h| h.normal.clone()).collect();
        RationalMatrix::from_rows(rows, self.dim)
            .expect("normals share the ambient dimension")
            .rank()
    }

    /// A copy with one more hyperplane.
    pub fn with(&self, h: Hyperplane) -> Result<Arrangement> {
        let mut hs = self.hyperplanes.clone();
        hs.push(h);
        Arrangement::new(self.dim, hs)
    }
}

/// A nonempty affine subspace cut out by some of the hyperplanes, stored as
/// the canonical RREF of its augmented equation system.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Flat {
    system: RationalMatrix,
    label: Label,
}

impl Flat {
    /// The whole space, the bottom of the intersection semilattice.
    pub fn ambient(dim: usize) -> Flat {
        Flat::from_basis(RationalMatrix::zeros(0, dim + 1))
    }

    fn from_basis(system: RationalMatrix) -> Flat {
        let label = Label::new(system.fingerprint());
        Flat { system, label }
    }

    /// Reduces `rows` (augmented `[normal | constant]`) to a flat, or `None`
    /// if the system has no solution.
    fn from_equations(rows: RationalMatrix) -> Option<Flat> {
        let rref = rows.rref();
        if rref_is_inconsistent(&rref) {
            return None;
        }
        Some(Flat::from_basis(rows.row_space_basis()))
    }

    pub fn system(&self) -> &RationalMatrix {
        &self.system
    }

    pub fn codim(&self) -> usize {
        self.system.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.system.cols() - 1
    }

    pub fn label(&self) -> &Label {
        &self.label
    }

    /// Human-readable equations, e.g. `x1 + x2 = 0, x2 = -1`.
    pub fn equations(&self) -> String {
        if self.codim() == 0 {
            return "ambient".to_owned();
        }
        let n = self.ambient_dim();
        (0..self.codim())
            .map(|i| {
                let row = self.system.row(i);
                let mut terms = String::new();
                for (j, a) in row[..n].iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let neg = a < &Rational::zero();
                    let mag = if neg { -a.clone() } else { a.clone() };
                    let coeff = if mag.is_one() {
                        String::new()
                    } else {
                        format_rational(&mag)
                    };
                    if terms.is_empty() {
                        terms.push_str(if neg { "-" } else { "" });
                    } else {
                        terms.push_str(if neg { " - " } else { " + " });
                    }
                    terms.push_str(&format!("{coeff}x{}", j + 1));
                }
                format!("{terms} = {}", format_rational(&-row[n].clone()))
            })
            .collect::<Vec<_>>()
            .join(", ")
    }

    fn intersect(&self, h: &Hyperplane) -> Option<Flat> {
        let row = RationalMatrix::from_rows(vec![h.row()], self.system.cols())
            .expect("hyperplane matches flat dimension");
        Flat::from_equations(self.system.vstack(&row).expect("same width"))
    }
}

/// The intersection of the hyperplanes indexed by `subset`, if nonempty.
pub fn flat_of(arrangement: &Arrangement, subset: &[usize]) -> Result<Option<Flat>> {
    let rows = subset
        .iter()
        .map(|&i| {
            arrangement
                .hyperplanes
                .get(i)
                .map(Hyperplane::row)
                .ok_or(Error::IndexOutOfRange(i))
        })
        .collect::<Result<Vec<_>>>()?;
    let m = RationalMatrix::from_rows(rows, arrangement.dim + 1)?;
    Ok(Flat::from_equations(m))
}

/// `F ⪯ G` in the intersection semilattice, i.e. `G ⊆ F` as point sets.
pub fn flat_leq(f: &Flat, g: &Flat) -> Result<bool> {
    if f.system.cols() != g.system.cols() {
        return Err(Error::ShapeMismatch(format!(
            "flats in dimensions {} and {}",
            f.ambient_dim(),
            g.ambient_dim()
        )));
    }
    Ok(f.system.vstack(&g.system)?.rank() == g.codim())
}

/// The intersection semilattice together with the flat behind each element.
#[derive(Debug, Clone)]
pub struct IntersectionLattice {
    poset: Poset,
    /// `flats[i]` is the flat at poset index `i`.
    flats: Vec<Flat>,
}

impl IntersectionLattice {
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn flat(&self, i: usize) -> &Flat {
        &self.flats[i]
    }

    pub fn bottom(&self) -> usize {
        self.flats
            .iter()
            .position(|f| f.codim() == 0)
            .expect("ambient flat is always present")
    }

    /// `|μ(0̂, x)|` for every element `x`.
    pub fn abs_moebius_from_bottom(&self) -> Result<Vec<u64>> {
        let table = moebius_table(&self.poset)?;
        Ok(table
            .row(self.bottom())
            .into_iter()
            .map(i64::unsigned_abs)
            .collect())
    }
}

/// All nonempty flats, ordered by reverse inclusion.
///
/// Closure: start from the ambient space and intersect every new flat with
/// every hyperplane until nothing new appears.
pub fn intersection_lattice(arrangement: &Arrangement) -> Result<IntersectionLattice> {
    let mut flats = vec![Flat::ambient(arrangement.dim)];
    let mut seen: HashMap<Label, usize> = HashMap::new();
    seen.insert(flats[0].label.clone(), 0);
    let mut next = 0;
    while next < flats.len() {
        let current = flats[next].clone();
        for h in &arrangement.hyperplanes {
            if let Some(f) = current.intersect(h) {
                if !seen.contains_key(&f.label) {
                    seen.insert(f.label.clone(), flats.len());
                    flats.push(f);
                }
            }
        }
        next += 1;
    }
    let n = flats.len();
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            leq[i][j] = flat_leq(&flats[i], &flats[j])?;
        }
    }
    let labels: Vec<Label> = flats.iter().map(|f| f.label.clone()).collect();
    let poset = Poset::from_order(labels, |i, j| leq[i][j])?;
    let flats: Vec<Flat> = poset
        .labels()
        .iter()
        .map(|l| flats[seen[l]].clone())
        .collect();
    let heights = poset.heights();
    if let Some(i) = (0..n).find(|&i| heights[i] != flats[i].codim()) {
        return Err(Error::Invariant(format!(
            "flat {} has height {} but codimension {}",
            flats[i].label,
            heights[i],
            flats[i].codim()
        )));
    }
    Ok(IntersectionLattice { poset, flats })
}

/// True iff all hyperplanes share a common point.
pub fn is_central(arrangement: &Arrangement) -> bool {
    let all: Vec<usize> = (0..arrangement.len()).collect();
    flat_of(arrangement, &all)
        .expect("indices in range")
        .is_some()
}

/// Number of regions of `ℝ^n ∖ ⋃A`: `Σ_x |μ(0̂, x)|`.
pub fn real_regions(arrangement: &Arrangement) -> Result<u64> {
    Ok(intersection_lattice(arrangement)?
        .abs_moebius_from_bottom()?
        .into_iter()
        .sum())
}

/// `|μ(0̂, 1̂)|` after adjoining a top element to the intersection semilattice.
///
/// This counts bounded regions for essential arrangements; otherwise it
/// counts regions bounded relative to the lineality space.
pub fn bounded_regions(arrangement: &Arrangement) -> Result<u64> {
    let lattice = intersection_lattice(arrangement)?;
    let bottom = lattice.poset.label(lattice.bottom()).clone();
    let top_label = "top";
    let extended = adjoin_max(&lattice.poset, top_label)?;
    let table = moebius_table(&extended)?;
    let mu = table
        .get_by_label(bottom.as_str(), top_label)?
        .ok_or_else(|| Error::Invariant("adjoined top is not above 0̂".into()))?;
    Ok(mu.unsigned_abs())
}

/// `β_i = Σ_{codim x = i} |μ(0̂, x)|` for `i = 0 ..= rank A`.
pub fn complement_betti(arrangement: &Arrangement) -> Result<Vec<u64>> {
    let lattice = intersection_lattice(arrangement)?;
    let mu = lattice.abs_moebius_from_bottom()?;
    let mut betti = vec![0u64; arrangement.rank() + 1];
    for (flat, m) in lattice.flats.iter().zip(mu) {
        let slot = betti
            .get_mut(flat.codim())
            .ok_or_else(|| Error::Invariant("flat codimension exceeds rank".into()))?;
        *slot += m;
    }
    Ok(betti)
}
