//! Möbius functions, lattice operations, order ideals and distributive lattices.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{Label, Poset};

/// Möbius values `μ(a, b)` for every comparable pair `a ⪯ b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoebiusTable {
    labels: Vec<Label>,
    /// Dense by index; `None` where `a ⋠ b`.
    values: Vec<Vec<Option<i64>>>,
}

impl MoebiusTable {
    pub fn get(&self, a: usize, b: usize) -> Option<i64> {
        self.values[a][b]
    }

    pub fn get_by_label(&self, a: &str, b: &str) -> Result<Option<i64>> {
        let find = |s: &str| {
            self.labels
                .binary_search_by(|l| l.as_str().cmp(s))
                .map_err(|_| Error::UnknownElement(s.to_owned()))
        };
        Ok(self.values[find(a)?][find(b)?])
    }

    /// Row `a` as a dense integer vector, zero where undefined.
    pub fn row(&self, a: usize) -> Vec<i64> {
        self.values[a].iter().map(|v| v.unwrap_or(0)).collect()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// All defined entries as `(a, b, μ(a,b))`.
    pub fn entries(&self) -> impl Iterator<Item = (&Label, &Label, i64)> + '_ {
        self.values.iter().enumerate().flat_map(move |(i, row)| {
            row.iter()
                .enumerate()
                .filter_map(move |(j, v)| v.map(|m| (&self.labels[i], &self.labels[j], m)))
        })
    }
}

/// `μ(a, ·)` over the principal filter of `a`, indexed by element.
fn moebius_row(p: &Poset, a: usize, order: &[usize]) -> Result<Vec<Option<i64>>> {
    let n = p.len();
    let mut row: Vec<Option<i64>> = vec![None; n];
    row[a] = Some(1);
    for &z in order {
        if z == a || !p.leq_idx(a, z) {
            continue;
        }
        let mut sum: i64 = 0;
        for (y, entry) in row.iter().enumerate() {
            if y != z && p.leq_idx(a, y) && p.leq_idx(y, z) {
                let v = entry.ok_or_else(|| {
                    Error::Invariant("linear extension visited an element too early".into())
                })?;
                sum = sum
                    .checked_add(v)
                    .ok_or(Error::Overflow("Möbius function"))?;
            }
        }
        row[z] = Some(
            sum.checked_neg()
                .ok_or(Error::Overflow("Möbius function"))?,
        );
    }
    Ok(row)
}

/// `μ(a, b)` by the defining recursion `μ(a,b) = −Σ_{a⪯z≺b} μ(a,z)`.
pub fn moebius(p: &Poset, a: &str, b: &str) -> Result<i64> {
    let i = p.index_of(a)?;
    let j = p.index_of(b)?;
    if !p.leq_idx(i, j) {
        return Err(Error::NotComparable(a.to_owned(), b.to_owned()));
    }
    let interval: Vec<usize> = p
        .linear_extension()
        .into_iter()
        .filter(|&z| p.leq_idx(i, z) && p.leq_idx(z, j))
        .collect();
    let row = moebius_row(p, i, &interval)?;
    row[j].ok_or_else(|| Error::Invariant("Möbius value missing".into()))
}

pub fn moebius_table(p: &Poset) -> Result<MoebiusTable> {
    let order = p.linear_extension();
    let values = (0..p.len())
        .map(|a| moebius_row(p, a, &order))
        .collect::<Result<Vec<_>>>()?;
    Ok(MoebiusTable {
        labels: p.labels().to_vec(),
        values,
    })
}

fn bound_idx(p: &Poset, i: usize, j: usize, lower: bool) -> Option<usize> {
    let n = p.len();
    let common: Vec<usize> = if lower {
        (0..n)
            .filter(|&z| p.leq_idx(z, i) && p.leq_idx(z, j))
            .collect()
    } else {
        (0..n)
            .filter(|&z| p.leq_idx(i, z) && p.leq_idx(j, z))
            .collect()
    };
    common.iter().copied().find(|&c| {
        common.iter().all(|&d| {
            if lower {
                p.leq_idx(d, c)
            } else {
                p.leq_idx(c, d)
            }
        })
    })
}

pub fn meet_idx(p: &Poset, i: usize, j: usize) -> Option<usize> {
    bound_idx(p, i, j, true)
}

pub fn join_idx(p: &Poset, i: usize, j: usize) -> Option<usize> {
    bound_idx(p, i, j, false)
}

/// Greatest lower bound of `a` and `b`, if one exists.
pub fn meet(p: &Poset, a: &str, b: &str) -> Result<Option<Label>> {
    let (i, j) = (p.index_of(a)?, p.index_of(b)?);
    Ok(meet_idx(p, i, j).map(|k| p.label(k).clone()))
}

/// Least upper bound of `a` and `b`, if one exists.
pub fn join(p: &Poset, a: &str, b: &str) -> Result<Option<Label>> {
    let (i, j) = (p.index_of(a)?, p.index_of(b)?);
    Ok(join_idx(p, i, j).map(|k| p.label(k).clone()))
}

/// True iff every pair has a meet and a join (vacuously true when empty).
pub fn is_lattice(p: &Poset) -> bool {
    let n = p.len();
    (0..n).all(|i| (i + 1..n).all(|j| meet_idx(p, i, j).is_some() && join_idx(p, i, j).is_some()))
}

fn adjoin(p: &Poset, label: &str, top: bool) -> Result<Poset> {
    if p.contains(label) {
        return Err(Error::LabelClash(label.to_owned()));
    }
    let n = p.len();
    let mut labels = p.labels().to_vec();
    labels.push(Label::from(label));
    Poset::from_order(labels, |i, j| match (i == n, j == n) {
        (true, true) => true,
        (true, false) => !top,
        (false, true) => top,
        (false, false) => p.leq_idx(i, j),
    })
}

/// Adds a new element above everything.
pub fn adjoin_max(p: &Poset, label: &str) -> Result<Poset> {
    adjoin(p, label, true)
}

/// Adds a new element below everything.
pub fn adjoin_min(p: &Poset, label: &str) -> Result<Poset> {
    adjoin(p, label, false)
}

/// A downward-closed subset of an ambient poset, stored by membership mask
/// over the ambient element indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderIdeal {
    mask: Vec<bool>,
}

impl OrderIdeal {
    pub fn contains(&self, i: usize) -> bool {
        self.mask[i]
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Characteristic bitstring, one character per ambient element.
    pub fn bitstring(&self) -> String {
        self.mask
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }

    pub fn members(&self, ambient: &Poset) -> Vec<Label> {
        self.mask
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| ambient.label(i).clone())
            .collect()
    }

    pub fn is_subset(&self, other: &OrderIdeal) -> bool {
        self.mask.iter().zip(&other.mask).all(|(&a, &b)| !a || b)
    }
}

/// Every order ideal of `p`, sorted by characteristic bitstring.
pub fn order_ideals(p: &Poset) -> Vec<OrderIdeal> {
    let order = p.linear_extension();
    let below: Vec<Vec<usize>> = (0..p.len())
        .map(|j| (0..p.len()).filter(|&i| p.lt_idx(i, j)).collect())
        .collect();
    let mut out = Vec::new();
    let mut mask = vec![false; p.len()];
    extend_ideal(&order, &below, 0, &mut mask, &mut out);
    out.sort();
    out
}

fn extend_ideal(
    order: &[usize],
    below: &[Vec<usize>],
    pos: usize,
    mask: &mut Vec<bool>,
    out: &mut Vec<OrderIdeal>,
) {
    let Some(&e) = order.get(pos) else {
        out.push(OrderIdeal { mask: mask.clone() });
        return;
    };
    extend_ideal(order, below, pos + 1, mask, out);
    // Everything below `e` precedes it in the linear extension.
    if below[e].iter().all(|&b| mask[b]) {
        mask[e] = true;
        extend_ideal(order, below, pos + 1, mask, out);
        mask[e] = false;
    }
}

/// The lattice of order ideals of `p` under inclusion, labelled by bitstring.
pub fn distributive_lattice(p: &Poset) -> Result<Poset> {
    let ideals = order_ideals(p);
    let labels = ideals.iter().map(|i| Label::new(i.bitstring())).collect();
    Poset::from_order(labels, |a, b| ideals[a].is_subset(&ideals[b]))
}

/// `counts[k]` = number of elements covering exactly `k` elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverTally {
    pub counts: BTreeMap<usize, u64>,
}

impl CoverTally {
    pub fn get(&self, k: usize) -> u64 {
        self.counts.get(&k).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Σ k·counts[k], the number of covering relations.
    pub fn weighted_total(&self) -> u64 {
        self.counts.iter().map(|(&k, &c)| k as u64 * c).sum()
    }
}

impl<const N: usize> From<[(usize, u64); N]> for CoverTally {
    fn from(pairs: [(usize, u64); N]) -> Self {
        CoverTally {
            counts: pairs.into_iter().collect(),
        }
    }
}

pub fn cover_statistics(lattice: &Poset) -> Result<CoverTally> {
    if lattice.minimal_indices().len() != 1 {
        return Err(Error::NoBottom);
    }
    let mut lower_covers = vec![0usize; lattice.len()];
    for (_, upper) in lattice.cover_indices() {
        lower_covers[upper] += 1;
    }
    let mut counts = BTreeMap::new();
    for k in lower_covers {
        *counts.entry(k).or_insert(0) += 1;
    }
    Ok(CoverTally { counts })
}

fn binomial(n: usize, k: usize) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 0..k {
        acc = acc * (n - t) as u128 / (t + 1) as u128;
    }
    u64::try_from(acc).ok()
}

/// Betti numbers from a cover tally: `β[i] = Σ_{j≥i} C(j,i)·g_j`.
///
/// Entry `i` is the `(i+1)`-th total Betti number of `R/H_P` when the tally
/// comes from the distributive lattice of `P`.
pub fn hibi_betti(tally: &CoverTally) -> Result<Vec<u64>> {
    let top = tally.counts.keys().max().copied().unwrap_or(0);
    (0..=top)
        .map(|i| {
            (i..=top).try_fold(0u64, |acc, j| {
                binomial(j, i)
                    .and_then(|c| c.checked_mul(tally.get(j)))
                    .and_then(|t| acc.checked_add(t))
                    .ok_or(Error::Overflow("Hibi Betti numbers"))
            })
        })
        .collect()
}
