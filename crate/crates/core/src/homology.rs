//! Order complexes and reduced simplicial homology over the rationals.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Rational, RationalMatrix, SparseMatrix};
use crate::poset::{Label, Poset};

/// A finite abstract simplicial complex given by its facets.
///
/// Faces are sorted vertex-index vectors. The void complex has no faces at
/// all; the irrelevant complex `{∅}` has only the empty face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<Label>,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn void() -> Self {
        SimplicialComplex {
            vertices: Vec::new(),
            facets: Vec::new(),
        }
    }

    pub fn irrelevant() -> Self {
        SimplicialComplex {
            vertices: Vec::new(),
            facets: vec![Vec::new()],
        }
    }

    /// Normalizes `facets` (sorted, deduplicated, non-nested).
    pub fn from_facets(vertices: Vec<Label>, facets: Vec<Vec<usize>>) -> Result<Self> {
        let n = vertices.len();
        let mut fs: Vec<Vec<usize>> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        if let Some(&v) = fs.iter().flatten().find(|&&v| v >= n) {
            return Err(Error::IndexOutOfRange(v));
        }
        fs.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        fs.dedup();
        let mut kept: Vec<Vec<usize>> = Vec::new();
        for f in fs {
            if !kept.iter().any(|k| is_subset(&f, k)) {
                kept.push(f);
            }
        }
        kept.sort();
        Ok(SimplicialComplex {
            vertices,
            facets: kept,
        })
    }

    pub fn vertices(&self) -> &[Label] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension of the largest facet; `-1` for `{∅}`, `None` when void.
    pub fn dim(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.len() as isize - 1).max()
    }

    /// All faces grouped by dimension, starting at dimension −1.
    pub fn faces_by_dim(&self) -> Vec<Vec<Vec<usize>>> {
        let Some(top) = self.dim() else {
            return Vec::new();
        };
        let mut levels: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); (top + 2) as usize];
        for facet in &self.facets {
            let k = facet.len();
            assert!(k < usize::BITS as usize, "facet too large to enumerate");
            for mask in 0..(1usize << k) {
                let face: Vec<usize> = (0..k)
                    .filter(|&b| mask >> b & 1 == 1)
                    .map(|b| facet[b])
                    .collect();
                levels[face.len()].insert(face);
            }
        }
        levels
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect()
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}

/// The complex whose faces are the chains of `p`; `{∅}` when `p` is empty.
pub fn order_complex(p: &Poset) -> SimplicialComplex {
    if p.is_empty() {
        return SimplicialComplex::irrelevant();
    }
    let mut upper: Vec<Vec<usize>> = vec![Vec::new(); p.len()];
    for (lo, hi) in p.cover_indices() {
        upper[lo].push(hi);
    }
    let mut facets = Vec::new();
    let mut chain = Vec::new();
    for m in p.minimal_indices() {
        chain.push(m);
        maximal_chains(&upper, &mut chain, &mut facets);
        chain.pop();
    }
    SimplicialComplex::from_facets(p.labels().to_vec(), facets)
        .expect("chains use valid vertex indices")
}

fn maximal_chains(upper: &[Vec<usize>], chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let last = *chain.last().expect("chain is nonempty");
    if upper[last].is_empty() {
        out.push(chain.clone());
        return;
    }
    for &next in &upper[last] {
        chain.push(next);
        maximal_chains(upper, chain, out);
        chain.pop();
    }
}

/// The augmented simplicial chain complex of a complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    /// `dims[d + 1]` is the number of `d`-faces, from `d = −1`.
    pub dims: Vec<usize>,
    /// `boundaries[d]` is `∂_d` stored by columns: its row `k` lists the
    /// boundary of the `k`-th `d`-face over the `(d−1)`-faces.
    /// `boundaries[0]` is the augmentation onto the empty face.
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn faces(&self, d: isize) -> usize {
        usize::try_from(d + 1)
            .ok()
            .and_then(|k| self.dims.get(k).copied())
            .unwrap_or(0)
    }

    /// `∂_d` as a dense `(d−1)-faces × d-faces` matrix.
    pub fn boundary(&self, d: usize) -> Option<RationalMatrix> {
        self.boundaries.get(d).map(|m| m.to_dense().transpose())
    }

    /// Ranks of `∂_0, ∂_1, …`.
    pub fn boundary_ranks(&self) -> Vec<usize> {
        self.boundaries.iter().map(SparseMatrix::rank).collect()
    }

    /// True iff every composite `∂_{d−1} ∘ ∂_d` vanishes.
    pub fn squares_to_zero(&self) -> bool {
        self.boundaries.windows(2).all(|w| {
            let (lower, upper) = (&w[0], &w[1]);
            (0..upper.rows()).all(|k| {
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (face, coeff) in upper.row(k) {
                    for (sub, c) in lower.row(*face) {
                        *acc.entry(*sub).or_insert_with(Rational::zero) += coeff * c;
                    }
                }
                acc.values().all(Zero::is_zero)
            })
        })
    }

    /// Σ_d (−1)^d · #d-faces, counting the empty face at d = −1.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 1 { c as i64 } else { -(c as i64) })
            .sum()
    }

    fn betti_from_ranks(&self, ranks: &[usize], i: isize) -> usize {
        let rank_at = |d: isize| {
            usize::try_from(d)
                .ok()
                .and_then(|k| ranks.get(k).copied())
                .unwrap_or(0)
        };
        self.faces(i) - rank_at(i) - rank_at(i + 1)
    }
}

pub fn chain_complex(k: &SimplicialComplex) -> Result<ChainComplex> {
    if k.is_void() {
        return Err(Error::VoidComplex);
    }
    let levels = k.faces_by_dim();
    let dims: Vec<usize> = levels.iter().map(Vec::len).collect();
    let mut boundaries = Vec::with_capacity(levels.len().saturating_sub(1));
    for d in 1..levels.len() {
        let rows = &levels[d - 1];
        let mut m = SparseMatrix::new(rows.len());
        for face in &levels[d] {
            let mut column = Vec::with_capacity(face.len());
            for drop in 0..face.len() {
                let mut sub = face.clone();
                sub.remove(drop);
                let r = rows
                    .binary_search(&sub)
                    .map_err(|_| Error::Invariant("face missing from its complex".into()))?;
                let sign = if drop % 2 == 0 {
                    Rational::one()
                } else {
                    -Rational::one()
                };
                column.push((r, sign));
            }
            m.push_row(column)?;
        }
        boundaries.push(m);
    }
    let cc = ChainComplex { dims, boundaries };
    if !cc.squares_to_zero() {
        return Err(Error::Invariant("boundary does not square to zero".into()));
    }
    Ok(cc)
}

/// `dim H̃_i(K; ℚ)`.
pub fn reduced_betti(k: &SimplicialComplex, i: isize) -> Result<usize> {
    let cc = chain_complex(k)?;
    if i < -1 {
        return Ok(0);
    }
    let ranks: Vec<usize> = [i, i + 1]
        .iter()
        .map(|&d| {
            usize::try_from(d)
                .ok()
                .and_then(|d| cc.boundaries.get(d))
                .map_or(0, SparseMatrix::rank)
        })
        .collect();
    let faces = cc.faces(i);
    Ok(faces - ranks[0] - ranks[1])
}

/// Reduced Betti numbers for `i = −1 ..= dim K`.
pub fn all_reduced_betti(k: &SimplicialComplex) -> Result<Vec<usize>> {
    let cc = chain_complex(k)?;
    let ranks = cc.boundary_ranks();
    Ok((-1..cc.dims.len() as isize - 1)
        .map(|i| cc.betti_from_ranks(&ranks, i))
        .collect())
}

/// Σ_i (−1)^i dim H̃_i.
pub fn betti_euler_characteristic(betti: &[usize]) -> i64 {
    betti
        .iter()
        .enumerate()
        .map(|(k, &b)| if k % 2 == 1 { b as i64 } else { -(b as i64) })
        .sum()
}
