//! Finite posets stored as a dense comparability matrix over sorted labels.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matching;

/// Canonical name of a poset element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Label(String);

impl Label {
    pub fn new(text: impl Into<String>) -> Self {
        Label(text.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label(s.to_owned())
    }
}

impl From<String> for Label {
    fn from(s: String) -> Self {
        Label(s)
    }
}

impl std::borrow::Borrow<str> for Label {
    fn borrow(&self) -> &str {
        &self.0
    }
}

/// A covering pair `lower ⋖ upper`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CoverRelation {
    pub lower: Label,
    pub upper: Label,
}

/// A finite partially ordered set.
///
/// Elements are kept sorted by label, so element indices (and every
/// index-ordered output) are reproducible. `leq[i][j]` holds iff element `i`
/// is below or equal to element `j`.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<Label>,
    index: HashMap<Label, usize>,
    leq: Vec<Vec<bool>>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .cover_indices()
            .into_iter()
            .map(|(i, j)| format!("{}<{}", self.labels[i], self.labels[j]))
            .collect();
        f.debug_struct("Poset")
            .field("elements", &self.labels)
            .field("covers", &covers)
            .finish()
    }
}

impl Poset {
    /// The poset with no elements.
    pub fn empty() -> Self {
        Poset {
            labels: Vec::new(),
            index: HashMap::new(),
            leq: Vec::new(),
        }
    }

    /// Builds the reflexive-transitive closure of `pairs` over `elements`.
    pub fn from_relations<E, A, B>(
        elements: impl IntoIterator<Item = E>,
        pairs: impl IntoIterator<Item = (A, B)>,
    ) -> Result<Self>
    where
        E: Into<Label>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut labels: Vec<Label> = elements.into_iter().map(Into::into).collect();
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLabel(w[0].to_string()));
        }
        let index: HashMap<Label, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in pairs {
            let (a, b) = (a.as_ref(), b.as_ref());
            let i = *index
                .get(a)
                .ok_or_else(|| Error::UnknownElement(a.to_owned()))?;
            let j = *index
                .get(b)
                .ok_or_else(|| Error::UnknownElement(b.to_owned()))?;
            leq[i][j] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if !leq[i][k] {
                    continue;
                }
                let row_k = leq[k].clone();
                for (dst, &src) in leq[i].iter_mut().zip(&row_k) {
                    *dst |= src;
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::Cycle(labels[i].to_string(), labels[j].to_string()));
                }
            }
        }
        Ok(Poset { labels, index, leq })
    }

    /// Builds a poset from labels and an order predicate on their positions
    /// in `labels`. The predicate must already be a partial order; this is
    /// checked and reported as an invariant violation otherwise.
    pub fn from_order<F>(labels: Vec<Label>, leq_fn: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = labels.len();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
        let sorted: Vec<Label> = perm.iter().map(|&p| labels[p].clone()).collect();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLabel(w[0].to_string()));
        }
        let leq: Vec<Vec<bool>> = perm
            .iter()
            .map(|&a| perm.iter().map(|&b| leq_fn(a, b)).collect())
            .collect();
        let index = sorted
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let poset = Poset {
            labels: sorted,
            index,
            leq,
        };
        poset.check_axioms()?;
        Ok(poset)
    }

    /// Verifies reflexivity, antisymmetry and transitivity of the relation.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            if !self.leq[i][i] {
                return Err(Error::Invariant(format!(
                    "relation not reflexive at `{}`",
                    self.labels[i]
                )));
            }
            for j in 0..n {
                if i != j && self.leq[i][j] && self.leq[j][i] {
                    return Err(Error::Invariant(format!(
                        "relation not antisymmetric on `{}`, `{}`",
                        self.labels[i], self.labels[j]
                    )));
                }
                if !self.leq[i][j] {
                    continue;
                }
                for k in 0..n {
                    if self.leq[j][k] && !self.leq[i][k] {
                        return Err(Error::Invariant(format!(
                            "relation not transitive on `{}`, `{}`, `{}`",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Chain `0 < 1 < … < n-1` with zero-padded labels.
    pub fn chain(n: usize) -> Self {
        let labels = padded_labels(n);
        Poset::from_order(labels, |i, j| i <= j).expect("chain is a partial order")
    }

    /// `n` pairwise incomparable elements.
    pub fn antichain(n: usize) -> Self {
        let labels = padded_labels(n);
        Poset::from_order(labels, |i, j| i == j).expect("antichain is a partial order")
    }

    /// Subsets of an `n`-set ordered by inclusion, labelled by bitstrings.
    pub fn boolean_lattice(n: usize) -> Self {
        assert!(n < usize::BITS as usize, "boolean lattice too large");
        let labels = (0..1usize << n)
            .map(|m| {
                Label::new(
                    (0..n)
                        .map(|b| if m >> b & 1 == 1 { '1' } else { '0' })
                        .collect::<String>(),
                )
            })
            .collect();
        Poset::from_order(labels, |a, b| a & b == a).expect("boolean lattice is a partial order")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Element labels in index order (lexicographic).
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &Label {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownElement(label.to_owned()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    #[inline]
    pub fn leq_idx(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    #[inline]
    pub fn lt_idx(&self, i: usize, j: usize) -> bool {
        i != j && self.leq[i][j]
    }

    pub fn comparable_idx(&self, i: usize, j: usize) -> bool {
        self.leq[i][j] || self.leq[j][i]
    }

    pub fn is_leq(&self, a: &str, b: &str) -> Result<bool> {
        Ok(self.leq[self.index_of(a)?][self.index_of(b)?])
    }

    /// Indices in an order compatible with the poset (smaller elements first).
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        let down: Vec<usize> = (0..n)
            .map(|j| (0..n).filter(|&i| self.leq[i][j]).count())
            .collect();
        order.sort_by_key(|&i| (down[i], i));
        order
    }

    /// Covering pairs as index pairs, sorted lexicographically.
    pub fn cover_indices(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut covers = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.lt_idx(i, j) && !(0..n).any(|k| self.lt_idx(i, k) && self.lt_idx(k, j)) {
                    covers.push((i, j));
                }
            }
        }
        covers
    }

    /// The Hasse diagram edges (transitive reduction).
    pub fn covering_relations(&self) -> Vec<CoverRelation> {
        self.cover_indices()
            .into_iter()
            .map(|(i, j)| CoverRelation {
                lower: self.labels[i].clone(),
                upper: self.labels[j].clone(),
            })
            .collect()
    }

    /// Induced subposet on `{x : a ≺ x ≺ b}`.
    pub fn open_interval(&self, a: &str, b: &str) -> Result<Poset> {
        let (i, j) = self.strict_pair(a, b)?;
        let keep: Vec<usize> = (0..self.len())
            .filter(|&k| self.lt_idx(i, k) && self.lt_idx(k, j))
            .collect();
        Ok(self.induced(&keep))
    }

    /// Induced subposet on `{x : a ⪯ x ⪯ b}`.
    pub fn closed_interval(&self, a: &str, b: &str) -> Result<Poset> {
        let (i, j) = self.strict_pair(a, b)?;
        let keep: Vec<usize> = (0..self.len())
            .filter(|&k| self.leq[i][k] && self.leq[k][j])
            .collect();
        Ok(self.induced(&keep))
    }

    fn strict_pair(&self, a: &str, b: &str) -> Result<(usize, usize)> {
        let i = self.index_of(a)?;
        let j = self.index_of(b)?;
        if !self.lt_idx(i, j) {
            return Err(Error::NotComparable(a.to_owned(), b.to_owned()));
        }
        Ok((i, j))
    }

    pub fn minimal_indices(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| !(0..self.len()).any(|i| self.lt_idx(i, j)))
            .collect()
    }

    pub fn maximal_indices(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| !(0..self.len()).any(|j| self.lt_idx(i, j)))
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<Label> {
        self.to_labels(&self.minimal_indices())
    }

    pub fn maximal_elements(&self) -> Vec<Label> {
        self.to_labels(&self.maximal_indices())
    }

    /// Length of a longest chain ending at each element.
    pub fn heights(&self) -> Vec<usize> {
        let mut heights = vec![0usize; self.len()];
        for &j in &self.linear_extension() {
            heights[j] = (0..self.len())
                .filter(|&i| self.lt_idx(i, j))
                .map(|i| heights[i] + 1)
                .max()
                .unwrap_or(0);
        }
        heights
    }

    /// Elements grouped by height; block `k` holds the height-`k` elements.
    pub fn rank_partition(&self) -> Vec<Vec<Label>> {
        let heights = self.heights();
        let blocks = heights.iter().max().map_or(0, |h| h + 1);
        let mut out = vec![Vec::new(); blocks];
        for (i, &h) in heights.iter().enumerate() {
            out[h].push(self.labels[i].clone());
        }
        out
    }

    /// Number of elements in a longest chain, minus one.
    pub fn height(&self) -> Result<usize> {
        self.heights().into_iter().max().ok_or(Error::EmptyPoset)
    }

    pub fn dual(&self) -> Poset {
        let n = self.len();
        Poset {
            labels: self.labels.clone(),
            index: self.index.clone(),
            leq: (0..n)
                .map(|i| (0..n).map(|j| self.leq[j][i]).collect())
                .collect(),
        }
    }

    pub fn subposet<S: AsRef<str>>(&self, subset: &[S]) -> Result<Poset> {
        let mut keep = subset
            .iter()
            .map(|s| self.index_of(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        keep.sort_unstable();
        keep.dedup();
        Ok(self.induced(&keep))
    }

    /// Induced subposet on sorted, distinct indices.
    pub fn induced(&self, keep: &[usize]) -> Poset {
        let labels: Vec<Label> = keep.iter().map(|&k| self.labels[k].clone()).collect();
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let leq = keep
            .iter()
            .map(|&a| keep.iter().map(|&b| self.leq[a][b]).collect())
            .collect();
        Poset { labels, index, leq }
    }

    /// Size of a largest antichain.
    ///
    /// Computed as `|P|` minus a maximum matching in the bipartite graph with
    /// an edge `i → j` for every strict relation `i ≺ j`; unmatched elements
    /// start the chains of a minimum chain cover.
    pub fn dilworth_number(&self) -> usize {
        let n = self.len();
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).filter(|&j| self.lt_idx(i, j)).collect())
            .collect();
        n - matching::maximum_matching(n, n, &adj).size()
    }

    /// All antichains with exactly `k` elements, in lexicographic index order.
    pub fn antichains(&self, k: usize) -> Vec<Vec<Label>> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(k);
        self.extend_antichain(0, k, &mut current, &mut out);
        out
    }

    fn extend_antichain(
        &self,
        start: usize,
        k: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<Label>>,
    ) {
        if current.len() == k {
            out.push(self.to_labels(current));
            return;
        }
        let need = k - current.len();
        for next in start..self.len() {
            if self.len() - next < need {
                break;
            }
            if current.iter().all(|&c| !self.comparable_idx(c, next)) {
                current.push(next);
                self.extend_antichain(next + 1, k, current, out);
                current.pop();
            }
        }
    }

    pub(crate) fn to_labels(&self, indices: &[usize]) -> Vec<Label> {
        indices.iter().map(|&i| self.labels[i].clone()).collect()
    }
}

fn padded_labels(n: usize) -> Vec<Label> {
    let width = n.saturating_sub(1).to_string().len();
    (0..n).map(|i| Label::new(format!("{i:0width$}"))).collect()
}
