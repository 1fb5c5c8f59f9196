//! Hopcroft–Karp maximum bipartite matching.

use std::collections::VecDeque;

const NIL: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    /// `left_mate[u]` is the right vertex matched to `u`, if any.
    pub left_mate: Vec<Option<usize>>,
    pub right_mate: Vec<Option<usize>>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.left_mate.iter().filter(|m| m.is_some()).count()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.left_mate
            .iter()
            .enumerate()
            .filter_map(|(u, m)| m.map(|v| (u, v)))
    }
}

/// Maximum matching of a bipartite graph given as left-side adjacency lists.
pub fn maximum_matching(left: usize, right: usize, adj: &[Vec<usize>]) -> Matching {
    assert_eq!(adj.len(), left, "adjacency must list every left vertex");
    let mut hk = HopcroftKarp {
        adj,
        left_mate: vec![NIL; left],
        right_mate: vec![NIL; right],
        dist: vec![0; left],
    };
    while hk.bfs() {
        for u in 0..left {
            if hk.left_mate[u] == NIL {
                hk.dfs(u);
            }
        }
    }
    let wrap = |v: usize| (v != NIL).then_some(v);
    Matching {
        left_mate: hk.left_mate.into_iter().map(wrap).collect(),
        right_mate: hk.right_mate.into_iter().map(wrap).collect(),
    }
}

struct HopcroftKarp<'a> {
    adj: &'a [Vec<usize>],
    left_mate: Vec<usize>,
    right_mate: Vec<usize>,
    dist: Vec<usize>,
}

impl HopcroftKarp<'_> {
    /// Layers free left vertices; true if some augmenting path exists.
    fn bfs(&mut self) -> bool {
        let mut queue = VecDeque::new();
        for u in 0..self.left_mate.len() {
            if self.left_mate[u] == NIL {
                self.dist[u] = 0;
                queue.push_back(u);
            } else {
                self.dist[u] = NIL;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                let w = self.right_mate[v];
                if w == NIL {
                    found = true;
                } else if self.dist[w] == NIL {
                    self.dist[w] = self.dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        found
    }

    fn dfs(&mut self, u: usize) -> bool {
        for k in 0..self.adj[u].len() {
            let v = self.adj[u][k];
            let w = self.right_mate[v];
            if w == NIL || (self.dist[w] == self.dist[u] + 1 && self.dfs(w)) {
                self.left_mate[u] = v;
                self.right_mate[v] = u;
                return true;
            }
        }
        self.dist[u] = NIL;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_force(left: usize, right: usize, adj: &[Vec<usize>]) -> usize {
        fn go(u: usize, adj: &[Vec<usize>], used: &mut Vec<bool>) -> usize {
            if u == adj.len() {
                return 0;
            }
            let mut best = go(u + 1, adj, used);
            for &v in &adj[u] {
                if !used[v] {
                    used[v] = true;
                    best = best.max(1 + go(u + 1, adj, used));
                    used[v] = false;
                }
            }
            best
        }
        let _ = left;
        go(0, adj, &mut vec![false; right])
    }

    #[test]
    fn perfect_and_empty() {
        let adj = vec![vec![0, 1], vec![0], vec![2]];
        let m = maximum_matching(3, 3, &adj);
        assert_eq!(m.size(), 3);
        for (u, v) in m.pairs() {
            assert!(adj[u].contains(&v));
            assert_eq!(m.right_mate[v], Some(u));
        }
        assert_eq!(maximum_matching(0, 0, &[]).size(), 0);
        assert_eq!(maximum_matching(2, 2, &[vec![], vec![]]).size(), 0);
    }

    proptest! {
        #[test]
        fn matches_brute_force(edges in proptest::collection::vec((0usize..6, 0usize..6), 0..20)) {
            let mut adj = vec![Vec::new(); 6];
            for (u, v) in edges {
                if !adj[u].contains(&v) {
                    adj[u].push(v);
                }
            }
            let m = maximum_matching(6, 6, &adj);
            prop_assert_eq!(m.size(), brute_force(6, 6, &adj));
        }
    }
}
