//! Dynamic unweighted graphs on the point set `[n]`.
//!
//! Adjacency is kept as sorted neighbor sets so that traversals enumerate
//! neighbors in increasing point id, which the deterministic tie-breaking
//! rules rely on. Edge removal is logarithmic.

use crate::point::PairKey;
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynGraph {
    n: u32,
    adj: Vec<BTreeSet<u32>>,
    edge_count: u64,
}

impl DynGraph {
    /// Edgeless graph on `[n]`.
    pub fn new(n: u32) -> DynGraph {
        DynGraph {
            n,
            adj: vec![BTreeSet::new(); n as usize],
            edge_count: 0,
        }
    }

    /// Graph on `[n]` whose edge set is the complete graph on `members`.
    /// `members` must be sorted, deduplicated and within `1..=n`.
    pub fn complete_on(n: u32, members: &[u32]) -> DynGraph {
        let mut g = DynGraph::new(n);
        for &v in members {
            debug_assert!(v >= 1 && v <= n);
            g.adj[(v - 1) as usize] = members.iter().copied().filter(|&u| u != v).collect();
        }
        let m = members.len() as u64;
        g.edge_count = m * m.saturating_sub(1) / 2;
        g
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        debug_assert!(u >= 1 && u <= self.n && v >= 1 && v <= self.n);
        self.adj[(u - 1) as usize].contains(&v)
    }

    pub fn has_pair(&self, p: PairKey) -> bool {
        self.has_edge(p.lo().get(), p.hi().get())
    }

    /// Adds the edge; returns `false` when it was already present.
    pub fn add_edge(&mut self, u: u32, v: u32) -> bool {
        debug_assert!(u != v, "self-loop");
        debug_assert!(u >= 1 && u <= self.n && v >= 1 && v <= self.n);
        if self.adj[(u - 1) as usize].insert(v) {
            self.adj[(v - 1) as usize].insert(u);
            self.edge_count += 1;
            true
        } else {
            false
        }
    }

    /// Removes the edge; returns `false` when it was absent.
    pub fn remove_edge(&mut self, u: u32, v: u32) -> bool {
        debug_assert!(u >= 1 && u <= self.n && v >= 1 && v <= self.n);
        if self.adj[(u - 1) as usize].remove(&v) {
            self.adj[(v - 1) as usize].remove(&u);
            self.edge_count -= 1;
            true
        } else {
            false
        }
    }

    pub fn degree(&self, v: u32) -> u32 {
        debug_assert!(v >= 1 && v <= self.n);
        self.adj[(v - 1) as usize].len() as u32
    }

    /// Neighbors of `v` in increasing id order.
    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        debug_assert!(v >= 1 && v <= self.n);
        self.adj[(v - 1) as usize].iter().copied()
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (1..=self.n).flat_map(move |u| {
            self.adj[(u - 1) as usize]
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Structural self-test: the degree sum must equal twice the edge count.
    pub fn handshake_check(&self) -> bool {
        let degree_sum: u64 = self.adj.iter().map(|s| s.len() as u64).sum();
        degree_sum == 2 * self.edge_count
    }

    #[cfg(test)]
    pub(crate) fn corrupt_drop_one_direction(&mut self, u: u32, v: u32) {
        self.adj[(u - 1) as usize].remove(&v);
    }
}
