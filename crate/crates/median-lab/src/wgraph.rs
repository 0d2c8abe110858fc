//! Half-unit-weighted graphs and exact single-source shortest distances.
//!
//! Edge weights are 1 or 2 half-units (i.e. 1/2 or 1). Distances are computed
//! by bucket-queue relaxation over integer half-units, so every result is an
//! exact integer.

use crate::error::Result;
use crate::halfdist::HalfDist;
use crate::point::{validate_point, PairKey, PointId};
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct WeightedGraph {
    n: u32,
    adj: Vec<Vec<(u32, u8)>>,
    weights: BTreeMap<(u32, u32), u8>,
}

impl WeightedGraph {
    pub fn new(n: u32) -> WeightedGraph {
        WeightedGraph {
            n,
            adj: vec![Vec::new(); n as usize],
            weights: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edge_count(&self) -> u64 {
        self.weights.len() as u64
    }

    /// Inserts an edge of weight 1 or 2 half-units. Re-inserting an existing
    /// edge is a programming error.
    pub fn add_edge(&mut self, pair: PairKey, weight_half: u8) {
        assert!(weight_half == 1 || weight_half == 2, "weight must be 1 or 2 half-units");
        let (u, v) = (pair.lo().get(), pair.hi().get());
        debug_assert!(v <= self.n);
        let prev = self.weights.insert((u, v), weight_half);
        debug_assert!(prev.is_none(), "duplicate edge {pair}");
        self.adj[(u - 1) as usize].push((v, weight_half));
        self.adj[(v - 1) as usize].push((u, weight_half));
    }

    pub fn weight(&self, pair: PairKey) -> Option<u8> {
        self.weights.get(&(pair.lo().get(), pair.hi().get())).copied()
    }

    pub fn has_pair(&self, pair: PairKey) -> bool {
        self.weight(pair).is_some()
    }

    /// Edges in lexicographic order with their half-unit weights.
    pub fn edges(&self) -> impl Iterator<Item = (PairKey, u8)> + '_ {
        self.weights.iter().map(|(&(u, v), &w)| (PairKey::of(u, v), w))
    }

    pub fn neighbors(&self, v: u32) -> &[(u32, u8)] {
        &self.adj[(v - 1) as usize]
    }
}

/// Exact single-source shortest distances in half-units.
///
/// `dist[s] = 0`; unreachable points are marked `UNREACHABLE`. The returned
/// vector is indexed by `PointId::index()`.
pub fn sssp_half_weights(wg: &WeightedGraph, s: PointId) -> Result<Vec<HalfDist>> {
    let s = validate_point(s.get(), wg.n())?;
    Ok(sssp_raw(wg, s.get())
        .into_iter()
        .map(|d| {
            if d == u32::MAX {
                HalfDist::UNREACHABLE
            } else {
                HalfDist::from_half_units(d)
            }
        })
        .collect())
}

/// Raw bucket-queue relaxation; `u32::MAX` marks unreachable points.
pub(crate) fn sssp_raw(wg: &WeightedGraph, s: u32) -> Vec<u32> {
    let n = wg.n() as usize;
    let mut dist = vec![u32::MAX; n];
    dist[(s - 1) as usize] = 0;
    // With weights in {1, 2}, finite distances are below 2n, so a flat
    // bucket array indexed by distance suffices for monotone processing.
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); 2 * n + 1];
    buckets[0].push(s);
    for d in 0..buckets.len() as u32 {
        let mut i = 0;
        while i < buckets[d as usize].len() {
            let u = buckets[d as usize][i];
            i += 1;
            if dist[(u - 1) as usize] != d {
                continue; // stale entry
            }
            for &(v, w) in wg.neighbors(u) {
                let nd = d + w as u32;
                if nd < dist[(v - 1) as usize] {
                    dist[(v - 1) as usize] = nd;
                    buckets[nd as usize].push(v);
                }
            }
        }
        buckets[d as usize].clear();
    }
    dist
}
