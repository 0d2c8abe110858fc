//! The stateful distance oracle.
//!
//! One session answers one deterministic opponent. Per query it maintains
//! three graphs: `g` (the shrinking candidate graph, initially complete on
//! the points outside the isolated prefix `S`), `h` (the growing graph of
//! revealed shortest-path edges), and `q` (the query graph). Answers are
//! `min(d_h, cap)` in half-units where the cap is `2h` or `2h - 1` depending
//! on the query-degree flag.
//!
//! Determinism: the path revealed for a pair is the canonical BFS path from
//! the pair's lower endpoint, so identical query sequences produce identical
//! logs, bit for bit.

use crate::bfs;
use crate::error::{Error, Result};
use crate::graph::DynGraph;
use crate::halfdist::HalfDist;
use crate::params::AdvParams;
use crate::point::{validate_point, PairKey, PointId};
use serde::{Deserialize, Serialize};

/// Everything one query did: the answer, the flag value frozen at answer
/// time, and the exact graph deltas needed to replay the session.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryRecord {
    pub index: u32,
    pub pair: PairKey,
    pub answer: HalfDist,
    pub chi: bool,
    pub ran_update: bool,
    pub edges_added_to_h: Vec<PairKey>,
    pub edges_removed_from_g: Vec<PairKey>,
}

#[derive(Debug, Clone)]
pub struct AdvState {
    params: AdvParams,
    g: DynGraph,
    h: DynGraph,
    q: DynGraph,
    log: Vec<QueryRecord>,
}

impl AdvState {
    /// Fresh session: `g` is complete on `[n] \ S`, `h` and `q` edgeless.
    pub fn init(params: AdvParams) -> AdvState {
        let n = params.n();
        let outside: Vec<u32> = (params.s_size() + 1..=n).collect();
        AdvState {
            params,
            g: DynGraph::complete_on(n, &outside),
            h: DynGraph::new(n),
            q: DynGraph::new(n),
            log: Vec::new(),
        }
    }

    /// Rebuilds a session from persisted parts, e.g. for replay tooling.
    /// No validation happens here; the verify checks are the validator.
    pub fn from_parts(
        params: AdvParams,
        g: DynGraph,
        h: DynGraph,
        q: DynGraph,
        log: Vec<QueryRecord>,
    ) -> AdvState {
        AdvState { params, g, h, q, log }
    }

    /// The session's graphs and log, for persistence.
    pub fn into_parts(self) -> (AdvParams, DynGraph, DynGraph, DynGraph, Vec<QueryRecord>) {
        (self.params, self.g, self.h, self.q, self.log)
    }

    pub fn params(&self) -> &AdvParams {
        &self.params
    }

    pub fn g(&self) -> &DynGraph {
        &self.g
    }

    pub fn h(&self) -> &DynGraph {
        &self.h
    }

    pub fn q(&self) -> &DynGraph {
        &self.q
    }

    pub fn log(&self) -> &[QueryRecord] {
        &self.log
    }

    /// Number of answered queries so far, padding included.
    pub fn q_used(&self) -> u64 {
        self.log.len() as u64
    }

    pub fn seen(&self, pair: PairKey) -> bool {
        self.q.has_pair(pair)
    }

    /// Answers one query, advancing the session by one iteration.
    pub fn answer(&mut self, a: PointId, b: PointId) -> Result<HalfDist> {
        let n = self.params.n();
        let a = validate_point(a.get(), n)?;
        let b = validate_point(b.get(), n)?;
        if a == b {
            return Err(Error::SelfQuery { point: a.get() });
        }
        let pair = PairKey::new(a, b).unwrap();
        if self.q.has_pair(pair) {
            return Err(Error::RepeatedQuery { pair });
        }

        let h_edges = self.params.h();
        let (lo, hi) = (pair.lo().get(), pair.hi().get());

        let mut added = Vec::new();
        let mut removed = Vec::new();
        let ran_update = match bfs::canonical_path(&self.g, lo, hi, h_edges) {
            Some(path) => {
                for w in path.windows(2) {
                    if self.h.add_edge(w[0], w[1]) {
                        added.push(PairKey::of(w[0], w[1]));
                    }
                }
                self.prune_g(&added, &mut removed);
                true
            }
            None => false,
        };

        self.q.add_edge(lo, hi);

        // The flag reads query degrees that already include this query.
        let chi = self.chi_flag(pair);
        let cap = HalfDist::from_half_units(self.params.cap_half() - chi as u32);
        let answer = match bfs::bfs_dist_capped(&self.h, lo, hi, h_edges) {
            Some(k) => HalfDist::from_edges(k).min(cap),
            None => cap,
        };

        debug_assert!(self.g.handshake_check());
        debug_assert!(self.h.handshake_check());
        debug_assert!(self.q.handshake_check());

        self.log.push(QueryRecord {
            index: self.log.len() as u32 + 1,
            pair,
            answer,
            chi,
            ran_update,
            edges_added_to_h: added,
            edges_removed_from_g: removed,
        });
        Ok(answer)
    }

    fn chi_flag(&self, pair: PairKey) -> bool {
        [pair.lo(), pair.hi()].into_iter().any(|v| {
            self.params.in_s(v) && self.params.within_chi_threshold(self.q.degree(v.get()))
        })
    }

    /// Removes from `g` every non-`h` edge with an endpoint that meets the
    /// pruning threshold.
    ///
    /// Incremental form: a point that crossed the threshold in an earlier
    /// iteration already lost all its non-`h` edges then (and `g` never
    /// gains edges), so only the endpoints of just-added `h` edges need a
    /// sweep — except when the threshold is not positive, where every point
    /// qualifies and `g` collapses onto `h`.
    fn prune_g(&mut self, added: &[PairKey], removed: &mut Vec<PairKey>) {
        if self.params.prune_deg_min() == 0 {
            let doomed: Vec<(u32, u32)> = self
                .g
                .edges()
                .filter(|&(u, v)| !self.h.has_edge(u, v))
                .collect();
            for (u, v) in doomed {
                self.g.remove_edge(u, v);
                removed.push(PairKey::of(u, v));
            }
            return;
        }
        let mut endpoints: Vec<u32> = added
            .iter()
            .flat_map(|e| [e.lo().get(), e.hi().get()])
            .collect();
        endpoints.sort_unstable();
        endpoints.dedup();
        for v in endpoints {
            if self.params.meets_prune_threshold(self.h.degree(v)) {
                let doomed: Vec<u32> = self
                    .g
                    .neighbors(v)
                    .filter(|&u| !self.h.has_edge(v, u))
                    .collect();
                for u in doomed {
                    if self.g.remove_edge(v, u) {
                        removed.push(PairKey::of(v, u));
                    }
                }
            }
        }
    }

    /// Issues the dummy queries that complete the output point's row: one
    /// query for every other point not yet paired with `z`, in increasing id.
    pub fn pad_output(&mut self, z: PointId) -> Result<Vec<(PairKey, HalfDist)>> {
        let n = self.params.n();
        let z = validate_point(z.get(), n)?;
        let mut out = Vec::new();
        for v in 1..=n {
            if v == z.get() {
                continue;
            }
            let v = PointId::new(v).unwrap();
            let pair = PairKey::new(z, v).unwrap();
            if self.seen(pair) {
                continue;
            }
            let ans = self.answer(z, v)?;
            out.push((pair, ans));
        }
        Ok(out)
    }

    /// Query degree of `v` so far.
    pub fn deg_q(&self, v: u32) -> u32 {
        self.q.degree(v)
    }

    pub fn deg_h(&self, v: u32) -> u32 {
        self.h.degree(v)
    }
}
