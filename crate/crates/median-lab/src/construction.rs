//! Post-run construction: the planted center, the layered partition, the
//! weighted completion graph and the final metric.
//!
//! All distances in the final metric are integers in half-units, capped at
//! `2h` (or `2h - 1` on queried pairs whose stored flag was set).

use crate::adversary::AdvState;
use crate::error::{Error, Result};
use crate::graph::DynGraph;
use crate::point::{validate_point, PairKey, PointId};
use crate::threads;
use crate::wgraph::{sssp_raw, WeightedGraph};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// The layered partition `V[0..=h]` of `[n]` around the planted center.
#[derive(Debug, Clone)]
pub struct Layers {
    sets: Vec<Vec<u32>>,
    layer_of: Vec<u16>,
}

impl Layers {
    /// Rebuilds layers from raw sets (first assignment wins for the lookup
    /// table). No validation; the partition check is the validator.
    pub fn from_sets(sets: Vec<Vec<u32>>, n: u32) -> Layers {
        let mut layer_of = vec![u16::MAX; n as usize];
        for (idx, set) in sets.iter().enumerate() {
            for &v in set {
                let slot = &mut layer_of[(v - 1) as usize];
                if *slot == u16::MAX {
                    *slot = idx as u16;
                }
            }
        }
        Layers { sets, layer_of }
    }

    pub fn sets(&self) -> &[Vec<u32>] {
        &self.sets
    }

    pub fn layer_of(&self, v: u32) -> u16 {
        self.layer_of[(v - 1) as usize]
    }

    pub fn count(&self) -> usize {
        self.sets.len()
    }
}

/// Distance matrix in half-units. Either the full `n x n` table or a subset
/// of materialized rows (always including the output and the planted center).
#[derive(Debug, Clone)]
pub enum DistMatrix {
    Full { n: u32, data: Vec<u16> },
    Rows { n: u32, rows: BTreeMap<u32, Vec<u16>> },
}

impl DistMatrix {
    pub fn n(&self) -> u32 {
        match self {
            DistMatrix::Full { n, .. } | DistMatrix::Rows { n, .. } => *n,
        }
    }

    pub fn is_full(&self) -> bool {
        matches!(self, DistMatrix::Full { .. })
    }

    /// Row of point `v`, if materialized.
    pub fn row(&self, v: u32) -> Option<&[u16]> {
        match self {
            DistMatrix::Full { n, data } => {
                let n = *n as usize;
                let i = (v - 1) as usize;
                Some(&data[i * n..(i + 1) * n])
            }
            DistMatrix::Rows { rows, .. } => rows.get(&v).map(|r| r.as_slice()),
        }
    }

    pub fn get(&self, u: u32, v: u32) -> Option<u16> {
        self.row(u).map(|r| r[(v - 1) as usize])
    }

    /// Ids of materialized rows, ascending.
    pub fn sources(&self) -> Vec<u32> {
        match self {
            DistMatrix::Full { n, .. } => (1..=*n).collect(),
            DistMatrix::Rows { rows, .. } => rows.keys().copied().collect(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    /// Materialize the full matrix up to this point count; beyond it only
    /// selected rows are kept. Zero forces row mode.
    pub matrix_cap: u32,
    /// Number of evenly spaced extra rows in row mode.
    pub sampled_rows: u32,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            matrix_cap: 1500,
            sampled_rows: 200,
        }
    }
}

/// Everything the construction produces for one finished session.
#[derive(Debug, Clone)]
pub struct FinalConstruction {
    pub z: PointId,
    pub alpha_hat: PointId,
    pub layers: Layers,
    /// Points whose revealed-edge degree reached the pruning threshold.
    pub bad: Vec<u32>,
    /// `V[h] \ (bad ∪ S)`: the points tied to the planted center at weight 1.
    pub s_good: Vec<u32>,
    pub curly: WeightedGraph,
    pub d: DistMatrix,
    /// Final-metric value of each queried pair, aligned with the log.
    pub queried_d: Vec<u16>,
    pub cost_z_half: u64,
    pub cost_alpha_half: u64,
    /// Exact 1-median of the final metric (full matrix only).
    pub exact_median: Option<(PointId, u64)>,
}

/// Least-queried point of `S` other than the output; ties to the lowest id.
pub fn select_alpha_hat(state: &AdvState, z: PointId) -> Result<PointId> {
    let params = state.params();
    let mut best: Option<(u32, u32)> = None; // (deg_q, id)
    for v in params.s_points() {
        if v == z.get() {
            continue;
        }
        let d = state.deg_q(v);
        if best.is_none_or(|(bd, _)| d < bd) {
            best = Some((d, v));
        }
    }
    let (_, id) = best.ok_or(Error::EmptyCandidates)?;
    Ok(PointId::new(id).unwrap())
}

/// Layered partition: `V[0] = {alpha}`, `V[1]` its query neighborhood, the
/// middle layers grow through revealed-edge neighborhoods, `V[h]` is the rest.
pub fn build_layers(state: &AdvState, alpha_hat: PointId) -> Layers {
    let n = state.params().n();
    let h = state.params().h() as usize;
    let mut layer_of = vec![u16::MAX; n as usize];
    let mut sets: Vec<Vec<u32>> = Vec::with_capacity(h + 1);

    let a = alpha_hat.get();
    layer_of[(a - 1) as usize] = 0;
    sets.push(vec![a]);

    let v1: Vec<u32> = state
        .q()
        .neighbors(a)
        .filter(|&v| layer_of[(v - 1) as usize] == u16::MAX)
        .collect();
    for &v in &v1 {
        layer_of[(v - 1) as usize] = 1;
    }
    sets.push(v1);

    for j in 1..=h.saturating_sub(2) {
        let mut next = Vec::new();
        for &v in &sets[j] {
            for u in state.h().neighbors(v) {
                if layer_of[(u - 1) as usize] == u16::MAX {
                    layer_of[(u - 1) as usize] = (j + 1) as u16;
                    next.push(u);
                }
            }
        }
        next.sort_unstable();
        sets.push(next);
    }

    let mut last = Vec::new();
    for v in 1..=n {
        if layer_of[(v - 1) as usize] == u16::MAX {
            layer_of[(v - 1) as usize] = h as u16;
            last.push(v);
        }
    }
    sets.push(last);
    debug_assert_eq!(sets.len(), h + 1);
    Layers { sets, layer_of }
}

/// Points whose revealed-edge degree meets the pruning threshold.
pub fn bad_set(state: &AdvState) -> Vec<u32> {
    let params = state.params();
    (1..=params.n())
        .filter(|&v| params.meets_prune_threshold(state.deg_h(v)))
        .collect()
}

fn s_good_points(state: &AdvState, layers: &Layers, bad_flags: &[bool]) -> Vec<u32> {
    let params = state.params();
    let h = params.h() as usize;
    layers.sets()[h]
        .iter()
        .copied()
        .filter(|&v| !bad_flags[(v - 1) as usize] && v > params.s_size())
        .collect()
}

/// The weighted completion graph: surviving candidate edges minus everything
/// that crosses two or more layers, plus weight-1 spokes from the planted
/// center to `s_good`.
pub fn build_curly_graph(state: &AdvState, layers: &Layers, bad: &[u32]) -> WeightedGraph {
    let params = state.params();
    let n = params.n();
    let mut bad_flags = vec![false; n as usize];
    for &v in bad {
        bad_flags[(v - 1) as usize] = true;
    }
    let alpha = layers.sets()[0][0];
    let mut wg = WeightedGraph::new(n);
    for (u, v) in state.g().edges() {
        let (lu, lv) = (layers.layer_of(u), layers.layer_of(v));
        if lu.abs_diff(lv) <= 1 {
            wg.add_edge(PairKey::of(u, v), 2);
        }
    }
    for v in s_good_points(state, layers, &bad_flags) {
        wg.add_edge(PairKey::of(alpha, v), 1);
    }
    wg
}

/// Sum of a materialized row, in half-units.
pub fn cost(d: &DistMatrix, v: PointId) -> Option<u64> {
    d.row(v.get()).map(|r| r.iter().map(|&x| x as u64).sum())
}

/// Argmin of row sums over all points (lowest id on ties), full matrix only.
pub fn exact_median(d: &DistMatrix) -> Option<(PointId, u64)> {
    if !d.is_full() {
        return None;
    }
    let n = d.n();
    let mut best: Option<(u64, u32)> = None;
    for v in 1..=n {
        let c: u64 = d.row(v).unwrap().iter().map(|&x| x as u64).sum();
        if best.is_none_or(|(bc, _)| c < bc) {
            best = Some((c, v));
        }
    }
    best.map(|(c, v)| (PointId::new(v).unwrap(), c))
}

fn capped_row(wg: &WeightedGraph, src: u32, cap_half: u32) -> Vec<u16> {
    sssp_raw(wg, src)
        .into_iter()
        .map(|d| d.min(cap_half) as u16)
        .collect()
}

/// Pairs whose stored flag was set, with the lower cap they induce.
fn chi_pairs(state: &AdvState) -> Vec<(u32, u32)> {
    state
        .log()
        .iter()
        .filter(|r| r.chi)
        .map(|r| (r.pair.lo().get(), r.pair.hi().get()))
        .collect()
}

fn apply_chi_to_row(row: &mut [u16], src: u32, chi_by_point: &BTreeMap<u32, Vec<u32>>, cap1: u16) {
    if let Some(others) = chi_by_point.get(&src) {
        for &o in others {
            let cell = &mut row[(o - 1) as usize];
            *cell = (*cell).min(cap1);
        }
    }
}

/// Runs the full construction pipeline for a finished session.
pub fn build(state: &AdvState, z: PointId, opts: &BuildOptions) -> Result<FinalConstruction> {
    let params = state.params();
    let n = params.n();
    let z = validate_point(z.get(), n)?;
    let alpha_hat = select_alpha_hat(state, z)?;
    let layers = build_layers(state, alpha_hat);
    let bad = bad_set(state);
    let mut bad_flags = vec![false; n as usize];
    for &v in &bad {
        bad_flags[(v - 1) as usize] = true;
    }
    let s_good = s_good_points(state, &layers, &bad_flags);
    let curly = build_curly_graph(state, &layers, &bad);

    let cap = params.cap_half();
    let cap1 = (cap - 1) as u16;
    let chi: Vec<(u32, u32)> = chi_pairs(state);
    let mut chi_by_point: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for &(a, b) in &chi {
        chi_by_point.entry(a).or_default().push(b);
        chi_by_point.entry(b).or_default().push(a);
    }

    let full = opts.matrix_cap > 0 && n <= opts.matrix_cap;
    let d = if full {
        let nn = n as usize;
        let mut data = vec![0u16; nn * nn];
        threads::pool().install(|| {
            data.par_chunks_mut(nn).enumerate().for_each(|(i, row)| {
                let src = i as u32 + 1;
                row.copy_from_slice(&capped_row(&curly, src, cap));
                apply_chi_to_row(row, src, &chi_by_point, cap1);
            });
        });
        DistMatrix::Full { n, data }
    } else {
        // Rows for the output, the planted center, a spaced sample, and a
        // cover of the queried pairs (each pair assigned to its more
        // frequent endpoint so a handful of sources suffices).
        let mut wanted: Vec<u32> = vec![z.get(), alpha_hat.get()];
        let k = opts.sampled_rows.max(2);
        let stride = (n / k).max(1);
        wanted.extend((1..=n).step_by(stride as usize));
        let mut freq = vec![0u32; n as usize + 1];
        for r in state.log() {
            freq[r.pair.lo().get() as usize] += 1;
            freq[r.pair.hi().get() as usize] += 1;
        }
        let assign = |p: PairKey| -> u32 {
            let (a, b) = (p.lo().get(), p.hi().get());
            if freq[a as usize] >= freq[b as usize] {
                a
            } else {
                b
            }
        };
        wanted.extend(state.log().iter().map(|r| assign(r.pair)));
        wanted.sort_unstable();
        wanted.dedup();
        let rows: BTreeMap<u32, Vec<u16>> = threads::pool().install(|| {
            wanted
                .par_iter()
                .map(|&src| {
                    let mut row = capped_row(&curly, src, cap);
                    apply_chi_to_row(&mut row, src, &chi_by_point, cap1);
                    (src, row)
                })
                .collect()
        });
        DistMatrix::Rows { n, rows }
    };

    let queried_d: Vec<u16> = state
        .log()
        .iter()
        .map(|r| {
            let (a, b) = (r.pair.lo().get(), r.pair.hi().get());
            match d.get(a, b).or_else(|| d.get(b, a)) {
                Some(v) => v,
                None => unreachable!("query cover row missing"),
            }
        })
        .collect();

    let cost_z_half = cost(&d, z).expect("output row is always materialized");
    let cost_alpha_half = cost(&d, alpha_hat).expect("center row is always materialized");
    let exact_median = exact_median(&d);

    Ok(FinalConstruction {
        z,
        alpha_hat,
        layers,
        bad,
        s_good,
        curly,
        d,
        queried_d,
        cost_z_half,
        cost_alpha_half,
        exact_median,
    })
}

/// Revealed-edge graph accessor used by checks that replay the construction.
pub fn h_graph(state: &AdvState) -> &DynGraph {
    state.h()
}
