//! Machine-checkable certificates for a finished session.
//!
//! Every check evaluates its claim on the actual run data. A claim that
//! holds is `Pass`. A claim that fails is `Fail` when its lemma hypotheses
//! held at these parameters, and `Skipped` (guarantee void, witness kept)
//! when the run violated the hypotheses the underlying statement needs —
//! desk-scale sessions still run, with guarantees annotated as void.
//! The CLI exit code is nonzero iff a non-skipped check fails.

use crate::adversary::AdvState;
use crate::bfs;
use crate::construction::{DistMatrix, FinalConstruction};
use crate::error::{Error, Result};
use crate::exact::{self, PowerExpr};
use crate::graph::DynGraph;
use crate::params::{check_preconditions, Inequality, PreconditionViolation};
use crate::point::PairKey;
use crate::threads;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::cmp::Ordering;

pub const SCHEMA: &str = "median-lab-report-v1";
const TRIANGLE_EXHAUSTIVE_MAX_N: u32 = 300;
const TRIANGLE_SAMPLES: u64 = 1_000_000;
const TRIANGLE_SAMPLE_SEED: u64 = 0x4D44_4C41_422D_5452;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckStatus {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "SKIPPED")]
    Skipped,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    fn pass(name: &str) -> CheckResult {
        CheckResult {
            name: name.to_string(),
            status: CheckStatus::Pass,
            witness: None,
            note: None,
        }
    }

    fn fail(name: &str, witness: Value) -> CheckResult {
        CheckResult {
            name: name.to_string(),
            status: CheckStatus::Fail,
            witness: Some(witness),
            note: None,
        }
    }

    /// Outcome of a conditional claim: failing while a hypothesis is violated
    /// is a void guarantee, not a defect.
    fn conditional(name: &str, holds: bool, witness: Option<Value>, hypothesis_violated: Option<String>) -> CheckResult {
        match (holds, hypothesis_violated) {
            (true, _) => CheckResult::pass(name),
            (false, None) => CheckResult::fail(name, witness.unwrap_or(Value::Null)),
            (false, Some(reason)) => CheckResult {
                name: name.to_string(),
                status: CheckStatus::Skipped,
                witness,
                note: Some(format!("guarantee void: {reason}")),
            },
        }
    }

    fn skipped(name: &str, note: &str) -> CheckResult {
        CheckResult {
            name: name.to_string(),
            status: CheckStatus::Skipped,
            witness: None,
            note: Some(note.to_string()),
        }
    }
}

fn default_true() -> bool {
    true
}

/// Which check families to run. Omitted fields in a config default to on.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CheckSet {
    #[serde(default = "default_true")]
    pub metric_axioms: bool,
    #[serde(default = "default_true")]
    pub consistency: bool,
    #[serde(default = "default_true")]
    pub adversary_invariants: bool,
    #[serde(default = "default_true")]
    pub construction_invariants: bool,
    #[serde(default = "default_true")]
    pub certificates: bool,
}

impl CheckSet {
    pub fn all() -> CheckSet {
        CheckSet {
            metric_axioms: true,
            consistency: true,
            adversary_invariants: true,
            construction_invariants: true,
            certificates: true,
        }
    }

    /// Cost certificates and consistency only; used for large sessions where
    /// the matrix is kept in row mode.
    pub fn certificates_only() -> CheckSet {
        CheckSet {
            metric_axioms: false,
            consistency: true,
            adversary_invariants: false,
            construction_invariants: false,
            certificates: true,
        }
    }
}

impl Default for CheckSet {
    fn default() -> Self {
        CheckSet::all()
    }
}

/// Reduced nonnegative fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: u64,
    pub den: u64,
}

impl Fraction {
    pub fn new(num: u64, den: u64) -> Option<Fraction> {
        if den == 0 {
            return None;
        }
        let g = {
            let (mut a, mut b) = (num.max(1), den);
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a
        };
        Some(Fraction {
            num: num / g,
            den: den / g,
        })
    }

    pub fn approx(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateReport {
    pub schema: String,
    /// All distances and costs in this report are raw half-units.
    pub half_units: bool,
    pub n: u32,
    pub h: u32,
    pub delta: String,
    pub mode: String,
    pub s_size: u32,
    pub tau_deg_approx: f64,
    pub tau_query_approx: f64,
    pub opponent: String,
    pub z: u32,
    pub alpha_hat: u32,
    pub q_used: u64,
    pub padded: u64,
    pub parameter_warnings: Vec<String>,
    pub precondition_violations: Vec<PreconditionViolation>,
    pub checks: Vec<CheckResult>,
    pub cost_z_half: u64,
    pub cost_alpha_half: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<Fraction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_approx: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub opt_point: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub opt_cost_half: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_vs_opt: Option<Fraction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reach_within_horizon_max: Option<u64>,
}

impl CertificateReport {
    pub fn failed_checks(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// 0 when no non-skipped check failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.failed_checks().next().is_some() {
            1
        } else {
            0
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ReportMeta {
    pub opponent: String,
    pub padded: u64,
}

// ---------------------------------------------------------------------------
// Metric axioms
// ---------------------------------------------------------------------------

/// Identity, positivity, symmetry and the triangle inequality on the
/// materialized part of `d`. Exhaustive triangle check up to n = 300;
/// beyond that a fixed-seed uniform sample of at least 10^6 triples.
pub fn verify_metric_axioms(d: &DistMatrix) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let sources = d.sources();

    // identity: d(x,x) = 0
    let identity = sources
        .iter()
        .find(|&&v| d.get(v, v) != Some(0))
        .map(|&v| json!({ "x": v, "value": d.get(v, v) }));
    out.push(match identity {
        None => CheckResult::pass("metric-identity"),
        Some(w) => CheckResult::fail("metric-identity", w),
    });

    // positivity: d(x,y) >= 1 half-unit for x != y
    let mut positivity = None;
    'pos: for &v in &sources {
        let row = d.row(v).unwrap();
        for (i, &val) in row.iter().enumerate() {
            let u = i as u32 + 1;
            if u != v && val < 1 {
                positivity = Some(json!({ "x": v, "y": u, "value": val }));
                break 'pos;
            }
        }
    }
    out.push(match positivity {
        None => CheckResult::pass("metric-positivity"),
        Some(w) => CheckResult::fail("metric-positivity", w),
    });

    // symmetry: d(x,y) = d(y,x) over pairs with both rows materialized
    let mut symmetry = None;
    'sym: for (i, &x) in sources.iter().enumerate() {
        for &y in &sources[i + 1..] {
            let (a, b) = (d.get(x, y), d.get(y, x));
            if a != b {
                symmetry = Some(json!({ "x": x, "y": y, "d_xy": a, "d_yx": b }));
                break 'sym;
            }
        }
    }
    out.push(match symmetry {
        None => CheckResult::pass("metric-symmetry"),
        Some(w) => CheckResult::fail("metric-symmetry", w),
    });

    out.push(triangle_check(d, &sources));
    out
}

fn triangle_violation(a: u16, b: u16, c: u16) -> bool {
    // All three orientations of one unordered triple.
    (a as u32 + b as u32) < c as u32
        || (b as u32 + c as u32) < a as u32
        || (a as u32 + c as u32) < b as u32
}

fn triangle_check(d: &DistMatrix, sources: &[u32]) -> CheckResult {
    let name = "metric-triangle";
    if d.is_full() && d.n() <= TRIANGLE_EXHAUSTIVE_MAX_N {
        let n = d.n();
        let witness = threads::pool().install(|| {
            (1..=n).into_par_iter().find_map_any(|x| {
                let rx = d.row(x).unwrap();
                for y in (x + 1)..=n {
                    let ry = d.row(y).unwrap();
                    let dxy = rx[(y - 1) as usize];
                    for z in (y + 1)..=n {
                        let dyz = ry[(z - 1) as usize];
                        let dxz = rx[(z - 1) as usize];
                        if triangle_violation(dxy, dyz, dxz) {
                            return Some(json!({
                                "x": x, "y": y, "z": z,
                                "d_xy": dxy, "d_yz": dyz, "d_xz": dxz
                            }));
                        }
                    }
                }
                None
            })
        });
        return match witness {
            None => CheckResult::pass(name),
            Some(w) => CheckResult::fail(name, w),
        };
    }

    if sources.len() < 3 {
        return CheckResult::skipped(name, "fewer than three materialized rows");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(TRIANGLE_SAMPLE_SEED);
    for _ in 0..TRIANGLE_SAMPLES {
        let x = sources[rng.random_range(0..sources.len())];
        let y = sources[rng.random_range(0..sources.len())];
        let z = sources[rng.random_range(0..sources.len())];
        if x == y || y == z || x == z {
            continue;
        }
        let dxy = d.get(x, y).unwrap();
        let dyz = d.get(y, z).unwrap();
        let dxz = d.get(x, z).unwrap();
        if triangle_violation(dxy, dyz, dxz) {
            return CheckResult::fail(
                name,
                json!({ "x": x, "y": y, "z": z, "d_xy": dxy, "d_yz": dyz, "d_xz": dxz }),
            );
        }
    }
    let mut res = CheckResult::pass(name);
    res.note = Some(format!("sampled {TRIANGLE_SAMPLES} triples over {} rows", sources.len()));
    res
}

// ---------------------------------------------------------------------------
// Answer/metric consistency
// ---------------------------------------------------------------------------

/// Every stored answer equals the final metric on its pair, exactly.
pub fn verify_consistency(state: &AdvState, cons: &FinalConstruction) -> CheckResult {
    let name = "answer-consistency";
    for (r, &dv) in state.log().iter().zip(cons.queried_d.iter()) {
        let ans = r.answer.expect_finite();
        if ans != dv as u32 {
            return CheckResult::fail(
                name,
                json!({
                    "pair": [r.pair.lo().get(), r.pair.hi().get()],
                    "index": r.index,
                    "answer_half": ans,
                    "d_half": dv
                }),
            );
        }
    }
    CheckResult::pass(name)
}

// ---------------------------------------------------------------------------
// Adversary invariants (log replay)
// ---------------------------------------------------------------------------

/// Replays the per-query deltas from an edgeless start and asserts the
/// structural lemmas of the oracle loop.
pub fn verify_adversary_invariants(state: &AdvState) -> Vec<CheckResult> {
    let params = state.params();
    let n = params.n();
    let h = params.h();
    let cap_half = params.cap_half();

    let outside: Vec<u32> = (params.s_size() + 1..=n).collect();
    let mut g = DynGraph::complete_on(n, &outside);
    let mut hg = DynGraph::new(n);
    let mut qg = DynGraph::new(n);

    let mut chain_witness: Option<Value> = None;
    let mut growth_witness: Option<Value> = None;
    let mut edge_growth_witness: Option<Value> = None;
    let mut domain_witness: Option<Value> = None;
    let mut frozen_data: Vec<(PairKey, bool, Option<u32>)> = Vec::new();

    for r in state.log() {
        // Degree growth <= 2: a point is incident to at most two path edges.
        let mut touched: Vec<u32> = r
            .edges_added_to_h
            .iter()
            .flat_map(|e| [e.lo().get(), e.hi().get()])
            .collect();
        touched.sort_unstable();
        for w in touched.windows(3) {
            if w[0] == w[2] && growth_witness.is_none() {
                growth_witness = Some(json!({ "index": r.index, "point": w[0] }));
            }
        }
        if r.edges_added_to_h.len() > 1 && edge_growth_witness.is_none() {
            edge_growth_witness = Some(json!({
                "index": r.index,
                "added": r.edges_added_to_h.len()
            }));
        }
        if !r.ran_update && !r.edges_added_to_h.is_empty() && chain_witness.is_none() {
            chain_witness = Some(json!({ "index": r.index, "reason": "additions without update" }));
        }
        for e in &r.edges_added_to_h {
            let (u, v) = (e.lo().get(), e.hi().get());
            // Chain: an edge enters h only while present in g.
            if !g.has_edge(u, v) && chain_witness.is_none() {
                chain_witness = Some(json!({ "index": r.index, "edge": [u, v], "reason": "added edge absent from g" }));
            }
            if !hg.add_edge(u, v) && chain_witness.is_none() {
                chain_witness = Some(json!({ "index": r.index, "edge": [u, v], "reason": "edge added twice" }));
            }
        }
        for e in &r.edges_removed_from_g {
            let (u, v) = (e.lo().get(), e.hi().get());
            if hg.has_edge(u, v) && chain_witness.is_none() {
                chain_witness = Some(json!({ "index": r.index, "edge": [u, v], "reason": "removed edge is in h" }));
            }
            if !g.remove_edge(u, v) && chain_witness.is_none() {
                chain_witness = Some(json!({ "index": r.index, "edge": [u, v], "reason": "removed edge absent from g" }));
            }
        }
        qg.add_edge(r.pair.lo().get(), r.pair.hi().get());

        // Answer domain: {2, 4, ..., 2h} or 2h - 1.
        let ans = r.answer.expect_finite();
        let in_domain = (ans.is_multiple_of(2) && ans >= 2 && ans <= cap_half) || ans == cap_half - 1;
        if !in_domain && domain_witness.is_none() {
            domain_witness = Some(json!({ "index": r.index, "answer_half": ans }));
        }

        let d_h_now = bfs::bfs_dist_capped(&hg, r.pair.lo().get(), r.pair.hi().get(), h);
        frozen_data.push((r.pair, r.ran_update, d_h_now));
    }

    // Chain completeness: the replayed finals must equal the stored finals.
    if chain_witness.is_none() {
        if g != *state.g() {
            chain_witness = Some(json!({ "reason": "final g differs from replay" }));
        } else if hg != *state.h() {
            chain_witness = Some(json!({ "reason": "final h differs from replay" }));
        } else if qg != *state.q() {
            chain_witness = Some(json!({ "reason": "final q differs from replay" }));
        }
    }

    let mut out = Vec::new();
    out.push(match chain_witness {
        None => CheckResult::pass("graph-chain"),
        Some(w) => CheckResult::fail("graph-chain", w),
    });
    out.push(match growth_witness {
        None => CheckResult::pass("h-degree-growth"),
        Some(w) => CheckResult::fail("h-degree-growth", w),
    });
    out.push(match edge_growth_witness {
        None => CheckResult::pass("h-edge-growth"),
        Some(w) => CheckResult::fail("h-edge-growth", w),
    });

    // Edge budget: |E_H| <= q and |E_H| <= h*q.
    let eh = state.h().edge_count();
    let q_used = state.q_used();
    out.push(if eh <= q_used && eh <= (h as u64) * q_used {
        CheckResult::pass("h-edge-budget")
    } else {
        CheckResult::fail(
            "h-edge-budget",
            json!({ "h_edges": eh, "q_used": q_used }),
        )
    });

    // Final degree: deg_h(v) < tau_deg + 2, exact comparison.
    let base = params.degree_base_power(1, 1);
    let mut final_deg_witness = None;
    for v in 1..=n {
        let deg = state.deg_h(v);
        if exact::cmp_expr(deg as u128, base, params.delta(), n as u64, h) != Ordering::Less {
            final_deg_witness = Some(json!({ "point": v, "deg_h": deg }));
            break;
        }
    }
    out.push(CheckResult::conditional(
        "final-h-degree",
        final_deg_witness.is_none(),
        final_deg_witness,
        params
            .tau_deg_nonpositive()
            .then(|| "degree threshold is not positive at these parameters".to_string()),
    ));

    out.push(match domain_witness {
        None => CheckResult::pass("answer-domain"),
        Some(w) => CheckResult::fail("answer-domain", w),
    });

    // Frozen-graph consistency: an answered-by-path pair keeps the same
    // distance in the final h and g; a too-far pair stays too far in final g.
    let mut frozen_witness = None;
    for (pair, ran_update, d_h_then) in frozen_data {
        let (lo, hi) = (pair.lo().get(), pair.hi().get());
        let d_g_final = bfs::bfs_dist_capped(state.g(), lo, hi, h);
        if ran_update {
            let d_h_final = bfs::bfs_dist_capped(state.h(), lo, hi, h);
            if d_h_then != d_h_final || d_h_then != d_g_final {
                frozen_witness = Some(json!({
                    "pair": [lo, hi],
                    "d_h_then": d_h_then,
                    "d_h_final": d_h_final,
                    "d_g_final": d_g_final
                }));
                break;
            }
        } else if d_g_final.is_some() {
            frozen_witness = Some(json!({
                "pair": [lo, hi],
                "d_g_final": d_g_final,
                "reason": "pair became reachable within the horizon"
            }));
            break;
        }
    }
    out.push(match frozen_witness {
        None => CheckResult::pass("frozen-graph-consistency"),
        Some(w) => CheckResult::fail("frozen-graph-consistency", w),
    });

    out
}

// ---------------------------------------------------------------------------
// Construction invariants
// ---------------------------------------------------------------------------

fn precondition_violated(
    violations: &[PreconditionViolation],
    which: Inequality,
) -> Option<String> {
    violations
        .iter()
        .find(|v| v.inequality == which)
        .map(|v| format!("inequality ({}) violated: {}", v.inequality.number(), v.detail))
}

pub fn verify_construction_invariants(
    state: &AdvState,
    cons: &FinalConstruction,
    violations: &[PreconditionViolation],
) -> Vec<CheckResult> {
    let params = state.params();
    let n = params.n();
    let h = params.h();
    let mut out = Vec::new();

    // Partition: layers are disjoint and cover [n].
    let mut seen = vec![0u32; n as usize];
    let mut partition_witness = None;
    for (idx, set) in cons.layers.sets().iter().enumerate() {
        for &v in set {
            if v < 1 || v > n {
                partition_witness = Some(json!({ "point": v, "layer": idx, "reason": "out of range" }));
            } else {
                seen[(v - 1) as usize] += 1;
            }
        }
    }
    if partition_witness.is_none() {
        for v in 1..=n {
            let c = seen[(v - 1) as usize];
            if c != 1 {
                partition_witness = Some(json!({ "point": v, "layer_multiplicity": c }));
                break;
            }
        }
    }
    out.push(match partition_witness {
        None => CheckResult::pass("layer-partition"),
        Some(w) => CheckResult::fail("layer-partition", w),
    });

    // No revealed edge joins layers two or more apart.
    let mut crossing_witness = None;
    for (u, v) in state.h().edges() {
        let (lu, lv) = (cons.layers.layer_of(u), cons.layers.layer_of(v));
        if lu.abs_diff(lv) >= 2 {
            crossing_witness = Some(json!({ "edge": [u, v], "layers": [lu, lv] }));
            break;
        }
    }
    out.push(match crossing_witness {
        None => CheckResult::pass("no-crossing-h-edges"),
        Some(w) => CheckResult::fail("no-crossing-h-edges", w),
    });

    // Every revealed edge is in the final weighted graph.
    let mut subset_witness = None;
    for (u, v) in state.h().edges() {
        if !cons.curly.has_pair(PairKey::of(u, v)) {
            subset_witness = Some(json!({ "edge": [u, v] }));
            break;
        }
    }
    out.push(match subset_witness {
        None => CheckResult::pass("h-edges-in-final-graph"),
        Some(w) => CheckResult::fail("h-edges-in-final-graph", w),
    });

    // Planted-center query bound: deg_q(alpha) <= tau_query.
    let alpha = cons.alpha_hat.get();
    let deg_alpha = state.deg_q(alpha);
    out.push(CheckResult::conditional(
        "alpha-query-bound",
        params.within_chi_threshold(deg_alpha),
        Some(json!({ "alpha_hat": alpha, "deg_q": deg_alpha })),
        precondition_violated(violations, Inequality::QuerySpread),
    ));

    // Middle-layer size bound: sum |V_j|, j=1..h-1, vs 2 * tau_query * base^(h-2).
    let middle: u64 = cons.layers.sets()[1..h as usize]
        .iter()
        .map(|s| s.len() as u64)
        .sum();
    let bound_expr = PowerExpr {
        coeff: 2,
        delta_eighths: params.chi_threshold_expr(1).delta_eighths
            + params.degree_base_power(1, 1).delta_eighths * (h as i64 - 2),
        n_exp: 1 + (h as i64 - 2),
    };
    let layer_ok =
        exact::cmp_expr(middle as u128, bound_expr, params.delta(), n as u64, h) != Ordering::Greater;
    let hypo = precondition_violated(violations, Inequality::DegreeMargin)
        .or_else(|| precondition_violated(violations, Inequality::QuerySpread));
    out.push(CheckResult::conditional(
        "layer-size-bound",
        layer_ok,
        Some(json!({ "middle_layer_points": middle })),
        hypo,
    ));

    // Value set of d: within {0} u {1, ..., 2h}, with 1 exactly on
    // center-spoke pairs. Zero off the diagonal is the positivity axiom's
    // finding, not this check's.
    let cap = params.cap_half();
    let mut sgood_flags = vec![false; n as usize];
    for &v in &cons.s_good {
        sgood_flags[(v - 1) as usize] = true;
    }
    let mut value_witness = None;
    'vs: for src in cons.d.sources() {
        let row = cons.d.row(src).unwrap();
        for (i, &val) in row.iter().enumerate() {
            let other = i as u32 + 1;
            if other == src {
                continue;
            }
            let ok_range = (val as u32) <= cap;
            let is_spoke = (src == alpha && sgood_flags[i])
                || (other == alpha && sgood_flags[(src - 1) as usize]);
            let ok_one = val != 1 || is_spoke;
            if !(ok_range && ok_one) {
                value_witness = Some(json!({ "x": src, "y": other, "value": val }));
                break 'vs;
            }
        }
    }
    out.push(match value_witness {
        None => CheckResult::pass("d-value-set"),
        Some(w) => CheckResult::fail("d-value-set", w),
    });

    out
}

// ---------------------------------------------------------------------------
// Cost certificates
// ---------------------------------------------------------------------------

/// Largest `|{u : d_h(v,u) < h}|` over all points, the measured quantity the
/// output-cost certificate uses in place of its closed-form bound.
pub fn max_reach_within_horizon(state: &AdvState) -> u64 {
    let params = state.params();
    let n = params.n();
    let h = params.h();
    threads::pool().install(|| {
        (1..=n)
            .into_par_iter()
            .map(|v| bfs::count_within(state.h(), v, h - 1))
            .max()
            .unwrap_or(1)
    })
}

/// The exact finite-n cost certificates. Requires completed padding.
pub fn certify_bounds(
    state: &AdvState,
    cons: &FinalConstruction,
    reach_max: u64,
) -> Result<Vec<CheckResult>> {
    let params = state.params();
    let n = params.n() as u64;
    let h = params.h() as u64;
    let z = cons.z.get();

    let missing = (1..=params.n())
        .filter(|&v| v != z && !state.seen(PairKey::of(z, v)))
        .count() as u32;
    if missing > 0 {
        return Err(Error::IncompletePadding { z, missing });
    }

    let mut out = Vec::new();

    // (a) Output cost: cost(z) >= h(n-1) - h*R - (tau_query + |S|)/2, in
    // half-units: cost_half(z) >= 2h(n-1) - 2hR - (tau_query + |S|).
    // Rearranged so it reads: tau_query >= K with integer K.
    let k = 2 * h as i128 * (n as i128 - 1)
        - 2 * h as i128 * reach_max as i128
        - params.s_size() as i128
        - cons.cost_z_half as i128;
    let holds_a = k <= 0
        || exact::cmp_expr(
            k as u128,
            params.chi_threshold_expr(1),
            params.delta(),
            n,
            params.h(),
        ) != Ordering::Greater;
    out.push(if holds_a {
        CheckResult::pass("output-cost-lower")
    } else {
        CheckResult::fail(
            "output-cost-lower",
            json!({
                "cost_z_half": cons.cost_z_half,
                "reach_max": reach_max,
                "required_tau_query_at_least": k as i64
            }),
        )
    });

    // (b) Center cost: cost_half(alpha) <= |s_good| + 2h(n - |s_good|).
    let m = cons.s_good.len() as u64;
    let bound_b = m + 2 * h * (n - m);
    out.push(if cons.cost_alpha_half <= bound_b {
        CheckResult::pass("alpha-cost-upper")
    } else {
        CheckResult::fail(
            "alpha-cost-upper",
            json!({ "cost_alpha_half": cons.cost_alpha_half, "bound_half": bound_b }),
        )
    });

    // (c) Bad-set size: |B| * tau_deg <= 2|E_H|, written as
    // 2|E_H| + 2|B| >= |B| * (tau_deg + 2).
    let b = cons.bad.len() as u64;
    let eh = state.h().edge_count();
    let holds_c = exact::cmp_expr(
        (2 * eh + 2 * b) as u128,
        params.degree_base_power(b, 1),
        params.delta(),
        n,
        params.h(),
    ) != Ordering::Less;
    out.push(if holds_c {
        CheckResult::pass("bad-set-bound")
    } else {
        CheckResult::fail(
            "bad-set-bound",
            json!({ "bad": b, "h_edges": eh }),
        )
    });

    // The planted center can never beat the exact optimum.
    out.push(match cons.exact_median {
        Some((_, opt_cost)) => {
            if opt_cost <= cons.cost_alpha_half {
                CheckResult::pass("median-vs-alpha")
            } else {
                CheckResult::fail(
                    "median-vs-alpha",
                    json!({ "opt_cost_half": opt_cost, "cost_alpha_half": cons.cost_alpha_half }),
                )
            }
        }
        None => CheckResult::skipped("median-vs-alpha", "full matrix not materialized"),
    });

    Ok(out)
}

/// Reachability bound: every point sees at most `2 * base^(h-1)` points
/// within distance < h in the revealed graph.
fn reachability_check(state: &AdvState, reach_max: u64, violations: &[PreconditionViolation]) -> CheckResult {
    let params = state.params();
    let bound = params.degree_base_power(2, params.h() - 1);
    let holds = exact::cmp_expr(
        reach_max as u128,
        bound,
        params.delta(),
        params.n() as u64,
        params.h(),
    ) != Ordering::Greater;
    CheckResult::conditional(
        "h-reachability",
        holds,
        Some(json!({ "reach_max": reach_max })),
        precondition_violated(violations, Inequality::DegreeMargin),
    )
}

// ---------------------------------------------------------------------------
// Orchestration
// ---------------------------------------------------------------------------

/// Runs the selected check families and assembles the report.
pub fn run_checks(
    state: &AdvState,
    cons: &FinalConstruction,
    checks: &CheckSet,
    meta: &ReportMeta,
) -> CertificateReport {
    let params = state.params();
    let violations = check_preconditions(params, state.q_used());
    let mut results = Vec::new();

    if checks.metric_axioms {
        results.extend(verify_metric_axioms(&cons.d));
    }
    if checks.consistency {
        results.push(verify_consistency(state, cons));
    }
    if checks.adversary_invariants {
        results.extend(verify_adversary_invariants(state));
    }
    if checks.construction_invariants {
        results.extend(verify_construction_invariants(state, cons, &violations));
    }
    let mut reach = None;
    if checks.certificates {
        let r = max_reach_within_horizon(state);
        reach = Some(r);
        match certify_bounds(state, cons, r) {
            Ok(entries) => results.extend(entries),
            Err(e) => results.push(CheckResult::fail(
                "output-cost-lower",
                json!({ "error": e.code(), "detail": e.to_string() }),
            )),
        }
        results.push(reachability_check(state, r, &violations));
    }

    let ratio = Fraction::new(cons.cost_z_half, cons.cost_alpha_half);
    let ratio_vs_opt = cons
        .exact_median
        .and_then(|(_, c)| Fraction::new(cons.cost_z_half, c));
    let mut warnings = Vec::new();
    if params.tau_deg_nonpositive() {
        warnings.push("degree-pruning threshold is not positive; pruning lemmas are void".to_string());
    }

    CertificateReport {
        schema: SCHEMA.to_string(),
        half_units: true,
        n: params.n(),
        h: params.h(),
        delta: params.delta().to_string(),
        mode: params.mode().to_string(),
        s_size: params.s_size(),
        tau_deg_approx: params.tau_deg_approx(),
        tau_query_approx: params.tau_query_approx(),
        opponent: meta.opponent.clone(),
        z: cons.z.get(),
        alpha_hat: cons.alpha_hat.get(),
        q_used: state.q_used(),
        padded: meta.padded,
        parameter_warnings: warnings,
        precondition_violations: violations,
        checks: results,
        cost_z_half: cons.cost_z_half,
        cost_alpha_half: cons.cost_alpha_half,
        ratio,
        ratio_approx: ratio.map(|f| f.approx()),
        opt_point: cons.exact_median.map(|(p, _)| p.get()),
        opt_cost_half: cons.exact_median.map(|(_, c)| c),
        ratio_vs_opt,
        reach_within_horizon_max: reach,
    }
}

/// Axiom-only report for an imported matrix (no session attached).
pub fn verify_matrix_only(d: &DistMatrix) -> Vec<CheckResult> {
    verify_metric_axioms(d)
}
