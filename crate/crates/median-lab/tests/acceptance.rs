//! Acceptance suite. Each test prints one pass/fail line per criterion
//! (visible with `cargo test -- --nocapture`) and asserts it.

mod common;

use common::naive::{naive_construct, NaiveAdv};
use median_lab::harness::t1_config;
use median_lab::{
    build, run, AdvState, BuildOptions, CheckSet, CheckStatus, Delta, DistMatrix,
    Layers, Mode, OpponentSpec, PointId, RunConfig,
};
use std::collections::BTreeSet;
use std::time::Instant;

fn criterion_line(num: u32, name: &str, pass: bool, detail: &str) {
    let status = if pass { "PASS" } else { "FAIL" };
    println!("criterion {num} [{status}] {name}{}{detail}", if detail.is_empty() { "" } else { " — " });
}

fn p(id: u32) -> PointId {
    PointId::new(id).unwrap()
}

// ---------------------------------------------------------------------------
// Criterion 1: the reference instance, re-derived independently first.
// ---------------------------------------------------------------------------

#[test]
fn criterion_1_reference_instance() {
    let started = Instant::now();

    // Independent derivation: the naive simulator recomputes every frozen
    // value from scratch before the production path is trusted with them.
    let mut sim = NaiveAdv::new(8, 2, 1, 2, false);
    let sim_answers: Vec<u32> = [(5, 6), (5, 7), (5, 8), (1, 5)]
        .into_iter()
        .map(|(a, b)| sim.query(a, b))
        .collect();
    assert_eq!(sim_answers, vec![2, 2, 4, 3]);
    assert_eq!(sim.pad(5), vec![3, 3, 3]);
    let sim_cons = naive_construct(&sim, 5);
    assert_eq!(sim_cons.alpha, 1);
    assert_eq!(sim_cons.cost(5), 20);
    assert_eq!(sim_cons.cost(1), 20);

    // Production run of the same instance.
    let outcome = run(&t1_config()).unwrap();
    let answers: Vec<u32> = outcome
        .trace
        .queries
        .iter()
        .map(|(_, d)| d.expect_finite())
        .collect();
    assert_eq!(answers, vec![2, 2, 4, 3, 3, 3, 3]);
    assert_eq!(outcome.trace.padded, 3);

    let cons = &outcome.construction;
    assert_eq!(cons.alpha_hat.get(), 1);
    assert_eq!(cons.layers.sets()[0], vec![1]);
    assert_eq!(cons.layers.sets()[1], vec![5]);
    assert_eq!(cons.layers.sets()[2], vec![2, 3, 4, 6, 7, 8]);
    assert_eq!(cons.bad, vec![5, 6]);
    for (u, v) in [(1, 7), (1, 8)] {
        assert_eq!(cons.curly.weight(median_lab::PairKey::of(u, v)), Some(1));
    }
    assert_eq!(cons.d.get(1, 7), Some(1));
    assert_eq!(cons.d.get(1, 5), Some(3));
    assert_eq!(cons.d.get(1, 2), Some(4));
    assert_eq!(cons.cost_z_half, 20);
    assert_eq!(cons.cost_alpha_half, 20);

    for c in &outcome.report.checks {
        assert_eq!(
            c.status,
            CheckStatus::Pass,
            "check {} not passing on the reference instance: {:?}",
            c.name,
            c.witness
        );
    }

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    criterion_line(1, "reference instance regression", true, &format!("{elapsed:?}"));
}

// ---------------------------------------------------------------------------
// Criteria 2-5: the verification grid, run once and judged four ways.
// ---------------------------------------------------------------------------

fn grid_configs() -> Vec<RunConfig> {
    let mut out = Vec::new();
    for &n in &[50u32, 120, 300] {
        for &h in &[2u32, 3] {
            for delta in ["0.1", "0.3"] {
                for mode in [Mode::Basic, Mode::Optimized] {
                    for opp in [
                        OpponentSpec::Exhaustive { budget: 2 * n as u64 },
                        OpponentSpec::HubScan { hubs: 3 },
                        OpponentSpec::BlockScan,
                    ] {
                        out.push(RunConfig::new(n, h, delta, mode, opp));
                    }
                }
            }
        }
    }
    out
}

#[test]
fn criteria_2_to_5_verification_grid() {
    let started = Instant::now();
    let grid = grid_configs();
    assert_eq!(grid.len(), 72);

    struct CellResult {
        label: String,
        tau_deg_nonpositive: bool,
        checks: Vec<(String, CheckStatus, String)>,
    }

    let mut cells = Vec::new();
    for config in &grid {
        let label = format!(
            "n={} h={} delta={} mode={} opp={}",
            config.n,
            config.h,
            config.delta,
            config.mode,
            config.opponent.label()
        );
        let outcome = run(config).unwrap_or_else(|e| panic!("{label}: run failed: {e}"));
        let delta = Delta::parse(&config.delta).unwrap();
        let params =
            median_lab::AdvParams::new(config.n, config.h, delta, config.mode).unwrap();
        cells.push(CellResult {
            label,
            tau_deg_nonpositive: params.tau_deg_nonpositive(),
            checks: outcome
                .report
                .checks
                .iter()
                .map(|c| {
                    (
                        c.name.clone(),
                        c.status,
                        c.witness.as_ref().map(|w| w.to_string()).unwrap_or_default(),
                    )
                })
                .collect(),
        });
    }

    let status_of = |cell: &CellResult, name: &str| -> (CheckStatus, String) {
        cell.checks
            .iter()
            .find(|(n, _, _)| n == name)
            .map(|(_, s, w)| (*s, w.clone()))
            .unwrap_or_else(|| panic!("{}: missing check {name}", cell.label))
    };

    // Criterion 2: metric axioms, zero violations everywhere.
    let mut c2 = true;
    for cell in &cells {
        for name in [
            "metric-identity",
            "metric-positivity",
            "metric-symmetry",
            "metric-triangle",
        ] {
            let (status, witness) = status_of(cell, name);
            if status != CheckStatus::Pass {
                c2 = false;
                println!("criterion 2 violation at {}: {name} {witness}", cell.label);
            }
        }
    }
    criterion_line(2, "metric-axiom suite (72 runs)", c2, "");

    // Criterion 3: stored answers equal the final metric exactly.
    let mut c3 = true;
    for cell in &cells {
        let (status, witness) = status_of(cell, "answer-consistency");
        if status != CheckStatus::Pass {
            c3 = false;
            println!("criterion 3 violation at {}: {witness}", cell.label);
        }
    }
    criterion_line(3, "answer/metric consistency suite", c3, "");

    // Criterion 4: adversary invariants. The final-degree lemma's guarantee
    // is void where the pruning threshold is not positive (tau_deg <= 0);
    // such cells may report a void SKIP, every other outcome must be a pass.
    let mut c4 = true;
    let mut void_cells = Vec::new();
    for cell in &cells {
        for name in ["graph-chain", "h-degree-growth", "h-edge-growth", "h-edge-budget"] {
            let (status, witness) = status_of(cell, name);
            if status != CheckStatus::Pass {
                c4 = false;
                println!("criterion 4 violation at {}: {name} {witness}", cell.label);
            }
        }
        let (status, witness) = status_of(cell, "final-h-degree");
        match status {
            CheckStatus::Pass => {}
            CheckStatus::Skipped if cell.tau_deg_nonpositive => {
                void_cells.push(cell.label.clone());
            }
            _ => {
                c4 = false;
                println!(
                    "criterion 4 violation at {}: final-h-degree {status:?} {witness}",
                    cell.label
                );
            }
        }
    }
    for v in &void_cells {
        println!("criterion 4 note: final-h-degree guarantee void (tau_deg <= 0) at {v}");
    }
    criterion_line(4, "adversary invariant suite", c4, "");

    // Criterion 5: cost certificates (a)-(c), exact arithmetic.
    let mut c5 = true;
    for cell in &cells {
        for name in ["output-cost-lower", "alpha-cost-upper", "bad-set-bound"] {
            let (status, witness) = status_of(cell, name);
            if status != CheckStatus::Pass {
                c5 = false;
                println!("criterion 5 violation at {}: {name} {witness}", cell.label);
            }
        }
    }
    criterion_line(5, "cost certificates (a)-(c)", c5, "");

    let elapsed = started.elapsed();
    println!("grid wall time: {elapsed:?}");
    assert!(c2, "criterion 2 failed");
    assert!(c3, "criterion 3 failed");
    assert!(c4, "criterion 4 failed");
    assert!(c5, "criterion 5 failed");
    assert!(elapsed.as_secs_f64() < 120.0, "grid took {elapsed:?}");
}

// ---------------------------------------------------------------------------
// Criterion 6: desk-scale ratio demonstration.
// ---------------------------------------------------------------------------

#[test]
fn criterion_6_ratio_demonstration() {
    let started = Instant::now();
    let mut config = RunConfig::new(
        2000,
        2,
        "0.05",
        Mode::Basic,
        OpponentSpec::HubScan { hubs: 3 },
    );
    // Row mode: single-source distances from the output and the center only
    // (plus the query cover), no full-matrix work.
    config.matrix_cap = 0;
    config.sampled_rows = 2;
    config.checks = CheckSet::certificates_only();
    let outcome = run(&config).unwrap();
    let report = &outcome.report;

    assert_eq!(
        report.check("answer-consistency").unwrap().status,
        CheckStatus::Pass
    );
    for name in ["output-cost-lower", "alpha-cost-upper", "bad-set-bound"] {
        assert_eq!(
            report.check(name).unwrap().status,
            CheckStatus::Pass,
            "{name}"
        );
    }

    // ratio >= 2.0, exactly: cost_z >= 2 * cost_alpha.
    let pass = report.cost_z_half >= 2 * report.cost_alpha_half;
    let detail = format!(
        "ratio = {}/{} ~ {:.4}, q_used = {}",
        report.cost_z_half,
        report.cost_alpha_half,
        report.ratio_approx.unwrap(),
        report.q_used
    );
    let elapsed = started.elapsed();
    criterion_line(6, "ratio demonstration at n=2000", pass, &format!("{detail}, {elapsed:?}"));
    assert!(pass, "{detail}");
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
}

// ---------------------------------------------------------------------------
// Criterion 7: monotone ratio trend over n.
// ---------------------------------------------------------------------------

#[test]
fn criterion_7_monotone_ratio_trend() {
    let grid: Vec<RunConfig> = [500u32, 1000, 2000]
        .into_iter()
        .map(|n| {
            let mut c = RunConfig::new(
                n,
                2,
                "0.05",
                Mode::Basic,
                OpponentSpec::HubScan { hubs: 3 },
            );
            c.matrix_cap = 0;
            c.sampled_rows = 2;
            c.checks = CheckSet::certificates_only();
            c
        })
        .collect();

    // Recompute costs independently from the materialized metric rows as the
    // oracle for the reported values.
    let mut measured = Vec::new();
    for config in &grid {
        let outcome = run(config).unwrap();
        let z_row_sum: u64 = outcome
            .construction
            .d
            .row(outcome.construction.z.get())
            .unwrap()
            .iter()
            .map(|&x| x as u64)
            .sum();
        let a_row_sum: u64 = outcome
            .construction
            .d
            .row(outcome.construction.alpha_hat.get())
            .unwrap()
            .iter()
            .map(|&x| x as u64)
            .sum();
        assert_eq!(z_row_sum, outcome.report.cost_z_half);
        assert_eq!(a_row_sum, outcome.report.cost_alpha_half);
        measured.push((config.n, z_row_sum, a_row_sum));
    }

    // Nondecreasing ratios, all above 3/2 (exact fraction comparisons).
    let mut pass = true;
    for w in measured.windows(2) {
        let (_, z0, a0) = w[0];
        let (_, z1, a1) = w[1];
        if (z0 as u128) * (a1 as u128) > (z1 as u128) * (a0 as u128) {
            pass = false;
        }
    }
    for &(_, z, a) in &measured {
        if 2 * z < 3 * a {
            pass = false;
        }
    }

    // The sweep surface reports the same costs, row order preserved.
    let rows = median_lab::sweep(&grid);
    assert_eq!(rows.len(), 3);
    for (row, &(n, z, a)) in rows.iter().zip(measured.iter()) {
        assert_eq!(row.n, n);
        assert!(row.error.is_empty(), "{}", row.error);
        assert_eq!((row.cost_z_half, row.cost_alpha_half), (z, a));
    }

    let detail = measured
        .iter()
        .map(|(n, z, a)| format!("n={n}: {z}/{a} ~ {:.4}", *z as f64 / *a as f64))
        .collect::<Vec<_>>()
        .join("; ");
    criterion_line(7, "monotone ratio trend", pass, &detail);
    assert!(pass, "{detail}");

    // Frozen regression values, first computed by this implementation and
    // cross-checked against the row sums above.
    let frozen: [(u32, u64, u64); 3] = FROZEN_TREND;
    for (got, want) in measured.iter().zip(frozen.iter()) {
        assert_eq!(got, want, "trend regression moved");
    }
}

/// Measured once from the first successful run of this suite (cost pairs in
/// half-units, cross-checked against the row sums); any drift is a
/// determinism regression.
const FROZEN_TREND: [(u32, u64, u64); 3] = [
    (500, 1926, 652),
    (1000, 3851, 1223),
    (2000, 7701, 2369),
];

// ---------------------------------------------------------------------------
// Criterion 8: planted faults are caught by exactly the matching check.
// ---------------------------------------------------------------------------

#[test]
fn criterion_8_planted_fault_detection() {
    let t1 = || {
        let outcome = run(&t1_config()).unwrap();
        (outcome.state, outcome.construction)
    };
    let all = CheckSet::all();
    let meta = median_lab::ReportMeta::default();
    let run_on = |state: &AdvState, cons: &median_lab::FinalConstruction| {
        median_lab::run_checks(state, cons, &all, &meta)
    };
    let mut problems: Vec<String> = Vec::new();
    let check_exactly = |report: &median_lab::CertificateReport, target: &str| -> Option<String> {
        let failed: Vec<&str> = report
            .failed_checks()
            .map(|c| c.name.as_str())
            .collect();
        let ok = failed == vec![target]
            && report.check(target).unwrap().witness.is_some();
        if ok {
            None
        } else {
            Some(format!("failed checks {failed:?}, expected [{target}]"))
        }
    };

    // (1) asymmetric entry: perturb one orientation of a non-queried pair.
    {
        let (state, mut cons) = t1();
        if let DistMatrix::Full { n, data } = &mut cons.d {
            let n = *n as usize;
            data[2 * n + 1] = 3; // d(3,2) only; d(2,3) stays 4
        }
        if let Some(d) = check_exactly(&run_on(&state, &cons), "metric-symmetry") {
            problems.push(format!("asymmetric entry: {d}"));
        }
    }

    // (2) zero off-diagonal between twin points (both orientations, so
    // symmetry and triangle stay quiet).
    {
        let (state, mut cons) = t1();
        if let DistMatrix::Full { n, data } = &mut cons.d {
            let n = *n as usize;
            data[n + 2] = 0; // d(2,3)
            data[2 * n + 1] = 0; // d(3,2)
        }
        if let Some(d) = check_exactly(&run_on(&state, &cons), "metric-positivity") {
            problems.push(format!("zero off-diagonal: {d}"));
        }
    }

    // (3) forged flags: rebuild the metric with every flag cleared. The
    // first detectable mismatch is the padded pair (2,5).
    {
        let (state, _) = t1();
        let (params, g, h, q, mut log) = state.into_parts();
        for r in &mut log {
            r.chi = false;
        }
        let forged = AdvState::from_parts(params, g, h, q, log);
        let cons = build(&forged, p(5), &BuildOptions::default()).unwrap();
        let report = run_on(&forged, &cons);
        let failed: Vec<&str> = report.failed_checks().map(|c| c.name.as_str()).collect();
        let witness = report.check("answer-consistency").unwrap().witness.clone();
        let ok = failed == vec!["answer-consistency"]
            && witness
                .as_ref()
                .and_then(|w| w.get("pair"))
                .map(|p| p == &serde_json::json!([2, 5]))
                .unwrap_or(false);
        if !ok {
            problems.push(format!("forged flag: failed {failed:?} witness {witness:?}"));
        }
    }

    // (4) a pruned candidate edge re-added behind the log's back.
    {
        let (state, cons) = t1();
        let (params, mut g, h, q, log) = state.into_parts();
        g.add_edge(6, 7); // removed at query 3 per the log
        let forged = AdvState::from_parts(params, g, h, q, log);
        if let Some(d) = check_exactly(&run_on(&forged, &cons), "graph-chain") {
            problems.push(format!("re-added candidate edge: {d}"));
        }
    }

    // (5) broken partition: point 6 duplicated into two layers.
    {
        let (state, mut cons) = t1();
        cons.layers = Layers::from_sets(
            vec![vec![1], vec![5, 6], vec![2, 3, 4, 6, 7, 8]],
            8,
        );
        if let Some(d) = check_exactly(&run_on(&state, &cons), "layer-partition") {
            problems.push(format!("broken partition: {d}"));
        }
    }

    for d in &problems {
        println!("criterion 8: {d}");
    }
    criterion_line(8, "planted-fault detection", problems.is_empty(), "");
    assert!(problems.is_empty(), "{problems:?}");
}

// ---------------------------------------------------------------------------

#[test]
fn t1_layer_sets_cross_check() {
    // Belt-and-braces: the naive construction agrees with the production one
    // on the reference instance's layer sets.
    let mut sim = NaiveAdv::new(8, 2, 1, 2, false);
    for (a, b) in [(5, 6), (5, 7), (5, 8), (1, 5)] {
        sim.query(a, b);
    }
    sim.pad(5);
    let ncons = naive_construct(&sim, 5);
    let outcome = run(&t1_config()).unwrap();
    for (idx, set) in ncons.layers.iter().enumerate() {
        let fast: BTreeSet<u32> = outcome.construction.layers.sets()[idx]
            .iter()
            .copied()
            .collect();
        assert_eq!(&fast, set);
    }
}
