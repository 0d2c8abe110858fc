//! Drives an opponent against a fresh oracle session, then builds the final
//! construction and runs the requested checks.

use crate::adversary::AdvState;
use crate::construction::{build, BuildOptions, FinalConstruction};
use crate::error::{Error, Result};
use crate::exact::Delta;
use crate::halfdist::HalfDist;
use crate::opponents::{OpponentAction, OpponentSpec};
use crate::params::{check_preconditions, AdvParams, Mode};
use crate::point::PairKey;
use crate::threads;
use crate::verify::{run_checks, CertificateReport, CheckSet, ReportMeta};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub n: u32,
    pub h: u32,
    /// Exact rational, e.g. "0.05" or "1/20".
    pub delta: String,
    pub mode: Mode,
    pub opponent: OpponentSpec,
    #[serde(default)]
    pub strict: bool,
    #[serde(default)]
    pub checks: CheckSet,
    #[serde(default = "default_matrix_cap")]
    pub matrix_cap: u32,
    #[serde(default = "default_sampled_rows")]
    pub sampled_rows: u32,
}

fn default_matrix_cap() -> u32 {
    BuildOptions::default().matrix_cap
}

fn default_sampled_rows() -> u32 {
    BuildOptions::default().sampled_rows
}

impl RunConfig {
    pub fn new(n: u32, h: u32, delta: &str, mode: Mode, opponent: OpponentSpec) -> RunConfig {
        RunConfig {
            n,
            h,
            delta: delta.to_string(),
            mode,
            opponent,
            strict: false,
            checks: CheckSet::all(),
            matrix_cap: default_matrix_cap(),
            sampled_rows: default_sampled_rows(),
        }
    }

    fn build_options(&self) -> BuildOptions {
        BuildOptions {
            matrix_cap: self.matrix_cap,
            sampled_rows: self.sampled_rows,
        }
    }
}

/// The opponent's side of a finished session.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Trace {
    pub queries: Vec<(PairKey, HalfDist)>,
    pub z: u32,
    pub q_used: u64,
    pub padded: u64,
}

#[derive(Debug)]
pub struct RunOutcome {
    pub state: AdvState,
    pub trace: Trace,
    pub construction: FinalConstruction,
    pub report: CertificateReport,
}

/// Runs one configured session end to end.
pub fn run(config: &RunConfig) -> Result<RunOutcome> {
    let delta = Delta::parse(&config.delta)?;
    let params = AdvParams::new(config.n, config.h, delta, config.mode)?;

    if config.strict {
        let mut problems = Vec::new();
        if params.tau_deg_nonpositive() {
            problems.push("degree-pruning threshold is not positive".to_string());
        }
        // Padding counts toward the reported query total, so the declared
        // budget includes the up-to-n-1 dummy queries.
        let budget =
            config.opponent.declared_query_bound(config.n, config.h) + config.n as u64 - 1;
        for v in check_preconditions(&params, budget) {
            problems.push(format!("inequality ({}): {}", v.inequality.number(), v.detail));
        }
        if !problems.is_empty() {
            return Err(Error::PreconditionViolated {
                detail: problems.join("; "),
            });
        }
    }

    let mut opponent = config.opponent.build(config.n, config.h);
    let mut state = AdvState::init(params);
    let mut history: Vec<(PairKey, HalfDist)> = Vec::new();
    let z = loop {
        match opponent.next(&history) {
            OpponentAction::Query(a, b) => {
                let ans = state.answer(a, b).map_err(|e| Error::OpponentFault {
                    step: history.len() as u64 + 1,
                    detail: format!("{} ({})", e, e.code()),
                })?;
                history.push((PairKey::new(a, b).unwrap(), ans));
            }
            OpponentAction::Output(z) => break z,
        }
    };

    let pads = state.pad_output(z)?;
    let padded = pads.len() as u64;
    history.extend(pads);
    let trace = Trace {
        queries: history,
        z: z.get(),
        q_used: state.q_used(),
        padded,
    };

    let construction = build(&state, z, &config.build_options())?;
    let meta = ReportMeta {
        opponent: config.opponent.label(),
        padded,
    };
    let report = run_checks(&state, &construction, &config.checks, &meta);

    Ok(RunOutcome {
        state,
        trace,
        construction,
        report,
    })
}

/// One line of sweep output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: u32,
    pub h: u32,
    pub delta: String,
    pub mode: String,
    pub opponent: String,
    pub q_used: u64,
    pub cost_z_half: u64,
    pub cost_alpha_half: u64,
    pub ratio: String,
    pub ratio_approx: f64,
    pub checks_passed: usize,
    pub checks_failed: usize,
    pub checks_skipped: usize,
    pub error: String,
}

pub const SWEEP_CSV_SCHEMA: &str =
    "# median-lab-sweep-v1; distances and costs in half-units";
pub const SWEEP_CSV_HEADER: &str = "n,h,delta,mode,opponent,q_used,cost_z_half,\
cost_alpha_half,ratio,ratio_approx,checks_passed,checks_failed,checks_skipped,error";

/// Runs every config (rows may execute in parallel; output order follows the
/// grid order). Per-row failures are recorded and the sweep continues.
pub fn sweep(grid: &[RunConfig]) -> Vec<SweepRow> {
    threads::pool().install(|| {
        grid.par_iter()
            .map(|config| match run(config) {
                Ok(outcome) => {
                    let r = &outcome.report;
                    let (mut pass, mut fail, mut skip) = (0, 0, 0);
                    for c in &r.checks {
                        match c.status {
                            crate::verify::CheckStatus::Pass => pass += 1,
                            crate::verify::CheckStatus::Fail => fail += 1,
                            crate::verify::CheckStatus::Skipped => skip += 1,
                        }
                    }
                    SweepRow {
                        n: config.n,
                        h: config.h,
                        delta: r.delta.clone(),
                        mode: r.mode.clone(),
                        opponent: r.opponent.clone(),
                        q_used: r.q_used,
                        cost_z_half: r.cost_z_half,
                        cost_alpha_half: r.cost_alpha_half,
                        ratio: r
                            .ratio
                            .map(|f| format!("{}/{}", f.num, f.den))
                            .unwrap_or_default(),
                        ratio_approx: r.ratio_approx.unwrap_or(f64::NAN),
                        checks_passed: pass,
                        checks_failed: fail,
                        checks_skipped: skip,
                        error: String::new(),
                    }
                }
                Err(e) => SweepRow {
                    n: config.n,
                    h: config.h,
                    delta: config.delta.clone(),
                    mode: config.mode.to_string(),
                    opponent: config.opponent.label(),
                    q_used: 0,
                    cost_z_half: 0,
                    cost_alpha_half: 0,
                    ratio: String::new(),
                    ratio_approx: f64::NAN,
                    checks_passed: 0,
                    checks_failed: 0,
                    checks_skipped: 0,
                    error: format!("{} ({})", e, e.code()),
                },
            })
            .collect()
    })
}

/// Renders sweep rows as CSV, schema comment and header included.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::new();
    out.push_str(SWEEP_CSV_SCHEMA);
    out.push('\n');
    out.push_str(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.n,
            r.h,
            r.delta,
            r.mode,
            r.opponent,
            r.q_used,
            r.cost_z_half,
            r.cost_alpha_half,
            r.ratio,
            r.ratio_approx,
            r.checks_passed,
            r.checks_failed,
            r.checks_skipped,
            r.error
        ));
    }
    out
}

/// The reference instance: n=8, h=2, delta=1/2, scripted queries
/// (5,6),(5,7),(5,8),(1,5), output 5.
pub fn t1_config() -> RunConfig {
    RunConfig::new(
        8,
        2,
        "1/2",
        Mode::Basic,
        OpponentSpec::Scripted {
            queries: vec![(5, 6), (5, 7), (5, 8), (1, 5)],
            output: 5,
        },
    )
}
