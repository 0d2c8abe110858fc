//! Command-line interface.
//!
//! Exit codes: 0 when every non-skipped check passes, 1 when a check fails,
//! 2 on usage errors, bad parameters, or opponent faults.

use clap::{Args, Parser, Subcommand};
use median_lab::harness::t1_config;
use median_lab::{
    exact::Delta, matrix_io, oracle_io, params::AdvParams, verify, CertificateReport,
    CheckStatus, Error, Mode, OpponentSpec, RunConfig,
};
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "median-lab", version, about = "Adversarial lower-bound laboratory for metric 1-median selection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ParamArgs {
    /// Number of points
    #[arg(long)]
    n: u32,
    /// Distance horizon (answers are capped at h units)
    #[arg(long)]
    h: u32,
    /// Density parameter, exact rational: "0.05" or "1/20"
    #[arg(long)]
    delta: String,
    /// Threshold parameterization
    #[arg(long, default_value = "basic")]
    mode: String,
}

#[derive(Subcommand)]
enum Command {
    /// Run one opponent against a fresh oracle session and report.
    Run {
        #[command(flatten)]
        params: ParamArgs,
        /// Opponent: exhaustive:BUDGET, hub_scan:K, or block_scan
        #[arg(long)]
        opponent: String,
        /// Refuse to run when parameter inequalities are violated
        #[arg(long)]
        strict: bool,
        /// Write the final metric as a text matrix (full matrices only)
        #[arg(long, value_name = "PATH")]
        export_matrix: Option<String>,
        /// Write the certificate report as JSON
        #[arg(long, value_name = "PATH")]
        report: Option<String>,
        /// Materialize the full matrix up to this n; row mode beyond
        #[arg(long, default_value_t = 1500)]
        matrix_cap: u32,
    },
    /// Run a grid of configs from a JSON file and print CSV rows.
    Sweep {
        /// JSON file holding an array of run configs
        #[arg(long)]
        grid: String,
        /// Output CSV path (stdout when omitted)
        #[arg(long)]
        out: Option<String>,
    },
    /// Re-check metric axioms on an exported matrix file.
    Verify {
        #[arg(long)]
        matrix: String,
    },
    /// Run the built-in reference instance and print its known values.
    Demo,
    /// Serve the line-oriented oracle protocol on stdin/stdout.
    Oracle {
        #[command(flatten)]
        params: ParamArgs,
        /// Refuse to serve when parameter inequalities are violated
        #[arg(long)]
        strict: bool,
    },
}

fn print_checks(report: &CertificateReport) {
    for c in &report.checks {
        let status = match c.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "SKIP",
        };
        print!("  [{status}] {}", c.name);
        if let Some(note) = &c.note {
            print!("  ({note})");
        }
        if c.status == CheckStatus::Fail {
            if let Some(w) = &c.witness {
                print!("  witness={w}");
            }
        }
        println!();
    }
}

fn print_summary(report: &CertificateReport) {
    println!(
        "n={} h={} delta={} mode={} opponent={}",
        report.n, report.h, report.delta, report.mode, report.opponent
    );
    println!(
        "q_used={} (padded {})  z={}  alpha_hat={}",
        report.q_used, report.padded, report.z, report.alpha_hat
    );
    for w in &report.parameter_warnings {
        println!("warning: {w}");
    }
    for v in &report.precondition_violations {
        println!("warning: inequality ({}) violated: {}", v.inequality.number(), v.detail);
    }
    println!(
        "cost(z)={} half-units, cost(alpha_hat)={} half-units",
        report.cost_z_half, report.cost_alpha_half
    );
    if let (Some(r), Some(a)) = (report.ratio, report.ratio_approx) {
        println!("ratio = {}/{} ~ {:.4}", r.num, r.den, a);
    }
    if let (Some(p), Some(c)) = (report.opt_point, report.opt_cost_half) {
        println!("exact median = {p} at cost {c} half-units");
    }
    print_checks(report);
}

fn parse_mode(s: &str) -> Result<Mode, Error> {
    s.parse()
}

fn cmd_run(
    params: ParamArgs,
    opponent: String,
    strict: bool,
    export_matrix: Option<String>,
    report_path: Option<String>,
    matrix_cap: u32,
) -> Result<i32, Error> {
    let mut config = RunConfig::new(
        params.n,
        params.h,
        &params.delta,
        parse_mode(&params.mode)?,
        OpponentSpec::parse(&opponent)?,
    );
    config.strict = strict;
    config.matrix_cap = matrix_cap;
    let outcome = median_lab::run(&config)?;
    print_summary(&outcome.report);
    if let Some(path) = export_matrix {
        let mut w = BufWriter::new(File::create(&path)?);
        matrix_io::write_matrix(&mut w, &outcome.construction.d, params.h, outcome.state.params().mode())?;
        w.flush()?;
        println!("matrix written to {path}");
    }
    if let Some(path) = report_path {
        let json = serde_json::to_string_pretty(&outcome.report).expect("report serializes");
        std::fs::write(&path, json)?;
        println!("report written to {path}");
    }
    Ok(outcome.report.exit_code())
}

fn cmd_sweep(grid_path: String, out: Option<String>) -> Result<i32, Error> {
    let text = std::fs::read_to_string(&grid_path)?;
    let grid: Vec<RunConfig> = serde_json::from_str(&text).map_err(|e| Error::BadLine {
        detail: format!("grid file: {e}"),
    })?;
    let rows = median_lab::sweep(&grid);
    let csv = median_lab::sweep_csv(&rows);
    match out {
        Some(path) => std::fs::write(&path, &csv)?,
        None => print!("{csv}"),
    }
    let any_error = rows.iter().any(|r| !r.error.is_empty());
    let any_failed = rows.iter().any(|r| r.checks_failed > 0);
    Ok(if any_failed {
        1
    } else if any_error {
        2
    } else {
        0
    })
}

fn cmd_verify(matrix: String) -> Result<i32, Error> {
    let mut r = BufReader::new(File::open(&matrix)?);
    let (d, h, mode) = matrix_io::read_matrix(&mut r)?;
    println!("matrix: n={} h={h} mode={mode}", d.n());
    let checks = verify::verify_matrix_only(&d);
    let mut failed = false;
    for c in &checks {
        let status = match c.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => {
                failed = true;
                "FAIL"
            }
            CheckStatus::Skipped => "SKIP",
        };
        print!("  [{status}] {}", c.name);
        if let Some(w) = &c.witness {
            print!("  witness={w}");
        }
        println!();
    }
    Ok(if failed { 1 } else { 0 })
}

fn cmd_demo() -> Result<i32, Error> {
    let outcome = median_lab::run(&t1_config())?;
    println!("reference instance: n=8 h=2 delta=1/2 BASIC");
    println!("scripted queries (5,6) (5,7) (5,8) (1,5), output 5");
    let answers: Vec<u32> = outcome
        .trace
        .queries
        .iter()
        .take(4)
        .map(|(_, d)| d.expect_finite())
        .collect();
    let pads: Vec<u32> = outcome
        .trace
        .queries
        .iter()
        .skip(4)
        .map(|(_, d)| d.expect_finite())
        .collect();
    println!("answers (half-units): {answers:?}   expected [2, 2, 4, 3]");
    println!("pads    (half-units): {pads:?}   expected [3, 3, 3]");
    let cons = &outcome.construction;
    println!("alpha_hat = {}   expected 1", cons.alpha_hat);
    println!(
        "layers = {:?}   expected [[1], [5], [2, 3, 4, 6, 7, 8]]",
        cons.layers.sets()
    );
    println!("bad = {:?}   expected [5, 6]", cons.bad);
    println!("s_good = {:?}   expected [7, 8]", cons.s_good);
    println!(
        "d(1,7)={} d(1,5)={} d(1,2)={}   expected 1 3 4",
        cons.d.get(1, 7).unwrap(),
        cons.d.get(1, 5).unwrap(),
        cons.d.get(1, 2).unwrap()
    );
    println!(
        "cost(1)={} cost(5)={}   expected 20 20 (half-units)",
        cons.cost_alpha_half, cons.cost_z_half
    );
    print_summary(&outcome.report);
    Ok(outcome.report.exit_code())
}

fn cmd_oracle(params: ParamArgs, strict: bool) -> Result<i32, Error> {
    let delta = Delta::parse(&params.delta)?;
    let adv_params = AdvParams::new(params.n, params.h, delta, parse_mode(&params.mode)?)?;
    if strict && adv_params.tau_deg_nonpositive() {
        return Err(Error::PreconditionViolated {
            detail: "degree-pruning threshold is not positive".to_string(),
        });
    }
    let stdin = std::io::stdin();
    let mut stdout = std::io::stdout();
    match oracle_io::serve(adv_params, stdin.lock(), &mut stdout)? {
        oracle_io::SessionEnd::Finished { .. } => Ok(0),
        oracle_io::SessionEnd::Aborted => Ok(2),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run {
            params,
            opponent,
            strict,
            export_matrix,
            report,
            matrix_cap,
        } => cmd_run(params, opponent, strict, export_matrix, report, matrix_cap),
        Command::Sweep { grid, out } => cmd_sweep(grid, out),
        Command::Verify { matrix } => cmd_verify(matrix),
        Command::Demo => cmd_demo(),
        Command::Oracle { params, strict } => cmd_oracle(params, strict),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e} ({})", e.code());
            ExitCode::from(2)
        }
    }
}
