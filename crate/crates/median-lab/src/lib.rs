//! median-lab: a query-oracle laboratory for adversarial lower-bound
//! experiments on metric 1-median selection.
//!
//! A deterministic opponent asks for point-pair distances under a query
//! budget; a stateful oracle answers them while maintaining a shrinking
//! candidate graph and a growing graph of revealed shortest-path edges.
//! After the opponent declares its output, the laboratory completes the
//! answers into an explicit finite metric, verifies the metric axioms, the
//! structural invariants of the oracle loop, and exact finite-n cost
//! certificates, and reports the achieved approximation-ratio lower bound.
//!
//! All distances are integers in half-units (a unit edge is 2, a half edge
//! is 1), so every check is an exact integer comparison.

pub mod adversary;
pub mod bfs;
pub mod construction;
pub mod error;
pub mod exact;
pub mod graph;
pub mod halfdist;
pub mod harness;
pub mod matrix_io;
pub mod opponents;
pub mod oracle_io;
pub mod params;
pub mod point;
pub mod threads;
pub mod verify;
pub mod wgraph;

pub use adversary::{AdvState, QueryRecord};
pub use construction::{build, BuildOptions, DistMatrix, FinalConstruction, Layers};
pub use error::{Error, Result};
pub use exact::Delta;
pub use graph::DynGraph;
pub use halfdist::HalfDist;
pub use harness::{run, sweep, sweep_csv, RunConfig, RunOutcome, SweepRow, Trace};
pub use opponents::{Opponent, OpponentAction, OpponentSpec};
pub use params::{check_preconditions, AdvParams, Inequality, Mode, PreconditionViolation};
pub use point::{PairKey, PointId};
pub use verify::{
    run_checks, CertificateReport, CheckResult, CheckSet, CheckStatus, Fraction, ReportMeta,
};
pub use wgraph::{sssp_half_weights, WeightedGraph};
