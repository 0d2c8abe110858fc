//! Oracle parameters, derived thresholds, and precondition checks.
//!
//! The two runtime thresholds (degree pruning and the query-degree flag) are
//! irrational in general. Both only ever face integer degrees, so they are
//! precomputed here as exact integer cutoffs via `exact`:
//!
//!   * `prune_deg_min`  — least degree that meets the pruning threshold,
//!   * `chi_deg_max`    — greatest degree within the flag threshold.

use crate::error::{Error, Result};
use crate::exact::{self, Delta, PowerExpr};
use crate::point::PointId;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

pub const MAX_H: u32 = 1000;
pub const MAX_N: u32 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "BASIC", alias = "basic")]
    Basic,
    #[serde(rename = "OPTIMIZED", alias = "optimized")]
    Optimized,
}

impl Mode {
    /// Exponent of delta (in eighths) inside the pruning threshold.
    fn prune_delta_eighths(self) -> i64 {
        match self {
            Mode::Basic => 8,     // delta
            Mode::Optimized => 4, // sqrt(delta)
        }
    }

    /// Exponent of delta (in eighths) inside the flag threshold.
    fn chi_delta_eighths(self, h: u32) -> i64 {
        match self {
            Mode::Basic => 8,                     // delta
            Mode::Optimized => -2 * (h as i64),   // delta^(-h/4)
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Basic => write!(f, "BASIC"),
            Mode::Optimized => write!(f, "OPTIMIZED"),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s.to_ascii_uppercase().as_str() {
            "BASIC" => Ok(Mode::Basic),
            "OPTIMIZED" => Ok(Mode::Optimized),
            _ => Err(Error::BadDelta {
                detail: format!("unknown mode {s:?} (expected BASIC or OPTIMIZED)"),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdvParams {
    n: u32,
    h: u32,
    delta: Delta,
    mode: Mode,
    s_size: u32,
    prune_deg_min: u32,
    chi_deg_max: u32,
}

impl AdvParams {
    pub fn new(n: u32, h: u32, delta: Delta, mode: Mode) -> Result<AdvParams> {
        if !(2..=MAX_H).contains(&h) {
            return Err(Error::BadHorizon { h });
        }
        if n == 0 || n > MAX_N {
            return Err(Error::BadPointCount { n });
        }
        let s_size = match mode {
            Mode::Basic => ((n as u128 * delta.num() as u128) / delta.den() as u128) as u64,
            Mode::Optimized => {
                // floor(delta^(h/8) * n); the n exponent is written over (h-1).
                let expr = PowerExpr {
                    coeff: 1,
                    delta_eighths: h as i64,
                    n_exp: h as i64 - 1,
                };
                exact::floor_within(expr, delta, n as u64, h)
            }
        };
        if s_size < 2 {
            return Err(Error::STooSmall { s_size: s_size as u32 });
        }
        if s_size >= (n as u64).saturating_sub(1) {
            return Err(Error::STooLarge { s_size: s_size as u32, n });
        }
        let s_size = s_size as u32;

        // prune threshold tau_deg = delta^a * n^(1/(h-1)) - 2; an integer
        // degree k meets it exactly when k + 2 >= delta^a * n^(1/(h-1)).
        let prune_expr = PowerExpr {
            coeff: 1,
            delta_eighths: mode.prune_delta_eighths(),
            n_exp: 1,
        };
        let prune_deg_min = exact::ceil_meeting(prune_expr, delta, n as u64, h).saturating_sub(2);

        let chi_expr = PowerExpr {
            coeff: 1,
            delta_eighths: mode.chi_delta_eighths(h),
            n_exp: 1,
        };
        let chi_deg_max = exact::floor_within(chi_expr, delta, n as u64, h).min(n as u64) as u32;

        Ok(AdvParams {
            n,
            h,
            delta,
            mode,
            s_size,
            prune_deg_min: prune_deg_min as u32,
            chi_deg_max,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn delta(&self) -> Delta {
        self.delta
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Size of the isolated prefix `S = {1, ..., s_size}`.
    pub fn s_size(&self) -> u32 {
        self.s_size
    }

    pub fn in_s(&self, p: PointId) -> bool {
        p.get() <= self.s_size
    }

    /// Points of `S` in increasing order.
    pub fn s_points(&self) -> impl Iterator<Item = u32> {
        1..=self.s_size
    }

    /// Distance cap `h` expressed in half-units.
    pub fn cap_half(&self) -> u32 {
        2 * self.h
    }

    /// Whether `deg` meets the degree-pruning threshold (`deg >= tau_deg`).
    pub fn meets_prune_threshold(&self, deg: u32) -> bool {
        deg >= self.prune_deg_min
    }

    /// Whether `deg` is within the flag threshold (`deg <= tau_query`).
    pub fn within_chi_threshold(&self, deg: u32) -> bool {
        deg <= self.chi_deg_max
    }

    pub fn prune_deg_min(&self) -> u32 {
        self.prune_deg_min
    }

    pub fn chi_deg_max(&self) -> u32 {
        self.chi_deg_max
    }

    /// Exact test for `tau_deg <= 0`, the regime where every point meets the
    /// pruning threshold from the start.
    pub fn tau_deg_nonpositive(&self) -> bool {
        let expr = PowerExpr {
            coeff: 1,
            delta_eighths: self.mode.prune_delta_eighths(),
            n_exp: 1,
        };
        exact::cmp_expr(2, expr, self.delta, self.n as u64, self.h) != Ordering::Less
    }

    /// Report-only approximations of the two thresholds.
    pub fn tau_deg_approx(&self) -> f64 {
        let expr = PowerExpr {
            coeff: 1,
            delta_eighths: self.mode.prune_delta_eighths(),
            n_exp: 1,
        };
        exact::approx_f64(expr, self.delta, self.n as u64, self.h) - 2.0
    }

    pub fn tau_query_approx(&self) -> f64 {
        let expr = PowerExpr {
            coeff: 1,
            delta_eighths: self.mode.chi_delta_eighths(self.h),
            n_exp: 1,
        };
        exact::approx_f64(expr, self.delta, self.n as u64, self.h)
    }

    /// Threshold expression used by lemma certificates: the degree base
    /// `tau_deg + 2 = delta^a * n^(1/(h-1))` raised to `power`, times `coeff`.
    pub(crate) fn degree_base_power(&self, coeff: u64, power: u32) -> PowerExpr {
        PowerExpr {
            coeff,
            delta_eighths: self.mode.prune_delta_eighths() * power as i64,
            n_exp: power as i64,
        }
    }

    pub(crate) fn chi_threshold_expr(&self, coeff: u64) -> PowerExpr {
        PowerExpr {
            coeff,
            delta_eighths: self.mode.chi_delta_eighths(self.h),
            n_exp: 1,
        }
    }
}

/// The three "sufficiently large n" inequalities, checked for a given query
/// budget. Violations are warnings: desk-scale sessions still run, with the
/// affected guarantees annotated as void in the certificate report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Inequality {
    /// (1) `q <= delta * n^(1 + 1/(h-1))`
    QueryBudget,
    /// (2) `delta^a * n^(1/(h-1)) > 3` (mode-adjusted exponent)
    DegreeMargin,
    /// (3) `2q / (|S| - 1) <= tau_query`
    QuerySpread,
}

impl Inequality {
    pub fn number(&self) -> u8 {
        match self {
            Inequality::QueryBudget => 1,
            Inequality::DegreeMargin => 2,
            Inequality::QuerySpread => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreconditionViolation {
    pub inequality: Inequality,
    pub detail: String,
}

/// Evaluates the three parameter inequalities against `q_budget` queries.
/// Returns the violated ones; never aborts.
pub fn check_preconditions(params: &AdvParams, q_budget: u64) -> Vec<PreconditionViolation> {
    let mut out = Vec::new();
    let (n, h, delta) = (params.n as u64, params.h, params.delta);

    let budget_expr = PowerExpr { coeff: 1, delta_eighths: 8, n_exp: h as i64 };
    if exact::cmp_expr(q_budget as u128, budget_expr, delta, n, h) == Ordering::Greater {
        out.push(PreconditionViolation {
            inequality: Inequality::QueryBudget,
            detail: format!(
                "q = {q_budget} exceeds delta * n^(1+1/(h-1)) ~ {:.3}",
                exact::approx_f64(budget_expr, delta, n, h)
            ),
        });
    }

    let margin_expr = params.degree_base_power(1, 1);
    if exact::cmp_expr(3, margin_expr, delta, n, h) != Ordering::Less {
        out.push(PreconditionViolation {
            inequality: Inequality::DegreeMargin,
            detail: format!(
                "degree base {:.3} is not above 3",
                exact::approx_f64(margin_expr, delta, n, h)
            ),
        });
    }

    // 2q <= (|S| - 1) * tau_query, with |S| >= 2 guaranteed at construction.
    let spread_expr = params.chi_threshold_expr(params.s_size as u64 - 1);
    if exact::cmp_expr(2 * q_budget as u128, spread_expr, delta, n, h) == Ordering::Greater {
        out.push(PreconditionViolation {
            inequality: Inequality::QuerySpread,
            detail: format!(
                "2q/(|S|-1) = {:.3} exceeds tau_query ~ {:.3}",
                2.0 * q_budget as f64 / (params.s_size as f64 - 1.0),
                params.tau_query_approx()
            ),
        });
    }
    out
}
