//! Exact comparisons against thresholds of the form `c * delta^(a/8) * n^(b/(h-1))`.
//!
//! Raising both sides of such a comparison to the power `8*(h-1)` clears every
//! fractional exponent, leaving a comparison between products of integer
//! powers that big integers settle exactly. Equality at the threshold is
//! therefore decided correctly even when the threshold itself is irrational.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// Rational density parameter, reduced, with `0 < num < den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Delta {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Delta {
    pub fn new(num: u64, den: u64) -> Result<Delta> {
        if num == 0 || den == 0 || num >= den {
            return Err(Error::BadDelta {
                detail: format!("{num}/{den} not in (0,1)"),
            });
        }
        let g = gcd(num, den);
        Ok(Delta {
            num: num / g,
            den: den / g,
        })
    }

    /// Parses `"p/q"` or a decimal literal such as `"0.05"` exactly.
    pub fn parse(s: &str) -> Result<Delta> {
        let bad = |d: &str| Error::BadDelta {
            detail: format!("cannot parse {s:?}: {d}"),
        };
        if let Some((p, q)) = s.split_once('/') {
            let p: u64 = p.trim().parse().map_err(|_| bad("bad numerator"))?;
            let q: u64 = q.trim().parse().map_err(|_| bad("bad denominator"))?;
            return Delta::new(p, q);
        }
        if let Some((int, frac)) = s.split_once('.') {
            let int_part: u64 = if int.is_empty() {
                0
            } else {
                int.parse().map_err(|_| bad("bad integer part"))?
            };
            if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("bad fractional part"));
            }
            let digits: u64 = frac.parse().map_err(|_| bad("bad fractional part"))?;
            let den = 10u64.pow(frac.len() as u32);
            let num = int_part
                .checked_mul(den)
                .and_then(|x| x.checked_add(digits))
                .ok_or_else(|| bad("overflow"))?;
            return Delta::new(num, den);
        }
        let whole: u64 = s.trim().parse().map_err(|_| bad("not a number"))?;
        Delta::new(whole, 1)
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn approx_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Delta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Symbolic threshold `coeff * delta^(delta_eighths/8) * n^(n_exp/(h-1))`.
#[derive(Debug, Clone, Copy)]
pub struct PowerExpr {
    pub coeff: u64,
    pub delta_eighths: i64,
    pub n_exp: i64,
}

/// Exact ordering of the integer `lhs` versus the threshold expression.
pub fn cmp_expr(lhs: u128, expr: PowerExpr, delta: Delta, n: u64, h: u32) -> Ordering {
    assert!(h >= 2);
    assert!(expr.n_exp >= 0, "negative n exponents are never needed");
    let l = 8 * (h - 1);
    let d_exp = expr.delta_eighths * (h as i64 - 1);
    let n_exp = (8 * expr.n_exp) as u32;

    let mut left = BigUint::from(lhs).pow(l);
    let mut right = BigUint::from(expr.coeff).pow(l) * BigUint::from(n).pow(n_exp);
    if d_exp >= 0 {
        left *= BigUint::from(delta.den).pow(d_exp as u32);
        right *= BigUint::from(delta.num).pow(d_exp as u32);
    } else {
        left *= BigUint::from(delta.num).pow((-d_exp) as u32);
        right *= BigUint::from(delta.den).pow((-d_exp) as u32);
    }
    left.cmp(&right)
}

/// Smallest integer `k >= expr`. The expression is strictly positive.
pub fn ceil_meeting(expr: PowerExpr, delta: Delta, n: u64, h: u32) -> u64 {
    let mut hi = 1u128;
    while cmp_expr(hi, expr, delta, n, h) == Ordering::Less {
        hi *= 2;
    }
    let mut lo = hi / 2; // every k <= lo is below the expression
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        if cmp_expr(mid, expr, delta, n, h) == Ordering::Less {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi as u64
}

/// Largest integer `k <= expr`; 0 when the expression is below 1.
pub fn floor_within(expr: PowerExpr, delta: Delta, n: u64, h: u32) -> u64 {
    let c = ceil_meeting(expr, delta, n, h);
    match cmp_expr(c as u128, expr, delta, n, h) {
        Ordering::Equal => c,
        _ => c - 1,
    }
}

/// Approximate threshold value, for reports only.
pub fn approx_f64(expr: PowerExpr, delta: Delta, n: u64, h: u32) -> f64 {
    expr.coeff as f64
        * delta.approx_f64().powf(expr.delta_eighths as f64 / 8.0)
        * (n as f64).powf(expr.n_exp as f64 / (h as f64 - 1.0))
}
