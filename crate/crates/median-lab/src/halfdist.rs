//! Exact distances in half-units.
//!
//! One unit-weight edge counts as 2 half-units, a half-weight edge as 1.
//! Every distance the laboratory ever produces lies in `{0, 1, 2, ...}` of
//! half-units or is the `UNREACHABLE` sentinel, so all comparisons are exact
//! integer comparisons. The sentinel is the largest value, which makes
//! `min(UNREACHABLE, x) = x` hold under the derived ordering.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

const UNREACHABLE_RAW: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfDist(u32);

impl HalfDist {
    pub const ZERO: HalfDist = HalfDist(0);
    pub const UNREACHABLE: HalfDist = HalfDist(UNREACHABLE_RAW);

    /// A finite distance given in half-units.
    pub fn from_half_units(half_units: u32) -> HalfDist {
        assert_ne!(half_units, UNREACHABLE_RAW, "reserved sentinel");
        HalfDist(half_units)
    }

    /// The distance of a path with `edges` unit-weight edges.
    pub fn from_edges(edges: u32) -> HalfDist {
        HalfDist::from_half_units(edges * 2)
    }

    pub fn is_unreachable(self) -> bool {
        self.0 == UNREACHABLE_RAW
    }

    /// Finite value in half-units, or `None` when unreachable.
    pub fn half_units(self) -> Option<u32> {
        (!self.is_unreachable()).then_some(self.0)
    }

    /// Finite value in half-units; panics on the sentinel.
    pub fn expect_finite(self) -> u32 {
        self.half_units().expect("unreachable distance")
    }

    pub fn saturating_add(self, other: HalfDist) -> HalfDist {
        if self.is_unreachable() || other.is_unreachable() {
            HalfDist::UNREACHABLE
        } else {
            HalfDist(self.0 + other.0)
        }
    }
}

impl fmt::Display for HalfDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unreachable() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl Serialize for HalfDist {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.half_units() {
            Some(v) => s.serialize_some(&v),
            None => s.serialize_none(),
        }
    }
}

impl<'de> Deserialize<'de> for HalfDist {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Option<u32> = Option::deserialize(d)?;
        match v {
            Some(UNREACHABLE_RAW) => Err(D::Error::custom("reserved half-unit value")),
            Some(v) => Ok(HalfDist(v)),
            None => Ok(HalfDist::UNREACHABLE),
        }
    }
}
