//! Point identifiers and canonical unordered pairs.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A point of the ground set `{1, ..., n}`. Ids are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointId(u32);

impl PointId {
    /// Creates a point id; `0` is not a valid id.
    pub fn new(id: u32) -> Option<PointId> {
        (id >= 1).then_some(PointId(id))
    }

    pub const fn get(self) -> u32 {
        self.0
    }

    /// Zero-based index for array storage.
    pub const fn index(self) -> usize {
        (self.0 - 1) as usize
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Checks that `id` names a point of `[n]`.
pub fn validate_point(id: u32, n: u32) -> Result<PointId> {
    if id >= 1 && id <= n {
        Ok(PointId(id))
    } else {
        Err(Error::BadPoint { point: id, n })
    }
}

/// Canonical unordered pair of distinct points, stored with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PairKey {
    lo: PointId,
    hi: PointId,
}

impl PairKey {
    /// Returns `None` when `a == b`; self-pairs are unrepresentable.
    pub fn new(a: PointId, b: PointId) -> Option<PairKey> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(PairKey { lo: a, hi: b }),
            std::cmp::Ordering::Greater => Some(PairKey { lo: b, hi: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    /// Convenience constructor from raw ids; panics on `a == b` or zero ids.
    pub fn of(a: u32, b: u32) -> PairKey {
        assert_ne!(a, b, "self-pair");
        let a = PointId::new(a).expect("nonzero id");
        let b = PointId::new(b).expect("nonzero id");
        PairKey::new(a, b).unwrap()
    }

    pub const fn lo(self) -> PointId {
        self.lo
    }

    pub const fn hi(self) -> PointId {
        self.hi
    }

    /// The endpoint other than `p`, if `p` is an endpoint.
    pub fn other(self, p: PointId) -> Option<PointId> {
        if p == self.lo {
            Some(self.hi)
        } else if p == self.hi {
            Some(self.lo)
        } else {
            None
        }
    }

    pub fn contains(self, p: PointId) -> bool {
        p == self.lo || p == self.hi
    }
}

impl fmt::Display for PairKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lo, self.hi)
    }
}
