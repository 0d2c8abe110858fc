//! Built-in deterministic opponents.
//!
//! An opponent sees only its own (pair, answer) history — never the oracle's
//! internals — and must never repeat a pair or query a point against itself.

use crate::error::{Error, Result};
use crate::halfdist::HalfDist;
use crate::point::{PairKey, PointId};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpponentAction {
    Query(PointId, PointId),
    Output(PointId),
}

pub trait Opponent {
    /// Next action given the full history so far. Deterministic: equal
    /// histories yield equal actions.
    fn next(&mut self, history: &[(PairKey, HalfDist)]) -> OpponentAction;
}

/// Opponent selector, also the serialized form used in run configs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OpponentSpec {
    /// All pairs in lexicographic order up to a budget, then the point with
    /// the cheapest answered sum.
    Exhaustive { budget: u64 },
    /// Stars around evenly spaced hub points, then the best-scoring hub.
    HubScan { hubs: u32 },
    /// All intra-block pairs of contiguous blocks plus a clique on block
    /// heads, then the point with the lowest pessimistically filled estimate.
    BlockScan,
    /// A fixed query list followed by a fixed output.
    Scripted { queries: Vec<(u32, u32)>, output: u32 },
}

impl OpponentSpec {
    pub fn label(&self) -> String {
        match self {
            OpponentSpec::Exhaustive { budget } => format!("exhaustive:{budget}"),
            OpponentSpec::HubScan { hubs } => format!("hub_scan:{hubs}"),
            OpponentSpec::BlockScan => "block_scan".to_string(),
            OpponentSpec::Scripted { .. } => "scripted".to_string(),
        }
    }

    /// Parses CLI forms: `exhaustive:BUDGET`, `hub_scan:K`, `block_scan`.
    pub fn parse(s: &str) -> Result<OpponentSpec> {
        let bad = |d: &str| Error::BadLine {
            detail: format!("opponent {s:?}: {d}"),
        };
        let (kind, arg) = match s.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (s, None),
        };
        match kind {
            "exhaustive" => {
                let budget = arg
                    .ok_or_else(|| bad("needs a budget, e.g. exhaustive:100"))?
                    .parse()
                    .map_err(|_| bad("bad budget"))?;
                Ok(OpponentSpec::Exhaustive { budget })
            }
            "hub_scan" => {
                let hubs = arg
                    .ok_or_else(|| bad("needs a hub count, e.g. hub_scan:3"))?
                    .parse()
                    .map_err(|_| bad("bad hub count"))?;
                Ok(OpponentSpec::HubScan { hubs })
            }
            "block_scan" => Ok(OpponentSpec::BlockScan),
            _ => Err(bad("unknown opponent")),
        }
    }

    /// Upper bound on queries before padding, used by strict-mode checks.
    pub fn declared_query_bound(&self, n: u32, h: u32) -> u64 {
        let all_pairs = n as u64 * (n as u64 - 1) / 2;
        match self {
            OpponentSpec::Exhaustive { budget } => (*budget).min(all_pairs),
            OpponentSpec::HubScan { hubs } => *hubs as u64 * (n as u64 - 1),
            OpponentSpec::BlockScan => {
                let m = block_count(n, h) as u64;
                let bs = n.div_ceil(block_count(n, h)) as u64;
                (m * bs * bs.saturating_sub(1) / 2 + m * (m - 1) / 2).min(all_pairs)
            }
            OpponentSpec::Scripted { queries, .. } => queries.len() as u64,
        }
    }

    pub fn build(&self, n: u32, h: u32) -> Box<dyn Opponent> {
        match self {
            OpponentSpec::Exhaustive { budget } => Box::new(Exhaustive::new(n, *budget)),
            OpponentSpec::HubScan { hubs } => Box::new(HubScan::new(n, *hubs)),
            OpponentSpec::BlockScan => Box::new(BlockScan::new(n, h)),
            OpponentSpec::Scripted { queries, output } => Box::new(Scripted {
                queries: queries.clone(),
                output: *output,
                at: 0,
            }),
        }
    }
}

fn point(id: u32) -> PointId {
    PointId::new(id).expect("opponent ids are 1-based")
}

/// Sum of answered distances per point, in half-units.
fn answered_sums(n: u32, history: &[(PairKey, HalfDist)]) -> (Vec<u64>, Vec<u32>) {
    let mut sums = vec![0u64; n as usize + 1];
    let mut counts = vec![0u32; n as usize + 1];
    for (pair, d) in history {
        let v = d.expect_finite() as u64;
        for p in [pair.lo().get(), pair.hi().get()] {
            sums[p as usize] += v;
            counts[p as usize] += 1;
        }
    }
    (sums, counts)
}

fn argmin_by_key(n: u32, key: impl Fn(u32) -> u64) -> u32 {
    let mut best = 1u32;
    let mut best_key = key(1);
    for v in 2..=n {
        let k = key(v);
        if k < best_key {
            best = v;
            best_key = k;
        }
    }
    best
}

// ---------------------------------------------------------------------------

pub struct Scripted {
    queries: Vec<(u32, u32)>,
    output: u32,
    at: usize,
}

impl Opponent for Scripted {
    fn next(&mut self, _history: &[(PairKey, HalfDist)]) -> OpponentAction {
        if self.at < self.queries.len() {
            let (a, b) = self.queries[self.at];
            self.at += 1;
            OpponentAction::Query(point(a), point(b))
        } else {
            OpponentAction::Output(point(self.output))
        }
    }
}

// ---------------------------------------------------------------------------

pub struct Exhaustive {
    n: u32,
    budget: u64,
    cursor: (u32, u32),
    used: u64,
}

impl Exhaustive {
    pub fn new(n: u32, budget: u64) -> Exhaustive {
        Exhaustive {
            n,
            budget,
            cursor: (1, 1),
            used: 0,
        }
    }

    fn advance(&mut self) -> Option<(u32, u32)> {
        let (mut a, mut b) = self.cursor;
        b += 1;
        if b > self.n {
            a += 1;
            b = a + 1;
        }
        if a >= self.n || b > self.n {
            return None;
        }
        self.cursor = (a, b);
        Some((a, b))
    }
}

impl Opponent for Exhaustive {
    fn next(&mut self, history: &[(PairKey, HalfDist)]) -> OpponentAction {
        if self.used < self.budget {
            if let Some((a, b)) = self.advance() {
                self.used += 1;
                return OpponentAction::Query(point(a), point(b));
            }
        }
        let (sums, _) = answered_sums(self.n, history);
        OpponentAction::Output(point(argmin_by_key(self.n, |v| sums[v as usize])))
    }
}

// ---------------------------------------------------------------------------

pub struct HubScan {
    n: u32,
    hubs: Vec<u32>,
    plan: Vec<(u32, u32)>,
    at: usize,
}

impl HubScan {
    pub fn new(n: u32, k: u32) -> HubScan {
        let k = k.clamp(1, n);
        let spacing = n.div_ceil(k);
        let mut hubs: Vec<u32> = (0..k)
            .map(|j| 1 + j * spacing)
            .filter(|&v| v <= n)
            .collect();
        hubs.dedup();
        let mut plan = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for &hub in &hubs {
            for v in 1..=n {
                if v == hub {
                    continue;
                }
                let key = (hub.min(v), hub.max(v));
                if seen.insert(key) {
                    plan.push((hub, v));
                }
            }
        }
        HubScan { n, hubs, plan, at: 0 }
    }
}

impl Opponent for HubScan {
    fn next(&mut self, history: &[(PairKey, HalfDist)]) -> OpponentAction {
        if self.at < self.plan.len() {
            let (a, b) = self.plan[self.at];
            self.at += 1;
            return OpponentAction::Query(point(a), point(b));
        }
        let (sums, _) = answered_sums(self.n, history);
        let mut best = self.hubs[0];
        for &hub in &self.hubs[1..] {
            if sums[hub as usize] < sums[best as usize] {
                best = hub;
            }
        }
        OpponentAction::Output(point(best))
    }
}

// ---------------------------------------------------------------------------

/// Smallest integer m with m^h >= n^(h-1), i.e. ceil(n^(1 - 1/h)).
fn block_count(n: u32, h: u32) -> u32 {
    let Some(target) = (n as u128).checked_pow(h - 1) else {
        return n; // n^(1-1/h) ~ n once the exponent is that large
    };
    let mut m = 1u32;
    loop {
        match (m as u128).checked_pow(h) {
            Some(v) if v < target => m += 1,
            _ => return m.min(n.max(1)),
        }
    }
}

pub struct BlockScan {
    n: u32,
    cap_half: u64,
    plan: Vec<(u32, u32)>,
    at: usize,
}

impl BlockScan {
    pub fn new(n: u32, h: u32) -> BlockScan {
        let m = block_count(n, h);
        let bs = n.div_ceil(m);
        let mut plan = Vec::new();
        let mut heads = Vec::new();
        for block in 0..m {
            let lo = 1 + block * bs;
            if lo > n {
                break;
            }
            let hi = (lo + bs - 1).min(n);
            heads.push(lo);
            for a in lo..=hi {
                for b in (a + 1)..=hi {
                    plan.push((a, b));
                }
            }
        }
        for (i, &a) in heads.iter().enumerate() {
            for &b in &heads[i + 1..] {
                plan.push((a, b));
            }
        }
        BlockScan {
            n,
            cap_half: 2 * h as u64,
            plan,
            at: 0,
        }
    }
}

impl Opponent for BlockScan {
    fn next(&mut self, history: &[(PairKey, HalfDist)]) -> OpponentAction {
        if self.at < self.plan.len() {
            let (a, b) = self.plan[self.at];
            self.at += 1;
            return OpponentAction::Query(point(a), point(b));
        }
        // Locally estimated cost: answered sum plus the cap for every
        // unanswered pair.
        let (sums, counts) = answered_sums(self.n, history);
        let n = self.n;
        let cap = self.cap_half;
        OpponentAction::Output(point(argmin_by_key(n, |v| {
            sums[v as usize] + cap * (n as u64 - 1 - counts[v as usize] as u64)
        })))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        assert_eq!(
            OpponentSpec::parse("exhaustive:100").unwrap(),
            OpponentSpec::Exhaustive { budget: 100 }
        );
        assert_eq!(
            OpponentSpec::parse("hub_scan:3").unwrap(),
            OpponentSpec::HubScan { hubs: 3 }
        );
        assert_eq!(OpponentSpec::parse("block_scan").unwrap(), OpponentSpec::BlockScan);
        assert!(OpponentSpec::parse("bogus").is_err());
        assert!(OpponentSpec::parse("exhaustive").is_err());
    }

    #[test]
    fn exhaustive_emits_lexicographic_pairs() {
        let mut opp = Exhaustive::new(4, 100);
        let mut got = Vec::new();
        while let OpponentAction::Query(a, b) = opp.next(&[]) {
            got.push((a.get(), b.get()));
        }
        assert_eq!(got, vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
    }

    #[test]
    fn hub_scan_covers_all_stars_without_repeats() {
        let mut opp = HubScan::new(10, 3);
        let mut seen = std::collections::BTreeSet::new();
        let mut count = 0;
        while let OpponentAction::Query(a, b) = opp.next(&[]) {
            assert_ne!(a, b);
            assert!(seen.insert((a.min(b), a.max(b))));
            count += 1;
        }
        // Hubs 1, 5, 9: 9 + 8 + 7 distinct pairs ((1,5), (1,9), (5,9) shared).
        assert_eq!(count, 24);
    }

    #[test]
    fn block_counts() {
        assert_eq!(block_count(50, 2), 8); // ceil(sqrt(50))
        assert_eq!(block_count(100, 2), 10);
        assert_eq!(block_count(50, 3), 14); // ceil(50^(2/3))
    }

    #[test]
    fn block_scan_stays_within_declared_bound() {
        for n in [20u32, 50, 100] {
            for h in [2u32, 3] {
                let opp = BlockScan::new(n, h);
                let declared = OpponentSpec::BlockScan.declared_query_bound(n, h);
                assert!((opp.plan.len() as u64) <= declared, "n={n} h={h}");
                let mut seen = std::collections::BTreeSet::new();
                for &(a, b) in &opp.plan {
                    assert!(a != b && a <= n && b <= n);
                    assert!(seen.insert((a.min(b), a.max(b))), "repeat at n={n} h={h}");
                }
            }
        }
    }
}
