//! Independent reference implementation of the oracle loop and the final
//! construction, used only as a test oracle.
//!
//! Everything here is deliberately naive: graphs are plain edge sets,
//! degrees and distances are recomputed from scratch at every step, the
//! pruning rule is applied literally as a set comprehension, and the final
//! metric comes from Floyd-Warshall. Threshold comparisons use direct u128
//! cross-multiplication formulas per horizon (h in 2..=4) instead of the
//! production big-integer engine.

use std::collections::{BTreeMap, BTreeSet};

pub const INF: u32 = u32::MAX;

type Edge = (u32, u32);

fn edge(a: u32, b: u32) -> Edge {
    (a.min(b), a.max(b))
}

#[derive(Debug, Clone)]
pub struct NaiveRecord {
    pub pair: Edge,
    pub answer_half: u32,
    pub chi: bool,
    pub ran_update: bool,
    pub added: BTreeSet<Edge>,
    pub removed: BTreeSet<Edge>,
}

#[derive(Debug, Clone)]
pub struct NaiveAdv {
    pub n: u32,
    pub h: u32,
    pub dnum: u128,
    pub dden: u128,
    pub optimized: bool,
    pub s_size: u32,
    pub eg: BTreeSet<Edge>,
    pub eh: BTreeSet<Edge>,
    pub eq: BTreeSet<Edge>,
    pub recs: Vec<NaiveRecord>,
}

/// floor(delta * n) for the basic prefix, floor(delta^(h/8) * n) optimized.
pub fn naive_s_size(n: u32, h: u32, dnum: u128, dden: u128, optimized: bool) -> u32 {
    if !optimized {
        return ((n as u128 * dnum) / dden) as u32;
    }
    // Largest m with m^8 * dden^h <= dnum^h * n^8.
    let rhs = dnum.pow(h) * (n as u128).pow(8);
    let mut m = 0u32;
    while ((m as u128 + 1).pow(8)) * dden.pow(h) <= rhs {
        m += 1;
    }
    m
}

impl NaiveAdv {
    pub fn new(n: u32, h: u32, dnum: u64, dden: u64, optimized: bool) -> NaiveAdv {
        assert!((2..=4).contains(&h), "reference simulator supports h in 2..=4");
        let s_size = naive_s_size(n, h, dnum as u128, dden as u128, optimized);
        let mut eg = BTreeSet::new();
        for u in (s_size + 1)..=n {
            for v in (u + 1)..=n {
                eg.insert((u, v));
            }
        }
        NaiveAdv {
            n,
            h,
            dnum: dnum as u128,
            dden: dden as u128,
            optimized,
            s_size,
            eg,
            eh: BTreeSet::new(),
            eq: BTreeSet::new(),
            recs: Vec::new(),
        }
    }

    /// deg >= delta^a * n^(1/(h-1)) - 2, with a = 1 (basic) or 1/2 (optimized).
    pub fn meets_prune(&self, deg: u32) -> bool {
        let k = deg as u128 + 2;
        let (n, p, q) = (self.n as u128, self.dnum, self.dden);
        let e = self.h - 1;
        if !self.optimized {
            k.pow(e) * q.pow(e) >= p.pow(e) * n
        } else {
            k.pow(2 * e) * q.pow(e) >= p.pow(e) * n * n
        }
    }

    /// deg <= tau_query: delta * n^(1/(h-1)) basic, n^(1/(h-1)) / delta^(h/4)
    /// optimized.
    pub fn within_chi(&self, deg: u32) -> bool {
        let k = deg as u128;
        let (n, p, q) = (self.n as u128, self.dnum, self.dden);
        let e = self.h - 1;
        if !self.optimized {
            k.pow(e) * q.pow(e) <= p.pow(e) * n
        } else {
            k.pow(4 * e) * p.pow(self.h * (self.h - 1)) <= n.pow(4) * q.pow(self.h * (self.h - 1))
        }
    }

    fn deg_in(set: &BTreeSet<Edge>, v: u32) -> u32 {
        set.iter().filter(|&&(a, b)| a == v || b == v).count() as u32
    }

    fn adjacency(&self, set: &BTreeSet<Edge>) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n as usize + 1];
        for &(a, b) in set {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for nbrs in adj.iter_mut() {
            nbrs.sort_unstable();
        }
        adj
    }

    fn bfs_dist(&self, set: &BTreeSet<Edge>, s: u32) -> Vec<u32> {
        let adj = self.adjacency(set);
        let mut dist = vec![INF; self.n as usize + 1];
        dist[s as usize] = 0;
        let mut frontier = vec![s];
        let mut level = 0;
        while !frontier.is_empty() {
            level += 1;
            let mut next = Vec::new();
            for &u in &frontier {
                for &v in &adj[u as usize] {
                    if dist[v as usize] == INF {
                        dist[v as usize] = level;
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        dist
    }

    /// Canonical path rule, coded independently: BFS distances from the
    /// lower endpoint, then a backward walk that always takes the lowest-id
    /// neighbor on the previous level.
    fn canonical_path(&self, set: &BTreeSet<Edge>, s: u32, t: u32) -> Vec<u32> {
        let adj = self.adjacency(set);
        let dist = self.bfs_dist(set, s);
        assert_ne!(dist[t as usize], INF);
        let mut path = vec![t];
        let mut w = t;
        while w != s {
            let want = dist[w as usize] - 1;
            let parent = *adj[w as usize]
                .iter()
                .find(|&&u| dist[u as usize] == want)
                .expect("level gap");
            path.push(parent);
            w = parent;
        }
        path.reverse();
        path
    }

    pub fn query(&mut self, a: u32, b: u32) -> u32 {
        assert!(a != b && a >= 1 && b >= 1 && a <= self.n && b <= self.n);
        let pair = edge(a, b);
        assert!(!self.eq.contains(&pair), "repeated query");
        let (lo, hi) = pair;

        let d_g = self.bfs_dist(&self.eg, lo)[hi as usize];
        let ran_update = d_g <= self.h;
        let mut added = BTreeSet::new();
        let mut removed = BTreeSet::new();
        if ran_update {
            let path = self.canonical_path(&self.eg, lo, hi);
            for w in path.windows(2) {
                let e = edge(w[0], w[1]);
                if self.eh.insert(e) {
                    added.insert(e);
                }
            }
            // The pruning rule, literally: drop every candidate edge outside
            // the revealed set with an endpoint at or above the threshold.
            for &(u, v) in self.eg.iter() {
                if !self.eh.contains(&(u, v))
                    && (self.meets_prune(Self::deg_in(&self.eh, u))
                        || self.meets_prune(Self::deg_in(&self.eh, v)))
                {
                    removed.insert((u, v));
                }
            }
            for e in &removed {
                self.eg.remove(e);
            }
        }

        self.eq.insert(pair);
        let chi = [lo, hi].into_iter().any(|v| {
            v <= self.s_size && self.within_chi(Self::deg_in(&self.eq, v))
        });
        let cap = 2 * self.h - chi as u32;
        let d_h = self.bfs_dist(&self.eh, lo)[hi as usize];
        let answer_half = if d_h == INF { cap } else { (2 * d_h).min(cap) };

        self.recs.push(NaiveRecord {
            pair,
            answer_half,
            chi,
            ran_update,
            added,
            removed,
        });
        answer_half
    }

    /// Pads every missing pair of `z` in increasing partner order.
    pub fn pad(&mut self, z: u32) -> Vec<u32> {
        let mut out = Vec::new();
        for v in 1..=self.n {
            if v != z && !self.eq.contains(&edge(z, v)) {
                out.push(self.query(z, v));
            }
        }
        out
    }

    pub fn deg_q(&self, v: u32) -> u32 {
        Self::deg_in(&self.eq, v)
    }

    pub fn deg_h(&self, v: u32) -> u32 {
        Self::deg_in(&self.eh, v)
    }
}

#[derive(Debug, Clone)]
pub struct NaiveConstruction {
    pub alpha: u32,
    pub layers: Vec<BTreeSet<u32>>,
    pub bad: BTreeSet<u32>,
    pub s_good: BTreeSet<u32>,
    /// Edge -> weight in half-units (1 or 2).
    pub curly: BTreeMap<Edge, u32>,
    /// Final metric, half-units, 0-indexed.
    pub d: Vec<Vec<u32>>,
}

impl NaiveConstruction {
    pub fn cost(&self, v: u32) -> u64 {
        self.d[(v - 1) as usize].iter().map(|&x| x as u64).sum()
    }
}

/// Literal transcription of the construction equations.
pub fn naive_construct(adv: &NaiveAdv, z: u32) -> NaiveConstruction {
    let n = adv.n;
    let h = adv.h as usize;

    // argmin query degree over the prefix minus the output, lowest id first.
    let alpha = (1..=adv.s_size)
        .filter(|&v| v != z)
        .min_by_key(|&v| (adv.deg_q(v), v))
        .expect("candidate set nonempty");

    let mut layers: Vec<BTreeSet<u32>> = vec![BTreeSet::from([alpha])];
    let q_nbrs: BTreeSet<u32> = adv
        .eq
        .iter()
        .filter_map(|&(a, b)| {
            if a == alpha {
                Some(b)
            } else if b == alpha {
                Some(a)
            } else {
                None
            }
        })
        .filter(|&v| v != alpha)
        .collect();
    layers.push(q_nbrs);
    for j in 1..=h.saturating_sub(2) {
        let assigned: BTreeSet<u32> = layers.iter().flatten().copied().collect();
        let mut next = BTreeSet::new();
        for &v in &layers[j] {
            for &(a, b) in &adv.eh {
                if a == v && !assigned.contains(&b) {
                    next.insert(b);
                }
                if b == v && !assigned.contains(&a) {
                    next.insert(a);
                }
            }
        }
        layers.push(next);
    }
    let assigned: BTreeSet<u32> = layers.iter().flatten().copied().collect();
    layers.push((1..=n).filter(|v| !assigned.contains(v)).collect());

    let bad: BTreeSet<u32> = (1..=n).filter(|&v| adv.meets_prune(adv.deg_h(v))).collect();
    let s_good: BTreeSet<u32> = layers[h]
        .iter()
        .copied()
        .filter(|&v| !bad.contains(&v) && v > adv.s_size)
        .collect();

    let layer_of = |v: u32| layers.iter().position(|s| s.contains(&v)).unwrap() as i32;
    let mut curly: BTreeMap<Edge, u32> = BTreeMap::new();
    for &(u, v) in &adv.eg {
        if (layer_of(u) - layer_of(v)).abs() <= 1 {
            curly.insert((u, v), 2);
        }
    }
    for &v in &s_good {
        curly.insert(edge(alpha, v), 1);
    }

    // All-pairs distances on the weighted completion graph.
    let nn = n as usize;
    let big = 1u32 << 30;
    let mut dist = vec![vec![big; nn]; nn];
    for (i, row) in dist.iter_mut().enumerate() {
        row[i] = 0;
    }
    for (&(u, v), &w) in &curly {
        let (i, j) = ((u - 1) as usize, (v - 1) as usize);
        dist[i][j] = dist[i][j].min(w);
        dist[j][i] = dist[j][i].min(w);
    }
    for k in 0..nn {
        for i in 0..nn {
            for j in 0..nn {
                let via = dist[i][k].saturating_add(dist[k][j]);
                if via < dist[i][j] {
                    dist[i][j] = via;
                }
            }
        }
    }

    let cap = 2 * adv.h;
    let mut d = vec![vec![0u32; nn]; nn];
    for i in 0..nn {
        for j in 0..nn {
            if i != j {
                d[i][j] = dist[i][j].min(cap);
            }
        }
    }
    for r in &adv.recs {
        let (a, b) = r.pair;
        let (i, j) = ((a - 1) as usize, (b - 1) as usize);
        let val = dist[i][j].min(cap - r.chi as u32);
        d[i][j] = val;
        d[j][i] = val;
    }

    NaiveConstruction {
        alpha,
        layers,
        bad,
        s_good,
        curly,
        d,
    }
}
