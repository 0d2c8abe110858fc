//! Breadth-first shortest paths with deterministic tie-breaking.
//!
//! The canonical path rule: distances are computed by BFS from the source,
//! and the path is read off backwards by always stepping to the lowest-id
//! neighbor on the previous level. Two runs over equal graphs produce
//! identical paths.

use crate::error::{Error, Result};
use crate::graph::DynGraph;
use crate::point::{validate_point, PointId};
use std::collections::VecDeque;

const UNSEEN: u32 = u32::MAX;

/// Minimum number of edges on an `s`-`t` path, if it is at most `cap_edges`.
pub fn bfs_dist_capped(g: &DynGraph, s: u32, t: u32, cap_edges: u32) -> Option<u32> {
    if s == t {
        return Some(0);
    }
    if cap_edges == 0 {
        return None;
    }
    // Cheap hit for adjacent endpoints; most oracle queries resolve here.
    if g.has_edge(s, t) {
        return Some(1);
    }
    let mut dist = vec![UNSEEN; g.n() as usize + 1];
    dist[s as usize] = 0;
    let mut frontier = vec![s];
    let mut next = Vec::new();
    let mut level = 0;
    while !frontier.is_empty() && level < cap_edges {
        level += 1;
        for &u in &frontier {
            for v in g.neighbors(u) {
                if dist[v as usize] == UNSEEN {
                    if v == t {
                        return Some(level);
                    }
                    dist[v as usize] = level;
                    next.push(v);
                }
            }
        }
        frontier.clear();
        std::mem::swap(&mut frontier, &mut next);
    }
    None
}

/// Canonical minimum-edge `s`-`t` path of length at most `cap_edges`.
///
/// Returns the vertex sequence `[s, ..., t]`, or `None` when `t` is farther
/// than the cap or unreachable.
pub fn canonical_path(g: &DynGraph, s: u32, t: u32, cap_edges: u32) -> Option<Vec<u32>> {
    debug_assert_ne!(s, t);
    if cap_edges == 0 {
        return None;
    }
    let mut dist = vec![UNSEEN; g.n() as usize + 1];
    dist[s as usize] = 0;
    let mut queue: VecDeque<u32> = VecDeque::from([s]);
    let mut found_level = None;
    'outer: while let Some(u) = queue.pop_front() {
        let du = dist[u as usize];
        if du >= cap_edges {
            break;
        }
        for v in g.neighbors(u) {
            if dist[v as usize] == UNSEEN {
                dist[v as usize] = du + 1;
                if v == t {
                    // Every vertex at distance <= du is already settled, which
                    // is all the backward walk needs.
                    found_level = Some(du + 1);
                    break 'outer;
                }
                queue.push_back(v);
            }
        }
    }
    let len = found_level?;
    let mut path = vec![t];
    let mut w = t;
    for k in (1..=len).rev() {
        // Lowest-id neighbor on the previous level becomes the parent.
        let parent = g
            .neighbors(w)
            .find(|&u| dist[u as usize] == k - 1)
            .expect("BFS levels are contiguous");
        path.push(parent);
        w = parent;
    }
    path.reverse();
    Some(path)
}

/// Number of points within `max_edges` hops of `s`, counting `s` itself.
pub fn count_within(g: &DynGraph, s: u32, max_edges: u32) -> u64 {
    let mut dist = vec![UNSEEN; g.n() as usize + 1];
    dist[s as usize] = 0;
    let mut frontier = vec![s];
    let mut next = Vec::new();
    let mut count = 1u64;
    let mut level = 0;
    while !frontier.is_empty() && level < max_edges {
        level += 1;
        for &u in &frontier {
            for v in g.neighbors(u) {
                if dist[v as usize] == UNSEEN {
                    dist[v as usize] = level;
                    count += 1;
                    next.push(v);
                }
            }
        }
        frontier.clear();
        std::mem::swap(&mut frontier, &mut next);
    }
    count
}

/// Public operation: minimum-edge path between distinct points, capped.
///
/// Tie-break: neighbors are explored in increasing id and the backward walk
/// picks the lowest-id parent, so the result is unique.
pub fn bfs_shortest_path(
    g: &DynGraph,
    s: PointId,
    t: PointId,
    cap_edges: u32,
) -> Result<Option<Vec<PointId>>> {
    let s = validate_point(s.get(), g.n())?;
    let t = validate_point(t.get(), g.n())?;
    if s == t {
        return Err(Error::SelfPath { point: s.get() });
    }
    Ok(canonical_path(g, s.get(), t.get(), cap_edges)
        .map(|p| p.into_iter().map(|v| PointId::new(v).unwrap()).collect()))
}
