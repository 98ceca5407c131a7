//! Critical difference, critical sets, critical independent sets and `ker`.
//!
//! `d(G) = max_X |X| − |N(X)|` is the deficiency of the left side of the
//! bipartite double cover (vertices `v` and `v'`, an edge `v–u'` for every
//! edge `vu`): a left set `X` has exactly `N(X)'` as its neighbourhood, so
//! `d(G) = n − μ(cover)`.  This holds for every graph and never consults the
//! structure theorems, which keeps it usable as a referee for them.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::independence;
use crate::matching::maximum_matching_bipartite;
use crate::oracle::OracleBounds;
use crate::structure::classify;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalProfile {
    pub d: i64,
    pub id: i64,
    pub critical_set: VertexSet,
    pub critical_independent_set: Option<VertexSet>,
    pub ker: Option<VertexSet>,
}

/// Double cover on `2n` vertices: `v` stays `v`, its copy is `v + n`.
pub fn bipartite_double_cover(g: &Graph) -> Graph {
    let n = g.n();
    let edges = g
        .edges()
        .iter()
        .flat_map(|&(u, v)| [(u, v + n), (v, u + n)]);
    Graph::from_edges(2 * n, edges).expect("double cover of a simple graph is simple")
}

/// `d(G)`, in polynomial time for any graph.
pub fn critical_difference(g: &Graph) -> i64 {
    let cover = bipartite_double_cover(g);
    let mu = maximum_matching_bipartite(&cover).expect("double cover is bipartite");
    (g.n() - mu.len()) as i64
}

/// A set `X` with `|X| − |N(X)| = d(G)`; `∅` when `d(G) = 0`.
///
/// Taken as the left copies reachable by alternating paths from the left
/// copies a maximum matching of the double cover leaves free.
pub fn find_critical_set(g: &Graph) -> VertexSet {
    let n = g.n();
    let cover = bipartite_double_cover(g);
    let m = maximum_matching_bipartite(&cover).expect("double cover is bipartite");
    let mut mate = vec![usize::MAX; 2 * n];
    for &(u, v) in m.edges() {
        mate[u] = v;
        mate[v] = u;
    }
    let mut reached = g.empty_set();
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| mate[v] == usize::MAX).collect();
    for &v in &queue {
        reached.insert(v);
    }
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            let next = mate[w + n];
            if next != usize::MAX && reached.insert(next) {
                queue.push_back(next);
            }
        }
    }
    reached
}

/// An independent set `I` with `|I| − |N(I)| = d(G)`; `∅` when `d(G) = 0`.
///
/// Tried in order, each candidate re-checked against `d(G)` before it is
/// returned:
/// 1. `core(G)` when `G` is bipartite or almost bipartite, or when the core
///    is otherwise computable;
/// 2. `X − N(X)` for the critical set `X` of [`find_critical_set`]; this is
///    independent and its difference is at least `d(X)`;
/// 3. enumeration of independent sets within the enumeration bound.
pub fn find_critical_independent_set(g: &Graph, bounds: &OracleBounds) -> Result<VertexSet> {
    let d = critical_difference(g);
    if d == 0 {
        return Ok(g.empty_set());
    }
    let attains = |s: &VertexSet| g.is_independent(s) && g.difference(s) == d;

    let class = classify(g);
    if class.is_bipartite() || class.is_almost_bipartite() || g.n() <= bounds.omega_bound {
        if let Ok(core) = independence::core(g, bounds) {
            if attains(&core) {
                return Ok(core);
            }
        }
    }
    let x = find_critical_set(g);
    let trimmed = x.minus(&g.neighborhood(&x));
    if attains(&trimmed) {
        return Ok(trimmed);
    }
    critical_independent_sets(g, bounds)?
        .into_iter()
        .next()
        .ok_or(Error::TooLarge {
            what: "find_critical_independent_set",
            n: g.n(),
            bound: bounds.omega_bound,
        })
}

/// Every independent set attaining the maximum difference.
fn critical_independent_sets(g: &Graph, bounds: &OracleBounds) -> Result<Vec<VertexSet>> {
    let n = g.n();
    if n > bounds.omega_bound || n > 64 {
        return Err(Error::TooLarge {
            what: "critical independent set enumeration",
            n,
            bound: bounds.omega_bound.min(64),
        });
    }
    let d = critical_difference(g);
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect();
    let mut found = Vec::new();
    collect_critical(0, 0, 0, 0, d, &adj, &mut found);
    Ok(found
        .into_iter()
        .map(|m| g.set((0..n).filter(|&v| m >> v & 1 == 1)))
        .collect())
}

/// Walks independent sets, tracking `N(chosen)` incrementally.
fn collect_critical(v: usize, chosen: u64, blocked: u64, nbrs: u64, d: i64, adj: &[u64], out: &mut Vec<u64>) {
    if v == adj.len() {
        if chosen.count_ones() as i64 - nbrs.count_ones() as i64 == d {
            out.push(chosen);
        }
        return;
    }
    collect_critical(v + 1, chosen, blocked, nbrs, d, adj, out);
    if blocked >> v & 1 == 0 {
        collect_critical(v + 1, chosen | 1 << v, blocked | adj[v], nbrs | adj[v], d, adj, out);
    }
}

/// Intersection of all critical independent sets.
pub fn ker(g: &Graph, bounds: &OracleBounds) -> Result<VertexSet> {
    let sets = critical_independent_sets(g, bounds)?;
    Ok(sets
        .iter()
        .fold(g.vertex_set(), |acc, s| acc.intersection(s)))
}

/// `d`, a critical set, and, when computable, a critical independent set
/// (which also certifies `id = d`) and `ker`.
pub fn profile(g: &Graph, bounds: &OracleBounds) -> CriticalProfile {
    let d = critical_difference(g);
    let independent = find_critical_independent_set(g, bounds).ok();
    CriticalProfile {
        d,
        id: independent.as_ref().map_or(d, |s| g.difference(s)),
        critical_set: find_critical_set(g),
        critical_independent_set: independent,
        ker: ker(g, bounds).ok(),
    }
}
