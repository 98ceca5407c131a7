//! Independence number, core, corona and König–Egerváry status.
//!
//! Every query is answered component by component, each component
//! dispatched on its own class:
//!
//! * bipartite: `α = n − μ`, and `v ∈ core` exactly when some maximum
//!   matching leaves `v` free;
//! * almost bipartite: the graph is König–Egerváry iff some attachment
//!   vertex `x` lies in `core(B_x)`; then `α = n − μ`, otherwise
//!   `α = n − 1 − μ` and `core` is the union of the pieces' cores;
//! * other: exhaustive search, within the oracle bounds.
//!
//! For König–Egerváry almost bipartite and other components the core is
//! computed from `v ∈ core ⟺ α(G − v) = α(G) − 1`; the union-of-pieces rule
//! does not hold there.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Subgraph, VertexSet};
use crate::matching::{maximum_matching_with_class, unsaturable_vertices_bipartite};
use crate::oracle::{oracle_alpha, OracleBounds};
use crate::structure::{classify, decompose_with_cycle, GraphClass, OddCycleDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndependenceProfile {
    pub alpha: usize,
    pub ke: bool,
    pub core: VertexSet,
    pub corona: VertexSet,
    pub omega_count: Option<usize>,
}

struct Component {
    sub: Subgraph,
    class: GraphClass,
}

fn components(g: &Graph) -> Vec<Component> {
    g.components()
        .iter()
        .map(|c| {
            let sub = g.induced(c);
            let class = classify(&sub.graph);
            Component { sub, class }
        })
        .collect()
}

/// `core(B_x)` of every piece, in parent indices, plus whether some `x`
/// belongs to its own piece's core.
fn piece_cores(g: &Graph, dec: &OddCycleDecomposition) -> Result<(VertexSet, bool)> {
    let mut union = g.empty_set();
    let mut anchored = false;
    for a in &dec.attach {
        let piece = g.induced(&a.piece);
        let core = piece.lift(&unsaturable_vertices_bipartite(&piece.graph)?, g.n());
        anchored |= core.contains(a.x);
        union = union.union(&core);
    }
    Ok((union, anchored))
}

/// König–Egerváry test for a connected almost bipartite graph through its
/// pieces, without computing α.
fn almost_bipartite_ke(g: &Graph, cycle: &[usize]) -> Result<bool> {
    let dec = decompose_with_cycle(g, cycle.to_vec())?;
    Ok(piece_cores(g, &dec)?.1)
}

fn component_alpha(h: &Graph, class: &GraphClass, bounds: &OracleBounds) -> Result<usize> {
    match class {
        GraphClass::Bipartite => Ok(h.n() - maximum_matching_with_class(h, class)?.len()),
        GraphClass::AlmostBipartite { cycle } => {
            let mu = maximum_matching_with_class(h, class)?.len();
            let deficit = usize::from(!almost_bipartite_ke(h, cycle)?);
            Ok(h.n() - mu - deficit)
        }
        GraphClass::Other { .. } => oracle_alpha(h, bounds),
    }
}

/// Independence number.
pub fn independence_number(g: &Graph, bounds: &OracleBounds) -> Result<usize> {
    components(g)
        .iter()
        .map(|c| component_alpha(&c.sub.graph, &c.class, bounds))
        .sum()
}

/// Whether `α + μ = n`.
pub fn is_konig_egervary(g: &Graph, bounds: &OracleBounds) -> Result<bool> {
    for c in components(g) {
        let h = &c.sub.graph;
        let ke = match &c.class {
            GraphClass::Bipartite => true,
            GraphClass::AlmostBipartite { cycle } => almost_bipartite_ke(h, cycle)?,
            GraphClass::Other { .. } => {
                oracle_alpha(h, bounds)? + maximum_matching_with_class(h, &c.class)?.len() == h.n()
            }
        };
        if !ke {
            return Ok(false);
        }
    }
    Ok(true)
}

fn core_by_deletion(h: &Graph, bounds: &OracleBounds) -> Result<VertexSet> {
    let alpha = independence_number(h, bounds)?;
    let mut core = h.empty_set();
    for v in 0..h.n() {
        if independence_number(&h.remove_vertex(v).graph, bounds)? + 1 == alpha {
            core.insert(v);
        }
    }
    Ok(core)
}

/// Intersection of all maximum independent sets.
pub fn core(g: &Graph, bounds: &OracleBounds) -> Result<VertexSet> {
    let mut out = g.empty_set();
    for c in components(g) {
        let h = &c.sub.graph;
        let local = match &c.class {
            GraphClass::Bipartite => unsaturable_vertices_bipartite(h)?,
            GraphClass::AlmostBipartite { cycle } => {
                let dec = decompose_with_cycle(h, cycle.clone())?;
                match piece_cores(h, &dec)? {
                    (union, false) => union,
                    (_, true) => core_by_deletion(h, bounds)?,
                }
            }
            GraphClass::Other { .. } => core_by_deletion(h, bounds)?,
        };
        out = out.union(&c.sub.lift(&local, g.n()));
    }
    Ok(out)
}

/// Union of all maximum independent sets: the vertices `v` with
/// `α(G − N[v]) = α(G) − 1`.
pub fn corona(g: &Graph, bounds: &OracleBounds) -> Result<VertexSet> {
    let alpha = independence_number(g, bounds)?;
    let mut out = g.empty_set();
    for v in 0..g.n() {
        let rest = g.remove_vertices(&g.closed_neighborhood(&g.set([v])));
        if independence_number(&rest.graph, bounds)? + 1 == alpha {
            out.insert(v);
        }
    }
    Ok(out)
}

/// All maximum independent sets, ordered by their sorted member lists.
///
/// Branches over the vertices in ascending order, pruning any branch that
/// cannot reach the independence number computed up front.
pub fn enumerate_maximum_independent_sets(
    g: &Graph,
    bounds: &OracleBounds,
) -> Result<Vec<VertexSet>> {
    let n = g.n();
    if n > bounds.omega_bound || n > 64 {
        return Err(Error::TooLarge {
            what: "enumerate_maximum_independent_sets",
            n,
            bound: bounds.omega_bound.min(64),
        });
    }
    let alpha = independence_number(g, bounds)?;
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect();
    let mut found = Vec::new();
    let open = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    branch(0, 0, open, alpha as u32, &adj, &mut found);
    let mut sets: Vec<VertexSet> = found
        .into_iter()
        .map(|m| g.set((0..n).filter(|&v| m >> v & 1 == 1)))
        .collect();
    sets.sort_by_key(|s| s.to_vec());
    Ok(sets)
}

fn branch(v: usize, chosen: u64, open: u64, alpha: u32, adj: &[u64], out: &mut Vec<u64>) {
    if chosen.count_ones() == alpha {
        out.push(chosen);
        return;
    }
    if v == adj.len() || chosen.count_ones() + (open >> v).count_ones() < alpha {
        return;
    }
    if open >> v & 1 == 1 {
        branch(v + 1, chosen | 1 << v, open & !adj[v] & !(1 << v), alpha, adj, out);
    }
    branch(v + 1, chosen, open & !(1 << v), alpha, adj, out);
}

/// Whether deleting `e` raises the independence number.
pub fn is_alpha_critical_edge(g: &Graph, e: Edge, bounds: &OracleBounds) -> Result<bool> {
    let without = g.remove_edge(e)?;
    Ok(independence_number(&without, bounds)? > independence_number(g, bounds)?)
}

/// α, KE status, core and corona together; `omega_count` when `n` is within
/// the enumeration bound.
pub fn profile(g: &Graph, bounds: &OracleBounds) -> Result<IndependenceProfile> {
    Ok(IndependenceProfile {
        alpha: independence_number(g, bounds)?,
        ke: is_konig_egervary(g, bounds)?,
        core: core(g, bounds)?,
        corona: corona(g, bounds)?,
        omega_count: enumerate_maximum_independent_sets(g, bounds)
            .ok()
            .map(|sets| sets.len()),
    })
}
