//! Reference values for the theorem checks.
//!
//! Inside the oracle bounds everything comes from exhaustive search.  Above
//! them, α and μ of an almost bipartite component are computed by
//! branching on one cycle vertex `y` (which leaves bipartite remainders):
//!
//! * `α = max(α(G − y), 1 + α(G − N[y]))`
//! * `μ = max(μ(G − y), 1 + max_{w ∈ N(y)} μ(G − y − w))`
//!
//! Neither route goes through the cycle-edge deletion or the piece-core
//! criterion used by the fast paths.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::matching::{general_matching, maximum_matching_bipartite};
use crate::oracle::{oracle_alpha, oracle_core_corona_ker, oracle_mu, OracleBounds};
use crate::structure::{classify, GraphClass};

fn bipartite_alpha(h: &Graph) -> Result<usize> {
    Ok(h.n() - maximum_matching_bipartite(h)?.len())
}

fn bipartite_mu(h: &Graph) -> Result<usize> {
    Ok(maximum_matching_bipartite(h)?.len())
}

fn per_component(
    g: &Graph,
    f: &mut impl FnMut(&Graph, &GraphClass) -> Result<usize>,
) -> Result<usize> {
    let mut total = 0;
    for comp in g.components() {
        let h = g.induced(&comp).graph;
        total += f(&h, &classify(&h))?;
    }
    Ok(total)
}

fn too_large(what: &'static str, n: usize, bound: usize) -> Error {
    Error::TooLarge { what, n, bound }
}

pub fn alpha(g: &Graph, bounds: &OracleBounds) -> Result<usize> {
    if g.n() <= bounds.subset_bound {
        return oracle_alpha(g, bounds);
    }
    per_component(g, &mut |h, class| match class {
        GraphClass::Bipartite => bipartite_alpha(h),
        GraphClass::AlmostBipartite { cycle } => {
            let y = cycle[0];
            let without = bipartite_alpha(&h.remove_vertex(y).graph)?;
            let closed = h.closed_neighborhood(&h.set([y]));
            let with = 1 + bipartite_alpha(&h.remove_vertices(&closed).graph)?;
            Ok(without.max(with))
        }
        GraphClass::Other { .. } if h.n() <= bounds.subset_bound => oracle_alpha(h, bounds),
        GraphClass::Other { .. } => Err(too_large("reference alpha", h.n(), bounds.subset_bound)),
    })
}

pub fn mu(g: &Graph, bounds: &OracleBounds) -> Result<usize> {
    if g.n() <= bounds.matching_bound {
        return oracle_mu(g, bounds);
    }
    per_component(g, &mut |h, class| match class {
        GraphClass::Bipartite => bipartite_mu(h),
        GraphClass::AlmostBipartite { cycle } => {
            let y = cycle[0];
            let mut best = bipartite_mu(&h.remove_vertex(y).graph)?;
            for &w in h.neighbors(y) {
                let rest = h.remove_vertices(&h.set([y, w]));
                best = best.max(1 + bipartite_mu(&rest.graph)?);
            }
            Ok(best)
        }
        GraphClass::Other { .. } if h.n() <= bounds.matching_bound => oracle_mu(h, bounds),
        GraphClass::Other { .. } => Ok(general_matching(h)?.len()),
    })
}

/// `core` by enumeration, or by `v ∈ core ⟺ α(G − v) = α(G) − 1`.
pub fn core(g: &Graph, bounds: &OracleBounds) -> Result<VertexSet> {
    if g.n() <= bounds.omega_bound {
        return Ok(oracle_core_corona_ker(g, bounds)?.0);
    }
    let a = alpha(g, bounds)?;
    let mut out = g.empty_set();
    for v in 0..g.n() {
        if alpha(&g.remove_vertex(v).graph, bounds)? + 1 == a {
            out.insert(v);
        }
    }
    Ok(out)
}

/// `corona` by enumeration, or by `v ∈ corona ⟺ α(G − N[v]) = α(G) − 1`.
pub fn corona(g: &Graph, bounds: &OracleBounds) -> Result<VertexSet> {
    if g.n() <= bounds.omega_bound {
        return Ok(oracle_core_corona_ker(g, bounds)?.1);
    }
    let a = alpha(g, bounds)?;
    let mut out = g.empty_set();
    for v in 0..g.n() {
        let rest = g.remove_vertices(&g.closed_neighborhood(&g.set([v])));
        if alpha(&rest.graph, bounds)? + 1 == a {
            out.insert(v);
        }
    }
    Ok(out)
}
