//! Brute-force ground truth.
//!
//! Everything here is exhaustive search over vertex subsets, independent
//! sets or matchings, written to be obviously correct rather than fast, and
//! shares no code with the fast paths it is used to check.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::matching::Matching;

/// Environment variable that overrides every default bound at once.
pub const BOUND_ENV: &str = "ODDCORE_ORACLE_BOUND";

/// Largest graph orders the exhaustive searches accept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleBounds {
    /// `2^n` sweeps over all vertex subsets (α, d, id).
    pub subset_bound: usize,
    /// Enumeration of maximum independent sets and critical independent sets.
    pub omega_bound: usize,
    /// Exhaustive matching search.
    pub matching_bound: usize,
}

impl Default for OracleBounds {
    fn default() -> Self {
        OracleBounds {
            subset_bound: 16,
            omega_bound: 18,
            matching_bound: 18,
        }
    }
}

impl OracleBounds {
    /// All three bounds set to `n`.  Values are clamped to `1..=60` since
    /// the searches work on 64-bit masks.
    pub fn uniform(n: usize) -> Self {
        let n = n.clamp(1, 60);
        OracleBounds {
            subset_bound: n,
            omega_bound: n,
            matching_bound: n,
        }
    }

    /// Defaults, or [`OracleBounds::uniform`] of `ODDCORE_ORACLE_BOUND` when
    /// it is set to an integer.
    pub fn from_env() -> Self {
        std::env::var(BOUND_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(Self::uniform)
            .unwrap_or_default()
    }
}

fn require(what: &'static str, g: &Graph, bound: usize) -> Result<()> {
    if g.n() > bound || g.n() > 60 {
        Err(Error::TooLarge {
            what,
            n: g.n(),
            bound: bound.min(60),
        })
    } else {
        Ok(())
    }
}

fn adjacency_masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

fn to_set(n: usize, mask: u64) -> VertexSet {
    VertexSet::from_iter_in(n, (0..n).filter(|&v| mask >> v & 1 == 1))
}

fn neighbors_of(adj: &[u64], mask: u64) -> u64 {
    (0..adj.len())
        .filter(|&v| mask >> v & 1 == 1)
        .fold(0, |acc, v| acc | adj[v])
}

/// Calls `visit` on the mask of every independent set (including `∅`).
fn for_each_independent_set(adj: &[u64], visit: &mut impl FnMut(u64)) {
    fn go(v: usize, chosen: u64, blocked: u64, adj: &[u64], visit: &mut impl FnMut(u64)) {
        if v == adj.len() {
            visit(chosen);
            return;
        }
        go(v + 1, chosen, blocked, adj, visit);
        if blocked >> v & 1 == 0 {
            go(v + 1, chosen | 1 << v, blocked | adj[v], adj, visit);
        }
    }
    go(0, 0, 0, adj, visit);
}

/// Independence number by sweeping all independent sets.
pub fn oracle_alpha(g: &Graph, bounds: &OracleBounds) -> Result<usize> {
    require("oracle_alpha", g, bounds.subset_bound)?;
    let mut best = 0;
    for_each_independent_set(&adjacency_masks(g), &mut |s| {
        best = best.max(s.count_ones() as usize)
    });
    Ok(best)
}

/// Matching number by including or excluding each edge in turn.
pub fn oracle_mu(g: &Graph, bounds: &OracleBounds) -> Result<usize> {
    require("oracle_mu", g, bounds.matching_bound)?;
    fn go(i: usize, used: u64, size: usize, edges: &[(usize, usize)], n: usize, best: &mut usize) {
        *best = (*best).max(size);
        if i == edges.len() || size + (n - used.count_ones() as usize) / 2 <= *best {
            return;
        }
        let (u, v) = edges[i];
        if used >> u & 1 == 0 && used >> v & 1 == 0 {
            go(i + 1, used | 1 << u | 1 << v, size + 1, edges, n, best);
        }
        go(i + 1, used, size, edges, n, best);
    }
    let mut best = 0;
    go(0, 0, 0, g.edges(), g.n(), &mut best);
    Ok(best)
}

/// `max |X| − |N(X)|` over all `2^n` subsets.
pub fn oracle_d_all_subsets(g: &Graph, bounds: &OracleBounds) -> Result<i64> {
    require("oracle_d_all_subsets", g, bounds.subset_bound)?;
    let adj = adjacency_masks(g);
    let mut best = 0i64;
    for x in 0u64..1 << g.n() {
        let d = x.count_ones() as i64 - neighbors_of(&adj, x).count_ones() as i64;
        best = best.max(d);
    }
    Ok(best)
}

/// `max |I| − |N(I)|` over independent sets.
pub fn oracle_id(g: &Graph, bounds: &OracleBounds) -> Result<i64> {
    require("oracle_id", g, bounds.subset_bound)?;
    let adj = adjacency_masks(g);
    let mut best = 0i64;
    for_each_independent_set(&adj, &mut |s| {
        best = best.max(s.count_ones() as i64 - neighbors_of(&adj, s).count_ones() as i64)
    });
    Ok(best)
}

/// All maximum independent sets, ordered by their sorted member lists.
pub fn oracle_omega(g: &Graph, bounds: &OracleBounds) -> Result<Vec<VertexSet>> {
    require("oracle_omega", g, bounds.omega_bound)?;
    let mut best = 0;
    let mut found: Vec<u64> = Vec::new();
    for_each_independent_set(&adjacency_masks(g), &mut |s| {
        let k = s.count_ones();
        if k > best {
            best = k;
            found.clear();
        }
        if k == best {
            found.push(s);
        }
    });
    let mut sets: Vec<VertexSet> = found.into_iter().map(|m| to_set(g.n(), m)).collect();
    sets.sort_by_key(|s| s.to_vec());
    Ok(sets)
}

/// `(core, corona, ker)` by full enumeration.
pub fn oracle_core_corona_ker(
    g: &Graph,
    bounds: &OracleBounds,
) -> Result<(VertexSet, VertexSet, VertexSet)> {
    require("oracle_core_corona_ker", g, bounds.omega_bound)?;
    let n = g.n();
    let adj = adjacency_masks(g);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let (mut alpha, mut core, mut corona) = (0, all, 0u64);
    let (mut id, mut ker) = (i64::MIN, all);
    for_each_independent_set(&adj, &mut |s| {
        let k = s.count_ones();
        if k > alpha {
            alpha = k;
            core = all;
            corona = 0;
        }
        if k == alpha {
            core &= s;
            corona |= s;
        }
        let d = k as i64 - neighbors_of(&adj, s).count_ones() as i64;
        if d > id {
            id = d;
            ker = all;
        }
        if d == id {
            ker &= s;
        }
    });
    Ok((to_set(n, core), to_set(n, corona), to_set(n, ker)))
}

/// Every maximum matching, each listed once.
pub fn oracle_maximum_matchings(g: &Graph, bounds: &OracleBounds) -> Result<Vec<Matching>> {
    require("oracle_maximum_matchings", g, bounds.matching_bound)?;
    let target = oracle_mu(g, bounds)?;
    let n = g.n();
    let adj = adjacency_masks(g);
    // The lowest untouched vertex is either left free or paired with a
    // higher untouched neighbour, so every matching arises exactly once.
    fn go(
        done: u64,
        chosen: &mut Vec<(usize, usize)>,
        adj: &[u64],
        target: usize,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let n = adj.len();
        let free = n - done.count_ones() as usize;
        if chosen.len() + free / 2 < target {
            return;
        }
        if chosen.len() == target {
            out.push(chosen.clone());
            return;
        }
        let v = (!done).trailing_zeros() as usize;
        go(done | 1 << v, chosen, adj, target, out);
        let mut options = adj[v] & !done;
        while options != 0 {
            let u = options.trailing_zeros() as usize;
            options &= options - 1;
            chosen.push((v, u));
            go(done | 1 << v | 1 << u, chosen, adj, target, out);
            chosen.pop();
        }
    }
    let mut out = Vec::new();
    go(0, &mut Vec::new(), &adj, target, &mut out);
    Ok(out.into_iter().map(|es| Matching::new(n, es)).collect())
}

/// Number of simple odd cycles, counting stops once `cap` is reached.
pub fn oracle_odd_cycle_count(g: &Graph, cap: usize) -> usize {
    // Each cycle is found from its minimum vertex `s`, once per direction;
    // the direction with `path[1] < last` is kept.
    fn go(v: usize, s: usize, path: &mut Vec<usize>, on_path: &mut [bool], g: &Graph, count: &mut usize, cap: usize) {
        for &w in g.neighbors(v) {
            if *count >= cap {
                return;
            }
            if w == s && path.len() >= 3 && path.len() % 2 == 1 && path[1] < v {
                *count += 1;
            } else if w > s && !on_path[w] {
                on_path[w] = true;
                path.push(w);
                go(w, s, path, on_path, g, count, cap);
                path.pop();
                on_path[w] = false;
            }
        }
    }
    let mut count = 0;
    let mut on_path = vec![false; g.n()];
    for s in 0..g.n() {
        on_path[s] = true;
        go(s, s, &mut vec![s], &mut on_path, g, &mut count, cap);
        on_path[s] = false;
        if count >= cap {
            break;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{fixture, FixtureName};

    fn g(name: &str) -> Graph {
        fixture(&name.parse::<FixtureName>().unwrap()).unwrap()
    }

    fn b() -> OracleBounds {
        OracleBounds::default()
    }

    #[test]
    fn alpha_and_mu() {
        for (name, alpha, mu) in [("c5", 2, 2), ("fig1", 6, 5), ("fig2", 7, 6), ("k1", 1, 0)] {
            assert_eq!(oracle_alpha(&g(name), &b()).unwrap(), alpha, "{name}");
            assert_eq!(oracle_mu(&g(name), &b()).unwrap(), mu, "{name}");
        }
    }

    #[test]
    fn difference_sweeps() {
        for (name, d) in [("star3", 2), ("k2n_minus_e(3)", 0), ("c4", 0)] {
            assert_eq!(oracle_d_all_subsets(&g(name), &b()).unwrap(), d, "{name}");
            assert_eq!(oracle_id(&g(name), &b()).unwrap(), d, "{name}");
        }
    }

    #[test]
    fn core_corona_ker() {
        let (core, corona, ker) = oracle_core_corona_ker(&g("paw"), &b()).unwrap();
        assert_eq!(core.to_vec(), vec![3]);
        assert_eq!(corona.to_vec(), vec![1, 2, 3]);
        // d(PAW) = 0, so the empty set is critical independent
        assert_eq!(ker.to_vec(), Vec::<usize>::new());
        let (core, corona, ker) = oracle_core_corona_ker(&g("p3"), &b()).unwrap();
        assert_eq!((core.to_vec(), corona.to_vec(), ker.to_vec()), (vec![0, 2], vec![0, 2], vec![0, 2]));
        let (core, corona, ker) = oracle_core_corona_ker(&g("c5"), &b()).unwrap();
        assert!(core.is_empty() && ker.is_empty());
        assert_eq!(corona.len(), 5);
    }

    #[test]
    fn omega_lists() {
        let sets = |name: &str| -> Vec<Vec<usize>> {
            oracle_omega(&g(name), &b()).unwrap().iter().map(|s| s.to_vec()).collect()
        };
        assert_eq!(sets("k3"), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(sets("c4"), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(sets("paw"), vec![vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn maximum_matchings() {
        let k3 = oracle_maximum_matchings(&g("k3"), &b()).unwrap();
        assert_eq!(k3.len(), 3);
        assert!(k3.iter().all(|m| m.len() == 1));
        assert_eq!(oracle_maximum_matchings(&g("c4"), &b()).unwrap().len(), 2);
        // c = 2 in the fig1 labelling
        let fig1 = oracle_maximum_matchings(&g("fig1"), &b()).unwrap();
        assert!(!fig1.is_empty());
        assert!(fig1.iter().all(|m| m.len() == 5 && m.saturates(2)));
        let mut uniq = fig1.clone();
        uniq.sort_by(|a, b| a.edges().cmp(b.edges()));
        uniq.dedup();
        assert_eq!(uniq.len(), fig1.len());
    }

    #[test]
    fn bounds_are_enforced() {
        let tight = OracleBounds::uniform(4);
        assert!(matches!(
            oracle_alpha(&g("c5"), &tight),
            Err(Error::TooLarge { n: 5, bound: 4, .. })
        ));
        assert!(oracle_mu(&g("c4"), &tight).is_ok());
    }

    #[test]
    fn odd_cycle_counts() {
        assert_eq!(oracle_odd_cycle_count(&g("k3"), 10), 1);
        assert_eq!(oracle_odd_cycle_count(&g("c4"), 10), 0);
        assert_eq!(oracle_odd_cycle_count(&g("fig2"), 10), 1);
        // K4 has four triangles and three 4-cycles
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(oracle_odd_cycle_count(&k4, 10), 4);
        assert_eq!(oracle_odd_cycle_count(&k4, 2), 2);
    }

    #[test]
    fn zhang_on_small_graphs() {
        for graph in crate::generators::enumerate_labeled_graphs(5).unwrap() {
            assert_eq!(oracle_id(&graph, &b()).unwrap(), oracle_d_all_subsets(&graph, &b()).unwrap());
        }
    }
}
