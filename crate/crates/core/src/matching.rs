//! Maximum matchings.
//!
//! * bipartite graphs: augmenting paths from the left side, scanned in
//!   ascending vertex order;
//! * almost bipartite graphs: `μ(G) = max_{e ∈ E(C)} μ(G − e)`, every term
//!   bipartite, because some cycle edge is avoided by a maximum matching;
//! * anything else: exact search over vertex subsets, for `n` up to
//!   [`GENERAL_MATCHING_BOUND`].

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph, VertexSet};
use crate::structure::{classify, cycle_edges, GraphClass};

/// Largest order accepted by the exact general-graph matching search.
pub const GENERAL_MATCHING_BOUND: usize = 24;

const NONE: usize = usize::MAX;

/// A set of pairwise non-incident edges over vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Matching {
    #[serde(skip)]
    n: usize,
    edges: Vec<Edge>,
}

impl Matching {
    /// Builds a matching from edges; panics if two edges share an endpoint.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut edges: Vec<Edge> = edges.into_iter().map(|(u, v)| edge(u, v)).collect();
        edges.sort_unstable();
        let m = Matching { n, edges };
        let mut seen = VertexSet::new(n);
        for &(u, v) in &m.edges {
            assert!(seen.insert(u) && seen.insert(v), "edges of a matching must not touch");
        }
        m
    }

    fn from_mates(mate: &[usize]) -> Self {
        let edges = mate
            .iter()
            .enumerate()
            .filter(|&(u, &v)| v != NONE && u < v)
            .map(|(u, &v)| (u, v))
            .collect();
        Matching {
            n: mate.len(),
            edges,
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Vertices covered by the matching.
    pub fn saturated(&self) -> VertexSet {
        VertexSet::from_iter_in(self.n, self.edges.iter().flat_map(|&(u, v)| [u, v]))
    }

    pub fn saturates(&self, v: usize) -> bool {
        self.mate(v).is_some()
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        self.edges.iter().find_map(|&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    /// True when every edge is an edge of `g` and no two edges touch.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let mut seen = VertexSet::new(g.n());
        self.edges.iter().all(|&(u, v)| {
            u < g.n() && v < g.n() && g.has_edge(u, v) && seen.insert(u) && seen.insert(v)
        })
    }

    /// True when every vertex of `from` is matched to a vertex of `into`.
    pub fn matches_into(&self, from: &VertexSet, into: &VertexSet) -> bool {
        from.iter()
            .all(|v| self.mate(v).is_some_and(|w| into.contains(w)))
    }

    /// Lifts a matching of a subgraph back to parent indices.
    pub fn lift(&self, parent_n: usize, to_parent: &[usize]) -> Matching {
        Matching::new(
            parent_n,
            self.edges.iter().map(|&(u, v)| (to_parent[u], to_parent[v])),
        )
    }
}

/// Augmenting-path matching of `left` into its neighbours in `adj`.
///
/// Returns the mate array (`NONE` for free vertices).  Passes over the free
/// left vertices repeat until one pass finds no augmenting path; within a
/// pass the visited marks are not cleared, which keeps each pass linear.
fn augmenting_matching(n: usize, left: &[usize], adj: &[Vec<usize>]) -> Vec<usize> {
    let mut mate = vec![NONE; n];
    // greedy start
    for &u in left {
        if let Some(&w) = adj[u].iter().find(|&&w| mate[w] == NONE) {
            mate[u] = w;
            mate[w] = u;
        }
    }
    let mut visited = vec![false; n];
    loop {
        visited.iter_mut().for_each(|x| *x = false);
        let mut grew = false;
        for &u in left {
            if mate[u] == NONE && try_augment(u, adj, &mut mate, &mut visited) {
                grew = true;
            }
        }
        if !grew {
            return mate;
        }
    }
}

fn try_augment(u: usize, adj: &[Vec<usize>], mate: &mut [usize], visited: &mut [bool]) -> bool {
    for &w in &adj[u] {
        if visited[w] {
            continue;
        }
        visited[w] = true;
        let next = mate[w];
        if next == NONE || try_augment(next, adj, mate, visited) {
            mate[u] = w;
            mate[w] = u;
            return true;
        }
    }
    false
}

fn bipartite_mates(g: &Graph) -> Result<(Vec<usize>, VertexSet)> {
    let bp = g.bipartition().map_err(|_| Error::NotBipartite)?;
    let left: Vec<usize> = bp.left.to_vec();
    let adj: Vec<Vec<usize>> = (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect();
    Ok((augmenting_matching(g.n(), &left, &adj), bp.left))
}

/// Maximum matching of a bipartite graph.
pub fn maximum_matching_bipartite(g: &Graph) -> Result<Matching> {
    Ok(Matching::from_mates(&bipartite_mates(g)?.0))
}

/// Vertices of a bipartite graph left unsaturated by at least one maximum
/// matching: the free vertices of one maximum matching plus everything
/// reachable from them by an even alternating path.
pub fn unsaturable_vertices_bipartite(g: &Graph) -> Result<VertexSet> {
    let (mate, _) = bipartite_mates(g)?;
    let mut even = g.empty_set();
    let mut queue: VecDeque<usize> = VecDeque::new();
    for v in 0..g.n() {
        if mate[v] == NONE {
            even.insert(v);
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if w == mate[v] {
                continue;
            }
            let next = mate[w];
            // a free `w` would close an augmenting path
            debug_assert_ne!(next, NONE);
            if next != NONE && even.insert(next) {
                queue.push_back(next);
            }
        }
    }
    Ok(even)
}

/// Maximum matching of any graph in the supported classes: bipartite and
/// almost bipartite components of any size, others up to
/// [`GENERAL_MATCHING_BOUND`] vertices.
pub fn maximum_matching(g: &Graph) -> Result<Matching> {
    maximum_matching_with_class(g, &classify(g))
}

/// [`maximum_matching`] with a precomputed class for `g`.
pub fn maximum_matching_with_class(g: &Graph, class: &GraphClass) -> Result<Matching> {
    match class {
        GraphClass::Bipartite => maximum_matching_bipartite(g),
        GraphClass::AlmostBipartite { cycle } => almost_bipartite_matching(g, cycle),
        GraphClass::Other { .. } => {
            let comps = g.components();
            if comps.len() == 1 {
                return general_matching(g);
            }
            let mut edges = Vec::new();
            for comp in comps {
                let sub = g.induced(&comp);
                let m = maximum_matching(&sub.graph)?;
                edges.extend(m.lift(g.n(), &sub.to_parent).edges);
            }
            Ok(Matching::new(g.n(), edges))
        }
    }
}

/// Best matching over the deletions of single cycle edges; ties go to the
/// lexicographically smallest edge.
fn almost_bipartite_matching(g: &Graph, cycle: &[usize]) -> Result<Matching> {
    let mut best: Option<Matching> = None;
    for e in cycle_edges(cycle) {
        let m = maximum_matching_bipartite(&g.remove_edge(e)?)?;
        if best.as_ref().is_none_or(|b| m.len() > b.len()) {
            best = Some(m);
        }
    }
    best.ok_or(Error::NotAlmostBipartite)
}

/// Exact maximum matching by branching on the lowest remaining vertex
/// (left free, or matched to a remaining neighbour), memoised on the set of
/// remaining vertices.
pub fn general_matching(g: &Graph) -> Result<Matching> {
    let n = g.n();
    if n > GENERAL_MATCHING_BOUND {
        return Err(Error::TooLargeForExactGeneralMatching {
            n,
            bound: GENERAL_MATCHING_BOUND,
        });
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let mut memo: HashMap<u32, (u8, u8)> = HashMap::new();
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    best_in(full, &adj, &mut memo);

    let mut edges = Vec::new();
    let mut mask = full;
    while mask != 0 {
        let v = mask.trailing_zeros() as usize;
        let (_, partner) = memo[&mask];
        mask &= !(1 << v);
        if partner != u8::MAX {
            edges.push((v, partner as usize));
            mask &= !(1 << partner);
        }
    }
    Ok(Matching::new(n, edges))
}

fn best_in(mask: u32, adj: &[u32], memo: &mut HashMap<u32, (u8, u8)>) -> u8 {
    if mask == 0 {
        return 0;
    }
    if let Some(&(size, _)) = memo.get(&mask) {
        return size;
    }
    let v = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << v);
    let ceiling = (mask.count_ones() / 2) as u8;
    let mut best = (best_in(rest, adj, memo), u8::MAX);
    let mut options = adj[v] & rest;
    while options != 0 && best.0 < ceiling {
        let u = options.trailing_zeros();
        options &= options - 1;
        let size = 1 + best_in(rest & !(1 << u), adj, memo);
        if size > best.0 {
            best = (size, u as u8);
        }
    }
    memo.insert(mask, best);
    best.0
}

/// Outcome of asking for a matching that saturates `a` using only edges
/// between `a` and `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HallOutcome {
    Saturating(Matching),
    /// A subset of `a` with fewer neighbours in `b` than members.
    Violated { witness: VertexSet },
}

impl HallOutcome {
    pub fn matching(&self) -> Option<&Matching> {
        match self {
            HallOutcome::Saturating(m) => Some(m),
            HallOutcome::Violated { .. } => None,
        }
    }

    pub fn exists(&self) -> bool {
        self.matching().is_some()
    }
}

/// A matching from `a` into `b`: every vertex of `a` matched along an edge
/// of `(a, b)`.
pub fn matching_from_into(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<HallOutcome> {
    if !a.is_disjoint(b) {
        return Err(Error::OverlappingSets);
    }
    let n = g.n();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            if a.contains(v) {
                g.neighbors(v).iter().copied().filter(|&w| b.contains(w)).collect()
            } else {
                Vec::new()
            }
        })
        .collect();
    let left = a.to_vec();
    let mate = augmenting_matching(n, &left, &adj);
    if left.iter().all(|&u| mate[u] != NONE) {
        return Ok(HallOutcome::Saturating(Matching::from_mates(&mate)));
    }
    let mut witness = g.empty_set();
    let mut queue: VecDeque<usize> = left.iter().copied().filter(|&u| mate[u] == NONE).collect();
    for &u in &queue {
        witness.insert(u);
    }
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            let next = mate[w];
            if next != NONE && witness.insert(next) {
                queue.push_back(next);
            }
        }
    }
    Ok(HallOutcome::Violated { witness })
}

/// Whether deleting `e` lowers the matching number.
pub fn is_mu_critical_edge(g: &Graph, e: Edge) -> Result<bool> {
    let without = g.remove_edge(e)?;
    Ok(maximum_matching(&without)?.len() < maximum_matching(g)?.len())
}
