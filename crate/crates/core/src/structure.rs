//! Classification into bipartite / almost bipartite / other, and the
//! decomposition of an almost bipartite graph around its odd cycle.
//!
//! A graph is almost bipartite when it has exactly one odd cycle `C`.
//! Uniqueness is decided with `|E(C)|` bipartiteness tests rather than by
//! counting cycles: if some other odd cycle `D` exists it misses at least
//! one edge `e` of `C` (a simple cycle is not a proper subset of another),
//! so `G − e` still contains `D`.  Conversely, when `C` is the only odd
//! cycle, deleting any of its edges leaves no odd cycle at all.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph, VertexSet};

/// Structural class of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphClass {
    Bipartite,
    /// Exactly one odd cycle, in canonical rotation.
    AlmostBipartite { cycle: Vec<usize> },
    /// At least two odd cycles: `cycle`, and `second_cycle` which survives
    /// the deletion of `edge ∈ E(cycle)`.
    Other {
        cycle: Vec<usize>,
        edge: Edge,
        second_cycle: Vec<usize>,
    },
}

impl GraphClass {
    pub fn tag(&self) -> &'static str {
        match self {
            GraphClass::Bipartite => "bipartite",
            GraphClass::AlmostBipartite { .. } => "almost_bipartite",
            GraphClass::Other { .. } => "other",
        }
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(self, GraphClass::Bipartite)
    }

    pub fn is_almost_bipartite(&self) -> bool {
        matches!(self, GraphClass::AlmostBipartite { .. })
    }

    /// The odd cycle, if the graph has one.
    pub fn odd_cycle(&self) -> Option<&[usize]> {
        match self {
            GraphClass::Bipartite => None,
            GraphClass::AlmostBipartite { cycle } | GraphClass::Other { cycle, .. } => {
                Some(cycle)
            }
        }
    }
}

/// A vertex `x ∈ N₁(C)`, its unique neighbour `y` on `C`, and the vertex
/// set of the piece `B_x`: the component of `G − V(C)` containing `x`.
///
/// When the piece meets `C` through the single edge `xy` this is the
/// component of `G − xy` containing `x`.  A piece may also meet `C` through
/// several edges, all at the same cycle vertex `y` (an even cycle through
/// `y`); each of its attachment vertices then gets an entry with the same
/// piece.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Attachment {
    pub x: usize,
    pub y: usize,
    pub piece: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OddCycleDecomposition {
    pub cycle: Vec<usize>,
    pub attach: Vec<Attachment>,
    /// Components that do not contain the cycle; all bipartite.
    pub rest: Vec<VertexSet>,
}

impl OddCycleDecomposition {
    pub fn cycle_set(&self, n: usize) -> VertexSet {
        VertexSet::from_iter_in(n, self.cycle.iter().copied())
    }

    pub fn cycle_edges(&self) -> Vec<Edge> {
        cycle_edges(&self.cycle)
    }

    /// `N₁(C)`.
    pub fn attachment_vertices(&self, n: usize) -> VertexSet {
        VertexSet::from_iter_in(n, self.attach.iter().map(|a| a.x))
    }

    /// Vertex set of the component containing the cycle.
    pub fn cycle_component(&self, n: usize) -> VertexSet {
        self.attach
            .iter()
            .fold(self.cycle_set(n), |acc, a| acc.union(&a.piece))
    }
}

/// Edges of a cycle given as a vertex sequence, sorted lexicographically.
pub fn cycle_edges(cycle: &[usize]) -> Vec<Edge> {
    let k = cycle.len();
    let mut out: Vec<Edge> = (0..k).map(|i| edge(cycle[i], cycle[(i + 1) % k])).collect();
    out.sort_unstable();
    out
}

/// Rotates so the minimum vertex comes first, then orients the cycle so
/// that the second entry is the smaller of the minimum's two neighbours.
pub fn canonical_cycle(mut cycle: Vec<usize>) -> Vec<usize> {
    if cycle.is_empty() {
        return cycle;
    }
    let (pos, _) = cycle.iter().enumerate().min_by_key(|&(_, v)| *v).unwrap();
    cycle.rotate_left(pos);
    if cycle.len() > 2 && cycle[cycle.len() - 1] < cycle[1] {
        cycle[1..].reverse();
    }
    cycle
}

/// Some simple odd cycle of `g`, or `None` when `g` is bipartite.
pub fn find_odd_cycle(g: &Graph) -> Option<Vec<usize>> {
    g.bipartition().err().map(|walk| canonical_cycle(walk.0))
}

pub fn classify(g: &Graph) -> GraphClass {
    let Some(cycle) = find_odd_cycle(g) else {
        return GraphClass::Bipartite;
    };
    for e in cycle_edges(&cycle) {
        let cut = g.remove_edge(e).expect("cycle edge belongs to the graph");
        if let Some(second_cycle) = find_odd_cycle(&cut) {
            return GraphClass::Other {
                cycle,
                edge: e,
                second_cycle,
            };
        }
    }
    GraphClass::AlmostBipartite { cycle }
}

/// Splits an almost bipartite graph into its odd cycle, the pieces `B_x`
/// and the remaining (bipartite) components.
///
/// Pieces are the components of `G − V(C)` inside the cycle's component.
/// Each is bipartite and touches `C` at exactly one vertex, since a piece
/// reaching two cycle vertices would close a second odd cycle.
pub fn decompose(g: &Graph) -> Result<OddCycleDecomposition> {
    match classify(g) {
        GraphClass::AlmostBipartite { cycle } => decompose_with_cycle(g, cycle),
        _ => Err(Error::NotAlmostBipartite),
    }
}

/// Same as [`decompose`] for a caller that already holds the unique odd
/// cycle.
pub fn decompose_with_cycle(g: &Graph, cycle: Vec<usize>) -> Result<OddCycleDecomposition> {
    let violation = |msg: String| Err(Error::InternalStructureViolation(msg));
    let on_cycle = g.set(cycle.iter().copied());
    if cycle.len().is_multiple_of(2) || on_cycle.len() != cycle.len() {
        return violation(format!("{cycle:?} is not a simple odd cycle"));
    }
    for i in 0..cycle.len() {
        if !g.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]) {
            return violation(format!("{cycle:?} is not a cycle of the graph"));
        }
    }

    let components = g.components();
    let (main, rest): (Vec<VertexSet>, Vec<VertexSet>) =
        components.into_iter().partition(|c| c.contains(cycle[0]));
    for comp in &rest {
        if !g.induced(comp).graph.is_bipartite() {
            return violation(format!("component {comp:?} away from the cycle is not bipartite"));
        }
    }
    let main = main.into_iter().next().expect("cycle lies in some component");

    let first_ring = g.neighborhood(&on_cycle).minus(&on_cycle);
    let mut attach: Vec<Attachment> = Vec::new();
    let mut covered = on_cycle.clone();
    for x in first_ring.iter() {
        let on_c: Vec<usize> = g
            .neighbors(x)
            .iter()
            .copied()
            .filter(|&w| on_cycle.contains(w))
            .collect();
        let [y] = on_c[..] else {
            return violation(format!("vertex {x} has {} neighbours on the cycle", on_c.len()));
        };
        if let Some(prev) = attach.iter().find(|a| a.piece.contains(x)) {
            if prev.y != y {
                return violation(format!("piece of {x} touches the cycle at {} and {y}", prev.y));
            }
            let piece = prev.piece.clone();
            attach.push(Attachment { x, y, piece });
            continue;
        }
        let piece = reach_avoiding(g, x, &on_cycle);
        if !piece.is_disjoint(&covered) {
            return violation(format!("piece of {x} overlaps an earlier piece"));
        }
        if !g.induced(&piece).graph.is_bipartite() {
            return violation(format!("piece of {x} is not bipartite"));
        }
        covered = covered.union(&piece);
        attach.push(Attachment { x, y, piece });
    }
    if covered != main {
        return violation("cycle and pieces do not cover the component".to_string());
    }
    Ok(OddCycleDecomposition {
        cycle,
        attach,
        rest,
    })
}

/// Vertices reachable from `start` without entering `blocked`.
fn reach_avoiding(g: &Graph, start: usize, blocked: &VertexSet) -> VertexSet {
    let mut seen = VertexSet::new(g.n());
    seen.insert(start);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if !blocked.contains(w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen
}
