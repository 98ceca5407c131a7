//! Immutable simple undirected graphs on vertices `0..n`, vertex sets,
//! neighbourhoods, subgraph operations, two-colouring and the edge-list
//! text format.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// An undirected edge, always stored with the smaller endpoint first.
pub type Edge = (usize, usize);

/// Normalises an unordered pair so that `u < v`.
#[inline]
pub fn edge(u: usize, v: usize) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("edge {0} {1} is not present")]
    MissingEdge(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing `p <n>` header")]
    MissingHeader,
    #[error("malformed line: {0:?}")]
    Malformed(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

/// A subset of `0..n` with bitset semantics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet {
            n,
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::new(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    /// Builds a set from an iterator of members.
    ///
    /// Panics if a member is `>= n`.
    pub fn from_iter_in(n: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(n);
        for v in items {
            s.insert(v);
        }
        s
    }

    /// Universe size the set was created against.
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.n, "vertex {v} out of range for universe {}", self.n);
        let (w, b) = (v / 64, v % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.n {
            return false;
        }
        let (w, b) = (v / 64, v % 64);
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        present
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / 64] & (1 << (v % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn zip_words(&self, other: &VertexSet, f: impl Fn(u64, u64) -> u64) -> VertexSet {
        assert_eq!(self.n, other.n, "vertex sets over different universes");
        VertexSet {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.zip_words(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.zip_words(other, |a, b| a & b)
    }

    /// `self − other`.
    pub fn minus(&self, other: &VertexSet) -> VertexSet {
        self.zip_words(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> VertexSet {
        VertexSet::full(self.n).minus(self)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        assert_eq!(self.n, other.n, "vertex sets over different universes");
        self.words.iter().zip(&other.words).all(|(&a, &b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        assert_eq!(self.n, other.n, "vertex sets over different universes");
        self.words.iter().zip(&other.words).all(|(&a, &b)| a & b == 0)
    }

    /// Maps every member through `map` into a universe of size `n`.
    pub fn map_into(&self, n: usize, map: &[usize]) -> VertexSet {
        VertexSet::from_iter_in(n, self.iter().map(|v| map[v]))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// Proper two-colouring of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub left: VertexSet,
    pub right: VertexSet,
}

/// Witness that no two-colouring exists: a closed walk of odd length,
/// listed without repeating the start vertex at the end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddClosedWalk(pub Vec<usize>);

/// A subgraph whose vertices were renumbered; `to_parent[i]` is the
/// parent index of the subgraph's vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    pub to_parent: Vec<usize>,
}

impl Subgraph {
    /// Pulls a set of subgraph vertices back to the parent universe.
    pub fn lift(&self, set: &VertexSet, parent_n: usize) -> VertexSet {
        set.map_into(parent_n, &self.to_parent)
    }
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph, rejecting loops, duplicate edges and out-of-range
    /// endpoints.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            list.push(edge(u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted_unique(n, list))
    }

    fn from_sorted_unique(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order, each with `u < v`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Sorted neighbour list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.n)
    }

    pub fn set(&self, items: impl IntoIterator<Item = usize>) -> VertexSet {
        VertexSet::from_iter_in(self.n, items)
    }

    /// `N(A)`: every vertex adjacent to some member of `a`.
    pub fn neighborhood(&self, a: &VertexSet) -> VertexSet {
        let mut out = self.empty_set();
        for v in a.iter() {
            for &w in &self.adj[v] {
                out.insert(w);
            }
        }
        out
    }

    /// `N[A] = A ∪ N(A)`.
    pub fn closed_neighborhood(&self, a: &VertexSet) -> VertexSet {
        self.neighborhood(a).union(a)
    }

    /// `|X| − |N(X)|`.
    pub fn difference(&self, x: &VertexSet) -> i64 {
        x.len() as i64 - self.neighborhood(x).len() as i64
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.adj[v].iter().all(|&w| !s.contains(w)))
    }

    /// The subgraph induced by `keep`, vertices renumbered in ascending order.
    pub fn induced(&self, keep: &VertexSet) -> Subgraph {
        let mut to_child = vec![usize::MAX; self.n];
        let to_parent: Vec<usize> = keep.iter().collect();
        for (i, &v) in to_parent.iter().enumerate() {
            to_child[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| keep.contains(u) && keep.contains(v))
            .map(|&(u, v)| (to_child[u], to_child[v]))
            .collect();
        // Renumbering is monotone, so the edge list stays sorted.
        Subgraph {
            graph: Graph::from_sorted_unique(to_parent.len(), edges),
            to_parent,
        }
    }

    /// `G − W`.
    pub fn remove_vertices(&self, w: &VertexSet) -> Subgraph {
        self.induced(&w.complement())
    }

    /// `G − v`.
    pub fn remove_vertex(&self, v: usize) -> Subgraph {
        self.remove_vertices(&self.set([v]))
    }

    /// `G − e`, keeping all vertices.
    pub fn remove_edge(&self, e: Edge) -> Result<Graph, GraphError> {
        let e = edge(e.0, e.1);
        let pos = self
            .edges
            .binary_search(&e)
            .map_err(|_| GraphError::MissingEdge(e.0, e.1))?;
        let mut edges = self.edges.clone();
        edges.remove(pos);
        Ok(Graph::from_sorted_unique(self.n, edges))
    }

    /// `G + e`.
    pub fn add_edge(&self, e: Edge) -> Result<Graph, GraphError> {
        let mut edges = self.edges.clone();
        edges.push(e);
        Graph::from_edges(self.n, edges)
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)))
            .collect();
        Graph::from_sorted_unique(self.n + other.n, edges)
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|&(u, v)| edge(perm[u], perm[v]))
            .collect();
        edges.sort_unstable();
        Graph::from_sorted_unique(self.n, edges)
    }

    /// Connected components, each sorted, ordered by their minimum vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = self.empty_set();
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Breadth-first two-colouring.  Vertex 0 of every component (its
    /// minimum) goes to `left`.  On failure the odd closed walk is the
    /// simple odd cycle formed by the conflict edge and the two tree paths
    /// to their lowest common ancestor.
    pub fn bipartition(&self) -> Result<Bipartition, OddClosedWalk> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut depth = vec![0usize; self.n];
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                let cv = color[v].unwrap();
                for &w in &self.adj[v] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cv);
                            parent[w] = v;
                            depth[w] = depth[v] + 1;
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cv => {
                            return Err(OddClosedWalk(tree_cycle(&parent, &depth, v, w)));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        let mut left = self.empty_set();
        let mut right = self.empty_set();
        for (v, c) in color.iter().enumerate() {
            if c == &Some(false) {
                left.insert(v);
            } else {
                right.insert(v);
            }
        }
        Ok(Bipartition { left, right })
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_ok()
    }

    /// Serialises to the edge-list format: `p <n>` then one sorted edge per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("p {}\n", self.n);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// Cycle through the conflict edge `u`–`w` and the BFS-tree paths from
/// both ends up to their lowest common ancestor.
fn tree_cycle(parent: &[usize], depth: &[usize], u: usize, w: usize) -> Vec<usize> {
    let (mut a, mut b) = (u, w);
    let mut up_a = vec![a];
    let mut up_b = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        up_a.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        up_b.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        up_a.push(a);
        up_b.push(b);
    }
    up_b.pop();
    up_b.reverse();
    up_a.extend(up_b);
    up_a
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

/// Parses the edge-list format.
///
/// Lines starting with `#` are comments, blank lines are skipped.  The first
/// remaining line must be `p <n>`; every later one is `<u> <v>`.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<Edge> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let err = |kind| ParseError { line, kind };
        let malformed = || err(ParseErrorKind::Malformed(raw.to_string()));
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match n {
            None => match fields.as_slice() {
                ["p", count] => n = Some(count.parse().map_err(|_| malformed())?),
                _ => return Err(err(ParseErrorKind::MissingHeader)),
            },
            Some(n) => {
                let [a, b] = fields.as_slice() else {
                    return Err(malformed());
                };
                let u: usize = a.parse().map_err(|_| malformed())?;
                let v: usize = b.parse().map_err(|_| malformed())?;
                for vertex in [u, v] {
                    if vertex >= n {
                        return Err(err(GraphError::VertexOutOfRange { vertex, n }.into()));
                    }
                }
                if u == v {
                    return Err(err(GraphError::SelfLoop(u).into()));
                }
                let e = edge(u, v);
                if !seen.insert(e) {
                    return Err(err(GraphError::DuplicateEdge(e.0, e.1).into()));
                }
                edges.push(e);
            }
        }
    }
    let n = n.ok_or(ParseError {
        line: text.lines().count().max(1),
        kind: ParseErrorKind::MissingHeader,
    })?;
    edges.sort_unstable();
    Ok(Graph::from_sorted_unique(n, edges))
}

impl FromStr for Graph {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_edge_list(s)
    }
}
