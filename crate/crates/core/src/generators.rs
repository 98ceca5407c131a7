//! Named fixtures, seeded random families and exhaustive enumeration.
//!
//! Random graphs use ChaCha8 streams: one seed per corpus, one stream per
//! graph index, so a corpus is the same whatever order or thread its
//! members are generated on.
//!
//! Fixture labellings:
//!
//! | fixture | vertex order |
//! |---------|--------------|
//! | `fig1`  | a u c v (bottom row, then) 4 5 6, b, then the upper row 8 9 10 |
//! | `fig2`  | u v c x w y p q a b d t r s |
//!
//! `fig1` has the triangle `v`–8–4 and the 4-cycle 5–9–10–6; `fig2` has the
//! 5-cycle `x w y t d` and the 4-cycle `p q s r`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FixtureName {
    K1,
    K2,
    K3,
    P3,
    C4,
    C5,
    Star3,
    Paw,
    TriP2,
    Fig1,
    Fig2,
    /// `K_{2n}` minus the edge `{0, 1}`.
    K2nMinusE(usize),
    /// `C_{2k+1}`.
    OddCycle(usize),
}

const SIMPLE: [(&str, FixtureName); 11] = [
    ("k1", FixtureName::K1),
    ("k2", FixtureName::K2),
    ("k3", FixtureName::K3),
    ("p3", FixtureName::P3),
    ("c4", FixtureName::C4),
    ("c5", FixtureName::C5),
    ("star3", FixtureName::Star3),
    ("paw", FixtureName::Paw),
    ("tri_p2", FixtureName::TriP2),
    ("fig1", FixtureName::Fig1),
    ("fig2", FixtureName::Fig2),
];

impl FixtureName {
    /// Every parameterless fixture.
    pub fn simple() -> impl Iterator<Item = FixtureName> {
        SIMPLE.iter().map(|&(_, f)| f)
    }

    /// Vertex labels for fixtures drawn with named vertices.
    pub fn labels(&self) -> Option<&'static [&'static str]> {
        match self {
            FixtureName::Fig1 => Some(&["a", "u", "c", "v", "4", "5", "6", "b", "8", "9", "10"]),
            FixtureName::Fig2 => Some(&[
                "u", "v", "c", "x", "w", "y", "p", "q", "a", "b", "d", "t", "r", "s",
            ]),
            _ => None,
        }
    }
}

impl fmt::Display for FixtureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureName::K2nMinusE(n) => write!(f, "k2n_minus_e({n})"),
            FixtureName::OddCycle(k) => write!(f, "odd_cycle({k})"),
            other => {
                let name = SIMPLE.iter().find(|(_, x)| x == other).unwrap().0;
                f.write_str(name)
            }
        }
    }
}

impl FromStr for FixtureName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(&(_, f)) = SIMPLE.iter().find(|(name, _)| *name == s) {
            return Ok(f);
        }
        let unknown = || Error::UnknownFixture(s.to_string());
        let (head, arg) = s
            .strip_suffix(')')
            .and_then(|t| t.split_once('('))
            .ok_or_else(unknown)?;
        let arg: usize = arg.trim().parse().map_err(|_| unknown())?;
        match head {
            "k2n_minus_e" => Ok(FixtureName::K2nMinusE(arg)),
            "odd_cycle" => Ok(FixtureName::OddCycle(arg)),
            _ => Err(unknown()),
        }
    }
}

fn cycle(n: usize) -> Vec<Edge> {
    (0..n).map(|i| edge(i, (i + 1) % n)).collect()
}

/// The documented graph behind a fixture name.
pub fn fixture(name: &FixtureName) -> Result<Graph> {
    let (n, edges): (usize, Vec<Edge>) = match *name {
        FixtureName::K1 => (1, vec![]),
        FixtureName::K2 => (2, vec![(0, 1)]),
        FixtureName::K3 => (3, cycle(3)),
        FixtureName::P3 => (3, vec![(0, 1), (1, 2)]),
        FixtureName::C4 => (4, cycle(4)),
        FixtureName::C5 => (5, cycle(5)),
        FixtureName::Star3 => (4, vec![(0, 1), (0, 2), (0, 3)]),
        FixtureName::Paw => (4, vec![(0, 1), (1, 2), (0, 2), (0, 3)]),
        FixtureName::TriP2 => (5, vec![(0, 1), (1, 2), (0, 2), (0, 3), (3, 4)]),
        FixtureName::Fig1 => (
            11,
            vec![
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (1, 7),
                (3, 8),
                (4, 8),
                (5, 9),
                (9, 10),
                (6, 10),
            ],
        ),
        FixtureName::Fig2 => (
            14,
            vec![
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 7),
                (2, 8),
                (2, 9),
                (3, 10),
                (10, 11),
                (5, 11),
                (6, 12),
                (12, 13),
                (7, 13),
            ],
        ),
        FixtureName::K2nMinusE(half) => {
            if half == 0 {
                return Err(Error::InvalidModel("k2n_minus_e needs n >= 1".into()));
            }
            let n = 2 * half;
            let edges = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|&e| e != (0, 1))
                .collect();
            (n, edges)
        }
        FixtureName::OddCycle(k) => {
            if k == 0 {
                return Err(Error::InvalidModel("odd_cycle needs k >= 1".into()));
            }
            (2 * k + 1, cycle(2 * k + 1))
        }
    };
    Ok(Graph::from_edges(n, edges)?)
}

/// Generator stream `index` of corpus `seed`.
pub fn corpus_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Parameters of a random almost bipartite graph: an odd cycle, bipartite
/// pieces each attached to it by one edge, and detached bipartite components.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlmostBipartiteModel {
    pub cycle_len: usize,
    pub pieces: usize,
    /// Inclusive range of piece (and detached component) orders.
    pub piece_size: (usize, usize),
    /// Probability of each extra part-respecting edge inside a piece.
    pub cross_edge_prob: f64,
    pub extra_components: usize,
    pub seed: u64,
    /// Shuffle vertex labels after construction.
    pub relabel: bool,
}

impl Default for AlmostBipartiteModel {
    fn default() -> Self {
        AlmostBipartiteModel {
            cycle_len: 5,
            pieces: 3,
            piece_size: (1, 5),
            cross_edge_prob: 0.3,
            extra_components: 0,
            seed: 0,
            relabel: true,
        }
    }
}

impl AlmostBipartiteModel {
    fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidModel(msg.to_string()));
        if self.cycle_len < 3 || self.cycle_len.is_multiple_of(2) {
            return bad("cycle_len must be odd and at least 3");
        }
        if self.piece_size.0 == 0 || self.piece_size.0 > self.piece_size.1 {
            return bad("piece_size must be a non-empty range of positive orders");
        }
        if !(0.0..=1.0).contains(&self.cross_edge_prob) {
            return bad("cross_edge_prob must lie in [0, 1]");
        }
        Ok(())
    }

    /// Samples a model whose graphs have between roughly `min_n` and exactly
    /// at most `max_n` vertices.
    pub fn sample(rng: &mut impl Rng, min_n: usize, max_n: usize) -> Result<Self> {
        if max_n < 3 || min_n > max_n {
            return Err(Error::InvalidModel(format!(
                "need 3 <= max_n and min_n <= max_n, got {min_n}..{max_n}"
            )));
        }
        let longest = max_n.min(9);
        let cycle_len = 3 + 2 * rng.random_range(0..=(longest - 3) / 2);
        let budget = max_n - cycle_len;
        let allow_bare = min_n <= cycle_len && rng.random_range(0..8) == 0;
        let total = if budget == 0 || allow_bare {
            0
        } else {
            rng.random_range(1..=budget.min(6))
        };
        let (lo, hi) = if total == 0 {
            (1, 1)
        } else {
            let hi = budget / total;
            let lo = min_n.saturating_sub(cycle_len).div_ceil(total).clamp(1, hi);
            (lo, hi)
        };
        let extra_components = rng.random_range(0..=total / 3);
        Ok(AlmostBipartiteModel {
            cycle_len,
            pieces: total - extra_components,
            piece_size: (lo, hi),
            cross_edge_prob: rng.random_range(0.0..0.5),
            extra_components,
            seed: rng.random(),
            relabel: true,
        })
    }
}

/// Edges of a random connected bipartite graph on `0..s`: a random
/// recursive tree, two-coloured by depth, plus each further edge between
/// the colour classes with probability `prob`.
fn connected_bipartite_edges(rng: &mut impl Rng, s: usize, prob: f64) -> Vec<Edge> {
    let mut side = vec![false; s];
    let mut edges = Vec::new();
    for v in 1..s {
        let p = rng.random_range(0..v);
        side[v] = !side[p];
        edges.push((p, v));
    }
    for u in 0..s {
        for v in u + 1..s {
            if side[u] != side[v] && !edges.contains(&(u, v)) && rng.random_bool(prob) {
                edges.push((u, v));
            }
        }
    }
    edges
}

pub fn random_almost_bipartite(model: &AlmostBipartiteModel) -> Result<Graph> {
    model.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(model.seed);
    let len = model.cycle_len;
    let mut edges = cycle(len);
    let mut next = len;
    for k in 0..model.pieces + model.extra_components {
        let s = rng.random_range(model.piece_size.0..=model.piece_size.1);
        edges.extend(
            connected_bipartite_edges(&mut rng, s, model.cross_edge_prob)
                .into_iter()
                .map(|(u, v)| (u + next, v + next)),
        );
        if k < model.pieces {
            let x = next + rng.random_range(0..s);
            let y = rng.random_range(0..len);
            edges.push(edge(x, y));
        }
        next += s;
    }
    let g = Graph::from_edges(next, edges)?;
    if model.relabel {
        let mut perm: Vec<usize> = (0..next).collect();
        perm.shuffle(&mut rng);
        Ok(g.relabel(&perm))
    } else {
        Ok(g)
    }
}

/// Random bipartite graph with left part `0..nl` and right part
/// `nl..nl+nr`.  With `connected`, a random spanning tree respecting the
/// parts is laid down first.
pub fn random_bipartite(nl: usize, nr: usize, edge_prob: f64, connected: bool, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(Error::InvalidModel("edge_prob must lie in [0, 1]".into()));
    }
    if connected && (nl == 0 || nr == 0) && nl + nr > 1 {
        return Err(Error::InvalidModel("a connected bipartite graph needs both parts".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = nl + nr;
    let mut edges: Vec<Edge> = Vec::new();
    if connected && nl > 0 && nr > 0 {
        let mut placed_left = vec![0];
        let mut placed_right = vec![nl];
        edges.push((0, nl));
        let mut rest: Vec<usize> = (1..nl).chain(nl + 1..n).collect();
        rest.shuffle(&mut rng);
        for v in rest {
            if v < nl {
                let w = placed_right[rng.random_range(0..placed_right.len())];
                edges.push(edge(v, w));
                placed_left.push(v);
            } else {
                let w = placed_left[rng.random_range(0..placed_left.len())];
                edges.push(edge(v, w));
                placed_right.push(v);
            }
        }
    }
    for u in 0..nl {
        for v in nl..n {
            if !edges.contains(&(u, v)) && rng.random_bool(edge_prob) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edges(n, edges)?)
}

/// Erdős–Rényi `G(n, p)`; `p` is clamped to `[0, 1]`.
pub fn random_general(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_general_with(&mut rng, n, p)
}

pub fn random_general_with(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let p = p.clamp(0.0, 1.0);
    let edges: Vec<Edge> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.random_bool(p))
        .collect();
    Graph::from_edges(n, edges).expect("pairs are distinct")
}

/// Largest order accepted by [`enumerate_labeled_graphs`].
pub const ENUMERATION_BOUND: usize = 7;

/// Unordered pairs of `0..n` in lexicographic order; bit `k` of an edge
/// mask refers to pair `k`.
pub fn vertex_pairs(n: usize) -> Vec<Edge> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// The labelled graph on `n` vertices whose edges are the set bits of `mask`.
pub fn labeled_graph(n: usize, mask: u64) -> Graph {
    let edges = vertex_pairs(n)
        .into_iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, e)| e);
    Graph::from_edges(n, edges).expect("pairs are distinct")
}

/// Every labelled graph on `n` vertices, in ascending edge-mask order.
pub struct LabeledGraphs {
    n: usize,
    next: u64,
    end: u64,
}

impl LabeledGraphs {
    pub fn total(&self) -> u64 {
        self.end
    }
}

impl Iterator for LabeledGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.next == self.end {
            return None;
        }
        let g = labeled_graph(self.n, self.next);
        self.next += 1;
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

pub fn enumerate_labeled_graphs(n: usize) -> Result<LabeledGraphs> {
    if n > ENUMERATION_BOUND {
        return Err(Error::TooLarge {
            what: "enumerate_labeled_graphs",
            n,
            bound: ENUMERATION_BOUND,
        });
    }
    Ok(LabeledGraphs {
        n,
        next: 0,
        end: 1u64 << (n * n.saturating_sub(1) / 2),
    })
}
