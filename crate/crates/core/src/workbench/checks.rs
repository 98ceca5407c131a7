//! Executable statements T1–T20.
//!
//! Every check computes its quantities through [`reference`] (exhaustive
//! search inside the oracle bounds, vertex branching above them) and the
//! double-cover value of `d`, so it can disagree with the fast paths.

use std::cell::OnceCell;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use super::reference;
use crate::critical::critical_difference;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::matching::{matching_from_into, HallOutcome};
use crate::oracle::{
    oracle_core_corona_ker, oracle_d_all_subsets, oracle_id, oracle_maximum_matchings,
    oracle_omega, OracleBounds,
};
use crate::structure::{classify, decompose_with_cycle, GraphClass, OddCycleDecomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CheckId(u8);

impl CheckId {
    pub const COUNT: u8 = 20;

    pub fn new(k: u8) -> Option<CheckId> {
        (1..=Self::COUNT).contains(&k).then_some(CheckId(k))
    }

    pub fn all() -> impl Iterator<Item = CheckId> {
        (1..=Self::COUNT).map(CheckId)
    }

    pub fn number(self) -> u8 {
        self.0
    }

    /// One-line statement of what the check asserts.
    pub fn statement(self) -> &'static str {
        match self.0 {
            1 => "n/2 < α + μ ≤ n",
            2 => "d(G) = id(G), and the double-cover value equals the subset sweep",
            3 => "ker ⊆ core, with equality for bipartite graphs",
            4 => "no α-critical edge meets N[core]",
            5 => "for every S ∈ Ω, S − core is matchable into corona − S",
            6 => "connected bipartite, n ≥ 2: α > n/2 iff |core| ≥ 2",
            7 => "KE: every maximum matching matches N(core) into core",
            8 => "KE: d = |core| − |N(core)| = α − μ",
            9 => "almost bipartite: some cycle edge e has μ(G − e) = μ(G)",
            10 => "almost bipartite: n − 1 ≤ α + μ ≤ n",
            11 => "almost bipartite: α + μ = n − 1 iff every cycle edge is α-critical",
            12 => "almost bipartite: KE iff some x ∈ N₁(C) lies in core(B_x); non-KE iff some S ∈ Ω misses N₁(C)",
            13 => "almost bipartite non-KE: the traces of Ω on each B_x are exactly Ω(B_x)",
            14 => "connected almost bipartite non-KE: core = ∪ core(B_x) and core misses N[C]",
            15 => "connected almost bipartite: μ ≤ α, N(core) matches into core, and some maximum matching does so",
            16 => "if N(core) matches into core then α − μ ≤ |core| − |N(core)|",
            17 => "connected almost bipartite: α − μ ≤ |core| − |N(core)| = d ≤ α − μ + 1",
            18 => "almost bipartite non-KE: d = α − μ = |core| − |N(core)|",
            19 => "unicyclic non-KE: d = α − μ",
            20 => "bipartite: v ∈ core iff some maximum matching leaves v unsaturated",
            _ => unreachable!("check ids are 1..=20"),
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", self.0)
    }
}

impl Serialize for CheckId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown check {0:?}; expected T1..T20")]
pub struct UnknownCheck(pub String);

impl FromStr for CheckId {
    type Err = UnknownCheck;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let t = s.trim();
        t.strip_prefix(['T', 't'])
            .and_then(|k| k.parse::<u8>().ok())
            .and_then(CheckId::new)
            .ok_or_else(|| UnknownCheck(s.to_string()))
    }
}

/// Parses `all` or a comma-separated list such as `T1,T9,t17`.
pub fn parse_check_list(s: &str) -> std::result::Result<Vec<CheckId>, UnknownCheck> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(CheckId::all().collect());
    }
    let mut ids = s
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(str::parse)
        .collect::<std::result::Result<Vec<CheckId>, _>>()?;
    ids.sort();
    ids.dedup();
    Ok(ids)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Inapplicable,
}

/// Outcome of one check on one graph.  An inapplicable check holds
/// vacuously; `detail` then carries the reason.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: CheckId,
    pub applicable: bool,
    pub holds: bool,
    pub detail: Value,
}

impl CheckResult {
    pub fn status(&self) -> CheckStatus {
        match (self.applicable, self.holds) {
            (false, _) => CheckStatus::Inapplicable,
            (true, true) => CheckStatus::Pass,
            (true, false) => CheckStatus::Fail,
        }
    }
}

enum Outcome {
    Inapplicable(&'static str),
    Verdict(bool, Value),
}

use Outcome::{Inapplicable, Verdict};

/// Lazily computed reference values shared by all checks on one graph.
pub struct CheckContext<'a> {
    g: &'a Graph,
    bounds: OracleBounds,
    class: GraphClass,
    alpha: OnceCell<Result<usize>>,
    mu: OnceCell<Result<usize>>,
    core: OnceCell<Result<VertexSet>>,
    corona: OnceCell<Result<VertexSet>>,
    d: OnceCell<i64>,
    decomposition: OnceCell<Option<Result<OddCycleDecomposition>>>,
    omega: OnceCell<Result<Vec<VertexSet>>>,
}

impl<'a> CheckContext<'a> {
    pub fn new(g: &'a Graph, bounds: &OracleBounds) -> Self {
        CheckContext {
            g,
            bounds: *bounds,
            class: classify(g),
            alpha: OnceCell::new(),
            mu: OnceCell::new(),
            core: OnceCell::new(),
            corona: OnceCell::new(),
            d: OnceCell::new(),
            decomposition: OnceCell::new(),
            omega: OnceCell::new(),
        }
    }

    pub fn graph(&self) -> &Graph {
        self.g
    }

    pub fn class(&self) -> &GraphClass {
        &self.class
    }

    pub fn alpha(&self) -> Result<usize> {
        self.alpha
            .get_or_init(|| reference::alpha(self.g, &self.bounds))
            .clone()
    }

    pub fn mu(&self) -> Result<usize> {
        self.mu
            .get_or_init(|| reference::mu(self.g, &self.bounds))
            .clone()
    }

    pub fn core(&self) -> Result<VertexSet> {
        self.core
            .get_or_init(|| reference::core(self.g, &self.bounds))
            .clone()
    }

    pub fn corona(&self) -> Result<VertexSet> {
        self.corona
            .get_or_init(|| reference::corona(self.g, &self.bounds))
            .clone()
    }

    pub fn d(&self) -> i64 {
        *self.d.get_or_init(|| critical_difference(self.g))
    }

    pub fn ke(&self) -> Result<bool> {
        Ok(self.alpha()? + self.mu()? == self.g.n())
    }

    /// `|core| − |N(core)|`.
    pub fn core_deficiency(&self) -> Result<i64> {
        Ok(self.g.difference(&self.core()?))
    }

    pub fn omega(&self) -> Result<Vec<VertexSet>> {
        self.omega
            .get_or_init(|| oracle_omega(self.g, &self.bounds))
            .clone()
    }

    /// The decomposition around the unique odd cycle, for almost bipartite
    /// graphs only.
    pub fn decomposition(&self) -> Option<Result<OddCycleDecomposition>> {
        self.decomposition
            .get_or_init(|| match &self.class {
                GraphClass::AlmostBipartite { cycle } => {
                    Some(decompose_with_cycle(self.g, cycle.clone()))
                }
                _ => None,
            })
            .clone()
    }

    pub fn run(&self, id: CheckId) -> CheckResult {
        let outcome = match id.0 {
            1 => self.t1(),
            2 => self.t2(),
            3 => self.t3(),
            4 => self.t4(),
            5 => self.t5(),
            6 => self.t6(),
            7 => self.t7(),
            8 => self.t8(),
            9 => self.t9(),
            10 => self.t10(),
            11 => self.t11(),
            12 => self.t12(),
            13 => self.t13(),
            14 => self.t14(),
            15 => self.t15(),
            16 => self.t16(),
            17 => self.t17(),
            18 => self.t18(),
            19 => self.t19(),
            20 => self.t20(),
            _ => unreachable!("check ids are 1..=20"),
        };
        let (applicable, holds, detail) = match outcome {
            Ok(Verdict(holds, v)) => (true, holds, v),
            Ok(Inapplicable(reason)) => (false, true, json!({ "reason": reason })),
            Err(e @ Error::InternalStructureViolation(_)) => {
                (true, false, json!({ "error": e.to_string() }))
            }
            Err(e) => (false, true, json!({ "reason": e.to_string() })),
        };
        CheckResult {
            id,
            applicable,
            holds,
            detail,
        }
    }

    fn almost_bipartite(&self) -> Result<Option<OddCycleDecomposition>> {
        self.decomposition().transpose()
    }

    fn connected_almost_bipartite(&self) -> Result<Option<OddCycleDecomposition>> {
        Ok(self.almost_bipartite()?.filter(|_| self.g.is_connected()))
    }

    fn t1(&self) -> Result<Outcome> {
        let n = self.g.n();
        if n == 0 {
            return Ok(Inapplicable("empty graph"));
        }
        let (a, m) = (self.alpha()?, self.mu()?);
        Ok(Verdict(
            n / 2 < a + m && a + m <= n,
            json!({ "n": n, "alpha": a, "mu": m }),
        ))
    }

    fn t2(&self) -> Result<Outcome> {
        if self.g.n() > self.bounds.subset_bound {
            return Ok(Inapplicable("n above the subset bound"));
        }
        let d = self.d();
        let sweep = oracle_d_all_subsets(self.g, &self.bounds)?;
        let id = oracle_id(self.g, &self.bounds)?;
        Ok(Verdict(
            d == sweep && d == id,
            json!({ "d": d, "d_subsets": sweep, "id": id }),
        ))
    }

    fn t3(&self) -> Result<Outcome> {
        if self.g.n() > self.bounds.omega_bound {
            return Ok(Inapplicable("n above the omega bound"));
        }
        let (core, _, ker) = oracle_core_corona_ker(self.g, &self.bounds)?;
        let bipartite = self.class.is_bipartite();
        Ok(Verdict(
            ker.is_subset(&core) && (!bipartite || ker == core),
            json!({ "ker": ker, "core": core, "bipartite": bipartite }),
        ))
    }

    fn t4(&self) -> Result<Outcome> {
        let a = self.alpha()?;
        let closed = self.g.closed_neighborhood(&self.core()?);
        let mut offending = Vec::new();
        for &(u, v) in self.g.edges() {
            let without = self.g.remove_edge((u, v))?;
            if reference::alpha(&without, &self.bounds)? > a
                && (closed.contains(u) || closed.contains(v))
            {
                offending.push((u, v));
            }
        }
        Ok(Verdict(
            offending.is_empty(),
            json!({ "closed_core_neighbourhood": closed, "offending_edges": offending }),
        ))
    }

    fn t5(&self) -> Result<Outcome> {
        if self.g.n() > self.bounds.omega_bound {
            return Ok(Inapplicable("n above the omega bound"));
        }
        let (core, corona) = (self.core()?, self.corona()?);
        for s in self.omega()? {
            let from = s.minus(&core);
            let into = corona.minus(&s);
            if let HallOutcome::Violated { witness } = matching_from_into(self.g, &from, &into)? {
                return Ok(Verdict(false, json!({ "set": s, "hall_witness": witness })));
            }
        }
        Ok(Verdict(true, json!({ "core": core, "corona": corona })))
    }

    fn t6(&self) -> Result<Outcome> {
        let n = self.g.n();
        if !self.class.is_bipartite() || !self.g.is_connected() || n < 2 {
            return Ok(Inapplicable("needs a connected bipartite graph on at least 2 vertices"));
        }
        let (a, core) = (self.alpha()?, self.core()?);
        Ok(Verdict(
            (2 * a > n) == (core.len() >= 2),
            json!({ "n": n, "alpha": a, "core_size": core.len() }),
        ))
    }

    fn t7(&self) -> Result<Outcome> {
        if !self.ke()? {
            return Ok(Inapplicable("not König–Egerváry"));
        }
        if self.g.n() > self.bounds.matching_bound {
            return Ok(Inapplicable("n above the matching bound"));
        }
        let core = self.core()?;
        let ncore = self.g.neighborhood(&core);
        for m in oracle_maximum_matchings(self.g, &self.bounds)? {
            if !m.matches_into(&ncore, &core) {
                return Ok(Verdict(false, json!({ "matching": m.edges(), "core": core })));
            }
        }
        Ok(Verdict(true, json!({ "core": core, "n_of_core": ncore })))
    }

    fn t8(&self) -> Result<Outcome> {
        if !self.ke()? {
            return Ok(Inapplicable("not König–Egerváry"));
        }
        self.deficiency_equalities()
    }

    /// `d = |core| − |N(core)| = α − μ`.
    fn deficiency_equalities(&self) -> Result<Outcome> {
        let d = self.d();
        let def = self.core_deficiency()?;
        let gap = self.alpha()? as i64 - self.mu()? as i64;
        Ok(Verdict(
            d == def && d == gap,
            json!({ "d": d, "core_deficiency": def, "alpha_minus_mu": gap }),
        ))
    }

    fn t9(&self) -> Result<Outcome> {
        let Some(dec) = self.almost_bipartite()? else {
            return Ok(Inapplicable("not almost bipartite"));
        };
        let mu = self.mu()?;
        for e in dec.cycle_edges() {
            if reference::mu(&self.g.remove_edge(e)?, &self.bounds)? == mu {
                return Ok(Verdict(true, json!({ "mu": mu, "edge": e })));
            }
        }
        Ok(Verdict(false, json!({ "mu": mu, "cycle": dec.cycle })))
    }

    fn t10(&self) -> Result<Outcome> {
        if !self.class.is_almost_bipartite() {
            return Ok(Inapplicable("not almost bipartite"));
        }
        let (n, sum) = (self.g.n(), self.alpha()? + self.mu()?);
        Ok(Verdict(
            n - 1 <= sum && sum <= n,
            json!({ "n": n, "alpha_plus_mu": sum }),
        ))
    }

    fn t11(&self) -> Result<Outcome> {
        let Some(dec) = self.almost_bipartite()? else {
            return Ok(Inapplicable("not almost bipartite"));
        };
        let a = self.alpha()?;
        let mut non_critical = Vec::new();
        for e in dec.cycle_edges() {
            if reference::alpha(&self.g.remove_edge(e)?, &self.bounds)? != a + 1 {
                non_critical.push(e);
            }
        }
        let deficient = a + self.mu()? + 1 == self.g.n();
        Ok(Verdict(
            deficient == non_critical.is_empty(),
            json!({ "alpha_plus_mu_is_n_minus_1": deficient, "non_critical_cycle_edges": non_critical }),
        ))
    }

    /// `core(B_x)` in the coordinates of `G`.
    fn piece_core(&self, piece: &VertexSet) -> Result<VertexSet> {
        let sub = self.g.induced(piece);
        Ok(sub.lift(&reference::core(&sub.graph, &self.bounds)?, self.g.n()))
    }

    fn t12(&self) -> Result<Outcome> {
        let Some(dec) = self.almost_bipartite()? else {
            return Ok(Inapplicable("not almost bipartite"));
        };
        let ke = self.ke()?;
        let mut witnesses = Vec::new();
        for a in &dec.attach {
            if self.piece_core(&a.piece)?.contains(a.x) {
                witnesses.push(a.x);
            }
        }
        let n1 = dec.attachment_vertices(self.g.n());
        let avoiding = if self.g.n() <= self.bounds.omega_bound {
            self.omega()?.iter().any(|s| s.is_disjoint(&n1))
        } else {
            reference::alpha(&self.g.remove_vertices(&n1).graph, &self.bounds)? == self.alpha()?
        };
        Ok(Verdict(
            ke == !witnesses.is_empty() && !ke == avoiding,
            json!({ "ke": ke, "core_witnesses": witnesses, "some_max_set_avoids_n1": avoiding }),
        ))
    }

    fn t13(&self) -> Result<Outcome> {
        let Some(dec) = self.almost_bipartite()? else {
            return Ok(Inapplicable("not almost bipartite"));
        };
        if self.ke()? {
            return Ok(Inapplicable("König–Egerváry"));
        }
        if self.g.n() > self.bounds.omega_bound {
            return Ok(Inapplicable("n above the omega bound"));
        }
        let omega = self.omega()?;
        for a in &dec.attach {
            let traces: BTreeSet<Vec<usize>> =
                omega.iter().map(|s| s.intersection(&a.piece).to_vec()).collect();
            let sub = self.g.induced(&a.piece);
            let local: BTreeSet<Vec<usize>> = oracle_omega(&sub.graph, &self.bounds)?
                .iter()
                .map(|s| sub.lift(s, self.g.n()).to_vec())
                .collect();
            if traces != local {
                return Ok(Verdict(
                    false,
                    json!({ "x": a.x, "traces": traces, "omega_of_piece": local }),
                ));
            }
        }
        Ok(Verdict(true, json!({ "pieces": dec.attach.len() })))
    }

    fn t14(&self) -> Result<Outcome> {
        let Some(dec) = self.connected_almost_bipartite()? else {
            return Ok(Inapplicable("not a connected almost bipartite graph"));
        };
        if self.ke()? {
            return Ok(Inapplicable("König–Egerváry"));
        }
        let core = self.core()?;
        let mut union = self.g.empty_set();
        for a in &dec.attach {
            union = union.union(&self.piece_core(&a.piece)?);
        }
        let closed_cycle = self.g.closed_neighborhood(&dec.cycle_set(self.g.n()));
        Ok(Verdict(
            core == union && core.is_disjoint(&closed_cycle),
            json!({ "core": core, "union_of_piece_cores": union }),
        ))
    }

    fn t15(&self) -> Result<Outcome> {
        if self.connected_almost_bipartite()?.is_none() {
            return Ok(Inapplicable("not a connected almost bipartite graph"));
        }
        let (a, mu, core) = (self.alpha()?, self.mu()?, self.core()?);
        let ncore = self.g.neighborhood(&core);
        let hall = matching_from_into(self.g, &ncore, &core)?;
        // Given a matching of N(core) into core, some maximum matching
        // extends one exactly when |N(core)| + μ(G − N[core]) = μ: the core
        // vertices left over are isolated once N(core) is gone.
        let extends = if self.g.n() <= self.bounds.matching_bound {
            oracle_maximum_matchings(self.g, &self.bounds)?
                .iter()
                .any(|m| m.matches_into(&ncore, &core))
        } else {
            let rest = self.g.remove_vertices(&core.union(&ncore));
            ncore.len() + reference::mu(&rest.graph, &self.bounds)? == mu
        };
        Ok(Verdict(
            mu <= a && hall.exists() && extends,
            json!({
                "alpha": a,
                "mu": mu,
                "n_of_core_matchable": hall.exists(),
                "some_maximum_matching_does": extends,
            }),
        ))
    }

    fn t16(&self) -> Result<Outcome> {
        let core = self.core()?;
        let ncore = self.g.neighborhood(&core);
        if !matching_from_into(self.g, &ncore, &core)?.exists() {
            return Ok(Inapplicable("N(core) is not matchable into core"));
        }
        let gap = self.alpha()? as i64 - self.mu()? as i64;
        let def = self.g.difference(&core);
        Ok(Verdict(gap <= def, json!({ "alpha_minus_mu": gap, "core_deficiency": def })))
    }

    fn t17(&self) -> Result<Outcome> {
        if self.connected_almost_bipartite()?.is_none() {
            return Ok(Inapplicable("not a connected almost bipartite graph"));
        }
        let gap = self.alpha()? as i64 - self.mu()? as i64;
        let (def, d) = (self.core_deficiency()?, self.d());
        Ok(Verdict(
            gap <= def && def == d && d <= gap + 1,
            json!({ "alpha_minus_mu": gap, "core_deficiency": def, "d": d }),
        ))
    }

    fn t18(&self) -> Result<Outcome> {
        if !self.class.is_almost_bipartite() {
            return Ok(Inapplicable("not almost bipartite"));
        }
        if self.ke()? {
            return Ok(Inapplicable("König–Egerváry"));
        }
        self.deficiency_equalities()
    }

    fn t19(&self) -> Result<Outcome> {
        let unicyclic = self.g.is_connected() && self.g.m() == self.g.n() && self.g.n() > 0;
        if !unicyclic {
            return Ok(Inapplicable("not unicyclic"));
        }
        if self.ke()? {
            return Ok(Inapplicable("König–Egerváry"));
        }
        let gap = self.alpha()? as i64 - self.mu()? as i64;
        let d = self.d();
        Ok(Verdict(d == gap, json!({ "d": d, "alpha_minus_mu": gap })))
    }

    fn t20(&self) -> Result<Outcome> {
        if !self.class.is_bipartite() {
            return Ok(Inapplicable("not bipartite"));
        }
        let core = self.core()?;
        let unsaturable: VertexSet = if self.g.n() <= self.bounds.matching_bound {
            let all = oracle_maximum_matchings(self.g, &self.bounds)?;
            self.g.set((0..self.g.n()).filter(|&v| all.iter().any(|m| !m.saturates(v))))
        } else {
            let mu = self.mu()?;
            let mut out = self.g.empty_set();
            for v in 0..self.g.n() {
                if reference::mu(&self.g.remove_vertex(v).graph, &self.bounds)? == mu {
                    out.insert(v);
                }
            }
            out
        };
        Ok(Verdict(
            core == unsaturable,
            json!({ "core": core, "unsaturable": unsaturable }),
        ))
    }
}

/// Runs one check on `g`.
pub fn check_theorem(id: CheckId, g: &Graph, bounds: &OracleBounds) -> CheckResult {
    CheckContext::new(g, bounds).run(id)
}

/// Runs several checks on `g`, sharing the reference values.
pub fn check_all(ids: &[CheckId], g: &Graph, bounds: &OracleBounds) -> Vec<CheckResult> {
    let ctx = CheckContext::new(g, bounds);
    ids.iter().map(|&id| ctx.run(id)).collect()
}
