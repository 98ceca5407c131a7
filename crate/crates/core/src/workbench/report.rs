//! Full invariant report for one graph.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::critical::{critical_difference, find_critical_independent_set, ker};
use crate::graph::{Graph, VertexSet};
use crate::independence::{core, corona, independence_number, is_konig_egervary};
use crate::matching::maximum_matching_with_class;
use crate::oracle::{oracle_id, OracleBounds};
use crate::structure::{classify, decompose_with_cycle, GraphClass, OddCycleDecomposition};

pub const REPORT_VERSION: u32 = 1;

/// A sanity relation between reported values; `holds` is `None` when the
/// relation does not apply or its inputs are unavailable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConsistencyFlag {
    pub name: &'static str,
    pub holds: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub oddcore_report: u32,
    pub n: usize,
    pub m: usize,
    pub class: &'static str,
    pub components: usize,
    pub alpha: Option<usize>,
    pub mu: Option<usize>,
    pub alpha_plus_mu: Option<usize>,
    pub ke: Option<bool>,
    pub core: Option<VertexSet>,
    pub corona: Option<VertexSet>,
    pub ker: Option<VertexSet>,
    pub n_of_core: Option<VertexSet>,
    pub d: i64,
    pub id: Option<i64>,
    pub core_deficiency: Option<i64>,
    pub odd_cycle: Option<Vec<usize>>,
    pub decomposition: Option<OddCycleDecomposition>,
    /// How each value was obtained.
    pub provenance: BTreeMap<&'static str, &'static str>,
    /// Values that could not be computed, with the reason.
    pub unavailable: BTreeMap<&'static str, String>,
    pub consistency: Vec<ConsistencyFlag>,
}

impl AnalysisReport {
    /// No consistency relation is violated.
    pub fn consistent(&self) -> bool {
        self.consistency.iter().all(|f| f.holds != Some(false))
    }
}

fn keep<T>(
    unavailable: &mut BTreeMap<&'static str, String>,
    name: &'static str,
    r: crate::error::Result<T>,
) -> Option<T> {
    r.map_err(|e| unavailable.insert(name, e.to_string())).ok()
}

/// Computes every invariant the library offers for `g`.
pub fn analyze(g: &Graph, bounds: &OracleBounds) -> AnalysisReport {
    let n = g.n();
    let class = classify(g);
    let mut provenance = BTreeMap::new();
    let mut unavailable = BTreeMap::new();

    let parts: Vec<GraphClass> = g
        .components()
        .iter()
        .map(|c| classify(&g.induced(c).graph))
        .collect();
    let exhaustive = parts.iter().any(|c| matches!(c, GraphClass::Other { .. }));
    let structural = if exhaustive { "exhaustive_search" } else { "structure" };

    let alpha = keep(&mut unavailable, "alpha", independence_number(g, bounds));
    let mu = keep(&mut unavailable, "mu", maximum_matching_with_class(g, &class).map(|m| m.len()));
    let ke = keep(&mut unavailable, "ke", is_konig_egervary(g, bounds));
    let core_set = keep(&mut unavailable, "core", core(g, bounds));
    let corona_set = keep(&mut unavailable, "corona", corona(g, bounds));
    let ker_set = keep(&mut unavailable, "ker", ker(g, bounds));
    for key in ["alpha", "ke", "core", "corona"] {
        provenance.insert(key, structural);
    }
    provenance.insert("mu", "matching");
    provenance.insert("ker", "enumeration");

    let d = critical_difference(g);
    provenance.insert("d", "double_cover");
    let id = if n <= bounds.subset_bound {
        provenance.insert("id", "exhaustive_search");
        keep(&mut unavailable, "id", oracle_id(g, bounds))
    } else {
        provenance.insert("id", "witness");
        keep(&mut unavailable, "id", find_critical_independent_set(g, bounds).map(|s| g.difference(&s)))
    };

    let decomposition = match &class {
        GraphClass::AlmostBipartite { cycle } => {
            keep(&mut unavailable, "decomposition", decompose_with_cycle(g, cycle.clone()))
        }
        _ => None,
    };
    let n_of_core = core_set.as_ref().map(|c| g.neighborhood(c));
    let core_deficiency = core_set.as_ref().map(|c| g.difference(c));
    let alpha_plus_mu = alpha.zip(mu).map(|(a, m)| a + m);
    let gap = alpha.zip(mu).map(|(a, m)| a as i64 - m as i64);

    let almost = class.is_almost_bipartite();
    let consistency = vec![
        ConsistencyFlag {
            name: "alpha_plus_mu_bounds",
            holds: alpha_plus_mu.filter(|_| n > 0).map(|s| n / 2 < s && s <= n),
        },
        ConsistencyFlag {
            name: "ke_matches_sum",
            holds: ke.zip(alpha_plus_mu).map(|(k, s)| k == (s == n)),
        },
        ConsistencyFlag {
            name: "almost_bipartite_sum",
            holds: alpha_plus_mu.filter(|_| almost).map(|s| s + 1 >= n && s <= n),
        },
        ConsistencyFlag {
            name: "deficiency_identity",
            holds: (ke == Some(true) || (almost && ke == Some(false)))
                .then(|| gap.zip(core_deficiency).map(|(g, c)| d == g && d == c))
                .flatten(),
        },
        ConsistencyFlag {
            name: "d_equals_id",
            holds: id.map(|i| i == d),
        },
        ConsistencyFlag {
            name: "lower_bounds",
            holds: gap
                .zip(core_deficiency)
                .map(|(g, c)| g.max(0) <= d && c <= d),
        },
        ConsistencyFlag {
            name: "ker_in_core",
            holds: ker_set
                .as_ref()
                .zip(core_set.as_ref())
                .map(|(k, c)| k.is_subset(c)),
        },
    ];

    AnalysisReport {
        oddcore_report: REPORT_VERSION,
        n,
        m: g.m(),
        class: class.tag(),
        components: parts.len(),
        alpha,
        mu,
        alpha_plus_mu,
        ke,
        core: core_set,
        corona: corona_set,
        ker: ker_set,
        n_of_core,
        d,
        id,
        core_deficiency,
        odd_cycle: class.odd_cycle().map(<[usize]>::to_vec),
        decomposition,
        provenance,
        unavailable,
        consistency,
    }
}

fn opt<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "unavailable".to_string(), T::to_string)
}

fn set(v: &Option<VertexSet>) -> String {
    v.as_ref()
        .map_or_else(|| "unavailable".to_string(), |s| format!("{:?}", s.to_vec()))
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n: {}", self.n)?;
        writeln!(f, "m: {}", self.m)?;
        writeln!(f, "class: {}", self.class)?;
        writeln!(f, "components: {}", self.components)?;
        writeln!(f, "alpha: {}", opt(&self.alpha))?;
        writeln!(f, "mu: {}", opt(&self.mu))?;
        writeln!(f, "alpha+mu: {}", opt(&self.alpha_plus_mu))?;
        writeln!(f, "ke: {}", opt(&self.ke))?;
        writeln!(f, "core: {}", set(&self.core))?;
        writeln!(f, "N(core): {}", set(&self.n_of_core))?;
        writeln!(f, "corona: {}", set(&self.corona))?;
        writeln!(f, "ker: {}", set(&self.ker))?;
        writeln!(f, "d: {}", self.d)?;
        writeln!(f, "id: {}", opt(&self.id))?;
        writeln!(f, "core deficiency: {}", opt(&self.core_deficiency))?;
        if let Some(c) = &self.odd_cycle {
            writeln!(f, "odd cycle: {c:?}")?;
        }
        if let Some(dec) = &self.decomposition {
            for a in &dec.attach {
                writeln!(f, "piece at x={} (y={}): {:?}", a.x, a.y, a.piece.to_vec())?;
            }
        }
        for (k, why) in &self.unavailable {
            writeln!(f, "unavailable {k}: {why}")?;
        }
        let broken: Vec<&str> = self
            .consistency
            .iter()
            .filter(|c| c.holds == Some(false))
            .map(|c| c.name)
            .collect();
        if broken.is_empty() {
            write!(f, "consistency: ok")
        } else {
            write!(f, "consistency: VIOLATED {}", broken.join(", "))
        }
    }
}
