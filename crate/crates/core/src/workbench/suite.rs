//! Running checks over a corpus of graphs.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::checks::{CheckContext, CheckId, CheckStatus};
use crate::error::Result;
use crate::generators::{
    corpus_rng, enumerate_labeled_graphs, fixture, labeled_graph, random_almost_bipartite,
    random_general_with, AlmostBipartiteModel, FixtureName, ENUMERATION_BOUND,
};
use crate::graph::Graph;
use crate::oracle::OracleBounds;

/// Which graphs a suite runs over.
///
/// Textual forms: `exhaustive:N`, `random_almost_bipartite:COUNT:MAX_N`,
/// `random_almost_bipartite:COUNT:MIN_N:MAX_N`, `random_general:COUNT:MAX_N:P`
/// and `fixtures`.
#[derive(Debug, Clone, PartialEq)]
pub enum CorpusSpec {
    Exhaustive(usize),
    RandomAlmostBipartite { count: u64, min_n: usize, max_n: usize },
    RandomGeneral { count: u64, max_n: usize, p: f64 },
    Fixtures,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad corpus {spec:?}: {why}")]
pub struct CorpusError {
    pub spec: String,
    pub why: String,
}

fn fixture_list() -> Vec<FixtureName> {
    FixtureName::simple()
        .chain((2..=5).map(FixtureName::K2nMinusE))
        .chain((1..=10).map(FixtureName::OddCycle))
        .collect()
}

impl CorpusSpec {
    pub fn len(&self) -> u64 {
        match self {
            CorpusSpec::Exhaustive(n) => 1u64 << (n * n.saturating_sub(1) / 2),
            CorpusSpec::RandomAlmostBipartite { count, .. } | CorpusSpec::RandomGeneral { count, .. } => *count,
            CorpusSpec::Fixtures => fixture_list().len() as u64,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Graph number `index`; a pure function of `(self, seed, index)`.
    pub fn graph(&self, seed: u64, index: u64) -> Result<Graph> {
        match self {
            CorpusSpec::Exhaustive(n) => Ok(labeled_graph(*n, index)),
            CorpusSpec::RandomAlmostBipartite { min_n, max_n, .. } => {
                let mut rng = corpus_rng(seed, index);
                random_almost_bipartite(&AlmostBipartiteModel::sample(&mut rng, *min_n, *max_n)?)
            }
            CorpusSpec::RandomGeneral { max_n, p, .. } => {
                use rand::Rng;
                let mut rng = corpus_rng(seed, index);
                let n = rng.random_range(1..=*max_n);
                Ok(random_general_with(&mut rng, n, *p))
            }
            CorpusSpec::Fixtures => fixture(&fixture_list()[index as usize]),
        }
    }

    fn validate(&self) -> std::result::Result<(), String> {
        match self {
            CorpusSpec::Exhaustive(n) => enumerate_labeled_graphs(*n)
                .map(|_| ())
                .map_err(|_| format!("exhaustive corpora need N <= {ENUMERATION_BOUND}")),
            CorpusSpec::RandomAlmostBipartite { min_n, max_n, .. } => {
                if *max_n < 3 || min_n > max_n {
                    Err("need 3 <= MAX_N and MIN_N <= MAX_N".into())
                } else {
                    Ok(())
                }
            }
            CorpusSpec::RandomGeneral { max_n, p, .. } => {
                if *max_n == 0 || !(0.0..=1.0).contains(p) {
                    Err("need MAX_N >= 1 and 0 <= P <= 1".into())
                } else {
                    Ok(())
                }
            }
            CorpusSpec::Fixtures => Ok(()),
        }
    }
}

impl FromStr for CorpusSpec {
    type Err = CorpusError;

    fn from_str(s: &str) -> std::result::Result<Self, CorpusError> {
        let fail = |why: &str| CorpusError {
            spec: s.to_string(),
            why: why.to_string(),
        };
        let parts: Vec<&str> = s.trim().split(':').collect();
        let int = |t: &str| t.parse::<u64>().map_err(|_| fail("expected a non-negative integer"));
        let spec = match parts.as_slice() {
            ["exhaustive", n] => CorpusSpec::Exhaustive(int(n)? as usize),
            ["random_almost_bipartite", count, max_n] => CorpusSpec::RandomAlmostBipartite {
                count: int(count)?,
                min_n: 3,
                max_n: int(max_n)? as usize,
            },
            ["random_almost_bipartite", count, min_n, max_n] => CorpusSpec::RandomAlmostBipartite {
                count: int(count)?,
                min_n: int(min_n)? as usize,
                max_n: int(max_n)? as usize,
            },
            ["random_general", count, max_n, p] => CorpusSpec::RandomGeneral {
                count: int(count)?,
                max_n: int(max_n)? as usize,
                p: p.parse().map_err(|_| fail("expected a probability"))?,
            },
            ["fixtures"] => CorpusSpec::Fixtures,
            _ => return Err(fail("unknown corpus form")),
        };
        spec.validate().map_err(|why| fail(&why))?;
        Ok(spec)
    }
}

impl fmt::Display for CorpusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusSpec::Exhaustive(n) => write!(f, "exhaustive:{n}"),
            CorpusSpec::RandomAlmostBipartite { count, min_n, max_n } => {
                write!(f, "random_almost_bipartite:{count}:{min_n}:{max_n}")
            }
            CorpusSpec::RandomGeneral { count, max_n, p } => {
                write!(f, "random_general:{count}:{max_n}:{p}")
            }
            CorpusSpec::Fixtures => write!(f, "fixtures"),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CheckTally {
    pub pass: u64,
    pub fail: u64,
    pub inapplicable: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TallyRow {
    pub id: CheckId,
    #[serde(flatten)]
    pub tally: CheckTally,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteFailure {
    pub index: u64,
    pub check: CheckId,
    /// The offending graph in edge-list format.
    pub graph: String,
    pub detail: serde_json::Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub corpus: String,
    pub seed: u64,
    pub bounds: OracleBounds,
    pub graphs: u64,
    pub checks: Vec<TallyRow>,
    pub failures: Vec<SuiteFailure>,
    /// Graphs the corpus failed to produce (a generator error).
    pub generation_errors: Vec<String>,
    /// Wall-clock time; excluded from the serialized report so that runs
    /// with the same inputs produce identical output.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn total_failures(&self) -> u64 {
        self.checks.iter().map(|r| r.tally.fail).sum::<u64>() + self.generation_errors.len() as u64
    }

    pub fn tally(&self, id: CheckId) -> Option<CheckTally> {
        self.checks.iter().find(|r| r.id == id).map(|r| r.tally)
    }
}

/// At most this many failures are kept in a report; the tallies count all.
pub const MAX_RECORDED_FAILURES: usize = 100;

#[derive(Default)]
struct Acc {
    tallies: Vec<CheckTally>,
    failures: Vec<SuiteFailure>,
    errors: Vec<(u64, String)>,
}

impl Acc {
    fn merge(mut self, other: Acc) -> Acc {
        if self.tallies.is_empty() {
            self.tallies = other.tallies;
        } else {
            for (a, b) in self.tallies.iter_mut().zip(other.tallies) {
                a.pass += b.pass;
                a.fail += b.fail;
                a.inapplicable += b.inapplicable;
            }
        }
        self.failures.extend(other.failures);
        self.errors.extend(other.errors);
        self
    }
}

/// Runs `checks` on every graph of `corpus`.  Graphs are evaluated in
/// parallel on the current rayon pool; the report does not depend on the
/// number of threads.
pub fn verify_suite(
    corpus: &CorpusSpec,
    checks: &[CheckId],
    seed: u64,
    bounds: &OracleBounds,
) -> SuiteReport {
    let start = Instant::now();
    let total = corpus.len();
    let acc = (0..total)
        .into_par_iter()
        .fold(
            || Acc {
                tallies: vec![CheckTally::default(); checks.len()],
                ..Acc::default()
            },
            |mut acc, index| {
                let g = match corpus.graph(seed, index) {
                    Ok(g) => g,
                    Err(e) => {
                        acc.errors.push((index, e.to_string()));
                        return acc;
                    }
                };
                let ctx = CheckContext::new(&g, bounds);
                for (slot, &id) in checks.iter().enumerate() {
                    let r = ctx.run(id);
                    let t = &mut acc.tallies[slot];
                    match r.status() {
                        CheckStatus::Pass => t.pass += 1,
                        CheckStatus::Inapplicable => t.inapplicable += 1,
                        CheckStatus::Fail => {
                            t.fail += 1;
                            acc.failures.push(SuiteFailure {
                                index,
                                check: id,
                                graph: g.to_edge_list(),
                                detail: r.detail,
                            });
                        }
                    }
                }
                acc
            },
        )
        .reduce(Acc::default, Acc::merge);

    let mut failures = acc.failures;
    failures.sort_by(|a, b| (&a.graph, a.check, a.index).cmp(&(&b.graph, b.check, b.index)));
    failures.truncate(MAX_RECORDED_FAILURES);
    let mut errors = acc.errors;
    errors.sort();
    let tallies = if acc.tallies.is_empty() {
        vec![CheckTally::default(); checks.len()]
    } else {
        acc.tallies
    };
    SuiteReport {
        corpus: corpus.to_string(),
        seed,
        bounds: *bounds,
        graphs: total,
        checks: checks
            .iter()
            .zip(tallies)
            .map(|(&id, tally)| TallyRow { id, tally })
            .collect(),
        failures,
        generation_errors: errors
            .into_iter()
            .map(|(i, e)| format!("graph {i}: {e}"))
            .collect(),
        elapsed: start.elapsed(),
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "corpus {} seed {} graphs {}", self.corpus, self.seed, self.graphs)?;
        for row in &self.checks {
            let t = row.tally;
            writeln!(
                f,
                "{:<4} pass {:>8} fail {:>6} inapplicable {:>8}",
                row.id.to_string(),
                t.pass,
                t.fail,
                t.inapplicable
            )?;
        }
        for e in &self.generation_errors {
            writeln!(f, "generation error: {e}")?;
        }
        for fail in &self.failures {
            writeln!(f, "FAIL {} on graph {}: {}", fail.check, fail.index, fail.detail)?;
            for line in fail.graph.lines() {
                writeln!(f, "    {line}")?;
            }
        }
        write!(f, "total failures: {}", self.total_failures())
    }
}
