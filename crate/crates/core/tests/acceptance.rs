//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.  Set `ODDCORE_ACCEPTANCE_N7=1` to add the exhaustive run over all
//! labelled graphs on 7 vertices.

use std::process::Command;
use std::time::{Duration, Instant};

use oddcore::critical::critical_difference;
use oddcore::generators::{fixture, FixtureName};
use oddcore::independence::{core, corona, independence_number};
use oddcore::matching::maximum_matching;
use oddcore::oracle::{
    oracle_alpha, oracle_core_corona_ker, oracle_d_all_subsets, oracle_id, oracle_maximum_matchings,
    oracle_mu,
};
use oddcore::workbench::{analyze, verify_suite, AnalysisReport, CheckId, CorpusSpec, SuiteReport};
use oddcore::{Graph, OracleBounds};

const FIXTURE_BUDGET: Duration = Duration::from_secs(1);
const EXHAUSTIVE_BUDGET: Duration = Duration::from_secs(300);
const SCALE_BUDGET: Duration = Duration::from_secs(60);
/// Orders accepted as "n ≈ 200" for the scale corpus.
const SCALE_N: (usize, usize) = (170, 210);
const SEED: u64 = 20_240_601;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    summary: String,
    problems: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            ok: true,
            summary: String::new(),
            problems: Vec::new(),
        }
    }

    fn expect(&mut self, cond: bool, what: impl Into<String>) {
        if !cond {
            self.ok = false;
            self.problems.push(what.into());
        }
    }
}

fn load(name: &str) -> Graph {
    fixture(&name.parse::<FixtureName>().unwrap()).unwrap()
}

fn set(r: &Option<oddcore::VertexSet>) -> Vec<usize> {
    r.as_ref().map(|s| s.to_vec()).unwrap_or_default()
}

fn within(out: &mut Outcome, elapsed: Duration, budget: Duration) {
    out.expect(
        elapsed < budget,
        format!("took {:.3}s, budget {:.0}s", elapsed.as_secs_f64(), budget.as_secs_f64()),
    );
}

fn c1_fig2() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    let g = load("fig2");
    let r = analyze(&g, &OracleBounds::default());
    let elapsed = start.elapsed();
    out.expect(r.alpha == Some(7), format!("alpha {:?}", r.alpha));
    out.expect(r.mu == Some(6), format!("mu {:?}", r.mu));
    out.expect(r.ke == Some(false), "expected non-KE");
    out.expect(set(&r.core) == [8, 9], format!("core {:?}", set(&r.core)));
    out.expect(set(&r.n_of_core) == [2], format!("N(core) {:?}", set(&r.n_of_core)));
    out.expect(r.d == 1 && r.id == Some(1), format!("d {} id {:?}", r.d, r.id));
    out.expect(r.alpha_plus_mu == Some(13) && g.n() == 14, "alpha+mu != n-1 = 13");
    within(&mut out, elapsed, FIXTURE_BUDGET);
    if !out.ok {
        out.problems.push("fixture fig2 UNVERIFIED".into());
    }
    out.summary = format!(
        "fig2: alpha=7 mu=6 non-KE core={{a,b}} N(core)={{c}} d=id=1 ({:.3}s < 1s)",
        elapsed.as_secs_f64()
    );
    out
}

fn c2_fig1() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    let g = load("fig1");
    let bounds = OracleBounds::default();
    let r = analyze(&g, &bounds);
    let matchings = oracle_maximum_matchings(&g, &bounds).unwrap();
    let elapsed = start.elapsed();
    out.expect(r.alpha == Some(6), format!("alpha {:?}", r.alpha));
    out.expect(r.mu == Some(5), format!("mu {:?}", r.mu));
    out.expect(r.ke == Some(true), "expected KE");
    out.expect(set(&r.core) == [0, 2, 7], format!("core {:?}", set(&r.core)));
    out.expect(r.d == 1 && r.core_deficiency == Some(1), format!("d {} core deficiency {:?}", r.d, r.core_deficiency));
    // c = 2
    let missing = matchings.iter().filter(|m| !m.saturates(2)).count();
    out.expect(!matchings.is_empty() && missing == 0, format!("{missing} maximum matchings miss c"));
    within(&mut out, elapsed, FIXTURE_BUDGET);
    if !out.ok {
        out.problems.push("fixture fig1 UNVERIFIED".into());
    }
    out.summary = format!(
        "fig1: alpha=6 mu=5 KE core={{a,b,c}} d=1=|core|-|N(core)|, all {} maximum matchings saturate c ({:.3}s < 1s)",
        matchings.len(),
        elapsed.as_secs_f64()
    );
    out
}

fn c3_complete_minus_edge() -> Outcome {
    let mut out = Outcome::new();
    for n in 3..=5usize {
        let r: AnalysisReport = analyze(&fixture(&FixtureName::K2nMinusE(n)).unwrap(), &OracleBounds::default());
        let want_def = 2 - (2 * n as i64 - 2);
        out.expect(r.d == 0, format!("n={n}: d {}", r.d));
        out.expect(r.alpha == Some(2), format!("n={n}: alpha {:?}", r.alpha));
        out.expect(r.mu == Some(n), format!("n={n}: mu {:?}", r.mu));
        out.expect(r.core_deficiency == Some(want_def), format!("n={n}: core deficiency {:?}", r.core_deficiency));
    }
    out.summary = "K_2n - e, n=3..5: d=0, alpha=2, mu=n, |core|-|N(core)|=2-(2n-2)".into();
    out
}

fn c4_odd_cycles() -> Outcome {
    let mut out = Outcome::new();
    for k in 1..=10usize {
        let g = fixture(&FixtureName::OddCycle(k)).unwrap();
        let r = analyze(&g, &OracleBounds::default());
        out.expect(r.alpha == Some(k) && r.mu == Some(k), format!("k={k}: alpha {:?} mu {:?}", r.alpha, r.mu));
        out.expect(r.alpha_plus_mu == Some(g.n() - 1), format!("k={k}: alpha+mu"));
        out.expect(r.ke == Some(false), format!("k={k}: KE"));
        out.expect(r.core.as_ref().is_some_and(|c| c.is_empty()), format!("k={k}: core {:?}", set(&r.core)));
        out.expect(r.d == 0, format!("k={k}: d {}", r.d));
    }
    out.summary = "C_(2k+1), k=1..10: alpha=mu=k, alpha+mu=n-1, non-KE, core empty, d=0".into();
    out
}

fn suite_outcome(report: &SuiteReport, budget: Duration, label: &str) -> Outcome {
    let mut out = Outcome::new();
    out.expect(report.total_failures() == 0, format!("{} failures", report.total_failures()));
    for f in report.failures.iter().take(5) {
        out.problems.push(format!("{} on\n{}{}", f.check, f.graph, f.detail));
    }
    within(&mut out, report.elapsed, budget);
    let applicable: u64 = report.checks.iter().map(|r| r.tally.pass + r.tally.fail).sum();
    let never: Vec<String> = report
        .checks
        .iter()
        .filter(|r| r.tally.pass + r.tally.fail == 0)
        .map(|r| r.id.to_string())
        .collect();
    out.expect(never.is_empty(), format!("never applicable: {}", never.join(",")));
    out.summary = format!(
        "{label}: {} graphs, {} applicable check runs, 0 failures ({:.1}s < {:.0}s)",
        report.graphs,
        applicable,
        report.elapsed.as_secs_f64(),
        budget.as_secs_f64()
    );
    out
}

fn c5_exhaustive(n: usize) -> Outcome {
    let checks: Vec<CheckId> = CheckId::all().collect();
    let report = verify_suite(&CorpusSpec::Exhaustive(n), &checks, SEED, &OracleBounds::default());
    let mut out = suite_outcome(&report, EXHAUSTIVE_BUDGET, &format!("exhaustive n={n}, T1-T20"));
    out.expect(report.graphs == 1 << (n * (n - 1) / 2), "wrong graph count");
    out
}

fn c6_oracle_equivalence() -> Outcome {
    let mut out = Outcome::new();
    let bounds = OracleBounds::default();
    let corpus: CorpusSpec = "random_almost_bipartite:1000:16".parse().unwrap();
    let mut mismatches = 0;
    let mut largest = 0;
    for i in 0..corpus.len() {
        let g = corpus.graph(SEED, i).unwrap();
        largest = largest.max(g.n());
        let (oc, ok, _) = oracle_core_corona_ker(&g, &bounds).unwrap();
        let fields = [
            ("alpha", independence_number(&g, &bounds).unwrap() == oracle_alpha(&g, &bounds).unwrap()),
            ("mu", maximum_matching(&g).unwrap().len() == oracle_mu(&g, &bounds).unwrap()),
            ("core", core(&g, &bounds).unwrap() == oc),
            ("corona", corona(&g, &bounds).unwrap() == ok),
            ("d", critical_difference(&g) == oracle_d_all_subsets(&g, &bounds).unwrap()),
        ];
        for (name, same) in fields {
            if !same {
                mismatches += 1;
                out.problems.push(format!("{name} mismatch on\n{}", g.to_edge_list()));
            }
        }
    }
    out.expect(largest <= 16, format!("graph with n={largest} > 16"));
    let general: CorpusSpec = "random_general:200:14:0.3".parse().unwrap();
    for i in 0..general.len() {
        let g = general.graph(SEED, i).unwrap();
        let d = critical_difference(&g);
        if d != oracle_d_all_subsets(&g, &bounds).unwrap() || d != oracle_id(&g, &bounds).unwrap() {
            mismatches += 1;
            out.problems.push(format!("d mismatch on\n{}", g.to_edge_list()));
        }
    }
    out.expect(mismatches == 0, format!("{mismatches} mismatches"));
    out.summary = format!(
        "oracle equivalence: 1000 almost bipartite (n<={largest}) on alpha, mu, core, corona, d; 200 general (n<=14) on d and id; {mismatches} mismatches"
    );
    out
}

fn c7_scale() -> Outcome {
    let corpus = CorpusSpec::RandomAlmostBipartite {
        count: 100,
        min_n: 190,
        max_n: SCALE_N.1,
    };
    let checks: Vec<CheckId> = [9, 10, 11, 12, 14, 17, 18]
        .into_iter()
        .map(|k| CheckId::new(k).unwrap())
        .collect();
    let bounds = OracleBounds::default();
    let report = verify_suite(&corpus, &checks, SEED, &bounds);
    let mut out = suite_outcome(&report, SCALE_BUDGET, "100 almost bipartite n~200, T9 T10 T11 T12 T14 T17 T18");
    let orders: Vec<usize> = (0..corpus.len()).map(|i| corpus.graph(SEED, i).unwrap().n()).collect();
    let (lo, hi) = (*orders.iter().min().unwrap(), *orders.iter().max().unwrap());
    out.expect(
        SCALE_N.0 <= lo && hi <= SCALE_N.1,
        format!("orders {lo}..{hi} outside {}..{}", SCALE_N.0, SCALE_N.1),
    );
    out.expect(
        lo > bounds.subset_bound.max(bounds.omega_bound).max(bounds.matching_bound),
        "some graph is small enough for the oracles",
    );
    out.summary = format!("{} [n in {lo}..{hi}]", out.summary);
    out
}

fn c8_determinism() -> Outcome {
    let mut out = Outcome::new();
    let run = |jobs: &str| {
        Command::new(env!("CARGO_BIN_EXE_oddcore"))
            .args([
                "verify",
                "--corpus",
                "random_almost_bipartite:300:16",
                "--checks",
                "all",
                "--seed",
                "77",
                "--jobs",
                jobs,
                "--json",
            ])
            .env_remove("ODDCORE_ORACLE_BOUND")
            .output()
            .expect("oddcore binary runs")
    };
    let (a, b, serial) = (run("4"), run("4"), run("1"));
    out.expect(a.status.success() && b.status.success(), "verify reported failures");
    out.expect(!a.stdout.is_empty(), "empty report");
    out.expect(a.stdout == b.stdout, "two runs with --jobs 4 differ");
    out.expect(a.stdout == serial.stdout, "--jobs 4 and --jobs 1 differ");
    out.summary = format!(
        "oddcore verify twice (--jobs 4) and once (--jobs 1): {} identical bytes",
        a.stdout.len()
    );
    out
}

fn main() {
    // `cargo test` passes harness flags such as `--nocapture`; a filter
    // argument that names no criterion skips the suite.
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    if !filter.is_empty() && !filter.iter().any(|f| "acceptance".contains(f.as_str())) {
        return;
    }

    let mut criteria: Vec<Criterion> = vec![
        ("1", c1_fig2),
        ("2", c2_fig1),
        ("3", c3_complete_minus_edge),
        ("4", c4_odd_cycles),
        ("5", || c5_exhaustive(6)),
        ("6", c6_oracle_equivalence),
        ("7", c7_scale),
        ("8", c8_determinism),
    ];
    if std::env::var_os("ODDCORE_ACCEPTANCE_N7").is_some() {
        criteria.push(("5+", || c5_exhaustive(7)));
    }

    let mut failed = 0;
    for (id, run) in criteria {
        let out = run();
        let tag = if out.ok { "PASS" } else { "FAIL" };
        println!("{tag} [{id}] {}", out.summary);
        if !out.ok {
            failed += 1;
            for p in out.problems.iter().take(10) {
                println!("       {}", p.replace('\n', "\n       "));
            }
        }
    }
    if failed > 0 {
        println!("acceptance: {failed} criteria failed");
        std::process::exit(1);
    }
    println!("acceptance: all criteria passed");
}
