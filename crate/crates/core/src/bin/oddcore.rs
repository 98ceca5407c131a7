use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use oddcore::critical::critical_difference;
use oddcore::generators::{
    fixture, random_almost_bipartite, random_bipartite, random_general, AlmostBipartiteModel,
    FixtureName,
};
use oddcore::oracle::{
    oracle_alpha, oracle_core_corona_ker, oracle_d_all_subsets, oracle_id, oracle_mu,
    oracle_omega, OracleBounds,
};
use oddcore::workbench::{analyze, parse_check_list, verify_suite, CorpusSpec};
use oddcore::{parse_edge_list, Graph, VertexSet};

/// Exact independence, matching and critical-difference invariants.
#[derive(Parser)]
#[command(name = "oddcore", version, about)]
struct Cli {
    /// Overrides all oracle bounds (also settable through ODDCORE_ORACLE_BOUND).
    #[arg(long, global = true, value_name = "N")]
    oracle_bound: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report every invariant of a graph read from an edge-list file (`-` for stdin).
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Generate a graph in edge-list format.
    Gen(GenArgs),
    /// Run theorem checks over a corpus.
    Verify {
        /// `exhaustive:N`, `random_almost_bipartite:COUNT[:MIN_N]:MAX_N`,
        /// `random_general:COUNT:MAX_N:P` or `fixtures`.
        #[arg(long)]
        corpus: String,
        /// `all` or a comma-separated list such as `T1,T9,T17`.
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; defaults to all cores.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Brute-force values only, for cross-checking `analyze`.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    AlmostBipartite,
    Bipartite,
    General,
    Fixture,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    model: Model,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Fixture name, e.g. `fig2`, `k2n_minus_e(4)`, `odd_cycle(3)`.
    #[arg(long)]
    name: Option<String>,
    /// Order of a general graph.
    #[arg(long, default_value_t = 10)]
    n: usize,
    /// Edge probability (general and bipartite models).
    #[arg(long, default_value_t = 0.3)]
    p: f64,
    #[arg(long, default_value_t = 5)]
    left: usize,
    #[arg(long, default_value_t = 5)]
    right: usize,
    /// Bipartite model: force a connected graph.
    #[arg(long)]
    connected: bool,
    #[arg(long, default_value_t = 5)]
    cycle_len: usize,
    #[arg(long, default_value_t = 3)]
    pieces: usize,
    #[arg(long, default_value_t = 1)]
    piece_min: usize,
    #[arg(long, default_value_t = 5)]
    piece_max: usize,
    #[arg(long, default_value_t = 0.3)]
    cross_prob: f64,
    #[arg(long, default_value_t = 0)]
    extra_components: usize,
    /// Keep construction order instead of shuffling labels.
    #[arg(long)]
    no_relabel: bool,
}

/// Exit status for bad input.
const INPUT_ERROR: u8 = 2;

fn fail_input(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(INPUT_ERROR)
}

fn read_graph(path: &Path) -> Result<Graph, String> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("stdin: {e}"))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?
    };
    parse_edge_list(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Writes to stdout, ignoring a closed pipe (`oddcore ... | head`).
fn emit(text: &str) {
    let mut out = io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn print_json(value: &impl Serialize) {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    emit(&format!("{text}\n"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let bounds = cli
        .oracle_bound
        .map(OracleBounds::uniform)
        .unwrap_or_else(OracleBounds::from_env);

    match cli.command {
        Command::Analyze { file, json } => {
            let g = match read_graph(&file) {
                Ok(g) => g,
                Err(e) => return fail_input(e),
            };
            let report = analyze(&g, &bounds);
            if json {
                print_json(&report);
            } else {
                emit(&format!("{report}\n"));
            }
            if report.consistent() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Command::Gen(args) => generate(&args),
        Command::Verify {
            corpus,
            checks,
            seed,
            jobs,
            json,
        } => {
            let corpus: CorpusSpec = match corpus.parse() {
                Ok(c) => c,
                Err(e) => return fail_input(e),
            };
            let checks = match parse_check_list(&checks) {
                Ok(c) if !c.is_empty() => c,
                Ok(_) => return fail_input("no checks selected"),
                Err(e) => return fail_input(e),
            };
            let mut pool = rayon::ThreadPoolBuilder::new();
            if let Some(k) = jobs {
                pool = pool.num_threads(k.max(1));
            }
            let pool = match pool.build() {
                Ok(p) => p,
                Err(e) => return fail_input(e),
            };
            let report = pool.install(|| verify_suite(&corpus, &checks, seed, &bounds));
            if json {
                print_json(&report);
            } else {
                emit(&format!("{report}\n"));
            }
            eprintln!("elapsed: {:.3}s", report.elapsed.as_secs_f64());
            if report.total_failures() == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Command::Oracle { file, json } => {
            let g = match read_graph(&file) {
                Ok(g) => g,
                Err(e) => return fail_input(e),
            };
            let report = oracle_report(&g, &bounds);
            if json {
                print_json(&report);
            } else {
                emit(&report.text());
            }
            ExitCode::SUCCESS
        }
    }
}

fn generate(args: &GenArgs) -> ExitCode {
    let graph = match args.model {
        Model::Fixture => {
            let Some(name) = &args.name else {
                return fail_input("--model fixture needs --name");
            };
            name.parse::<FixtureName>()
                .map_err(|e| e.to_string())
                .and_then(|f| fixture(&f).map_err(|e| e.to_string()))
        }
        Model::General => {
            if !(0.0..=1.0).contains(&args.p) {
                return fail_input("--p must lie in [0, 1]");
            }
            Ok(random_general(args.n, args.p, args.seed))
        }
        Model::Bipartite => {
            random_bipartite(args.left, args.right, args.p, args.connected, args.seed)
                .map_err(|e| e.to_string())
        }
        Model::AlmostBipartite => random_almost_bipartite(&AlmostBipartiteModel {
            cycle_len: args.cycle_len,
            pieces: args.pieces,
            piece_size: (args.piece_min, args.piece_max),
            cross_edge_prob: args.cross_prob,
            extra_components: args.extra_components,
            seed: args.seed,
            relabel: !args.no_relabel,
        })
        .map_err(|e| e.to_string()),
    };
    let graph = match graph {
        Ok(g) => g,
        Err(e) => return fail_input(e),
    };
    let text = graph.to_edge_list();
    let written = match &args.out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail_input(e),
    }
}

/// Exhaustive values; a field is absent when the graph exceeds its bound.
#[derive(Serialize)]
struct OracleReport {
    n: usize,
    m: usize,
    bounds: OracleBounds,
    alpha: Option<usize>,
    mu: Option<usize>,
    omega_count: Option<usize>,
    core: Option<VertexSet>,
    corona: Option<VertexSet>,
    ker: Option<VertexSet>,
    d_subsets: Option<i64>,
    id: Option<i64>,
    d_double_cover: i64,
}

fn oracle_report(g: &Graph, bounds: &OracleBounds) -> OracleReport {
    let ccc = oracle_core_corona_ker(g, bounds).ok();
    OracleReport {
        n: g.n(),
        m: g.m(),
        bounds: *bounds,
        alpha: oracle_alpha(g, bounds).ok(),
        mu: oracle_mu(g, bounds).ok(),
        omega_count: oracle_omega(g, bounds).ok().map(|o| o.len()),
        core: ccc.as_ref().map(|c| c.0.clone()),
        corona: ccc.as_ref().map(|c| c.1.clone()),
        ker: ccc.map(|c| c.2),
        d_subsets: oracle_d_all_subsets(g, bounds).ok(),
        id: oracle_id(g, bounds).ok(),
        d_double_cover: critical_difference(g),
    }
}

impl OracleReport {
    fn text(&self) -> String {
        fn show<T: std::fmt::Debug>(v: &Option<T>) -> String {
            v.as_ref()
                .map_or_else(|| "out of bound".to_string(), |x| format!("{x:?}"))
        }
        [
            format!("n: {}", self.n),
            format!("m: {}", self.m),
            format!("alpha: {}", show(&self.alpha)),
            format!("mu: {}", show(&self.mu)),
            format!("maximum independent sets: {}", show(&self.omega_count)),
            format!("core: {}", show(&self.core.as_ref().map(VertexSet::to_vec))),
            format!("corona: {}", show(&self.corona.as_ref().map(VertexSet::to_vec))),
            format!("ker: {}", show(&self.ker.as_ref().map(VertexSet::to_vec))),
            format!("d (all subsets): {}", show(&self.d_subsets)),
            format!("id: {}", show(&self.id)),
            format!("d (double cover): {}", self.d_double_cover),
        ]
        .iter()
        .map(|l| format!("{l}\n"))
        .collect()
    }
}
