//! `lpaflow`: graph predicates, Franks invariants, moves, classification
//! verdicts and move-sequence search from the command line.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use lpa_flow::classify::decide;
use lpa_flow::flowsearch::{find_sequence, SearchError, SearchLimits};
use lpa_flow::graph::{classify_graph, parse_graph, MultiGraph};
use lpa_flow::invariants::{equiv_det_pair, franks_triple};
use lpa_flow::random;
use lpa_flow::script::{parse_script, Move};
use lpa_flow::selftest;

const SCHEMA: u64 = 1;

#[derive(Parser)]
#[command(name = "lpaflow", version, about = "Flow-equivalence invariants for Leavitt path algebras of finite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the structural predicates of a graph.
    Check {
        graph: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the group, unit class and determinant as JSON.
    Invariants { graph: PathBuf },
    /// Apply a move and print the resulting graph.
    ///
    /// `lpaflow move expand v0 g.graph`, `lpaflow move in-split --partition p.txt g.graph`,
    /// or `lpaflow move --script s.txt g.graph`.
    Move {
        /// Partition lines (`class v i: e1,e2,...`) for a split.
        #[arg(long)]
        partition: Option<PathBuf>,
        /// A script of `move` lines to apply in order.
        #[arg(long)]
        script: Option<PathBuf>,
        /// Move name, its arguments, then the graph file.
        #[arg(required = true, num_args = 1..)]
        items: Vec<String>,
    },
    /// Compare two graphs' algebras.
    Classify {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Look for a sequence of standard moves from one graph to another.
    Search {
        from: PathBuf,
        to: PathBuf,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long = "max-vertices", default_value_t = 6)]
        max_vertices: usize,
        #[arg(long)]
        json: bool,
    },
    /// Re-check the built-in worked examples plus a seeded invariance sweep.
    Selftest {
        #[arg(long, default_value_t = random::DEFAULT_SEED)]
        seed: u64,
    },
}

/// An input problem: printed to stderr, exit status 2.
struct Invalid(String);

type Outcome = Result<(String, ExitCode), Invalid>;

fn read(path: &Path) -> Result<String, Invalid> {
    std::fs::read_to_string(path).map_err(|e| Invalid(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<MultiGraph, Invalid> {
    let text = read(path)?;
    parse_graph(&text).map_err(|e| Invalid(format!("{}:{e}", path.display())))
}

fn with_schema(mut v: Value) -> Value {
    if let Value::Object(map) = &mut v {
        map.insert("schema".into(), json!(SCHEMA));
    }
    v
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

fn check(path: &Path, as_json: bool) -> Outcome {
    let g = load(path)?;
    let report = classify_graph(&g);
    let value = serde_json::to_value(&report).expect("reports serialize");
    if as_json {
        return Ok((pretty(&with_schema(value)), ExitCode::SUCCESS));
    }
    let mut out = String::new();
    let Value::Object(map) = value else { unreachable!("reports are objects") };
    for (k, v) in map {
        let _ = writeln!(out, "{k}: {v}");
    }
    Ok((out, ExitCode::SUCCESS))
}

fn invariants(path: &Path) -> Outcome {
    let g = load(path)?;
    Ok((pretty(&with_schema(franks_triple(&g).to_json())), ExitCode::SUCCESS))
}

fn apply_move(partition: Option<&Path>, script: Option<&Path>, items: &[String]) -> Outcome {
    let (graph_path, spec) = items.split_last().expect("clap requires one item");
    let mut g = load(Path::new(graph_path))?;
    let (origin, text) = match script {
        Some(p) => {
            if !spec.is_empty() {
                return Err(Invalid("give either --script or a move name, not both".into()));
            }
            (p.display().to_string(), read(p)?)
        }
        None => {
            if spec.is_empty() {
                return Err(Invalid("missing move name".into()));
            }
            let mut text = format!("move {}\n", spec.join(" "));
            if let Some(p) = partition {
                text.push_str(&read(p)?);
            }
            ("<move>".to_string(), text)
        }
    };
    let moves = parse_script(&text).map_err(|e| Invalid(format!("{origin}:{e}")))?;
    for (line, mv) in &moves {
        g = mv.apply(&g).map_err(|e| Invalid(format!("{origin}:{line}:1: {} failed: {e}", mv.name())))?;
    }
    Ok((g.to_text(), ExitCode::SUCCESS))
}

fn classify_cmd(left: &Path, right: &Path, as_json: bool) -> Outcome {
    let (e, f) = (load(left)?, load(right)?);
    let v = decide(&e, &f);
    let out = if as_json { pretty(&with_schema(v.to_json())) } else { format!("{v}\n") };
    Ok((out, ExitCode::SUCCESS))
}

fn search(from: &Path, to: &Path, limits: SearchLimits, as_json: bool) -> Outcome {
    let (src, dst) = (load(from)?, load(to)?);
    let result = find_sequence(&src, &dst, &limits);
    let (value, text) = match &result {
        Ok(seq) => {
            let script = seq.to_script();
            let value = json!({
                "found": true,
                "length": seq.steps.len(),
                "script": script,
                "final_permutation": seq.final_permutation,
                "nodes_expanded": seq.stats.nodes_expanded,
            });
            let mut text = format!("# {} standard moves; {}\n", seq.steps.len(), seq.stats);
            text.push_str(&script);
            let _ = writeln!(text, "# end graph relabelled by {:?} is the target", seq.final_permutation);
            (value, text)
        }
        Err(SearchError::Hypothesis(msg)) => return Err(Invalid(msg.clone())),
        Err(err) => {
            let value = json!({ "found": false, "reason": err.to_string() });
            (value, format!("# not found: {err}\n"))
        }
    };
    let out = if as_json { pretty(&with_schema(value)) } else { text };
    Ok((out, ExitCode::SUCCESS))
}

/// Standard moves on random purely infinite simple graphs never change
/// the group or the determinant.
fn invariance_sweep(seed: u64, rounds: usize) -> Result<(), String> {
    let mut rng = random::rng(seed);
    for round in 0..rounds {
        let g = random::pis_essential(&mut rng, 4, 2);
        let (moves, h) = random::scramble(&mut rng, &g, 3, 6);
        if !equiv_det_pair(&franks_triple(&g), &franks_triple(&h)) {
            let script: Vec<String> = moves.iter().map(Move::to_string).collect();
            return Err(format!("round {round}: {} changed by {script:?}", g.to_text().trim()));
        }
    }
    Ok(())
}

fn selftest_cmd(seed: u64) -> Outcome {
    let results = selftest::run();
    let mut out = String::new();
    let mut failed = results.iter().filter(|r| !r.passed()).count();
    for r in &results {
        let _ = writeln!(out, "{r}");
    }
    match invariance_sweep(seed, 50) {
        Ok(()) => {
            let _ = writeln!(out, "pass  invariance sweep (seed {seed})");
        }
        Err(why) => {
            failed += 1;
            let _ = writeln!(out, "FAIL  invariance sweep (seed {seed}): {why}");
        }
    }
    let total = results.len() + 1;
    let _ = writeln!(out, "{} of {total} passed", total - failed);
    let code = if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE };
    Ok((out, code))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Check { graph, json } => check(&graph, json),
        Command::Invariants { graph } => invariants(&graph),
        Command::Move { partition, script, items } => apply_move(partition.as_deref(), script.as_deref(), &items),
        Command::Classify { left, right, json } => classify_cmd(&left, &right, json),
        Command::Search { from, to, depth, max_vertices, json } => {
            let limits = SearchLimits { max_depth: depth, max_vertices, ..SearchLimits::default() };
            search(&from, &to, limits, json)
        }
        Command::Selftest { seed } => selftest_cmd(seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            code
        }
        Err(Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
