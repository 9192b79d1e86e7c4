use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rubbling::engine::{
    order_executable, parse_moves, render_moves, untangle, Reacher, TransitionDigraph,
};
use rubbling::reductions::{available_rolls, normalize_by_rolling, RollKind};
use rubbling::solver::{
    expand_family_range, optimal_rubbling_number, rubbling_number, verify_family, Invariant,
    RowStatus, SolveError, SolveOptions, SolveResult, Witness,
};
use rubbling::{parse_edge_list, Distribution, Family, Graph, MoveMultiset, MoveSet};

const EXIT_NEGATIVE: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

/// Rubbling and pebbling reachability, rubbling numbers and transition
/// digraphs of small graphs.
///
/// A graph is a family token (path:N, cycle:N, complete:N, wheel:N,
/// kbipartite:M,N, hypercube:N, petersen, caterpillar:L1,..,Ls) or
/// @FILE naming an edge list.
#[derive(Parser, Debug)]
#[command(name = "rubble", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a distribution can put a pebble on a target vertex.
    Reach {
        graph: String,
        /// Comma-separated pebble counts, e.g. 0,0,0,8.
        distribution: String,
        target: usize,
        /// Print an executable move sequence when reachable.
        #[arg(long)]
        certificate: bool,
        #[arg(long, value_enum, default_value_t = Mode::Rubbling)]
        mode: Mode,
        #[arg(long)]
        json: bool,
    },
    /// Compute the rubbling number (or the pebbling number).
    Rho {
        graph: String,
        #[arg(long, value_enum, default_value_t = Mode::Rubbling)]
        mode: Mode,
        /// Largest size tried [default: 2^diameter + 8].
        #[arg(long)]
        cap: Option<u64>,
        /// Scan every distribution instead of squished ones only.
        #[arg(long)]
        no_squish: bool,
        #[arg(long)]
        json: bool,
        /// Worker threads [default: available cores].
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Compute the optimal rubbling number.
    RhoOpt {
        graph: String,
        /// Largest size tried [default: vertex count].
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Compare computed values with known closed forms over a family range
    /// such as cycle:3..8 or kbipartite:2..4,2..4.
    Verify {
        range: String,
        #[arg(long, value_enum)]
        which: Which,
        /// Solve in pebbling mode; values are still compared with the
        /// rubbling closed forms.
        #[arg(long, value_enum, default_value_t = Mode::Rubbling)]
        mode: Mode,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// List the rolling moves available on a distribution and apply them
    /// until none is left.
    Roll { graph: String, distribution: String },
    /// Remove cycles from the transition digraph of a move file; with
    /// --dist, also order the result into an executable sequence.
    Untangle {
        graph: String,
        moves_file: String,
        #[arg(long = "dist")]
        distribution: Option<String>,
    },
    /// Print the transition digraph of a move file in DOT format.
    ExportDot { graph: String, moves_file: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Rubbling,
    Pebbling,
}

impl From<Mode> for MoveSet {
    fn from(mode: Mode) -> Self {
        match mode {
            Mode::Rubbling => MoveSet::Rubbling,
            Mode::Pebbling => MoveSet::Pebbling,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Which {
    Rho,
    RhoOpt,
}

/// An error with the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure {
            code: 1,
            message: message.to_string(),
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let code = match e {
            SolveError::CapExceeded { .. } => EXIT_CAP,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn load_graph(spec: &str) -> Result<Graph, Failure> {
    match spec.strip_prefix('@') {
        Some(path) => {
            let text =
                fs::read_to_string(path).map_err(|e| Failure::usage(format!("{path}: {e}")))?;
            parse_edge_list(&text).map_err(|e| Failure::usage(format!("{path}: {e}")))
        }
        None => {
            let family: Family = spec.parse().map_err(Failure::usage)?;
            family.build().map_err(Failure::usage)
        }
    }
}

fn load_distribution(graph: &Graph, text: &str) -> Result<Distribution, Failure> {
    let p: Distribution = text.parse().map_err(Failure::usage)?;
    if p.len() != graph.vertex_count() {
        return Err(Failure::usage(format!(
            "distribution has {} entries, graph has {} vertices",
            p.len(),
            graph.vertex_count()
        )));
    }
    Ok(p)
}

fn load_moves(graph: &Graph, path: &str) -> Result<MoveMultiset, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{path}: {e}")))?;
    let moves = parse_moves(&text).map_err(|e| Failure::usage(format!("{path}: {e}")))?;
    for m in &moves {
        m.validate(graph).map_err(Failure::usage)?;
    }
    Ok(moves.into_iter().collect())
}

fn workers(requested: Option<usize>) -> usize {
    requested
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1)
}

fn counts(p: &Distribution) -> Value {
    json!(p.counts())
}

fn witness_json(w: &Option<Witness>) -> Value {
    match w {
        Some(Witness::Unreachable {
            target,
            distribution,
        }) => {
            json!({ "target": target, "distribution": counts(distribution) })
        }
        Some(Witness::Universal { distribution }) => {
            json!({ "distribution": counts(distribution) })
        }
        None => Value::Null,
    }
}

fn print_witness(w: &Option<Witness>) {
    if let Some(w) = w {
        if let Some(t) = w.target() {
            println!("witness_target={t}");
        }
        println!("witness_dist={}", w.distribution());
    }
}

fn stats_json(res: &SolveResult) -> Value {
    json!({
        "distributions": res.stats.distributions,
        "states": res.stats.states,
        "cache_hits": res.stats.cache_hits,
    })
}

fn reach(
    graph: &str,
    dist: &str,
    target: usize,
    certificate: bool,
    mode: Mode,
    as_json: bool,
) -> Outcome {
    let g = load_graph(graph)?;
    let p = load_distribution(&g, dist)?;
    if target >= g.vertex_count() {
        return Err(Failure::usage(format!(
            "target {target} is not a vertex of a {}-vertex graph",
            g.vertex_count()
        )));
    }
    let mut reacher = Reacher::new(&g, target, mode.into());
    let cert = reacher.certify(&p).map_err(Failure::usage)?;
    let reachable = cert.is_some();
    if as_json {
        let moves: Option<Vec<String>> = cert
            .as_ref()
            .map(|c| c.moves.iter().map(|m| m.to_string()).collect());
        let stats = reacher.stats();
        println!(
            "{}",
            json!({
                "command": "reach",
                "value": reachable,
                "witness": moves,
                "stats": { "states": stats.states, "cache_hits": stats.cache_hits },
            })
        );
    } else {
        println!("reachable={reachable}");
        if let (true, Some(c)) = (certificate, &cert) {
            print!("{}", c.render());
        }
    }
    Ok(if reachable { 0 } else { EXIT_NEGATIVE })
}

fn rho(graph: &str, opts: SolveOptions, as_json: bool) -> Outcome {
    let g = load_graph(graph)?;
    let name = match opts.mode {
        MoveSet::Rubbling => "rho",
        MoveSet::Pebbling => "pi",
    };
    let res = match rubbling_number(&g, &opts) {
        Ok(res) => res,
        Err(SolveError::CapExceeded { cap, witness }) => {
            if !as_json {
                print_witness(&witness);
            }
            return Err(SolveError::CapExceeded { cap, witness }.into());
        }
        Err(e) => return Err(e.into()),
    };
    if as_json {
        println!(
            "{}",
            json!({
                "command": name,
                "value": res.value,
                "witness": witness_json(&res.witness),
                "stats": stats_json(&res),
            })
        );
    } else {
        println!("{name}={}", res.value);
        print_witness(&res.witness);
    }
    Ok(0)
}

fn rho_opt(graph: &str, opts: SolveOptions, as_json: bool) -> Outcome {
    let g = load_graph(graph)?;
    let res = optimal_rubbling_number(&g, &opts)?;
    if as_json {
        println!(
            "{}",
            json!({
                "command": "rho_opt",
                "value": res.value,
                "witness": witness_json(&res.witness),
                "stats": stats_json(&res),
            })
        );
    } else {
        println!("rho_opt={}", res.value);
        print_witness(&res.witness);
    }
    Ok(0)
}

fn verify(range: &str, which: Which, opts: SolveOptions, as_json: bool) -> Outcome {
    let families = expand_family_range(range)?;
    let invariant = match which {
        Which::Rho => Invariant::Rho,
        Which::RhoOpt => Invariant::RhoOpt,
    };
    let report = verify_family(&families, invariant, &opts)?;
    let status = |s: RowStatus| match s {
        RowStatus::Match => "ok",
        RowStatus::Mismatch => "MISMATCH",
        RowStatus::NoClosedForm => "unchecked",
    };
    if as_json {
        let rows: Vec<Value> = report
            .rows
            .iter()
            .map(|r| {
                json!({
                    "family": r.family.to_string(),
                    "computed": r.computed,
                    "expected": r.expected,
                    "status": status(r.status),
                })
            })
            .collect();
        let first_bad = report.mismatches().next().map(
            |r| json!({ "family": r.family.to_string(), "witness": witness_json(&r.witness) }),
        );
        println!(
            "{}",
            json!({
                "command": "verify",
                "value": rows,
                "witness": first_bad,
                "stats": { "instances": report.rows.len() },
            })
        );
    } else {
        for r in &report.rows {
            let expected = r.expected.map_or("none".to_string(), |v| v.to_string());
            println!(
                "{} computed={} expected={expected} {}",
                r.family,
                r.computed,
                status(r.status)
            );
            if r.status == RowStatus::Mismatch {
                print_witness(&r.witness);
            }
        }
    }
    Ok(if report.all_match() { 0 } else { EXIT_MISMATCH })
}

fn roll(graph: &str, dist: &str) -> Outcome {
    let g = load_graph(graph)?;
    let p = load_distribution(&g, dist)?;
    for r in available_rolls(&g, &p) {
        let kind = match r.kind {
            RollKind::Single => "single",
            RollKind::Double => "double",
        };
        let path: Vec<String> = r.path.iter().map(usize::to_string).collect();
        let q = r.apply(&g, &p).map_err(Failure::usage)?;
        println!(
            "{kind} path={} source={} -> {q}",
            path.join(","),
            r.path[r.source]
        );
    }
    let q = normalize_by_rolling(&g, &p).map_err(Failure::usage)?;
    println!("normalized={q}");
    Ok(0)
}

fn untangle_cmd(graph: &str, moves_file: &str, dist: Option<&str>) -> Outcome {
    let g = load_graph(graph)?;
    let moves = load_moves(&g, moves_file)?;
    let acyclic = untangle(&moves);
    println!("removed={}", moves.len() - acyclic.len());
    match dist {
        None => print!("{}", render_moves(&acyclic.to_sequence())),
        Some(d) => {
            let p = load_distribution(&g, d)?;
            match order_executable(&p, &acyclic) {
                Ok(order) => print!("{}", render_moves(&order)),
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(EXIT_NEGATIVE);
                }
            }
        }
    }
    Ok(0)
}

fn export_dot(graph: &str, moves_file: &str) -> Outcome {
    let g = load_graph(graph)?;
    let moves = load_moves(&g, moves_file)?;
    print!(
        "{}",
        TransitionDigraph::new(g.vertex_count(), &moves).to_dot()
    );
    Ok(0)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Reach {
            graph,
            distribution,
            target,
            certificate,
            mode,
            json,
        } => reach(&graph, &distribution, target, certificate, mode, json),
        Command::Rho {
            graph,
            mode,
            cap,
            no_squish,
            json,
            workers: w,
        } => {
            let opts = SolveOptions {
                mode: mode.into(),
                cap,
                squish: !no_squish,
                workers: workers(w),
            };
            rho(&graph, opts, json)
        }
        Command::RhoOpt {
            graph,
            cap,
            json,
            workers: w,
        } => {
            let opts = SolveOptions {
                cap,
                workers: workers(w),
                ..SolveOptions::default()
            };
            rho_opt(&graph, opts, json)
        }
        Command::Verify {
            range,
            which,
            mode,
            json,
            workers: w,
        } => {
            let opts = SolveOptions {
                mode: mode.into(),
                workers: workers(w),
                ..SolveOptions::default()
            };
            verify(&range, which, opts, json)
        }
        Command::Roll {
            graph,
            distribution,
        } => roll(&graph, &distribution),
        Command::Untangle {
            graph,
            moves_file,
            distribution,
        } => untangle_cmd(&graph, &moves_file, distribution.as_deref()),
        Command::ExportDot { graph, moves_file } => export_dot(&graph, &moves_file),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
