//! Command-line front end: graph I/O, pipeline invocation, verification,
//! generation, and oracle comparison (batch, non-interactive).
//!
//! File-taking subcommands read standard input when the file argument is
//! omitted, so generators pipe straight into the solvers. Exit codes:
//! 0 for a verified result, 2 for a proof-shaped negative (infeasible, or
//! a failed hypothesis), 1 for every other failure.

use clap::{Parser, Subcommand, ValueEnum};
use equicolor::construct::{
    degenerate_gadget, extender_chain, planar_gadget, random_forest, random_maximal_outerplanar,
    random_maximal_planar, random_tree, stalactite_chain, ConstructionCertificate,
};
use equicolor::forest::equitable_color_forest;
use equicolor::io::{format_coloring, format_graph, parse_coloring, parse_graph};
use equicolor::oracle::{
    enumerate_maximal_outerplanar, enumerate_maximal_outerplanar_dedup, exhaustive_equitable,
};
use equicolor::outerplanar::{check_hypothesis, equitable_color_outerplanar};
use equicolor::partition::partition_lemma;
use equicolor::planar::{
    equitable_color_planar_lowdeg, equitable_color_planar_traced, find_witness_sets,
};
use equicolor::report::{Outcome, RunReport, Telemetry};
use equicolor::{Coloring, Error, Graph, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "equicolor",
    version,
    about = "Equitable colouring of forests, outerplanar, and planar graphs"
)]
struct Cli {
    /// Seed for the random generator families; deterministic pipelines and
    /// families ignore it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Equitably colour a graph: forests and outerplanar graphs by
    /// default, the planar pipelines with --planar.
    Color {
        /// Number of colours.
        #[arg(long)]
        s: usize,
        /// Use the planar pipelines: witness search plus peeling at
        /// s ≥ 40, the four-forest route when s < 40 is divisible by four.
        #[arg(long)]
        planar: bool,
        /// Also write the colouring in text format to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Graph file (stdin when omitted).
        file: Option<PathBuf>,
    },
    /// Partition an outerplanar graph into two forests with degree caps.
    Partition {
        /// Graph file (stdin when omitted).
        file: Option<PathBuf>,
    },
    /// Check a colouring file against a graph.
    Verify {
        /// Colouring file (`s <k>` header, then `c <vertex> <colour>` lines).
        #[arg(long)]
        coloring: PathBuf,
        /// Graph file (stdin when omitted).
        graph: Option<PathBuf>,
    },
    /// Emit an extremal-family graph in text format.
    Generate {
        #[arg(long, value_enum)]
        family: Family,
        /// Family parameters: chain index, colour count, or `d s`; order n
        /// for the random families.
        #[arg(long, num_args = 1..)]
        params: Vec<usize>,
    },
    /// Exhaustively decide equitable s-colourability (complete search;
    /// EQUICOLOR_BUDGET_MS caps the wall time).
    Oracle {
        /// Number of colours.
        #[arg(long)]
        s: usize,
        /// Also write the found colouring to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Graph file (stdin when omitted).
        file: Option<PathBuf>,
    },
    /// Enumerate all triangulated polygons on n vertices (3 ≤ n ≤ 14).
    Enum {
        /// Number of vertices.
        #[arg(long)]
        n: usize,
        /// Collapse isomorphic triangulations.
        #[arg(long)]
        dedup: bool,
    },
    /// Check the hypothesis α_v ≥ ⌊n/s⌋ for every vertex.
    Hypothesis {
        /// Number of colours.
        #[arg(long)]
        s: usize,
        /// Graph file (stdin when omitted).
        file: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Family {
    /// Chain of merged stalactites (param: index ≥ 1).
    Stalactite,
    /// The join gadget with s isolated vertices (param: s ≥ 2).
    PlanarGadget,
    /// Chain of extenders K_2 ∨ 2K_2 (param: index ≥ 1).
    Extender,
    /// The d-degenerate infeasible gadget (params: d, s with s ≥ d ≥ 1).
    Degenerate,
    /// Random labelled tree (param: n ≥ 3; honours --seed).
    RandomTree,
    /// Random forest from a pruned random tree (param: n ≥ 3).
    RandomForest,
    /// Random triangulated polygon (param: n ≥ 3).
    RandomOuterplanar,
    /// Random planar triangulation (param: n ≥ 3).
    RandomPlanar,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 2 by default; 2 is reserved for proof-shaped
            // negatives here, so usage problems exit 1 instead
            let _ = e.print();
            std::process::exit(if e.use_stderr() { 1 } else { 0 });
        }
    };
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Color { s, planar, out, file } => cmd_color(s, planar, out, file),
        Command::Partition { file } => cmd_partition(file),
        Command::Verify { coloring, graph } => cmd_verify(coloring, graph),
        Command::Generate { family, params } => cmd_generate(family, &params, cli.seed),
        Command::Oracle { s, out, file } => cmd_oracle(s, out, file),
        Command::Enum { n, dedup } => cmd_enum(n, dedup),
        Command::Hypothesis { s, file } => cmd_hypothesis(s, file),
    }
}

/// Reads a file, or standard input when no path is given.
fn read_input(file: &Option<PathBuf>) -> Result<String> {
    match file {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::ParseError {
            line: 0,
            msg: format!("cannot read {}: {e}", path.display()),
        }),
        None => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Error::ParseError {
                    line: 0,
                    msg: format!("cannot read standard input: {e}"),
                })?;
            Ok(text)
        }
    }
}

fn load_graph(file: &Option<PathBuf>) -> Result<Graph> {
    parse_graph(&read_input(file)?)
}

/// Failure before any graph exists: plain error line, exit 1.
fn fail(e: &Error) -> i32 {
    eprintln!("error: {e}");
    1
}

fn write_coloring(out: &Option<PathBuf>, col: &Coloring) -> Result<()> {
    if let Some(path) = out {
        std::fs::write(path, format_coloring(col)).map_err(|e| Error::ParseError {
            line: 0,
            msg: format!("cannot write {}: {e}", path.display()),
        })?;
    }
    Ok(())
}

/// Prints the report and returns its exit code.
fn finish(report: RunReport) -> i32 {
    report
        .check()
        .expect("report payload must match its outcome");
    print!("{}", report.render());
    report.exit_code()
}

fn cmd_color(s: usize, planar: bool, out: Option<PathBuf>, file: Option<PathBuf>) -> i32 {
    let g = match load_graph(&file) {
        Ok(g) => g,
        Err(e) => return fail(&e),
    };
    let start = Instant::now();
    let before = Telemetry::snapshot();
    let command = if planar {
        format!("color --s {s} --planar")
    } else {
        format!("color --s {s}")
    };
    let mut monitor_misses = 0;
    let result: Result<Option<Coloring>> = if planar {
        color_planar(&g, s, &mut monitor_misses)
    } else if g.is_forest() {
        if s < 3 {
            Err(Error::TooSmall(format!(
                "forest colouring needs at least 3 colours, got {s}"
            )))
        } else {
            equitable_color_forest(&g, s).map(Some)
        }
    } else {
        equitable_color_outerplanar(&g, s).map(Some)
    };
    let mut telemetry = Telemetry::snapshot().since(&before);
    telemetry.monitor_misses = monitor_misses;
    let wall = start.elapsed();
    match result {
        Ok(Some(col)) => {
            if let Err(e) = col.verify_equitable(&g) {
                return finish(RunReport::outcome_only(
                    command,
                    &g,
                    Outcome::Error(format!("produced colouring failed re-verification: {e}")),
                    telemetry,
                    wall,
                ));
            }
            if let Err(e) = write_coloring(&out, &col) {
                return fail(&e);
            }
            finish(RunReport::colored(command, &g, col, telemetry, wall))
        }
        Ok(None) => finish(RunReport::outcome_only(
            command,
            &g,
            Outcome::Infeasible,
            telemetry,
            wall,
        )),
        Err(e) => finish(RunReport::outcome_only(
            command,
            &g,
            Outcome::from_error(&e),
            telemetry,
            wall,
        )),
    }
}

/// The planar routes. `Ok(None)` means the witness search proved the
/// hypothesis unsatisfiable.
fn color_planar(g: &Graph, s: usize, monitor_misses: &mut u64) -> Result<Option<Coloring>> {
    if s >= 40 {
        match find_witness_sets(g, s)? {
            None => Ok(None),
            Some((i0, i1)) => {
                let (col, state) = equitable_color_planar_traced(g, s, &i0, &i1)?;
                *monitor_misses = state.monitor_misses;
                Ok(Some(col))
            }
        }
    } else if s % 4 == 0 && s / 4 >= 3 {
        equitable_color_planar_lowdeg(g, s / 4).map(Some)
    } else {
        Err(Error::TooSmall(format!(
            "the planar pipelines need s ≥ 40, or an s divisible by four with s/4 ≥ 3, got {s}"
        )))
    }
}

fn cmd_partition(file: Option<PathBuf>) -> i32 {
    let g = match load_graph(&file) {
        Ok(g) => g,
        Err(e) => return fail(&e),
    };
    let start = Instant::now();
    let before = Telemetry::snapshot();
    let result = partition_lemma(&g);
    let telemetry = Telemetry::snapshot().since(&before);
    let wall = start.elapsed();
    match result {
        Ok(fp) => finish(RunReport::partitioned("partition", &g, fp, telemetry, wall)),
        Err(e) => finish(RunReport::outcome_only(
            "partition",
            &g,
            Outcome::from_error(&e),
            telemetry,
            wall,
        )),
    }
}

fn cmd_verify(coloring: PathBuf, graph: Option<PathBuf>) -> i32 {
    let g = match load_graph(&graph) {
        Ok(g) => g,
        Err(e) => return fail(&e),
    };
    let col = match read_input(&Some(coloring)).and_then(|text| parse_coloring(&text, g.n())) {
        Ok(col) => col,
        Err(e) => return fail(&e),
    };
    let start = Instant::now();
    let result = col.verify_equitable(&g);
    let wall = start.elapsed();
    match result {
        Ok(()) => finish(RunReport::colored(
            "verify",
            &g,
            col,
            Telemetry::default(),
            wall,
        )),
        Err(e) => finish(RunReport::outcome_only(
            "verify",
            &g,
            Outcome::Error(e.to_string()),
            Telemetry::default(),
            wall,
        )),
    }
}

/// Validated parameters for each family; errors instead of panicking on
/// out-of-range input.
fn build_family(
    family: Family,
    params: &[usize],
    seed: u64,
) -> Result<(Graph, Option<ConstructionCertificate>)> {
    let arity = match family {
        Family::Degenerate => 2,
        _ => 1,
    };
    if params.len() != arity {
        return Err(Error::ParseError {
            line: 0,
            msg: format!(
                "family {family:?} takes {arity} parameter(s), got {}",
                params.len()
            ),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let need = |ok: bool, msg: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::ParseError {
                line: 0,
                msg: msg.into(),
            })
        }
    };
    match family {
        Family::Stalactite => {
            need(params[0] >= 1, "the chain index must be at least 1")?;
            let (g, cert) = stalactite_chain(params[0]);
            Ok((g, Some(cert)))
        }
        Family::PlanarGadget => {
            need(params[0] >= 2, "the gadget needs s ≥ 2")?;
            let (g, cert) = planar_gadget(params[0]);
            Ok((g, Some(cert)))
        }
        Family::Extender => {
            need(params[0] >= 1, "the chain index must be at least 1")?;
            let (g, cert) = extender_chain(params[0]);
            Ok((g, Some(cert)))
        }
        Family::Degenerate => {
            need(
                params[0] >= 1 && params[1] >= params[0],
                "the gadget needs s ≥ d ≥ 1",
            )?;
            let (g, cert) = degenerate_gadget(params[0], params[1]);
            Ok((g, Some(cert)))
        }
        Family::RandomTree => {
            need(params[0] >= 3, "random families need n ≥ 3")?;
            Ok((random_tree(params[0], &mut rng), None))
        }
        Family::RandomForest => {
            need(params[0] >= 3, "random families need n ≥ 3")?;
            Ok((random_forest(params[0], 0.85, &mut rng), None))
        }
        Family::RandomOuterplanar => {
            need(params[0] >= 3, "random families need n ≥ 3")?;
            Ok((random_maximal_outerplanar(params[0], &mut rng), None))
        }
        Family::RandomPlanar => {
            need(params[0] >= 3, "random families need n ≥ 3")?;
            Ok((random_maximal_planar(params[0], &mut rng), None))
        }
    }
}

fn cmd_generate(family: Family, params: &[usize], seed: u64) -> i32 {
    let (g, cert) = match build_family(family, params, seed) {
        Ok(pair) => pair,
        Err(e) => return fail(&e),
    };
    if let Some(cert) = cert {
        println!("# family {} params {:?}", cert.family, cert.params);
        println!(
            "# claimed order {}, max degree {}",
            cert.claimed_order, cert.claimed_max_degree
        );
        if let Some(profile) = &cert.claimed_class_profile {
            let profile: Vec<String> = profile.iter().map(|k| k.to_string()).collect();
            println!("# claimed class profile {}", profile.join(" "));
        }
        if let Some(s) = cert.claimed_infeasible_s {
            println!("# claimed infeasible at s = {s}");
        }
    }
    print!("{}", format_graph(&g));
    0
}

fn cmd_oracle(s: usize, out: Option<PathBuf>, file: Option<PathBuf>) -> i32 {
    let g = match load_graph(&file) {
        Ok(g) => g,
        Err(e) => return fail(&e),
    };
    let command = format!("oracle --s {s}");
    let start = Instant::now();
    let result = exhaustive_equitable(&g, s);
    let wall = start.elapsed();
    match result {
        Ok(Some(col)) => {
            if let Err(e) = write_coloring(&out, &col) {
                return fail(&e);
            }
            finish(RunReport::colored(command, &g, col, Telemetry::default(), wall))
        }
        Ok(None) => finish(RunReport::outcome_only(
            command,
            &g,
            Outcome::Infeasible,
            Telemetry::default(),
            wall,
        )),
        Err(e) => finish(RunReport::outcome_only(
            command,
            &g,
            Outcome::from_error(&e),
            Telemetry::default(),
            wall,
        )),
    }
}

fn cmd_enum(n: usize, dedup: bool) -> i32 {
    let print_all = |graphs: &mut dyn Iterator<Item = Graph>| {
        let mut count = 0usize;
        for g in graphs {
            print!("{}", format_graph(&g));
            println!();
            count += 1;
        }
        println!("# total {count}");
        0
    };
    if dedup {
        match enumerate_maximal_outerplanar_dedup(n) {
            Ok(graphs) => print_all(&mut graphs.into_iter()),
            Err(e) => fail(&e),
        }
    } else {
        match enumerate_maximal_outerplanar(n) {
            Ok(graphs) => print_all(&mut { graphs }),
            Err(e) => fail(&e),
        }
    }
}

fn cmd_hypothesis(s: usize, file: Option<PathBuf>) -> i32 {
    let g = match load_graph(&file) {
        Ok(g) => g,
        Err(e) => return fail(&e),
    };
    if s == 0 {
        return fail(&Error::TooSmall("the hypothesis needs s ≥ 1".into()));
    }
    let start = Instant::now();
    let result = check_hypothesis(&g, s);
    let wall = start.elapsed();
    match result {
        Ok(()) => {
            println!(
                "hypothesis: holds (every vertex has an independent set of size {} through it)",
                g.n() / s
            );
            0
        }
        Err(e) => finish(RunReport::outcome_only(
            format!("hypothesis --s {s}"),
            &g,
            Outcome::from_error(&e),
            Telemetry::default(),
            wall,
        )),
    }
}
