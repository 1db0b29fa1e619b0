//! Command-line front end: `solve`, `decide`, `decompose`, `greedy`,
//! `generate`, `verify`, and `info` over the text formats in
//! [`mod@format`].

pub mod format;

use crate::core::{
    positive_colour_set, support, verify_decomposition, Decomposition, Instance, is_acyclic,
};
use crate::decompose::{flow_decompose, greedy_max_value_decompose};
use crate::exact::{exact_min_cost_with_limits, CostMode, ExactError, SearchLimits};
use crate::generators::{
    fixture, gen_1in3sat, gen_3partition, gen_from_splittable, gen_greedy_gap, gen_weak2linkage,
    GeneratedInstance,
};
use crate::polyalgos::{flow_decomposition_2v, mincost_bichromatic_divisible,
    mincost_bichromatic_uniform, PolyError,
};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use format::{
    parse_instance, parse_linkage_base, parse_solution, serialize_instance, serialize_solution,
    solution_to_decomposition, JsonSolution,
};
use serde_json::json;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

const NODE_BUDGET_VAR: &str = "COLFLOW_NODE_BUDGET";

const AFTER_HELP: &str = "Exit codes:\n  0  success, or `decide` answered yes\n  1  `decide` answered no, or `verify` rejected the solution\n  2  usage or input error\n  3  exact-solver node budget exhausted (inconclusive)\n\nEnvironment:\n  COLFLOW_NODE_BUDGET  overrides the exact solver's node budget\n                       (default 10000000 expanded states)";

#[derive(Parser)]
#[command(
    name = "colflow",
    version,
    about = "Minimum colour cost flow decomposition on arc-coloured networks",
    after_help = AFTER_HELP
)]
struct Cli {
    /// Output format for solutions and reports.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Seed for randomized tie-breaking. All built-in algorithms are
    /// deterministic, so this is accepted and recorded but unused.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Solve to optimality, picking the cheapest applicable algorithm.
    ///
    /// Selection order: uniform flow on at most two colours; two divisible
    /// values with a colour-value correspondence; monochromatic two-value;
    /// otherwise the exact search.
    Solve { instance: PathBuf },
    /// Decide whether a decomposition of colour cost at most k exists.
    Decide {
        #[arg(long)]
        k: u64,
        instance: PathBuf,
    },
    /// Decompose into at most m paths plus a circulation (no cost
    /// minimization).
    Decompose { instance: PathBuf },
    /// Greedy maximum-bottleneck decomposition.
    Greedy { instance: PathBuf },
    /// Emit a generated instance on stdout.
    Generate {
        #[command(subcommand)]
        reduction: Reduction,
    },
    /// Check a solution file against an instance.
    Verify { instance: PathBuf, solution: PathBuf },
    /// Report colour count, value set, acyclicity, and uniformity.
    Info { instance: PathBuf },
}

#[derive(Subcommand)]
enum Reduction {
    /// 3-Partition reduction: `3partition <target> <value>...`.
    #[command(name = "3partition")]
    ThreePartition {
        target: u64,
        #[arg(required = true, num_args = 3..)]
        values: Vec<u64>,
    },
    /// Embed a monochromatic k-splittable instance (values in {1,2,4}).
    Splittable {
        /// Instance file of the monochromatic base flow.
        base: PathBuf,
        q: u64,
        k: u64,
    },
    /// Weak-2-linkage reduction from a `p link` digraph file.
    Weak2linkage {
        base: PathBuf,
        #[arg(long, default_value_t = 1)]
        lambda: u64,
        /// Split the multipaths so every vertex keeps degree at most 6
        /// when the base has maximum degree 3.
        #[arg(long)]
        degree_bounded: bool,
    },
    /// 1-in-3SAT reduction; literals are nonzero integers, three per
    /// clause: `1in3sat 1 2 3 1 -2 -3`.
    #[command(name = "1in3sat")]
    OneInThreeSat {
        #[arg(long, default_value_t = 1)]
        lambda: u64,
        #[arg(required = true, num_args = 3.., allow_negative_numbers = true)]
        literals: Vec<i32>,
    },
    /// Chain family where greedy needs 2n+1 paths but n+3 suffice.
    Greedygap { n: u64 },
    /// One of the built-in example instances (fig1, fig3, fig4, fig5,
    /// fig6, fig8).
    Fixture { name: String },
}

struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    parse_instance(&read_file(path)?)
        .map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn search_limits() -> Result<SearchLimits, Failure> {
    let mut limits = SearchLimits::default();
    match std::env::var(NODE_BUDGET_VAR) {
        Ok(raw) => match raw.trim().parse::<u64>() {
            Ok(budget) if budget > 0 => limits.node_budget = budget,
            _ => {
                return Err(fail(
                    EXIT_USAGE,
                    format!("{NODE_BUDGET_VAR} must be a positive integer, got {raw:?}"),
                ));
            }
        },
        Err(std::env::VarError::NotPresent) => {}
        Err(e) => return Err(fail(EXIT_USAGE, format!("{NODE_BUDGET_VAR}: {e}"))),
    }
    Ok(limits)
}

fn exact_failure(e: ExactError) -> Failure {
    match e {
        ExactError::BudgetExceeded { .. } => fail(EXIT_BUDGET, e.to_string()),
        ExactError::Flow(_) => fail(EXIT_USAGE, e.to_string()),
    }
}

/// Internal invariant breaks: the instance was validated at parse time,
/// so algorithm preconditions checked again here should never fail.
fn unexpected(e: impl std::fmt::Display) -> Failure {
    fail(EXIT_USAGE, format!("internal: {e}"))
}

fn solve_instance(
    instance: &Instance,
    limits: SearchLimits,
    err: &mut dyn Write,
) -> Result<(&'static str, Decomposition), Failure> {
    let network = &instance.network;
    let flow = &instance.flow;
    let values: Vec<u64> = flow.positive_value_set().into_iter().collect();
    let colours = positive_colour_set(network, flow);
    if values.is_empty() {
        return Ok(("empty", Decomposition::empty()));
    }
    if values.len() == 1 && colours.len() <= 2 {
        let result =
            mincost_bichromatic_uniform(network, flow, values[0]).map_err(unexpected)?;
        return Ok(("bichromatic-uniform", result.decomposition));
    }
    if let [small, large] = values[..] {
        if colours.len() == 2 && large % small == 0 {
            match mincost_bichromatic_divisible(network, flow, large, small) {
                Ok(result) => return Ok(("bichromatic-divisible", result.decomposition)),
                Err(
                    PolyError::ColourValueMismatch { .. } | PolyError::AmbiguousColourValue(..),
                ) => {}
                Err(e) => return Err(unexpected(e)),
            }
        }
        if colours.len() <= 1 {
            if !is_acyclic(&support(network, flow, 1)) {
                let _ = writeln!(
                    err,
                    "warning: flow support contains cycles; the two-value path count is only guaranteed minimal on acyclic inputs"
                );
            }
            let trace =
                flow_decomposition_2v(network, flow, large, small).map_err(unexpected)?;
            return Ok(("two-value", trace.into_decomposition(network)));
        }
    }
    let result = exact_min_cost_with_limits(instance, CostMode::ColourCost, limits)
        .map_err(exact_failure)?;
    Ok(("exact", result.decomposition))
}

fn emit_solution(
    out: &mut dyn Write,
    format: OutputFormat,
    instance: &Instance,
    decomposition: &Decomposition,
    comment: Option<String>,
) {
    match format {
        OutputFormat::Text => {
            if let Some(comment) = comment {
                let _ = writeln!(out, "c {comment}");
            }
            let _ = write!(out, "{}", serialize_solution(&instance.network, decomposition));
        }
        OutputFormat::Json => {
            let json = JsonSolution::from_decomposition(&instance.network, decomposition);
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&json).unwrap());
        }
    }
}

fn emit_generated(out: &mut dyn Write, generated: &GeneratedInstance) {
    let _ = writeln!(out, "c {}", generated.provenance);
    let _ = writeln!(out, "c threshold {}", generated.certificate.threshold);
    let _ = write!(out, "{}", serialize_instance(&generated.instance));
}

fn run_generate(reduction: &Reduction, out: &mut dyn Write) -> Result<i32, Failure> {
    let gen_err = |e: crate::generators::GenError| fail(EXIT_USAGE, e.to_string());
    match reduction {
        Reduction::ThreePartition { target, values } => {
            emit_generated(out, &gen_3partition(values, *target).map_err(gen_err)?);
        }
        Reduction::Splittable { base, q, k } => {
            let base = load_instance(base)?;
            emit_generated(out, &gen_from_splittable(&base, *q, *k).map_err(gen_err)?);
        }
        Reduction::Weak2linkage {
            base,
            lambda,
            degree_bounded,
        } => {
            let text = read_file(base)?;
            let parsed = parse_linkage_base(&text)
                .map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", base.display())))?;
            emit_generated(
                out,
                &gen_weak2linkage(&parsed, *lambda, *degree_bounded).map_err(gen_err)?,
            );
        }
        Reduction::OneInThreeSat { lambda, literals } => {
            if literals.len() % 3 != 0 {
                return Err(fail(
                    EXIT_USAGE,
                    format!("need three literals per clause, got {}", literals.len()),
                ));
            }
            let clauses: Vec<[i32; 3]> = literals
                .chunks_exact(3)
                .map(|c| [c[0], c[1], c[2]])
                .collect();
            emit_generated(out, &gen_1in3sat(&clauses, *lambda).map_err(gen_err)?);
        }
        Reduction::Greedygap { n } => {
            emit_generated(out, &gen_greedy_gap(*n).map_err(gen_err)?);
        }
        Reduction::Fixture { name } => {
            let instance = fixture(name).map_err(gen_err)?;
            let _ = writeln!(out, "c fixture {name}");
            let _ = write!(out, "{}", serialize_instance(&instance));
        }
    }
    Ok(EXIT_OK)
}

fn run_info(instance: &Instance, format: OutputFormat, out: &mut dyn Write) -> Result<i32, Failure> {
    let network = &instance.network;
    let flow = &instance.flow;
    let colours = positive_colour_set(network, flow);
    let values = flow.positive_value_set();
    let acyclic = is_acyclic(network);
    let lambda = if values.len() == 1 {
        values.iter().next().copied()
    } else {
        None
    };
    let uniform = values.len() <= 1;
    match format {
        OutputFormat::Text => {
            let _ = writeln!(out, "vertices {}", network.vertex_count());
            let _ = writeln!(out, "arcs {}", network.arc_count());
            let _ = writeln!(out, "flow value {}", instance.flow_value());
            let joined = |it: Vec<String>| it.join(" ");
            let _ = writeln!(
                out,
                "colours {}: {}",
                colours.len(),
                joined(colours.iter().map(u32::to_string).collect())
            );
            let _ = writeln!(
                out,
                "values {}: {}",
                values.len(),
                joined(values.iter().map(u64::to_string).collect())
            );
            let _ = writeln!(out, "acyclic {}", if acyclic { "yes" } else { "no" });
            match lambda {
                Some(l) => {
                    let _ = writeln!(out, "uniform yes lambda {l}");
                }
                None => {
                    let _ = writeln!(out, "uniform {}", if uniform { "yes" } else { "no" });
                }
            }
        }
        OutputFormat::Json => {
            let info = json!({
                "vertices": network.vertex_count(),
                "arcs": network.arc_count(),
                "flow_value": instance.flow_value(),
                "colours": colours.iter().collect::<Vec<_>>(),
                "values": values.iter().collect::<Vec<_>>(),
                "acyclic": acyclic,
                "uniform": uniform,
                "lambda": lambda,
            });
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&info).unwrap());
        }
    }
    Ok(EXIT_OK)
}

fn run_verify(
    instance: &Instance,
    solution_path: &Path,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let text = read_file(solution_path)?;
    let solution = parse_solution(&text)
        .map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", solution_path.display())))?;
    let outcome = solution_to_decomposition(&instance.network, &solution)
        .map_err(|e| e.to_string())
        .and_then(|decomposition| {
            verify_decomposition(&instance.network, &instance.flow, &decomposition)
                .map(|_| decomposition)
                .map_err(|e| e.to_string())
        });
    match format {
        OutputFormat::Text => match &outcome {
            Ok(d) => {
                let _ = writeln!(
                    out,
                    "ok cost {} paths {} cycles {}",
                    d.cost,
                    d.paths.len(),
                    d.circulation.len()
                );
            }
            Err(message) => {
                let _ = writeln!(out, "invalid: {message}");
            }
        },
        OutputFormat::Json => {
            let report = match &outcome {
                Ok(d) => json!({
                    "ok": true,
                    "cost": d.cost,
                    "num_paths": d.paths.len(),
                    "num_cycles": d.circulation.len(),
                }),
                Err(message) => json!({ "ok": false, "error": message }),
            };
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).unwrap());
        }
    }
    Ok(if outcome.is_ok() { EXIT_OK } else { EXIT_NO })
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match &cli.command {
        Command::Solve { instance } => {
            let instance = load_instance(instance)?;
            let limits = search_limits()?;
            let (algorithm, decomposition) = solve_instance(&instance, limits, err)?;
            emit_solution(
                out,
                cli.format,
                &instance,
                &decomposition,
                Some(format!("algorithm {algorithm}")),
            );
            Ok(EXIT_OK)
        }
        Command::Decide { k, instance } => {
            let instance = load_instance(instance)?;
            let limits = search_limits()?;
            let result = exact_min_cost_with_limits(&instance, CostMode::ColourCost, limits)
                .map_err(exact_failure)?;
            let yes = result.optimal_cost <= *k;
            match cli.format {
                OutputFormat::Text => {
                    if yes {
                        let _ = writeln!(out, "c answer yes (optimal cost {})", result.optimal_cost);
                        emit_solution(out, cli.format, &instance, &result.decomposition, None);
                    } else {
                        let _ = writeln!(
                            out,
                            "no: optimal cost {} exceeds k = {k}",
                            result.optimal_cost
                        );
                    }
                }
                OutputFormat::Json => {
                    let solution = yes.then(|| {
                        JsonSolution::from_decomposition(&instance.network, &result.decomposition)
                    });
                    let report = json!({
                        "answer": if yes { "yes" } else { "no" },
                        "k": k,
                        "optimal_cost": result.optimal_cost,
                        "solution": solution,
                    });
                    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).unwrap());
                }
            }
            Ok(if yes { EXIT_OK } else { EXIT_NO })
        }
        Command::Decompose { instance } => {
            let instance = load_instance(instance)?;
            let decomposition =
                flow_decompose(&instance.network, &instance.flow).map_err(unexpected)?;
            emit_solution(
                out,
                cli.format,
                &instance,
                &decomposition,
                Some("algorithm decompose".to_string()),
            );
            Ok(EXIT_OK)
        }
        Command::Greedy { instance } => {
            let instance = load_instance(instance)?;
            let decomposition =
                greedy_max_value_decompose(&instance.network, &instance.flow).map_err(unexpected)?;
            emit_solution(
                out,
                cli.format,
                &instance,
                &decomposition,
                Some("algorithm greedy".to_string()),
            );
            Ok(EXIT_OK)
        }
        Command::Generate { reduction } => run_generate(reduction, out),
        Command::Verify { instance, solution } => {
            let instance = load_instance(instance)?;
            run_verify(&instance, solution, cli.format, out)
        }
        Command::Info { instance } => {
            let instance = load_instance(instance)?;
            run_info(&instance, cli.format, out)
        }
    }
}

/// Runs the CLI against explicit argument and output streams, returning
/// the process exit code.
pub fn run_with_io<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

/// Runs the CLI on the process arguments and standard streams.
pub fn run() -> i32 {
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run_with_io(std::env::args_os(), &mut out, &mut err)
}
