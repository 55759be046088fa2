//! Command-line front end. Data goes to files or standard output, logs to
//! standard error. Exit codes: 0 success, 1 a checked claim is refuted,
//! 2 usage or input errors.

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::coloring::{enumerate_colorings, find_coloring_within, resistance};
use crate::connectivity::{cyclic_connectivity_at_least, Method};
use crate::constructions::recipe::witness_flow_h;
use crate::constructions::{
    build_h, build_j, build_m_variant, build_n_variant, build_y, build_z_variant, petersen,
};
use crate::error::{Error, Result};
use crate::flows::{flow_resistance, is_flow, violations, zero_count, Flow};
use crate::io::{canonicalize, export, read_graph, Format};
use crate::registry::Registry;
use crate::semigraph::SemiGraph;
use crate::verify::{verify_all, AllOptions, Budget, Samples, SCHEMA};

#[derive(Parser, Debug)]
#[command(name = "snarkforge", version, about = "Build and check the H_n snark family")]
struct Cli {
    /// Seed for the randomized property suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for independent checks.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Registry file (defaults to $SNARK_REGISTRY, then ./wirings.json).
    #[arg(long, global = true)]
    registry: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a named graph or semi-graph.
    Build {
        #[arg(value_enum)]
        what: Target,
        /// Level for Y and H.
        index: Option<usize>,
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Proper 3-edge-colorings.
    Color {
        #[arg(value_enum)]
        action: ColorAction,
        #[command(flatten)]
        input: GraphInput,
    },
    /// Z2 x Z2 flows.
    Flow {
        #[arg(value_enum)]
        action: FlowAction,
        #[command(flatten)]
        input: GraphInput,
        /// Flow JSON to check.
        #[arg(long)]
        flow: Option<PathBuf>,
        /// Level of H for `witness`.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Cyclic edge-connectivity.
    Cut {
        #[arg(value_enum)]
        action: CutAction,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 5)]
        k: usize,
        #[arg(long, default_value = "exhaustive")]
        method: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The full verification harness.
    Verify {
        #[arg(value_enum)]
        scope: VerifyScope,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 600)]
        budget_seconds: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The persisted wiring registry.
    Registry {
        #[arg(value_enum)]
        action: RegistryAction,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct GraphInput {
    /// Graph file (JSON or graph6).
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Search budget: deletions for resistance, zeros for flow resistance.
    #[arg(long, default_value_t = 3)]
    budget: u32,
    #[arg(long, default_value_t = 600)]
    budget_seconds: u64,
    /// Where to write the JSON report (standard output otherwise).
    #[arg(long, alias = "out")]
    report: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Target {
    Petersen,
    #[value(name = "M")]
    M,
    #[value(name = "N")]
    N,
    #[value(name = "Z")]
    Z,
    #[value(name = "Y")]
    Y,
    #[value(name = "H")]
    H,
    #[value(name = "J")]
    J,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ColorAction {
    Find,
    Enumerate,
    Resistance,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FlowAction {
    Check,
    Resistance,
    Witness,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CutAction {
    Verify,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum VerifyScope {
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RegistryAction {
    /// Write the frozen registry.
    Write,
    /// Load and validate the registry file.
    Check,
    /// Print the registry in use.
    Show,
}

/// Something a command found: the exit code follows from it.
enum Verdict {
    Ok,
    Refuted,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn emit_json(out: Option<&Path>, v: &Value) -> Result<()> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    emit(out, &s)
}

fn load_graph(input: &GraphInput) -> Result<SemiGraph> {
    let path = input.graph.as_deref().ok_or_else(|| usage("--graph is required"))?;
    read_graph(path)
}

fn deadline(seconds: u64) -> Option<Instant> {
    Some(Instant::now() + Duration::from_secs(seconds))
}

fn cmd_build(what: Target, index: Option<usize>, format: &str, out: Option<&Path>, reg: &Registry) -> Result<Verdict> {
    let w = &reg.wiring;
    let level = || index.filter(|&i| i >= 1).ok_or_else(|| usage("Y and H need a level >= 1"));
    let g = match what {
        Target::Petersen => petersen(),
        Target::M => build_m_variant(w.m_variant),
        Target::N => build_n_variant(w.n_variant),
        Target::Z => build_z_variant(w.m_variant, w.n_variant),
        Target::Y => build_y(level()?, w)?.graph,
        Target::H => build_h(level()?, w)?.graph,
        Target::J => build_j(w)?.graph,
    };
    let format: Format = format.parse()?;
    emit(out, &export(&g, format)?)?;
    Ok(Verdict::Ok)
}

fn cmd_color(action: ColorAction, input: &GraphInput) -> Result<Verdict> {
    let g = load_graph(input)?;
    let d = deadline(input.budget_seconds);
    let out = input.report.as_deref();
    let v = match action {
        ColorAction::Find => {
            let c = find_coloring_within(&g, d)?;
            json!({ "schema": SCHEMA, "colorable": c.is_some(), "coloring": c })
        }
        ColorAction::Enumerate => {
            let e = enumerate_colorings(&g, &mut |_| {})?;
            json!({ "schema": SCHEMA, "count": e.raw.to_string(), "up_to_color_permutation": e.quotient.to_string() })
        }
        ColorAction::Resistance => match resistance(&g, input.budget, d) {
            Ok(r) => json!({
                "schema": SCHEMA,
                "status": if r.value.is_some() { "verified" } else { "budget-exceeded" },
                "resistance": r.value,
                "budget": r.budget,
                "witness": r.witness,
                "nodes": r.nodes,
            }),
            Err(Error::BudgetExceeded) => json!({
                "schema": SCHEMA, "status": "budget-exceeded", "budget_seconds": input.budget_seconds,
            }),
            Err(e) => return Err(e),
        },
    };
    emit_json(out, &v)?;
    Ok(Verdict::Ok)
}

fn cmd_flow(
    action: FlowAction,
    input: &GraphInput,
    flow: Option<&Path>,
    n: Option<usize>,
    reg: &Registry,
) -> Result<Verdict> {
    let out = input.report.as_deref();
    match action {
        FlowAction::Check => {
            let g = load_graph(input)?;
            let path = flow.ok_or_else(|| usage("--flow is required"))?;
            let f: Flow = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            let ok = is_flow(&g, &f)?;
            emit_json(
                out,
                &json!({
                    "schema": SCHEMA,
                    "status": if ok { "verified" } else { "refuted" },
                    "zeros": zero_count(&g, &f)?,
                    "violations": violations(&g, &f)?,
                }),
            )?;
            Ok(if ok { Verdict::Ok } else { Verdict::Refuted })
        }
        FlowAction::Resistance => {
            let g = load_graph(input)?;
            let v = match flow_resistance(&g, input.budget, deadline(input.budget_seconds), None) {
                Ok(r) => json!({
                    "schema": SCHEMA,
                    "status": if r.value.is_some() { "verified" } else { "budget-exceeded" },
                    "flow_resistance": r.value,
                    "budget": r.budget,
                    "witness": r.witness,
                    "nodes": r.nodes,
                }),
                Err(Error::BudgetExceeded) => json!({
                    "schema": SCHEMA, "status": "budget-exceeded", "budget_seconds": input.budget_seconds,
                }),
                Err(e) => return Err(e),
            };
            emit_json(out, &v)?;
            Ok(Verdict::Ok)
        }
        FlowAction::Witness => {
            let n = n.filter(|&n| n >= 1).ok_or_else(|| usage("--n >= 1 is required"))?;
            let h = build_h(n, &reg.wiring)?;
            let raw = witness_flow_h(&h)?;
            let ok = is_flow(&h.graph, &raw)? && raw.zero_count() == n;
            // report it against the link ids of `build H <n>` output
            let (_, ids) = canonicalize(&h.graph);
            let f = Flow {
                assign: raw.assign.iter().map(|(l, &x)| (ids[l], x)).collect(),
            };
            emit_json(
                out,
                &json!({
                    "schema": SCHEMA,
                    "status": if ok { "witnessed" } else { "refuted" },
                    "n": n,
                    "zeros": f.zero_count(),
                    "flow": f,
                }),
            )?;
            Ok(if ok { Verdict::Ok } else { Verdict::Refuted })
        }
    }
}

fn cmd_cut(graph: &Path, k: usize, method: &str, out: Option<&Path>) -> Result<Verdict> {
    let g = read_graph(graph)?;
    let method: Method = method.parse()?;
    let r = cyclic_connectivity_at_least(&g, k, method)?;
    emit_json(
        out,
        &json!({
            "schema": SCHEMA,
            "status": if r.holds { "verified" } else { "refuted" },
            "report": r,
        }),
    )?;
    Ok(if r.holds { Verdict::Ok } else { Verdict::Refuted })
}

fn cmd_verify(max_n: usize, budget_seconds: u64, out: Option<&Path>, cli: &Cli, reg: &Registry) -> Result<Verdict> {
    let opts = AllOptions {
        max_n,
        budget: Budget::new(budget_seconds),
        seed: cli.seed,
        jobs: cli.jobs,
        samples: Samples::default(),
    };
    let report = verify_all(&reg.wiring, &opts)?;
    emit(out, &report.to_json(true))?;
    log::info!(
        "{} claims, {} refuted",
        report.claims.len(),
        report.refuted()
    );
    Ok(if report.refuted() == 0 { Verdict::Ok } else { Verdict::Refuted })
}

fn cmd_registry(action: RegistryAction, out: Option<&Path>, path: &Path) -> Result<Verdict> {
    match action {
        RegistryAction::Write => {
            let reg = Registry::frozen()?;
            reg.save(out.unwrap_or(path))?;
        }
        RegistryAction::Check => {
            Registry::load(path)?;
            eprintln!("{}: ok", path.display());
        }
        RegistryAction::Show => emit(out, &Registry::load_or_frozen(path)?.to_json())?,
    }
    Ok(Verdict::Ok)
}

fn dispatch(cli: &Cli) -> Result<Verdict> {
    let path = cli.registry.clone().unwrap_or_else(Registry::default_path);
    if let Command::Registry { action, out } = &cli.command {
        return cmd_registry(*action, out.as_deref(), &path);
    }
    let reg = Registry::load_or_frozen(&path)?;
    match &cli.command {
        Command::Build {
            what,
            index,
            format,
            out,
        } => cmd_build(*what, *index, format, out.as_deref(), &reg),
        Command::Color { action, input } => cmd_color(*action, input),
        Command::Flow { action, input, flow, n } => cmd_flow(*action, input, flow.as_deref(), *n, &reg),
        Command::Cut {
            action: CutAction::Verify,
            graph,
            k,
            method,
            out,
        } => cmd_cut(graph, *k, method, out.as_deref()),
        Command::Verify {
            scope: VerifyScope::All,
            max_n,
            budget_seconds,
            out,
        } => cmd_verify(*max_n, *budget_seconds, out.as_deref(), cli, &reg),
        Command::Registry { .. } => unreachable!("handled above"),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(Verdict::Ok) => 0,
        Ok(Verdict::Refuted) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
