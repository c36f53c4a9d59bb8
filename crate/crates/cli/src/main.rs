//! `bgrover`: tables, sweeps, searches and circuit export for binomial
//! amplitude amplification.
//!
//! Exit codes: 0 success, 2 usage error, 3 infeasible request.

use std::collections::BTreeMap;
use std::process::ExitCode;

use binomial_grover::math::{self, Convention};
use binomial_grover::search::{self, adaptive_search, adaptive_succeeded};
use binomial_grover::{
    amplification_program, export_gate_list, sweep, AdaptiveSchedule, BasisPattern, DictionarySpec,
    OracleSpec, Pipeline, RunStatus, Superposition, ValuePredicate,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use bgrover_cli::angle;
use bgrover_cli::output::{self, Payload, Precision, ReportEnvelope};

#[derive(Parser)]
#[command(
    name = "bgrover",
    version,
    about = "Binomial amplitude amplification toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analytic plan (ω_max, j_ideal, ω_ideal) for a weight-k target.
    Plan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "ceil")]
        convention: Convention,
    },
    /// Iteration and amplitude tables.
    Table {
        #[command(subcommand)]
        table: TableCmd,
    },
    /// Plot series as numeric rows.
    Sweep {
        #[command(subcommand)]
        sweep: SweepCmd,
    },
    /// Simulated searches with sampled histograms.
    Search {
        #[command(subcommand)]
        search: SearchCmd,
    },
    /// Print a circuit as a gate list.
    Export {
        #[command(subcommand)]
        export: ExportCmd,
    },
}

#[derive(Args, Clone, Copy)]
struct Format {
    #[arg(long, value_enum, default_value = "csv")]
    out: Out,
    /// Print floats with 17 significant digits instead of 6.
    #[arg(long)]
    full_precision: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Out {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum TableCmd {
    /// Per-weight iteration counts: k, j_uniform, j_ideal(round), j_ideal(ceil).
    Table1 {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        fmt: Format,
    },
    /// Initial per-weight amplitudes: k, binomial, uniform.
    Amplitudes {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
        /// Keep only weights whose amplitude exceeds the uniform one.
        #[arg(long)]
        favored: bool,
        #[command(flatten)]
        fmt: Format,
    },
}

#[derive(Subcommand)]
enum SweepCmd {
    /// Iteration counts across register sizes.
    #[command(name = "qubits_vs_iterations", alias = "qubits-vs-iterations")]
    QubitsVsIterations {
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 16)]
        n_max: usize,
        #[command(flatten)]
        fmt: Format,
    },
    /// Target probability per iteration count and weight.
    #[command(
        name = "iterations_vs_probability",
        alias = "iterations-vs-probability"
    )]
    IterationsVsProbability {
        #[arg(long)]
        n: usize,
        /// Defaults to the uniform iteration count for n.
        #[arg(long)]
        j_max: Option<usize>,
        #[command(flatten)]
        fmt: Format,
    },
    /// Simulated uniform vs binomial (ω_max) at a fixed depth.
    Compare {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        target: String,
        #[arg(long)]
        j: usize,
        #[command(flatten)]
        fmt: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Uniform,
    Binomial,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum, default_value = "uniform")]
    mode: ModeArg,
    /// Rotation for binomial mode (`P/Qpi` or radians).
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<String>,
    /// Grover iterations.
    #[arg(long)]
    j: Option<usize>,
}

#[derive(Args)]
struct Sampling {
    #[arg(long, default_value_t = 1024)]
    shots: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    out: Out,
}

#[derive(Args)]
struct DictArgs {
    /// Comma-separated integers, element j selected by index bit j.
    #[arg(
        long,
        allow_hyphen_values = true,
        value_delimiter = ',',
        required = true
    )]
    array: Vec<i64>,
    #[arg(long)]
    value_bits: usize,
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Unstructured set search for one basis label.
    Set {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        target: String,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        sampling: Sampling,
        /// Print the final amplitudes (`label re im`) instead of a report.
        #[arg(long)]
        dump: bool,
    },
    /// Array element retrieval by index.
    Retrieve {
        #[command(flatten)]
        dict: DictArgs,
        #[arg(long)]
        index: String,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Array element search by value predicate.
    Value {
        #[command(flatten)]
        dict: DictArgs,
        /// `negative` or `equals:V`.
        #[arg(long, allow_hyphen_values = true)]
        predicate: String,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        sampling: Sampling,
        /// Random (j, ω) rounds with classical verification.
        #[arg(long)]
        adaptive: bool,
        #[arg(long, default_value_t = 8.0 / 7.0)]
        growth: f64,
        #[arg(long, default_value_t = 64)]
        max_rounds: usize,
        /// Comma-separated rotation candidates.
        #[arg(long, value_delimiter = ',', default_value = "15/32pi,1/2pi,17/32pi")]
        candidates: Vec<String>,
    },
}

#[derive(Subcommand)]
enum ExportCmd {
    /// Set-search amplification circuit.
    Set {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        target: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Dictionary preparation circuit.
    Dictionary {
        #[command(flatten)]
        dict: DictArgs,
        #[arg(long, value_enum, default_value = "uniform")]
        mode: ModeArg,
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Infeasible(String),
}

impl From<binomial_grover::Error> for Failure {
    fn from(e: binomial_grover::Error) -> Self {
        use binomial_grover::Error as E;
        match e {
            E::NoSolution { .. } | E::InfeasibleAngle(_) => Failure::Infeasible(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type CmdResult = Result<(String, bool), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((text, feasible)) => {
            print!("{text}");
            if feasible {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Infeasible(msg)) => {
            eprintln!("infeasible: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cmd: Command) -> CmdResult {
    match cmd {
        Command::Plan { n, k, convention } => {
            let plan = math::plan(n, k, convention)?;
            let params = params([
                ("n", json!(n)),
                ("k", json!(k)),
                ("convention", json!(convention)),
            ]);
            Ok((
                ReportEnvelope::new("plan", params, Payload::Plan(plan)).to_json(),
                true,
            ))
        }
        Command::Table { table } => run_table(table),
        Command::Sweep { sweep } => run_sweep(sweep),
        Command::Search { search } => run_search(search),
        Command::Export { export } => run_export(export),
    }
}

fn params<const N: usize>(items: [(&str, Value); N]) -> BTreeMap<String, Value> {
    items.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn angle(text: &str) -> Result<f64, Failure> {
    angle::parse_angle(text).map_err(Failure::Usage)
}

fn pattern(bits: &str, width: usize) -> Result<BasisPattern, Failure> {
    let p = BasisPattern::parse(bits)?;
    if p.n_bits() != width {
        return Err(usage(format!(
            "pattern {bits} has {} bits, expected {width}",
            p.n_bits()
        )));
    }
    Ok(p)
}

fn emit(
    fmt: Format,
    command: &str,
    params: BTreeMap<String, Value>,
    payload: Payload,
    csv: String,
) -> CmdResult {
    Ok(match fmt.out {
        Out::Csv => (csv, true),
        Out::Json => (
            ReportEnvelope::new(command, params, payload).to_json(),
            true,
        ),
    })
}

fn run_table(cmd: TableCmd) -> CmdResult {
    match cmd {
        TableCmd::Table1 { n, fmt } => {
            let rows = sweep::table1(n)?;
            let csv = output::iterations_csv(&rows, false);
            emit(
                fmt,
                "table table1",
                params([("n", json!(n))]),
                Payload::Iterations(rows),
                csv,
            )
        }
        TableCmd::Amplitudes {
            n,
            omega,
            favored,
            fmt,
        } => {
            let w = angle(&omega)?;
            let rows = sweep::amplitude_table(n, w, favored)?;
            let csv = output::amplitudes_csv(&rows, Precision::new(fmt.full_precision));
            let p = params([
                ("n", json!(n)),
                ("omega", json!(omega)),
                ("omega_radians", json!(w)),
                ("favored", json!(favored)),
            ]);
            emit(fmt, "table amplitudes", p, Payload::Amplitudes(rows), csv)
        }
    }
}

fn run_sweep(cmd: SweepCmd) -> CmdResult {
    match cmd {
        SweepCmd::QubitsVsIterations { n_min, n_max, fmt } => {
            let rows = sweep::qubits_vs_iterations(n_min, n_max)?;
            let csv = output::iterations_csv(&rows, true);
            let p = params([("n_min", json!(n_min)), ("n_max", json!(n_max))]);
            emit(
                fmt,
                "sweep qubits_vs_iterations",
                p,
                Payload::Iterations(rows),
                csv,
            )
        }
        SweepCmd::IterationsVsProbability { n, j_max, fmt } => {
            let j_max = j_max.unwrap_or_else(|| math::j_uniform(n));
            let rows = sweep::iterations_vs_probability(n, j_max)?;
            let csv = output::probabilities_csv(&rows, Precision::new(fmt.full_precision));
            let p = params([("n", json!(n)), ("j_max", json!(j_max))]);
            emit(
                fmt,
                "sweep iterations_vs_probability",
                p,
                Payload::Probabilities(rows),
                csv,
            )
        }
        SweepCmd::Compare { n, target, j, fmt } => {
            let t = pattern(&target, n)?;
            let rows = sweep::compare(&t, j)?;
            let csv = output::compare_csv(&rows, Precision::new(fmt.full_precision));
            let p = params([("n", json!(n)), ("target", json!(target)), ("j", json!(j))]);
            emit(fmt, "sweep compare", p, Payload::Compare(rows), csv)
        }
    }
}

/// Resolves mode, ω and j for a single-target run of weight `k` on `n` qubits.
///
/// Binomial mode without ω uses the ceil plan (when j is also absent) or ω_max.
fn resolve_single(
    run: &RunArgs,
    n: usize,
    k: usize,
) -> Result<(Superposition, usize, Option<math::GroverPlan>), Failure> {
    match run.mode {
        ModeArg::Uniform => Ok((
            Superposition::Uniform,
            run.j.unwrap_or_else(|| math::j_uniform(n)),
            None,
        )),
        ModeArg::Binomial => {
            let plan = math::plan(n, k, Convention::Ceil)?;
            let (w, j) = match (&run.omega, run.j) {
                (Some(w), j) => (angle(w)?, j.unwrap_or(plan.j_ideal)),
                (None, Some(j)) => (plan.omega_max, j),
                (None, None) => (plan.omega(), plan.j_ideal),
            };
            Ok((Superposition::Binomial(w), j, Some(plan)))
        }
    }
}

fn run_params(
    run: &RunArgs,
    mode: Superposition,
    j: usize,
    s: &Sampling,
) -> Vec<(&'static str, Value)> {
    vec![
        ("mode", json!(mode.name())),
        ("omega", json!(run.omega)),
        ("omega_radians", json!(mode.omega())),
        ("j", json!(j)),
        ("shots", json!(s.shots)),
        ("seed", json!(s.seed)),
    ]
}

fn report_out(
    command: &str,
    mut p: BTreeMap<String, Value>,
    extra: Vec<(&str, Value)>,
    report: binomial_grover::RunReport,
    out: Out,
) -> CmdResult {
    p.extend(extra.into_iter().map(|(k, v)| (k.to_string(), v)));
    let feasible = report.status == RunStatus::Ok;
    let text = match out {
        Out::Csv => output::histogram_csv(&report),
        Out::Json => ReportEnvelope::new(command, p, Payload::Run(report)).to_json(),
    };
    Ok((text, feasible))
}

fn dictionary(dict: &DictArgs, mode: Superposition) -> Result<DictionarySpec, Failure> {
    Ok(DictionarySpec::new(
        dict.array.clone(),
        dict.value_bits,
        mode,
    )?)
}

fn parse_predicate(text: &str) -> Result<ValuePredicate, Failure> {
    match text.split_once(':') {
        None if text == "negative" => Ok(ValuePredicate::Negative),
        Some(("equals", v)) => v
            .trim()
            .parse()
            .map(ValuePredicate::Equals)
            .map_err(|_| usage(format!("bad predicate value {v:?}"))),
        _ => Err(usage(format!(
            "unknown predicate {text:?} (expected negative or equals:V)"
        ))),
    }
}

fn run_search(cmd: SearchCmd) -> CmdResult {
    match cmd {
        SearchCmd::Set {
            n,
            target,
            run,
            sampling,
            dump,
        } => {
            let t = pattern(&target, n)?;
            let (mode, j, plan) = resolve_single(&run, n, t.hamming_weight())?;
            if dump {
                let pipeline = match mode {
                    Superposition::Uniform => Pipeline::Uniform,
                    Superposition::Binomial(w) => Pipeline::BGjA(w),
                };
                let state = amplification_program(pipeline, &OracleSpec::exact(t), j)?.execute()?;
                return Ok((state.dump(), true));
            }
            let mut report = search::set_search(&t, mode, j, sampling.shots, sampling.seed)?;
            report.plan = plan;
            let p = params([("n", json!(n)), ("target", json!(target))]);
            report_out(
                "search set",
                p,
                run_params(&run, mode, j, &sampling),
                report,
                sampling.out,
            )
        }
        SearchCmd::Retrieve {
            dict,
            index,
            run,
            sampling,
        } => {
            let d = dict.array.len();
            let t = pattern(&index, d)?;
            let (mode, j, plan) = resolve_single(&run, d, t.hamming_weight())?;
            let spec = dictionary(&dict, mode)?;
            let mut report = search::array_retrieve(&spec, &t, j, sampling.shots, sampling.seed)?;
            report.plan = plan;
            let p = params([
                ("array", json!(dict.array)),
                ("value_bits", json!(dict.value_bits)),
                ("index", json!(index)),
            ]);
            report_out(
                "search retrieve",
                p,
                run_params(&run, mode, j, &sampling),
                report,
                sampling.out,
            )
        }
        SearchCmd::Value {
            dict,
            predicate,
            run,
            sampling,
            adaptive,
            growth,
            max_rounds,
            candidates,
        } => {
            let pred = parse_predicate(&predicate)?;
            let p = params([
                ("array", json!(dict.array)),
                ("value_bits", json!(dict.value_bits)),
                ("predicate", json!(predicate)),
            ]);
            if adaptive {
                let schedule = AdaptiveSchedule {
                    growth_factor: growth,
                    max_rounds,
                    omega_candidates: candidates
                        .iter()
                        .map(|c| angle(c))
                        .collect::<Result<_, _>>()?,
                    seed: sampling.seed,
                };
                let spec = dictionary(&dict, Superposition::Uniform)?;
                let rounds = adaptive_search(&spec, pred, &schedule)?;
                let ok = adaptive_succeeded(&rounds);
                let mut p = p;
                p.insert("adaptive".into(), json!(true));
                p.insert("schedule".into(), json!(schedule));
                let text = match sampling.out {
                    Out::Csv => output::rounds_csv(&rounds, Precision::new(false)),
                    Out::Json => {
                        ReportEnvelope::new("search value", p, Payload::Adaptive(rounds)).to_json()
                    }
                };
                return Ok((text, ok));
            }
            let mode = match run.mode {
                ModeArg::Uniform => Superposition::Uniform,
                ModeArg::Binomial => {
                    let w = run
                        .omega
                        .as_deref()
                        .ok_or(binomial_grover::Error::MissingOmega)?;
                    Superposition::Binomial(angle(w)?)
                }
            };
            let j = run.j.unwrap_or(1);
            let spec = dictionary(&dict, mode)?;
            let report = search::array_value_search(&spec, pred, j, sampling.shots, sampling.seed)?;
            report_out(
                "search value",
                p,
                run_params(&run, mode, j, &sampling),
                report,
                sampling.out,
            )
        }
    }
}

fn run_export(cmd: ExportCmd) -> CmdResult {
    match cmd {
        ExportCmd::Set { n, target, run } => {
            let t = pattern(&target, n)?;
            let (mode, j, _) = resolve_single(&run, n, t.hamming_weight())?;
            let pipeline = match mode {
                Superposition::Uniform => Pipeline::Uniform,
                Superposition::Binomial(w) => Pipeline::BGjA(w),
            };
            let mut program = amplification_program(pipeline, &OracleSpec::exact(t), j)?;
            program.name = format!("set_search_{}_{}", mode.name(), target);
            Ok((export_gate_list(&program), true))
        }
        ExportCmd::Dictionary { dict, mode, omega } => {
            let sup = match mode {
                ModeArg::Uniform => Superposition::Uniform,
                ModeArg::Binomial => {
                    let w = omega
                        .as_deref()
                        .ok_or(binomial_grover::Error::MissingOmega)?;
                    Superposition::Binomial(angle(w)?)
                }
            };
            let program = dictionary(&dict, sup)?.program()?;
            Ok((export_gate_list(&program), true))
        }
    }
}
