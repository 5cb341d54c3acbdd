//! Command-line front end: optimize, fold, score, and export-qubo.

use std::collections::HashMap;
use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use codonfold::prelude::*;
use codonfold::solvers::{CvarConfig, SaConfig};

const EXIT_VALIDATION: u8 = 2;
const EXIT_SOLVER: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(
    name = "codonfold",
    version,
    about = "Co-optimize mRNA codon usage and secondary structure"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search codon weights that balance codon adaptation against folding
    /// energy, and report the best sequence found
    Optimize(OptimizeArgs),
    /// Predict the secondary structure of a nucleotide sequence
    Fold(FoldArgs),
    /// Score a fixed (sequence, structure) pair with the energy model
    Score(ScoreArgs),
    /// Write the structure-prediction QUBO of a sequence in text form
    ExportQubo(ExportQuboArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Codon usage table file (bundled H. sapiens table when omitted)
    #[arg(long, global = true)]
    codon_table: Option<PathBuf>,
    /// Energy parameter file (bundled table when omitted)
    #[arg(long, global = true)]
    energy_params: Option<PathBuf>,
    /// Optional key = value configuration file mirroring the long flags
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Base seed for every stochastic component
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Report format
    #[arg(long, global = true, value_enum)]
    output: Option<OutputFormat>,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolverArgs {
    /// Structure solver backend
    #[arg(long, value_enum)]
    solver: Option<SolverKind>,
    /// Simulated-annealing sweeps per restart
    #[arg(long)]
    sweeps: Option<usize>,
    /// Simulated-annealing restarts
    #[arg(long)]
    restarts: Option<usize>,
    /// Samples per variational objective evaluation
    #[arg(long)]
    shots: Option<usize>,
    /// CVaR tail fraction in (0, 1]
    #[arg(long)]
    beta: Option<f64>,
    /// Entangling layers of the variational ansatz
    #[arg(long)]
    depth: Option<usize>,
    /// Iteration cap of the variational angle optimizer
    #[arg(long)]
    cvar_maxiter: Option<usize>,
    /// Conflict penalty weight (derived from the model when omitted)
    #[arg(long)]
    lambda: Option<f64>,
    /// Minimum unpaired bases enclosed by a quartet's inner pair
    #[arg(long)]
    min_loop: Option<usize>,
    /// Reward for adjacent selected quartets
    #[arg(long)]
    stack_reward: Option<f64>,
    /// Penalty weight for U-A terminal quartets
    #[arg(long)]
    ua_penalty: Option<f64>,
    /// Which quartet pair makes a U-A terminal
    #[arg(long, value_enum)]
    ua_rule: Option<UaRuleKind>,
}

#[derive(Args)]
struct OptimizeArgs {
    /// Amino-acid sequence (one-letter codes)
    #[arg(long)]
    aa: Option<String>,
    /// Read the input sequence from a file ('-' reads stdin)
    #[arg(long)]
    input: Option<String>,
    /// Weight of the CAI term in f = alpha * CAI + MFE
    #[arg(long)]
    alpha: Option<f64>,
    /// Initial weight vector, e.g. "0,0,0"
    #[arg(long)]
    theta0: Option<String>,
    /// Rarity term sign rule
    #[arg(long, value_enum)]
    rarity_sign: Option<RaritySignKind>,
    /// Adjacent-codon repeat penalty rule
    #[arg(long, value_enum)]
    repeat_rule: Option<RepeatRuleKind>,
    /// Simplex iteration cap
    #[arg(long)]
    max_iterations: Option<usize>,
    /// Disable the per-sequence fold cache
    #[arg(long)]
    no_cache: bool,
    /// Write every objective evaluation as CSV
    #[arg(long)]
    history: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct FoldArgs {
    /// Nucleotide sequence over A, C, G, U (T is normalized to U)
    #[arg(long)]
    seq: Option<String>,
    /// Read the input sequence from a file ('-' reads stdin)
    #[arg(long)]
    input: Option<String>,
    /// Write the sampled energy distribution as CSV (cvar solver only)
    #[arg(long)]
    histogram: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct ScoreArgs {
    /// Nucleotide sequence over A, C, G, U
    #[arg(long)]
    seq: Option<String>,
    /// Structure in dot-bracket notation
    #[arg(long)]
    structure: String,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct ExportQuboArgs {
    /// Nucleotide sequence over A, C, G, U
    #[arg(long)]
    seq: Option<String>,
    /// Read the input sequence from a file ('-' reads stdin)
    #[arg(long)]
    input: Option<String>,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverKind {
    Exact,
    Sa,
    Cvar,
}

#[derive(Clone, Copy, ValueEnum)]
enum UaRuleKind {
    Outer,
    OuterOrInner,
}

#[derive(Clone, Copy, ValueEnum)]
enum RaritySignKind {
    Log,
    NegLog,
}

#[derive(Clone, Copy, ValueEnum)]
enum RepeatRuleKind {
    MMinusOneSquared,
    MSquaredMinusOne,
}

enum CliError {
    Validation(String),
    Solver(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Solver(_) => EXIT_SOLVER,
            CliError::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Solver(m) | CliError::Io(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> CliError {
        match err {
            Error::InstanceTooLarge { .. }
            | Error::TooManyVariables { .. }
            | Error::QubitBoundExceeded { .. }
            | Error::InfeasibleResult(_) => CliError::Solver(err.to_string()),
            Error::Io(_) => CliError::Io(err.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Optimize(args) => cmd_optimize(args),
        Command::Fold(args) => cmd_fold(args),
        Command::Score(args) => cmd_score(args),
        Command::ExportQubo(args) => cmd_export_qubo(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}

/// `key = value` settings file; '#' starts a comment. Keys mirror the long
/// flag names. Command-line flags take precedence.
struct FileConfig(HashMap<String, String>);

impl FileConfig {
    fn load(path: Option<&Path>) -> CliResult<FileConfig> {
        let mut map = HashMap::new();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let (key, value) = line.split_once('=').ok_or_else(|| {
                    CliError::Validation(format!(
                        "{}: line {}: expected 'key = value'",
                        path.display(),
                        lineno + 1
                    ))
                })?;
                map.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        Ok(FileConfig(map))
    }

    fn get<T: FromStr>(&self, key: &str) -> CliResult<Option<T>> {
        match self.0.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse::<T>().map(Some).map_err(|_| {
                CliError::Validation(format!("config key '{key}': bad value '{raw}'"))
            }),
        }
    }
}

fn resolve<T: FromStr>(cli: Option<T>, file: &FileConfig, key: &str, default: T) -> CliResult<T> {
    Ok(cli.or(file.get(key)?).unwrap_or(default))
}

fn read_sequence_text(arg: Option<String>, input: Option<String>) -> CliResult<String> {
    let raw = match (arg, input) {
        (Some(text), None) => text,
        (None, Some(path)) if path == "-" => {
            let mut buffer = String::new();
            std::io::stdin()
                .read_to_string(&mut buffer)
                .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
            buffer
        }
        (None, Some(path)) => std::fs::read_to_string(&path)
            .map_err(|e| CliError::Io(format!("{path}: {e}")))?,
        (None, None) => {
            let mut buffer = String::new();
            std::io::stdin()
                .read_to_string(&mut buffer)
                .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
            buffer
        }
        (Some(_), Some(_)) => {
            return Err(CliError::Validation(
                "give the sequence either inline or via --input, not both".into(),
            ))
        }
    };
    let text = raw.split_whitespace().collect::<String>();
    if text.is_empty() {
        return Err(CliError::Validation("empty sequence".into()));
    }
    Ok(text)
}

struct Tables {
    table: CodonTable,
    params: EnergyParams,
}

fn load_tables(common: &CommonArgs, file: &FileConfig) -> CliResult<Tables> {
    let table_path: Option<PathBuf> = common
        .codon_table
        .clone()
        .or(file.get::<PathBuf>("codon-table")?);
    let params_path: Option<PathBuf> = common
        .energy_params
        .clone()
        .or(file.get::<PathBuf>("energy-params")?);
    let table = match table_path {
        Some(path) => CodonTable::load(&path)?,
        None => CodonTable::bundled().clone(),
    };
    let params = match params_path {
        Some(path) => EnergyParams::load(&path)?,
        None => EnergyParams::bundled().clone(),
    };
    Ok(Tables { table, params })
}

#[allow(clippy::field_reassign_with_default)]
fn build_pipeline_config(
    solver: &SolverArgs,
    common: &CommonArgs,
    file: &FileConfig,
) -> CliResult<PipelineConfig> {
    let mut config = PipelineConfig::default();
    config.seed = resolve(common.seed, file, "seed", 0)?;
    let solver_kind = match solver.solver {
        Some(kind) => kind,
        None => match file.get::<String>("solver")?.as_deref() {
            None => SolverKind::Exact,
            Some("exact") => SolverKind::Exact,
            Some("sa") => SolverKind::Sa,
            Some("cvar") => SolverKind::Cvar,
            Some(other) => {
                return Err(CliError::Validation(format!(
                    "config key 'solver': unknown backend '{other}'"
                )))
            }
        },
    };
    config.solver = match solver_kind {
        SolverKind::Exact => SolverChoice::Exact,
        SolverKind::Sa => SolverChoice::Sa,
        SolverKind::Cvar => SolverChoice::Cvar,
    };
    config.sa_sweeps = resolve(solver.sweeps, file, "sweeps", SaConfig::default().sweeps)?;
    config.sa_restarts = resolve(solver.restarts, file, "restarts", SaConfig::default().restarts)?;
    let cvar_defaults = CvarConfig::default();
    config.cvar.shots = resolve(solver.shots, file, "shots", cvar_defaults.shots)?;
    config.cvar.beta = resolve(solver.beta, file, "beta", cvar_defaults.beta)?;
    config.cvar.layers = resolve(solver.depth, file, "depth", cvar_defaults.layers)?;
    config.cvar.max_iterations = resolve(
        solver.cvar_maxiter,
        file,
        "cvar-maxiter",
        cvar_defaults.max_iterations,
    )?;
    config.cvar.restarts = resolve(solver.restarts, file, "restarts", cvar_defaults.restarts)?;
    config.penalty_weight = match solver.lambda {
        Some(value) => Some(value),
        None => file.get::<f64>("lambda")?,
    };
    config.min_loop = resolve(solver.min_loop, file, "min-loop", config.min_loop)?;
    config.stack_reward = resolve(solver.stack_reward, file, "stack-reward", config.stack_reward)?;
    config.ua_penalty = resolve(solver.ua_penalty, file, "ua-penalty", config.ua_penalty)?;
    let ua_rule = match solver.ua_rule {
        Some(kind) => Some(match kind {
            UaRuleKind::Outer => "outer".to_string(),
            UaRuleKind::OuterOrInner => "outer-or-inner".to_string(),
        }),
        None => file.get::<String>("ua-rule")?,
    };
    config.ua_rule = match ua_rule.as_deref() {
        None | Some("outer") => UaRule::Outer,
        Some("outer-or-inner") => UaRule::OuterOrInner,
        Some(other) => {
            return Err(CliError::Validation(format!("unknown ua rule '{other}'")))
        }
    };
    Ok(config)
}

fn parse_theta(text: &str) -> CliResult<Theta> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(CliError::Validation(format!(
            "theta0 must be three comma-separated numbers, got '{text}'"
        )));
    }
    let mut values = [0.0f64; 3];
    for (slot, part) in values.iter_mut().zip(&parts) {
        *slot = part
            .parse()
            .map_err(|_| CliError::Validation(format!("bad theta component '{part}'")))?;
    }
    Ok(Theta::new(values[0], values[1], values[2]))
}

fn emit(common: &CommonArgs, file: &FileConfig, json: String, text: String) -> CliResult<()> {
    let format = match common.output {
        Some(f) => f,
        None => match file.get::<String>("output")?.as_deref() {
            None | Some("json") => OutputFormat::Json,
            Some("text") => OutputFormat::Text,
            Some(other) => {
                return Err(CliError::Validation(format!("unknown output format '{other}'")))
            }
        },
    };
    let body = match format {
        OutputFormat::Json => json,
        OutputFormat::Text => text,
    };
    match &common.out {
        Some(path) => std::fs::write(path, body + "\n")
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            println!("{body}");
            Ok(())
        }
    }
}

fn cmd_optimize(args: OptimizeArgs) -> CliResult<()> {
    let file = FileConfig::load(args.common.config.as_deref())?;
    let tables = load_tables(&args.common, &file)?;
    let mut config = build_pipeline_config(&args.solver, &args.common, &file)?;

    config.alpha = resolve(args.alpha, &file, "alpha", config.alpha)?;
    let theta0_text: Option<String> = args.theta0.or(file.get("theta0")?);
    if let Some(text) = theta0_text {
        config.theta0 = parse_theta(&text)?;
    }
    config.nm.max_iterations = resolve(
        args.max_iterations,
        &file,
        "max-iterations",
        config.nm.max_iterations,
    )?;
    config.use_cache = !args.no_cache && resolve(None, &file, "cache", true)?;
    config.scoring.rarity_sign = match args.rarity_sign {
        Some(RaritySignKind::Log) => RaritySign::Log,
        Some(RaritySignKind::NegLog) => RaritySign::NegLog,
        None => match file.get::<String>("rarity-sign")?.as_deref() {
            None | Some("log") => RaritySign::Log,
            Some("neg-log") => RaritySign::NegLog,
            Some(other) => {
                return Err(CliError::Validation(format!("unknown rarity sign '{other}'")))
            }
        },
    };
    config.scoring.repeat_rule = match args.repeat_rule {
        Some(RepeatRuleKind::MMinusOneSquared) => RepeatRule::RunMinusOneSquared,
        Some(RepeatRuleKind::MSquaredMinusOne) => RepeatRule::RunSquaredMinusOne,
        None => match file.get::<String>("repeat-rule")?.as_deref() {
            None | Some("m-minus-one-squared") => RepeatRule::RunMinusOneSquared,
            Some("m-squared-minus-one") => RepeatRule::RunSquaredMinusOne,
            Some(other) => {
                return Err(CliError::Validation(format!("unknown repeat rule '{other}'")))
            }
        },
    };

    let text = read_sequence_text(args.aa, args.input)?;
    let amino = AminoAcidSeq::parse(&text)?;
    let outcome = optimize(&amino, &tables.table, &tables.params, &config)?;

    if let Some(path) = &args.history {
        write_history(path, &outcome.history)?;
    }

    let report = &outcome.report;
    let json = serde_json::to_string_pretty(report).expect("report serializes");
    let text = format!(
        "aa        {}\nnt        {}\nstructure {}\ncai       {:.4}\nmfe       {:.3}\nobjective {:.4}\ntheta     ({:.4}, {:.4}, {:.4})\niterations {} ({} evaluations, {} cache hits, converged: {})",
        report.aa,
        report.nt,
        report.structure,
        report.cai,
        report.mfe,
        report.objective,
        report.theta[0],
        report.theta[1],
        report.theta[2],
        report.iterations,
        report.evaluations,
        report.cache_hits,
        report.converged,
    );
    emit(&args.common, &file, json, text)
}

fn write_history(path: &Path, history: &[EvalRecord]) -> CliResult<()> {
    let mut out = String::from(
        "evaluation,theta_gc,theta_rarity,theta_repeat,sequence,cai,mfe,objective,cache_hit\n",
    );
    for (index, record) in history.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            index,
            record.theta.gc,
            record.theta.rarity,
            record.theta.repeat,
            record.sequence,
            record.cai,
            record.mfe,
            record.objective,
            record.cache_hit,
        ));
    }
    std::fs::write(path, out).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

#[derive(serde::Serialize)]
struct FoldReport {
    schema: u32,
    seq: String,
    structure: String,
    mfe: f64,
    model_energy: f64,
    model_vars: usize,
    feasible: bool,
    solver: SolverChoice,
    seed: u64,
    samples_examined: u64,
}

fn cmd_fold(args: FoldArgs) -> CliResult<()> {
    let file = FileConfig::load(args.common.config.as_deref())?;
    let tables = load_tables(&args.common, &file)?;
    let config = build_pipeline_config(&args.solver, &args.common, &file)?;
    if args.histogram.is_some() && config.solver != SolverChoice::Cvar {
        return Err(CliError::Validation(
            "--histogram requires --solver cvar".into(),
        ));
    }

    let text = read_sequence_text(args.seq, args.input)?;
    let seq = NucleotideSeq::parse(&text)?;
    let model = build_model(
        &seq,
        &tables.params,
        config.stack_reward,
        config.ua_penalty,
        config.min_loop,
        config.ua_rule,
    )?;
    let qubo = to_penalty_qubo(&model, config.penalty_weight)?;
    let seed = config.seed;
    let (result, histogram) = match config.solver {
        SolverChoice::Exact => (solve_exact(&qubo)?, Vec::new()),
        SolverChoice::Sa => (
            solve_sa(
                &qubo,
                &SaConfig { sweeps: config.sa_sweeps, restarts: config.sa_restarts, seed },
            ),
            Vec::new(),
        ),
        SolverChoice::Cvar => {
            let output = solve_cvar_variational(
                &qubo,
                &CvarConfig {
                    beta: config.cvar.beta,
                    shots: config.cvar.shots,
                    layers: config.cvar.layers,
                    max_iterations: config.cvar.max_iterations,
                    restarts: config.cvar.restarts,
                    seed,
                },
            )?;
            (output.result, output.histogram)
        }
    };

    if let Some(path) = &args.histogram {
        write_histogram(path, &histogram)?;
    }

    let bits: Vec<bool> = result.bitstring.chars().map(|c| c == '1').collect();
    let pairs = match decode(&bits, &model.universe) {
        Decoded::Feasible(pairs) => pairs,
        Decoded::Infeasible { violated } => {
            return Err(CliError::Solver(format!(
                "solver returned an infeasible selection ({} violated conflicts)",
                violated.len()
            )))
        }
    };
    let structure = render_dot_bracket(&pairs);
    let mfe = mfe_eval(&seq, &pairs, &tables.params)?;
    let report = FoldReport {
        schema: 1,
        seq: seq.to_string(),
        structure: structure.clone(),
        mfe,
        model_energy: result.energy,
        model_vars: model.num_vars(),
        feasible: result.feasible,
        solver: config.solver,
        seed,
        samples_examined: result.samples_examined,
    };
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    let text = format!("{structure}\nMFE {mfe:.3} kcal/mol ({} variables)", model.num_vars());
    emit(&args.common, &file, json, text)
}

fn write_histogram(path: &Path, histogram: &[SampleRecord]) -> CliResult<()> {
    // one row per distinct sampled energy
    let mut bins: std::collections::BTreeMap<String, u64> = std::collections::BTreeMap::new();
    let mut order: Vec<(f64, String)> = Vec::new();
    for record in histogram {
        let key = format!("{}", record.energy);
        if !bins.contains_key(&key) {
            order.push((record.energy, key.clone()));
        }
        *bins.entry(key).or_insert(0) += record.count;
    }
    order.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out = String::from("energy,count\n");
    for (_, key) in order {
        out.push_str(&format!("{},{}\n", key, bins[&key]));
    }
    std::fs::write(path, out).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

#[derive(serde::Serialize)]
struct ScoreReport {
    schema: u32,
    seq: String,
    structure: String,
    mfe: f64,
    breakdown: codonfold::energy::EnergyBreakdown,
}

fn cmd_score(args: ScoreArgs) -> CliResult<()> {
    let file = FileConfig::load(args.common.config.as_deref())?;
    let tables = load_tables(&args.common, &file)?;
    let text = read_sequence_text(args.seq, None)?;
    let seq = NucleotideSeq::parse(&text)?;
    let pairs = parse_dot_bracket(&args.structure)?;
    if pairs.seq_len() != seq.len() {
        return Err(CliError::Validation(format!(
            "structure length {} does not match sequence length {}",
            pairs.seq_len(),
            seq.len()
        )));
    }
    let breakdown = energy_breakdown(&seq, &pairs, &tables.params)?;
    let report = ScoreReport {
        schema: 1,
        seq: seq.to_string(),
        structure: args.structure.clone(),
        mfe: breakdown.total,
        breakdown,
    };
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    let mut text = String::new();
    for term in &report.breakdown.loops {
        text.push_str(&format!(
            "{:?} closing={:?} unpaired={} energy={:+.2}\n",
            term.kind, term.closing, term.unpaired, term.energy
        ));
    }
    for penalty in &report.breakdown.terminal_penalties {
        text.push_str(&format!(
            "terminal penalty at {:?} energy={:+.2}\n",
            penalty.pair, penalty.energy
        ));
    }
    text.push_str(&format!("total {:+.3} kcal/mol", report.mfe));
    emit(&args.common, &file, json, text)
}

fn cmd_export_qubo(args: ExportQuboArgs) -> CliResult<()> {
    let file = FileConfig::load(args.common.config.as_deref())?;
    let tables = load_tables(&args.common, &file)?;
    let config = build_pipeline_config(&args.solver, &args.common, &file)?;
    let text = read_sequence_text(args.seq, args.input)?;
    let seq = NucleotideSeq::parse(&text)?;
    let model = build_model(
        &seq,
        &tables.params,
        config.stack_reward,
        config.ua_penalty,
        config.min_loop,
        config.ua_rule,
    )?;
    let qubo = to_penalty_qubo(&model, config.penalty_weight)?;
    let body = qubo.to_text();
    match &args.common.out {
        Some(path) => std::fs::write(path, &body)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}
