//! `rdc` — feature screening with robust distance correlation.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rdc_cli::commands::{cmd_screen, cmd_simulate, cmd_tune, ScreenConfig, SimulateConfig, TuneConfig};
use rdc_cli::config::{default_workers, parse_methods, FileConfig, ModelSizeChoice};
use rdc_cli::error::{CliError, CliResult};
use rdc_cli::io::ResponseSpec;
use rdc_core::sim::{Scenario, ScenarioConfig};

#[derive(Parser)]
#[command(
    name = "rdc",
    version,
    about = "Feature screening by distance correlation with tail-robust truncation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank the features of a delimited dataset by marginal dependence with
    /// the response and retain the top d
    Screen(ScreenArgs),
    /// Diagnose the truncation level of one column
    Tune(TuneArgs),
    /// Run a seeded benchmark scenario and summarize screening metrics
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct ScreenArgs {
    /// Input table with a header row
    #[arg(long)]
    input: Option<PathBuf>,
    /// Comma-separated response column name(s) in the input
    #[arg(long)]
    response: Option<String>,
    /// Separate response file; all of its columns form the response
    #[arg(long)]
    response_file: Option<PathBuf>,
    /// Comma-separated methods: rdc, dc, pearson
    #[arg(long)]
    methods: Option<String>,
    /// Constant C in the tuning scale t = C ln p
    #[arg(long)]
    c_const: Option<f64>,
    /// Retained count: "auto" (floor(n / ln n)) or an integer
    #[arg(long)]
    d: Option<String>,
    /// Worker threads
    #[arg(long)]
    workers: Option<usize>,
    /// Output directory
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Tab-separated input instead of commas
    #[arg(long)]
    tsv: bool,
    /// Flat key = value config file; CLI flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct TuneArgs {
    /// Input table with a header row
    #[arg(long)]
    input: Option<PathBuf>,
    /// Column to tune
    #[arg(long)]
    column: Option<String>,
    /// Constant C in the tuning scale t = C ln p (p = column count)
    #[arg(long)]
    c_const: Option<f64>,
    /// Tab-separated input instead of commas
    #[arg(long)]
    tsv: bool,
    /// Flat key = value config file; CLI flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Scenario: Ia, Ib, IIa, IIb, IIIa, IIIb
    #[arg(long)]
    scenario: Option<String>,
    /// Sample count
    #[arg(long)]
    n: Option<usize>,
    /// Feature count
    #[arg(long)]
    p: Option<usize>,
    /// AR(1) predictor correlation
    #[arg(long)]
    rho: Option<f64>,
    /// Replicate count
    #[arg(long)]
    reps: Option<usize>,
    /// Comma-separated methods: rdc, dc, pearson
    #[arg(long)]
    methods: Option<String>,
    /// Base seed; replicate r uses the stream hash(seed, r)
    #[arg(long)]
    seed: Option<u64>,
    /// Constant C in the tuning scale t = C ln p
    #[arg(long)]
    c_const: Option<f64>,
    /// Retained count: "auto" (floor(n / ln n)) or an integer
    #[arg(long)]
    d: Option<String>,
    /// First enlarged model size (default floor(2n / ln n))
    #[arg(long)]
    d1: Option<usize>,
    /// Second enlarged model size (default floor(3n / ln n))
    #[arg(long)]
    d2: Option<usize>,
    /// Scenario II: place the active pair at indices 1,2 instead of evenly
    #[arg(long)]
    adjacent_active: bool,
    /// Also write each replicate's dataset as CSV
    #[arg(long)]
    dump_data: bool,
    /// Worker threads
    #[arg(long)]
    workers: Option<usize>,
    /// Output directory
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Flat key = value config file; CLI flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
}

fn resolve_screen(args: ScreenArgs) -> CliResult<ScreenConfig> {
    let file = FileConfig::load(args.config.as_deref())?;
    let input = args
        .input
        .or_else(|| file.get_path("input"))
        .ok_or_else(|| CliError::Usage("missing --input".into()))?;
    let response_cols = args.response.or_else(|| file.get_string("response"));
    let response_file = args.response_file.or_else(|| file.get_path("response_file"));
    let response = match (response_cols, response_file) {
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "--response and --response-file are mutually exclusive".into(),
            ))
        }
        (Some(cols), None) => ResponseSpec::Columns(
            cols.split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect(),
        ),
        (None, Some(path)) => ResponseSpec::File(path),
        (None, None) => {
            return Err(CliError::Usage(
                "missing response: pass --response <cols> or --response-file <path>".into(),
            ))
        }
    };
    let methods = parse_methods(
        &args
            .methods
            .or_else(|| file.get_string("methods"))
            .unwrap_or_else(|| "rdc".into()),
    )?;
    let d = ModelSizeChoice::parse(
        &args
            .d
            .or_else(|| file.get_string("d"))
            .unwrap_or_else(|| "auto".into()),
    )?;
    Ok(ScreenConfig {
        input,
        response,
        methods,
        c_const: args.c_const.or(file.get("c_const")?).unwrap_or(1.0),
        d,
        workers: args.workers.or(file.get("workers")?).unwrap_or_else(default_workers),
        out_dir: args
            .out_dir
            .or_else(|| file.get_path("out_dir"))
            .unwrap_or_else(|| PathBuf::from("out")),
        delim: if args.tsv || file.get_flag("tsv")? { '\t' } else { ',' },
    })
}

fn resolve_tune(args: TuneArgs) -> CliResult<TuneConfig> {
    let file = FileConfig::load(args.config.as_deref())?;
    Ok(TuneConfig {
        input: args
            .input
            .or_else(|| file.get_path("input"))
            .ok_or_else(|| CliError::Usage("missing --input".into()))?,
        column: args
            .column
            .or_else(|| file.get_string("column"))
            .ok_or_else(|| CliError::Usage("missing --column".into()))?,
        c_const: args.c_const.or(file.get("c_const")?).unwrap_or(1.0),
        delim: if args.tsv || file.get_flag("tsv")? { '\t' } else { ',' },
    })
}

fn resolve_simulate(args: SimulateArgs) -> CliResult<SimulateConfig> {
    let file = FileConfig::load(args.config.as_deref())?;
    let scenario_name = args
        .scenario
        .or_else(|| file.get_string("scenario"))
        .ok_or_else(|| CliError::Usage("missing --scenario".into()))?;
    let scenario = Scenario::parse(&scenario_name).map_err(CliError::from)?;
    let n = args
        .n
        .or(file.get("n")?)
        .ok_or_else(|| CliError::Usage("missing --n".into()))?;
    let p = args
        .p
        .or(file.get("p")?)
        .ok_or_else(|| CliError::Usage("missing --p".into()))?;
    let mut scenario_cfg = ScenarioConfig::new(scenario, n, p);
    scenario_cfg.rho = args.rho.or(file.get("rho")?).unwrap_or(0.5);
    scenario_cfg.adjacent_active = args.adjacent_active || file.get_flag("adjacent_active")?;
    let methods = parse_methods(
        &args
            .methods
            .or_else(|| file.get_string("methods"))
            .unwrap_or_else(|| "rdc,dc,pearson".into()),
    )?;
    let d = ModelSizeChoice::parse(
        &args
            .d
            .or_else(|| file.get_string("d"))
            .unwrap_or_else(|| "auto".into()),
    )?;
    Ok(SimulateConfig {
        scenario: scenario_cfg,
        methods,
        reps: args.reps.or(file.get("reps")?).unwrap_or(100),
        seed: args.seed.or(file.get("seed")?).unwrap_or(0),
        c_const: args.c_const.or(file.get("c_const")?).unwrap_or(1.0),
        d,
        d1: args.d1.or(file.get("d1")?),
        d2: args.d2.or(file.get("d2")?),
        dump_data: args.dump_data || file.get_flag("dump_data")?,
        workers: args.workers.or(file.get("workers")?).unwrap_or_else(default_workers),
        out_dir: args
            .out_dir
            .or_else(|| file.get_path("out_dir"))
            .unwrap_or_else(|| PathBuf::from("out")),
    })
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Screen(args) => cmd_screen(&resolve_screen(args)?),
        Command::Tune(args) => cmd_tune(&resolve_tune(args)?),
        Command::Simulate(args) => cmd_simulate(&resolve_simulate(args)?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
