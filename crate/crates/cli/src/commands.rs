//! The three subcommand drivers.

use std::path::PathBuf;
use std::time::Instant;

use rdc_core::dist::{DistanceMatrix, Variable};
use rdc_core::eval::{run_benchmark, BenchmarkConfig, MetricsSummary};
use rdc_core::screen::{default_model_size, screen, Method};
use rdc_core::sim::{generate, ScenarioConfig};
use rdc_core::tau::{solve_tau, TauStatus};

use crate::config::ModelSizeChoice;
use crate::error::{CliError, CliResult};
use crate::io::{self, ResponseSpec};

fn thread_pool(workers: usize) -> CliResult<rayon::ThreadPool> {
    if workers == 0 {
        return Err(CliError::Usage("workers must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Internal(format!("cannot build thread pool: {e}")))
}

fn tuning_scale(c_const: f64, p: usize) -> f64 {
    c_const * (p as f64).ln()
}

pub struct ScreenConfig {
    pub input: PathBuf,
    pub response: ResponseSpec,
    pub methods: Vec<Method>,
    pub c_const: f64,
    pub d: ModelSizeChoice,
    pub workers: usize,
    pub out_dir: PathBuf,
    pub delim: char,
}

pub fn cmd_screen(cfg: &ScreenConfig) -> CliResult<()> {
    let started = Instant::now();
    if !cfg.c_const.is_finite() || cfg.c_const <= 0.0 {
        return Err(CliError::Usage(format!(
            "c_const must be positive, got {}",
            cfg.c_const
        )));
    }
    let data = io::load_csv(&cfg.input, cfg.delim, &cfg.response)?;
    let d = match cfg.d {
        ModelSizeChoice::Auto => default_model_size(data.n(), 1)
            .map_err(CliError::from)?
            .clamp(1, data.p()),
        ModelSizeChoice::Fixed(v) => {
            if v == 0 || v > data.p() {
                return Err(CliError::Usage(format!(
                    "d={v} out of range for p={} features",
                    data.p()
                )));
            }
            v
        }
    };
    let t = tuning_scale(cfg.c_const, data.p());
    if cfg.methods.contains(&Method::Rdc) && (!t.is_finite() || t <= 0.0) {
        return Err(CliError::Usage(format!(
            "tuning scale t = c_const * ln(p) must be positive; got t = {t} with p = {}",
            data.p()
        )));
    }

    let mut manifest: Vec<(String, String)> = vec![
        ("command".into(), "screen".into()),
        ("input".into(), cfg.input.display().to_string()),
        (
            "response".into(),
            match &cfg.response {
                ResponseSpec::Columns(names) => names.join(","),
                ResponseSpec::File(path) => format!("file:{}", path.display()),
            },
        ),
        (
            "methods".into(),
            cfg.methods
                .iter()
                .map(|m| m.label())
                .collect::<Vec<_>>()
                .join(","),
        ),
        ("c_const".into(), io::g17(cfg.c_const)),
        ("d".into(), d.to_string()),
        ("workers".into(), cfg.workers.to_string()),
        ("delimiter".into(), if cfg.delim == '\t' { "tab".into() } else { "comma".into() }),
        ("n".into(), data.n().to_string()),
        ("p".into(), data.p().to_string()),
        ("q".into(), data.q().to_string()),
        ("t".into(), io::g17(t)),
    ];

    let pool = thread_pool(cfg.workers)?;
    for &method in &cfg.methods {
        let result = pool
            .install(|| screen(&data, method, t, d))
            .map_err(CliError::from)?;
        let (file_name, retained_name) = if cfg.methods.len() == 1 {
            ("ranking.csv".to_string(), "retained.csv".to_string())
        } else {
            (
                format!("ranking_{}.csv", method.label()),
                format!("retained_{}.csv", method.label()),
            )
        };
        let path = cfg.out_dir.join(&file_name);
        io::write_ranking(&path, &result, data.feature_names())?;
        io::write_retained(&cfg.out_dir.join(&retained_name), &data, &result)?;
        if let Some(tau_y) = result.tau_y {
            manifest.push(("tau_y".into(), io::g17(tau_y)));
        }
        manifest.push((format!("ranking_file_{}", method.label()), file_name.clone()));
        manifest.push((format!("retained_file_{}", method.label()), retained_name));
        let top = result.ranking[0];
        println!(
            "{method}: top feature {} (utility {:.6}), retained {} of {}, wrote {}",
            data.feature_names()[top],
            result.utilities[top],
            d,
            data.p(),
            path.display()
        );
    }
    manifest.push((
        "wall_time_secs".into(),
        format!("{:.3}", started.elapsed().as_secs_f64()),
    ));
    io::write_manifest(&cfg.out_dir.join("manifest.txt"), &manifest)?;
    Ok(())
}

pub struct TuneConfig {
    pub input: PathBuf,
    pub column: String,
    pub c_const: f64,
    pub delim: char,
}

pub fn cmd_tune(cfg: &TuneConfig) -> CliResult<()> {
    if !cfg.c_const.is_finite() || cfg.c_const <= 0.0 {
        return Err(CliError::Usage(format!(
            "c_const must be positive, got {}",
            cfg.c_const
        )));
    }
    let table = io::read_table(&cfg.input, cfg.delim)?;
    let idx = table.column_index(&cfg.column).ok_or_else(|| {
        CliError::Data(format!(
            "column {:?} not found; available columns: {}",
            cfg.column,
            table.header.join(", ")
        ))
    })?;
    let column = table.column(idx);
    let p = table.header.len();
    let t = tuning_scale(cfg.c_const, p);
    if !t.is_finite() || t <= 0.0 {
        return Err(CliError::Usage(format!(
            "t = c_const * ln(p) must be positive; the input has only {p} column(s)"
        )));
    }
    let dist = DistanceMatrix::from_variable(&Variable::scalar(&column)).map_err(CliError::from)?;
    let diffs = dist.pairwise_diffs();
    let result = solve_tau(&diffs, t).map_err(CliError::from)?;

    println!("column = {}", cfg.column);
    println!("n = {}", column.len());
    println!("N = {}", diffs.len());
    println!("t = {}", io::g17(t));
    println!("target = {}", io::g17(t / column.len() as f64));
    match result.status {
        TauStatus::Degenerate => {
            println!("status = degenerate");
            println!("tau =");
            println!("truncation_fraction =");
            eprintln!(
                "warning: column {:?} is constant; no truncation level exists",
                cfg.column
            );
        }
        status => {
            let tau = result.tau.expect("non-degenerate");
            let above = diffs.values().iter().filter(|&&z| z > tau).count();
            println!(
                "status = {}",
                match status {
                    TauStatus::Solved => "solved",
                    TauStatus::ClampedLow => "clamped-low",
                    TauStatus::Degenerate => unreachable!(),
                }
            );
            println!("tau = {}", io::g17(tau));
            println!("residual = {}", io::g17(result.residual));
            println!(
                "truncation_fraction = {}",
                io::g17(above as f64 / diffs.len() as f64)
            );
        }
    }
    Ok(())
}

pub struct SimulateConfig {
    pub scenario: ScenarioConfig,
    pub methods: Vec<Method>,
    pub reps: usize,
    pub seed: u64,
    pub c_const: f64,
    pub d: ModelSizeChoice,
    pub d1: Option<usize>,
    pub d2: Option<usize>,
    pub dump_data: bool,
    pub workers: usize,
    pub out_dir: PathBuf,
}

pub fn cmd_simulate(cfg: &SimulateConfig) -> CliResult<()> {
    let started = Instant::now();
    let mut bench = BenchmarkConfig::new(
        cfg.scenario,
        cfg.methods.clone(),
        cfg.reps,
        cfg.seed,
    );
    bench.c_const = cfg.c_const;
    bench.d = match cfg.d {
        ModelSizeChoice::Auto => None,
        ModelSizeChoice::Fixed(v) => Some(v),
    };
    bench.d1 = cfg.d1;
    bench.d2 = cfg.d2;

    let pool = thread_pool(cfg.workers)?;
    let summary = pool
        .install(|| run_benchmark(&bench))
        .map_err(CliError::from)?;

    io::write_metrics(&cfg.out_dir.join("metrics.csv"), &summary)?;
    io::write_records(&cfg.out_dir.join("records.csv"), &summary)?;
    io::write_plot(&cfg.out_dir.join("plot.csv"), &summary)?;
    if cfg.dump_data {
        for rep in 0..cfg.reps as u64 {
            let dataset = generate(&cfg.scenario, cfg.seed, rep).map_err(CliError::from)?;
            io::write_dataset(
                &cfg.out_dir.join(format!("data_rep{rep}.csv")),
                &dataset.data,
                ',',
            )?;
        }
    }

    let active: Vec<String> = cfg
        .scenario
        .true_active()
        .iter()
        .map(|j| (j + 1).to_string())
        .collect();
    let manifest: Vec<(String, String)> = vec![
        ("command".into(), "simulate".into()),
        ("scenario".into(), cfg.scenario.scenario.label().into()),
        ("n".into(), cfg.scenario.n.to_string()),
        ("p".into(), cfg.scenario.p.to_string()),
        ("rho".into(), io::g17(cfg.scenario.rho)),
        ("adjacent_active".into(), cfg.scenario.adjacent_active.to_string()),
        ("reps".into(), cfg.reps.to_string()),
        ("seed".into(), cfg.seed.to_string()),
        (
            "methods".into(),
            cfg.methods
                .iter()
                .map(|m| m.label())
                .collect::<Vec<_>>()
                .join(","),
        ),
        ("c_const".into(), io::g17(cfg.c_const)),
        ("d".into(), summary.d.to_string()),
        ("d1".into(), summary.d1.to_string()),
        ("d2".into(), summary.d2.to_string()),
        ("s".into(), summary.active_count.to_string()),
        ("true_active".into(), active.join(",")),
        ("t".into(), io::g17(cfg.c_const * (cfg.scenario.p as f64).ln())),
        ("dump_data".into(), cfg.dump_data.to_string()),
        ("workers".into(), cfg.workers.to_string()),
        (
            "wall_time_secs".into(),
            format!("{:.3}", started.elapsed().as_secs_f64()),
        ),
    ];
    io::write_manifest(&cfg.out_dir.join("manifest.txt"), &manifest)?;

    print_summary_table(cfg, &summary);
    println!("wrote {}", cfg.out_dir.join("metrics.csv").display());
    Ok(())
}

fn print_summary_table(cfg: &SimulateConfig, summary: &MetricsSummary) {
    println!(
        "scenario {}: n={} p={} reps={} seed={} (d={}, d1={}, d2={}, s={})",
        cfg.scenario.scenario,
        cfg.scenario.n,
        cfg.scenario.p,
        cfg.reps,
        cfg.seed,
        summary.d,
        summary.d1,
        summary.d2,
        summary.active_count
    );
    println!(
        "{:<10} {:>8} {:>6} {:>6} {:>7} {:>7}",
        "method", "MMS", "P1", "Pa", "TP_d1", "TP_d2"
    );
    for s in &summary.summaries {
        println!(
            "{:<10} {:>8.1} {:>6.2} {:>6.2} {:>7.2} {:>7.2}",
            s.method.label(),
            s.mms_median,
            s.p1,
            s.pa,
            s.tp_d1,
            s.tp_d2
        );
    }
}
