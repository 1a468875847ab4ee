//! Replicated benchmarks: generate, screen, and summarize.
//!
//! Replicates run concurrently on independent streams; records are kept in
//! replicate order so the aggregation (and any file written from it) never
//! depends on scheduling.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::screen::{default_model_size, screen, Method};
use crate::sim::{generate, ScenarioConfig};

/// One benchmark run: scenario, methods, replicate count and knobs.
#[derive(Debug, Clone)]
pub struct BenchmarkConfig {
    pub scenario: ScenarioConfig,
    pub methods: Vec<Method>,
    pub replicates: usize,
    pub seed: u64,
    /// Constant in the tuning scale `t = c_const * ln p`.
    pub c_const: f64,
    /// Retained counts; `None` picks `floor(m * n / ln n)` with
    /// multipliers 1, 2, 3.
    pub d: Option<usize>,
    pub d1: Option<usize>,
    pub d2: Option<usize>,
}

impl BenchmarkConfig {
    pub fn new(scenario: ScenarioConfig, methods: Vec<Method>, replicates: usize, seed: u64) -> Self {
        Self {
            scenario,
            methods,
            replicates,
            seed,
            c_const: 1.0,
            d: None,
            d1: None,
            d2: None,
        }
    }

    /// Resolve `(d, d1, d2)` against the scenario sizes.
    pub fn model_sizes(&self) -> Result<(usize, usize, usize)> {
        let n = self.scenario.n;
        let d = match self.d {
            Some(v) => v,
            None => default_model_size(n, 1)?,
        };
        let d1 = match self.d1 {
            Some(v) => v,
            None => default_model_size(n, 2)?,
        };
        let d2 = match self.d2 {
            Some(v) => v,
            None => default_model_size(n, 3)?,
        };
        if d == 0 || d > d1 || d1 > d2 || d2 > self.scenario.p {
            return Err(Error::InvalidParameter {
                name: "model sizes",
                reason: format!(
                    "need 1 <= d <= d1 <= d2 <= p, got d={d}, d1={d1}, d2={d2}, p={}",
                    self.scenario.p
                ),
            });
        }
        Ok((d, d1, d2))
    }
}

/// Raw outcome of one (replicate, method) screen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReplicateRecord {
    pub replicate: u64,
    pub method: Method,
    /// Largest rank among the true active predictors.
    pub mms: usize,
    /// Active predictors inside the top `d`, `d1`, `d2`.
    pub hits_d: usize,
    pub hits_d1: usize,
    pub hits_d2: usize,
}

/// Aggregated metrics for one method.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MethodSummary {
    pub method: Method,
    /// Median minimum model size over replicates (mean of the two middle
    /// values when the count is even).
    pub mms_median: f64,
    /// Fraction of replicates whose top-d set hits at least one active
    /// predictor.
    pub p1: f64,
    /// Fraction whose top-d set contains every active predictor.
    pub pa: f64,
    /// Mean active count inside the top d1 / d2.
    pub tp_d1: f64,
    pub tp_d2: f64,
}

/// Full benchmark output: per-method summaries plus the raw records they
/// were computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsSummary {
    pub summaries: Vec<MethodSummary>,
    pub records: Vec<ReplicateRecord>,
    pub d: usize,
    pub d1: usize,
    pub d2: usize,
    /// Number of true active predictors.
    pub active_count: usize,
}

fn rank_positions(ranking: &[usize], active: &[usize]) -> Result<Vec<usize>> {
    if active.is_empty() {
        return Err(Error::EmptyActiveSet);
    }
    let p = ranking.len();
    let mut position = vec![usize::MAX; p];
    for (pos, &feature) in ranking.iter().enumerate() {
        position[feature] = pos + 1; // ranks are 1-based
    }
    active
        .iter()
        .map(|&j| {
            if j >= p || position[j] == usize::MAX {
                Err(Error::ActiveIndexOutOfRange { index: j, p })
            } else {
                Ok(position[j])
            }
        })
        .collect()
}

/// Largest rank among the true active predictors: the smallest model size
/// that would retain all of them.
pub fn minimum_model_size(ranking: &[usize], active: &[usize]) -> Result<usize> {
    let positions = rank_positions(ranking, active)?;
    Ok(positions.into_iter().max().expect("active is nonempty"))
}

/// Hit summary of one ranking at model sizes `d <= d1 <= d2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReplicateMetrics {
    /// At least one active predictor in the top `d`.
    pub hit_one: bool,
    /// Every active predictor in the top `d`.
    pub hit_all: bool,
    pub tp_d1: usize,
    pub tp_d2: usize,
}

pub fn replicate_metrics(
    ranking: &[usize],
    active: &[usize],
    d: usize,
    d1: usize,
    d2: usize,
) -> Result<ReplicateMetrics> {
    if !(d <= d1 && d1 <= d2 && d2 <= ranking.len()) {
        return Err(Error::InvalidParameter {
            name: "model sizes",
            reason: format!(
                "need d <= d1 <= d2 <= p, got d={d}, d1={d1}, d2={d2}, p={}",
                ranking.len()
            ),
        });
    }
    let positions = rank_positions(ranking, active)?;
    let hits = |size: usize| positions.iter().filter(|&&pos| pos <= size).count();
    let hits_d = hits(d);
    Ok(ReplicateMetrics {
        hit_one: hits_d >= 1,
        hit_all: hits_d == active.len(),
        tp_d1: hits(d1),
        tp_d2: hits(d2),
    })
}

/// Aggregate raw records into per-method summaries. `active_count` is the
/// scenario's number of true active predictors.
pub fn summarize_records(
    records: &[ReplicateRecord],
    methods: &[Method],
    active_count: usize,
) -> Vec<MethodSummary> {
    methods
        .iter()
        .map(|&method| {
            let rows: Vec<&ReplicateRecord> =
                records.iter().filter(|r| r.method == method).collect();
            let count = rows.len() as f64;
            let mut mms: Vec<usize> = rows.iter().map(|r| r.mms).collect();
            mms.sort_unstable();
            let mms_median = if mms.is_empty() {
                f64::NAN
            } else if mms.len() % 2 == 1 {
                mms[mms.len() / 2] as f64
            } else {
                (mms[mms.len() / 2 - 1] as f64 + mms[mms.len() / 2] as f64) / 2.0
            };
            let p1 = rows.iter().filter(|r| r.hits_d >= 1).count() as f64 / count;
            let pa = rows.iter().filter(|r| r.hits_d == active_count).count() as f64 / count;
            let tp_d1 = rows.iter().map(|r| r.hits_d1 as f64).sum::<f64>() / count;
            let tp_d2 = rows.iter().map(|r| r.hits_d2 as f64).sum::<f64>() / count;
            MethodSummary {
                method,
                mms_median,
                p1,
                pa,
                tp_d1,
                tp_d2,
            }
        })
        .collect()
}

/// Run `replicates` rounds of generate-then-screen for every configured
/// method and aggregate the four criteria. A failing replicate aborts the
/// whole run, tagged with its replicate index and seed.
pub fn run_benchmark(cfg: &BenchmarkConfig) -> Result<MetricsSummary> {
    if cfg.replicates == 0 {
        return Err(Error::InvalidParameter {
            name: "replicates",
            reason: "need at least one replicate".into(),
        });
    }
    if !cfg.c_const.is_finite() || cfg.c_const <= 0.0 {
        return Err(Error::NonPositiveParameter {
            name: "c_const",
            value: cfg.c_const,
        });
    }
    if cfg.methods.is_empty() {
        return Err(Error::InvalidParameter {
            name: "methods",
            reason: "need at least one method".into(),
        });
    }
    cfg.scenario.validate()?;
    let (d, d1, d2) = cfg.model_sizes()?;
    let t = cfg.c_const * (cfg.scenario.p as f64).ln();
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::NonPositiveParameter { name: "t", value: t });
    }
    let active_count = cfg.scenario.scenario.active_count();

    let per_replicate: Vec<Vec<ReplicateRecord>> = (0..cfg.replicates as u64)
        .into_par_iter()
        .map(|replicate| -> Result<Vec<ReplicateRecord>> {
            let wrap = |source: Error| Error::Replicate {
                replicate,
                seed: cfg.seed,
                source: Box::new(source),
            };
            let dataset = generate(&cfg.scenario, cfg.seed, replicate).map_err(wrap)?;
            cfg.methods
                .iter()
                .map(|&method| {
                    let result = screen(&dataset.data, method, t, d).map_err(wrap)?;
                    let mms = minimum_model_size(&result.ranking, &dataset.true_active)
                        .map_err(wrap)?;
                    let metrics =
                        replicate_metrics(&result.ranking, &dataset.true_active, d, d1, d2)
                            .map_err(wrap)?;
                    let hits_d = rank_positions(&result.ranking, &dataset.true_active)
                        .map_err(wrap)?
                        .into_iter()
                        .filter(|&pos| pos <= d)
                        .count();
                    debug_assert_eq!(metrics.hit_one, hits_d >= 1);
                    Ok(ReplicateRecord {
                        replicate,
                        method,
                        mms,
                        hits_d,
                        hits_d1: metrics.tp_d1,
                        hits_d2: metrics.tp_d2,
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    let records: Vec<ReplicateRecord> = per_replicate.into_iter().flatten().collect();
    let summaries = summarize_records(&records, &cfg.methods, active_count);
    Ok(MetricsSummary {
        summaries,
        records,
        d,
        d1,
        d2,
        active_count,
    })
}
