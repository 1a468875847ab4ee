//! Marginal screening over a feature matrix.
//!
//! Each feature's utility is the squared dependence between that feature and
//! the (possibly multivariate) response. The response side of the
//! computation — its distance matrix and, for the robust method, its
//! truncation level — is prepared once and shared read-only across the
//! per-feature loop, which is the parallel unit.

use rayon::prelude::*;

use crate::data::DataMatrix;
use crate::dcor::{estimate_against_response, PreparedResponse};
use crate::dist::DistanceMatrix;
use crate::error::{Error, Result};
use crate::tau::{solve_tau, TauStatus};

/// Screening method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Tuned robust distance correlation.
    Rdc,
    /// Plain sample distance correlation.
    Dc,
    /// Squared Pearson correlation (univariate response only).
    PearsonSis,
}

impl Method {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rdc" => Ok(Method::Rdc),
            "dc" => Ok(Method::Dc),
            "pearson" | "sis" | "pearson-sis" => Ok(Method::PearsonSis),
            other => Err(Error::InvalidParameter {
                name: "method",
                reason: format!("unknown method {other:?}; expected rdc, dc or pearson"),
            }),
        }
    }

    /// Short lowercase name used in file names and CSV columns.
    pub fn label(&self) -> &'static str {
        match self {
            Method::Rdc => "rdc",
            Method::Dc => "dc",
            Method::PearsonSis => "pearson",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Ranked utilities for one method over one dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct ScreeningResult {
    pub method: Method,
    /// One nonnegative utility per feature.
    pub utilities: Vec<f64>,
    /// Per-feature truncation levels (robust method only); `None` entries
    /// are degenerate features.
    pub taus: Option<Vec<Option<f64>>>,
    /// Response truncation level (robust method only).
    pub tau_y: Option<f64>,
    /// Feature indices sorted by decreasing utility, ties by ascending index.
    pub ranking: Vec<usize>,
    /// Retained count.
    pub d: usize,
    /// The first `d` entries of `ranking`.
    pub retained: Vec<usize>,
    /// Marks features whose utility is zero by construction (constant
    /// columns).
    pub degenerate: Vec<bool>,
}

/// Default retained count `floor(multiplier * n / ln n)`.
pub fn default_model_size(n: usize, multiplier: usize) -> Result<usize> {
    if n < 3 {
        return Err(Error::TooFewSamples { min: 3, got: n });
    }
    if multiplier == 0 {
        return Err(Error::NonPositiveParameter {
            name: "multiplier",
            value: 0.0,
        });
    }
    Ok((multiplier as f64 * n as f64 / (n as f64).ln()).floor() as usize)
}

/// Feature indices sorted by decreasing utility; equal utilities keep
/// ascending index order so rankings are deterministic.
pub fn rank_by_utility(utilities: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..utilities.len()).collect();
    idx.sort_by(|&a, &b| {
        utilities[b]
            .partial_cmp(&utilities[a])
            .expect("utilities are finite")
            .then_with(|| a.cmp(&b))
    });
    idx
}

struct FeatureScore {
    utility: f64,
    tau: Option<f64>,
    degenerate: bool,
}

/// Rank all features of `data` by their marginal dependence with the
/// response and retain the top `d`. `t` is the tuning-equation target scale
/// (ignored by the non-robust methods).
pub fn screen(data: &DataMatrix, method: Method, t: f64, d: usize) -> Result<ScreeningResult> {
    let p = data.p();
    if d == 0 || d > p {
        return Err(Error::ModelSizeOutOfRange { d, p });
    }
    let (scores, tau_y) = match method {
        Method::Rdc => screen_rdc(data, t)?,
        Method::Dc => (screen_dc(data)?, None),
        Method::PearsonSis => (screen_pearson(data)?, None),
    };
    let utilities: Vec<f64> = scores.iter().map(|s| s.utility).collect();
    let degenerate: Vec<bool> = scores.iter().map(|s| s.degenerate).collect();
    let taus = match method {
        Method::Rdc => Some(scores.into_iter().map(|s| s.tau).collect()),
        _ => None,
    };
    let ranking = rank_by_utility(&utilities);
    let retained = ranking[..d].to_vec();
    Ok(ScreeningResult {
        method,
        utilities,
        taus,
        tau_y,
        ranking,
        d,
        retained,
        degenerate,
    })
}

fn screen_rdc(data: &DataMatrix, t: f64) -> Result<(Vec<FeatureScore>, Option<f64>)> {
    let y_dist = DistanceMatrix::from_variable(&data.response())?;
    let tau_y = solve_tau(&y_dist.pairwise_diffs(), t)?;
    if tau_y.status == TauStatus::Degenerate {
        return Err(Error::ConstantResponse);
    }
    let tau_y_level = tau_y.tau.expect("non-degenerate");
    let response = PreparedResponse::new(y_dist.truncated(tau_y_level)?)?;

    let scores: Vec<FeatureScore> = (0..data.p())
        .into_par_iter()
        .map(|j| -> Result<FeatureScore> {
            let x_dist = DistanceMatrix::from_variable(&data.feature(j))?;
            let tau_j = solve_tau(&x_dist.pairwise_diffs(), t)?;
            if tau_j.status == TauStatus::Degenerate {
                return Ok(FeatureScore {
                    utility: 0.0,
                    tau: None,
                    degenerate: true,
                });
            }
            let x_trunc = x_dist.truncated(tau_j.tau.expect("non-degenerate"))?;
            let est = estimate_against_response(&x_trunc, &response)?;
            Ok(FeatureScore {
                utility: est.dcor * est.dcor,
                tau: tau_j.tau,
                degenerate: est.degenerate,
            })
        })
        .collect::<Result<_>>()?;
    Ok((scores, Some(tau_y_level)))
}

fn screen_dc(data: &DataMatrix) -> Result<Vec<FeatureScore>> {
    let y_dist = DistanceMatrix::from_variable(&data.response())?;
    let response = PreparedResponse::new(y_dist)?;
    if response.marginal() <= 0.0 {
        return Err(Error::ConstantResponse);
    }
    (0..data.p())
        .into_par_iter()
        .map(|j| -> Result<FeatureScore> {
            let x_dist = DistanceMatrix::from_variable(&data.feature(j))?;
            let est = estimate_against_response(&x_dist, &response)?;
            Ok(FeatureScore {
                utility: est.dcor * est.dcor,
                tau: None,
                degenerate: est.degenerate,
            })
        })
        .collect()
}

fn screen_pearson(data: &DataMatrix) -> Result<Vec<FeatureScore>> {
    if data.q() != 1 {
        return Err(Error::UnivariateResponseRequired {
            method: "pearson",
            q: data.q(),
        });
    }
    let y: Vec<f64> = (0..data.n()).map(|i| data.response_row(i)[0]).collect();
    let my = y.iter().sum::<f64>() / y.len() as f64;
    let syy: f64 = y.iter().map(|v| (v - my) * (v - my)).sum();
    if syy <= 0.0 {
        return Err(Error::ConstantResponse);
    }
    (0..data.p())
        .into_par_iter()
        .map(|j| {
            let x = data.feature_column(j);
            let mx = x.iter().sum::<f64>() / x.len() as f64;
            let mut sxy = 0.0;
            let mut sxx = 0.0;
            for (xv, yv) in x.iter().zip(y.iter()) {
                sxy += (xv - mx) * (yv - my);
                sxx += (xv - mx) * (xv - mx);
            }
            if sxx <= 0.0 {
                return Ok(FeatureScore {
                    utility: 0.0,
                    tau: None,
                    degenerate: true,
                });
            }
            Ok(FeatureScore {
                utility: ((sxy * sxy) / (sxx * syy)).min(1.0),
                tau: None,
                degenerate: false,
            })
        })
        .collect()
}
