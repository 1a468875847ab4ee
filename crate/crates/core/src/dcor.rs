//! Sample distance covariance/correlation and the tail-robust truncated
//! variant.
//!
//! The plain estimate assembles the moment statistics of the untruncated
//! distance matrices; the robust estimate caps each variable's distances at
//! its own level first, marginals included (both operands of `rdcov(X, X)`
//! are capped at `tau_x`). The tuned entry point solves the levels from the
//! data before delegating.

use crate::dist::{s_statistics, DistanceMatrix, Variable};
use crate::error::{Error, Result};
use crate::tau::{solve_tau, TauStatus};

/// A distance covariance/correlation estimate for one pair of variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DependenceEstimate {
    /// Squared distance covariance, clamped at zero.
    pub dcov_sq: f64,
    /// Distance correlation in `[0, 1]`; zero when degenerate.
    pub dcor: f64,
    /// Truncation level used for the first variable, if any.
    pub tau_x: Option<f64>,
    /// Truncation level used for the second variable, if any.
    pub tau_y: Option<f64>,
    /// Set when either marginal distance covariance vanishes.
    pub degenerate: bool,
}

impl DependenceEstimate {
    fn degenerate_zero(tau_x: Option<f64>, tau_y: Option<f64>) -> Self {
        Self {
            dcov_sq: 0.0,
            dcor: 0.0,
            tau_x,
            tau_y,
            degenerate: true,
        }
    }
}

fn assemble(
    cross: f64,
    marg_x: f64,
    marg_y: f64,
    tau_x: Option<f64>,
    tau_y: Option<f64>,
) -> DependenceEstimate {
    let dcov_sq = cross.max(0.0);
    if marg_x <= 0.0 || marg_y <= 0.0 {
        return DependenceEstimate {
            dcov_sq,
            dcor: 0.0,
            tau_x,
            tau_y,
            degenerate: true,
        };
    }
    let ratio = (dcov_sq / (marg_x * marg_y).sqrt()).min(1.0);
    DependenceEstimate {
        dcov_sq,
        dcor: ratio.sqrt(),
        tau_x,
        tau_y,
        degenerate: false,
    }
}

/// Assemble an estimate from already-prepared distance matrices. The same
/// matrices feed the cross term and their own marginal terms, so any
/// truncation baked into them applies uniformly.
pub fn estimate_from_matrices(
    x_dist: &DistanceMatrix,
    y_dist: &DistanceMatrix,
) -> Result<DependenceEstimate> {
    let cross = s_statistics(x_dist, y_dist)?.dcov_sq();
    let marg_x = s_statistics(x_dist, x_dist)?.dcov_sq();
    let marg_y = s_statistics(y_dist, y_dist)?.dcov_sq();
    Ok(assemble(cross, marg_x, marg_y, x_dist.tau(), y_dist.tau()))
}

/// The response side of a screening pass, prepared once and shared
/// read-only across the per-feature loop.
#[derive(Debug, Clone)]
pub struct PreparedResponse {
    dist: DistanceMatrix,
    marginal: f64,
}

impl PreparedResponse {
    pub fn new(dist: DistanceMatrix) -> Result<Self> {
        let marginal = s_statistics(&dist, &dist)?.dcov_sq();
        Ok(Self { dist, marginal })
    }

    pub fn dist(&self) -> &DistanceMatrix {
        &self.dist
    }

    /// The response's own squared distance covariance.
    pub fn marginal(&self) -> f64 {
        self.marginal
    }
}

/// Estimate against a prepared response. Bitwise identical to
/// [`estimate_from_matrices`] on the same matrices; only the response
/// marginal is reused instead of recomputed.
pub fn estimate_against_response(
    x_dist: &DistanceMatrix,
    response: &PreparedResponse,
) -> Result<DependenceEstimate> {
    let cross = s_statistics(x_dist, response.dist())?.dcov_sq();
    let marg_x = s_statistics(x_dist, x_dist)?.dcov_sq();
    Ok(assemble(
        cross,
        marg_x,
        response.marginal,
        x_dist.tau(),
        response.dist.tau(),
    ))
}

/// Plain sample distance correlation from untruncated distances.
pub fn sample_dcor(x: &Variable, y: &Variable) -> Result<DependenceEstimate> {
    if x.n() != y.n() {
        return Err(Error::SampleCountMismatch {
            left: x.n(),
            right: y.n(),
        });
    }
    let x_dist = DistanceMatrix::from_variable(x)?;
    let y_dist = DistanceMatrix::from_variable(y)?;
    estimate_from_matrices(&x_dist, &y_dist)
}

/// Robust distance correlation with distances capped at `tau_x` / `tau_y`.
pub fn robust_dcor(
    x: &Variable,
    y: &Variable,
    tau_x: f64,
    tau_y: f64,
) -> Result<DependenceEstimate> {
    if x.n() != y.n() {
        return Err(Error::SampleCountMismatch {
            left: x.n(),
            right: y.n(),
        });
    }
    let x_dist = DistanceMatrix::from_variable(x)?.truncated(tau_x)?;
    let y_dist = DistanceMatrix::from_variable(y)?.truncated(tau_y)?;
    estimate_from_matrices(&x_dist, &y_dist)
}

/// Robust distance correlation with both levels solved from the data at `t`.
///
/// A degenerate level (constant variable) propagates as a degenerate
/// estimate with zero correlation.
pub fn tuned_robust_dcor(x: &Variable, y: &Variable, t: f64) -> Result<DependenceEstimate> {
    if x.n() != y.n() {
        return Err(Error::SampleCountMismatch {
            left: x.n(),
            right: y.n(),
        });
    }
    let x_dist = DistanceMatrix::from_variable(x)?;
    let y_dist = DistanceMatrix::from_variable(y)?;
    let tau_x = solve_tau(&x_dist.pairwise_diffs(), t)?;
    let tau_y = solve_tau(&y_dist.pairwise_diffs(), t)?;
    if tau_x.status == TauStatus::Degenerate || tau_y.status == TauStatus::Degenerate {
        return Ok(DependenceEstimate::degenerate_zero(tau_x.tau, tau_y.tau));
    }
    let x_trunc = x_dist.truncated(tau_x.tau.expect("non-degenerate"))?;
    let y_trunc = y_dist.truncated(tau_y.tau.expect("non-degenerate"))?;
    estimate_from_matrices(&x_trunc, &y_trunc)
}
