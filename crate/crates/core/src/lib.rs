//! Feature screening with distance correlation and its tail-robust
//! truncated variant.
//!
//! The crate computes the classical sample distance correlation (DC), a
//! robust variant (RDC) that truncates pairwise distances at a per-variable
//! level `tau` tuned from the data, and marginal screening utilities for
//! ultrahigh-dimensional regression. A simulation module generates the
//! heavy-tailed benchmark scenarios used by the evaluation harness.
//!
//! Layered bottom-up:
//!
//! * [`dist`] — pairwise distance matrices, truncation, and the three
//!   moment statistics distance covariance is assembled from.
//! * [`tau`] — the data-driven solver for the truncation level.
//! * [`dcor`] — DC / RDC estimates for scalar or vector variables.
//! * [`screen`] — marginal screening over a feature matrix.
//! * [`sim`] — seeded generators for the benchmark scenarios.
//! * [`eval`] — replicated benchmarks and their summary metrics.

pub mod data;
pub mod dcor;
pub mod dist;
pub mod error;
pub mod eval;
pub mod screen;
pub mod sim;
pub mod tau;

pub use data::DataMatrix;
pub use dcor::DependenceEstimate;
pub use dist::{DistanceMatrix, PairwiseDiffs, Variable};
pub use error::{Error, Result};
pub use eval::{MethodSummary, MetricsSummary, ReplicateRecord};
pub use screen::{Method, ScreeningResult};
pub use sim::{Scenario, ScenarioConfig, SimulatedDataset};
pub use tau::{TauResult, TauStatus};
