//! Seeded generators for the heavy-tailed benchmark scenarios.
//!
//! All randomness flows through a ChaCha8 stream derived from
//! `(seed, replicate)` by a splitmix64 hash, so a given configuration
//! reproduces bitwise on any platform and distinct replicates use
//! independent streams. Within a replicate the draw order is fixed:
//! predictors row by row (for the AR(1) model the normals of a row, then
//! its chi-square divisor), then any coefficient draws, then the response
//! noise sample by sample.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{ChiSquared, Distribution, StandardNormal, StudentT};

use crate::data::DataMatrix;
use crate::error::{Error, Result};

/// Benchmark scenario.
///
/// * `Ia` — AR(1)-correlated multivariate t(3) predictors, heavy-tailed
///   linear response, 4 active features.
/// * `Ib` — i.i.d. Pareto(1,1) predictors, same response, 4 active.
/// * `IIa`/`IIb` — same predictor models with a trivariate equicorrelated
///   normal response sharing one linear mean, 2 active.
/// * `IIIa`/`IIIb` — AR(1) t(3) predictors with an additive
///   (`IIIa`) or interaction (`IIIb`) signal involving an indicator term,
///   4 active.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scenario {
    Ia,
    Ib,
    IIa,
    IIb,
    IIIa,
    IIIb,
}

impl Scenario {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ia" => Ok(Scenario::Ia),
            "ib" => Ok(Scenario::Ib),
            "iia" => Ok(Scenario::IIa),
            "iib" => Ok(Scenario::IIb),
            "iiia" => Ok(Scenario::IIIa),
            "iiib" => Ok(Scenario::IIIb),
            other => Err(Error::InvalidParameter {
                name: "scenario",
                reason: format!("unknown scenario {other:?}; expected Ia, Ib, IIa, IIb, IIIa or IIIb"),
            }),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Scenario::Ia => "Ia",
            Scenario::Ib => "Ib",
            Scenario::IIa => "IIa",
            Scenario::IIb => "IIb",
            Scenario::IIIa => "IIIa",
            Scenario::IIIb => "IIIb",
        }
    }

    /// Number of true active predictors.
    pub fn active_count(&self) -> usize {
        match self {
            Scenario::Ia | Scenario::Ib | Scenario::IIIa | Scenario::IIIb => 4,
            Scenario::IIa | Scenario::IIb => 2,
        }
    }

    /// Response dimensionality.
    pub fn response_dim(&self) -> usize {
        match self {
            Scenario::IIa | Scenario::IIb => 3,
            _ => 1,
        }
    }

    fn pareto_predictors(&self) -> bool {
        matches!(self, Scenario::Ib | Scenario::IIb)
    }
}

impl std::fmt::Display for Scenario {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Sizes and knobs of one scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub n: usize,
    pub p: usize,
    /// AR(1) predictor correlation (ignored by the Pareto scenarios).
    pub rho: f64,
    /// Scenario II only: place the two active features at indices 1,2
    /// instead of spreading them evenly.
    pub adjacent_active: bool,
}

impl ScenarioConfig {
    pub fn new(scenario: Scenario, n: usize, p: usize) -> Self {
        Self {
            scenario,
            n,
            p,
            rho: 0.5,
            adjacent_active: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::TooFewSamples { min: 3, got: self.n });
        }
        if self.rho.abs() >= 1.0 || !self.rho.is_finite() {
            return Err(Error::InvalidParameter {
                name: "rho",
                reason: format!("must satisfy |rho| < 1, got {}", self.rho),
            });
        }
        let min_p = match self.scenario {
            Scenario::IIIa | Scenario::IIIb => 22,
            Scenario::IIa | Scenario::IIb => 2,
            _ => 4,
        };
        if self.p < min_p {
            return Err(Error::InvalidParameter {
                name: "p",
                reason: format!("scenario {} needs p >= {min_p}, got {}", self.scenario, self.p),
            });
        }
        Ok(())
    }

    /// The 0-based indices of the true active predictors.
    pub fn true_active(&self) -> Vec<usize> {
        match self.scenario {
            Scenario::Ia | Scenario::Ib => evenly_spaced_indices(self.p, 4),
            Scenario::IIa | Scenario::IIb => {
                if self.adjacent_active {
                    vec![0, 1]
                } else {
                    evenly_spaced_indices(self.p, 2)
                }
            }
            Scenario::IIIa | Scenario::IIIb => vec![0, 1, 11, 21],
        }
    }
}

/// One generated replicate.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulatedDataset {
    pub data: DataMatrix,
    /// 0-based active feature indices.
    pub true_active: Vec<usize>,
    /// Realized nonzero coefficients, in active-term order.
    pub beta: Vec<f64>,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The RNG for one replicate: a ChaCha8 generator keyed by a splitmix64
/// hash of `(seed, replicate)`.
pub fn replicate_rng(seed: u64, replicate: u64) -> ChaCha8Rng {
    let mut state = seed ^ replicate.wrapping_mul(0xA24B_AED4_963E_E407);
    let mut key = [0u8; 32];
    for chunk in key.chunks_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// `s` active positions spread evenly over `p` features: index
/// `floor(k * p / s)` for `k = 0..s`.
pub fn evenly_spaced_indices(p: usize, s: usize) -> Vec<usize> {
    (0..s).map(|k| k * p / s).collect()
}

/// Row-major `n x p` draw from a central multivariate t with AR(1) scale
/// matrix: each row is an AR(1) normal vector divided by the square root of
/// an independent chi-square over its degrees of freedom.
pub fn ar1_student_t_matrix(
    rng: &mut impl Rng,
    n: usize,
    p: usize,
    rho: f64,
    df: f64,
) -> Result<Vec<f64>> {
    if rho.abs() >= 1.0 || !rho.is_finite() {
        return Err(Error::InvalidParameter {
            name: "rho",
            reason: format!("must satisfy |rho| < 1, got {rho}"),
        });
    }
    if !df.is_finite() || df <= 0.0 {
        return Err(Error::NonPositiveParameter {
            name: "df",
            value: df,
        });
    }
    let chi = ChiSquared::new(df).expect("df > 0");
    let innov = (1.0 - rho * rho).sqrt();
    let mut out = vec![0.0; n * p];
    for i in 0..n {
        let row = &mut out[i * p..(i + 1) * p];
        let mut prev: f64 = rng.sample(StandardNormal);
        row[0] = prev;
        for v in row.iter_mut().skip(1) {
            let eps: f64 = rng.sample(StandardNormal);
            prev = rho * prev + innov * eps;
            *v = prev;
        }
        let w = chi.sample(rng);
        let scale = 1.0 / (w / df).sqrt();
        for v in row.iter_mut() {
            *v *= scale;
        }
    }
    Ok(out)
}

/// Row-major `n x p` matrix of i.i.d. Pareto(1,1) draws via the inverse
/// CDF `x = 1/(1-U)`, support `[1, inf)`.
pub fn pareto_matrix(rng: &mut impl Rng, n: usize, p: usize) -> Vec<f64> {
    let mut out = vec![0.0; n * p];
    for v in out.iter_mut() {
        let u: f64 = rng.random();
        *v = 1.0 / (1.0 - u);
    }
    out
}

/// The linear signal `sum_k coeffs[k] * x[i, active[k]]` for every sample.
fn signal_means(x: &[f64], p: usize, active: &[usize], coeffs: &[f64]) -> Vec<f64> {
    let n = x.len() / p;
    (0..n)
        .map(|i| {
            active
                .iter()
                .zip(coeffs.iter())
                .map(|(&j, &b)| b * x[i * p + j])
                .sum()
        })
        .collect()
}

/// Scalar response: linear signal plus i.i.d. Student-t noise.
pub fn linear_t_response(
    rng: &mut impl Rng,
    x: &[f64],
    p: usize,
    active: &[usize],
    coeffs: &[f64],
    df: f64,
) -> Result<Vec<f64>> {
    if !df.is_finite() || df <= 0.0 {
        return Err(Error::NonPositiveParameter {
            name: "df",
            value: df,
        });
    }
    let noise = StudentT::new(df).expect("df > 0");
    Ok(signal_means(x, p, active, coeffs)
        .into_iter()
        .map(|m| m + noise.sample(rng))
        .collect())
}

/// Trivariate response sharing one linear mean, with unit variances and
/// equicorrelation 0.5 across coordinates. Row-major `n x 3`.
pub fn equicorrelated_normal_response(
    rng: &mut impl Rng,
    x: &[f64],
    p: usize,
    active: &[usize],
    coeffs: &[f64],
) -> Vec<f64> {
    const DIM: usize = 3;
    const RHO_Y: f64 = 0.5;
    let shared = RHO_Y.sqrt();
    let own = (1.0 - RHO_Y).sqrt();
    let means = signal_means(x, p, active, coeffs);
    let mut out = Vec::with_capacity(means.len() * DIM);
    for m in means {
        let common: f64 = rng.sample(StandardNormal);
        for _ in 0..DIM {
            let g: f64 = rng.sample(StandardNormal);
            out.push(m + shared * common + own * g);
        }
    }
    out
}

/// Scenario III signal shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignalModel {
    /// Additive terms in x1, x2, an indicator of x12, and x22.
    Additive,
    /// x1*x2 interaction plus the indicator and x22 terms.
    Interaction,
}

/// Scenario III response with random coefficient magnitudes
/// `(-1)^U (a + |Z|)`, `a = 4 ln(n)/sqrt(n)`, `U ~ Bern(0.4)`,
/// `Z ~ N(0,1)`, and standard normal noise. Returns the response and the
/// realized coefficients.
pub fn indicator_signal_response(
    rng: &mut impl Rng,
    x: &[f64],
    p: usize,
    model: SignalModel,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if p < 22 {
        return Err(Error::InvalidParameter {
            name: "p",
            reason: format!("indicator signal needs p >= 22, got {p}"),
        });
    }
    let n = x.len() / p;
    let a = 4.0 * (n as f64).ln() / (n as f64).sqrt();
    let coeff_count = match model {
        SignalModel::Additive => 4,
        SignalModel::Interaction => 3,
    };
    let mut beta = Vec::with_capacity(coeff_count);
    for _ in 0..coeff_count {
        let flip = rng.random::<f64>() < 0.4;
        let z: f64 = rng.sample(StandardNormal);
        let magnitude = a + z.abs();
        beta.push(if flip { -magnitude } else { magnitude });
    }
    let (alpha1, alpha2, alpha3, alpha4) = (2.0, 0.5, 3.0, 2.0);
    let mut y = Vec::with_capacity(n);
    for i in 0..n {
        let x1 = x[i * p];
        let x2 = x[i * p + 1];
        let ind = if x[i * p + 11] < 0.0 { 1.0 } else { 0.0 };
        let x22 = x[i * p + 21];
        let signal = match model {
            SignalModel::Additive => {
                alpha1 * beta[0] * x1 + alpha2 * beta[1] * x2 + alpha3 * beta[2] * ind
                    + alpha4 * beta[3] * x22
            }
            SignalModel::Interaction => {
                alpha1 * beta[0] * x1 * x2 + alpha3 * beta[1] * ind + alpha4 * beta[2] * x22
            }
        };
        let eps: f64 = rng.sample(StandardNormal);
        y.push(signal + eps);
    }
    Ok((y, beta))
}

/// Generate one replicate of `cfg` on the stream `(seed, replicate)`.
pub fn generate(cfg: &ScenarioConfig, seed: u64, replicate: u64) -> Result<SimulatedDataset> {
    cfg.validate()?;
    let mut rng = replicate_rng(seed, replicate);
    let (n, p) = (cfg.n, cfg.p);

    let x = if cfg.scenario.pareto_predictors() {
        pareto_matrix(&mut rng, n, p)
    } else {
        ar1_student_t_matrix(&mut rng, n, p, cfg.rho, 3.0)?
    };

    let active = cfg.true_active();
    let (response, beta) = match cfg.scenario {
        Scenario::Ia | Scenario::Ib => {
            let coeffs = [2.0, -2.0, 2.0, -2.0];
            let y = linear_t_response(&mut rng, &x, p, &active, &coeffs, 2.0)?;
            (y, coeffs.to_vec())
        }
        Scenario::IIa | Scenario::IIb => {
            let coeffs = [1.0, 1.0];
            let y = equicorrelated_normal_response(&mut rng, &x, p, &active, &coeffs);
            (y, coeffs.to_vec())
        }
        Scenario::IIIa => {
            let (y, beta) = indicator_signal_response(&mut rng, &x, p, SignalModel::Additive)?;
            (y, beta)
        }
        Scenario::IIIb => {
            let (y, beta) = indicator_signal_response(&mut rng, &x, p, SignalModel::Interaction)?;
            (y, beta)
        }
    };

    let q = cfg.scenario.response_dim();
    let mut predictors = vec![0.0; n * p];
    for i in 0..n {
        for j in 0..p {
            predictors[j * n + i] = x[i * p + j];
        }
    }
    let feature_names = (1..=p).map(|j| format!("x{j}")).collect();
    let response_names = if q == 1 {
        vec!["y".to_string()]
    } else {
        (1..=q).map(|k| format!("y{k}")).collect()
    };
    let data = DataMatrix::new(n, predictors, response, feature_names, response_names)?;
    Ok(SimulatedDataset {
        data,
        true_active: active,
        beta,
    })
}
