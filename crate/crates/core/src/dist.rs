//! Pairwise distance structures and the truncated moment statistics that
//! distance covariance is assembled from.
//!
//! Everything here is `O(n^2)` per variable. Sums always run in row-major
//! order over the full matrix so results are bit-identical across runs and
//! worker counts.

use crate::error::{Error, Result};

/// Borrowed view of one variable: `n` samples of a `dim`-dimensional
/// quantity, stored sample-major (sample `k` occupies
/// `data[k*dim .. (k+1)*dim]`). Scalars use `dim = 1`.
#[derive(Debug, Clone, Copy)]
pub struct Variable<'a> {
    data: &'a [f64],
    n: usize,
    dim: usize,
}

impl<'a> Variable<'a> {
    pub fn new(data: &'a [f64], n: usize, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter {
                name: "dim",
                reason: "must be at least 1".into(),
            });
        }
        if data.len() != n * dim {
            return Err(Error::ShapeMismatch {
                expected: n * dim,
                got: data.len(),
            });
        }
        Ok(Self { data, n, dim })
    }

    /// View over a scalar variable, one value per sample.
    pub fn scalar(data: &'a [f64]) -> Self {
        Self {
            data,
            n: data.len(),
            dim: 1,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sample(&self, k: usize) -> &'a [f64] {
        &self.data[k * self.dim..(k + 1) * self.dim]
    }

    fn check_finite(&self) -> Result<()> {
        for k in 0..self.n {
            for (c, v) in self.sample(k).iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFinite {
                        sample: k,
                        component: c,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Truncation applied to a nonnegative distance: `min(u, tau)`.
///
/// Idempotent and monotone in both arguments.
pub fn truncate(u: f64, tau: f64) -> Result<f64> {
    if !tau.is_finite() || tau <= 0.0 {
        return Err(Error::NonPositiveParameter {
            name: "tau",
            value: tau,
        });
    }
    Ok(u.min(tau))
}

/// The `N = n(n-1)/2` pairwise distances of one variable, upper triangle
/// in row-major order. Scalar variables store absolute differences,
/// vector variables Euclidean norms.
#[derive(Debug, Clone)]
pub struct PairwiseDiffs {
    values: Vec<f64>,
    n: usize,
    dim: usize,
}

impl PairwiseDiffs {
    /// Build from raw values; `values.len()` must equal `n(n-1)/2` and every
    /// entry must be finite and nonnegative.
    pub fn from_values(values: Vec<f64>, n: usize, dim: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewSamples { min: 2, got: n });
        }
        let expected = n * (n - 1) / 2;
        if values.len() != expected {
            return Err(Error::ShapeMismatch {
                expected,
                got: values.len(),
            });
        }
        for (i, v) in values.iter().enumerate() {
            if !v.is_finite() || *v < 0.0 {
                return Err(Error::NonFinite {
                    sample: i,
                    component: 0,
                });
            }
        }
        Ok(Self { values, n, dim })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of stored pairwise distances.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Full symmetric `n x n` matrix of pairwise distances with zero diagonal.
/// When built through [`DistanceMatrix::truncated`] every entry has been
/// capped at the recorded level.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    values: Vec<f64>,
    n: usize,
    dim: usize,
    tau: Option<f64>,
}

impl DistanceMatrix {
    /// Exact Euclidean distances (absolute differences for scalars) between
    /// all sample pairs of `v`.
    pub fn from_variable(v: &Variable) -> Result<Self> {
        if v.n() < 2 {
            return Err(Error::TooFewSamples { min: 2, got: v.n() });
        }
        v.check_finite()?;
        let n = v.n();
        let mut values = vec![0.0; n * n];
        if v.dim() == 1 {
            for k in 0..n {
                let xk = v.data[k];
                for l in (k + 1)..n {
                    let d = (xk - v.data[l]).abs();
                    values[k * n + l] = d;
                    values[l * n + k] = d;
                }
            }
        } else {
            for k in 0..n {
                let sk = v.sample(k);
                for l in (k + 1)..n {
                    let sl = v.sample(l);
                    let mut acc = 0.0;
                    for c in 0..v.dim() {
                        let diff = sk[c] - sl[c];
                        acc += diff * diff;
                    }
                    let d = acc.sqrt();
                    values[k * n + l] = d;
                    values[l * n + k] = d;
                }
            }
        }
        Ok(Self {
            values,
            n,
            dim: v.dim(),
            tau: None,
        })
    }

    /// Copy with every entry capped at `tau`.
    pub fn truncated(&self, tau: f64) -> Result<Self> {
        if !tau.is_finite() || tau <= 0.0 {
            return Err(Error::NonPositiveParameter {
                name: "tau",
                value: tau,
            });
        }
        let values = self.values.iter().map(|v| v.min(tau)).collect();
        Ok(Self {
            values,
            n: self.n,
            dim: self.dim,
            tau: Some(tau),
        })
    }

    /// Upper-triangle distances in row-major order.
    pub fn pairwise_diffs(&self) -> PairwiseDiffs {
        let mut values = Vec::with_capacity(self.n * (self.n - 1) / 2);
        for k in 0..self.n {
            for l in (k + 1)..self.n {
                values.push(self.values[k * self.n + l]);
            }
        }
        PairwiseDiffs {
            values,
            n: self.n,
            dim: self.dim,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Truncation level applied to this matrix, if any.
    pub fn tau(&self) -> Option<f64> {
        self.tau
    }

    pub fn get(&self, k: usize, l: usize) -> f64 {
        self.values[k * self.n + l]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Largest stored distance.
    pub fn max_value(&self) -> f64 {
        self.values.iter().fold(0.0, |m, &v| m.max(v))
    }
}

/// The three moment statistics of a pair of distance matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SStats {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
}

impl SStats {
    /// Squared distance covariance before clamping: `s1 + s2 - 2*s3`.
    pub fn dcov_sq(&self) -> f64 {
        self.s1 + self.s2 - 2.0 * self.s3
    }
}

/// Moment statistics for a pair of (possibly truncated) distance matrices
/// sharing the same sample count.
///
/// `s1` is the mean elementwise product, `s2` the product of the two grand
/// means, and `s3 = (1/n^3) * sum_l rowsum_a(l) * rowsum_b(l)`, which equals
/// the naive triple sum because both matrices are symmetric.
pub fn s_statistics(a: &DistanceMatrix, b: &DistanceMatrix) -> Result<SStats> {
    if a.n() != b.n() {
        return Err(Error::SampleCountMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    let n = a.n();
    let nf = n as f64;

    let mut prod_sum = 0.0;
    for (va, vb) in a.values.iter().zip(b.values.iter()) {
        prod_sum += va * vb;
    }
    let s1 = prod_sum / (nf * nf);

    let mut row_a = vec![0.0; n];
    let mut row_b = vec![0.0; n];
    let mut total_a = 0.0;
    let mut total_b = 0.0;
    for k in 0..n {
        let mut ra = 0.0;
        let mut rb = 0.0;
        for l in 0..n {
            ra += a.values[k * n + l];
            rb += b.values[k * n + l];
        }
        row_a[k] = ra;
        row_b[k] = rb;
        total_a += ra;
        total_b += rb;
    }
    let s2 = (total_a / (nf * nf)) * (total_b / (nf * nf));

    let mut cross = 0.0;
    for l in 0..n {
        cross += row_a[l] * row_b[l];
    }
    let s3 = cross / (nf * nf * nf);

    Ok(SStats { s1, s2, s3 })
}
