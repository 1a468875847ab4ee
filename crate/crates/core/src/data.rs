//! In-memory dataset: an `n x p` predictor block plus an `n x q` response
//! block with column names.

use crate::dist::Variable;
use crate::error::{Error, Result};

/// Predictors are stored column-major (each feature contiguous) so a feature
/// can be viewed without copying; the response is stored sample-major so the
/// whole block acts as one `q`-dimensional variable.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    n: usize,
    p: usize,
    q: usize,
    predictors: Vec<f64>,
    response: Vec<f64>,
    feature_names: Vec<String>,
    response_names: Vec<String>,
}

impl DataMatrix {
    /// Build from column-major predictors and sample-major response values.
    pub fn new(
        n: usize,
        predictors: Vec<f64>,
        response: Vec<f64>,
        feature_names: Vec<String>,
        response_names: Vec<String>,
    ) -> Result<Self> {
        let p = feature_names.len();
        let q = response_names.len();
        if n < 2 {
            return Err(Error::TooFewSamples { min: 2, got: n });
        }
        if p == 0 || q == 0 {
            return Err(Error::InvalidParameter {
                name: "columns",
                reason: "need at least one predictor and one response column".into(),
            });
        }
        if predictors.len() != n * p {
            return Err(Error::ShapeMismatch {
                expected: n * p,
                got: predictors.len(),
            });
        }
        if response.len() != n * q {
            return Err(Error::ShapeMismatch {
                expected: n * q,
                got: response.len(),
            });
        }
        let mut seen: Vec<&str> = Vec::with_capacity(p + q);
        for name in feature_names.iter().chain(response_names.iter()) {
            if seen.contains(&name.as_str()) {
                return Err(Error::InvalidParameter {
                    name: "column name",
                    reason: format!("duplicate column {name:?}"),
                });
            }
            seen.push(name);
        }
        for (i, v) in predictors.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    sample: i % n,
                    component: i / n,
                });
            }
        }
        for (i, v) in response.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    sample: i / q,
                    component: i % q,
                });
            }
        }
        Ok(Self {
            n,
            p,
            q,
            predictors,
            response,
            feature_names,
            response_names,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Scalar view of feature `j` (0-based).
    pub fn feature(&self, j: usize) -> Variable<'_> {
        Variable::scalar(&self.predictors[j * self.n..(j + 1) * self.n])
    }

    /// Raw column slice of feature `j`.
    pub fn feature_column(&self, j: usize) -> &[f64] {
        &self.predictors[j * self.n..(j + 1) * self.n]
    }

    /// The response block viewed as one `q`-dimensional variable.
    pub fn response(&self) -> Variable<'_> {
        Variable::new(&self.response, self.n, self.q).expect("response shape checked at build")
    }

    /// Response values of sample `i`.
    pub fn response_row(&self, i: usize) -> &[f64] {
        &self.response[i * self.q..(i + 1) * self.q]
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn response_names(&self) -> &[String] {
        &self.response_names
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(prefix: &str, k: usize) -> Vec<String> {
        (1..=k).map(|i| format!("{prefix}{i}")).collect()
    }

    #[test]
    fn builds_and_views() {
        let d = DataMatrix::new(
            3,
            vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0],
            vec![0.1, 0.2, 0.3],
            names("x", 2),
            vec!["y".into()],
        )
        .unwrap();
        assert_eq!((d.n(), d.p(), d.q()), (3, 2, 1));
        assert_eq!(d.feature_column(1), &[4.0, 5.0, 6.0]);
        assert_eq!(d.response().sample(2), &[0.3]);
    }

    #[test]
    fn multivariate_response_rows() {
        let d = DataMatrix::new(
            2,
            vec![1.0, 2.0],
            vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0],
            names("x", 1),
            names("y", 3),
        )
        .unwrap();
        assert_eq!(d.response_row(0), &[1.0, 2.0, 3.0]);
        assert_eq!(d.response_row(1), &[4.0, 5.0, 6.0]);
        assert_eq!(d.response().dim(), 3);
    }

    #[test]
    fn rejects_duplicates_and_bad_shapes() {
        assert!(matches!(
            DataMatrix::new(
                2,
                vec![1.0, 2.0],
                vec![0.0, 0.0],
                vec!["a".into()],
                vec!["a".into()]
            ),
            Err(Error::InvalidParameter { .. })
        ));
        assert!(matches!(
            DataMatrix::new(
                2,
                vec![1.0],
                vec![0.0, 0.0],
                vec!["a".into()],
                vec!["y".into()]
            ),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn rejects_non_finite_cells() {
        let err = DataMatrix::new(
            2,
            vec![1.0, f64::INFINITY],
            vec![0.0, 0.0],
            vec!["a".into()],
            vec!["y".into()],
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::NonFinite {
                sample: 1,
                component: 0
            }
        );
    }
}
