//! Log-log fitting of amplitude exponents.

use num_traits::Signed;

use crate::arith::{ln_rational, BigRational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ExponentReport {
    pub predicted_exponent: Option<BigRational>,
    pub fitted_exponent: f64,
    /// max_i |‖·‖_i / fitted_i − 1| over the samples.
    pub residual: f64,
    pub samples: Vec<(u64, BigRational)>,
}

impl ExponentReport {
    pub fn with_prediction(mut self, p: Option<BigRational>) -> Self {
        self.predicted_exponent = p;
        self
    }
}

/// Least-squares slope of `(ln t, ½ ln ‖·‖²)`.
pub fn fit_exponent(samples: &[(u64, BigRational)]) -> Result<ExponentReport> {
    if samples.len() < 4 {
        return Err(Error::InvalidInput(format!("need at least 4 samples, got {}", samples.len())));
    }
    if samples.windows(2).any(|w| w[0].0 >= w[1].0) || samples[0].0 == 0 {
        return Err(Error::InvalidInput("t values must be positive and strictly increasing".into()));
    }
    if let Some((t, _)) = samples.iter().find(|(_, v)| !v.is_positive()) {
        return Err(Error::Degenerate(format!("squared norm vanishes at t = {t}; the operator annihilates the ray")));
    }
    let xs: Vec<f64> = samples.iter().map(|(t, _)| (*t as f64).ln()).collect();
    let ys: Vec<f64> = samples.iter().map(|(_, v)| 0.5 * ln_rational(v)).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| ((y - (intercept + slope * x)).exp() - 1.0).abs())
        .fold(0.0, f64::max);
    Ok(ExponentReport {
        predicted_exponent: None,
        fitted_exponent: slope,
        residual,
        samples: samples.to_vec(),
    })
}
