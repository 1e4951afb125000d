//! Floating-point cross-checks of the exact engine that share none of its
//! factorial or rational code: adaptive quadrature of the radial integral
//! (n = 1), a Lanczos Γ evaluation, and seeded Monte Carlo.
//!
//! All three estimate `⟨z^a, z^b⟩_m = E[z^a z̄^b |z|^{2m}] / E[|z|^{2m}]`
//! for `z` standard complex Gaussian on ℂⁿ, which is the normalized
//! F²'ᵐ inner product.

mod gamma;
mod montecarlo;
mod quadrature;

use serde::{Deserialize, Serialize};

pub use gamma::ln_gamma;
pub use montecarlo::{gaussian_moments, MomentEstimate, MomentQuery, CHUNKS};
pub use quadrature::{integrate, radial_moment};

use crate::arith::MultiIndex;
use crate::error::{Error, Result};
use crate::operators::SpaceParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OracleMethod {
    RadialQuadrature,
    GammaIdentity,
    MonteCarlo,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum OracleError {
    /// Absolute error bound (quadrature, Γ).
    Absolute(f64),
    StandardError { standard_error: f64, samples: u64 },
}

impl OracleError {
    pub fn magnitude(&self) -> f64 {
        match *self {
            OracleError::Absolute(e) => e,
            OracleError::StandardError { standard_error, .. } => standard_error,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OracleEstimate {
    pub value: f64,
    pub error: OracleError,
    pub method: OracleMethod,
}

impl OracleEstimate {
    fn exact_zero(method: OracleMethod) -> Self {
        OracleEstimate {
            value: 0.0,
            error: OracleError::Absolute(0.0),
            method,
        }
    }

    /// `|value − reference| ≤ k · error` (with `k` ignored for exact zeros).
    pub fn brackets(&self, reference: f64, k: f64) -> bool {
        (self.value - reference).abs() <= k * self.error.magnitude()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OracleConfig {
    pub seed: u64,
    pub samples: u64,
    /// Relative tolerance of the adaptive quadrature.
    pub quad_tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            seed: 0x5EED,
            samples: 10_000_000,
            quad_tol: 1e-12,
        }
    }
}

fn check(sp: &SpaceParams, method: OracleMethod, xs: &[&MultiIndex]) -> Result<()> {
    for x in xs {
        if x.dim() != sp.n {
            return Err(Error::DimensionMismatch {
                expected: sp.n,
                found: x.dim(),
            });
        }
    }
    if method == OracleMethod::RadialQuadrature && sp.n != 1 {
        return Err(Error::InvalidInput("radial quadrature is only available for n = 1".into()));
    }
    Ok(())
}

/// `⟨z^a, z^a⟩_m` by quadrature: `Q(|a| + m) / Q(m)`.
fn quadrature_norm(a: u32, m: u32, tol: f64) -> (f64, f64) {
    // the ratio's relative error is at most the sum of both; the tail adds
    // up to 1e-16 on top of each
    let (top, top_err) = radial_moment(a + m, 0.4 * tol);
    let (bottom, bottom_err) = radial_moment(m, 0.4 * tol);
    let value = top / bottom;
    (value, value * (top_err / top + bottom_err / bottom))
}

/// `⟨z^a, z^a⟩_m = a! Γ(n) Γ(m+n+|a|) / (Γ(n+|a|) Γ(m+n))` through `ln Γ`.
fn gamma_norm(a: &[u32], m: u32) -> (f64, f64) {
    let n = a.len() as f64;
    let k: f64 = a.iter().map(|&x| x as f64).sum();
    let m = m as f64;
    let mut terms: Vec<f64> = a.iter().map(|&x| ln_gamma(x as f64 + 1.0)).collect();
    terms.extend([ln_gamma(n), ln_gamma(m + n + k), -ln_gamma(n + k), -ln_gamma(m + n)]);
    let log_value: f64 = terms.iter().sum();
    let value = log_value.exp();
    // each ln Γ carries a few ulps of absolute error
    let log_err = 1e-14 * (terms.len() as f64) * terms.iter().map(|t| t.abs().max(1.0)).fold(0.0, f64::max);
    (value, value * log_err.exp_m1())
}

/// Estimates of `⟨z^a, z^b⟩_m` for a batch of pairs; Monte Carlo requests
/// share one sample batch.
pub fn oracle_inner_batch(
    pairs: &[(MultiIndex, MultiIndex)],
    sp: &SpaceParams,
    method: OracleMethod,
    config: &OracleConfig,
) -> Result<Vec<OracleEstimate>> {
    for (a, b) in pairs {
        check(sp, method, &[a, b])?;
    }
    match method {
        OracleMethod::RadialQuadrature => Ok(pairs
            .iter()
            .map(|(a, b)| {
                if a != b {
                    // the angular integral of z^a z̄^b vanishes
                    return OracleEstimate::exact_zero(method);
                }
                let (value, err) = quadrature_norm(a.get(0), sp.m, config.quad_tol);
                OracleEstimate {
                    value,
                    error: OracleError::Absolute(err),
                    method,
                }
            })
            .collect()),
        OracleMethod::GammaIdentity => Ok(pairs
            .iter()
            .map(|(a, b)| {
                if a != b {
                    return OracleEstimate::exact_zero(method);
                }
                let (value, err) = gamma_norm(a.components(), sp.m);
                OracleEstimate {
                    value,
                    error: OracleError::Absolute(err),
                    method,
                }
            })
            .collect()),
        OracleMethod::MonteCarlo => {
            if config.samples < 2 {
                return Err(Error::InvalidInput("Monte Carlo needs at least 2 samples".into()));
            }
            let queries: Vec<MomentQuery> = pairs
                .iter()
                .map(|(a, b)| MomentQuery {
                    a: a.components().to_vec(),
                    b: b.components().to_vec(),
                    m: sp.m,
                })
                .collect();
            let raw = gaussian_moments(&queries, sp.n, config.samples, config.seed);
            // E|z|^{2m} = Γ(n+m)/Γ(n)
            let n = sp.n as f64;
            let norm = (ln_gamma(n + sp.m as f64) - ln_gamma(n)).exp();
            Ok(raw
                .into_iter()
                .map(|e| OracleEstimate {
                    value: e.mean / norm,
                    error: OracleError::StandardError {
                        standard_error: e.standard_error / norm,
                        samples: e.samples,
                    },
                    method,
                })
                .collect())
        }
    }
}

/// Estimate of `⟨z^a, z^b⟩_m`.
pub fn oracle_inner(a: &MultiIndex, b: &MultiIndex, sp: &SpaceParams, method: OracleMethod, config: &OracleConfig) -> Result<OracleEstimate> {
    Ok(oracle_inner_batch(&[(a.clone(), b.clone())], sp, method, config)?[0])
}

/// Estimate of `⟨T_{z^β z̄^γ} e_α, e_η⟩`, `η = α + β − γ`, as
/// `⟨z^{α+β}, z^{α+β}⟩ / √(⟨z^α, z^α⟩ ⟨z^η, z^η⟩)`. Exactly zero when `η`
/// has a negative component.
pub fn oracle_toeplitz_coeff(
    beta: &MultiIndex,
    gamma: &MultiIndex,
    alpha: &MultiIndex,
    sp: &SpaceParams,
    method: OracleMethod,
    config: &OracleConfig,
) -> Result<OracleEstimate> {
    check(sp, method, &[beta, gamma, alpha])?;
    let Some(eta) = alpha.shift(beta, gamma) else {
        return Ok(OracleEstimate::exact_zero(method));
    };
    let lifted = alpha.add(beta);
    let pairs = [
        (lifted.clone(), eta.add(gamma)),
        (alpha.clone(), alpha.clone()),
        (eta.clone(), eta),
    ];
    let [top, na, ne] = oracle_inner_batch(&pairs, sp, method, config)?.try_into().expect("three estimates");
    let value = top.value / (na.value * ne.value).sqrt();
    let rel = top.error.magnitude() / top.value.abs() + 0.5 * (na.error.magnitude() / na.value + ne.error.magnitude() / ne.value);
    let error = match top.error {
        OracleError::Absolute(_) => OracleError::Absolute(value.abs() * rel),
        OracleError::StandardError { samples, .. } => OracleError::StandardError {
            standard_error: value.abs() * rel,
            samples,
        },
    };
    Ok(OracleEstimate { value, error, method })
}
