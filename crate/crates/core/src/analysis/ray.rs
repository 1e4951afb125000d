//! Rays `α(t) = base + t·direction` of basis indices and their predicted
//! growth exponents.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{BigRational, MultiIndex};
use crate::error::{Error, Result};
use crate::operators::OperatorExpr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RaySpec {
    base: MultiIndex,
    direction: MultiIndex,
    t_values: Vec<u64>,
}

impl RaySpec {
    pub fn new(base: MultiIndex, direction: MultiIndex, t_values: Vec<u64>) -> Result<Self> {
        if base.dim() != direction.dim() {
            return Err(Error::DimensionMismatch {
                expected: base.dim(),
                found: direction.dim(),
            });
        }
        if direction.components().contains(&0) {
            return Err(Error::InvalidInput(format!("ray direction {direction} must have all components >= 1")));
        }
        if t_values.is_empty() || t_values[0] == 0 || t_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("t values must be positive and strictly increasing".into()));
        }
        let top = *t_values.last().expect("nonempty");
        if direction.components().iter().zip(base.components()).any(|(&d, &b)| {
            (d as u64).checked_mul(top).and_then(|x| x.checked_add(b as u64)).is_none_or(|x| x > u32::MAX as u64)
        }) {
            return Err(Error::InvalidInput("ray leaves the representable index range".into()));
        }
        Ok(RaySpec { base, direction, t_values })
    }

    /// All-ones direction.
    pub fn ones(base: MultiIndex, t_values: Vec<u64>) -> Result<Self> {
        let direction = MultiIndex::splat(base.dim(), 1);
        Self::new(base, direction, t_values)
    }

    /// The all-ones ray from [`default_base`] with `t = 2⁶, …, 2¹²`.
    pub fn default_for(expr: &OperatorExpr) -> Result<Self> {
        Self::ones(default_base(expr)?, TSchedule::default().values())
    }

    pub fn base(&self) -> &MultiIndex {
        &self.base
    }

    pub fn direction(&self) -> &MultiIndex {
        &self.direction
    }

    pub fn t_values(&self) -> &[u64] {
        &self.t_values
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn alpha(&self, t: u64) -> MultiIndex {
        self.base.add(&self.direction.scale(t as u32))
    }

    pub fn with_t_values(&self, t_values: Vec<u64>) -> Result<Self> {
        Self::new(self.base.clone(), self.direction.clone(), t_values)
    }
}

/// Componentwise sum over the symbols of `max |β_j − γ_j|` over their terms:
/// for `HP(f; g)` this is the smallest index on which the Hankel closed form
/// holds for every pair of monomials.
pub fn default_base(expr: &OperatorExpr) -> Result<MultiIndex> {
    let n = expr.dim()?;
    let mut base = MultiIndex::zeros(n);
    for sym in expr.symbols() {
        let mut widest = MultiIndex::zeros(n);
        for (b, g, _) in sym.terms() {
            widest = widest.join(&b.abs_diff(g));
        }
        base = base.add(&widest);
    }
    Ok(base)
}

/// `lo:hi:geometric` (doubling) or `lo:hi:linear[:step]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TSchedule {
    Geometric { lo: u64, hi: u64 },
    Linear { lo: u64, hi: u64, step: u64 },
}

impl Default for TSchedule {
    fn default() -> Self {
        TSchedule::Geometric { lo: 64, hi: 4096 }
    }
}

impl TSchedule {
    pub fn values(&self) -> Vec<u64> {
        match *self {
            TSchedule::Geometric { lo, hi } => std::iter::successors(Some(lo), |&t| t.checked_mul(2))
                .take_while(|&t| t <= hi)
                .collect(),
            TSchedule::Linear { lo, hi, step } => (lo..=hi).step_by(step as usize).collect(),
        }
    }
}

impl FromStr for TSchedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("bad t schedule {s:?}; expected lo:hi:geometric or lo:hi:linear[:step]"));
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        if parts.len() < 3 {
            return Err(bad());
        }
        let lo: u64 = parts[0].parse().map_err(|_| bad())?;
        let hi: u64 = parts[1].parse().map_err(|_| bad())?;
        if lo == 0 || hi < lo {
            return Err(Error::InvalidInput(format!("t range {lo}:{hi} must satisfy 1 <= lo <= hi")));
        }
        match (parts[2], parts.len()) {
            ("geometric", 3) => Ok(TSchedule::Geometric { lo, hi }),
            ("linear", 3) => Ok(TSchedule::Linear {
                lo,
                hi,
                step: ((hi - lo) / 16).max(1),
            }),
            ("linear", 4) => {
                let step: u64 = parts[3].parse().map_err(|_| bad())?;
                if step == 0 {
                    return Err(bad());
                }
                Ok(TSchedule::Linear { lo, hi, step })
            }
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GrowthKind {
    /// `T_{z^θ z̄^ϑ} T_{z^φ z̄^ψ}`
    ToeplitzMonoProduct,
    /// `H*_{z^β z̄^γ} H_{z^μ z̄^ν}`
    HankelMonoProduct,
}

/// Predicted amplitude exponent of `‖op · e_{α(t)}‖` in `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prediction {
    /// `None` when the coefficient vanishes identically on the ray.
    pub exponent: Option<BigRational>,
    pub degenerate: bool,
}

/// Stirling prediction for monomial symbol pairs. `params` is `(θ, ϑ, φ, ψ)`
/// for Toeplitz products and `(β, γ, μ, ν)` for Hankel products.
///
/// Every direction component is at least 1, so each `α_j(t)` grows linearly
/// and contributes its full exponent: `|θ+ϑ+φ+ψ|/2` for `T_f T_g`, and
/// `|β+γ+μ+ν|/2 − 1` for `H*_f H_g`, the `−1` coming from the factor
/// `Σ γ_j ν_j / α_j`. When `Σ γ_j ν_j = 0` that factor vanishes and the
/// prediction is flagged degenerate.
pub fn predicted_exponent(kind: GrowthKind, params: [&MultiIndex; 4], ray: &RaySpec) -> Result<Prediction> {
    for p in params {
        if p.dim() != ray.dim() {
            return Err(Error::DimensionMismatch {
                expected: ray.dim(),
                found: p.dim(),
            });
        }
    }
    let total: u64 = params.iter().map(|p| p.order()).sum();
    let half = BigRational::new(BigInt::from(total), BigInt::from(2));
    match kind {
        GrowthKind::ToeplitzMonoProduct => Ok(Prediction {
            exponent: Some(half),
            degenerate: false,
        }),
        GrowthKind::HankelMonoProduct => {
            let [_, gamma, _, nu] = params;
            if gamma.dot(nu) == 0 {
                return Ok(Prediction {
                    exponent: None,
                    degenerate: true,
                });
            }
            Ok(Prediction {
                exponent: Some(half - BigRational::from_integer(1.into())),
                degenerate: false,
            })
        }
    }
}
