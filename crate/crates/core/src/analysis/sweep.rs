//! Exact norm sweeps along rays, ratio stabilization and numerical
//! corroboration of verdicts.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::classify::Verdict;
use super::fit::fit_exponent;
use super::ray::RaySpec;
use crate::arith::{ln_rational, BigRational, MultiIndex};
use crate::error::{Error, Result};
use crate::operators::{apply_operator, BasisExpansion, OperatorExpr, SpaceParams};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisConfig {
    /// Allowed |fitted − predicted| exponent.
    pub fit_tolerance: f64,
    /// Half-width of the ratio-stabilization window around 1.
    pub ratio_window: f64,
    /// Smallest t used for ratio stabilization.
    pub ratio_min_t: u64,
    /// Bounded verdicts: largest allowed `max_t ‖·‖² / ‖·‖²(t₀)`.
    pub bounded_factor: f64,
    /// Unbounded verdicts: smallest fitted exponent accepted as growth.
    pub growth_threshold: f64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            fit_tolerance: 0.05,
            ratio_window: 0.02,
            ratio_min_t: 1024,
            bounded_factor: 4.0,
            growth_threshold: 0.4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormSample {
    pub t: u64,
    pub alpha: MultiIndex,
    pub squared_norm: BigRational,
}

fn run_with_jobs<T: Send>(jobs: Option<usize>, work: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(work()),
        Some(0) => Err(Error::InvalidInput("--jobs must be at least 1".into())),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map(|pool| pool.install(work))
            .map_err(|e| Error::InvalidInput(format!("cannot start {j} workers: {e}"))),
    }
}

/// `‖expr · e_α‖²`, exact.
pub fn image_squared_norm(expr: &OperatorExpr, sp: &SpaceParams, alpha: &MultiIndex) -> Result<BigRational> {
    Ok(apply_operator(expr, &BasisExpansion::basis(*sp, alpha.clone())?)?.squared_norm())
}

/// Exact `‖expr · e_{α(t)}‖²` for every `t` of the ray, in `t` order. `jobs`
/// bounds the worker count (`None`: the global pool).
pub fn norm_sweep(expr: &OperatorExpr, sp: &SpaceParams, ray: &RaySpec, jobs: Option<usize>) -> Result<Vec<NormSample>> {
    sp.check_index(ray.base())?;
    run_with_jobs(jobs, || {
        ray.t_values()
            .par_iter()
            .map(|&t| {
                let alpha = ray.alpha(t);
                let squared_norm = image_squared_norm(expr, sp, &alpha)?;
                Ok(NormSample { t, alpha, squared_norm })
            })
            .collect::<Result<Vec<_>>>()
    })?
}

/// `‖·e_{α(2t)}‖ / (‖·e_{α(t)}‖ · 2^p)` for each `t` of the ray.
pub fn ratio_stabilization(
    expr: &OperatorExpr,
    sp: &SpaceParams,
    ray: &RaySpec,
    predicted: f64,
    jobs: Option<usize>,
) -> Result<Vec<(u64, f64)>> {
    let doubled = ray.with_t_values(ray.t_values().iter().map(|t| 2 * t).collect())?;
    let here = norm_sweep(expr, sp, ray, jobs)?;
    let there = norm_sweep(expr, sp, &doubled, jobs)?;
    here.iter()
        .zip(&there)
        .map(|(a, b)| {
            if a.squared_norm == BigRational::from_integer(0.into()) || b.squared_norm == BigRational::from_integer(0.into()) {
                return Err(Error::Degenerate(format!("zero norm near t = {}", a.t)));
            }
            let log_ratio = 0.5 * (ln_rational(&b.squared_norm) - ln_rational(&a.squared_norm)) - predicted * std::f64::consts::LN_2;
            Ok((a.t, log_ratio.exp()))
        })
        .collect()
}

/// Numerical evidence for a verdict along a ray.
#[derive(Clone, Debug, PartialEq)]
pub struct Corroboration {
    pub samples: Vec<NormSample>,
    /// Fitted amplitude exponent (`None` if some norm vanishes).
    pub fitted_exponent: Option<f64>,
    /// `max_t ‖·‖² / ‖·‖²(t₀)` (`None` if the first norm vanishes).
    pub growth_factor: Option<f64>,
    pub consistent: bool,
}

/// Bounded verdicts need the squared norms to stay within
/// `bounded_factor` times the first one; unbounded verdicts need a fitted
/// exponent of at least `growth_threshold`.
pub fn corroborate(
    verdict: &Verdict,
    expr: &OperatorExpr,
    sp: &SpaceParams,
    ray: &RaySpec,
    config: &AnalysisConfig,
    jobs: Option<usize>,
) -> Result<Corroboration> {
    let samples = norm_sweep(expr, sp, ray, jobs)?;
    let pairs: Vec<(u64, BigRational)> = samples.iter().map(|s| (s.t, s.squared_norm.clone())).collect();
    let fitted_exponent = fit_exponent(&pairs).ok().map(|r| r.fitted_exponent);
    let zero = BigRational::from_integer(0.into());
    let first = &samples[0].squared_norm;
    let growth_factor = if *first == zero {
        samples.iter().all(|s| s.squared_norm == zero).then_some(0.0)
    } else {
        let ln0 = ln_rational(first);
        Some(
            samples
                .iter()
                .map(|s| if s.squared_norm == zero { 0.0 } else { (ln_rational(&s.squared_norm) - ln0).exp() })
                .fold(0.0, f64::max),
        )
    };
    let consistent = if verdict.holds {
        growth_factor.is_some_and(|g| g <= config.bounded_factor)
    } else {
        fitted_exponent.is_some_and(|e| e >= config.growth_threshold)
    };
    Ok(Corroboration {
        samples,
        fitted_exponent,
        growth_factor,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{classify_hankel_product, classify_toeplitz_product};
    use crate::operators::parse_operator;
    use crate::symbols::parse_symbol;

    fn mi(c: &[u32]) -> MultiIndex {
        MultiIndex::new(c.to_vec())
    }

    #[test]
    fn sweep_is_ordered_and_exact() {
        let sp = SpaceParams::new(1, 0).unwrap();
        let op = parse_operator("T(z*conj(z)) * T(z*conj(z))", 1).unwrap();
        let ray = RaySpec::ones(mi(&[0]), vec![1, 3, 64]).unwrap();
        let s = norm_sweep(&op, &sp, &ray, Some(1)).unwrap();
        let ts: Vec<u64> = s.iter().map(|x| x.t).collect();
        assert_eq!(ts, vec![1, 3, 64]);
        assert_eq!(s[1].squared_norm, BigRational::from_integer(256.into()));
        assert_eq!(s[2].squared_norm, BigRational::from_integer((65u64.pow(4)).into()));
    }

    #[test]
    fn parallel_and_serial_agree() {
        let sp = SpaceParams::new(2, 1).unwrap();
        let op = parse_operator("HP(conj(z1)^2 + z2; conj(z1)*conj(z2))", 2).unwrap();
        let ray = RaySpec::ones(mi(&[3, 3]), vec![1, 2, 3, 5, 8, 13]).unwrap();
        assert_eq!(norm_sweep(&op, &sp, &ray, Some(1)).unwrap(), norm_sweep(&op, &sp, &ray, Some(3)).unwrap());
    }

    #[test]
    fn ratios_settle_for_hankel_square() {
        let sp = SpaceParams::new(1, 0).unwrap();
        let op = parse_operator("HP(conj(z)^2; conj(z)^2)", 1).unwrap();
        let ray = RaySpec::ones(mi(&[4]), vec![1024, 2048]).unwrap();
        for (_, r) in ratio_stabilization(&op, &sp, &ray, 1.0, None).unwrap() {
            assert!((r - 1.0).abs() < 0.02, "{r}");
        }
    }

    #[test]
    fn corroboration_examples() {
        let sp = SpaceParams::new(1, 0).unwrap();
        let cfg = AnalysisConfig::default();
        let (f, g) = (parse_symbol("z + 2*conj(z)", 1).unwrap(), parse_symbol("z^3 - conj(z)", 1).unwrap());
        let op = OperatorExpr::HankelProduct(f.clone(), g.clone());
        let ray = RaySpec::default_for(&op).unwrap();
        let c = corroborate(&classify_hankel_product(&f, &g), &op, &sp, &ray, &cfg, None).unwrap();
        assert!(c.consistent, "{c:?}");

        let (f, g) = (parse_symbol("z", 1).unwrap(), parse_symbol("1", 1).unwrap());
        let op = OperatorExpr::toeplitz_product(f.clone(), g.clone());
        let ray = RaySpec::default_for(&op).unwrap();
        let c = corroborate(&classify_toeplitz_product(&f, &g), &op, &sp, &ray, &cfg, None).unwrap();
        assert!(c.consistent);
        assert!((c.fitted_exponent.unwrap() - 0.5).abs() < 0.05);
    }
}
