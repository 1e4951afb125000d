//! Self-checks: exact orthonormality, the Hankel closed form against the
//! composition, and the numerical oracle against the exact engine.

use clap::Subcommand;
use fockop_core::arith::{rational_to_f64, GaussianRational};
use fockop_core::operators::{
    basis_coefficient, hankel_coeff_closed_form, hankel_product_apply, hankel_validity_floor, monomial_inner,
};
use fockop_core::oracle::{oracle_inner, oracle_inner_batch, OracleEstimate, OracleMethod};
use fockop_core::{BasisExpansion, MultiIndex, RadicalCoefficient, SpaceParams, SymbolPolynomial};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::report::{self, Report};
use crate::settings::Settings;

/// Mismatches listed in full before the report only counts them.
const SHOWN: usize = 10;

#[derive(Subcommand, Debug, Clone)]
pub enum VerifyCheck {
    /// c_α c_η ⟨z^α, z^η⟩ = δ_αη exactly
    Orthonormality {
        /// Only this dimension (default 1, 2, 3)
        #[arg(short = 'n')]
        n: Option<usize>,
        /// Only this Sobolev order (default 0..=3)
        #[arg(short = 'm')]
        m: Option<u32>,
        #[arg(long, default_value_t = 8)]
        max_order: u32,
    },
    /// Closed-form H*_f H_g coefficients against the composition formula
    HankelClosedForm {
        /// Only this dimension (default 1, 2)
        #[arg(short = 'n')]
        n: Option<usize>,
        /// Only this Sobolev order (default 0..=2)
        #[arg(short = 'm')]
        m: Option<u32>,
        /// Largest component of β, γ, μ, ν
        #[arg(long, default_value_t = 2)]
        max_exponent: u32,
        /// Largest component of α
        #[arg(long, default_value_t = 12)]
        max_alpha: u32,
    },
    /// Quadrature, Γ and Monte Carlo estimates against exact inner products
    Oracle {
        /// Largest |a| for the n = 1 quadrature and Γ checks
        #[arg(long, default_value_t = 10)]
        max_order: u32,
        /// Largest |a| for the n = 2 Monte Carlo check
        #[arg(long, default_value_t = 4)]
        mc_max_order: u32,
    },
}

fn spaces(n: Option<usize>, m: Option<u32>, n_max: usize, m_max: u32) -> Result<Vec<SpaceParams>, CliError> {
    let ns: Vec<usize> = n.map_or((1..=n_max).collect(), |n| vec![n]);
    let ms: Vec<u32> = m.map_or((0..=m_max).collect(), |m| vec![m]);
    let mut out = Vec::new();
    for &n in &ns {
        for &m in &ms {
            out.push(SpaceParams::new(n, m)?);
        }
    }
    Ok(out)
}

fn spaces_value(spaces: &[SpaceParams]) -> Value {
    Value::Array(spaces.iter().map(|s| json!({ "n": s.n, "m": s.m })).collect())
}

fn summary(report: Report, checked: u64, mismatches: Vec<String>) -> Report {
    let passed = mismatches.is_empty();
    report
        .output("checked", checked)
        .output("mismatch_count", mismatches.len())
        .output("mismatches", mismatches.into_iter().take(SHOWN).collect::<Vec<_>>())
        .output("passed", passed)
        .failed(!passed)
}

pub fn verify(check: VerifyCheck, settings: &Settings) -> Result<Report, CliError> {
    match check {
        VerifyCheck::Orthonormality { n, m, max_order } => orthonormality(spaces(n, m, 3, 3)?, max_order, settings),
        VerifyCheck::HankelClosedForm {
            n,
            m,
            max_exponent,
            max_alpha,
        } => hankel_closed_form(spaces(n, m, 2, 2)?, max_exponent, max_alpha, settings),
        VerifyCheck::Oracle { max_order, mc_max_order } => oracle(max_order, mc_max_order, settings),
    }
}

fn orthonormality(spaces: Vec<SpaceParams>, max_order: u32, settings: &Settings) -> Result<Report, CliError> {
    let mut checked = 0u64;
    let mut mismatches = Vec::new();
    for s in &spaces {
        let idx = MultiIndex::all_up_to_order(s.n, max_order);
        let coeffs = idx
            .iter()
            .map(|a| basis_coefficient(a, s))
            .collect::<Result<Vec<RadicalCoefficient>, _>>()?;
        let rows: Vec<Vec<String>> = settings.install(|| {
            (0..idx.len())
                .into_par_iter()
                .map(|i| {
                    let mut bad = Vec::new();
                    for j in 0..idx.len() {
                        let ip = monomial_inner(&idx[i], &idx[j], s).expect("matching dimensions");
                        let v = coeffs[i].mul(&coeffs[j]).scale_real(&ip);
                        let expected = if i == j { RadicalCoefficient::one() } else { RadicalCoefficient::zero() };
                        if v != expected {
                            bad.push(format!("n={} m={} α={} η={}: {v}", s.n, s.m, idx[i], idx[j]));
                        }
                    }
                    bad
                })
                .collect()
        })?;
        checked += (idx.len() * idx.len()) as u64;
        mismatches.extend(rows.into_iter().flatten());
    }
    let report = Report::new("verify orthonormality", None)
        .input("spaces", spaces_value(&spaces))
        .input("max_order", max_order);
    Ok(summary(report, checked, mismatches))
}

fn mono(beta: &MultiIndex, gamma: &MultiIndex) -> SymbolPolynomial {
    SymbolPolynomial::monomial(beta.dim(), beta.clone(), gamma.clone(), GaussianRational::one())
}

struct TupleResult {
    coefficients: u64,
    mismatches: Vec<String>,
    /// The closed form vanishes on the whole range while γ ≠ 0 and ν ≠ 0, or
    /// the other way round.
    vanishing_exception: Option<String>,
}

fn hankel_tuple(s: &SpaceParams, tuple: &[MultiIndex; 4], alphas: &[MultiIndex]) -> Result<TupleResult, CliError> {
    let [beta, gamma, mu, nu] = tuple;
    let (f, g) = (mono(beta, gamma), mono(mu, nu));
    let floor = hankel_validity_floor(beta, gamma, mu, nu);
    let mut out = TupleResult {
        coefficients: 0,
        mismatches: Vec::new(),
        vanishing_exception: None,
    };
    let mut all_zero = true;
    for alpha in alphas.iter().filter(|a| a.dominates(&floor)) {
        let (target, closed) = hankel_coeff_closed_form(beta, gamma, mu, nu, alpha, s)?;
        let via = hankel_product_apply(&f, &g, &BasisExpansion::basis(*s, alpha.clone())?)?;
        out.coefficients += 1;
        if via.coefficient(&target) != closed || via.iter().any(|(k, _)| *k != target) {
            out.mismatches
                .push(format!("n={} m={} β={beta} γ={gamma} μ={mu} ν={nu} α={alpha}", s.n, s.m));
        }
        all_zero &= via.is_zero();
    }
    if out.coefficients > 0 && all_zero != (gamma.is_zero() || nu.is_zero()) {
        out.vanishing_exception = Some(format!("n={} m={} β={beta} γ={gamma} μ={mu} ν={nu}", s.n, s.m));
    }
    Ok(out)
}

fn hankel_closed_form(spaces: Vec<SpaceParams>, max_exponent: u32, max_alpha: u32, settings: &Settings) -> Result<Report, CliError> {
    let mut tuples = 0u64;
    let mut coefficients = 0u64;
    let mut mismatches = Vec::new();
    let mut exceptions = Vec::new();
    for s in &spaces {
        let small = MultiIndex::box_up_to(s.n, max_exponent);
        let alphas = MultiIndex::box_up_to(s.n, max_alpha);
        let mut all = Vec::new();
        for b in &small {
            for g in &small {
                for mu in &small {
                    for nu in &small {
                        all.push([b.clone(), g.clone(), mu.clone(), nu.clone()]);
                    }
                }
            }
        }
        let results = settings.install(|| {
            all.par_iter()
                .map(|t| hankel_tuple(s, t, &alphas))
                .collect::<Result<Vec<_>, _>>()
        })??;
        tuples += all.len() as u64;
        for r in results {
            coefficients += r.coefficients;
            mismatches.extend(r.mismatches);
            exceptions.extend(r.vanishing_exception);
        }
    }
    let report = Report::new("verify hankel-closed-form", None)
        .input("spaces", spaces_value(&spaces))
        .input("max_exponent", max_exponent)
        .input("max_alpha", max_alpha)
        .output("tuples", tuples)
        .output(
            "vanishing_rule",
            json!({
                "rule": "the coefficient vanishes on the whole range iff gamma = 0 or nu = 0",
                "exception_count": exceptions.len(),
                "exceptions": exceptions.iter().take(SHOWN).collect::<Vec<_>>(),
            }),
        );
    Ok(summary(report, coefficients, mismatches))
}

fn estimate_value(e: &OracleEstimate) -> Value {
    json!({
        "value": report::float(e.value),
        "error": report::float(e.error.magnitude()),
    })
}

fn oracle(max_order: u32, mc_max_order: u32, settings: &Settings) -> Result<Report, CliError> {
    let cfg = &settings.oracle;
    let mut mismatches = Vec::new();
    let mut rows = Vec::new();
    let mut checked = 0u64;
    let mut worst_rel = 0.0f64;
    for m in 0..=3 {
        let s = SpaceParams::new(1, m)?;
        for a in 0..=max_order {
            let a = MultiIndex::new(vec![a]);
            let exact = monomial_inner(&a, &a, &s)?;
            let x = rational_to_f64(&exact);
            for method in [OracleMethod::RadialQuadrature, OracleMethod::GammaIdentity] {
                let e = oracle_inner(&a, &a, &s, method, cfg)?;
                let rel = ((e.value - x) / x).abs();
                worst_rel = worst_rel.max(rel);
                checked += 1;
                let pass = rel <= 1e-10;
                if !pass {
                    mismatches.push(format!("{method:?} n=1 m={m} a={a}: {} vs {x}", e.value));
                }
                rows.push(json!({
                    "method": format!("{method:?}"), "n": 1, "m": m, "a": a.to_string(),
                    "exact": report::rational(&exact), "estimate": estimate_value(&e), "pass": pass,
                }));
            }
        }
    }
    let mut worst_z = 0.0f64;
    for m in 0..=2 {
        let s = SpaceParams::new(2, m)?;
        let pairs: Vec<(MultiIndex, MultiIndex)> =
            MultiIndex::all_up_to_order(2, mc_max_order).into_iter().map(|a| (a.clone(), a)).collect();
        let estimates = settings.install(|| oracle_inner_batch(&pairs, &s, OracleMethod::MonteCarlo, cfg))??;
        for ((a, b), e) in pairs.iter().zip(&estimates) {
            let exact = monomial_inner(a, b, &s)?;
            let x = rational_to_f64(&exact);
            worst_z = worst_z.max((e.value - x).abs() / e.error.magnitude());
            checked += 1;
            let pass = e.brackets(x, 3.0);
            if !pass {
                mismatches.push(format!("MonteCarlo n=2 m={m} a={a}: {} vs {x}", e.value));
            }
            rows.push(json!({
                "method": "MonteCarlo", "n": 2, "m": m, "a": a.to_string(),
                "exact": report::rational(&exact), "estimate": estimate_value(e), "pass": pass,
            }));
        }
    }
    let report = Report::new("verify oracle", None)
        .input("max_order", max_order)
        .input("mc_max_order", mc_max_order)
        .input("seed", cfg.seed)
        .input("samples", cfg.samples)
        .input("tol", report::float(cfg.quad_tol))
        .output("worst_relative_error", report::float(worst_rel))
        .output("worst_standard_errors", report::float(worst_z))
        .output("estimates", rows);
    Ok(summary(report, checked, mismatches))
}
