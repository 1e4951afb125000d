//! End-to-end runs through the public API: text in, verdicts, exact
//! images, sweeps, fits and oracle estimates out.

use fockop_core::analysis::{
    classify_hankel_product, classify_toeplitz_product, corroborate, fit_exponent, norm_sweep, predicted_exponent,
    AnalysisConfig, GrowthKind, MatchedCase, RaySpec, TSchedule,
};
use fockop_core::arith::rational_to_f64;
use fockop_core::operators::{apply_operator, matrix_entry, parse_operator, toeplitz_mono_apply};
use fockop_core::oracle::{oracle_inner, oracle_toeplitz_coeff, OracleConfig, OracleMethod};
use fockop_core::symbols::parse_symbol;
use fockop_core::{BasisExpansion, BigRational, MultiIndex, OperatorExpr, SpaceParams};

fn mi(c: &[u32]) -> MultiIndex {
    MultiIndex::new(c.to_vec())
}

fn sp(n: usize, m: u32) -> SpaceParams {
    SpaceParams::new(n, m).unwrap()
}

#[test]
fn text_to_verdict_to_growth() {
    let f = parse_symbol("z*conj(z)", 1).unwrap();
    let v = classify_toeplitz_product(&f, &f);
    assert_eq!(v.matched_case, MatchedCase::NonConstantSymbol);
    let op = OperatorExpr::toeplitz_product(f.clone(), f);
    let ray = RaySpec::default_for(&op).unwrap();
    let c = corroborate(&v, &op, &sp(1, 2), &ray, &AnalysisConfig::default(), Some(1)).unwrap();
    assert!(c.consistent);
    assert!((c.fitted_exponent.unwrap() - 2.0).abs() < 0.05);
}

#[test]
fn bounded_hankel_product_stays_bounded() {
    let f = parse_symbol("z + 2*conj(z)", 1).unwrap();
    let g = parse_symbol("z^3 - conj(z)", 1).unwrap();
    let v = classify_hankel_product(&f, &g);
    assert!(v.holds);
    let op = OperatorExpr::HankelProduct(f, g);
    let ray = RaySpec::default_for(&op).unwrap();
    let c = corroborate(&v, &op, &sp(1, 0), &ray, &AnalysisConfig::default(), None).unwrap();
    assert!(c.consistent, "{:?}", c.growth_factor);
}

#[test]
fn parsed_operator_matches_hand_built_one() {
    let parsed = parse_operator("T(z*conj(z)) * T(z*conj(z))", 1).unwrap();
    let f = parse_symbol("z*conj(z)", 1).unwrap();
    assert_eq!(parsed, OperatorExpr::toeplitz_product(f.clone(), f));
    let img = apply_operator(&parsed, &BasisExpansion::basis(sp(1, 0), mi(&[3])).unwrap()).unwrap();
    assert_eq!(img.squared_norm(), BigRational::from_integer(256.into()));
}

#[test]
fn matrix_entries_of_the_creation_operator() {
    // ⟨T_z e_k, e_{k+1}⟩ = √(k+1) at m = 0
    let op = parse_operator("T(z)", 1).unwrap();
    for k in 0..6u32 {
        let c = matrix_entry(&op, &mi(&[k]), &mi(&[k + 1]), &sp(1, 0)).unwrap();
        assert_eq!(c.norm_sqr(), BigRational::from_integer((k + 1).into()));
        assert!(matrix_entry(&op, &mi(&[k]), &mi(&[k]), &sp(1, 0)).unwrap().is_zero());
    }
}

#[test]
fn oracle_tracks_exact_toeplitz_coefficients() {
    let cfg = OracleConfig::default();
    // n = 1, m = 0, T_z e_3 = 2 e_4
    let e = oracle_toeplitz_coeff(&mi(&[1]), &mi(&[0]), &mi(&[3]), &sp(1, 0), OracleMethod::RadialQuadrature, &cfg).unwrap();
    assert!((e.value - 2.0).abs() < 1e-10);
    // n = 1, m = 1, T_{zz̄} e_2 against the exact engine
    let (_, exact) = toeplitz_mono_apply(&mi(&[1]), &mi(&[1]), &mi(&[2]), &sp(1, 1)).unwrap().unwrap();
    let exact = exact.to_f64().0;
    for method in [OracleMethod::RadialQuadrature, OracleMethod::GammaIdentity] {
        let e = oracle_toeplitz_coeff(&mi(&[1]), &mi(&[1]), &mi(&[2]), &sp(1, 1), method, &cfg).unwrap();
        assert!((e.value - exact).abs() < 1e-10, "{method:?}");
    }
    // T_z̄ e_0 = 0
    let e = oracle_toeplitz_coeff(&mi(&[0]), &mi(&[1]), &mi(&[0]), &sp(1, 0), OracleMethod::GammaIdentity, &cfg).unwrap();
    assert_eq!(e.value, 0.0);
}

#[test]
fn oracle_inner_examples() {
    let cfg = OracleConfig::default();
    let one = oracle_inner(&mi(&[0]), &mi(&[0]), &sp(1, 0), OracleMethod::RadialQuadrature, &cfg).unwrap();
    assert!((one.value - 1.0).abs() <= 1e-12);
    let two = oracle_inner(&mi(&[2]), &mi(&[2]), &sp(1, 0), OracleMethod::RadialQuadrature, &cfg).unwrap();
    assert!((two.value - 2.0).abs() <= 1e-12);
    assert!(oracle_inner(&mi(&[1, 0]), &mi(&[1, 0]), &sp(2, 0), OracleMethod::RadialQuadrature, &cfg).is_err());
    let small = OracleConfig { samples: 200_000, ..cfg };
    let odd = oracle_inner(&mi(&[1, 0]), &mi(&[0, 1]), &sp(2, 1), OracleMethod::MonteCarlo, &small).unwrap();
    assert!(odd.brackets(0.0, 3.0), "{odd:?}");
}

#[test]
fn fitted_hankel_exponent_matches_prediction() {
    let op = parse_operator("HP(conj(z)^2; conj(z)^2)", 1).unwrap();
    let ray = RaySpec::default_for(&op).unwrap();
    let (zero, two) = (mi(&[0]), mi(&[2]));
    let p = predicted_exponent(GrowthKind::HankelMonoProduct, [&zero, &two, &zero, &two], &ray).unwrap();
    let samples: Vec<_> = norm_sweep(&op, &sp(1, 0), &ray, None)
        .unwrap()
        .into_iter()
        .map(|s| (s.t, s.squared_norm))
        .collect();
    let report = fit_exponent(&samples).unwrap().with_prediction(p.exponent.clone());
    let predicted = rational_to_f64(report.predicted_exponent.as_ref().unwrap());
    assert_eq!(predicted, 1.0);
    assert!((report.fitted_exponent - predicted).abs() < 0.05);
}

#[test]
fn linear_schedules_reach_the_upper_end() {
    let t: TSchedule = "10:50:linear:10".parse().unwrap();
    assert_eq!(t.values(), vec![10, 20, 30, 40, 50]);
}
