//! Monomial inner products, basis constants and the Toeplitz action on
//! basis vectors.
//!
//! With `η = α + β − γ`, `T_{z^β z̄^γ} e_α = P_m(c_α z^{α+β} z̄^γ)`, and the
//! projection of `z^{α+β} z̄^γ` onto `z^η` has coefficient
//! `⟨z^{α+β}, z^{α+β}⟩ / ⟨z^η, z^η⟩`. Hence the coefficient of `e_η` is
//! `c_α c_η ⟨z^{α+β}, z^{α+β}⟩_m`.

use super::expansion::BasisExpansion;
use super::space::SpaceParams;
use crate::arith::{BigRational, FactorialRatio, MultiIndex, RadicalCoefficient};
use crate::error::Result;
use crate::symbols::SymbolPolynomial;

/// `c_α² = (m+n−1)!(n−1+|α|)! / (α!(n−1)!(m+n−1+|α|)!)`
pub(crate) fn basis_sq_ratio(alpha: &MultiIndex, sp: &SpaceParams) -> FactorialRatio {
    let k = alpha.order();
    let mut r = FactorialRatio::default();
    r.num(sp.mn1())
        .num(sp.nm1() + k)
        .den_all(alpha.components().iter().map(|&a| a as u64))
        .den(sp.nm1())
        .den(sp.mn1() + k);
    r
}

/// `⟨z^a, z^a⟩_m = a!(n−1)!(m+n−1+|a|)! / ((m+n−1)!(n−1+|a|)!)`
pub(crate) fn inner_ratio(a: &MultiIndex, sp: &SpaceParams) -> FactorialRatio {
    basis_sq_ratio(a, sp).inverse()
}

/// `⟨z^a, z^b⟩_m`, exact.
pub fn monomial_inner(a: &MultiIndex, b: &MultiIndex, sp: &SpaceParams) -> Result<BigRational> {
    sp.check_index(a)?;
    sp.check_index(b)?;
    if a != b {
        return Ok(BigRational::from_integer(0.into()));
    }
    Ok(inner_ratio(a, sp).eval())
}

/// The normalizing constant `c_α` of `e_α = c_α z^α`, canonical.
pub fn basis_coefficient(alpha: &MultiIndex, sp: &SpaceParams) -> Result<RadicalCoefficient> {
    sp.check_index(alpha)?;
    Ok(RadicalCoefficient::sqrt_of(&basis_sq_ratio(alpha, sp)))
}

/// `T_{z^β z̄^γ} e_α = coeff · e_target`, or `None` when `α + β − γ` has a
/// negative component.
pub fn toeplitz_mono_apply(
    beta: &MultiIndex,
    gamma: &MultiIndex,
    alpha: &MultiIndex,
    sp: &SpaceParams,
) -> Result<Option<(MultiIndex, RadicalCoefficient)>> {
    sp.check_index(beta)?;
    sp.check_index(gamma)?;
    sp.check_index(alpha)?;
    Ok(mono_apply_unchecked(beta, gamma, alpha, sp))
}

pub(crate) fn mono_apply_unchecked(
    beta: &MultiIndex,
    gamma: &MultiIndex,
    alpha: &MultiIndex,
    sp: &SpaceParams,
) -> Option<(MultiIndex, RadicalCoefficient)> {
    let eta = alpha.shift(beta, gamma)?;
    let lifted = alpha.add(beta);
    let inner = inner_ratio(&lifted, sp);
    // coeff² = c_α² c_η² ⟨z^{α+β}, z^{α+β}⟩²
    let sq = basis_sq_ratio(alpha, sp)
        .times(&basis_sq_ratio(&eta, sp))
        .times(&inner)
        .times(&inner);
    Some((eta, RadicalCoefficient::sqrt_of(&sq)))
}

/// `T_f v`, merging contributions to each target exactly.
pub fn toeplitz_apply(f: &SymbolPolynomial, v: &BasisExpansion) -> Result<BasisExpansion> {
    let sp = v.space();
    sp.check_dim(f.dim())?;
    let mut out = BasisExpansion::zero(sp);
    for (alpha, c) in v.iter() {
        for (beta, gamma, a) in f.terms() {
            if let Some((eta, k)) = mono_apply_unchecked(beta, gamma, alpha, &sp) {
                out.accumulate(eta, &k.mul(c).scale(a))?;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::GaussianRational;
    use crate::symbols::parse_symbol;
    use num_bigint::BigUint;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn sp(n: usize, m: u32) -> SpaceParams {
        SpaceParams::new(n, m).unwrap()
    }

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    fn mi(c: &[u32]) -> MultiIndex {
        MultiIndex::new(c.to_vec())
    }

    fn naive_fact(k: u64) -> BigUint {
        (1..=k).fold(BigUint::one(), |acc, j| acc * j)
    }

    /// ⟨z^a, z^a⟩_m from the integral formula with full factorials.
    fn naive_inner(a: &[u32], n: u64, m: u64) -> BigRational {
        let k: u64 = a.iter().map(|&x| x as u64).sum();
        let num = a.iter().fold(BigUint::one(), |acc, &x| acc * naive_fact(x as u64))
            * naive_fact(n - 1)
            * naive_fact(m + n - 1 + k);
        let den = naive_fact(m + n - 1) * naive_fact(n - 1 + k);
        BigRational::new(num.into(), den.into())
    }

    #[test]
    fn inner_product_examples() {
        assert_eq!(monomial_inner(&mi(&[0]), &mi(&[0]), &sp(1, 3)).unwrap(), q(1, 1));
        assert_eq!(monomial_inner(&mi(&[2]), &mi(&[2]), &sp(1, 0)).unwrap(), q(2, 1));
        assert!(monomial_inner(&mi(&[1, 0]), &mi(&[0, 1]), &sp(2, 2)).unwrap().is_zero());
    }

    #[test]
    fn inner_matches_naive_formula() {
        for n in 1..=3u64 {
            for m in 0..=3u64 {
                for a in MultiIndex::all_up_to_order(n as usize, 6) {
                    let got = monomial_inner(&a, &a, &sp(n as usize, m as u32)).unwrap();
                    assert_eq!(got, naive_inner(a.components(), n, m), "a={a} n={n} m={m}");
                }
            }
        }
    }

    #[test]
    fn basis_coefficient_examples() {
        assert_eq!(basis_coefficient(&mi(&[0, 0, 0]), &sp(3, 2)).unwrap(), RadicalCoefficient::one());
        assert_eq!(basis_coefficient(&mi(&[1]), &sp(1, 0)).unwrap(), RadicalCoefficient::one());
        // √(1/6), stored as (1/6)·√6
        let c = basis_coefficient(&mi(&[2]), &sp(1, 1)).unwrap();
        assert_eq!(c.rational_part(), &GaussianRational::real(q(1, 6)));
        assert_eq!(c.radicand(), &BigUint::from(6u32));
        assert_eq!(c.norm_sqr(), q(1, 6));
    }

    #[test]
    fn orthonormality_small() {
        for n in 1..=3 {
            for m in 0..=3 {
                let s = sp(n, m);
                let idx = MultiIndex::all_up_to_order(n, 4);
                for a in &idx {
                    for b in &idx {
                        let ca = basis_coefficient(a, &s).unwrap();
                        let cb = basis_coefficient(b, &s).unwrap();
                        let ip = monomial_inner(a, b, &s).unwrap();
                        let v = ca.mul(&cb).scale_real(&ip);
                        let expected = if a == b { RadicalCoefficient::one() } else { RadicalCoefficient::zero() };
                        assert_eq!(v, expected);
                    }
                }
            }
        }
    }

    #[test]
    fn mono_apply_examples() {
        let (t, c) = toeplitz_mono_apply(&mi(&[1]), &mi(&[0]), &mi(&[3]), &sp(1, 0)).unwrap().unwrap();
        assert_eq!((t, c), (mi(&[4]), RadicalCoefficient::from_rational(GaussianRational::from_int(2))));
        assert!(toeplitz_mono_apply(&mi(&[0]), &mi(&[2]), &mi(&[1]), &sp(1, 2)).unwrap().is_none());
        let (t, c) = toeplitz_mono_apply(&mi(&[1]), &mi(&[0]), &mi(&[0]), &sp(1, 1)).unwrap().unwrap();
        assert_eq!(t, mi(&[1]));
        assert_eq!((c.rational_part(), c.radicand()), (&GaussianRational::one(), &BigUint::from(2u32)));
    }

    /// coeff² = c_α² c_η² ⟨z^{α+β}, z^{α+β}⟩² through full factorials.
    #[test]
    fn mono_apply_matches_naive_n1() {
        for m in 0..=3u64 {
            for alpha in 0..=8u32 {
                for beta in 0..=3u32 {
                    for gamma in 0..=3u32 {
                        let got = toeplitz_mono_apply(&mi(&[beta]), &mi(&[gamma]), &mi(&[alpha]), &sp(1, m as u32)).unwrap();
                        let Some(eta) = (alpha + beta).checked_sub(gamma) else {
                            assert!(got.is_none());
                            continue;
                        };
                        let (t, c) = got.unwrap();
                        assert_eq!(t, mi(&[eta]));
                        let ca2 = naive_inner(&[alpha], 1, m).recip();
                        let ce2 = naive_inner(&[eta], 1, m).recip();
                        let ip = naive_inner(&[alpha + beta], 1, m);
                        assert_eq!(c.norm_sqr(), ca2 * ce2 * &ip * &ip);
                    }
                }
            }
        }
    }

    #[test]
    fn classical_fock_ladder() {
        let s = sp(1, 0);
        for a in 0..=40u32 {
            let (_, up) = toeplitz_mono_apply(&mi(&[1]), &mi(&[0]), &mi(&[a]), &s).unwrap().unwrap();
            assert_eq!(up.norm_sqr(), q(a as i64 + 1, 1));
            assert!(up.rational_part().re > BigRational::zero());
            if a > 0 {
                let (t, down) = toeplitz_mono_apply(&mi(&[0]), &mi(&[1]), &mi(&[a]), &s).unwrap().unwrap();
                assert_eq!(t, mi(&[a - 1]));
                assert_eq!(down.norm_sqr(), q(a as i64, 1));
            }
        }
    }

    #[test]
    fn toeplitz_apply_examples() {
        let s = sp(1, 0);
        let e3 = BasisExpansion::basis(s, mi(&[3])).unwrap();
        let one = parse_symbol("1", 1).unwrap();
        assert_eq!(toeplitz_apply(&one, &e3).unwrap(), e3);

        let zzb = parse_symbol("z*conj(z)", 1).unwrap();
        let v = toeplitz_apply(&zzb, &e3).unwrap();
        assert_eq!(v, e3.scale(&GaussianRational::from_int(4)));
        let v2 = toeplitz_apply(&zzb, &v).unwrap();
        let v4 = toeplitz_apply(&zzb, &toeplitz_apply(&zzb, &v2).unwrap()).unwrap();
        assert_eq!(v4.squared_norm(), q(256 * 256, 1));
        assert_eq!(toeplitz_apply(&zzb, &v).unwrap().squared_norm(), q(256, 1));

        let e0 = BasisExpansion::basis(s, mi(&[0])).unwrap();
        let w = toeplitz_apply(&parse_symbol("z + conj(z)", 1).unwrap(), &e0).unwrap();
        assert_eq!(w, BasisExpansion::basis(s, mi(&[1])).unwrap());
    }

    #[test]
    fn dimension_checked() {
        let e = BasisExpansion::basis(sp(2, 0), mi(&[0, 0])).unwrap();
        assert!(toeplitz_apply(&parse_symbol("z", 1).unwrap(), &e).is_err());
    }

    fn small_index(n: usize, max: u32) -> impl Strategy<Value = MultiIndex> {
        prop::collection::vec(0..=max, n).prop_map(MultiIndex::new)
    }

    proptest! {
        /// ⟨T_{z^β z̄^γ} e_α, e_η⟩ = conj⟨T_{z^γ z̄^β} e_η, e_α⟩
        #[test]
        fn adjoint_symmetry(
            (n, beta, gamma, alpha, eta) in (1usize..=3).prop_flat_map(|n| (
                Just(n), small_index(n, 3), small_index(n, 3), small_index(n, 6), small_index(n, 6)
            )),
            m in 0u32..=3,
        ) {
            let s = sp(n, m);
            let forward = toeplitz_mono_apply(&beta, &gamma, &alpha, &s).unwrap()
                .filter(|(t, _)| *t == eta).map(|(_, c)| c).unwrap_or_else(RadicalCoefficient::zero);
            let backward = toeplitz_mono_apply(&gamma, &beta, &eta, &s).unwrap()
                .filter(|(t, _)| *t == alpha).map(|(_, c)| c).unwrap_or_else(RadicalCoefficient::zero);
            prop_assert_eq!(forward, backward.conj());
        }

        /// Every coefficient carries the radicand of c_α c_η.
        #[test]
        fn radicand_is_that_of_the_basis_pair(
            beta in 0u32..4, gamma in 0u32..4, alpha in 0u32..30, m in 0u32..4,
        ) {
            let s = sp(1, m);
            if let Some((eta, c)) = toeplitz_mono_apply(&mi(&[beta]), &mi(&[gamma]), &mi(&[alpha]), &s).unwrap() {
                let pair = basis_coefficient(&mi(&[alpha]), &s).unwrap().mul(&basis_coefficient(&eta, &s).unwrap());
                prop_assert_eq!(c.radicand(), pair.radicand());
            }
        }
    }
}
