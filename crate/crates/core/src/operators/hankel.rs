//! `H*_f H_g` through `T_{f̄g} − T_{f̄} T_g`, and the closed form of its
//! coefficient on monomial symbols.

use super::expansion::BasisExpansion;
use super::space::SpaceParams;
use super::toeplitz::toeplitz_apply;
use crate::arith::{FactorialRatio, MultiIndex, RadicalCoefficient};
use crate::error::{Error, Result};
use crate::symbols::SymbolPolynomial;

/// `(|γ₁−β₁| + |μ₁−ν₁|, …)`: the smallest `α` on which the closed form for
/// `f = z^β z̄^γ`, `g = z^μ z̄^ν` applies.
pub fn hankel_validity_floor(beta: &MultiIndex, gamma: &MultiIndex, mu: &MultiIndex, nu: &MultiIndex) -> MultiIndex {
    gamma.abs_diff(beta).add(&mu.abs_diff(nu))
}

fn factorials(r: &mut FactorialRatio, a: &MultiIndex, upper: bool) {
    let terms = a.components().iter().map(|&x| x as u64);
    if upper {
        r.num_all(terms);
    } else {
        r.den_all(terms);
    }
}

/// `H*_f H_g e_α = A_α e_η` for `f = z^β z̄^γ`, `g = z^μ z̄^ν`, with
/// `η = α + γ + μ − β − ν`, evaluated from the closed form
/// `A_α = (X − Y) √S` where
///
/// ```text
/// X = (α+γ+μ)! (m+n−1+|α+γ+μ|)! / (α! (n−1+|α+γ+μ|)!)
/// Y = (α+μ)! (α+γ+μ−ν)! (m+n−1+|α+μ|)! (n−1+|α+μ−ν|)! (m+n−1+|α+γ+μ−ν|)!
///     / (α! (α+μ−ν)! (n−1+|α+μ|)! (m+n−1+|α+μ−ν|)! (n−1+|α+γ+μ−ν|)!)
/// S = α! (n−1+|α|)! (n−1+|η|)! / (η! (m+n−1+|α|)! (m+n−1+|η|)!)
/// ```
///
/// Only defined for `α ≥ hankel_validity_floor(β, γ, μ, ν)`; elsewhere use
/// [`hankel_product_apply`].
pub fn hankel_coeff_closed_form(
    beta: &MultiIndex,
    gamma: &MultiIndex,
    mu: &MultiIndex,
    nu: &MultiIndex,
    alpha: &MultiIndex,
    sp: &SpaceParams,
) -> Result<(MultiIndex, RadicalCoefficient)> {
    for x in [beta, gamma, mu, nu, alpha] {
        sp.check_index(x)?;
    }
    let floor = hankel_validity_floor(beta, gamma, mu, nu);
    if !alpha.dominates(&floor) {
        return Err(Error::Precondition(format!(
            "alpha {alpha} is outside the closed form's range (needs alpha >= {floor})"
        )));
    }
    let (nm1, mn1) = (sp.nm1(), sp.mn1());
    let top = alpha.add(gamma).add(mu);
    let (Some(eta), Some(mid), Some(mid_up)) = (
        top.checked_sub(&beta.add(nu)),
        alpha.add(mu).checked_sub(nu),
        top.checked_sub(nu),
    ) else {
        unreachable!("validity floor keeps all indices nonnegative");
    };
    let amu = alpha.add(mu);

    let mut x = FactorialRatio::default();
    factorials(&mut x, &top, true);
    factorials(&mut x, alpha, false);
    x.num(mn1 + top.order()).den(nm1 + top.order());

    let mut y = FactorialRatio::default();
    factorials(&mut y, &amu, true);
    factorials(&mut y, &mid_up, true);
    factorials(&mut y, alpha, false);
    factorials(&mut y, &mid, false);
    y.num(mn1 + amu.order())
        .num(nm1 + mid.order())
        .num(mn1 + mid_up.order())
        .den(nm1 + amu.order())
        .den(mn1 + mid.order())
        .den(nm1 + mid_up.order());

    let mut s = FactorialRatio::default();
    factorials(&mut s, alpha, true);
    factorials(&mut s, &eta, false);
    s.num(nm1 + alpha.order())
        .num(nm1 + eta.order())
        .den(mn1 + alpha.order())
        .den(mn1 + eta.order());

    let coeff = RadicalCoefficient::sqrt_of(&s).scale_real(&(x.eval() - y.eval()));
    Ok((eta, coeff))
}

/// `H*_f H_g v = T_{f̄g} v − T_{f̄}(T_g v)`, valid for every `v`.
pub fn hankel_product_apply(f: &SymbolPolynomial, g: &SymbolPolynomial, v: &BasisExpansion) -> Result<BasisExpansion> {
    let fbar = f.conjugate();
    let direct = toeplitz_apply(&fbar.mul(g)?, v)?;
    let chained = toeplitz_apply(&fbar, &toeplitz_apply(g, v)?)?;
    direct.checked_sub(&chained)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{BigRational, GaussianRational};
    use crate::symbols::parse_symbol;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn sp(n: usize, m: u32) -> SpaceParams {
        SpaceParams::new(n, m).unwrap()
    }

    fn mi(c: &[u32]) -> MultiIndex {
        MultiIndex::new(c.to_vec())
    }

    fn int(k: i64) -> RadicalCoefficient {
        RadicalCoefficient::from_rational(GaussianRational::from_int(k))
    }

    fn mono(beta: &MultiIndex, gamma: &MultiIndex) -> SymbolPolynomial {
        SymbolPolynomial::monomial(beta.dim(), beta.clone(), gamma.clone(), GaussianRational::one())
    }

    fn composed(
        beta: &MultiIndex,
        gamma: &MultiIndex,
        mu: &MultiIndex,
        nu: &MultiIndex,
        alpha: &MultiIndex,
        s: SpaceParams,
    ) -> BasisExpansion {
        let e = BasisExpansion::basis(s, alpha.clone()).unwrap();
        hankel_product_apply(&mono(beta, gamma), &mono(mu, nu), &e).unwrap()
    }

    #[test]
    fn conj_z_pair_is_identity_on_range() {
        let (zero, one) = (mi(&[0]), mi(&[1]));
        let (t, a) = hankel_coeff_closed_form(&zero, &one, &zero, &one, &mi(&[5]), &sp(1, 0)).unwrap();
        assert_eq!((t, a), (mi(&[5]), int(1)));
    }

    #[test]
    fn holomorphic_g_gives_zero() {
        let z = mi(&[0, 0]);
        for alpha in [mi(&[3, 4]), mi(&[6, 6])] {
            let (_, a) = hankel_coeff_closed_form(&mi(&[1, 0]), &mi(&[0, 2]), &mi(&[1, 1]), &z, &alpha, &sp(2, 1)).unwrap();
            assert!(a.is_zero());
        }
    }

    #[test]
    fn conj_z_squared_at_six() {
        // T_{z²z̄²} e₆ − T_{z²}T_{z̄²} e₆ = (56 − 30) e₆ for m = 0
        let (zero, two) = (mi(&[0]), mi(&[2]));
        let via_composition = composed(&zero, &two, &zero, &two, &mi(&[6]), sp(1, 0));
        assert_eq!(via_composition, BasisExpansion::basis(sp(1, 0), mi(&[6])).unwrap().scale(&GaussianRational::from_int(26)));
        let (t, a) = hankel_coeff_closed_form(&zero, &two, &zero, &two, &mi(&[6]), &sp(1, 0)).unwrap();
        assert_eq!((t, a), (mi(&[6]), int(26)));
    }

    #[test]
    fn outside_range_rejected() {
        let (zero, one) = (mi(&[0]), mi(&[1]));
        assert!(matches!(
            hankel_coeff_closed_form(&zero, &one, &zero, &one, &mi(&[0]), &sp(1, 0)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn product_examples() {
        let zb = parse_symbol("conj(z)", 1).unwrap();
        let e0 = BasisExpansion::basis(sp(1, 0), mi(&[0])).unwrap();
        assert_eq!(hankel_product_apply(&zb, &zb, &e0).unwrap(), e0);
        let e10 = BasisExpansion::basis(sp(1, 2), mi(&[10])).unwrap();
        assert_eq!(hankel_product_apply(&zb, &zb, &e10).unwrap(), e10);
        // ‖H_{z̄} 1‖² = ‖z̄‖² = m + 1 off the closed form's range
        let e0m = BasisExpansion::basis(sp(1, 2), mi(&[0])).unwrap();
        assert_eq!(hankel_product_apply(&zb, &zb, &e0m).unwrap(), e0m.scale(&GaussianRational::from_int(3)));
    }

    #[test]
    fn holomorphic_f_annihilates() {
        let f = parse_symbol("z1^2", 2).unwrap();
        let g = parse_symbol("conj(z1)*z2 + 3*conj(z2)^2", 2).unwrap();
        for alpha in MultiIndex::all_up_to_order(2, 5) {
            let e = BasisExpansion::basis(sp(2, 1), alpha).unwrap();
            assert!(hankel_product_apply(&f, &g, &e).unwrap().is_zero());
        }
    }

    #[test]
    fn closed_form_matches_composition_n1() {
        for m in 0..=2 {
            let s = sp(1, m);
            for (b, g, u, v) in quadruples(3) {
                let (beta, gamma, mu, nu) = (mi(&[b]), mi(&[g]), mi(&[u]), mi(&[v]));
                let floor = hankel_validity_floor(&beta, &gamma, &mu, &nu);
                for a in floor.get(0)..=12 {
                    let alpha = mi(&[a]);
                    let (t, c) = hankel_coeff_closed_form(&beta, &gamma, &mu, &nu, &alpha, &s).unwrap();
                    let via = composed(&beta, &gamma, &mu, &nu, &alpha, s);
                    assert_eq!(via.coefficient(&t), c);
                    assert!(via.iter().all(|(k, _)| *k == t));
                }
            }
        }
    }

    fn quadruples(max: u32) -> Vec<(u32, u32, u32, u32)> {
        let mut out = Vec::new();
        for b in 0..max {
            for g in 0..max {
                for u in 0..max {
                    for v in 0..max {
                        out.push((b, g, u, v));
                    }
                }
            }
        }
        out
    }

    proptest! {
        #[test]
        fn closed_form_matches_composition_n2(
            c in prop::collection::vec(0u32..=2, 8),
            extra in prop::collection::vec(0u32..=4, 2),
            m in 0u32..=2,
        ) {
            let beta = mi(&c[0..2]);
            let gamma = mi(&c[2..4]);
            let mu = mi(&c[4..6]);
            let nu = mi(&c[6..8]);
            let alpha = hankel_validity_floor(&beta, &gamma, &mu, &nu).add(&MultiIndex::new(extra));
            let s = sp(2, m);
            let (t, a) = hankel_coeff_closed_form(&beta, &gamma, &mu, &nu, &alpha, &s).unwrap();
            let via = composed(&beta, &gamma, &mu, &nu, &alpha, s);
            prop_assert_eq!(via.coefficient(&t), a);
            prop_assert!(via.len() <= 1);
        }

        #[test]
        fn squared_norm_nonnegative(a in 0u32..20, m in 0u32..4) {
            let f = parse_symbol("z^2 + conj(z)", 1).unwrap();
            let e = BasisExpansion::basis(sp(1, m), mi(&[a])).unwrap();
            let v = hankel_product_apply(&f, &f, &e).unwrap();
            prop_assert!(v.squared_norm() >= BigRational::zero());
        }
    }
}
