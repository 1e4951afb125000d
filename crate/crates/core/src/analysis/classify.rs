//! Boundedness and compactness verdicts for polynomial symbols.
//!
//! * `T_f T_g` is bounded iff `f` and `g` are constants (or one of them is
//!   zero, making the product the zero operator).
//! * `H*_f H_g` is bounded iff `f` is holomorphic, or `g` is holomorphic, or
//!   `n = 1` and `f = f₁ + a z̄`, `g = g₁ + b z̄` with `f₁, g₁` holomorphic.
//! * `T_f` is bounded iff `f` is constant; `H_f` is bounded iff `f` is
//!   holomorphic or `n = 1` and `f = f₁ + a z̄`; `H_f` is compact iff `f` is
//!   holomorphic.

use std::fmt;

use serde::Serialize;

use crate::symbols::SymbolPolynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Property {
    Bounded,
    Compact,
}

/// The criterion that decided a verdict. Each case implies one truth value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MatchedCase {
    BothConstant,
    ZeroSymbol,
    Constant,
    NonConstantSymbol,
    FHolomorphic,
    GHolomorphic,
    N1ConjugateLinear,
    NoBoundednessCase,
    Holomorphic,
    NotHolomorphic,
}

impl MatchedCase {
    pub fn holds(self) -> bool {
        use MatchedCase::*;
        match self {
            BothConstant | ZeroSymbol | Constant | FHolomorphic | GHolomorphic | N1ConjugateLinear | Holomorphic => true,
            NonConstantSymbol | NoBoundednessCase | NotHolomorphic => false,
        }
    }
}

impl fmt::Display for MatchedCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub property: Property,
    /// Whether the operator has `property` (bounded, or compact).
    pub holds: bool,
    pub matched_case: MatchedCase,
    pub witness: Option<String>,
}

impl Verdict {
    fn new(property: Property, case: MatchedCase, witness: Option<String>) -> Self {
        Verdict {
            property,
            holds: case.holds(),
            matched_case: case,
            witness,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SingleKind {
    Toeplitz,
    HankelBounded,
    HankelCompact,
}

fn first_term(p: &SymbolPolynomial, keep: impl Fn(&SymbolPolynomial) -> bool) -> Option<String> {
    p.terms()
        .map(|(b, g, c)| SymbolPolynomial::monomial(p.dim(), b.clone(), g.clone(), c.clone()))
        .find(|t| keep(t))
        .map(|t| t.to_string())
}

fn non_constant_witness(name: &str, p: &SymbolPolynomial) -> Option<String> {
    first_term(p, |t| !t.is_constant()).map(|t| format!("{name} has non-constant term {t}"))
}

fn non_holomorphic_witness(name: &str, p: &SymbolPolynomial) -> Option<String> {
    first_term(p, |t| !t.is_holomorphic()).map(|t| format!("{name} has anti-holomorphic term {t}"))
}

/// `Some(a)` when `n = 1` and `p = p₁ + a z̄` with `p₁` holomorphic.
fn conj_linear_remainder(p: &SymbolPolynomial) -> Option<String> {
    let (_, rest) = p.holomorphic_split();
    rest.conj_linear_multiple().map(|a| a.to_string())
}

/// Verdict for `T_f T_g`.
pub fn classify_toeplitz_product(f: &SymbolPolynomial, g: &SymbolPolynomial) -> Verdict {
    let p = Property::Bounded;
    if f.is_zero() || g.is_zero() {
        let which = if f.is_zero() { "f" } else { "g" };
        return Verdict::new(p, MatchedCase::ZeroSymbol, Some(format!("{which} = 0, so T_f T_g = 0")));
    }
    if f.is_constant() && g.is_constant() {
        return Verdict::new(p, MatchedCase::BothConstant, Some(format!("f = {f}, g = {g}")));
    }
    let witness = non_constant_witness("f", f).or_else(|| non_constant_witness("g", g));
    Verdict::new(p, MatchedCase::NonConstantSymbol, witness)
}

/// Verdict for `H*_f H_g`; cases are tried in the order f holomorphic,
/// g holomorphic, conjugate-linear remainders on ℂ¹.
pub fn classify_hankel_product(f: &SymbolPolynomial, g: &SymbolPolynomial) -> Verdict {
    let p = Property::Bounded;
    if f.is_holomorphic() {
        return Verdict::new(p, MatchedCase::FHolomorphic, Some(format!("f = {f} is holomorphic, so H_f = 0")));
    }
    if g.is_holomorphic() {
        return Verdict::new(p, MatchedCase::GHolomorphic, Some(format!("g = {g} is holomorphic, so H_g = 0")));
    }
    if let (Some(a), Some(b)) = (conj_linear_remainder(f), conj_linear_remainder(g)) {
        return Verdict::new(
            p,
            MatchedCase::N1ConjugateLinear,
            Some(format!("n = 1 with f = f1 + ({a})*conj(z), g = g1 + ({b})*conj(z)")),
        );
    }
    let mut witness = non_holomorphic_witness("f", f).unwrap_or_default();
    if f.dim() > 1 {
        witness.push_str("; the conjugate-linear case needs n = 1");
    } else {
        let (_, rf) = f.holomorphic_split();
        let (_, rg) = g.holomorphic_split();
        let bad = if rf.conj_linear_multiple().is_none() { rf } else { rg };
        witness = format!("anti-holomorphic part {bad} is not a multiple of conj(z)");
    }
    Verdict::new(p, MatchedCase::NoBoundednessCase, Some(witness))
}

/// Verdict for `T_f`, `H_f` (boundedness) or `H_f` (compactness).
pub fn classify_single(kind: SingleKind, f: &SymbolPolynomial) -> Verdict {
    match kind {
        SingleKind::Toeplitz => {
            if f.is_constant() {
                Verdict::new(Property::Bounded, MatchedCase::Constant, Some(format!("f = {f}")))
            } else {
                Verdict::new(Property::Bounded, MatchedCase::NonConstantSymbol, non_constant_witness("f", f))
            }
        }
        SingleKind::HankelBounded => {
            // ‖H_f e_α‖² = ⟨H*_f H_f e_α, e_α⟩
            let mut v = classify_hankel_product(f, f);
            if v.matched_case == MatchedCase::FHolomorphic {
                v.matched_case = MatchedCase::Holomorphic;
            }
            v
        }
        SingleKind::HankelCompact => {
            if f.is_holomorphic() {
                Verdict::new(Property::Compact, MatchedCase::Holomorphic, Some(format!("f = {f} is holomorphic")))
            } else {
                Verdict::new(Property::Compact, MatchedCase::NotHolomorphic, non_holomorphic_witness("f", f))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::GaussianRational;
    use crate::symbols::parse_symbol;
    use proptest::prelude::*;

    fn s(text: &str, n: usize) -> SymbolPolynomial {
        parse_symbol(text, n).unwrap()
    }

    #[test]
    fn toeplitz_products() {
        let v = classify_toeplitz_product(&s("3", 1), &s("5", 1));
        assert_eq!((v.holds, v.matched_case), (true, MatchedCase::BothConstant));
        let v = classify_toeplitz_product(&s("z1", 2), &s("1", 2));
        assert_eq!((v.holds, v.matched_case), (false, MatchedCase::NonConstantSymbol));
        assert_eq!(v.witness.as_deref(), Some("f has non-constant term z1"));
        let v = classify_toeplitz_product(&s("0", 1), &s("conj(z)", 1));
        assert_eq!((v.holds, v.matched_case), (true, MatchedCase::ZeroSymbol));
    }

    #[test]
    fn hankel_products() {
        let v = classify_hankel_product(&s("z1^2", 2), &s("conj(z1)*z1", 2));
        assert_eq!((v.holds, v.matched_case), (true, MatchedCase::FHolomorphic));
        let v = classify_hankel_product(&s("z + 2*conj(z)", 1), &s("z^3 - conj(z)", 1));
        assert_eq!((v.holds, v.matched_case), (true, MatchedCase::N1ConjugateLinear));
        let v = classify_hankel_product(&s("conj(z1)", 2), &s("conj(z1)", 2));
        assert_eq!((v.holds, v.matched_case), (false, MatchedCase::NoBoundednessCase));
        let v = classify_hankel_product(&s("conj(z)^2", 1), &s("conj(z)", 1));
        assert_eq!((v.holds, v.matched_case), (false, MatchedCase::NoBoundednessCase));
        let v = classify_hankel_product(&s("conj(z)", 1), &s("z^2", 1));
        assert_eq!((v.holds, v.matched_case), (true, MatchedCase::GHolomorphic));
    }

    #[test]
    fn singles() {
        let v = classify_single(SingleKind::Toeplitz, &s("conj(z2)", 2));
        assert!(!v.holds);
        let v = classify_single(SingleKind::HankelBounded, &s("z^5 + 7*conj(z)", 1));
        assert_eq!((v.holds, v.matched_case), (true, MatchedCase::N1ConjugateLinear));
        let v = classify_single(SingleKind::HankelCompact, &s("z^5 + 7*conj(z)", 1));
        assert_eq!((v.holds, v.property, v.matched_case), (false, Property::Compact, MatchedCase::NotHolomorphic));
        let v = classify_single(SingleKind::HankelCompact, &s("z^5", 1));
        assert!(v.holds);
    }

    fn symbol_strategy(n: usize) -> impl Strategy<Value = SymbolPolynomial> {
        prop::collection::vec((prop::collection::vec(0u32..3, n), prop::collection::vec(0u32..3, n), -3i64..4), 0..4)
            .prop_map(move |terms| {
                terms.into_iter().fold(SymbolPolynomial::zero(n), |acc, (b, g, c)| {
                    acc.add(&SymbolPolynomial::monomial(
                        n,
                        b.into(),
                        g.into(),
                        GaussianRational::from_int(c),
                    ))
                    .unwrap()
                })
            })
    }

    proptest! {
        #[test]
        fn verdicts_ignore_nonzero_scaling(
            (f, g) in (1usize..=2).prop_flat_map(|n| (symbol_strategy(n), symbol_strategy(n))),
            re in -5i64..6, im in -5i64..6,
        ) {
            prop_assume!(re != 0 || im != 0);
            let c = GaussianRational::new(
                crate::arith::BigRational::from_integer(re.into()),
                crate::arith::BigRational::from_integer(im.into()),
            );
            let cf = f.scale(&c);
            prop_assert_eq!(classify_toeplitz_product(&cf, &g).matched_case, classify_toeplitz_product(&f, &g).matched_case);
            prop_assert_eq!(classify_hankel_product(&cf, &g).matched_case, classify_hankel_product(&f, &g).matched_case);
            prop_assert_eq!(classify_hankel_product(&g, &cf).matched_case, classify_hankel_product(&g, &f).matched_case);
            for kind in [SingleKind::Toeplitz, SingleKind::HankelBounded, SingleKind::HankelCompact] {
                prop_assert_eq!(classify_single(kind, &cf).matched_case, classify_single(kind, &f).matched_case);
            }
        }
    }
}
