//! Coefficients of the form `c · √d`, `c` Gaussian-rational and `d` a
//! square-free positive integer.
//!
//! Canonical form: `d` square-free (denominators of the original radicand
//! are folded into `c`), zero is `0 · √1`. Two coefficients are equal iff
//! their canonical parts are equal.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::factorial::FactorialRatio;
use super::primes::{square_free_decompose, PrimePowers};
use super::rational::{big_ratio, rational_to_f64, BigRational, GaussianRational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RadicalCoefficient {
    rational: GaussianRational,
    radicand: BigUint,
}

impl RadicalCoefficient {
    pub fn zero() -> Self {
        RadicalCoefficient {
            rational: GaussianRational::zero(),
            radicand: BigUint::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(GaussianRational::one())
    }

    pub fn from_rational(rational: GaussianRational) -> Self {
        RadicalCoefficient {
            rational,
            radicand: BigUint::one(),
        }
    }

    /// Already-canonical parts; `radicand` must be square-free.
    fn from_parts(rational: GaussianRational, radicand: BigUint) -> Self {
        if rational.is_zero() {
            return Self::zero();
        }
        RadicalCoefficient { rational, radicand }
    }

    /// √(value of `r`), canonical.
    pub fn sqrt_of(r: &FactorialRatio) -> Self {
        Self::sqrt_of_prime_powers(&r.prime_powers())
    }

    pub fn sqrt_of_prime_powers(pp: &PrimePowers) -> Self {
        let (num, den, radicand) = pp.sqrt_split();
        Self::from_parts(GaussianRational::real(big_ratio(num, den)), radicand)
    }

    pub fn rational_part(&self) -> &GaussianRational {
        &self.rational
    }

    pub fn radicand(&self) -> &BigUint {
        &self.radicand
    }

    /// The radicand as a rational (denominator is always 1 in canonical form).
    pub fn radicand_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.radicand.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero()
    }

    /// |value|² = |c|² · d, exact.
    pub fn norm_sqr(&self) -> BigRational {
        self.rational.norm_sqr() * self.radicand_rational()
    }

    pub fn conj(&self) -> Self {
        RadicalCoefficient {
            rational: self.rational.conj(),
            radicand: self.radicand.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        RadicalCoefficient {
            rational: -&self.rational,
            radicand: self.radicand.clone(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::from_parts(&self.rational * c, self.radicand.clone())
    }

    pub fn scale_real(&self, k: &BigRational) -> Self {
        Self::from_parts(self.rational.scale(k), self.radicand.clone())
    }

    /// `(a√r)(b√s) = ab·g · √((r/g)(s/g))` with `g = gcd(r, s)`.
    pub fn mul(&self, other: &RadicalCoefficient) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = self.radicand.gcd(&other.radicand);
        let radicand = (&self.radicand / &g) * (&other.radicand / &g);
        let g = BigRational::from_integer(BigInt::from(g));
        Self::from_parts((&self.rational * &other.rational).scale(&g), radicand)
    }

    /// Exact sum; defined only for equal radicands (zero is compatible with
    /// everything).
    pub fn checked_add(&self, other: &RadicalCoefficient) -> Result<Self> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.radicand != other.radicand {
            return Err(Error::InvariantViolation(format!(
                "adding unlike radicals √{} and √{}",
                self.radicand, other.radicand
            )));
        }
        Ok(Self::from_parts(&self.rational + &other.rational, self.radicand.clone()))
    }

    pub fn checked_sub(&self, other: &RadicalCoefficient) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    /// Floating-point approximation `(re, im)`.
    pub fn to_f64(&self) -> (f64, f64) {
        let root = rational_to_f64(&self.radicand_rational()).sqrt();
        (
            rational_to_f64(&self.rational.re) * root,
            rational_to_f64(&self.rational.im) * root,
        )
    }
}

/// Canonical form of `rational · √radicand`.
pub fn radical_normalize(rational: GaussianRational, radicand: &BigRational) -> Result<RadicalCoefficient> {
    if radicand.is_negative() {
        return Err(Error::NegativeRadicand(radicand.to_string()));
    }
    if rational.is_zero() || radicand.is_zero() {
        return Ok(RadicalCoefficient::zero());
    }
    // √(a/b) = √(ab) / b
    let a = radicand.numer().magnitude();
    let b = radicand.denom().magnitude();
    let (square, free) = square_free_decompose(&(a * b));
    let scale = big_ratio(square, b.clone());
    Ok(RadicalCoefficient::from_parts(rational.scale(&scale), free))
}

impl fmt::Display for RadicalCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.rational;
        if self.radicand.is_one() {
            return write!(f, "{c}");
        }
        if c.is_one() {
            write!(f, "√{}", self.radicand)
        } else if c.re.is_zero() || c.im.is_zero() {
            write!(f, "{c}·√{}", self.radicand)
        } else {
            write!(f, "({c})·√{}", self.radicand)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    fn real(p: i64, d: i64) -> GaussianRational {
        GaussianRational::real(q(p, d))
    }

    fn norm(c: GaussianRational, r: BigRational) -> RadicalCoefficient {
        radical_normalize(c, &r).unwrap()
    }

    #[test]
    fn worked_examples() {
        let r = norm(real(1, 1), q(4, 1));
        assert_eq!((r.rational_part(), r.radicand()), (&real(2, 1), &BigUint::one()));
        let r = norm(real(2, 1), q(9, 4));
        assert_eq!((r.rational_part(), r.radicand()), (&real(3, 1), &BigUint::one()));
        let r = norm(real(1, 1), q(8, 1));
        assert_eq!((r.rational_part(), r.radicand()), (&real(2, 1), &BigUint::from(2u32)));
    }

    #[test]
    fn denominators_fold_into_rational_part() {
        // √(1/6) = (1/6)·√6
        let r = norm(real(1, 1), q(1, 6));
        assert_eq!(r.rational_part(), &real(1, 6));
        assert_eq!(r.radicand(), &BigUint::from(6u32));
        assert_eq!(r.norm_sqr(), q(1, 6));
    }

    #[test]
    fn negative_radicand_rejected() {
        assert!(matches!(
            radical_normalize(real(1, 1), &q(-2, 1)),
            Err(Error::NegativeRadicand(_))
        ));
    }

    #[test]
    fn unlike_radicals_do_not_add() {
        let a = norm(real(1, 1), q(2, 1));
        let b = norm(real(1, 1), q(3, 1));
        assert!(matches!(a.checked_add(&b), Err(Error::InvariantViolation(_))));
        assert_eq!(a.checked_add(&a.neg()).unwrap(), RadicalCoefficient::zero());
    }

    #[test]
    fn factorial_route_agrees_with_normalize() {
        // √(2/12)
        let via_ratio = RadicalCoefficient::sqrt_of(&FactorialRatio::new(vec![1, 2], vec![2, 0, 3]));
        assert_eq!(via_ratio, norm(real(1, 1), q(1, 6)));
    }

    fn gauss() -> impl Strategy<Value = GaussianRational> {
        (-20i64..20, 1i64..12, -20i64..20, 1i64..12)
            .prop_map(|(a, b, c, d)| GaussianRational::new(q(a, b), q(c, d)))
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent(c in gauss(), p in 0i64..500, d in 1i64..200) {
            let r = norm(c, q(p, d));
            let again = norm(r.rational_part().clone(), r.radicand_rational());
            prop_assert_eq!(again, r);
        }

        #[test]
        fn normalize_preserves_squared_modulus(c in gauss(), p in 0i64..500, d in 1i64..200) {
            let r = norm(c.clone(), q(p, d));
            prop_assert_eq!(r.norm_sqr(), c.norm_sqr() * q(p, d));
        }

        #[test]
        fn sum_of_like_radicals(c1 in gauss(), c2 in gauss(), p in 1i64..300, d in 1i64..50) {
            let a = norm(c1, q(p, d));
            let b = norm(c2, q(p, d));
            let s = a.checked_add(&b).unwrap();
            let expected = (a.rational_part() + b.rational_part()).norm_sqr() * a.radicand_rational();
            prop_assert_eq!(s.norm_sqr(), expected);
        }

        #[test]
        fn product_matches_radicand_product(c1 in gauss(), c2 in gauss(), p in 1i64..300, s in 1i64..300) {
            let a = norm(c1.clone(), q(p, 1));
            let b = norm(c2.clone(), q(s, 1));
            prop_assert_eq!(a.mul(&b), norm(&c1 * &c2, q(p * s, 1)));
        }
    }
}
