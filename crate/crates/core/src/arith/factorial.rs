//! Quotients of factorial products, `∏ a! / ∏ b!`.
//!
//! Every basis constant and operator coefficient has this shape. Terms are
//! paired largest-with-largest so each pair collapses to a short rising
//! product; only unpaired terms are expanded as full factorials.

use num_bigint::BigUint;
use num_traits::One;

use super::primes::PrimePowers;
use super::rational::{big_ratio, BigRational};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactorialRatio {
    pub numerator: Vec<u64>,
    pub denominator: Vec<u64>,
}

/// One cancelled block: `(lo..=hi)` multiplies into the numerator
/// (`upper = true`) or the denominator.
#[derive(Clone, Copy, Debug)]
struct Block {
    lo: u64,
    hi: u64,
    upper: bool,
}

impl FactorialRatio {
    pub fn new(numerator: Vec<u64>, denominator: Vec<u64>) -> Self {
        FactorialRatio {
            numerator,
            denominator,
        }
    }

    pub fn num(&mut self, t: u64) -> &mut Self {
        self.numerator.push(t);
        self
    }

    pub fn den(&mut self, t: u64) -> &mut Self {
        self.denominator.push(t);
        self
    }

    pub fn num_all(&mut self, ts: impl IntoIterator<Item = u64>) -> &mut Self {
        self.numerator.extend(ts);
        self
    }

    pub fn den_all(&mut self, ts: impl IntoIterator<Item = u64>) -> &mut Self {
        self.denominator.extend(ts);
        self
    }

    /// Multiset union of both sides.
    pub fn times(&self, other: &FactorialRatio) -> FactorialRatio {
        let mut out = self.clone();
        out.numerator.extend(&other.numerator);
        out.denominator.extend(&other.denominator);
        out
    }

    pub fn inverse(&self) -> FactorialRatio {
        FactorialRatio::new(self.denominator.clone(), self.numerator.clone())
    }

    fn blocks(&self) -> Vec<Block> {
        let mut num = self.numerator.clone();
        let mut den = self.denominator.clone();
        num.sort_unstable_by(|a, b| b.cmp(a));
        den.sort_unstable_by(|a, b| b.cmp(a));
        let mut blocks = Vec::with_capacity(num.len().max(den.len()));
        let paired = num.len().min(den.len());
        for (&a, &b) in num.iter().zip(&den) {
            // a!/b!
            if a > b {
                blocks.push(Block { lo: b + 1, hi: a, upper: true });
            } else if b > a {
                blocks.push(Block { lo: a + 1, hi: b, upper: false });
            }
        }
        for &a in &num[paired..] {
            blocks.push(Block { lo: 2, hi: a, upper: true });
        }
        for &b in &den[paired..] {
            blocks.push(Block { lo: 2, hi: b, upper: false });
        }
        blocks
    }

    /// Exact value.
    pub fn eval(&self) -> BigRational {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for b in self.blocks() {
            let target = if b.upper { &mut num } else { &mut den };
            *target *= range_product(b.lo, b.hi);
        }
        big_ratio(num, den)
    }

    /// The value as a prime-exponent map (never materializes big integers).
    pub fn prime_powers(&self) -> PrimePowers {
        let mut pp = PrimePowers::one();
        for b in self.blocks() {
            pp.absorb_range(b.lo, b.hi, if b.upper { 1 } else { -1 });
        }
        pp
    }
}

/// `lo · (lo+1) ⋯ hi`, 1 for an empty range.
pub fn range_product(lo: u64, hi: u64) -> BigUint {
    if lo > hi {
        return BigUint::one();
    }
    if hi - lo < 16 {
        // accumulate in a u128 while it cannot overflow
        let mut acc = BigUint::one();
        let mut word: u128 = 1;
        for k in lo..=hi {
            match word.checked_mul(k as u128) {
                Some(w) => word = w,
                None => {
                    acc *= word;
                    word = k as u128;
                }
            }
        }
        return acc * word;
    }
    let mid = lo + (hi - lo) / 2;
    range_product(lo, mid) * range_product(mid + 1, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn naive_factorial(t: u64) -> BigUint {
        (1..=t).fold(BigUint::one(), |acc, k| acc * k)
    }

    fn naive_eval(r: &FactorialRatio) -> BigRational {
        let num = r.numerator.iter().fold(BigUint::one(), |a, &t| a * naive_factorial(t));
        let den = r.denominator.iter().fold(BigUint::one(), |a, &t| a * naive_factorial(t));
        big_ratio(num, den)
    }

    fn int(k: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(k))
    }

    #[test]
    fn worked_examples() {
        assert_eq!(FactorialRatio::new(vec![5], vec![3]).eval(), int(20));
        assert_eq!(FactorialRatio::default().eval(), int(1));
        // 10!·3! / (7!·6!) = 3628800·6 / (5040·720)
        assert_eq!(FactorialRatio::new(vec![10, 3], vec![7, 6]).eval(), int(6));
    }

    #[test]
    fn large_arguments_stay_cheap() {
        // (10^6 + 2)! / 10^6! = (10^6 + 1)(10^6 + 2)
        let r = FactorialRatio::new(vec![1_000_002], vec![1_000_000]);
        assert_eq!(r.eval(), int(1_000_001 * 1_000_002));
        let (n, d) = r.prime_powers().to_fraction();
        assert_eq!(big_ratio(n, d), int(1_000_001 * 1_000_002));
    }

    #[test]
    fn range_product_matches_naive() {
        assert_eq!(range_product(1, 30), naive_factorial(30));
        assert_eq!(range_product(5, 4), BigUint::one());
    }

    proptest! {
        #[test]
        fn eval_matches_naive(num in prop::collection::vec(0u64..40, 0..5),
                              den in prop::collection::vec(0u64..40, 0..5)) {
            let r = FactorialRatio::new(num, den);
            prop_assert_eq!(r.eval(), naive_eval(&r));
            let (n, d) = r.prime_powers().to_fraction();
            prop_assert_eq!(big_ratio(n, d), naive_eval(&r));
        }

        #[test]
        fn eval_is_multiplicative(a in prop::collection::vec(0u64..30, 0..4),
                                  b in prop::collection::vec(0u64..30, 0..4),
                                  c in prop::collection::vec(0u64..30, 0..4),
                                  d in prop::collection::vec(0u64..30, 0..4)) {
            let r1 = FactorialRatio::new(a, b);
            let r2 = FactorialRatio::new(c, d);
            prop_assert_eq!(r1.times(&r2).eval(), r1.eval() * r2.eval());
        }

        #[test]
        fn eval_ignores_term_order(mut num in prop::collection::vec(0u64..25, 0..5),
                                   den in prop::collection::vec(0u64..25, 0..5)) {
            let before = FactorialRatio::new(num.clone(), den.clone()).eval();
            num.reverse();
            prop_assert_eq!(FactorialRatio::new(num, den).eval(), before);
        }
    }
}
