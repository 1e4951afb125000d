//! Integer factorization used to split square factors out of radicands.
//!
//! Coefficient radicands come from factorial ratios whose factors are small
//! integers, so the hot path factors machine words through a
//! smallest-prime-factor table. Arbitrary big integers (only reached through
//! [`crate::arith::radical_normalize`]) fall back to trial division plus
//! Miller–Rabin and Pollard–Brent.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const SIEVE_LIMIT: usize = 1 << 18;

fn smallest_prime_factors() -> &'static [u32] {
    static SPF: OnceLock<Vec<u32>> = OnceLock::new();
    SPF.get_or_init(|| {
        let mut spf = vec![0u32; SIEVE_LIMIT];
        for i in 2..SIEVE_LIMIT {
            if spf[i] == 0 {
                let mut j = i;
                while j < SIEVE_LIMIT {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        spf
    })
}

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        smallest_prime_factors()
            .iter()
            .enumerate()
            .skip(2)
            .filter(|&(i, &p)| p as usize == i)
            .map(|(i, _)| i as u64)
            .collect()
    })
}

/// Signed prime-exponent map: the exact value is ∏ p^e.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrimePowers(BTreeMap<u64, i64>);

impl PrimePowers {
    pub fn one() -> Self {
        PrimePowers(BTreeMap::new())
    }

    pub fn exponents(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.0.iter().map(|(&p, &e)| (p, e))
    }

    fn bump(&mut self, p: u64, e: i64) {
        let slot = self.0.entry(p).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.0.remove(&p);
        }
    }

    /// Multiply (`sign = 1`) or divide (`sign = -1`) by the integer `k ≥ 1`.
    pub fn absorb(&mut self, k: u64, sign: i64) {
        debug_assert!(k >= 1);
        for_each_prime_factor(k, |p, e| self.bump(p, sign * e as i64));
    }

    /// Multiply (or divide) by `lo · (lo+1) ⋯ hi`.
    pub fn absorb_range(&mut self, lo: u64, hi: u64, sign: i64) {
        for k in lo.max(2)..=hi {
            self.absorb(k, sign);
        }
    }

    pub fn mul(&mut self, other: &PrimePowers) {
        for (&p, &e) in &other.0 {
            self.bump(p, e);
        }
    }

    /// Numerator and denominator of the exact value.
    pub fn to_fraction(&self) -> (BigUint, BigUint) {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for (&p, &e) in &self.0 {
            let pw = BigUint::from(p).pow(e.unsigned_abs() as u32);
            if e > 0 {
                num *= pw;
            } else {
                den *= pw;
            }
        }
        (num, den)
    }

    /// Writes √(value) as `(num/den) · √radicand` with `radicand` square-free.
    pub fn sqrt_split(&self) -> (BigUint, BigUint, BigUint) {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        let mut radicand = BigUint::one();
        for (&p, &e) in &self.0 {
            // floor halving: p^(-3) = p^(-4) · p
            let half = e.div_euclid(2);
            if e.rem_euclid(2) == 1 {
                radicand *= p;
            }
            let pw = BigUint::from(p).pow(half.unsigned_abs() as u32);
            if half > 0 {
                num *= pw;
            } else if half < 0 {
                den *= pw;
            }
        }
        (num, den, radicand)
    }
}

/// Calls `visit(p, e)` for every prime power `p^e ∥ k`, in increasing `p`.
pub fn for_each_prime_factor(mut k: u64, mut visit: impl FnMut(u64, u32)) {
    let spf = smallest_prime_factors();
    if k < SIEVE_LIMIT as u64 {
        while k > 1 {
            let p = spf[k as usize] as u64;
            let mut e = 0;
            while k.is_multiple_of(p) {
                k /= p;
                e += 1;
            }
            visit(p, e);
        }
        return;
    }
    let mut factors = factor_big(&BigUint::from(k));
    factors.sort();
    for (p, e) in factors {
        visit(p.to_u64().expect("factor of a u64 fits in u64"), e);
    }
}

/// Decomposes `n = s² · d` with `d` square-free. Returns `(s, d)`.
pub fn square_free_decompose(n: &BigUint) -> (BigUint, BigUint) {
    assert!(!n.is_zero(), "square-free decomposition of zero");
    let mut s = BigUint::one();
    let mut d = BigUint::one();
    for (p, e) in factor_big(n) {
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            d *= p;
        }
    }
    (s, d)
}

/// Full factorization `[(p, e)]`, primes unordered.
fn factor_big(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out: BTreeMap<BigUint, u32> = BTreeMap::new();
    let mut rest = n.clone();
    for &p in small_primes() {
        if rest.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            *out.entry(pb).or_insert(0) += e;
        }
    }
    if !rest.is_one() {
        let mut stack = vec![rest];
        while let Some(x) = stack.pop() {
            if x.is_one() {
                continue;
            }
            if is_probable_prime(&x) {
                *out.entry(x).or_insert(0) += 1;
                continue;
            }
            let r = x.sqrt();
            if &r * &r == x {
                stack.push(r.clone());
                stack.push(r);
                continue;
            }
            let d = pollard_brent(&x);
            stack.push(&x / &d);
            stack.push(d);
        }
    }
    out.into_iter().collect()
}

fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let pb = BigUint::from(p);
        if *n == pb {
            return true;
        }
        if (n % &pb).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    // Deterministic for n < 3.3e24; probabilistic beyond with 12 bases.
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A nontrivial factor of the odd composite `n`.
fn pollard_brent(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        const BATCH: u64 = 64;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..BATCH.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += BATCH;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}
