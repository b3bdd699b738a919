//! Binomials, unsigned Stirling numbers of the first kind, Bernoulli and
//! Cauchy numbers, and Carlitz's degenerate Bernoulli numbers and
//! polynomials.
//!
//! The degenerate Bernoulli number β_m(λ) has two independent routes:
//! [`degenerate_bernoulli`] uses Howard's closed form
//!
//! ```text
//! β_m(λ) = C_m λ^m + Σ_{j=1}^{⌊m/2⌋} (m / 2j) B_{2j} s(m−1, 2j−1) (−λ)^{m−2j}     (m ≥ 2)
//! ```
//!
//! and [`degenerate_bernoulli_series`] extracts the coefficient from the
//! generating function `t / ((1+λt)^{1/λ} − 1)`. They are expected to agree
//! exactly.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{Rational, TruncatedSeries};

/// Grow-only tables shared by the free functions of this module.
#[derive(Default)]
pub struct SequenceCache {
    inner: Mutex<Tables>,
}

#[derive(Default)]
struct Tables {
    // stirling1[n][k], rows 0..len
    stirling1: Vec<Vec<BigInt>>,
    bernoulli: Vec<Rational>,
    cauchy: Vec<Rational>,
    degenerate: HashMap<(u32, Rational), Rational>,
}

impl Tables {
    fn grow_stirling(&mut self, n: usize) {
        if self.stirling1.is_empty() {
            self.stirling1.push(vec![BigInt::one()]);
        }
        while self.stirling1.len() <= n {
            let m = self.stirling1.len();
            let prev = &self.stirling1[m - 1];
            let mut row = vec![BigInt::zero(); m + 1];
            // s(m, k) = s(m-1, k-1) + (m-1) s(m-1, k)
            for (k, slot) in row.iter_mut().enumerate() {
                if k >= 1 {
                    *slot += &prev[k - 1];
                }
                if k < prev.len() {
                    *slot += &prev[k] * BigInt::from(m - 1);
                }
            }
            self.stirling1.push(row);
        }
    }

    fn stirling(&mut self, n: usize, k: usize) -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        self.grow_stirling(n);
        self.stirling1[n][k].clone()
    }

    fn grow_bernoulli(&mut self, n: usize) {
        // Σ_{j=0}^{k} C(k+1, j) B_j = 0 for k ≥ 1, which is the t/(eᵗ−1)
        // convention (B₁ = −1/2).
        while self.bernoulli.len() <= n {
            let k = self.bernoulli.len();
            if k == 0 {
                self.bernoulli.push(Rational::one());
                continue;
            }
            let acc: Rational = (0..k)
                .map(|j| &self.bernoulli[j] * Rational::from_int(binomial_u(k as u64 + 1, j as u64)))
                .sum();
            self.bernoulli.push(-(acc / Rational::from(k as u64 + 1)));
        }
    }

    fn grow_cauchy(&mut self, n: usize) {
        while self.cauchy.len() <= n {
            let m = self.cauchy.len();
            if m == 0 {
                self.cauchy.push(Rational::one());
                continue;
            }
            let value: Rational = (0..=m)
                .map(|k| {
                    let sign = Rational::sign_pow((m - k) as i64);
                    Rational::new(self.stirling(m, k), BigInt::from(k + 1)) * sign
                })
                .sum();
            self.cauchy.push(value);
        }
    }
}

impl SequenceCache {
    pub fn new() -> Self {
        SequenceCache::default()
    }

    /// Process-wide cache used by the free functions.
    pub fn global() -> &'static SequenceCache {
        static CACHE: OnceLock<SequenceCache> = OnceLock::new();
        CACHE.get_or_init(SequenceCache::new)
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, Tables> {
        self.inner.lock().unwrap_or_else(|e| e.into_inner())
    }

    pub fn stirling1_unsigned(&self, n: i64, k: i64) -> Result<BigInt> {
        if n < 0 || k < 0 {
            return Err(Error::NegativeArgument(n, k));
        }
        Ok(self.lock().stirling(n as usize, k as usize))
    }

    pub fn bernoulli_number(&self, k: u32) -> Rational {
        let mut t = self.lock();
        t.grow_bernoulli(k as usize);
        t.bernoulli[k as usize].clone()
    }

    pub fn cauchy_number(&self, k: u32) -> Rational {
        let mut t = self.lock();
        t.grow_cauchy(k as usize);
        t.cauchy[k as usize].clone()
    }

    pub fn degenerate_bernoulli(&self, m: u32, lambda: &Rational) -> Rational {
        if let Some(v) = self.lock().degenerate.get(&(m, lambda.clone())) {
            return v.clone();
        }
        let value = match m {
            0 => Rational::one(),
            1 => (lambda - Rational::one()) / Rational::from(2),
            _ => {
                let mut acc = self.cauchy_number(m) * lambda.pow(m as i32).expect("non-negative power");
                let neg_lambda = -lambda;
                for j in 1..=m / 2 {
                    let b = self.bernoulli_number(2 * j);
                    let s = self
                        .stirling1_unsigned(m as i64 - 1, 2 * j as i64 - 1)
                        .expect("non-negative");
                    let p = neg_lambda.pow((m - 2 * j) as i32).expect("non-negative power");
                    acc += Rational::new(m, 2 * j) * b * Rational::from_int(s) * p;
                }
                acc
            }
        };
        self.lock().degenerate.insert((m, lambda.clone()), value.clone());
        value
    }
}

/// C(n, k) for `n ≥ 0`; zero when `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::NegativeUpperIndex(n));
    }
    if k < 0 || k > n {
        return Ok(BigInt::zero());
    }
    Ok(binomial_u(n as u64, k as u64))
}

fn binomial_u(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Binomial as a rational; out-of-range `k` gives zero.
pub fn binomial_q(n: i64, k: i64) -> Rational {
    Rational::from_int(binomial(n, k).expect("non-negative upper index"))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn stirling1_unsigned(n: i64, k: i64) -> Result<BigInt> {
    SequenceCache::global().stirling1_unsigned(n, k)
}

/// Bₖ with the `t/(eᵗ−1)` convention. Only even indices feed Howard's
/// formula, so the sign of B₁ does not matter downstream.
pub fn bernoulli_number(k: u32) -> Rational {
    SequenceCache::global().bernoulli_number(k)
}

/// Cₖ = Σ_j s(k, j) (−1)^{k−j} / (j+1), the coefficients of t/log(1+t)
/// times k!.
pub fn cauchy_number(k: u32) -> Rational {
    SequenceCache::global().cauchy_number(k)
}

/// β_m(λ) via Howard's closed form (β₀ = 1, β₁ = −1/2 + λ/2).
pub fn degenerate_bernoulli(m: u32, lambda: &Rational) -> Rational {
    SequenceCache::global().degenerate_bernoulli(m, lambda)
}

/// Series `(1+λt)^{x/λ}` to `order` terms: the k-th coefficient is
/// `Π_{i<k} (x − iλ) / k!`. With `λ = 0` this is `exp(xt)`.
fn degenerate_exponential(x: &Rational, lambda: &Rational, order: usize) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(order);
    let mut c = Rational::one();
    for k in 0..order {
        coeffs.push(c.clone());
        c = c * (x - lambda * Rational::from(k)) / Rational::from(k + 1);
    }
    TruncatedSeries::new(coeffs, order)
}

/// `t / ((1+λt)^{1/λ} − 1)` to `order` terms.
fn degenerate_bernoulli_gf(lambda: &Rational, order: usize) -> TruncatedSeries {
    // ((1+λt)^{1/λ} − 1)/t has constant term 1, so it is invertible.
    let e = degenerate_exponential(&Rational::one(), lambda, order + 1);
    let shifted = (&e - &TruncatedSeries::one(order + 1)).div_x().expect("zero constant term");
    shifted.reciprocal().expect("unit constant term")
}

/// β_m(λ) as `m!` times the t^m coefficient of `t/((1+λt)^{1/λ} − 1)`.
/// `λ = 0` yields the classical Bernoulli number.
pub fn degenerate_bernoulli_series(m: u32, lambda: &Rational) -> Rational {
    let gf = degenerate_bernoulli_gf(lambda, m as usize + 1);
    gf.coeff(m as usize) * Rational::from_int(factorial(m))
}

/// β_k(x | λ) from `t(1+λt)^{x/λ} / ((1+λt)^{1/λ} − 1)`.
pub fn degenerate_bernoulli_polynomial(k: u32, x: &Rational, lambda: &Rational) -> Result<Rational> {
    if lambda.is_zero() {
        return Err(Error::ClassicalLimit);
    }
    let order = k as usize + 1;
    let prod = &degenerate_bernoulli_gf(lambda, order) * &degenerate_exponential(x, lambda, order);
    Ok(prod.coeff(k as usize) * Rational::from_int(factorial(k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2).unwrap(), BigInt::from(6));
        assert_eq!(binomial(3, 5).unwrap(), BigInt::zero());
        assert_eq!(binomial(3, -1).unwrap(), BigInt::zero());
        for n in 0..20 {
            assert_eq!(binomial(n, 0).unwrap(), BigInt::one());
        }
        assert!(matches!(binomial(-1, 0), Err(Error::NegativeUpperIndex(-1))));
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling1_unsigned(0, 0).unwrap(), BigInt::one());
        for n in 0..12 {
            assert_eq!(stirling1_unsigned(n, n).unwrap(), BigInt::one());
            assert_eq!(stirling1_unsigned(n, n + 1).unwrap(), BigInt::zero());
        }
        assert_eq!(stirling1_unsigned(4, 2).unwrap(), BigInt::from(11));
        assert_eq!(stirling1_unsigned(3, 0).unwrap(), BigInt::zero());
        assert!(stirling1_unsigned(-1, 0).is_err());
        assert!(stirling1_unsigned(2, -1).is_err());
    }

    #[test]
    fn stirling_matches_falling_factorial_expansion() {
        // x(x−1)…(x−n+1) = Σ_k (−1)^{n−k} s(n,k) x^k, expanded directly.
        for n in 0..=10usize {
            let mut poly = vec![BigInt::one()];
            for i in 0..n {
                let mut next = vec![BigInt::zero(); poly.len() + 1];
                for (d, c) in poly.iter().enumerate() {
                    next[d + 1] += c;
                    next[d] -= c * BigInt::from(i);
                }
                poly = next;
            }
            for (k, c) in poly.iter().enumerate() {
                let s = stirling1_unsigned(n as i64, k as i64).unwrap();
                let signed = if (n - k) % 2 == 0 { s } else { -s };
                assert_eq!(&signed, c, "n={n} k={k}");
            }
            let row: BigInt = (0..=n as i64).map(|k| stirling1_unsigned(n as i64, k).unwrap()).sum();
            assert_eq!(row, factorial(n as u32));
        }
    }

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli_number(0), Rational::one());
        assert_eq!(bernoulli_number(1), r(-1, 2));
        assert_eq!(bernoulli_number(2), r(1, 6));
        assert_eq!(bernoulli_number(3), Rational::zero());
        assert_eq!(bernoulli_number(4), r(-1, 30));
        assert_eq!(bernoulli_number(12), r(-691, 2730));
    }

    #[test]
    fn cauchy_examples() {
        assert_eq!(cauchy_number(0), Rational::one());
        assert_eq!(cauchy_number(1), r(1, 2));
        assert_eq!(cauchy_number(2), r(-1, 6));
    }

    #[test]
    fn cauchy_matches_log_series() {
        // log(1+t)/t = Σ (−1)^k t^k/(k+1); its reciprocal is t/log(1+t).
        let order = 13;
        let s = TruncatedSeries::from_fn(order, |k| Rational::sign_pow(k as i64) * r(1, k as i64 + 1));
        let inv = s.reciprocal().unwrap();
        for k in 0..order as u32 {
            assert_eq!(cauchy_number(k), inv.coeff(k as usize) * Rational::from_int(factorial(k)), "k={k}");
        }
    }

    #[test]
    fn degenerate_examples() {
        assert_eq!(degenerate_bernoulli(0, &r(3, 7)), Rational::one());
        assert_eq!(degenerate_bernoulli(1, &r(1, 4)), r(-3, 8));
        assert_eq!(degenerate_bernoulli(2, &Rational::zero()), r(1, 6));
        assert_eq!(degenerate_bernoulli(2, &r(1, 2)), r(1, 8));

        assert_eq!(degenerate_bernoulli_series(1, &r(1, 3)), r(-1, 3));
        assert_eq!(degenerate_bernoulli_series(0, &r(5, 7)), Rational::one());
        assert_eq!(degenerate_bernoulli_series(4, &Rational::zero()), r(-1, 30));
    }

    #[test]
    fn howard_agrees_with_series() {
        let lambdas = [r(0, 1), r(1, 2), r(1, 3), r(1, 5), r(1, 7), r(2, 3), r(-1, 4)];
        for l in &lambdas {
            for m in 0..=12 {
                assert_eq!(degenerate_bernoulli(m, l), degenerate_bernoulli_series(m, l), "m={m} λ={l}");
            }
        }
        for m in 0..=12 {
            assert_eq!(degenerate_bernoulli(m, &Rational::zero()), bernoulli_number(m), "m={m}");
        }
    }

    #[test]
    fn polynomial_examples() {
        let l = r(1, 3);
        assert_eq!(degenerate_bernoulli_polynomial(0, &r(5, 2), &l).unwrap(), Rational::one());
        assert_eq!(degenerate_bernoulli_polynomial(1, &r(1, 2), &r(1, 2)).unwrap(), r(1, 4));
        for lam in [r(1, 2), r(1, 3), r(1, 7), r(-2, 5)] {
            for k in 0..=10 {
                assert_eq!(
                    degenerate_bernoulli_polynomial(k, &Rational::zero(), &lam).unwrap(),
                    degenerate_bernoulli(k, &lam)
                );
            }
        }
        assert!(matches!(
            degenerate_bernoulli_polynomial(2, &r(1, 2), &Rational::zero()),
            Err(Error::ClassicalLimit)
        ));
    }

    #[test]
    fn polynomial_degree_one_closed_form() {
        // β₁(x|λ) = x − (1 − λ)/2
        for (x, lam) in [(r(1, 2), r(1, 2)), (r(3, 4), r(1, 5)), (r(-2, 1), r(2, 3))] {
            let expect = &x - (Rational::one() - &lam) / Rational::from(2);
            assert_eq!(degenerate_bernoulli_polynomial(1, &x, &lam).unwrap(), expect);
        }
    }
}
