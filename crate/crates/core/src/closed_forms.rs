//! Closed-form expressions for the harmonic sums, evaluated exactly.
//!
//! Nothing here is used as ground truth: every formula is a claim that the
//! verification harness checks against the dynamic program in
//! [`crate::harmonic`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Rational, TruncatedSeries};
use crate::sequences::{
    binomial_q, degenerate_bernoulli, degenerate_bernoulli_polynomial, factorial,
};

fn q(n: i64) -> Rational {
    Rational::from(n)
}

fn frac(p: i64, d: i64) -> Rational {
    Rational::new(p, d)
}

fn fact(n: u32) -> Rational {
    Rational::from_int(factorial(n))
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}

/// Evaluates an integer polynomial given by ascending coefficients.
fn poly_at(coeffs: &[i64], n: i64) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, &c| acc * q(n) + q(c))
}

/// `e_m = C(n−1, m)/(m+1)`.
pub fn em_ones(n: i64, m: i64) -> Result<Rational> {
    require(n >= 2 && m >= 0, || format!("need n >= 2, m >= 0 (n={n}, m={m})"))?;
    Ok(binomial_q(n - 1, m) / q(m + 1))
}

/// Tabulated polynomials in `n` for the single-index sum, `1 ≤ s ≤ 9`.
pub fn single_index_table(n: i64, s: u32) -> Result<Rational> {
    require(n >= 2, || format!("need n >= 2 (n={n})"))?;
    let n1 = q(n - 1);
    Ok(match s {
        1 => n1 / q(2),
        2 => -(n1 * q(n - 5)) / q(12),
        3 => -(n1 * q(n - 3)) / q(8),
        4 => n1 * poly_at(&[251, -109, 1, 1], n) / fact(6),
        5 => n1 * q(n - 5) * poly_at(&[-19, 6, 1], n) / q(288),
        6 => -(n1 * poly_at(&[-19087, 11153, -355, -355, 2, 2], n)) / (q(12) * fact(7)),
        7 => -(n1 * q(n - 7) * poly_at(&[751, -376, -33, 16, 2], n)) / (q(24) * fact(6)),
        8 => {
            n1 * poly_at(&[1070017, -744383, 39697, 39697, -917, -917, 3, 3], n) / fact(10)
        }
        9 => {
            q(27) * n1 * q(n - 3) * q(n - 9) * poly_at(&[2857, -851, -350, 10, 13, 1], n)
                / (q(2) * fact(10))
        }
        _ => return Err(Error::NotTabulated(s)),
    })
}

/// The `s × s` lower Hessenberg matrix whose determinant is the single-index
/// sum: `a[i][0] = (i/(i+1)) C(n−1, i)`, `a[i][j] = C(n−1, i−j+1)/(i−j+2)`
/// for `1 ≤ j ≤ i+1` (1-based `i`), zero above the superdiagonal.
pub fn single_index_matrix(n: i64, s: u32) -> Vec<Vec<Rational>> {
    let s = s as i64;
    (1..=s)
        .map(|i| {
            (1..=s)
                .map(|j| {
                    if j == 1 {
                        frac(i, i + 1) * binomial_q(n - 1, i)
                    } else if j <= i + 1 {
                        binomial_q(n - 1, i - j + 1) / q(i - j + 2)
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Determinant of a lower Hessenberg matrix by expansion along the last
/// row: `D_k = Σ_{i≤k} (−1)^{k−i} a[k][i] Π_{l=i}^{k−1} a[l][l+1] D_{i−1}`.
pub fn hessenberg_determinant(a: &[Vec<Rational>]) -> Rational {
    let s = a.len();
    let mut d = Vec::with_capacity(s + 1);
    d.push(Rational::one());
    for k in 0..s {
        let mut acc = Rational::zero();
        // super-diagonal product a[i][i+1]·…·a[k−1][k], built from the right
        let mut sup = Rational::one();
        for i in (0..=k).rev() {
            if i < k {
                sup *= &a[i][i + 1];
            }
            if sup.is_zero() {
                break;
            }
            let term = &a[k][i] * &sup * &d[i];
            if (k - i) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        d.push(acc);
    }
    d.pop().expect("nonempty")
}

/// Determinant by clearing row denominators and running fraction-free
/// (Bareiss) elimination over the integers.
pub fn bareiss_determinant(a: &[Vec<Rational>]) -> Rational {
    let s = a.len();
    if s == 0 {
        return Rational::one();
    }
    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..s - 1 {
        if m[k][k].is_zero() {
            match (k + 1..s).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..s {
            for j in k + 1..s {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let det = &m[s - 1][s - 1] * BigInt::from(sign);
    Rational::new(det, scale)
}

/// Single-index sum as the Hessenberg determinant.
pub fn single_index_determinant(n: i64, s: u32) -> Result<Rational> {
    require(n >= 2 && s >= 1, || format!("need n >= 2, s >= 1 (n={n}, s={s})"))?;
    Ok(hessenberg_determinant(&single_index_matrix(n, s)))
}

/// `β_j(1/n) n^j / j!`
fn scaled_degber(n: i64, j: u32) -> Rational {
    let lambda = frac(1, n);
    degenerate_bernoulli(j, &lambda) * q(n).pow(j as i32).expect("j >= 0") / fact(j)
}

/// `e_1^{(A)} = −Σ_{j=1}^{A} C(A−1, j−1) β_j(1/n) n^j/j!`.
pub fn single_index_degber(n: i64, s: u32) -> Result<Rational> {
    require(n >= 2 && s >= 1, || format!("need n >= 2, s >= 1 (n={n}, s={s})"))?;
    let sum: Rational = (1..=s)
        .map(|j| binomial_q(s as i64 - 1, j as i64 - 1) * scaled_degber(n, j))
        .sum();
    Ok(-sum)
}

/// Two-term form with degenerate Bernoulli polynomials:
/// `((−1)^s n^{s+1}/(s+1)!) (β_{s+1}((n−1)/n | 1/n) − β_{s+1}(0 | 1/n))`.
pub fn single_index_degber_poly(n: i64, s: u32) -> Result<Rational> {
    require(n >= 2 && s >= 1, || format!("need n >= 2, s >= 1 (n={n}, s={s})"))?;
    let lambda = frac(1, n);
    let hi = degenerate_bernoulli_polynomial(s + 1, &frac(n - 1, n), &lambda)?;
    let lo = degenerate_bernoulli_polynomial(s + 1, &Rational::zero(), &lambda)?;
    let pre = Rational::sign_pow(s as i64) * q(n).pow(s as i32 + 1)? / fact(s + 1);
    Ok(pre * (hi - lo))
}

/// Coefficients of `x^0 … x^S` in `n(1 − (1−x)^{n−1}) / (1 − (1−x)^n)`.
/// The coefficient of `x^s` is the single-index sum for exponent `s`.
pub fn single_index_genfunc(n: i64, max_s: usize) -> Result<Vec<Rational>> {
    require(n >= 2, || format!("need n >= 2 (n={n})"))?;
    let order = max_s + 2;
    // (1 − (1−x)^k) / x, which has a nonzero constant term k
    let one_minus_pow_over_x = |k: i64| {
        let p = TruncatedSeries::from_fn(order, |i| {
            Rational::sign_pow(i as i64) * binomial_q(k, i as i64)
        });
        (&TruncatedSeries::one(order) - &p).div_x().expect("constant term cancels")
    };
    let num = one_minus_pow_over_x(n - 1);
    let den = one_minus_pow_over_x(n);
    let ratio = &num * &den.reciprocal()?;
    Ok(ratio.scale(&q(n)).into_coeffs())
}

/// Polynomial displays for the cyclic sum over slots of the
/// `1…1, A, 1…1` pattern, `A ∈ {2, 3, 4, 5}`.
pub fn cyclic_ones_polynomial(n: i64, a: u32, m: i64) -> Result<Rational> {
    require(n >= 2 && m >= 1, || format!("need n >= 2, m >= 1 (n={n}, m={m})"))?;
    let b = |k: i64| binomial_q(n - 1, k);
    let n1 = q(n - 1);
    let z2 = -(&n1 * q(n - 5)) / q(12);
    let z3 = -(&n1 * q(n - 3)) / q(8);
    Ok(match a {
        2 => -(q(m) * q(n - 2 * m - 3)) / (q(2) * q(m + 1) * q(m + 2)) * b(m),
        3 => {
            let inner = z2
                + q(m + 1) * q(n - 2 * m - 5) * q(n - m - 1) / (q(2) * q(m + 2) * q(m + 3));
            b(m) / q(m + 1) * inner
        }
        4 => {
            z3 / q(m + 1) * b(m) + &n1 * q(n - 5) / (q(12) * q(m + 2)) * b(m + 1)
                - q(m + 2) * q(n - 2 * m - 7) / (q(2) * q(m + 3) * q(m + 4)) * b(m + 2)
        }
        5 => {
            &n1 * poly_at(&[251, -109, 1, 1], n) / (fact(6) * q(m + 1)) * b(m)
                + &n1 * q(n - 3) / (q(8) * q(m + 2)) * b(m + 1)
                - &n1 * q(n - 5) / (q(12) * q(m + 3)) * b(m + 2)
                + q(m + 3) * q(n - 2 * m - 9) / (q(2) * q(m + 4) * q(m + 5)) * b(m + 3)
        }
        _ => return Err(Error::NoPolynomialDisplay(a)),
    })
}

/// Cyclic sum of the `1…1, A, 1…1` pattern for any `A ≥ 2` via degenerate
/// Bernoulli numbers:
///
/// ```text
/// Σ_{k=0}^{A−3} Σ_{j=1}^{A−k−1} (−1)^{k+1} n^j β_j(1/n) / ((m+k+1) j!) · C(n−1, m+k) C(A−k−2, j−1)
///   + (−1)^{A+1} (m+A−2)(n−2m−2A+1) / (2(m+A−1)(m+A)) · C(n−1, m+A−2)
/// ```
pub fn cyclic_ones_degber(n: i64, a: u32, m: i64) -> Result<Rational> {
    require(n >= 2 && m >= 1 && a >= 2, || format!("need n >= 2, m >= 1, A >= 2 (n={n}, m={m}, A={a})"))?;
    let a = a as i64;
    let mut acc = Rational::zero();
    for k in 0..=a - 3 {
        let outer = Rational::sign_pow(k + 1) * binomial_q(n - 1, m + k) / q(m + k + 1);
        if outer.is_zero() {
            continue;
        }
        let inner: Rational = (1..=a - k - 1)
            .map(|j| scaled_degber(n, j as u32) * binomial_q(a - k - 2, j - 1))
            .sum();
        acc += outer * inner;
    }
    let tail = Rational::sign_pow(a + 1) * q(m + a - 2) * q(n - 2 * m - 2 * a + 1)
        / (q(2) * q(m + a - 1) * q(m + a))
        * binomial_q(n - 1, m + a - 2);
    Ok(acc + tail)
}

/// `e_m^{(2)} = (C(n−1, m) + (−1)^m C(n−1, 2m+1)) / (n(m+1))`.
pub fn em_twos(n: i64, m: i64) -> Result<Rational> {
    require(n >= 2 && m >= 0, || format!("need n >= 2, m >= 0 (n={n}, m={m})"))?;
    Ok(alt_pair(n, m, m, 2 * m + 1) / (q(n) * q(m + 1)))
}

/// `C(n−1, k) + (−1)^sign C(n−1, k2)`
fn alt_pair(n: i64, sign: i64, k: i64, k2: i64) -> Rational {
    binomial_q(n - 1, k) + Rational::sign_pow(sign) * binomial_q(n - 1, k2)
}

/// Cyclic sum of the `2…2, 1, 2…2` pattern:
/// `(C(n−1, m) + (−1)^{m−1} C(n−1, 2m)) / n`.
pub fn twos_with_one_sum(n: i64, m: i64) -> Result<Rational> {
    require(n >= 2 && m >= 1, || format!("need n >= 2, m >= 1 (n={n}, m={m})"))?;
    Ok(alt_pair(n, m - 1, m, 2 * m) / q(n))
}

/// Cyclic sum of the `2…2, A, 2…2` pattern for any `A ≥ 1` via degenerate
/// Bernoulli numbers (separate branches for even and odd `A`).
pub fn cyclic_twos_degber(n: i64, a: u32, m: i64) -> Result<Rational> {
    require(n >= 2 && m >= 1 && a >= 1, || format!("need n >= 2, m >= 1, A >= 1 (n={n}, m={m}, A={a})"))?;
    let a = a as i64;
    let k_max = if a % 2 == 0 { a / 2 - 2 } else { (a - 3) / 2 };
    let mut acc = Rational::zero();
    for k in 0..=k_max {
        let outer = Rational::sign_pow(k + 1) * alt_pair(n, m + k, m + k, 2 * m + 2 * k + 1)
            / (q(n) * q(m + k + 1));
        if outer.is_zero() {
            continue;
        }
        let inner: Rational = (1..=a - 2 * k - 2)
            .map(|j| scaled_degber(n, j as u32) * binomial_q(a - 2 * k - 3, j - 1))
            .sum();
        acc += outer * inner;
    }
    let tail = if a % 2 == 0 {
        let h = a / 2;
        Rational::sign_pow(h - 1) * q(m + h - 1) / (q(n) * q(m + h))
            * alt_pair(n, m + h - 1, m + h - 1, 2 * m + a - 1)
    } else {
        let h = (a - 1) / 2;
        // (a−3)/2 is h−1; written as h+1 to stay non-negative at A = 1
        Rational::sign_pow(h) / q(n) * alt_pair(n, m + h + 1, m + h, 2 * m + a - 1)
    };
    Ok(acc + tail)
}

/// Real part of a single `1…1, 2, 1…1` pattern sum (independent of the slot):
/// `−m!(n−2m−3) / (2(m+2)!) · C(n−1, m)`.
pub fn ones_two_real_part(n: i64, m: i64) -> Result<Rational> {
    require(n >= 1 && m >= 1, || format!("need n >= 1, m >= 1 (n={n}, m={m})"))?;
    Ok(-(q(n - 2 * m - 3) * binomial_q(n - 1, m)) / (q(2) * q(m + 1) * q(m + 2)))
}

/// Whether a catalogued display is believed correct as printed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpectedStatus {
    Verified,
    SuspectedTypo,
}

/// Admissible `(n, m)` for a catalogue entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Domain {
    pub n_min: i64,
    pub m_min: i64,
    /// `Some(k)` when the display is only stated for `m = k`.
    pub m_fixed: Option<i64>,
}

impl Domain {
    pub fn contains(&self, n: i64, m: i64) -> bool {
        n >= self.n_min && m >= self.m_min && self.m_fixed.is_none_or(|k| k == m)
    }
}

/// A literal display for the cyclic sum of a `2…2, A, 2…2` pattern,
/// transcribed exactly as printed.
#[derive(Clone, Debug, Serialize)]
pub struct FormulaEntry {
    pub id: &'static str,
    pub location: &'static str,
    /// Exponent in the distinguished slot; the ground truth is the cyclic
    /// twos sum with this `A`.
    pub a: u32,
    pub domain: Domain,
    pub status: ExpectedStatus,
    /// Points at which a suspected typo is known to disagree with the
    /// exact sum. Empty for verified entries.
    pub witnesses: &'static [(i64, i64)],
    #[serde(skip)]
    evaluator: fn(i64, i64) -> Rational,
}

impl FormulaEntry {
    pub fn evaluate(&self, n: i64, m: i64) -> Result<Rational> {
        require(self.domain.contains(n, m), || {
            format!("({n}, {m}) outside the domain of {}", self.id)
        })?;
        Ok((self.evaluator)(n, m))
    }
}

fn z4(n: i64) -> Rational {
    q(n - 1) * poly_at(&[251, -109, 1, 1], n) / fact(6)
}

fn display_twos_3(n: i64, m: i64) -> Rational {
    -(q(n - 2 * m - 1) * binomial_q(n, m + 1)) / (q(2) * q(n) * q(n))
        + q(2 * m + 1) * Rational::sign_pow(m) * binomial_q(n, 2 * m + 2) / (q(n) * q(n))
}

fn display_twos_4(n: i64, m: i64) -> Rational {
    -(q(n - 1) * q(n - 5)) / (q(12) * q(n) * q(m + 1)) * alt_pair(n, m, m, 2 * m + 1)
        - q(m + 1) / (q(n) * q(m + 2)) * alt_pair(n, m + 1, m + 1, 2 * m + 3)
}

fn display_twos_5(n: i64, m: i64) -> Rational {
    -(q(n - 1) * q(n - 3)) / (q(8) * q(n) * q(m + 1)) * alt_pair(n, m, m, 2 * m + 1)
        + q(n - 2 * m - 3) / (q(2) * q(n) * q(n)) * binomial_q(n, m + 2)
        - q(2 * m + 3) * Rational::sign_pow(m + 1) / (q(n) * q(n)) * binomial_q(n, 2 * m + 4)
}

fn display_twos_6(n: i64, m: i64) -> Rational {
    z4(n) / (q(n) * q(m + 1)) * alt_pair(n, m + 1, m, 2 * m + 1)
        + q(n - 1) * q(n - 5) / (q(12) * q(n) * q(m + 2)) * alt_pair(n, m, m + 1, 2 * m + 3)
        + q(m + 2) / (q(n) * q(m + 3)) * alt_pair(n, m, m + 2, 2 * m + 5)
}

fn display_twos_7(n: i64, m: i64) -> Rational {
    q(n - 1) * q(n - 5) * poly_at(&[-19, 6, 1], n) / (q(288) * q(n) * q(m + 1))
        * alt_pair(n, m, m, 2 * m + 1)
        + q(n - 1) * q(n - 3) / (q(8) * q(n) * q(m + 2)) * alt_pair(n, m + 1, m + 1, 2 * m + 3)
        - q(n - 2 * m - 5) / (q(2) * q(n) * q(n)) * binomial_q(n, m + 3)
        + q(2 * m + 5) * Rational::sign_pow(m) / (q(n) * q(n)) * binomial_q(n, 2 * m + 6)
}

fn display_twos_8(n: i64, m: i64) -> Rational {
    let z6_num = q(n - 1) * poly_at(&[-19087, 11153, -355, -355, 2, 2], n);
    -(z6_num) / (q(12) * fact(7) * q(n) * q(m + 1)) * alt_pair(n, m, m, 2 * m + 1)
        - z4(n) / (q(n) * q(m + 2)) * alt_pair(n, m + 1, m + 1, 2 * m + 3)
        - q(n - 1) * q(n - 5) / (q(12) * q(n) * q(m + 3)) * alt_pair(n, m, m + 2, 2 * m + 5)
        - q(m + 3) / (q(n) * q(m + 4)) * alt_pair(n, m + 1, m + 3, 2 * m + 7)
}

fn display_pair_m2_a4(n: i64, _m: i64) -> Rational {
    -(q(n - 1) * q(n - 2) * poly_at(&[-13936, 5787, -469, -27, 5], n)) / (q(12) * fact(7))
}

fn display_pair_m2_a6(n: i64, _m: i64) -> Rational {
    -(q(n - 1) * q(n - 2) * poly_at(&[773596, -411111, 33743, 7950, -946, -39, 7], n)) / fact(10)
}

/// Every literal display for the `2…2, A, 2…2` cyclic sums.
pub fn literal_display_catalog() -> Vec<FormulaEntry> {
    let general = Domain { n_min: 2, m_min: 1, m_fixed: None };
    let pair = Domain { n_min: 2, m_min: 2, m_fixed: Some(2) };
    let entry = |id, location, a, domain, status, witnesses, evaluator| FormulaEntry {
        id,
        location,
        a,
        domain,
        status,
        witnesses,
        evaluator,
    };
    use ExpectedStatus::*;
    vec![
        entry("twos_sum_a3", "cyclic twos sum, A=3 explicit display", 3, general, Verified, &[][..], display_twos_3 as fn(i64, i64) -> Rational),
        entry("twos_sum_a4", "cyclic twos sum, A=4 explicit display", 4, general, Verified, &[], display_twos_4),
        entry("twos_sum_a5", "cyclic twos sum, A=5 explicit display", 5, general, Verified, &[], display_twos_5),
        entry("twos_sum_a6", "cyclic twos sum, A=6 explicit display", 6, general, SuspectedTypo, &[(6, 1), (4, 1), (5, 1)], display_twos_6),
        entry("twos_sum_a7", "cyclic twos sum, A=7 explicit display", 7, general, Verified, &[], display_twos_7),
        entry("twos_sum_a8", "cyclic twos sum, A=8 explicit display", 8, general, Verified, &[], display_twos_8),
        entry("twos_pair_m2_a4", "Z(2,4) + Z(4,2) polynomial", 4, pair, Verified, &[], display_pair_m2_a4),
        entry("twos_pair_m2_a6", "Z(2,6) + Z(6,2) polynomial", 6, pair, SuspectedTypo, &[(3, 2), (4, 2), (5, 2)], display_pair_m2_a6),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, d: i64) -> Rational {
        Rational::new(p, d)
    }

    #[test]
    fn em_ones_examples() {
        assert_eq!(em_ones(5, 2).unwrap(), r(2, 1));
        for n in 2..10 {
            assert_eq!(em_ones(n, 0).unwrap(), r(1, 1));
        }
        assert_eq!(em_ones(4, 5).unwrap(), r(0, 1));
    }

    #[test]
    fn table_examples() {
        assert_eq!(single_index_table(5, 2).unwrap(), r(0, 1));
        assert_eq!(single_index_table(3, 3).unwrap(), r(0, 1));
        assert_eq!(single_index_table(6, 6).unwrap(), r(23485, 12096));
        assert_eq!(single_index_table(4, 5).unwrap(), r(-7, 32));
        assert!(matches!(single_index_table(4, 10), Err(Error::NotTabulated(10))));
        assert!(matches!(single_index_table(4, 0), Err(Error::NotTabulated(0))));
    }

    #[test]
    fn determinant_examples() {
        for n in 2..12 {
            assert_eq!(single_index_determinant(n, 1).unwrap(), r(n - 1, 2));
        }
        assert_eq!(single_index_determinant(5, 2).unwrap(), r(0, 1));
        assert_eq!(single_index_determinant(7, 3).unwrap(), r(-3, 1));
    }

    #[test]
    fn hessenberg_matches_bareiss() {
        for n in 2..=16 {
            for s in 1..=12 {
                let a = single_index_matrix(n, s);
                assert_eq!(hessenberg_determinant(&a), bareiss_determinant(&a), "n={n} s={s}");
            }
        }
        // a generic Hessenberg matrix with non-unit superdiagonal and a zero pivot
        let a = vec![
            vec![r(0, 1), r(2, 1), r(0, 1)],
            vec![r(1, 3), r(5, 1), r(-1, 2)],
            vec![r(4, 1), r(1, 7), r(2, 1)],
        ];
        assert_eq!(hessenberg_determinant(&a), bareiss_determinant(&a));
    }

    #[test]
    fn degber_examples() {
        for n in 2..12 {
            assert_eq!(single_index_degber(n, 1).unwrap(), r(n - 1, 2));
        }
        assert_eq!(single_index_degber(5, 2).unwrap(), r(0, 1));
        assert_eq!(single_index_degber(4, 3).unwrap(), r(-3, 8));
        assert_eq!(single_index_degber_poly(2, 1).unwrap(), r(1, 2));
        assert_eq!(single_index_degber_poly(5, 2).unwrap(), r(0, 1));
        assert_eq!(single_index_degber_poly(6, 4).unwrap(), r(-151, 144));
    }

    #[test]
    fn genfunc_examples() {
        for n in 2..=10 {
            let c = single_index_genfunc(n, 3).unwrap();
            assert_eq!(c.len(), 4);
            assert_eq!(c[0], r(n - 1, 1));
            assert_eq!(c[1], r(n - 1, 2));
        }
        assert_eq!(single_index_genfunc(5, 2).unwrap()[2], r(0, 1));
        // n = 2: 2/(2 − x) = Σ x^s / 2^s
        assert_eq!(single_index_genfunc(2, 3).unwrap(), vec![r(1, 1), r(1, 2), r(1, 4), r(1, 8)]);
    }

    #[test]
    fn cyclic_ones_examples() {
        assert_eq!(cyclic_ones_polynomial(5, 2, 2).unwrap(), r(1, 1));
        for n in 2..=10 {
            assert_eq!(cyclic_ones_polynomial(n, 3, 1).unwrap(), r(-(n - 1) * (n - 3), 8));
        }
        assert_eq!(cyclic_ones_polynomial(4, 2, 5).unwrap(), r(0, 1));
        assert!(matches!(cyclic_ones_polynomial(4, 6, 1), Err(Error::NoPolynomialDisplay(6))));
        for n in 2..=12 {
            for m in 1..=5 {
                assert_eq!(cyclic_ones_degber(n, 2, m).unwrap(), cyclic_ones_polynomial(n, 2, m).unwrap());
            }
        }
        assert_eq!(cyclic_ones_degber(5, 3, 2).unwrap(), cyclic_ones_polynomial(5, 3, 2).unwrap());
        assert_eq!(cyclic_ones_degber(6, 6, 1).unwrap(), r(23485, 12096));
    }

    #[test]
    fn twos_closed_form_examples() {
        assert_eq!(em_twos(4, 1).unwrap(), r(1, 4));
        assert_eq!(em_twos(6, 2).unwrap(), r(11, 18));
        for n in 2..=10 {
            assert_eq!(em_twos(n, 0).unwrap(), r(1, 1));
        }
        assert_eq!(twos_with_one_sum(4, 1).unwrap(), r(3, 2));
        assert_eq!(twos_with_one_sum(5, 2).unwrap(), r(1, 1));
        for n in 2..=8 {
            for m in n..n + 3 {
                assert_eq!(twos_with_one_sum(n, m).unwrap(), r(0, 1));
            }
        }
        for n in 2..=12 {
            for m in 1..=5 {
                assert_eq!(cyclic_twos_degber(n, 2, m).unwrap(), q(m) * em_twos(n, m).unwrap());
                assert_eq!(cyclic_twos_degber(n, 1, m).unwrap(), twos_with_one_sum(n, m).unwrap());
            }
        }
        assert_eq!(cyclic_twos_degber(6, 6, 1).unwrap(), r(23485, 12096));
    }

    #[test]
    fn real_part_examples() {
        assert_eq!(ones_two_real_part(5, 2).unwrap(), r(1, 2));
        assert_eq!(ones_two_real_part(5, 1).unwrap(), r(0, 1));
        assert_eq!(ones_two_real_part(9, 3).unwrap(), r(0, 1));
    }

    #[test]
    fn catalog_shape() {
        let cat = literal_display_catalog();
        assert_eq!(cat.len(), 8);
        let by_id = |id: &str| cat.iter().find(|e| e.id == id).unwrap();
        assert_eq!(by_id("twos_sum_a4").evaluate(3, 2).unwrap(), r(1, 27));
        assert_eq!(by_id("twos_sum_a3").evaluate(4, 1).unwrap(), r(-3, 8));
        assert_eq!(by_id("twos_pair_m2_a6").evaluate(3, 2).unwrap(), r(1, 81));
        assert!(by_id("twos_pair_m2_a6").evaluate(3, 1).is_err());
        for e in &cat {
            assert_eq!(e.status == ExpectedStatus::SuspectedTypo, !e.witnesses.is_empty(), "{}", e.id);
        }
    }
}
