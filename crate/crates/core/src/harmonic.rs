//! Finite q-multiple harmonic sums
//!
//! ```text
//! Z_n(q; s_1, …, s_m) = Σ_{1 ≤ i_1 < … < i_m ≤ n−1} Π_k 1/(1 − q^{i_k})^{s_k}
//! ```
//!
//! evaluated exactly, either at q = ζₙ (values in Q(ζₙ)) or at a rational q.
//! [`RootSums`] adds the symmetric-function and pattern-sum layer for the
//! root-of-unity case.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use serde::Serialize;

use crate::cyclotomic::{CycElem, CycField};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::sequences::binomial;

/// Default cap on the number of tuples the brute-force oracle will enumerate.
pub const DEFAULT_BRUTE_CAP: u64 = 200_000;

/// Exponent vector `(s_1, …, s_m)`, every entry at least 1. The empty vector
/// is allowed and the corresponding sum is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IndexVector(Vec<u32>);

impl IndexVector {
    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        if let Some(bad) = exponents.iter().find(|&&s| s == 0) {
            return Err(Error::InvalidIndex(format!("exponent {bad} < 1")));
        }
        Ok(IndexVector(exponents))
    }

    pub fn empty() -> Self {
        IndexVector(Vec::new())
    }

    /// `(a, …, a)` of length `k`.
    pub fn constant(a: u32, k: usize) -> Result<Self> {
        IndexVector::new(vec![a; k])
    }

    /// `base^{j−1}, a, base^{m−j}`.
    pub fn pattern(base: u32, a: u32, m: usize, j: usize) -> Result<Self> {
        if j == 0 || j > m {
            return Err(Error::SlotOutOfRange { j, m });
        }
        let mut v = vec![base; m];
        v[j - 1] = a;
        IndexVector::new(v)
    }

    /// `1, …, 1, a, 1, …, 1` with `a` in slot `j` (1-based).
    pub fn ones_pattern(a: u32, m: usize, j: usize) -> Result<Self> {
        IndexVector::pattern(1, a, m, j)
    }

    /// `2, …, 2, a, 2, …, 2` with `a` in slot `j` (1-based).
    pub fn twos_pattern(a: u32, m: usize, j: usize) -> Result<Self> {
        IndexVector::pattern(2, a, m, j)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn reversed(&self) -> Self {
        IndexVector(self.0.iter().rev().copied().collect())
    }
}

impl FromStr for IndexVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(IndexVector::empty());
        }
        let parsed = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<i64>().map_err(|_| Error::InvalidIndex(format!("not an integer: {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(bad) = parsed.iter().find(|&&v| v < 1 || v > u32::MAX as i64) {
            return Err(Error::InvalidIndex(format!("exponent {bad} < 1")));
        }
        IndexVector::new(parsed.into_iter().map(|v| v as u32).collect())
    }
}

impl fmt::Display for IndexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Where q lives: a primitive n-th root of unity, or a rational number with
/// an explicit summation bound `n` (indices run up to `n − 1`).
#[derive(Clone, Debug)]
pub enum QSpec {
    RootOfUnity(Arc<CycField>),
    RationalQ { q: Rational, n: u32 },
}

impl QSpec {
    pub fn root(n: u32) -> Result<Self> {
        Ok(QSpec::RootOfUnity(CycField::new(n)?))
    }

    pub fn rational(q: Rational, n: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidOrder(n as i64));
        }
        for i in 1..n {
            if q.pow(i as i32)?.is_one() {
                return Err(Error::InvalidParameter(format!("q^{i} = 1: pole in 1/(1 - q^{i})")));
            }
        }
        Ok(QSpec::RationalQ { q, n })
    }

    pub fn n(&self) -> u32 {
        match self {
            QSpec::RootOfUnity(f) => f.n(),
            QSpec::RationalQ { n, .. } => *n,
        }
    }
}

/// A sum value: an element of Q(ζₙ) or a rational.
#[derive(Clone, Debug, PartialEq)]
pub enum SumValue {
    Cyclotomic(CycElem),
    Rational(Rational),
}

impl SumValue {
    pub fn as_rational(&self) -> Result<Rational> {
        match self {
            SumValue::Cyclotomic(z) => z.rational_part(),
            SumValue::Rational(r) => Ok(r.clone()),
        }
    }
}

impl fmt::Display for SumValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SumValue::Cyclotomic(z) => write!(f, "{z}"),
            SumValue::Rational(r) => write!(f, "{r}"),
        }
    }
}

/// The minimal ring interface the nested-sum evaluators need.
pub trait SumScalar: Clone {
    fn add_in_place(&mut self, other: &Self);
    fn times(&self, other: &Self) -> Self;
}

impl SumScalar for Rational {
    fn add_in_place(&mut self, other: &Self) {
        *self += other;
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
}

impl SumScalar for CycElem {
    fn add_in_place(&mut self, other: &Self) {
        *self = &*self + other;
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
}

/// Powers `w_i^e` for every distinct exponent in `s`; `powers[e][i]`.
fn power_table<T: SumScalar>(weights: &[T], s: &[u32], one: &T) -> HashMap<u32, Vec<T>> {
    let mut table = HashMap::new();
    for &e in s {
        table.entry(e).or_insert_with(|| {
            weights
                .iter()
                .map(|w| (0..e).fold(one.clone(), |acc, _| acc.times(w)))
                .collect::<Vec<_>>()
        });
    }
    table
}

/// O(|weights|·m) evaluation of `Σ_{i_1<…<i_m} Π_k powers[s_k][i_k]`.
///
/// `partial[k]` holds the sum over chains of length `k` ending at or before
/// the current index. Updating `k` from `m` down to 1 makes every chain
/// extend only with a strictly larger index.
#[allow(clippy::needless_range_loop)] // `i` also bounds the chain length
pub fn nested_sum_dp<T: SumScalar>(
    powers: &HashMap<u32, Vec<T>>,
    len: usize,
    s: &[u32],
    zero: &T,
    one: &T,
) -> T {
    let m = s.len();
    if m == 0 {
        return one.clone();
    }
    let mut partial = vec![zero.clone(); m + 1];
    partial[0] = one.clone();
    for i in 0..len {
        for k in (1..=m.min(i + 1)).rev() {
            let term = partial[k - 1].times(&powers[&s[k - 1]][i]);
            partial[k].add_in_place(&term);
        }
    }
    partial.swap_remove(m)
}

/// Direct enumeration of all strictly increasing index tuples.
pub fn nested_sum_brute<T: SumScalar>(
    powers: &HashMap<u32, Vec<T>>,
    len: usize,
    s: &[u32],
    zero: &T,
    one: &T,
) -> T {
    fn rec<T: SumScalar>(
        powers: &HashMap<u32, Vec<T>>,
        len: usize,
        s: &[u32],
        start: usize,
        prefix: &T,
        acc: &mut T,
    ) {
        let Some((&e, rest)) = s.split_first() else {
            acc.add_in_place(prefix);
            return;
        };
        // leave room for the remaining slots
        for i in start..len.saturating_sub(rest.len()) {
            let next = prefix.times(&powers[&e][i]);
            rec(powers, len, rest, i + 1, &next, acc);
        }
    }
    let mut acc = zero.clone();
    rec(powers, len, s, 0, one, &mut acc);
    acc
}

fn check_cap(len: usize, m: usize, cap: u64) -> Result<()> {
    let tuples = binomial(len as i64, m as i64)?;
    if tuples > BigInt::from(cap) {
        return Err(Error::TooLarge { tuples: tuples.to_string(), cap });
    }
    Ok(())
}

fn rational_weights(q: &Rational, n: u32) -> Result<Vec<Rational>> {
    (1..n)
        .map(|i| (Rational::one() - q.pow(i as i32)?).recip())
        .collect()
}

/// Exact value by enumerating all `C(n−1, m)` tuples; refuses instances with
/// more than `cap` tuples.
pub fn zq_bruteforce(spec: &QSpec, s: &IndexVector, cap: u64) -> Result<SumValue> {
    let len = spec.n() as usize - 1;
    check_cap(len, s.len(), cap)?;
    Ok(match spec {
        QSpec::RootOfUnity(field) => {
            let w: Vec<CycElem> = (1..field.n() as i64).map(|r| field.unit_fraction(r)).collect::<Result<_>>()?;
            let p = power_table(&w, s.as_slice(), &field.one());
            SumValue::Cyclotomic(nested_sum_brute(&p, len, s.as_slice(), &field.zero(), &field.one()))
        }
        QSpec::RationalQ { q, n } => {
            let w = rational_weights(q, *n)?;
            let p = power_table(&w, s.as_slice(), &Rational::one());
            SumValue::Rational(nested_sum_brute(&p, len, s.as_slice(), &Rational::zero(), &Rational::one()))
        }
    })
}

/// Exact value by the O(n·m) dynamic program.
pub fn zq_dp(spec: &QSpec, s: &IndexVector) -> Result<SumValue> {
    let len = spec.n() as usize - 1;
    Ok(match spec {
        QSpec::RootOfUnity(field) => SumValue::Cyclotomic(RootSums::from_field(Arc::clone(field)).dp(s)),
        QSpec::RationalQ { q, n } => {
            let w = rational_weights(q, *n)?;
            let p = power_table(&w, s.as_slice(), &Rational::one());
            SumValue::Rational(nested_sum_dp(&p, len, s.as_slice(), &Rational::zero(), &Rational::one()))
        }
    })
}

/// Outcome of checking one instance of a structural identity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecurrenceCheck {
    pub holds: bool,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl RecurrenceCheck {
    fn new(lhs: Rational, rhs: Rational) -> Self {
        RecurrenceCheck { holds: lhs == rhs, lhs, rhs }
    }
}

/// Root-of-unity evaluator for a fixed `n`, caching the powers `u_r^e` and
/// the elementary symmetric values `e_k^{(A)}`.
pub struct RootSums {
    field: Arc<CycField>,
    powers: Mutex<HashMap<u32, Arc<Vec<CycElem>>>>,
    esym: Mutex<HashMap<(u32, usize), Rational>>,
}

impl RootSums {
    pub fn new(n: u32) -> Result<Self> {
        Ok(RootSums::from_field(CycField::new(n)?))
    }

    pub fn from_field(field: Arc<CycField>) -> Self {
        RootSums { field, powers: Mutex::new(HashMap::new()), esym: Mutex::new(HashMap::new()) }
    }

    pub fn n(&self) -> u32 {
        self.field.n()
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    /// `u_1, …, u_{n−1}`.
    pub fn units(&self) -> Vec<CycElem> {
        self.powers_of(1).as_ref().clone()
    }

    fn powers_of(&self, e: u32) -> Arc<Vec<CycElem>> {
        if let Some(p) = self.powers.lock().unwrap_or_else(|x| x.into_inner()).get(&e) {
            return Arc::clone(p);
        }
        let p: Vec<CycElem> = (1..self.n() as i64)
            .map(|r| self.field.unit_fraction(r).expect("1 <= r < n").pow(e))
            .collect();
        let p = Arc::new(p);
        self.powers
            .lock()
            .unwrap_or_else(|x| x.into_inner())
            .insert(e, Arc::clone(&p));
        p
    }

    fn table(&self, s: &IndexVector) -> HashMap<u32, Vec<CycElem>> {
        s.as_slice()
            .iter()
            .map(|&e| (e, self.powers_of(e).as_ref().clone()))
            .collect()
    }

    pub fn dp(&self, s: &IndexVector) -> CycElem {
        let len = self.n() as usize - 1;
        if s.len() > len {
            return self.field.zero();
        }
        nested_sum_dp(&self.table(s), len, s.as_slice(), &self.field.zero(), &self.field.one())
    }

    pub fn brute(&self, s: &IndexVector, cap: u64) -> Result<CycElem> {
        let len = self.n() as usize - 1;
        check_cap(len, s.len(), cap)?;
        Ok(nested_sum_brute(&self.table(s), len, s.as_slice(), &self.field.zero(), &self.field.one()))
    }

    /// `Σ_r u_r^s`, the single-index sum.
    pub fn single(&self, s: u32) -> Result<Rational> {
        self.elem_sym_power(s, 1)
    }

    /// e_k(u_1^A, …, u_{n−1}^A); always rational.
    pub fn elem_sym_power(&self, a: u32, k: usize) -> Result<Rational> {
        if let Some(v) = self.esym.lock().unwrap_or_else(|x| x.into_inner()).get(&(a, k)) {
            return Ok(v.clone());
        }
        let value = if k == 0 {
            Rational::one()
        } else {
            self.dp(&IndexVector::constant(a, k)?).rational_part()?
        };
        self.esym
            .lock()
            .unwrap_or_else(|x| x.into_inner())
            .insert((a, k), value.clone());
        Ok(value)
    }

    /// The sum with index vector `1^{j−1}, A, 1^{m−j}`.
    pub fn pattern_sum_ones(&self, a: u32, m: usize, j: usize) -> Result<CycElem> {
        Ok(self.dp(&IndexVector::ones_pattern(a, m, j)?))
    }

    /// Sum over `j` of [`RootSums::pattern_sum_ones`].
    pub fn cyclic_sum_ones(&self, a: u32, m: usize) -> Result<Rational> {
        self.cyclic_sum(1, a, m)
    }

    /// Average over the slot position, i.e. the cyclic sum divided by `m`.
    pub fn average_ones(&self, a: u32, m: usize) -> Result<Rational> {
        if m == 0 {
            return Err(Error::InvalidParameter("m must be at least 1".into()));
        }
        Ok(self.cyclic_sum_ones(a, m)? / Rational::from(m))
    }

    /// The sum with index vector `2^{j−1}, A, 2^{m−j}`.
    pub fn pattern_sum_twos(&self, a: u32, m: usize, j: usize) -> Result<CycElem> {
        Ok(self.dp(&IndexVector::twos_pattern(a, m, j)?))
    }

    /// Sum over `j` of [`RootSums::pattern_sum_twos`].
    pub fn cyclic_sum_twos(&self, a: u32, m: usize) -> Result<Rational> {
        self.cyclic_sum(2, a, m)
    }

    fn cyclic_sum(&self, base: u32, a: u32, m: usize) -> Result<Rational> {
        if m == 0 {
            return Err(Error::InvalidParameter("m must be at least 1".into()));
        }
        if m > self.n() as usize - 1 {
            return Ok(Rational::zero());
        }
        let mut acc = self.field.zero();
        for j in 1..=m {
            acc = &acc + &self.dp(&IndexVector::pattern(base, a, m, j)?);
        }
        acc.rational_part()
    }

    /// `e_1^{(A−1)} e_m = Σ_j P_{m+1}^{(A−1,j)} + Σ_j P_m^{(A,j)}`.
    pub fn check_ones_recurrence(&self, a: u32, m: usize) -> Result<RecurrenceCheck> {
        if a < 2 || m < 1 {
            return Err(Error::InvalidParameter(format!("need A >= 2, m >= 1 (A={a}, m={m})")));
        }
        let lhs = self.elem_sym_power(a - 1, 1)? * self.elem_sym_power(1, m)?;
        let rhs = self.cyclic_sum_ones(a - 1, m + 1)? + self.cyclic_sum_ones(a, m)?;
        Ok(RecurrenceCheck::new(lhs, rhs))
    }

    /// `e_1^{(A−1)} e_m^{(2)} = Σ_j R_{m+1}^{(A−1,j)} + Σ_j R_m^{(A+1,j)}`.
    pub fn check_twos_recurrence(&self, a: u32, m: usize) -> Result<RecurrenceCheck> {
        if a < 2 || m < 1 {
            return Err(Error::InvalidParameter(format!("need A >= 2, m >= 1 (A={a}, m={m})")));
        }
        let lhs = self.elem_sym_power(a - 1, 1)? * self.elem_sym_power(2, m)?;
        let rhs = self.cyclic_sum_twos(a - 1, m + 1)? + self.cyclic_sum_twos(a + 1, m)?;
        Ok(RecurrenceCheck::new(lhs, rhs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    fn iv(s: &[u32]) -> IndexVector {
        IndexVector::new(s.to_vec()).unwrap()
    }

    fn root(n: u32) -> RootSums {
        RootSums::new(n).unwrap()
    }

    #[test]
    fn index_vector_validation() {
        assert!(IndexVector::new(vec![1, 0, 2]).is_err());
        assert_eq!("2, 1,3".parse::<IndexVector>().unwrap(), iv(&[2, 1, 3]));
        assert_eq!("".parse::<IndexVector>().unwrap(), IndexVector::empty());
        assert!("1,-2".parse::<IndexVector>().is_err());
        assert!("1,x".parse::<IndexVector>().is_err());
        assert_eq!(IndexVector::ones_pattern(4, 3, 2).unwrap(), iv(&[1, 4, 1]));
        assert_eq!(IndexVector::twos_pattern(5, 3, 3).unwrap(), iv(&[2, 2, 5]));
        assert!(matches!(IndexVector::ones_pattern(4, 3, 0), Err(Error::SlotOutOfRange { .. })));
        assert!(matches!(IndexVector::ones_pattern(4, 3, 4), Err(Error::SlotOutOfRange { .. })));
    }

    #[test]
    fn bruteforce_examples() {
        let spec4 = QSpec::root(4).unwrap();
        assert_eq!(zq_bruteforce(&spec4, &iv(&[1]), DEFAULT_BRUTE_CAP).unwrap().as_rational().unwrap(), r(3, 2));
        let spec3 = QSpec::root(3).unwrap();
        assert_eq!(zq_bruteforce(&spec3, &iv(&[2]), DEFAULT_BRUTE_CAP).unwrap().as_rational().unwrap(), r(1, 3));
        for n in 2..8 {
            let spec = QSpec::root(n).unwrap();
            assert_eq!(zq_bruteforce(&spec, &IndexVector::empty(), 1).unwrap().as_rational().unwrap(), r(1, 1));
        }
        let big = QSpec::root(30).unwrap();
        assert!(matches!(
            zq_bruteforce(&big, &iv(&[1; 10]), DEFAULT_BRUTE_CAP),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn dp_examples() {
        let spec = QSpec::root(5).unwrap();
        assert_eq!(zq_dp(&spec, &iv(&[1, 1])).unwrap().as_rational().unwrap(), r(2, 1));
        assert_eq!(zq_dp(&spec, &iv(&[2])).unwrap().as_rational().unwrap(), r(0, 1));
        let spec6 = QSpec::root(6).unwrap();
        assert_eq!(zq_dp(&spec6, &iv(&[6])).unwrap().as_rational().unwrap(), r(23485, 12096));
        assert_eq!(zq_dp(&spec6, &IndexVector::empty()).unwrap().as_rational().unwrap(), r(1, 1));
        assert!(root(4).dp(&iv(&[1, 1, 1, 1])).is_zero());
    }

    #[test]
    fn dp_descending_update_regression() {
        // An ascending k-loop would allow i_1 = i_2 and count u_i·u_i terms.
        let sums = root(5);
        for s in [iv(&[1, 2]), iv(&[3, 1, 2]), iv(&[2, 2, 2, 2])] {
            assert_eq!(sums.dp(&s), sums.brute(&s, DEFAULT_BRUTE_CAP).unwrap(), "s={s}");
        }
    }

    #[test]
    fn rational_mode() {
        // q = 2, n = 3: 1/(1−2) + 1/(1−4) = −1 − 1/3
        let spec = QSpec::rational(r(2, 1), 3).unwrap();
        assert_eq!(zq_dp(&spec, &iv(&[1])).unwrap(), SumValue::Rational(r(-4, 3)));
        assert_eq!(zq_dp(&spec, &iv(&[1, 1])).unwrap(), SumValue::Rational(r(1, 3)));
        let s = iv(&[2, 1, 3]);
        let spec = QSpec::rational(r(1, 3), 7).unwrap();
        assert_eq!(zq_dp(&spec, &s).unwrap(), zq_bruteforce(&spec, &s, DEFAULT_BRUTE_CAP).unwrap());
        assert!(QSpec::rational(r(1, 1), 3).is_err());
        assert!(QSpec::rational(r(-1, 1), 3).is_err());
        assert!(QSpec::rational(r(-1, 1), 2).is_ok());
    }

    #[test]
    fn elem_sym_examples() {
        let s4 = root(4);
        assert_eq!(s4.elem_sym_power(3, 0).unwrap(), r(1, 1));
        assert_eq!(s4.elem_sym_power(1, 2).unwrap(), r(1, 1));
        assert_eq!(s4.elem_sym_power(2, 1).unwrap(), r(1, 4));
        assert_eq!(s4.elem_sym_power(2, 4).unwrap(), r(0, 1));
    }

    #[test]
    fn pattern_sum_examples() {
        let s5 = root(5);
        for m in 1..=4 {
            for j in 1..=m {
                assert_eq!(
                    s5.pattern_sum_ones(1, m, j).unwrap().rational_part().unwrap(),
                    s5.elem_sym_power(1, m).unwrap()
                );
            }
        }
        let pair = &s5.pattern_sum_ones(2, 2, 1).unwrap() + &s5.pattern_sum_ones(2, 2, 2).unwrap();
        assert_eq!(pair.rational_part().unwrap(), r(1, 1));
        assert_eq!(s5.pattern_sum_ones(3, 1, 1).unwrap(), s5.dp(&iv(&[3])));
        assert!(s5.pattern_sum_ones(3, 2, 3).is_err());
    }

    #[test]
    fn cyclic_sum_examples() {
        assert_eq!(root(5).cyclic_sum_ones(2, 2).unwrap(), r(1, 1));
        for n in 2..=10i64 {
            assert_eq!(root(n as u32).cyclic_sum_ones(2, 1).unwrap(), r(-(n - 1) * (n - 5), 12));
        }
        assert_eq!(root(4).cyclic_sum_ones(3, 4).unwrap(), r(0, 1));
        assert_eq!(root(5).average_ones(2, 2).unwrap(), r(1, 2));
    }

    #[test]
    fn twos_examples() {
        let s6 = root(6);
        for m in 1..=4 {
            for j in 1..=m {
                assert_eq!(
                    s6.pattern_sum_twos(2, m, j).unwrap().rational_part().unwrap(),
                    s6.elem_sym_power(2, m).unwrap()
                );
            }
        }
        assert_eq!(root(4).cyclic_sum_twos(3, 1).unwrap(), r(-3, 8));
        assert_eq!(root(3).cyclic_sum_twos(6, 2).unwrap(), r(-1, 81));
    }

    #[test]
    fn recurrence_examples() {
        assert!(root(5).check_ones_recurrence(2, 1).unwrap().holds);
        assert!(root(4).check_ones_recurrence(3, 2).unwrap().holds);
        assert!(root(2).check_ones_recurrence(2, 1).unwrap().holds);
        assert!(root(6).check_twos_recurrence(5, 1).unwrap().holds);
        assert!(root(4).check_twos_recurrence(2, 1).unwrap().holds);
        for a in 2..6 {
            assert!(root(2).check_twos_recurrence(a, 1).unwrap().holds);
        }
        assert!(root(4).check_ones_recurrence(1, 1).is_err());
    }
}
