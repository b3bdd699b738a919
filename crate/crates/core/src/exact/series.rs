use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Power series over Q known modulo `x^order`.
///
/// Binary operations on series of different orders truncate to the smaller
/// order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Pads with zeros or truncates `coeffs` to exactly `order` terms.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order, Rational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        TruncatedSeries::new(vec![Rational::one()], order)
    }

    /// Builds `sum_k f(k) x^k` for `k < order`.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        TruncatedSeries { coeffs: (0..order).map(f).collect() }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^k`; zero above the truncation order.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn truncate(&self, order: usize) -> Self {
        TruncatedSeries::new(self.coeffs[..order.min(self.order())].to_vec(), order.min(self.order()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Divides by `x`, losing one order of precision. The constant term must
    /// vanish.
    pub fn div_x(&self) -> Result<Self> {
        match self.coeffs.first() {
            None => Ok(self.clone()),
            Some(c) if c.is_zero() => Ok(TruncatedSeries { coeffs: self.coeffs[1..].to_vec() }),
            Some(_) => Err(Error::SeriesNotInvertible),
        }
    }

    /// Multiplicative inverse modulo `x^order`.
    pub fn reciprocal(&self) -> Result<Self> {
        let Some(a0) = self.coeffs.first() else {
            return Ok(self.clone());
        };
        if a0.is_zero() {
            return Err(Error::SeriesNotInvertible);
        }
        let inv0 = a0.recip()?;
        let mut out: Vec<Rational> = Vec::with_capacity(self.order());
        out.push(inv0.clone());
        for k in 1..self.order() {
            let acc: Rational = (1..=k).map(|i| &self.coeffs[i] * &out[k - i]).sum();
            out.push(-(acc * &inv0));
        }
        Ok(TruncatedSeries { coeffs: out })
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries::from_fn(order, |k| &self.coeffs[k] + &rhs.coeffs[k])
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries::from_fn(order, |k| &self.coeffs[k] - &rhs.coeffs[k])
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries::from_fn(order, |k| {
            (0..=k).map(|i| &self.coeffs[i] * &rhs.coeffs[k - i]).sum()
        })
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(c: &[(i64, i64)], order: usize) -> TruncatedSeries {
        TruncatedSeries::new(c.iter().map(|&(p, q)| Rational::new(p, q)).collect(), order)
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(s(&[(1, 1), (-1, 1)], 4).reciprocal().unwrap(), s(&[(1, 1); 4], 4));
        assert_eq!(TruncatedSeries::one(3).reciprocal().unwrap(), TruncatedSeries::one(3));
        assert_eq!(
            s(&[(1, 1), (1, 2)], 3).reciprocal().unwrap(),
            s(&[(1, 1), (-1, 2), (1, 4)], 3)
        );
        assert!(matches!(
            s(&[(0, 1), (1, 1)], 3).reciprocal(),
            Err(Error::SeriesNotInvertible)
        ));
    }

    #[test]
    fn mixed_orders_truncate() {
        let a = TruncatedSeries::one(5);
        let b = TruncatedSeries::one(3);
        assert_eq!((&a + &b).order(), 3);
        assert_eq!((&a * &b).order(), 3);
    }

    #[test]
    fn div_x_drops_one_order() {
        let a = s(&[(0, 1), (2, 1), (3, 1)], 3);
        assert_eq!(a.div_x().unwrap(), s(&[(2, 1), (3, 1)], 2));
        assert!(s(&[(1, 1)], 2).div_x().is_err());
    }

    proptest! {
        #[test]
        fn reciprocal_inverts(
            head in (1i64..9, 1i64..5),
            tail in prop::collection::vec((-9i64..9, 1i64..5), 0..15),
            order in 1usize..17,
        ) {
            let mut c = vec![Rational::new(head.0, head.1)];
            c.extend(tail.into_iter().map(|(p, q)| Rational::new(p, q)));
            let a = TruncatedSeries::new(c, order);
            let prod = &a * &a.reciprocal().unwrap();
            prop_assert_eq!(prod, TruncatedSeries::one(order));
        }
    }
}
