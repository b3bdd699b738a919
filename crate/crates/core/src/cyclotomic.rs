//! Exact arithmetic in the cyclotomic field Q(ζₙ).
//!
//! Elements are coefficient vectors in the power basis `1, ζ, …, ζ^{d-1}`
//! with `d = φ(n)`, always reduced modulo the cyclotomic polynomial Φₙ.
//! Because Φₙ is irreducible the representation is canonical: two elements
//! are equal iff their vectors are equal, and an element is rational iff
//! every non-constant coordinate is zero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{DensePoly, Rational};

/// Φₙ by exact division of `xⁿ − 1` by every Φ_d with `d | n`, `d < n`.
pub fn cyclotomic_polynomial(n: i64) -> Result<DensePoly> {
    if n <= 0 {
        return Err(Error::InvalidOrder(n));
    }
    let mut num = DensePoly::monomial(Rational::one(), n as usize);
    num = &num - &DensePoly::one();
    for d in (1..n).filter(|d| n % d == 0) {
        let (q, r) = num.divrem(&cyclotomic_polynomial(d)?)?;
        debug_assert!(r.is_zero());
        num = q;
    }
    Ok(num)
}

/// The field Q(ζₙ) for a fixed `n ≥ 2`, with cached reduction data and the
/// table of `u_r = 1/(1 − ζʳ)`.
pub struct CycField {
    n: u32,
    phi: DensePoly,
    degree: usize,
    // zeta_pows[k] = ζ^k reduced, for 0 <= k < n
    zeta_pows: Vec<Vec<Rational>>,
    units: Vec<Vec<Rational>>,
}

impl fmt::Debug for CycField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CycField").field("n", &self.n).field("phi", &self.phi).finish()
    }
}

impl CycField {
    pub fn new(n: u32) -> Result<Arc<CycField>> {
        if n < 2 {
            return Err(Error::InvalidOrder(n as i64));
        }
        let phi = cyclotomic_polynomial(n as i64)?;
        let degree = phi.degree().expect("Φₙ is nonzero");

        let mut zeta_pows = Vec::with_capacity(n as usize);
        let mut cur = DensePoly::one();
        let x = DensePoly::monomial(Rational::one(), 1);
        for _ in 0..n {
            let mut v = cur.coeffs().to_vec();
            v.resize(degree, Rational::zero());
            zeta_pows.push(v);
            cur = (&cur * &x).divrem(&phi)?.1;
        }

        let mut field = CycField { n, phi, degree, zeta_pows, units: Vec::new() };
        let inv_n = Rational::new(-1, n);
        field.units = (1..n)
            .map(|r| {
                // u_r = -(1/n) Σ_{k<n} (k+1) ζ^{rk}
                let mut acc = vec![Rational::zero(); degree];
                for k in 0..n as u64 {
                    let w = Rational::from(k + 1);
                    let idx = (r as u64 * k % n as u64) as usize;
                    for (a, z) in acc.iter_mut().zip(&field.zeta_pows[idx]) {
                        if !z.is_zero() {
                            *a += &w * z;
                        }
                    }
                }
                acc.iter().map(|a| a * &inv_n).collect()
            })
            .collect();

        let field = Arc::new(field);
        // One ext-gcd inversion per field guards the closed form above.
        let one_minus_zeta = &field.one() - &field.zeta();
        assert_eq!(
            one_minus_zeta.inverse()?,
            field.unit_fraction(1)?,
            "u_1 closed form disagrees with extended-gcd inverse for n = {n}"
        );
        Ok(field)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// φ(n), the dimension of Q(ζₙ) over Q.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn phi(&self) -> &DensePoly {
        &self.phi
    }

    pub fn element(self: &Arc<Self>, coeffs: Vec<Rational>) -> CycElem {
        let poly = DensePoly::new(coeffs);
        let reduced = if poly.degree().is_some_and(|d| d >= self.degree) {
            poly.divrem(&self.phi).expect("Φₙ nonzero").1
        } else {
            poly
        };
        let mut v = reduced.into_coeffs();
        v.resize(self.degree, Rational::zero());
        CycElem { field: Arc::clone(self), coeffs: v }
    }

    pub fn from_rational(self: &Arc<Self>, r: Rational) -> CycElem {
        let mut v = vec![Rational::zero(); self.degree];
        v[0] = r;
        CycElem { field: Arc::clone(self), coeffs: v }
    }

    pub fn zero(self: &Arc<Self>) -> CycElem {
        self.from_rational(Rational::zero())
    }

    pub fn one(self: &Arc<Self>) -> CycElem {
        self.from_rational(Rational::one())
    }

    /// ζₙ itself.
    pub fn zeta(self: &Arc<Self>) -> CycElem {
        self.zeta_pow(1)
    }

    /// ζₙᵏ for any integer `k`.
    pub fn zeta_pow(self: &Arc<Self>, k: i64) -> CycElem {
        let idx = k.rem_euclid(self.n as i64) as usize;
        CycElem { field: Arc::clone(self), coeffs: self.zeta_pows[idx].clone() }
    }

    /// `u_r = 1/(1 − ζₙʳ)` from the cached table.
    pub fn unit_fraction(self: &Arc<Self>, r: i64) -> Result<CycElem> {
        let idx = r.rem_euclid(self.n as i64);
        if idx == 0 {
            return Err(Error::Pole { n: self.n, r });
        }
        Ok(CycElem { field: Arc::clone(self), coeffs: self.units[idx as usize - 1].clone() })
    }
}

/// An element of Q(ζₙ) in reduced power-basis form.
#[derive(Clone)]
pub struct CycElem {
    field: Arc<CycField>,
    coeffs: Vec<Rational>,
}

impl CycElem {
    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// The value as a rational; fails unless every non-constant coordinate
    /// is zero.
    pub fn rational_part(&self) -> Result<Rational> {
        if self.is_rational() {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::NotRational(Box::new(self.clone())))
        }
    }

    pub fn scale(&self, c: &Rational) -> CycElem {
        CycElem { field: Arc::clone(&self.field), coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn pow(&self, mut e: u32) -> CycElem {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse via the extended gcd of the representative with Φₙ.
    pub fn inverse(&self) -> Result<CycElem> {
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        let rep = DensePoly::new(self.coeffs.clone());
        let (g, u, _) = DensePoly::ext_gcd(&rep, &self.field.phi)?;
        if g.degree() != Some(0) {
            return Err(Error::NotInvertible);
        }
        Ok(self.field.element(u.into_coeffs()))
    }

    /// Complex conjugation, the automorphism ζ ↦ ζ^{n−1}.
    pub fn conjugate(&self) -> CycElem {
        let n = self.field.n as usize;
        let d = self.field.degree;
        let mut out = vec![Rational::zero(); d];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, z) in out.iter_mut().zip(&self.field.zeta_pows[(n - k) % n]) {
                if !z.is_zero() {
                    *o += c * z;
                }
            }
        }
        CycElem { field: Arc::clone(&self.field), coeffs: out }
    }

    /// `z + conj(z)`, which is twice the real part.
    pub fn twice_real_part(&self) -> CycElem {
        self + &self.conjugate()
    }

    /// Double-precision embedding at ζₙ = exp(2πi/n). Advisory only.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.field.n as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n) * c.to_f64())
            .sum()
    }

    fn check_same_field(&self, other: &CycElem) {
        assert_eq!(self.field.n, other.field.n, "mixing elements of different cyclotomic fields");
    }
}

impl PartialEq for CycElem {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.coeffs == other.coeffs
    }
}

impl Eq for CycElem {}

impl Add for &CycElem {
    type Output = CycElem;
    fn add(self, rhs: &CycElem) -> CycElem {
        self.check_same_field(rhs);
        CycElem {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CycElem {
    type Output = CycElem;
    fn sub(self, rhs: &CycElem) -> CycElem {
        self.check_same_field(rhs);
        CycElem {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &CycElem {
    type Output = CycElem;
    fn mul(self, rhs: &CycElem) -> CycElem {
        self.check_same_field(rhs);
        let field = &self.field;
        let d = field.degree;
        let n = field.n as usize;
        let mut full = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    full[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<Rational> = full.drain(..d).collect();
        for (k, c) in full.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, z) in out.iter_mut().zip(&field.zeta_pows[(k + d) % n]) {
                if !z.is_zero() {
                    *o += &c * z;
                }
            }
        }
        CycElem { field: Arc::clone(field), coeffs: out }
    }
}

impl Neg for &CycElem {
    type Output = CycElem;
    fn neg(self) -> CycElem {
        CycElem { field: Arc::clone(&self.field), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.coeffs[0]);
        }
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "] in Q(zeta_{})", self.field.n)
    }
}

impl fmt::Debug for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycElem(n={}, {:?})", self.field.n, self.coeffs)
    }
}

impl Serialize for CycElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("CycElem", 2)?;
        st.serialize_field("n", &self.field.n)?;
        st.serialize_field("coeffs", &self.coeffs)?;
        st.end()
    }
}
