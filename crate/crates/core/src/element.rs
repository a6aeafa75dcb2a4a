//! Elements of the 2^n-dimensional Cayley-Dickson algebra.
//!
//! Coefficient `i` belongs to basis unit `e_i`, with `e_0 = 1`. The lower half
//! of the basis at level `n` is the embedded level `n-1` basis and
//! `e_(i + 2^(n-1)) = e_i * t`, where `t` is the generator adjoined at level `n`.
//! Embedding into a higher level is therefore a zero pad.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{Scalar, FLOAT_ABS_TOL, FLOAT_REL_TOL};
use crate::Error;

/// Largest level an element may have (2^16 coefficients).
pub const MAX_ELEMENT_LEVEL: u32 = 16;

#[derive(Clone, PartialEq)]
pub struct Element<S> {
    level: u32,
    coeffs: Vec<S>,
}

pub(crate) fn dim(level: u32) -> usize {
    1usize << level
}

impl<S: Scalar> Element<S> {
    pub fn new(level: u32, coeffs: Vec<S>) -> Result<Self, Error> {
        if level > MAX_ELEMENT_LEVEL {
            return Err(Error::LevelTooLarge { level, max: MAX_ELEMENT_LEVEL });
        }
        if coeffs.len() != dim(level) {
            return Err(Error::LengthMismatch { level, expected: dim(level), found: coeffs.len() });
        }
        Ok(Element { level, coeffs })
    }

    pub fn zero(level: u32) -> Self {
        Element { level, coeffs: vec![S::zero(); dim(level)] }
    }

    pub fn one(level: u32) -> Self {
        Self::from_scalar(level, S::one())
    }

    pub fn from_scalar(level: u32, value: S) -> Self {
        let mut out = Self::zero(level);
        out.coeffs[0] = value;
        out
    }

    /// Basis unit `e_index`; panics if `index >= 2^level`.
    pub fn basis(level: u32, index: usize) -> Self {
        let mut out = Self::zero(level);
        out.coeffs[index] = S::one();
        out
    }

    pub fn from_i64s(level: u32, coeffs: &[i64]) -> Result<Self, Error> {
        Self::new(level, coeffs.iter().map(|&c| S::from_i64(c)).collect())
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn coeff(&self, index: usize) -> &S {
        &self.coeffs[index]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.coeffs[1..].iter().all(Scalar::is_zero)
    }

    pub fn re(&self) -> S {
        self.coeffs[0].clone()
    }

    pub fn im(&self) -> Self {
        let mut out = self.clone();
        out.coeffs[0] = S::zero();
        out
    }

    pub fn conj(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        conj_in_place(&mut coeffs);
        Element { level: self.level, coeffs }
    }

    pub fn norm_sq(&self) -> S {
        self.coeffs
            .iter()
            .fold(S::zero(), |acc, c| acc + c.clone() * c.clone())
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.norm_sq().to_f64())
    }

    /// `|a|` in this backend, if representable.
    pub fn exact_norm(&self) -> Option<S> {
        self.norm_sq().sqrt()
    }

    pub fn scale(&self, factor: &S) -> Self {
        self.map(|c| c.clone() * factor.clone())
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        Element { level: self.level, coeffs: self.coeffs.iter().map(f).collect() }
    }

    fn check_level(&self, other: &Self) -> Result<(), Error> {
        if self.level != other.level {
            Err(Error::LevelMismatch { left: self.level, right: other.level })
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, Error> {
        self.check_level(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() + b.clone()))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, Error> {
        self.check_level(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() - b.clone()))
    }

    /// Product by recursive doubling:
    /// `(a', a'')(b', b'') = (a'b' - conj(b'')a'', b''a' + a''conj(b'))`.
    pub fn try_mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_level(other)?;
        Ok(Element { level: self.level, coeffs: cd_mul(&self.coeffs, &other.coeffs) })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        Element {
            level: self.level,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// `conj(a) / |a|^2`.
    pub fn inverse(&self) -> Result<Self, Error> {
        let n = self.norm_sq();
        if n.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv = S::one() / n;
        Ok(self.conj().scale(&inv))
    }

    /// Integer power by repeated squaring; negative exponents invert first.
    ///
    /// Power-associativity makes every bracketing agree, so the result does
    /// not depend on the squaring schedule.
    pub fn pow(&self, exponent: i64) -> Result<Self, Error> {
        let base = if exponent < 0 { self.inverse()? } else { self.clone() };
        let mut e = exponent.unsigned_abs();
        let mut acc = Self::one(self.level);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Zero-pads into a higher level.
    pub fn embed(&self, level: u32) -> Result<Self, Error> {
        if level < self.level {
            return Err(Error::LevelMismatch { left: self.level, right: level });
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(dim(level), S::zero());
        Self::new(level, coeffs)
    }

    /// Equality up to backend tolerance: exact equality for rationals,
    /// relative `1e-10` with an absolute `1e-12` floor for floats.
    pub fn approx_eq(&self, other: &Self) -> bool {
        if self.level != other.level {
            return false;
        }
        if S::EXACT {
            return self == other;
        }
        self.approx_eq_tol(other, FLOAT_REL_TOL)
    }

    pub fn approx_eq_tol(&self, other: &Self, rel: f64) -> bool {
        let diff = self.zip_with(other, |a, b| a.clone() - b.clone()).norm();
        let scale = self.norm().max(other.norm());
        diff <= rel * scale + FLOAT_ABS_TOL
    }

    pub fn to_f64(&self) -> Element<f64> {
        Element { level: self.level, coeffs: self.coeffs.iter().map(Scalar::to_f64).collect() }
    }
}

fn conj_in_place<S: Scalar>(coeffs: &mut [S]) {
    for c in &mut coeffs[1..] {
        *c = -c.clone();
    }
}

fn cd_mul<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let n = a.len();
    if n == 1 {
        return vec![a[0].clone() * b[0].clone()];
    }
    if n == 2 {
        // Complex numbers, spelled out to cut recursion overhead.
        let (a0, a1, b0, b1) = (&a[0], &a[1], &b[0], &b[1]);
        return vec![
            a0.clone() * b0.clone() - b1.clone() * a1.clone(),
            b1.clone() * a0.clone() + a1.clone() * b0.clone(),
        ];
    }
    let h = n / 2;
    let (a1, a2) = a.split_at(h);
    let (b1, b2) = b.split_at(h);
    let mut b1c = b1.to_vec();
    conj_in_place(&mut b1c);
    let mut b2c = b2.to_vec();
    conj_in_place(&mut b2c);

    let mut out = cd_mul(a1, b1);
    for (o, t) in out.iter_mut().zip(cd_mul(&b2c, a2)) {
        *o = o.clone() - t;
    }
    let mut hi = cd_mul(b2, a1);
    for (o, t) in hi.iter_mut().zip(cd_mul(a2, &b1c)) {
        *o = o.clone() + t;
    }
    out.extend(hi);
    out
}

// Operator sugar panics on level mismatch; use the `try_*` forms for
// untrusted input.
impl<S: Scalar> Add for &Element<S> {
    type Output = Element<S>;
    fn add(self, rhs: &Element<S>) -> Element<S> {
        self.try_add(rhs).expect("level mismatch in addition")
    }
}

impl<S: Scalar> Sub for &Element<S> {
    type Output = Element<S>;
    fn sub(self, rhs: &Element<S>) -> Element<S> {
        self.try_sub(rhs).expect("level mismatch in subtraction")
    }
}

impl<S: Scalar> Mul for &Element<S> {
    type Output = Element<S>;
    fn mul(self, rhs: &Element<S>) -> Element<S> {
        self.try_mul(rhs).expect("level mismatch in multiplication")
    }
}

impl<S: Scalar> Neg for &Element<S> {
    type Output = Element<S>;
    fn neg(self) -> Element<S> {
        self.map(|c| -c.clone())
    }
}

impl<S: Scalar> Add for Element<S> {
    type Output = Element<S>;
    fn add(self, rhs: Element<S>) -> Element<S> {
        &self + &rhs
    }
}

impl<S: Scalar> Sub for Element<S> {
    type Output = Element<S>;
    fn sub(self, rhs: Element<S>) -> Element<S> {
        &self - &rhs
    }
}

impl<S: Scalar> Mul for Element<S> {
    type Output = Element<S>;
    fn mul(self, rhs: Element<S>) -> Element<S> {
        &self * &rhs
    }
}

impl<S: Scalar> Neg for Element<S> {
    type Output = Element<S>;
    fn neg(self) -> Element<S> {
        -&self
    }
}

impl<S: fmt::Debug> fmt::Debug for Element<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element<{}>{:?}", self.level, self.coeffs)
    }
}
