//! Truncated Taylor arithmetic in two variables.
//!
//! A jet of order `J` stores `coeffs[(i,j)] = d^i/dx^i d^j/dy^j f / (i! j!)` for `i + j <= J`
//! in graded-lexicographic order.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient field of a jet.
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    const IS_COMPLEX: bool;
    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(v: f64) -> Self;
    fn modulus(self) -> f64;
    fn conj(self) -> Self;
    fn re(self) -> f64;
    fn im(self) -> f64;
    fn exp(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn atan(self) -> Self;
    /// `ln|u|` for reals, principal logarithm for complex values.
    fn ln_abs(self) -> Self;
    /// `|u|^p` for reals, principal branch for complex values.
    fn pow_abs(self, p: f64) -> Self;
    fn is_finite(self) -> bool;
}

impl Scalar for f64 {
    const IS_COMPLEX: bool = false;
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn modulus(self) -> f64 {
        self.abs()
    }
    fn conj(self) -> Self {
        self
    }
    fn re(self) -> f64 {
        self
    }
    fn im(self) -> f64 {
        0.0
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn atan(self) -> Self {
        f64::atan(self)
    }
    fn ln_abs(self) -> Self {
        self.abs().ln()
    }
    fn pow_abs(self, p: f64) -> Self {
        if p.fract() == 0.0 {
            self.powi(p as i32)
        } else {
            self.abs().powf(p)
        }
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
}

impl Scalar for Complex64 {
    const IS_COMPLEX: bool = true;
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_f64(v: f64) -> Self {
        Complex64::new(v, 0.0)
    }
    fn modulus(self) -> f64 {
        self.norm()
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn re(self) -> f64 {
        self.re
    }
    fn im(self) -> f64 {
        self.im
    }
    fn exp(self) -> Self {
        Complex64::exp(self)
    }
    fn sin(self) -> Self {
        Complex64::sin(self)
    }
    fn cos(self) -> Self {
        Complex64::cos(self)
    }
    fn atan(self) -> Self {
        Complex64::atan(self)
    }
    fn ln_abs(self) -> Self {
        self.ln()
    }
    fn pow_abs(self, p: f64) -> Self {
        if p.fract() == 0.0 {
            self.powi(p as i32)
        } else {
            self.powf(p)
        }
    }
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// A point of the coordinate plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// Number of coefficients of a jet of order `j`.
pub const fn coeff_count(j: usize) -> usize {
    (j + 1) * (j + 2) / 2
}

/// Storage index of the `(i, j)` coefficient.
#[inline]
pub const fn idx(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

/// Truncated bivariate Taylor expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet<T: Scalar = f64> {
    order: usize,
    coeffs: Vec<T>,
}

pub type RJet = Jet<f64>;
pub type CJet = Jet<Complex64>;

pub const DEFAULT_ORDER: usize = 4;

impl<T: Scalar> Jet<T> {
    pub fn constant(value: T, order: usize) -> Self {
        let mut coeffs = vec![T::zero(); coeff_count(order)];
        coeffs[0] = value;
        Jet { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Jet::constant(T::zero(), order)
    }

    /// Builds a jet from graded-lex coefficients. Panics on a length mismatch.
    pub fn from_coeffs(order: usize, coeffs: Vec<T>) -> Self {
        assert_eq!(coeffs.len(), coeff_count(order), "coefficient count");
        Jet { order, coeffs }
    }

    /// Jet of a coordinate function.
    pub fn seed(p: Point2, which: Axis, order: usize) -> Self {
        let mut jet = match which {
            Axis::X => Jet::constant(T::from_f64(p.x), order),
            Axis::Y => Jet::constant(T::from_f64(p.y), order),
        };
        if order >= 1 {
            match which {
                Axis::X => jet.coeffs[idx(1, 0)] = T::one(),
                Axis::Y => jet.coeffs[idx(0, 1)] = T::one(),
            }
        }
        jet
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn value(&self) -> T {
        self.coeffs[0]
    }

    /// Coefficient `(i, j)`, zero beyond the order.
    pub fn coeff(&self, i: usize, j: usize) -> T {
        if i + j > self.order {
            T::zero()
        } else {
            self.coeffs[idx(i, j)]
        }
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, v: T) {
        self.coeffs[idx(i, j)] = v;
    }

    /// The partial derivative `d^i/dx^i d^j/dy^j` at the base point.
    pub fn derivative(&self, i: usize, j: usize) -> Result<T> {
        if i + j > self.order {
            return Err(Error::OrderExceeded { requested: i + j, order: self.order });
        }
        Ok(self.coeffs[idx(i, j)] * T::from_f64(factorial(i) * factorial(j)))
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.modulus()).fold(0.0, f64::max)
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order, "truncate cannot raise the order");
        Jet { order, coeffs: self.coeffs[..coeff_count(order)].to_vec() }
    }

    /// Partial derivative in x; the result has order one less.
    pub fn dx(&self) -> Result<Self> {
        if self.order == 0 {
            return Err(Error::OrderExceeded { requested: 1, order: 0 });
        }
        let n = self.order - 1;
        let mut out = Jet::zero(n);
        for d in 0..=n {
            for j in 0..=d {
                let i = d - j;
                out.coeffs[idx(i, j)] = self.coeffs[idx(i + 1, j)] * T::from_f64((i + 1) as f64);
            }
        }
        Ok(out)
    }

    /// Partial derivative in y; the result has order one less.
    pub fn dy(&self) -> Result<Self> {
        if self.order == 0 {
            return Err(Error::OrderExceeded { requested: 1, order: 0 });
        }
        let n = self.order - 1;
        let mut out = Jet::zero(n);
        for d in 0..=n {
            for j in 0..=d {
                let i = d - j;
                out.coeffs[idx(i, j)] = self.coeffs[idx(i, j + 1)] * T::from_f64((j + 1) as f64);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: T) -> Self {
        Jet { order: self.order, coeffs: self.coeffs.iter().map(|&c| c * s).collect() }
    }

    pub fn conj(&self) -> Self {
        Jet { order: self.order, coeffs: self.coeffs.iter().map(|c| c.conj()).collect() }
    }

    pub fn re(&self) -> RJet {
        Jet { order: self.order, coeffs: self.coeffs.iter().map(|c| c.re()).collect() }
    }

    pub fn im(&self) -> RJet {
        Jet { order: self.order, coeffs: self.coeffs.iter().map(|c| c.im()).collect() }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            Err(Error::OrderMismatch(self.order, other.order))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let inv = other.recip()?;
        Ok(self.mul_unchecked(&inv))
    }

    fn zip(&self, other: &Self, f: impl Fn(T, T) -> T) -> Self {
        Jet {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.order;
        let mut out = vec![T::zero(); self.coeffs.len()];
        for d1 in 0..=n {
            for j1 in 0..=d1 {
                let a = self.coeffs[idx(d1 - j1, j1)];
                if a == T::zero() {
                    continue;
                }
                for d2 in 0..=(n - d1) {
                    for j2 in 0..=d2 {
                        let b = other.coeffs[idx(d2 - j2, j2)];
                        out[idx(d1 - j1 + d2 - j2, j1 + j2)] += a * b;
                    }
                }
            }
        }
        Jet { order: n, coeffs: out }
    }

    /// Multiplicative inverse by series inversion.
    pub fn recip(&self) -> Result<Self> {
        let c0 = self.value();
        if c0 == T::zero() {
            return Err(Error::DivisionByZeroValue);
        }
        let inv0 = T::one() / c0;
        let n = self.order;
        let mut out = vec![T::zero(); self.coeffs.len()];
        out[0] = inv0;
        // out = inv0 * (1 - sum_{k>0} a_k out_{m-k}) solved degree by degree.
        for d in 1..=n {
            for j in 0..=d {
                let i = d - j;
                let mut acc = T::zero();
                for i1 in 0..=i {
                    for j1 in 0..=j {
                        if i1 + j1 == 0 {
                            continue;
                        }
                        acc += self.coeffs[idx(i1, j1)] * out[idx(i - i1, j - j1)];
                    }
                }
                out[idx(i, j)] = -acc * inv0;
            }
        }
        Ok(Jet { order: n, coeffs: out })
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut out = Jet::constant(T::one(), self.order);
        for _ in 0..k {
            out = out.mul_unchecked(self);
        }
        out
    }

    /// Evaluates `sum_k c[k] (self - self(0))^k`, i.e. composes a univariate
    /// Taylor series around `self.value()` with this jet.
    pub fn compose_univariate(&self, c: &[T]) -> Self {
        let mut h = self.clone();
        h.coeffs[0] = T::zero();
        let top = self.order.min(c.len().saturating_sub(1));
        let mut out = Jet::constant(c.get(top).copied().unwrap_or(T::zero()), self.order);
        for k in (0..top).rev() {
            out = out.mul_unchecked(&h);
            out.coeffs[0] += c[k];
        }
        out
    }

    pub fn exp(&self) -> Self {
        let e = self.value().exp();
        let c: Vec<T> = (0..=self.order).map(|k| e * T::from_f64(1.0 / factorial(k))).collect();
        self.compose_univariate(&c)
    }

    pub fn sin(&self) -> Self {
        let (s, co) = (self.value().sin(), self.value().cos());
        let cyc = [s, co, -s, -co];
        let c: Vec<T> =
            (0..=self.order).map(|k| cyc[k % 4] * T::from_f64(1.0 / factorial(k))).collect();
        self.compose_univariate(&c)
    }

    pub fn cos(&self) -> Self {
        let (s, co) = (self.value().sin(), self.value().cos());
        let cyc = [co, -s, -co, s];
        let c: Vec<T> =
            (0..=self.order).map(|k| cyc[k % 4] * T::from_f64(1.0 / factorial(k))).collect();
        self.compose_univariate(&c)
    }

    pub fn tan(&self) -> Result<Self> {
        let c = self.cos();
        if c.value() == T::zero() {
            return Err(Error::DomainError("tan at a zero of cos".into()));
        }
        self.sin().try_div(&c)
    }

    /// `ln|u|` for reals, principal log for complex jets.
    pub fn ln_abs(&self) -> Result<Self> {
        let u0 = self.value();
        if u0 == T::zero() {
            return Err(Error::DomainError("ln of zero".into()));
        }
        let mut c = vec![u0.ln_abs()];
        let mut p = T::one();
        for k in 1..=self.order {
            p *= u0;
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            c.push(T::from_f64(sign / k as f64) / p);
        }
        Ok(self.compose_univariate(&c))
    }

    /// `|u|^p` for real jets (true power for integer `p`), principal branch for complex jets.
    pub fn pow_abs(&self, p: f64) -> Result<Self> {
        let u0 = self.value();
        if !p.is_finite() {
            return Err(Error::DomainError("non-finite exponent".into()));
        }
        if u0 == T::zero() {
            if p.fract() == 0.0 && p >= 0.0 {
                return Ok(self.powi(p as u32));
            }
            return Err(Error::DomainError(format!("power {p} of zero")));
        }
        let base = u0.pow_abs(p);
        let mut c = vec![base];
        let mut binom = 1.0;
        let mut upow = T::one();
        for k in 1..=self.order {
            binom *= (p - (k - 1) as f64) / k as f64;
            upow *= u0;
            c.push(base * T::from_f64(binom) / upow);
        }
        Ok(self.compose_univariate(&c))
    }

    pub fn sqrt_abs(&self) -> Result<Self> {
        self.pow_abs(0.5)
    }

    pub fn arctan(&self) -> Result<Self> {
        let u0 = self.value();
        let n = self.order;
        // 1/(1 + (u0 + t)^2) as a univariate series, then integrate termwise.
        let d = [T::one() + u0 * u0, T::from_f64(2.0) * u0, T::one()];
        if d[0] == T::zero() {
            return Err(Error::DomainError("arctan at a branch point".into()));
        }
        let mut g = vec![T::zero(); n.max(1)];
        for k in 0..g.len() {
            let mut acc = if k == 0 { T::one() } else { T::zero() };
            for m in 1..=2.min(k) {
                acc -= d[m] * g[k - m];
            }
            g[k] = acc / d[0];
        }
        let mut c = vec![u0.atan()];
        for k in 1..=n {
            c.push(g[k - 1] * T::from_f64(1.0 / k as f64));
        }
        Ok(self.compose_univariate(&c))
    }
}

impl RJet {
    pub fn to_complex(&self) -> CJet {
        Jet { order: self.order, coeffs: self.coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect() }
    }
}

/// Jets of `z = x + iy` and `zbar = x - iy`.
pub fn complex_lift(p: Point2, order: usize) -> (CJet, CJet) {
    let x = RJet::seed(p, Axis::X, order).to_complex();
    let y = RJet::seed(p, Axis::Y, order).to_complex();
    let i = Complex64::new(0.0, 1.0);
    let z = &x + &y.scale(i);
    let zb = &x - &y.scale(i);
    (z, zb)
}

/// Seeds the two coordinate jets at `p`.
pub fn seed_point(p: Point2, order: usize) -> (RJet, RJet) {
    (RJet::seed(p, Axis::X, order), RJet::seed(p, Axis::Y, order))
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |a, k| a * k as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary arithmetic.
pub fn jet_arith<T: Scalar>(a: &Jet<T>, b: &Jet<T>, op: ArithOp) -> Result<Jet<T>> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::Div => a.try_div(b),
    }
}

// Operator sugar. Order mismatches are programming errors and panic here;
// use the `try_*` methods for checked arithmetic.
macro_rules! bin_op {
    ($tr:ident, $m:ident, $f:ident) => {
        impl<'a, T: Scalar> $tr<&'a Jet<T>> for &'a Jet<T> {
            type Output = Jet<T>;
            fn $m(self, rhs: &'a Jet<T>) -> Jet<T> {
                self.$f(rhs).expect("jet order mismatch")
            }
        }
        impl<T: Scalar> $tr<Jet<T>> for Jet<T> {
            type Output = Jet<T>;
            fn $m(self, rhs: Jet<T>) -> Jet<T> {
                self.$f(&rhs).expect("jet order mismatch")
            }
        }
        impl<'a, T: Scalar> $tr<&'a Jet<T>> for Jet<T> {
            type Output = Jet<T>;
            fn $m(self, rhs: &'a Jet<T>) -> Jet<T> {
                self.$f(rhs).expect("jet order mismatch")
            }
        }
        impl<'a, T: Scalar> $tr<Jet<T>> for &'a Jet<T> {
            type Output = Jet<T>;
            fn $m(self, rhs: Jet<T>) -> Jet<T> {
                self.$f(&rhs).expect("jet order mismatch")
            }
        }
    };
}
bin_op!(Add, add, try_add);
bin_op!(Sub, sub, try_sub);
bin_op!(Mul, mul, try_mul);

macro_rules! scalar_op {
    ($s:ty) => {
        impl Add<$s> for &Jet<$s> {
            type Output = Jet<$s>;
            fn add(self, rhs: $s) -> Jet<$s> {
                let mut out = self.clone();
                out.coeffs[0] += rhs;
                out
            }
        }
        impl Add<$s> for Jet<$s> {
            type Output = Jet<$s>;
            fn add(mut self, rhs: $s) -> Jet<$s> {
                self.coeffs[0] += rhs;
                self
            }
        }
        impl Sub<$s> for &Jet<$s> {
            type Output = Jet<$s>;
            fn sub(self, rhs: $s) -> Jet<$s> {
                let mut out = self.clone();
                out.coeffs[0] -= rhs;
                out
            }
        }
        impl Sub<$s> for Jet<$s> {
            type Output = Jet<$s>;
            fn sub(mut self, rhs: $s) -> Jet<$s> {
                self.coeffs[0] -= rhs;
                self
            }
        }
        impl Mul<$s> for &Jet<$s> {
            type Output = Jet<$s>;
            fn mul(self, rhs: $s) -> Jet<$s> {
                self.scale(rhs)
            }
        }
        impl Mul<$s> for Jet<$s> {
            type Output = Jet<$s>;
            fn mul(self, rhs: $s) -> Jet<$s> {
                self.scale(rhs)
            }
        }
        impl Mul<&Jet<$s>> for $s {
            type Output = Jet<$s>;
            fn mul(self, rhs: &Jet<$s>) -> Jet<$s> {
                rhs.scale(self)
            }
        }
        impl Mul<Jet<$s>> for $s {
            type Output = Jet<$s>;
            fn mul(self, rhs: Jet<$s>) -> Jet<$s> {
                rhs.scale(self)
            }
        }
    };
}
scalar_op!(f64);
scalar_op!(Complex64);

impl<T: Scalar> Neg for Jet<T> {
    type Output = Jet<T>;
    fn neg(self) -> Jet<T> {
        self.scale(-T::one())
    }
}

impl<T: Scalar> Neg for &Jet<T> {
    type Output = Jet<T>;
    fn neg(self) -> Jet<T> {
        self.scale(-T::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    #[test]
    fn seeding() {
        let j = RJet::seed(p(2.0, 3.0), Axis::X, 2);
        assert_eq!(j.coeffs(), &[2.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        let j = RJet::seed(p(0.0, 0.0), Axis::Y, 0);
        assert_eq!(j.coeffs(), &[0.0]);
        let j = RJet::seed(p(1.0, 5.0), Axis::Y, 4);
        assert_eq!(j.coeffs().len(), 15);
        assert_eq!(j.coeff(0, 0), 5.0);
        assert_eq!(j.coeff(0, 1), 1.0);
        assert_eq!(j.coeffs().iter().filter(|&&c| c != 0.0).count(), 2);
    }

    #[test]
    fn products() {
        let (x, y) = seed_point(p(2.0, 3.0), 2);
        let m = &x * &y;
        assert_eq!(m.coeff(0, 0), 6.0);
        assert_eq!(m.coeff(1, 0), 3.0);
        assert_eq!(m.coeff(0, 1), 2.0);
        assert_eq!(m.coeff(1, 1), 1.0);
        let x = RJet::seed(p(3.0, 0.0), Axis::X, 2);
        let sq = &x * &x;
        assert_eq!((sq.coeff(0, 0), sq.coeff(1, 0), sq.coeff(2, 0)), (9.0, 6.0, 1.0));
    }

    #[test]
    fn self_division_is_one() {
        let (x, y) = seed_point(p(0.4, -1.2), 4);
        let a = (&x * &y).exp() + &x;
        let q = a.try_div(&a).unwrap();
        assert_relative_eq!(q.value(), 1.0, epsilon = 1e-15);
        assert!(q.coeffs()[1..].iter().all(|c| c.abs() < 1e-14));
        let z = RJet::zero(4);
        assert_eq!(a.try_div(&z), Err(Error::DivisionByZeroValue));
    }

    #[test]
    fn mismatched_orders() {
        let a = RJet::constant(1.0, 2);
        let b = RJet::constant(1.0, 3);
        assert_eq!(jet_arith(&a, &b, ArithOp::Add), Err(Error::OrderMismatch(2, 3)));
    }

    #[test]
    fn elementary_examples() {
        let x = RJet::seed(p(0.0, 0.0), Axis::X, 2);
        let e = x.exp();
        assert_eq!(e.coeffs()[..3], [1.0, 1.0, 0.0]);
        assert_relative_eq!(e.coeff(2, 0), 0.5);

        let x = RJet::seed(p(-8.0, 0.0), Axis::X, 1);
        let q = x.pow_abs(2.0 / 3.0).unwrap();
        assert_relative_eq!(q.value(), 4.0, epsilon = 1e-14);
        assert_relative_eq!(q.derivative(1, 0).unwrap(), -1.0 / 3.0, epsilon = 1e-14);
        // finite-difference oracle
        let f = |t: f64| t.abs().powf(2.0 / 3.0);
        let fd = (f(-8.0 + 1e-5) - f(-8.0 - 1e-5)) / 2e-5;
        assert_relative_eq!(q.derivative(1, 0).unwrap(), fd, max_relative = 1e-8);

        let x = RJet::seed(p(PI / 4.0, 0.0), Axis::X, 1);
        let t = x.tan().unwrap();
        assert_relative_eq!(t.value(), 1.0, epsilon = 1e-15);
        assert_relative_eq!(t.derivative(1, 0).unwrap(), 1.0 + t.value() * t.value(), epsilon = 1e-14);
        assert_relative_eq!(t.derivative(1, 0).unwrap(), 2.0, epsilon = 1e-14);
    }

    #[test]
    fn pow_of_zero() {
        let x = RJet::seed(p(0.0, 0.0), Axis::X, 3);
        assert!(matches!(x.pow_abs(0.5), Err(Error::DomainError(_))));
        let c = x.pow_abs(3.0).unwrap();
        assert_eq!(c.coeff(3, 0), 1.0);
        assert!(matches!(x.ln_abs(), Err(Error::DomainError(_))));
        // integer powers keep the sign of the base
        let x = RJet::seed(p(-2.0, 0.0), Axis::X, 2);
        assert_relative_eq!(x.pow_abs(3.0).unwrap().value(), -8.0);
        assert_relative_eq!(x.pow_abs(-1.0).unwrap().value(), -0.5);
    }

    #[test]
    fn complex_lift_basics() {
        let (z, zb) = complex_lift(p(1.0, 2.0), 1);
        assert_eq!(z.coeff(0, 0), Complex64::new(1.0, 2.0));
        assert_eq!(z.coeff(1, 0), Complex64::new(1.0, 0.0));
        assert_eq!(z.coeff(0, 1), Complex64::new(0.0, 1.0));
        assert_eq!(z.conj(), zb);
        let r = (&z * &zb).re();
        assert_relative_eq!(r.value(), 5.0);
        assert_relative_eq!(r.derivative(1, 0).unwrap(), 2.0);
        assert_relative_eq!(r.derivative(0, 1).unwrap(), 4.0);
    }

    #[test]
    fn extraction() {
        let x = RJet::seed(p(0.0, 0.0), Axis::X, 4);
        assert_relative_eq!(x.exp().derivative(2, 0).unwrap(), 1.0);
        assert_relative_eq!(x.exp().derivative(0, 0).unwrap(), 1.0);
        let (x, y) = seed_point(p(0.0, 0.0), 2);
        let f = x.sin() * y.cos();
        assert_relative_eq!(f.derivative(1, 1).unwrap(), 0.0);
        assert_eq!(f.derivative(2, 1), Err(Error::OrderExceeded { requested: 3, order: 2 }));
        // mixed derivative of sin(x)cos(y) at a generic point
        let (x, y) = seed_point(p(0.3, 0.7), 2);
        let f = x.sin() * y.cos();
        assert_relative_eq!(f.derivative(1, 1).unwrap(), -(0.3f64).cos() * (0.7f64).sin(), epsilon = 1e-15);
    }

    #[test]
    fn arctan_series() {
        let x = RJet::seed(p(0.7, 0.0), Axis::X, 4);
        let a = x.arctan().unwrap();
        let t = a.tan().unwrap();
        for (k, c) in t.coeffs().iter().enumerate() {
            assert_relative_eq!(*c, x.coeffs()[k], epsilon = 1e-13);
        }
        assert_relative_eq!(a.derivative(1, 0).unwrap(), 1.0 / (1.0 + 0.49), epsilon = 1e-15);
    }

    #[test]
    fn derivative_jets() {
        let (x, y) = seed_point(p(0.5, 0.2), 4);
        let f = (&x * &y).sin();
        let fx = f.dx().unwrap();
        let expected = (&y * (&x * &y).cos()).truncate(3);
        for (a, b) in fx.coeffs().iter().zip(expected.coeffs()) {
            assert_relative_eq!(*a, *b, epsilon = 1e-14);
        }
        assert!(RJet::constant(1.0, 0).dy().is_err());
    }
}
