use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::{Assign, Float, Integer, Rational};

use super::context::pi;
use crate::error::{Error, Result};

/// Complex number with MPFR real and imaginary parts.
///
/// Results of binary operations carry the larger precision of the operands.
#[derive(Debug, Clone, PartialEq)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

impl BigComplex {
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn zero(bits: u32) -> Self {
        Self::new(Float::new(bits), Float::new(bits))
    }

    pub fn one(bits: u32) -> Self {
        Self::from_real(Float::with_val(bits, 1))
    }

    pub fn i(bits: u32) -> Self {
        Self::new(Float::new(bits), Float::with_val(bits, 1))
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        Self { re, im }
    }

    pub fn from_i64(bits: u32, v: i64) -> Self {
        Self::from_real(Float::with_val(bits, v))
    }

    pub fn from_f64(bits: u32, re: f64, im: f64) -> Self {
        Self::new(Float::with_val(bits, re), Float::with_val(bits, im))
    }

    pub fn from_rational(bits: u32, q: &Rational) -> Self {
        Self::from_real(Float::with_val(bits, q))
    }

    pub fn from_integer(bits: u32, q: &Integer) -> Self {
        Self::from_real(Float::with_val(bits, q))
    }

    /// `e^{iπ r}` for a rational `r`, reduced exactly modulo 2 first.
    pub fn exp_i_pi_rational(bits: u32, r: &Rational) -> Self {
        let half = Rational::from(r / 2u32);
        let fl = half.clone().floor();
        let red = Rational::from(half - fl) * 2u32;
        let mut theta = pi(bits + 16);
        theta *= &red;
        let (s, c) = theta.sin_cos(Float::new(bits));
        Self::new(Float::with_val(bits, c), Float::with_val(bits, s))
    }

    /// `e^{2πi a/b}` for integers, reduced modulo `b` exactly.
    pub fn root_of_unity(bits: u32, a: i64, b: i64) -> Self {
        assert!(b > 0);
        let a = a.rem_euclid(b);
        Self::exp_i_pi_rational(bits, &Rational::from((2 * a, b)))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, bits: u32) -> Self {
        Self::new(Float::with_val(bits, &self.re), Float::with_val(bits, &self.im))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    /// Error unless both components are finite.
    pub fn checked(self) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::Overflow("non-finite complex value".into()))
        }
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), Float::with_val(self.im.prec(), -&self.im))
    }

    pub fn mul_i(&self) -> Self {
        Self::new(Float::with_val(self.im.prec(), -&self.im), self.re.clone())
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        let mut a = Float::with_val(p, self.re.square_ref());
        let b = Float::with_val(p, self.im.square_ref());
        a += &b;
        a
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    /// Principal argument in (−π, π]; a signed zero imaginary part counts as +0.
    pub fn arg(&self) -> Float {
        let p = self.prec();
        if self.im.is_zero() {
            if self.re.is_sign_negative() && !self.re.is_zero() {
                return pi(p);
            }
            return Float::new(p);
        }
        Float::with_val(p, self.im.atan2_ref(&self.re))
    }

    pub fn scale(&self, f: &Float) -> Self {
        let p = self.prec().max(f.prec());
        Self::new(Float::with_val(p, &self.re * f), Float::with_val(p, &self.im * f))
    }

    pub fn scale_i64(&self, f: i64) -> Self {
        let p = self.prec();
        Self::new(Float::with_val(p, &self.re * f), Float::with_val(p, &self.im * f))
    }

    pub fn div_i64(&self, f: i64) -> Self {
        let p = self.prec();
        Self::new(Float::with_val(p, &self.re / f), Float::with_val(p, &self.im / f))
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        let p = self.prec();
        let f = Float::with_val(p, q);
        self.scale(&f)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn recip(&self) -> Self {
        let p = self.prec();
        let d = self.norm_sqr();
        Self::new(
            Float::with_val(p, &self.re / &d),
            Float::with_val(p, -Float::with_val(p, &self.im / &d)),
        )
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let r = Float::with_val(p, self.re.exp_ref());
        let (s, c) = Float::with_val(p, &self.im).sin_cos(Float::new(p));
        Self::new(Float::with_val(p, &r * &c), Float::with_val(p, &r * &s))
    }

    /// Principal logarithm with argument in (−π, π].
    pub fn ln(&self) -> Self {
        let p = self.prec();
        let m = self.abs();
        Self::new(Float::with_val(p, m.ln_ref()), self.arg())
    }

    /// Principal square root (argument in (−π/2, π/2]).
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.is_zero() {
            return Self::zero(p);
        }
        let m = self.abs();
        let mut a = Float::with_val(p, &m + &self.re);
        a /= 2;
        a.sqrt_mut();
        let mut b = Float::with_val(p, &m - &self.re);
        b /= 2;
        b.sqrt_mut();
        if self.im.is_sign_negative() && !self.im.is_zero() {
            b = -b;
        }
        Self::new(a, b)
    }

    /// Principal power `self^w = e^{w log self}`.
    pub fn pow(&self, w: &Self) -> Self {
        if self.is_zero() {
            return Self::zero(self.prec());
        }
        (w * &self.ln()).exp()
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, e: i64) -> Self {
        let p = self.prec();
        let mut base = if e < 0 { self.recip() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(p);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn sin(&self) -> Self {
        let p = self.prec();
        let (s, c) = Float::with_val(p, &self.re).sin_cos(Float::new(p));
        let (sh, ch) = Float::with_val(p, &self.im).sinh_cosh(Float::new(p));
        Self::new(Float::with_val(p, &s * &ch), Float::with_val(p, &c * &sh))
    }

    pub fn cos(&self) -> Self {
        let p = self.prec();
        let (s, c) = Float::with_val(p, &self.re).sin_cos(Float::new(p));
        let (sh, ch) = Float::with_val(p, &self.im).sinh_cosh(Float::new(p));
        Self::new(Float::with_val(p, &c * &ch), Float::with_val(p, -(s * sh)))
    }

    pub fn cot(&self) -> Self {
        &self.cos() / &self.sin()
    }

    /// Approximate `f64` pair, for diagnostics and coarse searches.
    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// |self − other| relative to max(1, |other|).
    pub fn rel_diff(&self, other: &Self) -> Float {
        let d = (self - other).abs();
        let mut s = other.abs();
        if s < 1 {
            s.assign(1);
        }
        d / s
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $imp:ident) => {
        impl $tr<&BigComplex> for &BigComplex {
            type Output = BigComplex;
            fn $f(self, rhs: &BigComplex) -> BigComplex {
                $imp(self, rhs)
            }
        }
        impl $tr<BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $f(self, rhs: BigComplex) -> BigComplex {
                $imp(&self, &rhs)
            }
        }
        impl $tr<&BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $f(self, rhs: &BigComplex) -> BigComplex {
                $imp(&self, rhs)
            }
        }
        impl $tr<BigComplex> for &BigComplex {
            type Output = BigComplex;
            fn $f(self, rhs: BigComplex) -> BigComplex {
                $imp(self, &rhs)
            }
        }
    };
}

fn add_impl(a: &BigComplex, b: &BigComplex) -> BigComplex {
    let p = a.prec().max(b.prec());
    BigComplex::new(Float::with_val(p, &a.re + &b.re), Float::with_val(p, &a.im + &b.im))
}

fn sub_impl(a: &BigComplex, b: &BigComplex) -> BigComplex {
    let p = a.prec().max(b.prec());
    BigComplex::new(Float::with_val(p, &a.re - &b.re), Float::with_val(p, &a.im - &b.im))
}

fn mul_impl(a: &BigComplex, b: &BigComplex) -> BigComplex {
    let p = a.prec().max(b.prec());
    let mut re = Float::with_val(p, &a.re * &b.re);
    let t = Float::with_val(p, &a.im * &b.im);
    re -= &t;
    let mut im = Float::with_val(p, &a.re * &b.im);
    let t = Float::with_val(p, &a.im * &b.re);
    im += &t;
    BigComplex::new(re, im)
}

fn div_impl(a: &BigComplex, b: &BigComplex) -> BigComplex {
    if b.im.is_zero() {
        let p = a.prec().max(b.prec());
        return BigComplex::new(Float::with_val(p, &a.re / &b.re), Float::with_val(p, &a.im / &b.re));
    }
    mul_impl(a, &b.recip())
}

binop!(Add, add, add_impl);
binop!(Sub, sub, sub_impl);
binop!(Mul, mul, mul_impl);
binop!(Div, div, div_impl);

impl AddAssign<&BigComplex> for BigComplex {
    fn add_assign(&mut self, rhs: &BigComplex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&BigComplex> for BigComplex {
    fn sub_assign(&mut self, rhs: &BigComplex) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&BigComplex> for BigComplex {
    fn mul_assign(&mut self, rhs: &BigComplex) {
        *self = mul_impl(self, rhs);
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex::new(-self.re, -self.im)
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex::new(Float::with_val(self.re.prec(), -&self.re), Float::with_val(self.im.prec(), -&self.im))
    }
}
