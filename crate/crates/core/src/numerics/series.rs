use rug::Float;

use super::complex::BigComplex;
use crate::error::{Error, Result};

/// Power series `Σ coeffs[i]·(z−center)^i` truncated after `order` terms.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    center: BigComplex,
    coeffs: Vec<BigComplex>,
}

/// The elementary series operations, selectable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Mul,
    Recip,
    Exp,
    Log,
    Sqrt,
    Derivative,
    Antiderivative,
}

impl TruncatedSeries {
    pub fn new(center: BigComplex, coeffs: Vec<BigComplex>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Usage("series order must be positive".into()));
        }
        Ok(Self { center, coeffs })
    }

    /// The constant `c` to the given order.
    pub fn constant(center: &BigComplex, c: BigComplex, order: usize) -> Self {
        let p = c.prec();
        let mut coeffs = vec![BigComplex::zero(p); order.max(1)];
        coeffs[0] = c;
        Self {
            center: center.clone(),
            coeffs,
        }
    }

    /// The identity function `z` expanded at `center`.
    pub fn variable(center: &BigComplex, order: usize) -> Self {
        let p = center.prec();
        let mut s = Self::constant(center, center.clone(), order);
        if order > 1 {
            s.coeffs[1] = BigComplex::one(p);
        }
        s
    }

    pub fn center(&self) -> &BigComplex {
        &self.center
    }

    pub fn coeffs(&self) -> &[BigComplex] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigComplex {
        &self.coeffs[i]
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn prec(&self) -> u32 {
        self.coeffs[0].prec()
    }

    pub fn into_coeffs(self) -> Vec<BigComplex> {
        self.coeffs
    }

    /// Keep only the first `order` coefficients.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order()).max(1);
        Self {
            center: self.center.clone(),
            coeffs: self.coeffs[..order].to_vec(),
        }
    }

    /// Drop the first `k` coefficients, i.e. divide by `(z−center)^k`
    /// assuming those coefficients vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k >= self.order() {
            return Err(Error::Usage("shift removes every coefficient".into()));
        }
        Ok(Self {
            center: self.center.clone(),
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    fn check_center(&self, other: &Self) -> Result<()> {
        if self.center != other.center {
            return Err(Error::Usage("series centers differ".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_center(other)?;
        let n = self.order().min(other.order());
        let coeffs = (0..n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        Ok(Self {
            center: self.center.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_center(other)?;
        let n = self.order().min(other.order());
        let coeffs = (0..n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect();
        Ok(Self {
            center: self.center.clone(),
            coeffs,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_center(other)?;
        let n = self.order().min(other.order());
        Ok(Self {
            center: self.center.clone(),
            coeffs: mul_coeffs(&self.coeffs[..n], &other.coeffs[..n], n),
        })
    }

    pub fn scale(&self, c: &BigComplex) -> Self {
        Self {
            center: self.center.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn scale_real(&self, c: &Float) -> Self {
        Self {
            center: self.center.clone(),
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn add_constant(&self, c: &BigComplex) -> Self {
        let mut s = self.clone();
        s.coeffs[0] = &s.coeffs[0] + c;
        s
    }

    pub fn neg(&self) -> Self {
        Self {
            center: self.center.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        let a = &self.coeffs;
        if a[0].is_zero() {
            return Err(Error::SingularSeries("reciprocal of a series with zero constant term".into()));
        }
        let inv0 = a[0].recip();
        let n = a.len();
        let mut c: Vec<BigComplex> = Vec::with_capacity(n);
        c.push(inv0.clone());
        for k in 1..n {
            let mut acc = BigComplex::zero(inv0.prec());
            for i in 1..=k {
                acc += &(&a[i] * &c[k - i]);
            }
            c.push(-(&acc * &inv0));
        }
        Ok(Self {
            center: self.center.clone(),
            coeffs: c,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.recip()?)
    }

    pub fn exp(&self) -> Self {
        let a = &self.coeffs;
        let n = a.len();
        let mut b: Vec<BigComplex> = Vec::with_capacity(n);
        b.push(a[0].exp());
        for k in 1..n {
            let mut acc = BigComplex::zero(a[0].prec());
            for i in 1..=k {
                acc += &(&a[i] * &b[k - i]).scale_i64(i as i64);
            }
            b.push(acc.div_i64(k as i64));
        }
        Self {
            center: self.center.clone(),
            coeffs: b,
        }
    }

    /// Logarithm with the principal branch at the constant term.
    pub fn log(&self) -> Result<Self> {
        let a = &self.coeffs;
        if a[0].is_zero() {
            return Err(Error::SingularSeries("logarithm of a series with zero constant term".into()));
        }
        let n = a.len();
        let inv0 = a[0].recip();
        let mut b: Vec<BigComplex> = Vec::with_capacity(n);
        b.push(a[0].ln());
        for k in 1..n {
            let mut acc = a[k].scale_i64(k as i64);
            for i in 1..k {
                acc -= &(&b[i] * &a[k - i]).scale_i64(i as i64);
            }
            b.push((&acc * &inv0).div_i64(k as i64));
        }
        Ok(Self {
            center: self.center.clone(),
            coeffs: b,
        })
    }

    /// Square root with the principal branch at the constant term.
    pub fn sqrt(&self) -> Result<Self> {
        self.sqrt_with_root(self.coeffs[0].sqrt())
    }

    /// Square root whose constant term is the given root of `coeffs[0]`.
    pub fn sqrt_with_root(&self, root: BigComplex) -> Result<Self> {
        let a = &self.coeffs;
        if a[0].is_zero() {
            return Err(Error::SingularSeries("square root of a series with zero constant term".into()));
        }
        let n = a.len();
        let inv2 = root.scale_i64(2).recip();
        let mut b: Vec<BigComplex> = Vec::with_capacity(n);
        b.push(root);
        for k in 1..n {
            let mut acc = a[k].clone();
            for i in 1..k {
                acc -= &(&b[i] * &b[k - i]);
            }
            b.push(&acc * &inv2);
        }
        Ok(Self {
            center: self.center.clone(),
            coeffs: b,
        })
    }

    /// `self^w` with the principal branch at the constant term.
    pub fn pow(&self, w: &BigComplex) -> Result<Self> {
        let a = &self.coeffs;
        if a[0].is_zero() {
            return Err(Error::SingularSeries("power of a series with zero constant term".into()));
        }
        let n = a.len();
        let inv0 = a[0].recip();
        let mut b: Vec<BigComplex> = Vec::with_capacity(n);
        b.push(a[0].pow(w));
        for k in 1..n {
            let mut acc = BigComplex::zero(a[0].prec());
            for i in 1..=k {
                let f = &w.scale_i64(i as i64) - &BigComplex::from_i64(a[0].prec(), (k - i) as i64);
                acc += &(&(&f * &a[i]) * &b[k - i]);
            }
            b.push((&acc * &inv0).div_i64(k as i64));
        }
        Ok(Self {
            center: self.center.clone(),
            coeffs: b,
        })
    }

    /// `sin` and `cos` of the series.
    pub fn sin_cos(&self) -> (Self, Self) {
        let iz = self.scale(&BigComplex::i(self.prec()));
        let e = iz.exp();
        let em = iz.neg().exp();
        let two_i = BigComplex::i(self.prec()).scale_i64(2);
        let sin = Self {
            center: self.center.clone(),
            coeffs: e.coeffs.iter().zip(&em.coeffs).map(|(a, b)| &(a - b) / &two_i).collect(),
        };
        let cos = Self {
            center: self.center.clone(),
            coeffs: e.coeffs.iter().zip(&em.coeffs).map(|(a, b)| (a + b).div_i64(2)).collect(),
        };
        (sin, cos)
    }

    /// Term-by-term derivative; the order drops by one (order-1 series give the zero series).
    pub fn derivative(&self) -> Self {
        let p = self.prec();
        let n = self.order();
        let coeffs = if n == 1 {
            vec![BigComplex::zero(p)]
        } else {
            (1..n).map(|i| self.coeffs[i].scale_i64(i as i64)).collect()
        };
        Self {
            center: self.center.clone(),
            coeffs,
        }
    }

    /// Antiderivative with constant term 0; the order grows by one.
    pub fn antiderivative(&self) -> Self {
        let p = self.prec();
        let mut coeffs = Vec::with_capacity(self.order() + 1);
        coeffs.push(BigComplex::zero(p));
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.div_i64(i as i64 + 1));
        }
        Self {
            center: self.center.clone(),
            coeffs,
        }
    }

    /// Horner evaluation at `z`.
    pub fn eval(&self, z: &BigComplex) -> BigComplex {
        let t = z - &self.center;
        let mut acc = self.coeffs[self.order() - 1].clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = &(&acc * &t) + c;
        }
        acc
    }

    /// Apply one of the named elementary operations.
    pub fn elementary(op: SeriesOp, a: &Self, b: Option<&Self>) -> Result<Self> {
        match op {
            SeriesOp::Mul => {
                let b = b.ok_or_else(|| Error::Usage("mul needs a second series".into()))?;
                a.mul(b)
            }
            SeriesOp::Recip => a.recip(),
            SeriesOp::Exp => Ok(a.exp()),
            SeriesOp::Log => a.log(),
            SeriesOp::Sqrt => a.sqrt(),
            SeriesOp::Derivative => Ok(a.derivative()),
            SeriesOp::Antiderivative => Ok(a.antiderivative()),
        }
    }
}

/// Schoolbook product of two coefficient slices, truncated to `n` terms.
pub fn mul_coeffs(a: &[BigComplex], b: &[BigComplex], n: usize) -> Vec<BigComplex> {
    let p = a[0].prec().max(b[0].prec());
    let mut out = vec![BigComplex::zero(p); n];
    for (i, ai) in a.iter().enumerate().take(n) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n - i) {
            out[i + j] += &(ai * bj);
        }
    }
    out
}
