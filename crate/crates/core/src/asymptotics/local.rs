use rug::ops::Pow;
use rug::Float;

use crate::dilog::li2_bits;
use crate::error::{Error, Result};
use crate::numerics::{pi, BigComplex, TruncatedSeries};

/// Taylor series of elementary functions about a fixed point, to a fixed order.
pub(crate) struct Local {
    pub center: BigComplex,
    pub order: usize,
    pub bits: u32,
}

impl Local {
    pub fn new(center: &BigComplex, order: usize, bits: u32) -> Self {
        Self { center: center.with_prec(bits), order, bits }
    }

    pub fn pi(&self) -> Float {
        pi(self.bits)
    }

    pub fn var(&self) -> TruncatedSeries {
        TruncatedSeries::variable(&self.center, self.order)
    }

    pub fn constant(&self, c: BigComplex) -> TruncatedSeries {
        TruncatedSeries::constant(&self.center, c.with_prec(self.bits), self.order)
    }

    pub fn zero(&self) -> TruncatedSeries {
        self.constant(BigComplex::zero(self.bits))
    }

    pub fn one(&self) -> TruncatedSeries {
        self.constant(BigComplex::one(self.bits))
    }

    /// `exp(c·z)`.
    pub fn exp_linear(&self, c: &BigComplex) -> TruncatedSeries {
        self.var().scale(c).exp()
    }

    /// `a·z + b` to `order + extra` terms.
    fn affine(&self, a: &Float, b: &Float, extra: usize) -> TruncatedSeries {
        let v = TruncatedSeries::variable(&self.center, self.order + extra);
        v.scale_real(a).add_constant(&BigComplex::from_real(b.clone()))
    }

    /// `sin(a·z + b)`.
    pub fn sin_affine(&self, a: &Float, b: &Float) -> TruncatedSeries {
        self.affine(a, b, 0).sin_cos().0
    }

    /// `cot^{(r)}(a·z + b)`, the `r`-th derivative of cot taken in its own argument.
    pub fn cot_derivative(&self, a: &Float, b: &Float, r: usize) -> Result<TruncatedSeries> {
        let (s, c) = self.affine(a, b, r).sin_cos();
        let tiny = Float::with_val(self.bits, Float::i_exp(1, -(self.bits as i32) / 2));
        if s.coeff(0).abs() < tiny {
            return Err(Error::Pole(format!("cot at a pole near z = {:?}", self.center.to_f64())));
        }
        let mut d = c.div(&s)?;
        for _ in 0..r {
            d = d.derivative();
        }
        let inv = Float::with_val(self.bits, a.recip_ref()).pow(r as u32);
        Ok(d.scale_real(&inv).truncate(self.order))
    }

    /// `Li₂(e^{2πiz})` and `log(1 − e^{2πiz})`, both principal at the centre.
    pub fn li2_exp(&self) -> Result<(TruncatedSeries, TruncatedSeries)> {
        let two_pi_i = BigComplex::new(Float::new(self.bits), Float::with_val(self.bits, self.pi() * 2u32));
        let e = self.exp_linear(&two_pi_i);
        let log1m = e.neg().add_constant(&BigComplex::one(self.bits)).log()?;
        let l0 = li2_bits(e.coeff(0), self.bits)?;
        let li = log1m.scale(&-two_pi_i).antiderivative().truncate(self.order).add_constant(&l0);
        Ok((li, log1m))
    }
}

/// `s^n` for a non-negative integer `n`.
pub(crate) fn powi(s: &TruncatedSeries, n: u32) -> Result<TruncatedSeries> {
    let mut out = TruncatedSeries::constant(s.center(), BigComplex::one(s.prec()), s.order());
    for _ in 0..n {
        out = out.mul(s)?;
    }
    Ok(out)
}
