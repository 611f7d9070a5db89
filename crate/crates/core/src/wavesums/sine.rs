use rug::{Float, Rational};

use crate::dilog::clausen;
use crate::error::{Error, Result};
use crate::numerics::{pi, PrecisionContext};

/// `sin(π·a/b)` with `a/b` reduced modulo 2 exactly.
pub(crate) fn sin_pi_rational(a: i64, b: i64, bits: u32) -> Float {
    let r = a.rem_euclid(2 * b);
    let theta = Float::with_val(bits + 16, pi(bits + 16) * Rational::from((r, b)));
    Float::with_val(bits, theta.sin())
}

/// `Π_{j=1}^{m} 2 sin(πjθ)`, the empty product being 1.
pub fn sine_product(theta: &Rational, m: u64, ctx: &PrecisionContext) -> Result<Float> {
    sine_product_bits(theta, m, ctx.bits())
}

pub(crate) fn sine_product_bits(theta: &Rational, m: u64, bits: u32) -> Result<Float> {
    let a = theta.numer().to_i64().ok_or_else(|| Error::Overflow("sine product numerator".into()))?;
    let b = theta.denom().to_i64().ok_or_else(|| Error::Overflow("sine product denominator".into()))?;
    let mut acc = Float::with_val(bits, 1);
    for j in 1..=m as i64 {
        let num = (j as i128 * a as i128).rem_euclid(2 * b as i128) as i64;
        if num % b == 0 {
            return Err(Error::ZeroProduct(format!("factor j={j} vanishes for theta={theta}")));
        }
        acc *= sin_pi_rational(num, b, bits);
        acc *= 2u32;
    }
    Ok(acc)
}

/// Leading approximation to `1/sine_product(1/k, N−k)` for `1.01 < N/k < 1.49`:
/// `(ẑ/(2N sin(π(ẑ−1))))^{1/2} exp((k/2π) Cl₂(2πẑ))` with `ẑ = N/k`.
pub fn sine_product_main_term(big_n: u64, k: u64, ctx: &PrecisionContext) -> Result<Float> {
    let ratio = big_n as f64 / k as f64;
    if !(ratio > 1.01 && ratio < 1.49) {
        return Err(Error::Domain(format!("N/k = {ratio} lies outside (1.01, 1.49)")));
    }
    let bits = ctx.bits() + 32;
    let p = pi(bits);
    let z = Float::with_val(bits, Rational::from((big_n, k)));
    let s = Float::with_val(bits, &p * Float::with_val(bits, &z - 1u32)).sin();
    let den = Float::with_val(bits, s * (2 * big_n));
    let root = Float::with_val(bits, &z / den).sqrt();
    let theta = Float::with_val(bits, &p * 2u32) * &z;
    let cl = clausen(&theta, &ctx.with_extra_digits(10));
    let e = Float::with_val(bits, cl * k) / Float::with_val(bits, &p * 2u32);
    Ok(Float::with_val(ctx.bits(), root * e.exp()))
}
