//! Working-precision selection from cheap majorant bounds.
//!
//! Residues and waves are read off as high-order Taylor coefficients of
//! exponentials, which cancel heavily. Running the computation once at low
//! precision with every term replaced by its absolute value bounds the size
//! of the intermediate terms; the extra digits needed are its decimal log.

use rug::Float;

use crate::numerics::{digits_to_bits, log10_abs};

/// Precision of the probing pass.
pub const MAJORANT_BITS: u32 = 128;

/// `log10 [x^n] exp(Σ_{m≥1} b_m x^m)` for non-negative `b_m` (index 0 ignored).
pub fn log10_coeff_exp_majorant(b: &[Float], n: usize) -> f64 {
    let bits = MAJORANT_BITS;
    let mut c: Vec<Float> = Vec::with_capacity(n + 1);
    c.push(Float::with_val(bits, 1));
    for k in 1..=n {
        let mut acc = Float::new(bits);
        for i in 1..=k.min(b.len().saturating_sub(1)) {
            let mut t = Float::with_val(bits, &b[i] * &c[k - i]);
            t *= i as u32;
            acc += &t;
        }
        acc /= k as u32;
        c.push(acc);
    }
    log10_abs(&c[n])
}

/// Additional bits to carry when intermediate terms reach `10^log10_size`.
pub fn extra_bits(log10_size: f64, terms: usize) -> u32 {
    let size = if log10_size.is_finite() { log10_size.max(0.0) } else { 0.0 };
    let digits = size + (terms as f64 + 1.0).log10() + 5.0;
    digits_to_bits(digits.ceil() as u32)
}
