//! Waves of the general restricted partition problem with part multiset `A`.

use rug::{Float, Integer};

use crate::combinatorics::{denumerant_count, divides_some, fractions_with_denominator};
use crate::error::{Error, Result};
use crate::numerics::{mul_coeffs, BigComplex, PrecisionContext};

/// A nonempty multiset of positive parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Denumerant {
    parts: Vec<u64>,
}

impl Denumerant {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::Usage("parts must be a nonempty list of positive integers".into()));
        }
        Ok(Denumerant { parts })
    }

    /// `{1, 2, …, N}`.
    pub fn first_n(big_n: u64) -> Self {
        Denumerant { parts: (1..=big_n).collect() }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Number of parts divisible by `k`; the pole order at primitive `k`-th roots.
    pub fn multiples_of(&self, k: u64) -> usize {
        self.parts.iter().filter(|&&a| a % k == 0).count()
    }

    /// Moduli `k` that divide some part, ascending.
    pub fn wave_moduli(&self) -> Vec<u64> {
        let top = *self.parts.iter().max().unwrap_or(&1);
        (1..=top).filter(|&k| divides_some(k, &self.parts)).collect()
    }

    /// Brute-force count `p_A(n)`.
    pub fn count(&self, n: i64) -> Integer {
        denumerant_count(&self.parts, n)
    }
}

/// `[z^{s−1}]` of `ρ^n e^{nz} / Π_a (1 − ρ^{−a} e^{−az})` with the `s` vanishing
/// factors replaced by their quotients by `z`.
fn root_term(k: u64, h: u64, parts: &[u64], n: i64, s: usize, bits: u32) -> BigComplex {
    let kk = k as i64;
    let mut acc = vec![BigComplex::zero(bits); s];
    // e^{nz}
    let mut c = Float::with_val(bits, 1);
    for (r, a) in acc.iter_mut().enumerate() {
        if r > 0 {
            c *= n;
            c /= r as u32;
        }
        *a = BigComplex::from_real(c.clone());
    }
    for &a in parts {
        let ai = a as i64;
        // 1 − ξ e^{−az} as a series in z
        let xi = BigComplex::root_of_unity(bits, -(h as i64) * ai, kk);
        let vanishing = a % k == 0;
        let mut f = vec![BigComplex::zero(bits); s];
        let mut t = Float::with_val(bits, 1);
        if vanishing {
            // (1 − e^{−az})/z = Σ_{m≥0} −(−a)^{m+1} z^m/(m+1)!
            for (m, fm) in f.iter_mut().enumerate() {
                t *= -ai;
                t /= (m + 1) as u32;
                *fm = BigComplex::from_real(Float::with_val(bits, -&t));
            }
        } else {
            for (m, fm) in f.iter_mut().enumerate() {
                if m > 0 {
                    t *= -ai;
                    t /= m as u32;
                }
                let v = xi.scale(&t);
                *fm = if m == 0 { &BigComplex::one(bits) - &v } else { -v };
            }
        }
        let inv = series_recip(&f, bits);
        acc = mul_coeffs(&acc, &inv, s);
    }
    let rho_n = BigComplex::root_of_unity(bits, (h as i64) * n.rem_euclid(kk), kk);
    &acc[s - 1] * &rho_n
}

fn series_recip(f: &[BigComplex], bits: u32) -> Vec<BigComplex> {
    let inv0 = f[0].recip();
    let mut g = vec![BigComplex::zero(bits); f.len()];
    g[0] = inv0.clone();
    for m in 1..f.len() {
        let mut acc = BigComplex::zero(bits);
        for i in 1..=m {
            acc += &(&f[i] * &g[m - i]);
        }
        g[m] = -(&acc * &inv0);
    }
    g
}

/// `W_k(A,n)`, the residue at 0 of the sum over primitive `k`-th roots.
pub fn wave_denumerant(k: u64, a: &Denumerant, n: i64, ctx: &PrecisionContext) -> Result<Float> {
    if k == 0 || !divides_some(k, a.parts()) {
        return Err(Error::Domain(format!("{k} divides no part of A")));
    }
    let s = a.multiples_of(k);
    let total: u64 = a.parts().iter().sum();
    let mag = (n.unsigned_abs() + total + 2) as f64;
    let extra = (s as f64 * mag.log10()).ceil() as u32 + 10;
    let bits = ctx.with_extra_digits(extra).bits();
    let mut acc = BigComplex::zero(bits);
    for h in fractions_with_denominator(k) {
        acc += &root_term(k, h, a.parts(), n, s, bits);
    }
    Ok(Float::with_val(ctx.bits(), &acc.re))
}
