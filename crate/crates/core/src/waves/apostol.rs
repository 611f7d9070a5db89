//! Apostol coefficients `β_m(ξ)`, the Taylor coefficients of `z/(ξe^z−1)` times `m!`.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::combinatorics::{bernoulli_poly, stirling2};
use crate::error::{Error, Result};
use crate::numerics::{BigComplex, PrecisionContext};

/// `β_m(ξ)` for `ξ ≠ 1` via the Stirling-number sum over powers of `1/(ξ−1)`.
pub fn apostol_beta_stirling(m: usize, xi: &BigComplex, bits: u32) -> Result<BigComplex> {
    let d = xi - &BigComplex::one(bits);
    if d.is_zero() {
        return Err(Error::Domain("the Stirling form of beta_m needs xi != 1".into()));
    }
    let inv = d.recip();
    let mut pw = BigComplex::one(bits);
    let mut fact = Integer::from(1);
    let mut acc = BigComplex::zero(bits);
    for j in 1..=m {
        pw = &pw * &inv;
        if j > 1 {
            fact *= (j - 1) as u32;
        }
        let c = Integer::from(stirling2(m, j) * &fact);
        acc += &pw.scale(&Float::with_val(bits, &c));
    }
    let mut out = acc.scale_i64(m as i64);
    if m % 2 == 0 {
        out = -out;
    }
    Ok(out)
}

/// `β_m(e^{2πih/k})` via `k^{m−1} Σ_{j<k} ρ^j B_m(j/k)`.
pub fn apostol_beta_roots(m: usize, k: u64, h: i64, bits: u32) -> BigComplex {
    let mut acc = BigComplex::zero(bits);
    for j in 0..k {
        let b = bernoulli_poly(m, &Rational::from((j, k)));
        if b == 0 {
            continue;
        }
        let rho_j = BigComplex::root_of_unity(bits, h * j as i64, k as i64);
        acc += &rho_j.scale_rational(&b);
    }
    let kp = Rational::from(Integer::from(k).pow(m as u32)) / k;
    acc.scale_rational(&kp)
}

/// `β_m(ρ)` at `ρ = e^{2πih/k}`, computed both ways when `ρ ≠ 1` and cross-checked.
pub fn apostol_beta(m: usize, k: u64, h: i64, ctx: &PrecisionContext) -> Result<BigComplex> {
    if k == 0 {
        return Err(Error::Usage("k must be positive".into()));
    }
    let bits = ctx.bits();
    let roots = apostol_beta_roots(m, k, h, bits);
    if h.rem_euclid(k as i64) == 0 {
        return Ok(roots);
    }
    let xi = BigComplex::root_of_unity(bits, h, k as i64);
    let stir = apostol_beta_stirling(m, &xi, bits)?;
    let diff = (&roots - &stir).abs();
    let scale = roots.abs().max(&Float::with_val(bits, 1));
    let tol = ctx.epsilon() * scale * 1000u32;
    if diff > tol {
        return Err(Error::SelfCheck(format!(
            "beta_{m}(e^(2 pi i {h}/{k})): Stirling and root-sum forms differ by {}",
            diff.to_f64()
        )));
    }
    Ok(roots)
}
