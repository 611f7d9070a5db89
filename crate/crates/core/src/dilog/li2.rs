//! The principal dilogarithm, Clausen's integral and the functions `p_d`.

use rug::Float;

use crate::combinatorics::bernoulli_numbers;
use crate::error::{Error, Result};
use crate::numerics::{pi, pow10, BigComplex, PrecisionContext};

const GUARD_BITS: u32 = 24;

fn pi_sq_over_6(bits: u32) -> Float {
    let p = pi(bits);
    Float::with_val(bits, &p * &p) / 6u32
}

/// `Σ z^n/n²` for `|z| ≤ 1/2`.
fn li2_direct(z: &BigComplex, bits: u32) -> BigComplex {
    let tol = pow10(bits, -((bits as f64 * std::f64::consts::LOG10_2) as i64) - 2);
    let mut pw = z.clone();
    let mut acc = BigComplex::zero(bits);
    let mut n: u64 = 1;
    loop {
        let term = pw.div_i64((n * n) as i64);
        acc += &term;
        if term.abs() < tol {
            break;
        }
        n += 1;
        pw = &pw * z;
    }
    acc
}

/// `Σ B_n u^{n+1}/(n+1)!` with `u = −log(1−z)`, valid for `|u| < 2π`.
fn li2_bernoulli(z: &BigComplex, bits: u32) -> BigComplex {
    let one = BigComplex::one(bits);
    let u = -(&one - z).ln();
    let absu = u.abs().to_f64();
    let digits = bits as f64 * std::f64::consts::LOG10_2 + 2.0;
    let ratio = (absu / (2.0 * std::f64::consts::PI)).max(1e-6);
    let terms = ((digits / -ratio.log10()).ceil() as usize + 4).max(4);
    let b = bernoulli_numbers(terms + 1);
    let mut acc = BigComplex::zero(bits);
    let mut pw = u.clone();
    let mut fact = Float::with_val(bits, 1);
    for (n, bn) in b.iter().enumerate().take(terms + 1) {
        // pw = u^{n+1}, fact = (n+1)!
        fact *= (n + 1) as u32;
        if *bn != 0 {
            let c = Float::with_val(bits, bn) / &fact;
            acc += &pw.scale(&c);
        }
        pw = &pw * &u;
    }
    acc
}

fn li2_unit_disc(z: &BigComplex, bits: u32) -> BigComplex {
    if z.abs() <= 0.5 {
        return li2_direct(z, bits);
    }
    if z.re > 0.5 {
        // Li₂(z) = −Li₂(1−z) + π²/6 − log z · log(1−z)
        let one = BigComplex::one(bits);
        let w = &one - z;
        let inner = if w.abs() <= 0.5 { li2_direct(&w, bits) } else { li2_bernoulli(&w, bits) };
        let lz = z.ln();
        let lw = w.ln();
        let c = BigComplex::from_real(pi_sq_over_6(bits));
        return &(&c - &inner) - &(&lz * &lw);
    }
    li2_bernoulli(z, bits)
}

/// Principal dilogarithm on `ℂ − [1,∞)`, with `Li₂(1) = π²/6`.
pub fn li2(z: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex> {
    li2_bits(z, ctx.bits())
}

pub(crate) fn li2_bits(z: &BigComplex, out_bits: u32) -> Result<BigComplex> {
    if !z.is_finite() {
        return Err(Error::Domain("li2 of a non-finite argument".into()));
    }
    let bits = out_bits + GUARD_BITS;
    let z = z.with_prec(bits);
    if z.im.is_zero() && z.re >= 1 {
        if z.re == 1 {
            return Ok(BigComplex::from_real(pi_sq_over_6(out_bits)));
        }
        return Err(Error::Branch(format!("li2 at {} lies on the cut [1, inf)", z.re.to_f64())));
    }
    let v = if z.abs() > 1 {
        // Li₂(z) = −Li₂(1/z) − π²/6 − ½ log²(−z)
        let inv = z.recip();
        let inner = li2_unit_disc(&inv, bits);
        let l = (-z.clone()).ln();
        let half_sq = l.square().scale(&Float::with_val(bits, 0.5));
        let c = BigComplex::from_real(pi_sq_over_6(bits));
        -(&(&inner + &c) + &half_sq)
    } else {
        li2_unit_disc(&z, bits)
    };
    Ok(v.with_prec(out_bits))
}

/// Clausen's integral `Cl₂(θ) = Im Li₂(e^{iθ})`.
pub fn clausen(theta: &Float, ctx: &PrecisionContext) -> Float {
    let bits = ctx.bits() + GUARD_BITS;
    let two_pi = Float::with_val(bits, pi(bits) * 2u32);
    let t = Float::with_val(bits, theta);
    let red = Float::with_val(bits, &t / &two_pi).floor();
    let r = t - red * &two_pi;
    if r.is_zero() {
        return Float::new(ctx.bits());
    }
    let (s, c) = r.sin_cos(Float::new(bits));
    let z = BigComplex::new(c, s);
    let v = li2_bits(&z, bits).expect("unit-circle point off the cut");
    Float::with_val(ctx.bits(), &v.im)
}

/// Continuation of `Cl₂(2πz)` to `m < Re z < m+1`:
/// `−i Li₂(e^{2πiz}) + iπ²(z² − (2m+1)z + m² + m + 1/6)`.
pub fn clausen_cont(z: &BigComplex, m: i64, ctx: &PrecisionContext) -> Result<BigComplex> {
    if !(z.re > m && z.re < m + 1) {
        return Err(Error::Domain(format!("clausen_cont needs {m} < Re z < {}", m + 1)));
    }
    let bits = ctx.bits() + GUARD_BITS;
    let z = z.with_prec(bits);
    let e = exp_two_pi_i(&z, bits);
    let l = li2_bits(&e, bits)?;
    let mut poly = z.square();
    poly -= &z.scale_i64(2 * m + 1);
    let c = Float::with_val(bits, m * m + m) + Float::with_val(bits, 1) / 6u32;
    poly += &BigComplex::from_real(c);
    let p = pi(bits);
    let pi2 = Float::with_val(bits, &p * &p);
    let v = (&poly.scale(&pi2) - &l).mul_i();
    Ok(v.with_prec(ctx.bits()))
}

/// `e^{2πiz}`.
pub fn exp_two_pi_i(z: &BigComplex, bits: u32) -> BigComplex {
    let two_pi = Float::with_val(bits, pi(bits) * 2u32);
    z.scale(&two_pi).mul_i().exp()
}

/// `p_d(z) = (−Li₂(e^{2πiz}) + Li₂(1) + 4π²d)/(2πiz)` and its first two derivatives.
pub fn pd(z: &BigComplex, d: i64, order: u32, ctx: &PrecisionContext) -> Result<BigComplex> {
    if order > 2 {
        return Err(Error::Usage(format!("pd order must be 0, 1 or 2, got {order}")));
    }
    let out = ctx.bits();
    let bits = out + GUARD_BITS;
    let z = z.with_prec(bits);
    if z.is_zero() {
        return Err(Error::Domain("pd is singular at z = 0".into()));
    }
    // vertical cuts (−i∞, n]
    let near = Float::with_val(bits, &z.re - z.re.clone().round()).abs();
    let floor = pow10(bits, -(ctx.decimal_digits() as i64) / 2);
    if z.im <= 0 && near < floor {
        return Err(Error::Branch(format!(
            "pd at {} {:+}i is on a vertical cut",
            z.re.to_f64(),
            z.im.to_f64()
        )));
    }
    let e = exp_two_pi_i(&z, bits);
    let l = li2_bits(&e, bits)?;
    let p = pi(bits);
    let c = Float::with_val(bits, &p * &p) / 6u32 + Float::with_val(bits, &p * &p) * (4 * d);
    let two_pi_i_z = z.scale(&Float::with_val(bits, &p * 2u32)).mul_i();
    let p0 = &(&BigComplex::from_real(c) - &l) / &two_pi_i_z;
    if order == 0 {
        return Ok(p0.with_prec(out));
    }
    let one = BigComplex::one(bits);
    let one_minus = &one - &e;
    let p1 = -(&(&p0 - &one_minus.ln()) / &z);
    if order == 1 {
        return Ok(p1.with_prec(out));
    }
    let ratio = &(&e / &one_minus).scale(&Float::with_val(bits, &p * 2u32)).mul_i();
    let p2 = -(&(&p1.scale_i64(2) + ratio) / &z);
    Ok(p2.with_prec(out))
}
