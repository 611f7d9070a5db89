//! Zeros of the continued dilogarithm, the saddle points of `p_d`, and derived constants.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rug::{Float, Rational};

use super::li2::{li2_bits, pd};
use crate::error::{Error, Result};
use crate::numerics::{pi, pow10, BigComplex, PrecisionContext};

const GUARD_BITS: u32 = 32;
const LOW_BITS: u32 = 80;
const MAX_NEWTON: usize = 200;

/// The unique solution `w` of `Li₂(w) + 4π²A + 2πiB log w = 0` off the real cuts.
#[derive(Clone, Debug)]
pub struct DilogZero {
    pub a: i64,
    pub b: i64,
    pub w: BigComplex,
}

/// The zero of `p_d′` in the strip `m − 1/2 < Re z < m + 1/2`.
#[derive(Clone, Debug)]
pub struct SaddlePoint {
    pub m: i64,
    pub d: i64,
    pub z_star: BigComplex,
    pub p_value: BigComplex,
}

/// Growth and oscillation constants of the wave asymptotics.
#[derive(Clone, Debug)]
pub struct WaveConstants {
    pub lambda: Rational,
    pub u: Float,
    pub v: Float,
    pub psi_lambda: Float,
    pub tau_lambda: Float,
    pub w0: BigComplex,
    pub z0: BigComplex,
}

/// Ten-digit starting values for the zeros used by the asymptotics.
const SEEDS: [((i64, i64), (f64, f64)); 3] = [
    ((0, -1), (0.9161978162, -0.1824588972)),
    ((0, -2), (0.9684820460, -0.1095311065)),
    ((1, -3), (-0.4594734813, -0.8485350380)),
];

fn cache() -> &'static Mutex<HashMap<(i64, i64, u32), BigComplex>> {
    static C: OnceLock<Mutex<HashMap<(i64, i64, u32), BigComplex>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

fn in_window(a: i64, b: i64) -> bool {
    b != 0 && -b.abs() < 2 * a && 2 * a <= b.abs()
}

/// `F(w)` and `F′(w)`.
fn eval_f(w: &BigComplex, a: i64, b: i64, bits: u32) -> Result<(BigComplex, BigComplex)> {
    let p = pi(bits);
    let l = li2_bits(w, bits)?;
    let lw = w.ln();
    let two_pi_b = Float::with_val(bits, &p * 2u32) * b;
    let four_pi2_a = Float::with_val(bits, &p * &p) * (4 * a);
    let f = &(&l + &BigComplex::from_real(four_pi2_a)) + &lw.scale(&two_pi_b).mul_i();
    let one = BigComplex::one(bits);
    let num = &BigComplex::new(Float::new(bits), two_pi_b) - &(&one - w).ln();
    Ok((f, &num / w))
}

fn off_cuts(w: &BigComplex) -> bool {
    !(w.im.is_zero() && (w.re <= 0 || w.re >= 1))
}

/// Whether the segment from `a` to `b` passes through `(−∞,0] ∪ [1,∞)`.
fn crosses_cut(a: &BigComplex, b: &BigComplex) -> bool {
    if !off_cuts(b) {
        return true;
    }
    let ai = a.im.to_f64();
    let bi = b.im.to_f64();
    if ai * bi > 0.0 {
        return false;
    }
    let t = ai / (ai - bi);
    let x = a.re.to_f64() + t * (b.re.to_f64() - a.re.to_f64());
    x <= 0.0 || x >= 1.0
}

/// Damped Newton iteration; returns the final point when the step falls below `step_tol`.
fn newton(seed: BigComplex, a: i64, b: i64, bits: u32, step_tol: &Float) -> Result<BigComplex> {
    let mut w = seed.with_prec(bits);
    let (mut f, mut df) = eval_f(&w, a, b, bits)?;
    for _ in 0..MAX_NEWTON {
        let step = &f / &df;
        if !step.is_finite() {
            break;
        }
        let mut scale = Float::with_val(bits, 1);
        let mut accepted = None;
        for _ in 0..40 {
            let cand = &w - &step.scale(&scale);
            if !crosses_cut(&w, &cand) {
                if let Ok((fc, dfc)) = eval_f(&cand, a, b, bits) {
                    if fc.abs() <= f.abs() || step.abs() * &scale < *step_tol {
                        accepted = Some((cand, fc, dfc));
                        break;
                    }
                }
            }
            scale /= 2u32;
        }
        let Some((cand, fc, dfc)) = accepted else { break };
        let moved = (&cand - &w).abs();
        w = cand;
        f = fc;
        df = dfc;
        if moved < *step_tol {
            return Ok(w);
        }
    }
    Err(Error::Convergence(format!("Newton iteration for w({a},{b}) did not converge")))
}

fn low_precision_zero(a: i64, b: i64) -> Result<BigComplex> {
    let tol = pow10(LOW_BITS, -18);
    let mut seeds = Vec::new();
    for ((sa, sb), (re, im)) in SEEDS {
        if sa == a && sb == b {
            seeds.push(BigComplex::from_f64(LOW_BITS, re, im));
        } else if sa == a && sb == -b {
            seeds.push(BigComplex::from_f64(LOW_BITS, re, -im));
        }
    }
    // e^{2πi(A + 0.1iB)/B}
    let ang = 2.0 * std::f64::consts::PI * a as f64 / b as f64;
    let r = (-0.2 * std::f64::consts::PI).exp();
    seeds.push(BigComplex::from_f64(LOW_BITS, r * ang.cos(), r * ang.sin()));
    for s in seeds {
        if let Ok(w) = newton(s, a, b, LOW_BITS, &tol) {
            if is_root(&w, a, b, LOW_BITS, -15) {
                return Ok(w);
            }
        }
    }
    // coarse grid over 0.1 < |w| < 3
    let mut grid: Vec<(f64, BigComplex)> = Vec::new();
    for i in 0..48 {
        let rad = 0.1 * 30f64.powf((i as f64 + 0.5) / 48.0);
        for j in 0..96 {
            let th = std::f64::consts::PI * (2.0 * (j as f64 + 0.5) / 96.0 - 1.0);
            let w = BigComplex::from_f64(LOW_BITS, rad * th.cos(), rad * th.sin());
            if let Ok((f, _)) = eval_f(&w, a, b, LOW_BITS) {
                grid.push((f.abs().to_f64(), w));
            }
        }
    }
    grid.sort_by(|x, y| x.0.total_cmp(&y.0));
    for (_, s) in grid.into_iter().take(24) {
        if let Ok(w) = newton(s, a, b, LOW_BITS, &tol) {
            if is_root(&w, a, b, LOW_BITS, -15) {
                return Ok(w);
            }
        }
    }
    Err(Error::Convergence(format!("no starting point for w({a},{b}) converged")))
}

fn is_root(w: &BigComplex, a: i64, b: i64, bits: u32, log10_tol: i64) -> bool {
    match eval_f(w, a, b, bits) {
        Ok((f, _)) => f.abs() < pow10(bits, log10_tol),
        Err(_) => false,
    }
}

/// `w(A,B)`, solved by Newton's method and cached per precision.
pub fn dilog_zero(a: i64, b: i64, ctx: &PrecisionContext) -> Result<DilogZero> {
    if !in_window(a, b) {
        return Err(Error::NoZero(a, b));
    }
    let out = ctx.bits();
    if let Some(w) = cache().lock().unwrap().get(&(a, b, out)) {
        return Ok(DilogZero { a, b, w: w.clone() });
    }
    let bits = out + GUARD_BITS;
    let seed = low_precision_zero(a, b)?;
    let digits = ctx.decimal_digits() as i64;
    let tol = pow10(bits, -(ctx.total_digits() as i64) - 2);
    let w = newton(seed, a, b, bits, &tol)?;
    if !is_root(&w, a, b, bits, -digits + 8) {
        return Err(Error::Convergence(format!("w({a},{b}) residual above tolerance")));
    }
    let w = w.with_prec(out);
    cache().lock().unwrap().insert((a, b, out), w.clone());
    Ok(DilogZero { a, b, w })
}

/// `z* = m + log(1 − w(d,−m))/(2πi)`, with the defining properties checked.
pub fn saddle_point(m: i64, d: i64, ctx: &PrecisionContext) -> Result<SaddlePoint> {
    if m == 0 {
        return Err(Error::NoZero(d, 0));
    }
    let zero = dilog_zero(d, -m, ctx)?;
    let out = ctx.bits();
    let bits = out + GUARD_BITS;
    let w = zero.w.with_prec(bits);
    let one = BigComplex::one(bits);
    let two_pi = Float::with_val(bits, pi(bits) * 2u32);
    let l = (&one - &w).ln();
    // log(·)/(2πi) = −i·log(·)/(2π)
    let shift = (-l.mul_i()).scale(&Float::with_val(bits, two_pi.recip_ref()));
    let z = &BigComplex::from_i64(bits, m) + &shift;
    let wctx = PrecisionContext::with_guard(ctx.decimal_digits(), ctx.guard_digits() + 10)?;
    let p1 = pd(&z, d, 1, &wctx)?;
    let digits = ctx.decimal_digits() as i64;
    if p1.abs() > pow10(bits, -digits + 10) {
        return Err(Error::SelfCheck(format!("|p_d'(z*)| = {:e} for m={m}, d={d}", p1.abs().to_f64())));
    }
    let p0 = pd(&z, d, 0, &wctx)?;
    let lw = w.ln();
    if (&p0 - &lw).abs() > pow10(bits, -digits + 10) {
        return Err(Error::SelfCheck(format!("p_d(z*) != log w for m={m}, d={d}")));
    }
    let re = z.re.to_f64();
    if !(re > m as f64 - 0.5 && re < m as f64 + 0.5) {
        return Err(Error::SelfCheck(format!("Re z* = {re} outside the strip around {m}")));
    }
    Ok(SaddlePoint { m, d, z_star: z.with_prec(out), p_value: p0.with_prec(out) })
}

/// Reduces an angle to `(−π, π]`.
pub fn reduce_angle(x: &Float) -> Float {
    let bits = x.prec();
    let p = pi(bits);
    let two_pi = Float::with_val(bits, &p * 2u32);
    let k = Float::with_val(bits, (x - Float::with_val(bits, &p)) / &two_pi).ceil();
    let mut r = Float::with_val(bits, x - k * &two_pi);
    if r <= -p.clone() {
        r += &two_pi;
    }
    r
}

/// `U = −log|w₀|`, `V = arg(1/w₀)`, `ψ_λ = 2|z₀|e^{π Im z₀ (1+2λ)}` and
/// `τ_λ = arg(i z₀) − π Re z₀ (1+2λ)` reduced to `(−π, π]`.
pub fn wave_constants(lambda: &Rational, ctx: &PrecisionContext) -> Result<WaveConstants> {
    let bits = ctx.bits();
    let w0 = dilog_zero(0, -1, ctx)?.w;
    let z0 = saddle_point(1, 0, ctx)?.z_star;
    let u = -Float::with_val(bits, w0.abs().ln());
    let v = w0.recip().arg();
    let p = pi(bits);
    let factor = Float::with_val(bits, Rational::from(lambda * 2u32)) + 1u32;
    let growth = Float::with_val(bits, &p * &z0.im) * &factor;
    let psi = Float::with_val(bits, z0.abs() * 2u32) * growth.exp();
    let phase = z0.mul_i().arg() - Float::with_val(bits, &p * &z0.re) * &factor;
    Ok(WaveConstants {
        lambda: lambda.clone(),
        u,
        v,
        psi_lambda: psi,
        tau_lambda: reduce_angle(&phase),
        w0,
        z0,
    })
}
