//! Sylvester waves `W_k(N,n)` by several independent formulas.

use rayon::prelude::*;
use rug::ops::Pow;
use rug::Float;

use super::exact::{closed_small, glaisher_w1_exact};
use super::precision::{extra_bits, log10_coeff_exp_majorant, MAJORANT_BITS};
use super::residue::{class_power_sums, exp_series_coeff, q_residue, ResidueMethod};
use crate::combinatorics::{bernoulli_number, fractions_with_denominator};
use crate::error::{Error, Result};
use crate::numerics::{log10_abs, BigComplex, PrecisionContext};

/// Which formula `wave` uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WaveRoute {
    /// The power-sum formula, fastest for every k.
    Auto,
    /// Minus the sum of residues at the fractions with denominator k.
    ResidueSum,
    /// Coefficient extraction from the product of the `N` Apostol series at each root.
    SeriesAtRoots,
    /// Exponential of power sums weighted by Apostol coefficients.
    PowerSums,
    /// Ramanujan-sum closed forms for `N − k ∈ {0,1,2}`.
    ClosedSmall,
    /// Exact Bernoulli-number expansion of the first wave.
    GlaisherW1,
}

impl WaveRoute {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => Self::Auto,
            "residue_sum" => Self::ResidueSum,
            "series_at_roots" => Self::SeriesAtRoots,
            "power_sums" => Self::PowerSums,
            "closed_small" => Self::ClosedSmall,
            "glaisher_w1" => Self::GlaisherW1,
            _ => return Err(Error::Usage(format!("unknown wave route {s:?}"))),
        })
    }
}

/// Taylor coefficients `β_r(ξ)/r!` of `z/(ξe^z − 1)` for r < order.
pub fn apostol_series(xi: &BigComplex, order: usize, bits: u32) -> Vec<BigComplex> {
    let one = BigComplex::one(bits);
    if xi == &one || (xi.im.is_zero() && xi.re == 1) {
        let mut fact = Float::with_val(bits, 1);
        return (0..order)
            .map(|r| {
                if r > 0 {
                    fact *= r as u32;
                }
                let b = Float::with_val(bits, &bernoulli_number(r));
                BigComplex::from_real(b / &fact)
            })
            .collect();
    }
    // z/(ξe^z − 1) = z · 1/D(z), D = (ξ−1) + ξ Σ_{m≥1} z^m/m!
    let d0 = &xi.with_prec(bits) - &one;
    let inv0 = d0.recip();
    let mut d = vec![d0; order.max(1)];
    let mut fact = Float::with_val(bits, 1);
    for (m, dm) in d.iter_mut().enumerate().skip(1) {
        fact *= m as u32;
        *dm = xi.with_prec(bits).scale(&Float::with_val(bits, fact.recip_ref()));
    }
    let mut c = vec![BigComplex::zero(bits); order.max(1)];
    c[0] = inv0.clone();
    for kk in 1..order.saturating_sub(1) {
        let mut acc = BigComplex::zero(bits);
        for i in 1..=kk {
            acc += &(&d[i] * &c[kk - i]);
        }
        c[kk] = -(&acc * &inv0);
    }
    let mut out = vec![BigComplex::zero(bits); order];
    for r in 1..order {
        out[r] = c[r - 1].clone();
    }
    out
}

fn numerators(k: u64) -> Vec<u64> {
    // conjugate roots pair up as h and k−h; keep h ≤ k/2
    fractions_with_denominator(k).into_iter().filter(|&h| 2 * h <= k).collect()
}

fn pair_weight(h: u64, k: u64) -> i64 {
    if 2 * h == k || k == 1 {
        1
    } else {
        2
    }
}

struct PowerSumParts {
    pref: BigComplex,
    exponent: Vec<BigComplex>,
    bound: Vec<Float>,
}

fn power_sum_parts(h: u64, k: u64, big_n: u64, n: i64, pw: &[Vec<Float>], bits: u32) -> PowerSumParts {
    let s = (big_n / k) as usize;
    let rem = big_n - k * s as u64;
    let mut exponent = vec![BigComplex::zero(bits); s];
    let mut bound = vec![Float::new(bits); s];
    let base = Float::with_val(bits, n) + Float::with_val(bits, big_n * (big_n + 1) / 2);
    if s > 1 {
        exponent[1] = BigComplex::from_real(Float::with_val(bits, -&base));
        bound[1] = base.abs();
    }
    for w in 0..k {
        let xi = BigComplex::root_of_unity(bits, (h * w % k) as i64, k as i64);
        let c = apostol_series(&xi, s, bits);
        let row = &pw[w as usize];
        for r in 1..s {
            let t = c[r].scale(&row[r]).div_i64(r as i64);
            exponent[r] -= &t;
            bound[r] += t.abs();
        }
    }
    let mut den = Float::with_val(bits, k);
    den = den.pow(2 * s as u32);
    for i in 2..=s {
        den *= i as u32;
    }
    let mut pd = BigComplex::from_real(den);
    for r in 1..=rem {
        let rho_r = BigComplex::root_of_unity(bits, (h * r % k) as i64, k as i64);
        pd = &pd * &(&BigComplex::one(bits) - &rho_r);
    }
    let hn = -((h as i128 * n as i128).rem_euclid(k as i128)) as i64;
    let mut num = BigComplex::root_of_unity(bits, hn, k as i64);
    if s % 2 == 0 {
        num = -num;
    }
    PowerSumParts {
        pref: &num / &pd,
        exponent,
        bound,
    }
}

fn wave_power_sums(k: u64, big_n: u64, n: i64, ctx: &PrecisionContext) -> Float {
    let s = (big_n / k) as usize;
    let hs = numerators(k);
    let probe_pw = class_power_sums(k, big_n, s, MAJORANT_BITS);
    let mut lm = f64::NEG_INFINITY;
    for &h in &hs {
        let p = power_sum_parts(h, k, big_n, n, &probe_pw, MAJORANT_BITS);
        let l = log10_coeff_exp_majorant(&p.bound, s - 1) + log10_abs(&p.pref.abs());
        lm = lm.max(l);
    }
    let bits = ctx.bits() + extra_bits(lm, s);
    let pw = class_power_sums(k, big_n, s, bits);
    let terms: Vec<Float> = hs
        .par_iter()
        .map(|&h| {
            let p = power_sum_parts(h, k, big_n, n, &pw, bits);
            let c = exp_series_coeff(&p.exponent, s - 1, bits);
            let v = &p.pref * &c;
            v.re * pair_weight(h, k)
        })
        .collect();
    let mut acc = Float::new(bits);
    for t in terms {
        acc += t;
    }
    Float::with_val(ctx.bits(), acc)
}

/// Product of the series `jz/(ρ^j e^{jz} − 1)` and `e^{−nz}`, read at `z^{N−1}`.
fn series_at_root(h: u64, k: u64, big_n: u64, n: i64, bits: u32, majorant: bool) -> (BigComplex, Float) {
    let s = (big_n / k) as usize;
    // every factor with k ∤ j vanishes at 0; strip that z and keep order s
    let mut apost: Vec<Vec<BigComplex>> = Vec::with_capacity(k as usize);
    for w in 0..k {
        let xi = BigComplex::root_of_unity(bits, (h * w % k) as i64, k as i64);
        apost.push(apostol_series(&xi, s + 1, bits));
    }
    let abs_of = |v: &[BigComplex]| -> Vec<BigComplex> {
        v.iter().map(|c| BigComplex::from_real(c.abs())).collect()
    };
    let mut prod = vec![BigComplex::zero(bits); s];
    prod[0] = BigComplex::one(bits);
    // e^{−nz}
    {
        let mut e = vec![BigComplex::one(bits); s];
        for m in 1..s {
            e[m] = e[m - 1].scale_i64(-n).div_i64(m as i64);
        }
        if majorant {
            e = abs_of(&e);
        }
        prod = crate::numerics::mul_coeffs(&prod, &e, s);
    }
    let mut scale = Float::with_val(bits, 1);
    for j in 1..=big_n {
        let w = (j % k) as usize;
        let c = &apost[w];
        let jf = Float::with_val(bits, j);
        let mut jp = Float::with_val(bits, 1);
        let mut f: Vec<BigComplex> = Vec::with_capacity(s);
        if w == 0 {
            for r in 0..s {
                f.push(c[r].scale(&jp));
                jp *= &jf;
            }
        } else {
            // jz/(ξe^{jz}−1) = z · j · Σ c_{r+1} j^r z^r
            scale *= &jf;
            for r in 0..s {
                f.push(c[r + 1].scale(&jp));
                jp *= &jf;
            }
        }
        if majorant {
            f = abs_of(&f);
        }
        prod = crate::numerics::mul_coeffs(&prod, &f, s);
    }
    let v = prod[s - 1].scale(&scale);
    let rho_n = BigComplex::root_of_unity(bits, -((h as i128 * n as i128).rem_euclid(k as i128) as i64), k as i64);
    let out = &v * &rho_n;
    let mag = out.abs();
    (out, mag)
}

fn wave_series_at_roots(k: u64, big_n: u64, n: i64, ctx: &PrecisionContext) -> Float {
    let s = (big_n / k) as usize;
    let hs = numerators(k);
    let mut fact = Float::with_val(MAJORANT_BITS, 1);
    for i in 2..=big_n {
        fact *= i as u32;
    }
    let mut lm = f64::NEG_INFINITY;
    for &h in &hs {
        let (_, mag) = series_at_root(h, k, big_n, n, MAJORANT_BITS, true);
        lm = lm.max(log10_abs(&mag) - log10_abs(&fact));
    }
    let bits = ctx.bits() + extra_bits(lm, big_n as usize);
    let mut fact = Float::with_val(bits, 1);
    for i in 2..=big_n {
        fact *= i as u32;
    }
    let terms: Vec<Float> = hs
        .par_iter()
        .map(|&h| {
            let (v, _) = series_at_root(h, k, big_n, n, bits, false);
            v.re * pair_weight(h, k)
        })
        .collect();
    let _ = s;
    let mut acc = Float::new(bits);
    for t in terms {
        acc += t;
    }
    acc /= &fact;
    if big_n % 2 == 0 {
        acc = -acc;
    }
    Float::with_val(ctx.bits(), acc)
}

fn wave_residue_sum(k: u64, big_n: u64, n: i64, ctx: &PrecisionContext) -> Result<Float> {
    let sigma = BigComplex::from_i64(ctx.bits(), -n);
    let hs = fractions_with_denominator(k);
    let vals: Vec<Result<BigComplex>> = hs
        .par_iter()
        .map(|&h| q_residue(h, k, &sigma, big_n, ctx, ResidueMethod::Auto).map(|r| r.value))
        .collect();
    let mut acc = BigComplex::zero(ctx.bits());
    for v in vals {
        acc -= &v?;
    }
    let mut tol = acc.re.clone().abs().max(&Float::with_val(ctx.bits(), 1));
    tol *= crate::numerics::pow10(ctx.bits(), -((ctx.decimal_digits() / 2) as i64));
    if acc.im.clone().abs() > tol {
        return Err(Error::Precision(format!(
            "residue sum for W_{k}({big_n},{n}) has imaginary part {}",
            acc.im.to_f64()
        )));
    }
    Ok(acc.re)
}

/// `W_k(N,n)` by the requested route.
pub fn wave(k: u64, big_n: u64, n: i64, ctx: &PrecisionContext, route: WaveRoute) -> Result<Float> {
    if k == 0 || k > big_n {
        return Err(Error::Usage(format!("wave needs 1 <= k <= N, got k={k}, N={big_n}")));
    }
    match route {
        WaveRoute::Auto | WaveRoute::PowerSums => Ok(wave_power_sums(k, big_n, n, ctx)),
        WaveRoute::SeriesAtRoots => Ok(wave_series_at_roots(k, big_n, n, ctx)),
        WaveRoute::ResidueSum => wave_residue_sum(k, big_n, n, ctx),
        WaveRoute::ClosedSmall => {
            let q = closed_small(k, big_n, n)?;
            Ok(Float::with_val(ctx.bits(), &q))
        }
        WaveRoute::GlaisherW1 => {
            if k != 1 {
                return Err(Error::Usage("the Bernoulli expansion route covers only k=1".into()));
            }
            let q = glaisher_w1_exact(big_n, n);
            Ok(Float::with_val(ctx.bits(), &q))
        }
    }
}

/// `wave` rerun at doubled precision; fails unless both runs agree to the working digits.
pub fn wave_verified(k: u64, big_n: u64, n: i64, ctx: &PrecisionContext, route: WaveRoute) -> Result<Float> {
    let a = wave(k, big_n, n, ctx, route)?;
    let b = wave(k, big_n, n, &ctx.doubled(), route)?;
    let mut scale = a.clone().abs().max(&Float::with_val(ctx.bits(), 1));
    scale *= crate::numerics::pow10(ctx.bits(), 5 - ctx.decimal_digits() as i64);
    if Float::with_val(ctx.bits(), &a - &b).abs() > scale {
        return Err(Error::Precision(format!(
            "W_{k}({big_n},{n}) changed under precision doubling; retry with --digits {}",
            ctx.decimal_digits() * 2
        )));
    }
    Ok(a)
}

/// `Σ_{k=1}^{K} W_k(N,n)`, summed in order of k.
pub fn waves_sum(big_n: u64, n: i64, kmax: u64, ctx: &PrecisionContext) -> Result<Float> {
    if kmax > big_n {
        return Err(Error::Usage(format!("K={kmax} exceeds N={big_n}")));
    }
    let vals: Vec<Result<Float>> = (1..=kmax)
        .into_par_iter()
        .map(|k| wave(k, big_n, n, ctx, WaveRoute::Auto))
        .collect();
    let mut acc = Float::new(ctx.bits());
    for v in vals {
        acc += v?;
    }
    Ok(acc)
}
