//! The generating function `Q(z;N,σ)` and its residues at Farey points.

use rug::ops::Pow;
use rug::Float;

use super::precision::{extra_bits, log10_coeff_exp_majorant, MAJORANT_BITS};
use crate::combinatorics::{bernoulli_number, gcd};
use crate::error::{Error, Result};
use crate::numerics::{pi, BigComplex, PrecisionContext};

/// `2πi` times the residue of `Q(z;N,σ)` at `h/k`.
#[derive(Debug, Clone, PartialEq)]
pub struct QResidue {
    pub h: u64,
    pub k: u64,
    pub sigma: BigComplex,
    pub big_n: u64,
    pub value: BigComplex,
}

/// How `q_residue` evaluates the residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidueMethod {
    /// Closed form when the pole is simple, series otherwise.
    Auto,
    /// `e^{2πiσh/k}/(−k·Π_{j≠k}(1−e^{2πijh/k}))`, simple poles only.
    SimpleClosed,
    /// Laurent expansion at `h/k` via the exponential of a log-sum.
    Series,
    /// Laurent expansion by multiplying all `N` factor series directly (slow oracle).
    Product,
}

/// `e^{2πi r/k}` for r = 0..k.
pub fn roots_of_unity(k: u64, bits: u32) -> Vec<BigComplex> {
    (0..k).map(|r| BigComplex::root_of_unity(bits, r as i64, k as i64)).collect()
}

/// `2πi` at the given precision.
pub fn two_pi_i(bits: u32) -> BigComplex {
    let mut t = pi(bits);
    t *= 2;
    BigComplex::new(Float::new(bits), t)
}

/// Integer value of `σ` if it is a real integer that fits in an `i64`.
pub fn sigma_as_integer(sigma: &BigComplex) -> Option<i64> {
    if !sigma.im.is_zero() || !sigma.re.is_integer() {
        return None;
    }
    sigma.re.to_integer().and_then(|i| i.to_i64())
}

/// `e^{2πiσ·a/b}`, reduced exactly when `σ` is an integer.
pub fn exp_two_pi_i_sigma(sigma: &BigComplex, a: i64, b: i64, bits: u32) -> BigComplex {
    if let Some(s) = sigma_as_integer(sigma) {
        let num = (s as i128 * a as i128).rem_euclid(b as i128) as i64;
        return BigComplex::root_of_unity(bits, num, b);
    }
    let x = sigma.with_prec(bits).scale_i64(a).div_i64(b);
    (&two_pi_i(bits) * &x).exp()
}

/// Direct evaluation of `Q(z;N,σ) = e^{2πiσz}/Π_{j≤N}(1−e^{2πijz})`.
pub fn q_eval(z: &BigComplex, big_n: u64, sigma: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex> {
    let bits = ctx.bits();
    let z = z.with_prec(bits);
    let tpi = two_pi_i(bits);
    let e1 = (&tpi * &z).exp();
    let floor = ctx.epsilon().sqrt();
    let mut ej = BigComplex::one(bits);
    let mut den = BigComplex::one(bits);
    for j in 1..=big_n {
        ej = &ej * &e1;
        let f = &BigComplex::one(bits) - &ej;
        if f.abs() < floor {
            return Err(Error::NearPole(format!("1 - e^(2πi·{j}·z) vanishes to working precision")));
        }
        den = &den * &f;
    }
    let num = (&(&tpi * &sigma.with_prec(bits)) * &z).exp();
    (&num / &den).checked()
}

fn validate(h: u64, k: u64, big_n: u64) -> Result<()> {
    if k == 0 || k > big_n {
        return Err(Error::Domain(format!("denominator k={k} must satisfy 1 <= k <= N={big_n}")));
    }
    if h >= k.max(1) && !(h == 0 && k == 1) {
        return Err(Error::Domain(format!("numerator h={h} must satisfy 0 <= h < k={k}")));
    }
    if gcd(h as i64, k as i64) != 1 {
        return Err(Error::Domain(format!("{h}/{k} is not reduced")));
    }
    Ok(())
}

/// `Q_{hkσ}(N)`, the residue of `Q` at `h/k` times `2πi`.
pub fn q_residue(
    h: u64,
    k: u64,
    sigma: &BigComplex,
    big_n: u64,
    ctx: &PrecisionContext,
    method: ResidueMethod,
) -> Result<QResidue> {
    validate(h, k, big_n)?;
    let s = big_n / k;
    let method = match method {
        ResidueMethod::Auto if s == 1 => ResidueMethod::SimpleClosed,
        ResidueMethod::Auto => ResidueMethod::Series,
        m => m,
    };
    let value = match method {
        ResidueMethod::SimpleClosed => {
            if s != 1 {
                return Err(Error::Usage(format!("closed form needs a simple pole, but floor(N/k)={s}")));
            }
            let roots = roots_of_unity(k, ctx.bits());
            simple_pole_residue(h, k, sigma, big_n, &roots, ctx.bits())
        }
        ResidueMethod::Series => residue_series(h, k, sigma, big_n, ctx)?,
        ResidueMethod::Product => residue_product(h, k, sigma, big_n, ctx)?,
        ResidueMethod::Auto => unreachable!(),
    };
    Ok(QResidue {
        h,
        k,
        sigma: sigma.clone(),
        big_n,
        value: value.with_prec(ctx.bits()),
    })
}

/// Simple-pole residue using a precomputed table of `e^{2πir/k}`.
pub fn simple_pole_residue(
    h: u64,
    k: u64,
    sigma: &BigComplex,
    big_n: u64,
    roots: &[BigComplex],
    bits: u32,
) -> BigComplex {
    let mut den = BigComplex::one(bits);
    for j in 1..=big_n {
        if j == k {
            continue;
        }
        let r = &roots[((j * h) % k) as usize];
        den = &den * &(&BigComplex::one(bits) - r);
    }
    den = den.scale_i64(-(k as i64));
    &exp_two_pi_i_sigma(sigma, h as i64, k as i64, bits) / &den
}

/// Coefficients `m ≥ 1` of `log((e^u − 1)/u) = u/2 + Σ B_{2r} u^{2r}/(2r(2r)!)`.
fn log_expm1_over_u(order: usize, bits: u32) -> Vec<Float> {
    let mut out = vec![Float::new(bits); order];
    if order > 1 {
        out[1] = Float::with_val(bits, 0.5);
    }
    let mut fact = rug::Integer::from(1);
    for m in 2..order {
        fact *= m as u32;
        if m % 2 == 0 {
            let b = bernoulli_number(m);
            let mut v = Float::with_val(bits, &b);
            v /= Float::with_val(bits, &fact);
            v /= m as u32;
            out[m] = v;
        }
    }
    out
}

/// Coefficients `m ≥ 1` of `log(1 − ξe^u) − log(1 − ξ)` for `ξ ≠ 1`.
fn log_one_minus_xi_exp(xi: &BigComplex, order: usize, bits: u32) -> Vec<BigComplex> {
    // a(u) = (1−ξ) − ξ Σ u^m/m!; log a via b_k = (k a_k − Σ_{i<k} i b_i a_{k−i})/(k a_0)
    let a0 = &BigComplex::one(bits) - xi;
    let inv0 = a0.recip();
    let mut a = vec![a0; order];
    let mut fact = Float::with_val(bits, 1);
    for (m, am) in a.iter_mut().enumerate().skip(1) {
        fact *= m as u32;
        *am = -&xi.scale(&Float::with_val(bits, fact.recip_ref()));
    }
    let mut b = vec![BigComplex::zero(bits); order];
    for kk in 1..order {
        let mut acc = a[kk].scale_i64(kk as i64);
        for i in 1..kk {
            acc -= &(&b[i] * &a[kk - i]).scale_i64(i as i64);
        }
        b[kk] = (&acc * &inv0).div_i64(kk as i64);
    }
    b
}

/// Power sums `P[w][m] = Σ_{j ≤ N, j ≡ w (mod k)} j^m` for m < order, as floats.
pub fn class_power_sums(k: u64, big_n: u64, order: usize, bits: u32) -> Vec<Vec<Float>> {
    let mut out = vec![vec![Float::new(bits); order]; k as usize];
    for j in 1..=big_n {
        let row = &mut out[(j % k) as usize];
        let mut pw = Float::with_val(bits, 1);
        for slot in row.iter_mut() {
            *slot += &pw;
            pw *= j;
        }
    }
    out
}

struct ResidueParts {
    /// constant prefactor multiplying [t^{s−1}] exp(E)
    pref: BigComplex,
    /// E_1..E_{s−1} (index 0 unused)
    exponent: Vec<BigComplex>,
    /// termwise absolute bound for each E_m
    exponent_bound: Vec<Float>,
}

fn residue_parts(h: u64, k: u64, sigma: &BigComplex, big_n: u64, bits: u32) -> ResidueParts {
    let s = (big_n / k) as usize;
    let tpi = two_pi_i(bits);
    let pw = class_power_sums(k, big_n, s, bits);
    let sig = sigma.with_prec(bits);
    let mut exponent = vec![BigComplex::zero(bits); s];
    let mut bound = vec![Float::new(bits); s];
    if s > 1 {
        exponent[1] = &tpi * &sig;
        bound[1] = exponent[1].abs();
    }
    // (2πi)^m
    let mut tp = vec![BigComplex::one(bits); s];
    for m in 1..s {
        tp[m] = &tp[m - 1] * &tpi;
    }
    let two_pi = tpi.im.clone();
    let mut pref_den = BigComplex::one(bits);
    for w in 0..k {
        let count = if w == 0 { s as u64 } else if w <= big_n { (big_n - w) / k + 1 } else { 0 };
        if count == 0 {
            continue;
        }
        let row = &pw[w as usize];
        if w == 0 {
            let l = log_expm1_over_u(s, bits);
            for m in 1..s {
                let t = tp[m].scale(&l[m]).scale(&row[m]);
                exponent[m] -= &t;
                let mut b = Float::with_val(bits, l[m].abs_ref());
                b *= &row[m];
                b *= Float::with_val(bits, two_pi.clone().pow(m as u32));
                bound[m] += &b;
            }
            continue;
        }
        let xi = BigComplex::root_of_unity(bits, (h * w % k) as i64, k as i64);
        let one_minus = &BigComplex::one(bits) - &xi;
        pref_den = &pref_den * &one_minus.powi(count as i64);
        let l = log_one_minus_xi_exp(&xi, s, bits);
        for m in 1..s {
            let t = (&tp[m] * &l[m]).scale(&row[m]);
            exponent[m] -= &t;
            let mut b = l[m].abs();
            b *= &row[m];
            b *= Float::with_val(bits, two_pi.clone().pow(m as u32));
            bound[m] += &b;
        }
    }
    // Π_{k | j ≤ N} (−2πij) = (−2πi k)^s s!
    let mut fact = Float::with_val(bits, 1);
    for i in 2..=s {
        fact *= i as u32;
    }
    let vanishing = (-&tpi.scale_i64(k as i64)).powi(s as i64).scale(&fact);
    pref_den = &pref_den * &vanishing;
    let num = &tpi * &exp_two_pi_i_sigma(sigma, h as i64, k as i64, bits);
    ResidueParts {
        pref: &num / &pref_den,
        exponent,
        exponent_bound: bound,
    }
}

/// `[t^{n}] exp(Σ_{m≥1} e_m t^m)` by the standard recurrence.
pub fn exp_series_coeff(e: &[BigComplex], n: usize, bits: u32) -> BigComplex {
    let mut b: Vec<BigComplex> = Vec::with_capacity(n + 1);
    b.push(BigComplex::one(bits));
    for kk in 1..=n {
        let mut acc = BigComplex::zero(bits);
        for i in 1..=kk.min(e.len() - 1) {
            if e[i].is_zero() {
                continue;
            }
            acc += &(&e[i] * &b[kk - i]).scale_i64(i as i64);
        }
        b.push(acc.div_i64(kk as i64));
    }
    b.swap_remove(n)
}

fn residue_series(h: u64, k: u64, sigma: &BigComplex, big_n: u64, ctx: &PrecisionContext) -> Result<BigComplex> {
    let s = (big_n / k) as usize;
    let probe = residue_parts(h, k, sigma, big_n, MAJORANT_BITS);
    let lm = log10_coeff_exp_majorant(&probe.exponent_bound, s - 1) + crate::numerics::log10_abs(&probe.pref.abs());
    let bits = ctx.bits() + extra_bits(lm, s);
    let parts = residue_parts(h, k, sigma, big_n, bits);
    let c = exp_series_coeff(&parts.exponent, s - 1, bits);
    Ok(&parts.pref * &c)
}

/// Multiply all `N` factor series at `h/k + t` and read off the residue (independent oracle).
fn residue_product(h: u64, k: u64, sigma: &BigComplex, big_n: u64, ctx: &PrecisionContext) -> Result<BigComplex> {
    use crate::numerics::TruncatedSeries;
    let s = (big_n / k) as usize;
    let extra = (0.7 * big_n as f64 + 20.0 + 0.5 * s as f64 * (1.0 + sigma.abs().to_f64().abs()).log10()) as u32;
    let bits = ctx.with_extra_digits(extra).bits();
    let zero = BigComplex::zero(bits);
    let tpi = two_pi_i(bits);
    let sig = sigma.with_prec(bits);
    // e^{2πiσ t}
    let num = TruncatedSeries::new(zero.clone(), {
        let mut c = vec![BigComplex::zero(bits); s];
        if s > 1 {
            c[1] = &tpi * &sig;
        }
        c
    })?
    .exp();
    let mut den = TruncatedSeries::constant(&zero, BigComplex::one(bits), s);
    for j in 1..=big_n {
        // e^{2πij t} coefficients
        let a = tpi.scale_i64(j as i64);
        let mut e = vec![BigComplex::one(bits); s + 1];
        for m in 1..=s {
            e[m] = (&e[m - 1] * &a).div_i64(m as i64);
        }
        let factor = if (j * h) % k == 0 && j % k == 0 {
            // (1 − e^{2πijt})/t
            e[1..=s].iter().map(|c| -c).collect::<Vec<_>>()
        } else {
            let rho = BigComplex::root_of_unity(bits, ((j * h) % k) as i64, k as i64);
            let mut c: Vec<BigComplex> = e[..s].iter().map(|c| -&(&rho * c)).collect();
            c[0] = &c[0] + &BigComplex::one(bits);
            c
        };
        den = den.mul(&TruncatedSeries::new(zero.clone(), factor)?)?;
    }
    let g = num.mul(&den.recip()?)?;
    let pre = &tpi * &exp_two_pi_i_sigma(sigma, h as i64, k as i64, bits);
    Ok(&pre * g.coeff(s - 1))
}
