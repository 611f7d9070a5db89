use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use rug::{Float, Rational};

use super::sine::{sin_pi_rational, sine_product_bits};
use crate::combinatorics::fractions_with_denominator;
use crate::error::{Error, Result};
use crate::numerics::{pow10, BigComplex, PrecisionContext};
use crate::waves::{q_residue, roots_of_unity, simple_pole_residue, ResidueMethod};

const GUARD_BITS: u32 = 64;

/// The Farey classes whose residue sums are tracked separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassId {
    A,
    B,
    C,
    C2,
    C2Star,
    D,
    E,
    FirstWaves,
}

impl ClassId {
    pub fn name(self) -> &'static str {
        match self {
            Self::A => "A",
            Self::B => "B",
            Self::C => "C",
            Self::C2 => "C2",
            Self::C2Star => "C2star",
            Self::D => "D",
            Self::E => "E",
            Self::FirstWaves => "first_waves",
        }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "A" | "a" => Self::A,
            "B" | "b" => Self::B,
            "C" | "c" => Self::C,
            "C2" | "c2" => Self::C2,
            "C2star" | "c2star" | "C2_star" => Self::C2Star,
            "D" | "d" => Self::D,
            "E" | "e" => Self::E,
            "first_waves" => Self::FirstWaves,
            _ => return Err(Error::Parse(format!("unknown class '{s}'"))),
        })
    }
}

/// A real residue sum `Σ Q_{hkσ}(N)` over one class, with the number of fractions summed.
#[derive(Clone, Debug)]
pub struct ClassSum {
    pub class_id: ClassId,
    pub big_n: u64,
    pub sigma: i64,
    pub value: Float,
    pub term_count: u64,
}

/// Number of distinct numerators among `a`, `b`.
fn pair_count(a: u64, b: u64) -> u64 {
    if a == b {
        1
    } else {
        2
    }
}

/// Sum the per-k terms in order of k.
fn ordered_sum(terms: Vec<Result<BigComplex>>, bits: u32) -> Result<BigComplex> {
    let mut acc = BigComplex::zero(bits);
    for t in terms {
        acc += &t?;
    }
    Ok(acc)
}

fn finish(class_id: ClassId, big_n: u64, sigma: i64, value: Float, term_count: u64, ctx: &PrecisionContext) -> ClassSum {
    ClassSum { class_id, big_n, sigma, value: Float::with_val(ctx.bits(), value), term_count }
}

fn lower_bound(kmin: u64, lo_exclusive: Rational) -> u64 {
    // smallest k ≥ kmin with k > lo_exclusive
    let fl = lo_exclusive.floor().numer().to_u64().unwrap_or(0);
    kmin.max(fl + 1)
}

/// `Σ` over `N/2 < k ≤ N`, `k ≥ kmin` of the `𝓐` terms
/// `(2(−1)^k/k²)·e^{(iπ/2)[(−N²−N+4σ)/k + 3N]}/S(1/k, N−k)`; the class sum is the imaginary part.
pub(crate) fn a1_range(big_n: u64, sigma: i64, kmin: u64, bits: u32) -> Result<(Float, u64)> {
    let lo = lower_bound(kmin, Rational::from((big_n, 2)));
    let n = big_n as i64;
    let terms: Vec<Result<BigComplex>> = (lo..=big_n)
        .into_par_iter()
        .map(|k| {
            let ki = k as i64;
            let r = (Rational::from((-n * n - n + 4 * sigma, ki)) + 3 * n) / 2u32;
            let e = BigComplex::exp_i_pi_rational(bits, &r);
            let s = sine_product_bits(&Rational::from((1, ki)), big_n - k, bits)?;
            let sign = if k % 2 == 0 { 2 } else { -2 };
            Ok(e.scale(&Float::with_val(bits, Float::with_val(bits, sign) / s)).div_i64(ki * ki))
        })
        .collect();
    let count = (lo..=big_n).map(|k| if k == 1 { 1 } else { pair_count(1, k - 1) }).sum();
    Ok((ordered_sum(terms, bits)?.im, count))
}

/// `𝓐_1(N,σ) = Σ_{h/k ∈ 𝓐(N)} Q_{hkσ}(N)`.
pub fn sum_a1(big_n: u64, sigma: i64, ctx: &PrecisionContext) -> Result<ClassSum> {
    let (v, c) = a1_range(big_n, sigma, 1, ctx.bits() + GUARD_BITS)?;
    Ok(finish(ClassId::A, big_n, sigma, v, c, ctx))
}

/// `2Re Σ Q_{hkσ}` over the given `k`, one representative numerator per `k`.
fn residue_pairs(big_n: u64, sigma: i64, ks: Vec<(u64, u64)>, bits: u32) -> Result<Float> {
    let sig = BigComplex::from_i64(bits, sigma);
    let terms: Vec<Result<BigComplex>> = ks
        .into_par_iter()
        .map(|(h, k)| {
            let roots = roots_of_unity(k, bits);
            Ok(simple_pole_residue(h, k, &sig, big_n, &roots, bits))
        })
        .collect();
    Ok(Float::with_val(bits, ordered_sum(terms, bits)?.re * 2u32))
}

/// `𝓒_2`: `Re Σ_{k odd, 2N/3 < k ≤ N} (−2/k²)·e^{iπ r_k}/S(2/k, N−k)`.
pub(crate) fn c2_range(big_n: u64, sigma: i64, kmin: u64, bits: u32) -> Result<(Float, u64)> {
    let lo = lower_bound(kmin, Rational::from((2 * big_n, 3)));
    let n = big_n as i64;
    let ks: Vec<u64> = (lo..=big_n).filter(|k| k % 2 == 1 && *k >= 3).collect();
    let terms: Vec<Result<BigComplex>> = ks
        .par_iter()
        .map(|&k| {
            let ki = k as i64;
            // (−2N²/k + 5N − k)/2 − N/k + 4σ/k
            let r = (Rational::from((-2 * n * n, ki)) + 5 * n - ki) / 2u32 + Rational::from((4 * sigma - n, ki));
            let e = BigComplex::exp_i_pi_rational(bits, &r);
            let s = sine_product_bits(&Rational::from((2, ki)), big_n - k, bits)?;
            Ok(e.scale(&Float::with_val(bits, Float::with_val(bits, -2) / s)).div_i64(ki * ki))
        })
        .collect();
    let count = ks.iter().map(|&k| pair_count(2, k - 2)).sum();
    Ok((ordered_sum(terms, bits)?.re, count))
}

/// `𝓒*_2 = 2Re Σ_{k odd, N/2 < k ≤ 2N/3} Q_{2kσ}(N)`.
pub(crate) fn c2star_range(big_n: u64, sigma: i64, kmin: u64, bits: u32) -> Result<(Float, u64)> {
    let lo = lower_bound(kmin, Rational::from((big_n, 2)));
    let ks: Vec<(u64, u64)> = (lo..=big_n)
        .filter(|&k| k % 2 == 1 && k >= 3 && 3 * k <= 2 * big_n)
        .map(|k| (2, k))
        .collect();
    let count = ks.iter().map(|&(_, k)| pair_count(2, k - 2)).sum();
    Ok((residue_pairs(big_n, sigma, ks, bits)?, count))
}

/// `(𝓒_2, 𝓒*_2, 𝓒_1 = 𝓒_2 + 𝓒*_2)`, the sums over `h = 2, k−2` with `k` odd in `(N/2, N]`.
pub fn sum_c(big_n: u64, sigma: i64, ctx: &PrecisionContext) -> Result<(ClassSum, ClassSum, ClassSum)> {
    let bits = ctx.bits() + GUARD_BITS;
    let (c2, n2) = c2_range(big_n, sigma, 1, bits)?;
    let (cs, ns) = c2star_range(big_n, sigma, 1, bits)?;
    let c1 = Float::with_val(bits, &c2 + &cs);
    Ok((
        finish(ClassId::C2, big_n, sigma, c2, n2, ctx),
        finish(ClassId::C2Star, big_n, sigma, cs, ns, ctx),
        finish(ClassId::C, big_n, sigma, c1, n2 + ns, ctx),
    ))
}

/// `𝓓_1 = 2Re Σ_{k odd, N/2 < k ≤ N} Q_{((k−1)/2)kσ}(N)`: closed term formula for odd `N`,
/// generic simple-pole residue for even `N`.
pub(crate) fn d1_range(big_n: u64, sigma: i64, kmin: u64, bits: u32) -> Result<(Float, u64)> {
    let lo = lower_bound(kmin, Rational::from((big_n, 2)));
    let ks: Vec<u64> = (lo..=big_n).filter(|k| k % 2 == 1 && *k >= 3).collect();
    let count = ks.len() as u64 * 2;
    if big_n % 2 == 0 {
        let pairs = ks.into_iter().map(|k| ((k - 1) / 2, k)).collect();
        return Ok((residue_pairs(big_n, sigma, pairs, bits)?, count));
    }
    let n = big_n as i64;
    let terms: Vec<Result<BigComplex>> = ks
        .par_iter()
        .map(|&k| {
            let ki = k as i64;
            // (N²/k + N + 2k)/4 + (N/k + 7)/4 + σ(k−1)/k; the σ phase is that of
            // e^{2πiσh/k} at h = (k−1)/2, which keeps the term equal to Q for every σ
            let r = (Rational::from((n * n + n, ki)) + n + 2 * ki + 7) / 4u32
                + Rational::from((sigma * (ki - 1), ki));
            let e = BigComplex::exp_i_pi_rational(bits, &r);
            let s = sine_product_bits(&Rational::from((ki - 1, 2 * ki)), big_n - k, bits)?;
            Ok(e.scale(&Float::with_val(bits, s.recip())).div_i64(ki * ki))
        })
        .collect();
    Ok((Float::with_val(bits, ordered_sum(terms, bits)?.re * 2u32), count))
}

pub fn sum_d1(big_n: u64, sigma: i64, ctx: &PrecisionContext) -> Result<ClassSum> {
    let (v, c) = d1_range(big_n, sigma, 1, ctx.bits() + GUARD_BITS)?;
    Ok(finish(ClassId::D, big_n, sigma, v, c, ctx))
}

/// `φ(N,k,σ) = (N²+N−4σ)/(4k²) + (1/(2πik)) Σ_{j≤N, k∤j} (πj/k) cot(πj/k)`.
pub fn e_phi(big_n: u64, k: u64, sigma: i64, bits: u32) -> BigComplex {
    let ki = k as i64;
    let cot: Vec<Float> = (0..ki)
        .map(|r| {
            if r == 0 {
                return Float::new(bits);
            }
            let s = sin_pi_rational(r, ki, bits);
            let c = sin_pi_rational(2 * r + ki, 2 * ki, bits);
            c / s
        })
        .collect();
    let mut acc = Float::new(bits);
    for j in 1..=big_n as i64 {
        let r = j % ki;
        if r != 0 {
            acc += Float::with_val(bits, &cot[r as usize] * j);
        }
    }
    // (1/(2πik))·(π/k)·acc = −i·acc/(2k²)
    let im = -acc / Float::with_val(bits, 2 * ki * ki);
    let n = big_n as i64;
    let re = Float::with_val(bits, Rational::from((n * n + n - 4 * sigma, 4 * ki * ki)));
    BigComplex::new(re, im)
}

/// `𝓔_1 = 2Re Σ_{N/3 < k ≤ N/2} Q_{1kσ}(N)` via the double-pole term formula
/// `(1/(2k²))·φ(N,k,σ)·e^{iπ r_k}/S(1/k, N−2k)`.
pub(crate) fn e1_range(big_n: u64, sigma: i64, kmin: u64, bits: u32) -> Result<(Float, u64)> {
    let lo = lower_bound(kmin, Rational::from((big_n, 3)));
    let ks: Vec<u64> = (lo..=big_n / 2).filter(|&k| k >= 2).collect();
    let n = big_n as i64;
    let terms: Vec<Result<BigComplex>> = ks
        .par_iter()
        .map(|&k| {
            let ki = k as i64;
            // −(N²/k − N + 2k)/2 − N/(2k) + 2σ/k
            let r = -(Rational::from((n * n + n, ki)) - n + 2 * ki) / 2u32 + Rational::from((2 * sigma, ki));
            let e = BigComplex::exp_i_pi_rational(bits, &r);
            let s = sine_product_bits(&Rational::from((1, ki)), big_n - 2 * k, bits)?;
            let phi = e_phi(big_n, k, sigma, bits);
            Ok((&e * &phi).scale(&Float::with_val(bits, s.recip())).div_i64(2 * ki * ki))
        })
        .collect();
    let count = ks.iter().map(|&k| pair_count(1, k - 1)).sum();
    Ok((Float::with_val(bits, ordered_sum(terms, bits)?.re * 2u32), count))
}

pub fn sum_e1(big_n: u64, sigma: i64, ctx: &PrecisionContext) -> Result<ClassSum> {
    let (v, c) = e1_range(big_n, sigma, 1, ctx.bits() + GUARD_BITS)?;
    Ok(finish(ClassId::E, big_n, sigma, v, c, ctx))
}

/// True if `h/k` belongs to one of 𝓐, 𝓒, 𝓓, 𝓔.
pub fn in_named_class(h: u64, k: u64, big_n: u64) -> bool {
    let upper = 2 * k > big_n;
    if upper {
        if h == 1 || h == k - 1 {
            return true;
        }
        if k % 2 == 1 && (h == 2 || h == k - 2 || 2 * h + 1 == k || 2 * h == k + 1) {
            return true;
        }
        return false;
    }
    3 * k > big_n && (h == 1 || h == k - 1)
}

/// `Σ Q_{hkσ}(N)` over `𝓑(kmin, N)`: the fractions with `kmin ≤ k ≤ N` in none of 𝓐, 𝓒, 𝓓, 𝓔.
pub(crate) fn b_range(big_n: u64, sigma: i64, kmin: u64, bits: u32, digits: u32) -> Result<(Float, u64)> {
    let sig = BigComplex::from_i64(bits, sigma);
    let wctx = PrecisionContext::new(digits)?;
    let ks: Vec<u64> = (kmin.max(1)..=big_n).collect();
    let parts: Vec<Result<(BigComplex, u64)>> = ks
        .par_iter()
        .map(|&k| {
            let hs: Vec<u64> = fractions_with_denominator(k)
                .into_iter()
                .filter(|&h| !in_named_class(h, k, big_n))
                .collect();
            let mut acc = BigComplex::zero(bits);
            if hs.is_empty() {
                return Ok((acc, 0));
            }
            if 2 * k > big_n {
                let roots = roots_of_unity(k, bits);
                for &h in &hs {
                    acc += &simple_pole_residue(h, k, &sig, big_n, &roots, bits);
                }
            } else {
                for &h in &hs {
                    acc += &q_residue(h, k, &sig, big_n, &wctx, ResidueMethod::Series)?.value.with_prec(bits);
                }
            }
            Ok((acc, hs.len() as u64))
        })
        .collect();
    let mut acc = BigComplex::zero(bits);
    let mut count = 0;
    for p in parts {
        let (v, c) = p?;
        acc += &v;
        count += c;
    }
    let scale = Float::with_val(bits, acc.abs_ref_or_one());
    if Float::with_val(bits, acc.im.abs_ref()) > scale * pow10(bits, -(digits as i64) / 2) {
        return Err(Error::Precision(format!("B-class sum has imaginary part {:e}", acc.im.to_f64())));
    }
    Ok((acc.re, count))
}

pub fn sum_b(big_n: u64, sigma: i64, ctx: &PrecisionContext) -> Result<ClassSum> {
    let (v, c) = b_range(big_n, sigma, 101, ctx.bits() + GUARD_BITS, ctx.total_digits() + 20)?;
    Ok(finish(ClassId::B, big_n, sigma, v, c, ctx))
}

trait AbsOrOne {
    fn abs_ref_or_one(&self) -> Float;
}

impl AbsOrOne for BigComplex {
    fn abs_ref_or_one(&self) -> Float {
        let a = self.abs();
        let one = Float::with_val(a.prec(), 1);
        if a > one {
            a
        } else {
            one
        }
    }
}
