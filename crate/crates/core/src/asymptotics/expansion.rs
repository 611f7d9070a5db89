use std::str::FromStr;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::aux::{phi_star_series, u_list, UKind};
use super::bell::{alpha, gamma_half, SeriesPair};
use super::local::Local;
use super::saddle::{amplitude_local, phase_local, Amplitude, Phase};
use crate::dilog::{dilog_zero, saddle_point, wave_constants, DilogZero};
use crate::error::{Error, Result};
use crate::numerics::{pi, pow10, BigComplex, PrecisionContext, TruncatedSeries};

const GUARD_BITS: u32 = 64;
const GUARD_DIGITS: u32 = 10;

/// The expansion families of the wave and class-sum asymptotics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    C,
    CStar,
    DOdd,
    DEven,
    E,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "a" | "A" => Self::A,
            "c" | "C" => Self::C,
            "c_star" | "C_star" | "cstar" => Self::CStar,
            "d_odd" | "D_odd" => Self::DOdd,
            "d_even" | "D_even" => Self::DEven,
            "e" | "E" => Self::E,
            _ => return Err(Error::Parse(format!("unknown expansion family '{s}'"))),
        })
    }
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Self::A => "a",
            Self::C => "c",
            Self::CStar => "c_star",
            Self::DOdd => "d_odd",
            Self::DEven => "d_even",
            Self::E => "e",
        }
    }

    /// The family of `D_1` matching the parity of `N`.
    pub fn d_for(big_n: u64) -> Self {
        if big_n % 2 == 1 {
            Self::DOdd
        } else {
            Self::DEven
        }
    }

    /// `(m, d)` of the saddle, the phase, and `(A, B)` of the base zero.
    fn layout(self) -> ((i64, i64), Phase, (i64, i64), Scale) {
        match self {
            Self::A => ((1, 0), Phase::P, (0, -1), Scale::Full),
            Self::C | Self::E => ((2, 0), Phase::P, (0, -2), Scale::Full),
            Self::CStar => ((3, 1), Phase::P1, (1, -3), Scale::Full),
            Self::DOdd | Self::DEven => ((1, 0), Phase::PHalf, (0, -1), Scale::Half),
        }
    }
}

/// Whether the base zero is raised to `−N` or `−N/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scale {
    Full,
    Half,
}

/// The coefficients `coeffs[t]` of `Re[w^{−N·scale}/N² Σ_t coeffs[t]/N^t]`.
#[derive(Clone, Debug)]
pub struct ExpansionCoeffs {
    pub family: Family,
    pub lambda: Rational,
    pub coeffs: Vec<BigComplex>,
    pub base_zero: DilogZero,
    pub scale: Scale,
}

/// `Σ_{s≤j} Γ(s+½)·α_{2s}(amp·u_{j−s})` with `u` supplied per index.
fn gamma_alpha_sum(phase: &TruncatedSeries, amp: &TruncatedSeries, u: &[TruncatedSeries], j: usize) -> Result<BigComplex> {
    let bits = amp.prec();
    let mut acc = BigComplex::zero(bits);
    for s in 0..=j {
        let sp = SeriesPair::new(phase.clone(), amp.mul(&u[j - s])?, 2)?;
        acc += &alpha(2 * s, &sp)?.scale(&gamma_half(s, bits));
    }
    Ok(acc)
}

fn binomial(n: usize, k: usize) -> Integer {
    Integer::from(Integer::binomial_u(n as u32, k as u32))
}

/// `Σ_{j≤t} r^{t−j}·C(t+1, j+1)·inner[j]`, re-expanding a series in `1/(N + shift)`
/// as one in `1/N`, where `r = −shift`.
fn shift_resum(inner: &[BigComplex], t: usize, r: &Rational) -> BigComplex {
    let bits = inner[0].prec();
    let mut acc = BigComplex::zero(bits);
    for (j, v) in inner.iter().enumerate().take(t + 1) {
        let w = Rational::from(r.clone().pow((t - j) as i32)) * binomial(t + 1, j + 1);
        acc += &v.scale_rational(&w);
    }
    acc
}

/// The first `m` expansion coefficients of a family.
pub fn expansion_coeffs(family: Family, lambda: &Rational, m: usize, ctx: &PrecisionContext) -> Result<ExpansionCoeffs> {
    if m == 0 {
        return Err(Error::Usage("at least one expansion coefficient is required".into()));
    }
    let wctx = ctx.with_extra_digits(GUARD_DIGITS);
    let bits = wctx.bits() + GUARD_BITS;
    let ((sm, sd), phase_kind, (za, zb), scale) = family.layout();
    let sp = saddle_point(sm, sd, &wctx)?;
    let base = dilog_zero(za, zb, &wctx)?;
    let order = 2 * m + 6;
    let phase = phase_local(phase_kind, &sp, order, bits, wctx.decimal_digits())?;
    let loc = Local::new(&sp.z_star, order, bits);
    let jmax = m - 1;
    let i = BigComplex::i(bits);
    let coeffs: Vec<BigComplex> = match family {
        Family::A => {
            let amp = amplitude_local(Amplitude::FA, lambda, &loc)?;
            let u = u_list(&loc, UKind::Plain, &Rational::new(), jmax)?;
            let k = i.scale_i64(-4);
            (0..m).map(|t| Ok(&k * &gamma_alpha_sum(&phase, &amp, &u, t)?)).collect::<Result<_>>()?
        }
        Family::C => {
            let amp = amplitude_local(Amplitude::FC, lambda, &loc)?;
            let u = u_list(&loc, UKind::Plain, &Rational::new(), jmax)?;
            (0..m).map(|t| gamma_alpha_sum(&phase, &amp, &u, t)).collect::<Result<_>>()?
        }
        Family::CStar => {
            let amp = amplitude_local(Amplitude::FCStar, lambda, &loc)?.scale(&i);
            let sigma = Rational::from(lambda / 2u32);
            let u = u_list(&loc, UKind::Star, &sigma, jmax)?;
            let inner: Vec<BigComplex> = (0..m).map(|j| gamma_alpha_sum(&phase, &amp, &u, j)).collect::<Result<_>>()?;
            let pre = base.w.with_prec(bits).ln().scale_rational(&Rational::from((-1, 2))).exp().div_i64(2);
            let r = Rational::from((-1, 2));
            (0..m).map(|t| &pre * &shift_resum(&inner, t, &r)).collect()
        }
        Family::DOdd => {
            let amp = amplitude_local(Amplitude::FD, lambda, &loc)?;
            let u = u_list(&loc, UKind::D, &Rational::new(), jmax)?;
            (0..m)
                .map(|t| Ok(gamma_alpha_sum(&phase, &amp, &u, t)?.scale_i64(-2)))
                .collect::<Result<_>>()?
        }
        Family::DEven => {
            let amp = amplitude_local(Amplitude::FDStar, lambda, &loc)?;
            let u = u_list(&loc, UKind::D, lambda, jmax)?;
            let inner: Vec<BigComplex> = (0..m).map(|j| gamma_alpha_sum(&phase, &amp, &u, j)).collect::<Result<_>>()?;
            let pre = base.w.with_prec(bits).ln().scale_rational(&Rational::from((-1, 2))).exp().scale_i64(-2);
            let r = Rational::from(-1);
            (0..m).map(|t| &pre * &shift_resum(&inner, t, &r)).collect()
        }
        Family::E => {
            let amp = amplitude_local(Amplitude::FC, lambda, &loc)?;
            let u = u_list(&loc, UKind::Plain, &Rational::new(), jmax)?;
            let phis: Vec<TruncatedSeries> = (0..m).map(|k| phi_star_series(&loc, k, lambda)).collect::<Result<_>>()?;
            // v_j = Σ_k φ*_k·u_{j−k}
            let mut v = Vec::with_capacity(m);
            for j in 0..m {
                let mut acc = loc.zero();
                for k in 0..=j {
                    acc = acc.add(&phis[k].mul(&u[j - k])?)?;
                }
                v.push(acc);
            }
            (0..m)
                .map(|t| Ok(gamma_alpha_sum(&phase, &amp, &v, t)?.scale_i64(2)))
                .collect::<Result<_>>()?
        }
    };
    if family == Family::A {
        check_closed(&coeffs, lambda, &wctx, ctx)?;
    }
    Ok(ExpansionCoeffs {
        family,
        lambda: lambda.clone(),
        coeffs: coeffs.into_iter().map(|c| c.with_prec(ctx.bits())).collect(),
        base_zero: DilogZero { a: base.a, b: base.b, w: base.w.with_prec(ctx.bits()) },
        scale,
    })
}

fn check_closed(coeffs: &[BigComplex], lambda: &Rational, wctx: &PrecisionContext, ctx: &PrecisionContext) -> Result<()> {
    let tol = pow10(wctx.bits(), -(ctx.decimal_digits() as i64) / 2);
    let a0 = closed_a0(lambda, wctx)?;
    if coeffs[0].rel_diff(&a0) > tol {
        return Err(Error::SelfCheck("a_0 disagrees with its closed form".into()));
    }
    if coeffs.len() > 1 {
        let a1 = closed_a1(lambda, wctx)?;
        if coeffs[1].rel_diff(&a1) > tol {
            return Err(Error::SelfCheck("a_1 disagrees with its closed form".into()));
        }
    }
    Ok(())
}

/// `a_0(λ) = 2 z_0 e^{−πi z_0 (1+2λ)}`.
pub fn closed_a0(lambda: &Rational, ctx: &PrecisionContext) -> Result<BigComplex> {
    let bits = ctx.bits();
    let z0 = saddle_point(1, 0, ctx)?.z_star;
    let f = Rational::from(lambda * 2u32) + 1u32;
    let e = (-z0.scale_rational(&f).scale(&pi(bits)).mul_i()).exp();
    Ok(&z0.scale_i64(2) * &e)
}

/// `a_1(λ) = −w_0/(πi e^{πi z_0(3+2λ)})·((2πiz_0)²(6λ²+6λ+1)/12 − 2πiz_0(2λ+1) + 1)`.
pub fn closed_a1(lambda: &Rational, ctx: &PrecisionContext) -> Result<BigComplex> {
    let bits = ctx.bits();
    let z0 = saddle_point(1, 0, ctx)?.z_star;
    let w0 = dilog_zero(0, -1, ctx)?.w;
    let p = pi(bits);
    let two_pi_i_z = z0.scale(&Float::with_val(bits, &p * 2u32)).mul_i();
    let quad = Rational::from(lambda * lambda) * 6u32 + Rational::from(lambda * 6u32) + 1u32;
    let mut bracket = two_pi_i_z.square().scale_rational(&Rational::from(quad / 12u32));
    bracket -= &two_pi_i_z.scale_rational(&(Rational::from(lambda * 2u32) + 1u32));
    bracket += &BigComplex::one(bits);
    let e = z0.scale_rational(&(Rational::from(lambda * 2u32) + 3u32)).scale(&p).mul_i().exp();
    let den = &e.scale(&p).mul_i() * &BigComplex::one(bits);
    Ok(-(&(&w0 / &den) * &bracket))
}

/// `Re[w^{−N·scale}/N² · Σ_t coeffs[t]/N^t]`.
pub fn expansion_eval(ec: &ExpansionCoeffs, big_n: u64, ctx: &PrecisionContext) -> Result<Float> {
    if big_n == 0 {
        return Err(Error::Usage("N must be positive".into()));
    }
    match (ec.family, big_n % 2) {
        (Family::DOdd, 0) => return Err(Error::Usage("d_odd coefficients need odd N".into())),
        (Family::DEven, 1) => return Err(Error::Usage("d_even coefficients need even N".into())),
        _ => {}
    }
    let bits = ctx.bits() + GUARD_BITS;
    let expo = match ec.scale {
        Scale::Full => Rational::from(-(big_n as i64)),
        Scale::Half => Rational::from((-(big_n as i64), 2)),
    };
    let power = ec.base_zero.w.with_prec(bits).ln().scale_rational(&expo).exp();
    let n = BigComplex::from_i64(bits, big_n as i64);
    let inv = n.recip();
    let mut sum = BigComplex::zero(bits);
    for c in ec.coeffs.iter().rev() {
        sum = &(&sum * &inv) + &c.with_prec(bits);
    }
    let v = &(&power * &sum) * &inv.square();
    Ok(Float::with_val(ctx.bits(), &v.re))
}

/// `(e^{UN}/N²)·ψ_λ·sin(τ_λ + VN)`.
pub fn sine_wave_form(big_n: u64, lambda: &Rational, ctx: &PrecisionContext) -> Result<Float> {
    let bits = ctx.bits() + GUARD_BITS;
    let wc = wave_constants(lambda, &ctx.with_extra_digits(GUARD_DIGITS))?;
    let n = Float::with_val(bits, big_n);
    let growth = Float::with_val(bits, &wc.u * &n).exp();
    let angle = Float::with_val(bits, &wc.v * &n) + &wc.tau_lambda;
    let v = growth * &wc.psi_lambda * angle.sin() / Float::with_val(bits, &n * &n);
    Ok(Float::with_val(ctx.bits(), v))
}
