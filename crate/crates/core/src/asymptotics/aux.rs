use std::str::FromStr;

use rug::{Float, Integer, Rational};

use super::local::{powi, Local};
use crate::combinatorics::bernoulli_number;
use crate::error::{Error, Result};
use crate::numerics::{BigComplex, PrecisionContext, TruncatedSeries};

const GUARD_BITS: u32 = 64;

/// The auxiliary functions entering the expansion coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AuxFamily {
    G,
    GStar,
    GTilde,
    GC,
    GD,
    U0,
    UStar,
    UD,
    Phi,
    PhiStar,
}

impl FromStr for AuxFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "g" => Self::G,
            "g_star" => Self::GStar,
            "g_tilde" => Self::GTilde,
            "g_C" | "g_c" => Self::GC,
            "g_D" | "g_d" => Self::GD,
            "u0" => Self::U0,
            "u_star" => Self::UStar,
            "u_D" | "u_d" => Self::UD,
            "phi" => Self::Phi,
            "phi_star" => Self::PhiStar,
            _ => return Err(Error::Parse(format!("unknown auxiliary family '{s}'"))),
        })
    }
}

/// Arguments of an auxiliary function: the index (`ℓ`, `j` or `m`), the point,
/// and the shift parameter (`σ` for u*, u_D and φ; `λ` for φ*; unused otherwise).
#[derive(Clone, Debug)]
pub struct AuxArgs {
    pub index: usize,
    pub z: BigComplex,
    pub param: Rational,
}

/// Value of an auxiliary function at a point.
pub fn aux_eval(family: AuxFamily, args: &AuxArgs, ctx: &PrecisionContext) -> Result<BigComplex> {
    let bits = ctx.bits() + GUARD_BITS;
    let loc = Local::new(&args.z, 1, bits);
    let s = aux_local(family, args.index, &args.param, &loc)?;
    Ok(s.coeff(0).with_prec(ctx.bits()))
}

/// Taylor series of an auxiliary function about `center`.
pub fn aux_series(
    family: AuxFamily,
    index: usize,
    param: &Rational,
    center: &BigComplex,
    order: usize,
    bits: u32,
) -> Result<TruncatedSeries> {
    aux_local(family, index, param, &Local::new(center, order, bits))
}

pub(crate) fn aux_local(family: AuxFamily, index: usize, param: &Rational, loc: &Local) -> Result<TruncatedSeries> {
    let need_l = || {
        if index == 0 {
            Err(Error::Usage("the g families start at index 1".into()))
        } else {
            Ok(index)
        }
    };
    match family {
        AuxFamily::G => g_series(loc, need_l()?),
        AuxFamily::GStar => g_star_series(loc, need_l()?),
        AuxFamily::GTilde => g_tilde_series(loc, need_l()?),
        AuxFamily::GC => g_c_series(loc, need_l()?),
        AuxFamily::GD => g_d_series(loc, need_l()?),
        AuxFamily::U0 => Ok(u_list(loc, UKind::Plain, param, index)?.swap_remove(index)),
        AuxFamily::UStar => Ok(u_list(loc, UKind::Star, param, index)?.swap_remove(index)),
        AuxFamily::UD => Ok(u_list(loc, UKind::D, param, index)?.swap_remove(index)),
        AuxFamily::Phi => phi_series(loc, index, param),
        AuxFamily::PhiStar => phi_star_series(loc, index, param),
    }
}

/// `B_{2ℓ}/(2ℓ)!`.
fn bernoulli_weight(l: usize) -> Rational {
    bernoulli_number(2 * l) / Integer::from(Integer::factorial(2 * l as u32))
}

/// `(c·z)^{2ℓ−1}`.
fn scaled_power(loc: &Local, c: &Float, l: usize) -> Result<TruncatedSeries> {
    powi(&loc.var().scale_real(c), 2 * l as u32 - 1)
}

/// `g_ℓ(z) = −(B_{2ℓ}/(2ℓ)!)(πz)^{2ℓ−1} cot^{(2ℓ−2)}(πz)`.
pub(crate) fn g_series(loc: &Local, l: usize) -> Result<TruncatedSeries> {
    let p = loc.pi();
    let zero = Float::new(loc.bits);
    let cot = loc.cot_derivative(&p, &zero, 2 * l - 2)?;
    let w = -bernoulli_weight(l);
    Ok(scaled_power(loc, &p, l)?.mul(&cot)?.scale(&BigComplex::from_rational(loc.bits, &w)))
}

/// `g*_ℓ(z) = −(B_{2ℓ}/(2ℓ)!)(πz/2)^{2ℓ−1} cot^{(2ℓ−2)}(π(z−1)/2)`.
pub(crate) fn g_star_series(loc: &Local, l: usize) -> Result<TruncatedSeries> {
    let half_pi = Float::with_val(loc.bits, loc.pi() / 2u32);
    let shift = Float::with_val(loc.bits, -&half_pi);
    let cot = loc.cot_derivative(&half_pi, &shift, 2 * l - 2)?;
    let w = -bernoulli_weight(l);
    Ok(scaled_power(loc, &half_pi, l)?.mul(&cot)?.scale(&BigComplex::from_rational(loc.bits, &w)))
}

/// `g̃_ℓ(z) = (B_{2ℓ}/(2ℓ)!)(πz)^{2ℓ−1}{πz·cot^{(2ℓ−1)}(πz) + (2ℓ−1)cot^{(2ℓ−2)}(πz)}`.
pub(crate) fn g_tilde_series(loc: &Local, l: usize) -> Result<TruncatedSeries> {
    let p = loc.pi();
    let zero = Float::new(loc.bits);
    let hi = loc.cot_derivative(&p, &zero, 2 * l - 1)?;
    let lo = loc.cot_derivative(&p, &zero, 2 * l - 2)?;
    let bracket = loc
        .var()
        .scale_real(&p)
        .mul(&hi)?
        .add(&lo.scale(&BigComplex::from_i64(loc.bits, 2 * l as i64 - 1)))?;
    let w = bernoulli_weight(l);
    Ok(scaled_power(loc, &p, l)?.mul(&bracket)?.scale(&BigComplex::from_rational(loc.bits, &w)))
}

/// `g_{C,ℓ} = g_ℓ·(2^{−(2ℓ−1)} − 1)`.
pub(crate) fn g_c_series(loc: &Local, l: usize) -> Result<TruncatedSeries> {
    let f = Rational::from((1, Integer::from(1) << (2 * l as u32 - 1))) - 1u32;
    Ok(g_series(loc, l)?.scale(&BigComplex::from_rational(loc.bits, &f)))
}

/// `g_{D,ℓ} = g_ℓ − g*_ℓ + 2^{2ℓ−1}(2g*_ℓ − g_ℓ)`.
pub(crate) fn g_d_series(loc: &Local, l: usize) -> Result<TruncatedSeries> {
    let g = g_series(loc, l)?;
    let gs = g_star_series(loc, l)?;
    let pow = BigComplex::from_integer(loc.bits, &(Integer::from(1) << (2 * l as u32 - 1)));
    let inner = gs.scale_i64_series(2).sub(&g)?.scale(&pow);
    g.sub(&gs)?.add(&inner)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum UKind {
    Plain,
    Star,
    D,
}

/// `u_0, …, u_jmax`, the coefficients of `x^j` in `exp(Σ_ℓ G_ℓ(z) x^{2ℓ−1})`, where
/// `G_ℓ` is `g_ℓ`, `g_{C,ℓ}` or `g_{D,ℓ}` and the first term carries the linear shift
/// `πi(16σ+1)z/8` (star) or `πiσz` (D).
pub(crate) fn u_list(loc: &Local, kind: UKind, sigma: &Rational, jmax: usize) -> Result<Vec<TruncatedSeries>> {
    let mut g: Vec<TruncatedSeries> = vec![loc.zero(); jmax + 1];
    for k in (1..=jmax).step_by(2) {
        let l = k.div_ceil(2);
        g[k] = match kind {
            UKind::Plain => g_series(loc, l)?,
            UKind::Star => g_c_series(loc, l)?,
            UKind::D => g_d_series(loc, l)?,
        };
    }
    if jmax >= 1 {
        let slope = match kind {
            UKind::Plain => None,
            UKind::Star => Some((Rational::from(sigma * 16u32) + 1u32) / 8u32),
            UKind::D => Some(sigma.clone()),
        };
        if let Some(r) = slope {
            let c = BigComplex::new(Float::new(loc.bits), Float::with_val(loc.bits, loc.pi() * r));
            g[1] = g[1].add(&loc.var().scale(&c))?;
        }
    }
    let mut u = vec![loc.one()];
    for j in 1..=jmax {
        let mut acc = loc.zero();
        for k in (1..=j).step_by(2) {
            acc = acc.add(&g[k].mul(&u[j - k])?.scale_i64_series(k as i64))?;
        }
        u.push(acc.scale(&BigComplex::from_rational(loc.bits, &Rational::from((1, j as u64)))));
    }
    Ok(u)
}

/// `φ_{σ,m}(z)`.
pub(crate) fn phi_series(loc: &Local, m: usize, sigma: &Rational) -> Result<TruncatedSeries> {
    let bits = loc.bits;
    let p = loc.pi();
    let z = loc.var();
    let two_pi_i = BigComplex::new(Float::new(bits), Float::with_val(bits, &p * 2u32));
    let over_two_pi_i = two_pi_i.recip();
    match m {
        0 => {
            let (li, log1m) = loc.li2_exp()?;
            let pi2 = Float::with_val(bits, &p * &p);
            let c = Float::with_val(bits, &pi2 / 6u32) + Float::with_val(bits, &pi2 * 6u32);
            let bracket = li
                .neg()
                .add_constant(&BigComplex::from_real(c))
                .sub(&z.mul(&log1m)?.scale(&two_pi_i))?;
            Ok(bracket.scale_real(&Float::with_val(bits, pi2 * 4u32).recip()))
        }
        1 => {
            let zero = Float::new(bits);
            let cot = loc.cot_derivative(&p, &zero, 0)?;
            let z2 = z.mul(&z)?;
            let four_i_inv = BigComplex::i(bits).scale_i64(4).recip();
            let lin = BigComplex::from_i64(bits, 5).div_i64(4) * &over_two_pi_i.scale_i64(2);
            z2.mul(&cot)?
                .scale(&four_i_inv)
                .add(&z2.scale(&BigComplex::from_rational(bits, &Rational::from((1, 4)))))?
                .sub(&z.scale(&lin))
        }
        _ if m % 2 == 1 => Ok(loc.zero()),
        _ => {
            let t = z.mul(&g_tilde_series(loc, m / 2)?)?.scale(&over_two_pi_i);
            if m == 2 {
                let z2 = z.mul(&z)?;
                t.sub(&z2.scale(&BigComplex::from_rational(bits, sigma)))
            } else {
                Ok(t)
            }
        }
    }
}

/// `φ*_{λ,ℓ}`: `φ_{0,ℓ}`, plus `λz²` when `ℓ = 1`.
pub(crate) fn phi_star_series(loc: &Local, l: usize, lambda: &Rational) -> Result<TruncatedSeries> {
    let base = phi_series(loc, l, &Rational::new())?;
    if l == 1 {
        let z = loc.var();
        base.add(&z.mul(&z)?.scale(&BigComplex::from_rational(loc.bits, lambda)))
    } else {
        Ok(base)
    }
}

trait ScaleInt {
    fn scale_i64_series(&self, k: i64) -> Self;
}

impl ScaleInt for TruncatedSeries {
    fn scale_i64_series(&self, k: i64) -> Self {
        self.scale(&BigComplex::from_i64(self.prec(), k))
    }
}
