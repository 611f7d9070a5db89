use std::str::FromStr;

use rug::{Float, Rational};

use super::aux::phi_star_series;
use super::local::Local;
use crate::dilog::SaddlePoint;
use crate::error::{Error, Result};
use crate::numerics::{pi, pow10, BigComplex, PrecisionContext, TruncatedSeries};

const GUARD_BITS: u32 = 64;
const BRANCH_STEPS: usize = 256;

/// The phase functions of the saddle-point integrals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    /// `p = p_0`, the `d = 0` continued dilogarithm quotient.
    P,
    /// `p/2`.
    PHalf,
    /// `p_1`, the `d = 1` quotient.
    P1,
}

/// The amplitude functions of the saddle-point integrals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Amplitude {
    Q,
    QC,
    QCStar,
    QD,
    QDStar,
    FA,
    FC,
    FCStar,
    FD,
    FDStar,
}

impl FromStr for Amplitude {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "q" => Self::Q,
            "q_C" | "q_c" => Self::QC,
            "q_C_star" | "q_c_star" => Self::QCStar,
            "q_D" | "q_d" => Self::QD,
            "q_D_star" | "q_d_star" => Self::QDStar,
            "f_A" | "f_a" => Self::FA,
            "f_C" | "f_c" => Self::FC,
            "f_C_star" | "f_c_star" => Self::FCStar,
            "f_D" | "f_d" => Self::FD,
            "f_D_star" | "f_d_star" => Self::FDStar,
            _ => return Err(Error::Parse(format!("unknown amplitude '{s}'"))),
        })
    }
}

fn i_times(bits: u32, x: Float) -> BigComplex {
    BigComplex::new(Float::new(bits), x)
}

/// Coefficients `p_s` of `p(z) − p(z*) = Σ p_s (z−z*)^{s+2}`, to `order` terms.
pub fn phase_series(phase: Phase, sp: &SaddlePoint, order: usize, ctx: &PrecisionContext) -> Result<TruncatedSeries> {
    phase_local(phase, sp, order, ctx.bits() + GUARD_BITS, ctx.decimal_digits())
}

pub(crate) fn phase_local(phase: Phase, sp: &SaddlePoint, order: usize, bits: u32, digits: u32) -> Result<TruncatedSeries> {
    let d = match phase {
        Phase::P | Phase::PHalf => 0,
        Phase::P1 => 1,
    };
    if sp.d != d {
        return Err(Error::Usage(format!("phase {phase:?} needs a saddle with d = {d}, got d = {}", sp.d)));
    }
    let loc = Local::new(&sp.z_star, order + 2, bits);
    let (li, _) = loc.li2_exp()?;
    let p = loc.pi();
    let pi2 = Float::with_val(bits, &p * &p);
    let c = Float::with_val(bits, &pi2 / 6u32) + Float::with_val(bits, pi2 * 4u32) * d;
    let two_pi_i = i_times(bits, Float::with_val(bits, &p * 2u32));
    let mut full = li.neg().add_constant(&BigComplex::from_real(c)).div(&loc.var().scale(&two_pi_i))?;
    if phase == Phase::PHalf {
        full = full.scale_real(&Float::with_val(bits, 0.5));
    }
    let residual = full.coeff(1).abs();
    if residual > pow10(bits, -(digits as i64) + 10) {
        return Err(Error::SelfCheck(format!(
            "phase derivative {:e} at the saddle exceeds tolerance",
            residual.to_f64()
        )));
    }
    full.shift_down(2)
}

/// Square root of `radicand` at `z`, continued along the vertical segment from
/// `Re z`, where the radicand must be positive, with the positive root there.
fn continued_sqrt(radicand: impl Fn(&BigComplex) -> BigComplex, z: &BigComplex, bits: u32) -> Result<BigComplex> {
    let start = BigComplex::from_real(z.re.clone());
    let r0 = radicand(&start);
    let tol = pow10(bits, -(bits as i64) / 8);
    if r0.re <= 0 || Float::with_val(bits, r0.im.abs_ref()) > Float::with_val(bits, r0.re.abs_ref()) * &tol {
        return Err(Error::Branch("radicand is not positive at the real reference point".into()));
    }
    let mut prev = r0.sqrt();
    for k in 1..=BRANCH_STEPS {
        let t = Float::with_val(bits, &z.im * k as u32) / BRANCH_STEPS as u32;
        let pt = BigComplex::new(z.re.clone(), t);
        let s = radicand(&pt).sqrt();
        let keep = (&s - &prev).abs();
        let flip = (&s + &prev).abs();
        if Float::with_val(bits, &keep - &flip).abs() < Float::with_val(bits, &keep * 1e-3) {
            return Err(Error::Branch("square-root branch is ambiguous along the path".into()));
        }
        prev = if keep <= flip { s } else { -s };
    }
    Ok(prev)
}

/// `z / (2·sin(a·z + b))`.
fn sine_radicand<'a>(a: &'a Float, b: &'a Float) -> impl Fn(&BigComplex) -> BigComplex + 'a {
    move |z: &BigComplex| {
        let arg = &z.scale(a) + &BigComplex::from_real(b.clone());
        z / &arg.sin().scale_i64(2)
    }
}

/// `(z/(2 sin(a z + b)))^{1/2}` with the continued branch.
fn sqrt_quotient(loc: &Local, a: &Float, b: &Float) -> Result<TruncatedSeries> {
    let rad = loc.var().div(&loc.sin_affine(a, b).scale_i64(2))?;
    let root = continued_sqrt(sine_radicand(a, b), &loc.center, loc.bits)?;
    rad.sqrt_with_root(root)
}

trait Scale2 {
    fn scale_i64(&self, k: i64) -> Self;
}

impl Scale2 for TruncatedSeries {
    fn scale_i64(&self, k: i64) -> Self {
        self.scale(&BigComplex::from_i64(self.prec(), k))
    }
}

/// Taylor series of an amplitude function about the saddle.
pub fn amplitude_series(
    family: Amplitude,
    lambda: &Rational,
    sp: &SaddlePoint,
    order: usize,
    ctx: &PrecisionContext,
) -> Result<TruncatedSeries> {
    amplitude_local(family, lambda, &Local::new(&sp.z_star, order, ctx.bits() + GUARD_BITS))
}

pub(crate) fn amplitude_local(family: Amplitude, lambda: &Rational, loc: &Local) -> Result<TruncatedSeries> {
    let bits = loc.bits;
    let p = pi(bits);
    let zero = Float::new(bits);
    let half_pi = Float::with_val(bits, &p / 2u32);
    let neg_half_pi = Float::with_val(bits, -&half_pi);
    let neg_pi = Float::with_val(bits, -&p);
    // exp(c·πi·z) with rational c
    let exp_pi_i = |c: Rational| loc.exp_linear(&i_times(bits, Float::with_val(bits, &p * c)));
    let two_lambda = Rational::from(lambda * 2u32);
    Ok(match family {
        // (z/(2 sin(π(z−1))))^{1/2} e^{−πiz/2}
        Amplitude::Q => sqrt_quotient(loc, &p, &neg_pi)?.mul(&exp_pi_i(Rational::from((-1, 2))))?,
        // (z/(2 sin(πz)))^{1/2} e^{−πiz/2}
        Amplitude::QC => sqrt_quotient(loc, &p, &zero)?.mul(&exp_pi_i(Rational::from((-1, 2))))?,
        // e^{−3πi/4}√z
        Amplitude::QCStar => {
            let c = BigComplex::exp_i_pi_rational(bits, &Rational::from((-3, 4)));
            loc.var().sqrt()?.scale(&c)
        }
        // (z/(2 sin(π(z−1)/2)))^{1/2} e^{−πi(z+3)/4}
        Amplitude::QD => {
            let c = BigComplex::exp_i_pi_rational(bits, &Rational::from((-3, 4)));
            sqrt_quotient(loc, &half_pi, &neg_half_pi)?
                .mul(&exp_pi_i(Rational::from((-1, 4))))?
                .scale(&c)
        }
        // 2 sin(π(z−1)/2)·(z/(2 sin(π(z−1)/2)))^{1/2}·e^{πi(z−1)/4}
        Amplitude::QDStar => {
            let c = BigComplex::exp_i_pi_rational(bits, &Rational::from((-1, 4)));
            let s = loc.sin_affine(&half_pi, &neg_half_pi).scale_i64(2);
            s.mul(&sqrt_quotient(loc, &half_pi, &neg_half_pi)?)?
                .mul(&exp_pi_i(Rational::from((1, 4))))?
                .scale(&c)
        }
        Amplitude::FA => amplitude_local(Amplitude::Q, lambda, loc)?.mul(&exp_pi_i(-two_lambda))?,
        Amplitude::FC => amplitude_local(Amplitude::QC, lambda, loc)?.mul(&exp_pi_i(-two_lambda))?,
        Amplitude::FCStar => amplitude_local(Amplitude::QCStar, lambda, loc)?.mul(&exp_pi_i(-two_lambda))?,
        Amplitude::FD => amplitude_local(Amplitude::QD, lambda, loc)?.mul(&exp_pi_i(-lambda.clone()))?,
        Amplitude::FDStar => amplitude_local(Amplitude::QDStar, lambda, loc)?
            .mul(&exp_pi_i(-lambda.clone()))?
            .scale(&BigComplex::i(bits)),
    })
}

/// The `N`-free pieces `f_{C,λ}·φ*_{λ,k}`, `k < terms`, of the family-e amplitude
/// `f_{C,λ}·Σ_k φ*_{λ,k}/N^k`.
pub fn f_e_series(
    lambda: &Rational,
    sp: &SaddlePoint,
    order: usize,
    terms: usize,
    ctx: &PrecisionContext,
) -> Result<Vec<TruncatedSeries>> {
    let loc = Local::new(&sp.z_star, order, ctx.bits() + GUARD_BITS);
    let fc = amplitude_local(Amplitude::FC, lambda, &loc)?;
    (0..terms).map(|k| fc.mul(&phi_star_series(&loc, k, lambda)?)).collect()
}
