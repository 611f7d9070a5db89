use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::numerics::{pi, BigComplex, TruncatedSeries};

/// Partial ordinary Bell polynomial `B̂_{i,j}`: the coefficient of `x^i` in
/// `(p[0]x + p[1]x² + …)^j`, so `p[m−1]` holds `p_m`.
pub fn bell_partial(i: usize, j: usize, p: &[BigComplex]) -> BigComplex {
    let bits = p.first().map_or(64, |c| c.prec());
    bell_table(i, p, bits)[i][j].clone()
}

/// All `B̂_{i',j}` with `j ≤ i' ≤ i`, indexed `[i'][j]`; entries with `j > i'` are zero.
pub fn bell_table(i: usize, p: &[BigComplex], bits: u32) -> Vec<Vec<BigComplex>> {
    let mut t = vec![vec![BigComplex::zero(bits); i + 1]; i + 1];
    t[0][0] = BigComplex::one(bits);
    for j in 1..=i {
        for row in j..=i {
            let mut acc = BigComplex::zero(bits);
            for m in 1..=row - (j - 1) {
                if m > p.len() {
                    break;
                }
                let prev = &t[row - m][j - 1];
                if !prev.is_zero() {
                    acc += &(&p[m - 1] * prev);
                }
            }
            t[row][j] = acc;
        }
    }
    t
}

/// Phase coefficients `p_s` and amplitude coefficients `q_s` of a saddle-point integral,
/// with `p(z) − p(z*) = Σ p_s (z−z*)^{s+μ}` and `q(z) = Σ q_s (z−z*)^s`.
#[derive(Clone, Debug)]
pub struct SeriesPair {
    pub phase: TruncatedSeries,
    pub amplitude: TruncatedSeries,
    pub mu: u32,
    pub p0: BigComplex,
}

impl SeriesPair {
    pub fn new(phase: TruncatedSeries, amplitude: TruncatedSeries, mu: u32) -> Result<Self> {
        let p0 = phase.coeff(0).clone();
        if p0.is_zero() {
            return Err(Error::Domain("leading phase coefficient vanishes".into()));
        }
        if mu == 0 || mu % 2 == 1 {
            return Err(Error::Usage(format!("mu must be a positive even integer, got {mu}")));
        }
        Ok(Self { phase, amplitude, mu, p0 })
    }

    /// The same phase with another amplitude.
    pub fn with_amplitude(&self, amplitude: TruncatedSeries) -> Self {
        Self { amplitude, ..self.clone() }
    }
}

/// Generalised binomial coefficient `C(x, j)` for rational `x`.
fn binom_rational(x: &Rational, j: usize) -> Rational {
    let mut r = Rational::from(1);
    for k in 0..j {
        r *= Rational::from(x - Integer::from(k));
        r /= Integer::from(k + 1);
    }
    r
}

/// The coefficient `α_s(q)` of the saddle-point expansion, with the principal power of `p_0`.
pub fn alpha(s: usize, sp: &SeriesPair) -> Result<BigComplex> {
    if sp.phase.order() < s + 1 || sp.amplitude.order() < s + 1 {
        return Err(Error::Usage(format!("alpha_{s} needs series of order at least {}", s + 1)));
    }
    let bits = sp.p0.prec();
    let inv0 = sp.p0.recip();
    let ratios: Vec<BigComplex> = (1..=s).map(|m| sp.phase.coeff(m) * &inv0).collect();
    let table = bell_table(s, &ratios, bits);
    let x = Rational::from((-(s as i64 + 1), sp.mu as i64));
    let binoms: Vec<BigComplex> = (0..=s)
        .map(|j| BigComplex::from_rational(bits, &binom_rational(&x, j)))
        .collect();
    let mut total = BigComplex::zero(bits);
    for i in 0..=s {
        let mut inner = BigComplex::zero(bits);
        for j in 0..=i {
            inner += &(&binoms[j] * &table[i][j]);
        }
        total += &(sp.amplitude.coeff(s - i) * &inner);
    }
    let power = sp.p0.ln().scale_rational(&x).exp();
    Ok((&power * &total).div_i64(sp.mu as i64))
}

/// `Γ(m + 1/2) = (2m)!·√π / (4^m·m!)`.
pub fn gamma_half(m: usize, bits: u32) -> Float {
    let num = Integer::from(Integer::factorial(2 * m as u32));
    let den = Integer::from(Integer::u_pow_u(4, m as u32)) * Integer::from(Integer::factorial(m as u32));
    let sqrt_pi = pi(bits).sqrt();
    Float::with_val(bits, Rational::from((num, den))) * sqrt_pi
}
