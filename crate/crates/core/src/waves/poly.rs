//! The quasi-polynomial form of a wave: one rational polynomial per residue class.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::exact::closed_small;
use super::routes::{wave, WaveRoute};
use crate::combinatorics::divisors;
use crate::error::{Error, Result};
use crate::numerics::{pow10, PrecisionContext};

/// Extra nodes checked exactly after interpolation.
const VERIFY_POINTS: i64 = 3;

/// `W_k(N,n) = polys[n mod k](n)`, coefficients in ascending powers of `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WavePolySet {
    pub k: u64,
    pub big_n: u64,
    pub polys: Vec<Vec<Rational>>,
    pub degree_bound: usize,
}

impl WavePolySet {
    /// Exact value at `n`.
    pub fn eval(&self, n: i64) -> Rational {
        let m = n.rem_euclid(self.k as i64) as usize;
        poly_eval(&self.polys[m], &Rational::from(n))
    }

    /// Every polynomial has degree at most `⌊N/k⌋ − 1`.
    pub fn degrees_ok(&self) -> bool {
        self.polys.iter().all(|p| p.iter().skip(self.degree_bound + 1).all(|c| *c == 0))
    }

    /// For `k = bc` with `c ≥ 2` and each `ℓ < b`, the polynomials `ℓ, ℓ+b, …` sum to zero.
    /// `b = 1` gives the vanishing of the full sum.
    pub fn sums_vanish(&self) -> bool {
        let k = self.k;
        for b in divisors(k) {
            if k / b < 2 {
                continue;
            }
            for l in 0..b {
                let mut acc: Vec<Rational> = Vec::new();
                let mut idx = l;
                while idx < k {
                    acc = poly_add(&acc, &self.polys[idx as usize]);
                    idx += b;
                }
                if acc.iter().any(|c| *c != 0) {
                    return false;
                }
            }
        }
        true
    }
}

pub fn poly_eval(p: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::new();
    for c in p.iter().rev() {
        acc *= x;
        acc += c;
    }
    acc
}

fn poly_add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let mut v = a.get(i).cloned().unwrap_or_default();
            if let Some(c) = b.get(i) {
                v += c;
            }
            v
        })
        .collect()
}

/// Lagrange interpolation in exact arithmetic; returns ascending coefficients of degree < points.len().
pub fn interpolate(points: &[(Rational, Rational)]) -> Vec<Rational> {
    let n = points.len();
    // divided differences
    let mut dd: Vec<Rational> = points.iter().map(|p| p.1.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = Rational::from(&dd[i] - &dd[i - 1]);
            let den = Rational::from(&points[i].0 - &points[i - level].0);
            dd[i] = num / den;
        }
    }
    // Newton form to monomial form
    let mut coeffs = vec![Rational::new(); n];
    for i in (0..n).rev() {
        // coeffs = coeffs·(x − x_i) + dd[i]
        let xi = &points[i].0;
        let mut next = vec![Rational::new(); n];
        for j in 0..n {
            if coeffs[j] == 0 {
                continue;
            }
            if j + 1 < n {
                next[j + 1] += &coeffs[j];
            }
            next[j] -= Rational::from(&coeffs[j] * xi);
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| *c == 0) {
        coeffs.pop();
    }
    coeffs
}

/// The first continued-fraction convergent of `x` within `tol`, with denominator at most `max_den`.
pub fn rationalize(x: &Float, tol: &Float, max_den: &Integer) -> Option<Rational> {
    let exact = x.to_rational()?;
    let (mut p0, mut q0) = (Integer::from(0), Integer::from(1));
    let (mut p1, mut q1) = (Integer::from(1), Integer::from(0));
    let mut rem = exact.clone();
    loop {
        let a = rem.clone().floor().into_numer_denom().0;
        let p2 = Integer::from(&a * &p1) + &p0;
        let q2 = Integer::from(&a * &q1) + &q0;
        if q2 > *max_den {
            return None;
        }
        let cand = Rational::from((p2.clone(), q2.clone()));
        let err = Float::with_val(x.prec(), Rational::from(&exact - &cand)).abs();
        if err <= *tol {
            return Some(cand);
        }
        let frac = rem - Rational::from(a);
        if frac == 0 {
            return None;
        }
        rem = frac.recip();
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
    }
}

fn rational_value(k: u64, big_n: u64, n: i64, ctx: &PrecisionContext) -> Result<Option<Rational>> {
    let v = wave(k, big_n, n, ctx, WaveRoute::Auto)?;
    let bits = ctx.bits();
    let digits = ctx.decimal_digits() as i64;
    let scale = Float::with_val(bits, v.abs_ref()).max(&Float::with_val(bits, 1));
    let tol = scale * pow10(bits, 10 - digits);
    let max_den = Integer::from(10).pow((digits / 2 - 2).max(1) as u32);
    Ok(rationalize(&v, &tol, &max_den))
}

fn wave_poly_at(k: u64, big_n: u64, ctx: &PrecisionContext) -> Result<Option<WavePolySet>> {
    let s = (big_n / k) as usize;
    let ki = k as i64;
    let mut polys = Vec::with_capacity(k as usize);
    for m in 0..ki {
        let mut pts = Vec::with_capacity(s);
        for j in 0..s as i64 {
            let n = m + j * ki;
            match rational_value(k, big_n, n, ctx)? {
                Some(q) => pts.push((Rational::from(n), q)),
                None => return Ok(None),
            }
        }
        let poly = interpolate(&pts);
        for j in 0..VERIFY_POINTS {
            let n = m + (s as i64 + j) * ki;
            match rational_value(k, big_n, n, ctx)? {
                Some(q) if q == poly_eval(&poly, &Rational::from(n)) => {}
                _ => return Ok(None),
            }
        }
        polys.push(poly);
    }
    Ok(Some(WavePolySet { k, big_n, polys, degree_bound: s - 1 }))
}

/// Interpolates each residue class from rationalized wave values at `n = m, m+k, …`
/// and re-verifies at extra nodes. Precision is doubled on failure, up to four times.
pub fn wave_poly(k: u64, big_n: u64, ctx: &PrecisionContext) -> Result<WavePolySet> {
    if k == 0 || k > big_n {
        return Err(Error::Usage(format!("wave_poly needs 1 <= k <= N, got k={k}, N={big_n}")));
    }
    let mut c = ctx.clone();
    for _ in 0..4 {
        if let Some(set) = wave_poly_at(k, big_n, &c)? {
            return Ok(set);
        }
        c = c.doubled();
    }
    Err(Error::Precision(format!(
        "rationalizing W_{k}({big_n},n) failed up to {} digits; retry with --digits {}",
        c.decimal_digits() / 2,
        c.decimal_digits()
    )))
}

/// The polynomial set from the exact closed forms, for `N − k ∈ {0, 1, 2}`.
pub fn wave_poly_closed(k: u64, big_n: u64) -> Result<WavePolySet> {
    if k == 0 || k > big_n {
        return Err(Error::Usage(format!("wave_poly needs 1 <= k <= N, got k={k}, N={big_n}")));
    }
    let s = (big_n / k) as usize;
    let ki = k as i64;
    let mut polys = Vec::with_capacity(k as usize);
    for m in 0..ki {
        let mut pts = Vec::with_capacity(s);
        for j in 0..s as i64 {
            let n = m + j * ki;
            pts.push((Rational::from(n), closed_small(k, big_n, n)?));
        }
        polys.push(interpolate(&pts));
    }
    Ok(WavePolySet { k, big_n, polys, degree_bound: s - 1 })
}
