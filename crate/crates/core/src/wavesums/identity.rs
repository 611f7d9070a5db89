use rug::{Float, Integer};

use super::classes::{a1_range, b_range, c2_range, c2star_range, d1_range, e1_range};
use crate::combinatorics::{farey_enumerate, p_restricted};
use crate::error::{Error, Result};
use crate::numerics::{pow10, PrecisionContext};
use crate::waves::waves_sum;

const GUARD_BITS: u32 = 64;

/// Number of leading waves summed in the key identity.
pub const FIRST_WAVES: u64 = 100;

/// `Σ_{k≤K} W_k(N,n)`.
pub fn first_waves(big_n: u64, n: i64, kmax: u64, ctx: &PrecisionContext) -> Result<Float> {
    waves_sum(big_n, n, kmax, ctx)
}

/// Every piece of `Σ_{k≤100} W_k = p_N(n) + 𝓐_1 + 𝓒_1 + 𝓓_1 + 𝓔_1 + 𝓑`, with the
/// classes taken over `k > 100` so that they partition `𝓕_N − 𝓕_100`.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub big_n: u64,
    pub n: i64,
    pub first_waves: Float,
    pub p_restricted: Integer,
    pub a1: Float,
    pub c1: Float,
    pub d1: Float,
    pub e1: Float,
    pub b: Float,
    pub residual: Float,
    pub tolerance: Float,
    /// Fractions covered by the five classes plus `|𝓕_100|`.
    pub term_count: u64,
    pub farey_count: u64,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.residual <= self.tolerance
    }
}

/// Computes every piece independently and checks the identity to relative `10^(−digits/2+10)`.
pub fn key_identity_check(big_n: u64, n: i64, ctx: &PrecisionContext) -> Result<IdentityReport> {
    let report = key_identity_report(big_n, n, ctx)?;
    if !report.passed() {
        return Err(Error::IdentityFailure(format!(
            "N={big_n}, n={n}: relative residual {:e} exceeds {:e}",
            report.residual.to_f64(),
            report.tolerance.to_f64()
        )));
    }
    Ok(report)
}

/// As `key_identity_check`, returning the report even when the residual is too large.
pub fn key_identity_report(big_n: u64, n: i64, ctx: &PrecisionContext) -> Result<IdentityReport> {
    if big_n <= FIRST_WAVES {
        return Err(Error::Usage(format!("the key identity needs N > {FIRST_WAVES}, got {big_n}")));
    }
    let bits = ctx.bits() + GUARD_BITS;
    let sigma = -n;
    let kmin = FIRST_WAVES + 1;
    let fw = first_waves(big_n, n, FIRST_WAVES, &ctx.with_extra_digits(10))?;
    let pn = p_restricted(big_n, n);
    let (a1, na) = a1_range(big_n, sigma, kmin, bits)?;
    let (c2, nc2) = c2_range(big_n, sigma, kmin, bits)?;
    let (cs, ncs) = c2star_range(big_n, sigma, kmin, bits)?;
    let (d1, nd) = d1_range(big_n, sigma, kmin, bits)?;
    let (e1, ne) = e1_range(big_n, sigma, kmin, bits)?;
    let (b, nb) = b_range(big_n, sigma, kmin, bits, ctx.total_digits() + 20)?;
    let c1 = Float::with_val(bits, &c2 + &cs);
    let pieces = [&a1, &c1, &d1, &e1, &b];
    let mut rhs = Float::with_val(bits, &pn);
    for p in pieces {
        rhs += p;
    }
    let mut scale = Float::with_val(bits, 1);
    for v in [&fw, &rhs, &a1, &c1, &d1, &e1, &b] {
        let a = Float::with_val(bits, v.abs_ref());
        if a > scale {
            scale = a;
        }
    }
    let pa = Float::with_val(bits, Float::with_val(bits, &pn).abs_ref());
    if pa > scale {
        scale = pa;
    }
    let residual = Float::with_val(bits, &fw - &rhs).abs() / scale;
    let tolerance = pow10(bits, -(ctx.decimal_digits() as i64) / 2 + 10);
    let farey_small = farey_enumerate(FIRST_WAVES).len() as u64;
    let out = |x: Float| Float::with_val(ctx.bits(), x);
    Ok(IdentityReport {
        big_n,
        n,
        first_waves: out(fw),
        p_restricted: pn,
        a1: out(a1),
        c1: out(c1),
        d1: out(d1),
        e1: out(e1),
        b: out(b),
        residual: out(residual),
        tolerance: out(tolerance),
        term_count: na + nc2 + ncs + nd + ne + nb + farey_small,
        farey_count: farey_enumerate(big_n).len() as u64,
    })
}
