use std::sync::RwLock;

use rug::ops::Pow;
use rug::{Float, Integer};

use super::arith::gcd;
use crate::error::{Error, Result};
use crate::numerics::PrecisionContext;

/// p(0), p(1), … extended on demand by Euler's pentagonal recurrence.
static PARTITIONS: RwLock<Vec<Integer>> = RwLock::new(Vec::new());

fn extend_partitions(table: &mut Vec<Integer>, n: usize) {
    if table.is_empty() {
        table.push(Integer::from(1));
    }
    while table.len() <= n {
        let m = table.len() as i64;
        let mut acc = Integer::new();
        let mut j = 1i64;
        loop {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > m {
                break;
            }
            let positive = j % 2 == 1;
            let add = |acc: &mut Integer, g: i64| {
                if positive {
                    *acc += &table[(m - g) as usize];
                } else {
                    *acc -= &table[(m - g) as usize];
                }
            };
            add(&mut acc, g1);
            let g2 = j * (3 * j + 1) / 2;
            if g2 <= m {
                add(&mut acc, g2);
            }
            j += 1;
        }
        table.push(acc);
    }
}

/// The unrestricted partition number p(n).
pub fn partition_p(n: u64) -> Integer {
    let n = n as usize;
    {
        let t = PARTITIONS.read().expect("partition cache poisoned");
        if n < t.len() {
            return t[n].clone();
        }
    }
    let mut t = PARTITIONS.write().expect("partition cache poisoned");
    extend_partitions(&mut t, n);
    t[n].clone()
}

/// `p(0..=n)` as one vector.
pub fn partition_table(n: u64) -> Vec<Integer> {
    partition_p(n);
    let t = PARTITIONS.read().expect("partition cache poisoned");
    t[..=n as usize].to_vec()
}

/// Number of partition values currently held in memory.
pub fn partitions_cached() -> usize {
    PARTITIONS.read().expect("partition cache poisoned").len()
}

/// Seed the cache from previously computed values (used by the on-disk cache).
pub fn seed_partitions(values: Vec<Integer>) {
    let mut t = PARTITIONS.write().expect("partition cache poisoned");
    if values.len() > t.len() {
        *t = values;
    }
}

/// Selberg's form of the Kloosterman-type sum `A_k(n)`.
pub fn selberg_a(k: u64, n: u64, bits: u32) -> Float {
    let pi = Float::with_val(bits, rug::float::Constant::Pi);
    let kk = k as i128;
    let target = (-(n as i128)).rem_euclid(kk);
    let mut acc = Float::new(bits);
    for l in 0..(2 * kk) {
        if ((3 * l * l - l) / 2).rem_euclid(kk) != target {
            continue;
        }
        let mut ang = Float::with_val(bits, &pi * (6 * l - 1) as i64);
        ang /= (6 * k) as f64;
        let c = ang.cos();
        if l % 2 == 0 {
            acc += &c;
        } else {
            acc -= &c;
        }
    }
    let mut s = Float::with_val(bits, k);
    s /= 3;
    s.sqrt_mut();
    acc * s
}

fn hrr_terms_at(n: u64, terms: u64, bits: u32) -> Vec<Float> {
    let pi = Float::with_val(bits, rug::float::Constant::Pi);
    let mut nm = Float::with_val(bits, n);
    nm -= Float::with_val(bits, 1) / 24u32;
    // C = (2π/√6)·√(n − 1/24)
    let mut c = Float::with_val(bits, &pi * 2u32);
    c /= Float::with_val(bits, 6).sqrt();
    c *= Float::with_val(bits, nm.sqrt_ref());
    (1..=terms)
        .map(|k| {
            let a = selberg_a(k, n, bits);
            let x = Float::with_val(bits, &c / k);
            let (sh, ch) = x.clone().sinh_cosh(Float::new(bits));
            let bracket = ch - Float::with_val(bits, &sh / &x);
            let mut den = Float::with_val(bits, 3 * k).sqrt();
            den *= 2;
            den *= &nm;
            a * bracket / den
        })
        .collect()
}

/// The individual Hardy–Ramanujan–Rademacher terms k = 1..=terms.
pub fn partition_hrr_terms(n: u64, terms: u64, ctx: &PrecisionContext) -> Vec<Float> {
    hrr_terms_at(n, terms, ctx.bits())
}

/// Truncated Hardy–Ramanujan–Rademacher sum, certified by a doubled-precision rerun.
pub fn partition_p_hrr(n: u64, terms: u64, ctx: &PrecisionContext) -> Result<Float> {
    if n == 0 || terms == 0 {
        return Err(Error::Domain("HRR sum needs n >= 1 and terms >= 1".into()));
    }
    let sum = |bits| hrr_terms_at(n, terms, bits).into_iter().fold(Float::new(bits), |a, t| a + t);
    let v = sum(ctx.bits());
    let w = sum(ctx.doubled().bits());
    let mut tol = Float::with_val(ctx.bits(), v.abs_ref()).max(&Float::with_val(ctx.bits(), 1));
    tol *= ctx.epsilon();
    if Float::with_val(ctx.bits(), &v - &w).abs() > tol {
        return Err(Error::Precision(format!("HRR sum for n={n} unstable under doubling")));
    }
    Ok(v)
}

/// Partitions of `n ≥ 0` into parts of size at most `max_part`, by dynamic programming.
fn bounded_parts(max_part: u64, n: u64) -> Integer {
    let n = n as usize;
    let mut dp = vec![Integer::new(); n + 1];
    dp[0] = Integer::from(1);
    for part in 1..=(max_part as usize).min(n) {
        for v in part..=n {
            let (lo, hi) = dp.split_at_mut(v);
            hi[0] += &lo[v - part];
        }
    }
    dp[n].clone()
}

/// `p_N(n)` for every integer `n`: partitions into at most `N` parts for `n ≥ 0`,
/// 0 for `−N(N+1)/2 < n < 0`, and `(−1)^{N+1} p_N(−n−N(N+1)/2)` below that.
pub fn p_restricted(big_n: u64, n: i64) -> Integer {
    assert!(big_n >= 1);
    let t = (big_n * (big_n + 1) / 2) as i64;
    if n >= 0 {
        if big_n as i64 >= n {
            return partition_p(n as u64);
        }
        return bounded_parts(big_n, n as u64);
    }
    if n > -t {
        return Integer::new();
    }
    let v = p_restricted(big_n, -n - t);
    if big_n % 2 == 1 {
        v
    } else {
        -v
    }
}

/// `Σ_{1 ≤ j ≤ N, j ≡ w (mod k)} j^m`.
pub fn power_sum_residue(m: u32, w: u64, k: u64, big_n: u64) -> Integer {
    assert!(k >= 1 && w < k);
    let mut acc = Integer::new();
    let mut j = if w == 0 { k } else { w };
    while j <= big_n {
        acc += Integer::from(j).pow(m);
        j += k;
    }
    acc
}

/// Number of solutions of `Σ a_i x_i = n` in non-negative integers.
pub fn denumerant_count(parts: &[u64], n: i64) -> Integer {
    if n < 0 {
        return Integer::new();
    }
    let n = n as usize;
    let mut dp = vec![Integer::new(); n + 1];
    dp[0] = Integer::from(1);
    for &a in parts {
        let a = a as usize;
        for v in a..=n {
            let (lo, hi) = dp.split_at_mut(v);
            hi[0] += &lo[v - a];
        }
    }
    dp[n].clone()
}

/// Greatest common divisor of a part list with `k`, used by admissibility checks.
pub fn divides_some(k: u64, parts: &[u64]) -> bool {
    parts.iter().any(|&a| gcd(a as i64, k as i64) as u64 == k)
}
