//! Exact rational formulas for waves.

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::combinatorics::{bernoulli_numbers, bernoulli_poly, ramanujan_sum};
use crate::error::{Error, Result};

fn factorial(n: u64) -> Integer {
    Integer::from(Integer::factorial(n as u32))
}

/// Exact `W_1(N,n)` from the exponential of Bernoulli-weighted power sums:
/// `Π_j jz/(e^{jz}−1)·e^{−nz} = exp(−(n + N(N+1)/4)z − Σ_m B_{2m} S_{2m}(N) z^{2m}/(2m(2m)!))`.
pub fn wave_exact_w1(big_n: u64, n: i64) -> Rational {
    let s = big_n as usize;
    let b = bernoulli_numbers(s.max(2));
    // exponent coefficients y[1..s)
    let mut y = vec![Rational::new(); s];
    if s > 1 {
        let t = Rational::from((Integer::from(big_n) * (big_n + 1), 4));
        y[1] = -(Rational::from(n) + t);
    }
    // even power sums S_{2m}(N) = Σ_{j≤N} j^{2m}
    let mut pows: Vec<Integer> = (1..=big_n).map(|j| Integer::from(j * j)).collect();
    let mut fact = Integer::from(2);
    let mut m2 = 2usize;
    while m2 < s {
        let sum: Integer = pows.iter().sum();
        let mut v = Rational::from((Integer::from(b[m2].numer() * &sum), Integer::from(b[m2].denom() * &fact)));
        v /= m2 as u32;
        y[m2] = -v;
        for (j, p) in pows.iter_mut().enumerate() {
            let jj = (j as u64 + 1) * (j as u64 + 1);
            *p *= jj;
        }
        fact *= ((m2 + 1) * (m2 + 2)) as u32;
        m2 += 2;
    }
    let c = exp_coeff_rational(&y, s - 1);
    let mut out = c / factorial(big_n);
    if big_n % 2 == 0 {
        out = -out;
    }
    out
}

/// `[x^n] exp(Σ_{m≥1} y_m x^m)` in exact arithmetic.
fn exp_coeff_rational(y: &[Rational], n: usize) -> Rational {
    let mut f: Vec<Rational> = Vec::with_capacity(n + 1);
    f.push(Rational::from(1));
    for k in 1..=n {
        let mut acc = Rational::new();
        for i in 1..=k.min(y.len() - 1) {
            if y[i] == 0 {
                continue;
            }
            acc += Rational::from(&y[i] * &f[k - i]) * (i as u32);
        }
        acc /= k as u32;
        f.push(acc);
    }
    f.swap_remove(n)
}

/// Exact `W_1(N,n)` by multiplying the `N` series `jz/(e^{jz}−1)` with `e^{−nz}`
/// and reading the coefficient of `z^{N−1}`.
pub fn glaisher_w1_exact(big_n: u64, n: i64) -> Rational {
    let s = big_n as usize;
    let b = bernoulli_numbers(s);
    let mut inv_fact = vec![Rational::from(1); s];
    for r in 1..s {
        inv_fact[r] = Rational::from(&inv_fact[r - 1] / r as u32);
    }
    let mut prod: Vec<Rational> = (0..s)
        .map(|r| Rational::from(Integer::from(-n).pow(r as u32)) * &inv_fact[r])
        .collect();
    for j in 1..=big_n {
        let mut jp = Integer::from(1);
        let f: Vec<Rational> = (0..s)
            .map(|r| {
                let v = Rational::from(&b[r] * &inv_fact[r]) * &jp;
                jp *= j;
                v
            })
            .collect();
        let mut next = vec![Rational::new(); s];
        for (i, a) in prod.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (jdx, c) in f.iter().enumerate().take(s - i) {
                next[i + jdx] += Rational::from(a * c);
            }
        }
        prod = next;
    }
    let mut out = prod.swap_remove(s - 1) / factorial(big_n);
    if big_n % 2 == 0 {
        out = -out;
    }
    out
}

fn ramanujan_q(k: u64, n: i64) -> Rational {
    Rational::from(ramanujan_sum(k, n))
}

/// Closed forms of `W_k(N,n)` for `N − k ∈ {0, 1, 2}` as sums of Ramanujan sums.
pub fn closed_small(k: u64, big_n: u64, n: i64) -> Result<Rational> {
    if k == 0 || big_n < k {
        return Err(Error::Usage(format!("closed form needs 1 <= k <= N, got k={k}, N={big_n}")));
    }
    let kk = Rational::from(k * k);
    match big_n - k {
        0 => Ok(ramanujan_q(k, n) / kk),
        1 if k >= 2 => {
            let mut acc = Rational::new();
            for j in 0..k {
                let b1 = bernoulli_poly(1, &Rational::from((j, k)));
                acc += b1 * ramanujan_q(k, j as i64 - n);
            }
            Ok(-acc / kk)
        }
        2 if k >= 3 => {
            let l = match k % 4 {
                0 => k,
                2 => k / 2,
                _ => 2 * k,
            };
            let mut first = Rational::new();
            for j in 0..k {
                let x = Rational::from((j, k));
                let w = bernoulli_poly(1, &x) * 3u32 + bernoulli_poly(2, &x) * k;
                first += w * ramanujan_q(k, j as i64 - n);
            }
            let mut second = Rational::new();
            for j in 0..l {
                let x = Rational::from((j, l));
                second += bernoulli_poly(1, &x) * ramanujan_q(l, j as i64 - n);
            }
            let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
            let four_kk = Rational::from(4 * k * k);
            Ok(-first / &four_kk - second * sign / four_kk)
        }
        _ => Err(Error::Usage(format!(
            "no closed form for k={k}, N={big_n} (needs N-k in {{0,1,2}}, k>=2 for N=k+1, k>=3 for N=k+2)"
        ))),
    }
}

/// Prime-modulus closed forms of `W_p(N,n)` for `N ∈ {p, p+1, p+2}`.
pub fn prime_closed(p: u64, big_n: u64, n: i64) -> Result<Rational> {
    let nb = n.rem_euclid(p as i64);
    let pp = Rational::from(p * p);
    match big_n as i64 - p as i64 {
        0 => Ok(Rational::from(if nb == 0 { p as i64 - 1 } else { -1 }) / pp),
        1 => {
            let half = (p as i64 - 1) / 2;
            Ok(Rational::from(half - nb) / pp)
        }
        2 if p >= 3 => {
            let pi = p as i64;
            let mut v = Rational::from(-nb * nb + nb * (pi - 3));
            let sign = if nb % 2 == 0 { 1 } else { -1 };
            v += Rational::from((sign * pi, 2));
            v -= Rational::from((pi * pi - 9 * pi + 11, 6));
            Ok(v / Rational::from(4 * p * p))
        }
        _ => Err(Error::Usage(format!("no prime closed form for p={p}, N={big_n}"))),
    }
}
