use rug::Integer;

pub fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Prime factorization by trial division, as (prime, exponent) pairs.
pub fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Möbius function.
pub fn mobius(m: u64) -> i32 {
    assert!(m >= 1, "mobius is defined for positive integers");
    let f = factorize(m);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Euler's totient.
pub fn euler_phi(m: u64) -> u64 {
    factorize(m)
        .iter()
        .fold(m, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn divisors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m % d == 0 {
            small.push(d);
            if d * d != m {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Ramanujan sum `c_k(n) = Σ_{d | gcd(k,n)} d·μ(k/d)`.
pub fn ramanujan_sum(k: u64, n: i64) -> Integer {
    assert!(k >= 1);
    let g = gcd(k as i64, n) as u64;
    let g = if g == 0 { k } else { g };
    let mut acc = Integer::new();
    for d in divisors(g) {
        acc += Integer::from(d) * mobius(k / d);
    }
    acc
}
