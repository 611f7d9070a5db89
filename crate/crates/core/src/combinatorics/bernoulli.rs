use std::sync::RwLock;

use rug::{Integer, Rational};

/// Bernoulli numbers `B_0..` with `B_1 = −1/2`, extended on demand.
static BERNOULLI: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// Tangent numbers `T_1..T_n` (tan x = Σ T_j x^{2j−1}/(2j−1)!), integer-only recurrence.
fn tangent_numbers(n: usize) -> Vec<Integer> {
    let mut t = vec![Integer::new(); n + 1];
    if n == 0 {
        return t;
    }
    t[1] = Integer::from(1);
    for k in 2..=n {
        let prev = Integer::from(&t[k - 1] * (k as u32 - 1));
        t[k] = prev;
    }
    for k in 2..=n {
        for j in k..=n {
            let a = Integer::from(&t[j - 1] * (j - k) as u32);
            let b = Integer::from(&t[j] * (j - k + 2) as u32);
            t[j] = a + b;
        }
    }
    t
}

fn compute_table(max_index: usize) -> Vec<Rational> {
    let half = max_index / 2;
    let t = tangent_numbers(half);
    let mut b = vec![Rational::new(); max_index + 1];
    b[0] = Rational::from(1);
    if max_index >= 1 {
        b[1] = Rational::from((-1, 2));
    }
    for n in 1..=half {
        // B_{2n} = (−1)^{n−1}·2n·T_n / (2^{2n}(2^{2n}−1))
        let p = Integer::from(1) << (2 * n as u32);
        let den = Integer::from(&p * Integer::from(&p - 1u32));
        let mut num = Integer::from(&t[n] * (2 * n) as u32);
        if n % 2 == 0 {
            num = -num;
        }
        b[2 * n] = Rational::from((num, den));
    }
    b
}

/// The Bernoulli number `B_m` (convention `B_1 = −1/2`).
pub fn bernoulli_number(m: usize) -> Rational {
    {
        let cache = BERNOULLI.read().expect("bernoulli cache poisoned");
        if m < cache.len() {
            return cache[m].clone();
        }
    }
    let mut cache = BERNOULLI.write().expect("bernoulli cache poisoned");
    if m >= cache.len() {
        let target = (m + 1).max(2 * cache.len()).max(64);
        *cache = compute_table(target);
    }
    cache[m].clone()
}

/// All of `B_0..=B_m` in one lock acquisition.
pub fn bernoulli_numbers(m: usize) -> Vec<Rational> {
    bernoulli_number(m);
    let cache = BERNOULLI.read().expect("bernoulli cache poisoned");
    cache[..=m].to_vec()
}

/// Number of Bernoulli numbers currently held in memory.
pub fn bernoulli_cached() -> usize {
    BERNOULLI.read().expect("bernoulli cache poisoned").len()
}

/// Seed the cache from previously computed values (used by the on-disk cache).
pub fn seed_bernoulli(values: Vec<Rational>) {
    let mut cache = BERNOULLI.write().expect("bernoulli cache poisoned");
    if values.len() > cache.len() {
        *cache = values;
    }
}

/// Bernoulli polynomial `B_m(x) = Σ C(m,i) B_i x^{m−i}`.
pub fn bernoulli_poly(m: usize, x: &Rational) -> Rational {
    let b = bernoulli_numbers(m);
    let mut acc = Rational::new();
    let mut xp = Rational::from(1);
    // accumulate from the top index so x^{m−i} grows with the loop
    for i in (0..=m).rev() {
        let c = Integer::from(Integer::binomial_u(m as u32, i as u32));
        acc += Rational::from(&b[i] * &xp) * c;
        xp *= x;
    }
    acc
}

/// `B_m` when `x` is absent, otherwise the polynomial value `B_m(x)`.
pub fn bernoulli(m: usize, x: Option<&Rational>) -> Rational {
    match x {
        None => bernoulli_number(m),
        Some(x) => bernoulli_poly(m, x),
    }
}

/// Stirling number of the second kind.
pub fn stirling2(m: usize, j: usize) -> Integer {
    if j > m {
        return Integer::new();
    }
    if m == 0 {
        return Integer::from(1);
    }
    // row-by-row triangle S(r, i) = i·S(r−1, i) + S(r−1, i−1)
    let mut row = vec![Integer::new(); j + 1];
    row[0] = Integer::from(1);
    for r in 1..=m {
        for i in (1..=j.min(r)).rev() {
            let t = Integer::from(&row[i] * i as u32);
            row[i] = t + &row[i - 1];
        }
        row[0] = Integer::new();
    }
    row[j].clone()
}
