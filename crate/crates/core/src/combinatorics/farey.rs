/// A reduced fraction `h/k` in `[0,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FareyFraction {
    pub h: u64,
    pub k: u64,
}

/// The Farey fractions of order `N` in `[0,1)`, in increasing order.
pub fn farey_enumerate(n: u64) -> Vec<FareyFraction> {
    assert!(n >= 1);
    let mut out = vec![FareyFraction { h: 0, k: 1 }];
    let (mut a, mut b, mut c, mut d) = (0u64, 1u64, 1u64, n);
    while c < d {
        out.push(FareyFraction { h: c, k: d });
        let q = (n + b) / d;
        let (nc, nd) = (q * c - a, q * d - b);
        a = c;
        b = d;
        c = nc;
        d = nd;
    }
    out
}

/// The fractions with denominator exactly `k`: all `h` in `[0,k)` coprime to `k`.
pub fn fractions_with_denominator(k: u64) -> Vec<u64> {
    if k == 1 {
        return vec![0];
    }
    (1..k).filter(|&h| super::arith::gcd(h as i64, k as i64) == 1).collect()
}
