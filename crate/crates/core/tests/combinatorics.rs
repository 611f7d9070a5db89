use proptest::prelude::*;
use sylwave::combinatorics::*;
use sylwave::PrecisionContext;

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

#[test]
fn bernoulli_values() {
    assert_eq!(bernoulli(1, Some(&q(1, 3))), q(-1, 6));
    assert_eq!(bernoulli(2, Some(&q(0, 1))), q(1, 6));
    assert_eq!(bernoulli(12, None), q(-691, 2730));
    assert_eq!(bernoulli(3, None), q(0, 1));
}

#[test]
fn bernoulli_binomial_identity() {
    // Σ_{j=0}^{m} C(m+1, j) B_j = 0 for m ≥ 1
    for m in 1..80usize {
        let mut acc = Rational::new();
        for j in 0..=m {
            acc += bernoulli_number(j) * Integer::from(Integer::binomial_u(m as u32 + 1, j as u32));
        }
        assert_eq!(acc, 0, "m={m}");
    }
}

#[test]
fn stirling_values() {
    assert_eq!(stirling2(0, 0), 1);
    assert_eq!(stirling2(3, 2), 3);
    assert_eq!(stirling2(6, 3), 90);
    assert_eq!(stirling2(5, 0), 0);
    assert_eq!(stirling2(2, 5), 0);
}

fn set_partitions_into_blocks(m: usize, j: usize) -> u64 {
    // brute force: assign each element a block label with blocks introduced in order
    fn rec(i: usize, m: usize, used: usize, j: usize) -> u64 {
        if i == m {
            return (used == j) as u64;
        }
        let mut c = 0;
        for b in 0..used {
            let _ = b;
            c += rec(i + 1, m, used, j);
        }
        if used < j {
            c += rec(i + 1, m, used + 1, j);
        }
        c
    }
    rec(0, m, 0, j)
}

#[test]
fn stirling_matches_enumeration() {
    for m in 0..8 {
        for j in 0..=m {
            assert_eq!(stirling2(m, j), set_partitions_into_blocks(m, j), "S({m},{j})");
        }
    }
}

#[test]
fn mobius_and_ramanujan() {
    assert_eq!(mobius(1), 1);
    assert_eq!(mobius(4), 0);
    assert_eq!(mobius(30), -1);
    assert_eq!(ramanujan_sum(1, 17), 1);
    assert_eq!(ramanujan_sum(4, 2), -2);
    assert_eq!(ramanujan_sum(6, 0), 2);
    assert_eq!(ramanujan_sum(6, 0), euler_phi(6));
}

#[test]
fn farey_small_and_count() {
    let f1 = farey_enumerate(1);
    assert_eq!(f1, vec![FareyFraction { h: 0, k: 1 }]);
    let f3: Vec<(u64, u64)> = farey_enumerate(3).iter().map(|f| (f.h, f.k)).collect();
    assert_eq!(f3, vec![(0, 1), (1, 3), (1, 2), (2, 3)]);
    let total: u64 = 1 + (2..=100).map(euler_phi).sum::<u64>();
    // the half-open interval [0,1) drops 1/1, so the closed-interval count 3045 is one more
    assert_eq!(total, 3044);
    assert_eq!(farey_enumerate(100).len() as u64, total);
}

#[test]
fn farey_ordered_and_symmetric() {
    for n in 1..40u64 {
        let f = farey_enumerate(n);
        for w in f.windows(2) {
            assert!((w[0].h as u128) * (w[1].k as u128) < (w[1].h as u128) * (w[0].k as u128));
        }
        let set: std::collections::HashSet<_> = f.iter().copied().collect();
        for x in &f {
            assert_eq!(gcd(x.h as i64, x.k as i64), 1);
            if x.k >= 2 {
                assert!(set.contains(&FareyFraction { h: x.k - x.h, k: x.k }));
            }
        }
    }
}

#[test]
fn partition_values() {
    assert_eq!(partition_p(0), 1);
    assert_eq!(partition_p(8), 22);
    assert_eq!(partition_p(432).to_string(), "46647863284229267991");
}

#[test]
fn hrr_partial_terms() {
    let ctx = PrecisionContext::new(40).unwrap();
    let t = partition_hrr_terms(8, 3, &ctx);
    let want = [21.7092, 0.3463, -0.0896];
    for (a, b) in t.iter().zip(want) {
        assert!((a.to_f64() - b).abs() < 5e-5, "{a} vs {b}");
    }
    let one = partition_p_hrr(1, 1, &ctx).unwrap();
    assert!((one.to_f64() - 1.0).abs() < 0.5);
}

#[test]
fn hrr_rounds_to_exact() {
    let ctx = PrecisionContext::new(40).unwrap();
    for n in (1..=500u64).step_by(7).chain([432]) {
        let terms = (n as f64).sqrt().ceil() as u64;
        let v = partition_p_hrr(n, terms, &ctx).unwrap();
        let r = v.to_integer().unwrap();
        assert_eq!(r, partition_p(n), "n={n}");
    }
}

#[test]
fn restricted_values() {
    assert_eq!(p_restricted(5, 0), 1);
    assert_eq!(p_restricted(5, 8), 18);
    assert_eq!(p_restricted(4, -5), 0);
    assert_eq!(p_restricted(4, -10), -1);
    assert_eq!(power_sum_residue(0, 0, 2, 10), 5);
    assert_eq!(power_sum_residue(1, 1, 3, 10), 22);
    assert_eq!(power_sum_residue(2, 0, 1, 4), 30);
}

#[test]
fn restricted_matches_enumeration() {
    fn count(n: i64, max: i64, parts_left: i64) -> u64 {
        if n == 0 {
            return 1;
        }
        if parts_left == 0 {
            return 0;
        }
        (1..=max.min(n)).map(|p| count(n - p, p, parts_left - 1)).sum()
    }
    for big_n in 1..8i64 {
        for n in 0..20i64 {
            assert_eq!(p_restricted(big_n as u64, n), count(n, n, big_n), "N={big_n} n={n}");
        }
    }
}

#[test]
fn denumerants() {
    assert_eq!(denumerant_count(&[1, 2], 4), 3);
    assert_eq!(denumerant_count(&[2, 3], 1), 0);
    assert_eq!(denumerant_count(&[1, 2, 3, 4, 5], 8), p_restricted(5, 8));
}

proptest! {
    #[test]
    fn restricted_equals_unrestricted_when_large(n in 0u64..120, extra in 0u64..30) {
        prop_assert_eq!(p_restricted(n + extra + 1, n as i64), partition_p(n));
    }

    #[test]
    fn ramanujan_sum_is_multiplicative(a in 1u64..40, b in 1u64..40, n in -50i64..50) {
        prop_assume!(gcd(a as i64, b as i64) == 1);
        prop_assert_eq!(ramanujan_sum(a * b, n), ramanujan_sum(a, n) * ramanujan_sum(b, n));
    }
}

#[test]
fn cache_round_trip() {
    use sylwave::combinatorics::cache::{load_caches, save_caches, save_current_caches, CACHE_HEADER};
    let dir = std::env::temp_dir().join(format!("sylwave-cache-{}", std::process::id()));
    save_caches(&dir, 40, 100).unwrap();
    let text = std::fs::read_to_string(dir.join("partitions.txt")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], CACHE_HEADER);
    assert_eq!(lines.len(), 102);
    assert_eq!(lines[101], "190569292");
    let bern = std::fs::read_to_string(dir.join("bernoulli.txt")).unwrap();
    assert_eq!(bern.lines().nth(13), Some("-691/2730"));
    load_caches(&dir).unwrap();
    save_current_caches(&dir).unwrap();
    load_caches(&dir).unwrap();
    std::fs::write(dir.join("partitions.txt"), "1\n1\n").unwrap();
    assert!(load_caches(&dir).is_err());
    std::fs::remove_dir_all(&dir).unwrap();
}
