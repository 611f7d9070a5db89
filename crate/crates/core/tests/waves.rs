use proptest::prelude::*;
use rug::{Float, Integer, Rational};
use sylwave::combinatorics::{farey_enumerate, p_restricted, partition_p};
use sylwave::waves::*;
use sylwave::{BigComplex, PrecisionContext};

fn ctx(d: u32) -> PrecisionContext {
    PrecisionContext::new(d).unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn close(a: &Float, b: &Float, tol: f64) -> bool {
    let d = Float::with_val(a.prec(), a - b).abs();
    d.to_f64() <= tol * b.to_f64().abs().max(1.0)
}

fn poly(c: &[i64], den: i64) -> Vec<Rational> {
    c.iter().map(|&x| q(x, den)).collect()
}

#[test]
fn first_waves_at_eight() {
    let c = ctx(40);
    let want = [(1, 21.4127), (2, 0.4112), (3, -0.0566), (8, 0.0625)];
    for (k, w) in want {
        let v = wave(k, 8, 8, &c, WaveRoute::Auto).unwrap().to_f64();
        assert!((v - w).abs() < 5e-5, "W_{k}(8,8) = {v}");
    }
}

#[test]
fn fifth_wave_of_five() {
    let c = ctx(40);
    let want = [4, -1, -1, -1, -1];
    for n in 0..10i64 {
        let v = wave(5, 5, n, &c, WaveRoute::Auto).unwrap();
        let w = Float::with_val(c.bits(), &q(want[(n % 5) as usize], 25));
        assert!(close(&v, &w, 1e-35));
        assert_eq!(closed_small(5, 5, n).unwrap(), q(want[(n % 5) as usize], 25));
    }
}

#[test]
fn exact_first_wave_polynomials() {
    let five = poly(&[50651, 38250, 9300, 900, 30], 86400);
    let six = poly(&[598731, 439810, 110250, 12320, 630, 12], 1036800);
    for n in -20..20i64 {
        let x = Rational::from(n);
        assert_eq!(wave_exact_w1(5, n), poly_eval(&five, &x));
        assert_eq!(wave_exact_w1(6, n), poly_eval(&six, &x));
        assert_eq!(glaisher_w1_exact(6, n), poly_eval(&six, &x));
    }
}

#[test]
fn exact_first_wave_agrees_with_direct_product() {
    for big_n in 1..=14u64 {
        for n in [-30i64, -1, 0, 7, 40] {
            assert_eq!(wave_exact_w1(big_n, n), glaisher_w1_exact(big_n, n), "N={big_n} n={n}");
        }
    }
}

#[test]
fn first_wave_at_432() {
    let v = wave_exact_w1(432, 432);
    let int_part = Integer::from(v.trunc_ref());
    assert_eq!(int_part.to_string(), "46647863284228241960");
    let frac = Float::with_val(64, &(v - Rational::from(int_part))).to_f64();
    assert_eq!((frac * 10.0).round(), 9.0, "fractional part {frac}");
    assert_eq!(partition_p(432).to_string(), "46647863284229267991");
    let rel = Float::with_val(128, Rational::from(partition_p(432)) / wave_exact_w1(432, 432)) - 1u32;
    assert!(rel.to_f64().abs() < 3e-14);
}

#[test]
fn polynomial_sets_match_known_forms() {
    let c = ctx(60);
    let s = wave_poly(2, 5, &c).unwrap();
    assert_eq!(s.polys[0], poly(&[15, 2], 128));
    assert_eq!(s.polys[1], poly(&[-15, -2], 128));

    let s = wave_poly(1, 5, &c).unwrap();
    assert_eq!(s.polys[0], poly(&[50651, 38250, 9300, 900, 30], 86400));

    let s = wave_poly(3, 10, &c).unwrap();
    assert_eq!(s.polys[0], poly(&[4317, 344, 6], 52488));
    assert_eq!(s.polys[1], poly(&[-770, -28], 52488));
    assert_eq!(s.polys[2], poly(&[-3547, -316, -6], 52488));

    let s = wave_poly(2, 10, &c).unwrap();
    let base = poly(&[9406331, 1905750, 125400, 3300, 30], 88473600);
    assert_eq!(s.polys[0], base);
    let neg: Vec<Rational> = base.iter().map(|x| Rational::from(-x)).collect();
    assert_eq!(s.polys[1], neg);
}

#[test]
fn polynomial_set_invariants() {
    let c = ctx(60);
    for big_n in 1..=24u64 {
        for k in 1..=big_n.min(12) {
            let s = wave_poly(k, big_n, &c).unwrap();
            assert!(s.degrees_ok(), "degree k={k} N={big_n}");
            assert!(s.sums_vanish(), "vanishing sums k={k} N={big_n}");
            for n in 0..(2 * k as i64) {
                let w = wave(k, big_n, n, &c, WaveRoute::Auto).unwrap();
                let e = Float::with_val(c.bits(), &s.eval(n));
                assert!(close(&w, &e, 1e-50), "k={k} N={big_n} n={n}");
            }
        }
    }
}

#[test]
fn closed_forms_match_interpolation() {
    let c = ctx(50);
    for k in 1..=30u64 {
        for d in 0..=2u64 {
            if (d == 1 && k < 2) || (d == 2 && k < 3) {
                assert!(closed_small(k, k + d, 0).is_err());
                continue;
            }
            let a = wave_poly(k, k + d, &c).unwrap();
            let b = wave_poly_closed(k, k + d).unwrap();
            assert_eq!(a.polys, b.polys, "k={k} N={}", k + d);
        }
    }
}

#[test]
fn prime_closed_forms() {
    for p in [3u64, 5, 7, 11, 13] {
        for d in 0..=2u64 {
            for n in -3 * p as i64..3 * p as i64 {
                assert_eq!(prime_closed(p, p + d, n).unwrap(), closed_small(p, p + d, n).unwrap(), "p={p} d={d} n={n}");
            }
        }
    }
}

#[test]
fn routes_agree() {
    let c = ctx(50);
    for big_n in 1..=14u64 {
        for k in 1..=big_n {
            for n in [-17i64, 0, 3, 29] {
                let a = wave(k, big_n, n, &c, WaveRoute::PowerSums).unwrap();
                let b = wave(k, big_n, n, &c, WaveRoute::SeriesAtRoots).unwrap();
                let r = wave(k, big_n, n, &c, WaveRoute::ResidueSum).unwrap();
                assert!(close(&a, &b, 1e-40), "series k={k} N={big_n} n={n}");
                assert!(close(&a, &r, 1e-40), "residue k={k} N={big_n} n={n}");
                if k == 1 {
                    let g = wave(1, big_n, n, &c, WaveRoute::GlaisherW1).unwrap();
                    assert!(close(&a, &g, 1e-40));
                }
                if big_n - k <= 2 && closed_small(k, big_n, n).is_ok() {
                    let s = wave(k, big_n, n, &c, WaveRoute::ClosedSmall).unwrap();
                    assert!(close(&a, &s, 1e-40));
                }
            }
        }
    }
    assert!(wave(2, 8, 0, &c, WaveRoute::GlaisherW1).is_err());
    assert!(wave(2, 8, 0, &c, WaveRoute::ClosedSmall).is_err());
}

#[test]
fn sylvester_identity() {
    let c = ctx(50);
    for big_n in 1..=25u64 {
        for n in 0..=50i64 {
            let total = waves_sum(big_n, n, big_n, &c).unwrap();
            let want = Float::with_val(c.bits(), &p_restricted(big_n, n));
            let err = Float::with_val(c.bits(), &total - &want).abs().to_f64();
            assert!(err < 1e-15, "N={big_n} n={n} err={err}");
        }
    }
}

fn sigma(v: i64) -> BigComplex {
    BigComplex::from_i64(256, v)
}

#[test]
fn full_residue_sum() {
    let c = ctx(40);
    for big_n in 1..=12u64 {
        let farey = farey_enumerate(big_n);
        let t = (big_n * (big_n + 1) / 2) as i64;
        for n in (-t - 20)..=20 {
            let mut acc = BigComplex::zero(c.bits());
            for f in &farey {
                let r = q_residue(f.h, f.k, &sigma(-n), big_n, &c, ResidueMethod::Auto).unwrap();
                acc -= &r.value;
            }
            let want = if n >= 0 {
                p_restricted(big_n, n)
            } else if n > -t {
                Integer::new()
            } else {
                let v = p_restricted(big_n, -n - t);
                if big_n % 2 == 1 { v } else { -v }
            };
            let err = (acc.re.to_f64() - want.to_f64()).abs() + acc.im.to_f64().abs();
            assert!(err < 1e-15, "N={big_n} n={n} got {} want {want}", acc.re.to_f64());
        }
    }
}

#[test]
fn residue_examples() {
    let c = ctx(40);
    for s in [-3i64, 0, 5] {
        let r = q_residue(0, 1, &sigma(s), 1, &c, ResidueMethod::Series).unwrap();
        assert!((r.value.re.to_f64() + 1.0).abs() < 1e-30 && r.value.im.to_f64().abs() < 1e-30);
    }
    let a = q_residue(1, 7, &sigma(-3), 8, &c, ResidueMethod::SimpleClosed).unwrap();
    let b = q_residue(1, 7, &sigma(-3), 8, &c, ResidueMethod::Series).unwrap();
    assert!((&a.value - &b.value).abs().to_f64() < 1e-32);
    assert!(q_residue(2, 4, &sigma(0), 8, &c, ResidueMethod::Auto).is_err());
    assert!(q_residue(1, 9, &sigma(0), 8, &c, ResidueMethod::Auto).is_err());
    assert!(q_residue(1, 3, &sigma(0), 8, &c, ResidueMethod::SimpleClosed).is_err());
}

#[test]
fn residue_methods_agree_with_product() {
    let c = ctx(40);
    for big_n in [6u64, 11] {
        for f in farey_enumerate(big_n) {
            for s in [-9i64, 4] {
                let a = q_residue(f.h, f.k, &sigma(s), big_n, &c, ResidueMethod::Series).unwrap();
                let b = q_residue(f.h, f.k, &sigma(s), big_n, &c, ResidueMethod::Product).unwrap();
                let scale = b.value.abs().to_f64().max(1e-30);
                assert!((&a.value - &b.value).abs().to_f64() / scale < 1e-30, "{}/{} N={big_n}", f.h, f.k);
            }
        }
    }
}

#[test]
fn q_eval_examples() {
    let c = ctx(40);
    let z = BigComplex::i(c.bits());
    let v = q_eval(&z, 1, &sigma(0), &c).unwrap();
    let want = 1.0 / (1.0 - (-2.0 * std::f64::consts::PI).exp());
    assert!((v.re.to_f64() - want).abs() < 1e-14 && v.im.to_f64().abs() < 1e-14);
    let pole = BigComplex::from_rational(c.bits(), &q(1, 3));
    assert!(q_eval(&pole, 4, &sigma(0), &c).is_err());
}

#[test]
fn apostol_values() {
    let c = ctx(40);
    for m in 0..=10usize {
        let b = apostol_beta(m, 1, 0, &c).unwrap();
        let want = sylwave::combinatorics::bernoulli_number(m);
        assert!(close(&b.re, &Float::with_val(c.bits(), &want), 1e-35) && b.im.to_f64().abs() < 1e-35);
        let minus = apostol_beta(m, 2, 1, &c).unwrap();
        let want = want * Rational::from((Integer::from(1) << m as u32) - 1);
        assert!(close(&minus.re, &Float::with_val(c.bits(), &want), 1e-35), "m={m}");
        assert!(minus.im.to_f64().abs() < 1e-35);
    }
    let b0 = apostol_beta(0, 3, 1, &c).unwrap();
    assert!(b0.abs().to_f64() < 1e-30);
    let one = BigComplex::one(c.bits());
    assert!(apostol_beta_stirling(3, &one, c.bits()).is_err());
}

#[test]
fn denumerant_waves() {
    let c = ctx(40);
    let full = Denumerant::first_n(5);
    let a = wave_denumerant(2, &full, 7, &c).unwrap();
    let b = wave(2, 5, 7, &c, WaveRoute::Auto).unwrap();
    assert!(close(&a, &b, 1e-30));

    let d = Denumerant::new(vec![1, 2]).unwrap();
    let mut total = Float::new(c.bits());
    for k in d.wave_moduli() {
        total += wave_denumerant(k, &d, 4, &c).unwrap();
    }
    assert!((total.to_f64() - 3.0).abs() < 1e-30);
    assert_eq!(d.count(4), 3);

    // {2,3}: one multiple of 3, so W_3 is constant on each residue class
    let d = Denumerant::new(vec![2, 3]).unwrap();
    assert_eq!(d.multiples_of(3), 1);
    for n in 0..3i64 {
        let a = wave_denumerant(3, &d, n, &c).unwrap();
        let b = wave_denumerant(3, &d, n + 3, &c).unwrap();
        let e = wave_denumerant(3, &d, n + 30, &c).unwrap();
        assert!(close(&a, &b, 1e-30) && close(&a, &e, 1e-30));
    }
    assert!(wave_denumerant(5, &d, 1, &c).is_err());
    assert!(Denumerant::new(vec![]).is_err());
    assert!(Denumerant::new(vec![2, 0]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn denumerant_sum_counts(parts in prop::collection::vec(1u64..7, 1..5), n in 0i64..40) {
        let c = ctx(40);
        let d = Denumerant::new(parts).unwrap();
        let mut total = Float::new(c.bits());
        for k in d.wave_moduli() {
            total += wave_denumerant(k, &d, n, &c).unwrap();
        }
        let want = d.count(n).to_f64();
        prop_assert!((total.to_f64() - want).abs() < 1e-20);
    }

    #[test]
    fn q_symmetries(re in -2.0f64..2.0, im in 0.05f64..1.0, big_n in 1u64..9, s in -20i64..20) {
        let c = ctx(40);
        let bits = c.bits();
        let z = BigComplex::from_f64(bits, re, im);
        let sg = sigma(s);
        let v = q_eval(&z, big_n, &sg, &c).unwrap();
        let shifted = &z + &BigComplex::one(bits);
        let w = q_eval(&shifted, big_n, &sg, &c).unwrap();
        // integer σ: e^{2πiσ} = 1
        prop_assert!(w.rel_diff(&v).to_f64() < 1e-30);
        let t = (big_n * (big_n + 1) / 2) as i64;
        let neg = -z.clone();
        let a = q_eval(&neg, big_n, &sg, &c).unwrap();
        let mut b = q_eval(&z, big_n, &sigma(t - s), &c).unwrap();
        if big_n % 2 == 1 { b = -b; }
        prop_assert!(a.rel_diff(&b).to_f64() < 1e-30);
    }

    #[test]
    fn residue_conjugate_symmetry(big_n in 2u64..12, s in -15i64..15, pick in 0usize..1000) {
        let c = ctx(40);
        let fr: Vec<_> = farey_enumerate(big_n).into_iter().filter(|f| f.k >= 2).collect();
        let f = &fr[pick % fr.len()];
        let a = q_residue(f.k - f.h, f.k, &sigma(s), big_n, &c, ResidueMethod::Auto).unwrap();
        let b = q_residue(f.h, f.k, &sigma(s), big_n, &c, ResidueMethod::Auto).unwrap();
        let scale = b.value.abs().to_f64().max(1e-30);
        prop_assert!((&a.value - &b.value.conj()).abs().to_f64() / scale < 1e-30);
    }
}
