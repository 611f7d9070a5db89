use rug::{Float, Rational};
use sylwave::asymptotics::{aux_eval, AuxArgs, AuxFamily};
use sylwave::combinatorics::{farey_enumerate, p_restricted};
use sylwave::waves::{q_residue, wave_exact_w1, ResidueMethod};
use sylwave::wavesums::*;
use sylwave::{BigComplex, Error, PrecisionContext};

fn ctx(d: u32) -> PrecisionContext {
    PrecisionContext::new(d).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// `Σ Q_{hkσ}(N)` over the listed fractions via the Laurent-series route.
fn series_sum(big_n: u64, sigma: i64, fr: &[(u64, u64)], c: &PrecisionContext) -> BigComplex {
    let s = BigComplex::from_i64(c.bits(), sigma);
    let mut acc = BigComplex::zero(c.bits());
    for &(h, k) in fr {
        acc += &q_residue(h, k, &s, big_n, c, ResidueMethod::Series).unwrap().value;
    }
    acc
}

fn class_a(n: u64) -> Vec<(u64, u64)> {
    (n / 2 + 1..=n).filter(|&k| k >= 2).flat_map(|k| [(1, k), (k - 1, k)]).collect()
}

fn class_c(n: u64, lo3: bool) -> Vec<(u64, u64)> {
    // lo3: 2N/k ∈ [3,4) (the starred half), otherwise 2N/k ∈ [2,3)
    (n / 2 + 1..=n)
        .filter(|&k| k % 2 == 1 && k >= 5 && ((3 * k <= 2 * n) == lo3))
        .flat_map(|k| [(2, k), (k - 2, k)])
        .collect()
}

fn class_d(n: u64) -> Vec<(u64, u64)> {
    (n / 2 + 1..=n).filter(|&k| k % 2 == 1 && k >= 3).flat_map(|k| [((k - 1) / 2, k), ((k + 1) / 2, k)]).collect()
}

fn class_e(n: u64) -> Vec<(u64, u64)> {
    (n / 3 + 1..=n / 2).filter(|&k| k >= 3).flat_map(|k| [(1, k), (k - 1, k)]).collect()
}

fn assert_matches(name: &str, got: &Float, want: &BigComplex, c: &PrecisionContext) {
    let scale = want.re.to_f64().abs().max(1e-300);
    let tol = 10f64.powi(-(c.decimal_digits() as i32) / 2);
    let err = (got.to_f64() - want.re.to_f64()).abs() / scale;
    assert!(err < tol, "{name}: class sum {} vs residues {}", got.to_f64(), want.re.to_f64());
    assert!(want.im.to_f64().abs() < tol * scale, "{name}: residues not real");
}

#[test]
fn sine_products() {
    let c = ctx(40);
    assert_eq!(sine_product(&Rational::from((3, 5)), 0, &c).unwrap().to_f64(), 1.0);
    assert!((sine_product(&Rational::from((1, 2)), 1, &c).unwrap().to_f64() - 2.0).abs() < 1e-35);
    for k in [7i64, 12, 31] {
        let v = sine_product(&Rational::from((1, k)), k as u64 - 1, &c).unwrap();
        assert!((v.to_f64() - k as f64).abs() < 1e-30, "k={k}");
    }
    assert!(matches!(sine_product(&Rational::from((2, 7)), 7, &c), Err(Error::ZeroProduct(_))));
}

#[test]
fn sine_main_term() {
    let c = ctx(40);
    let err = |big_n: u64, k: u64, corrected: bool| {
        let exact = sine_product(&Rational::from((1, k as i64)), big_n - k, &c).unwrap().recip();
        let mut main = sine_product_main_term(big_n, k, &c).unwrap();
        if corrected {
            let z = BigComplex::from_rational(c.bits(), &Rational::from((big_n as i64, k as i64)));
            let args = AuxArgs { index: 1, z, param: Rational::new() };
            let g1 = aux_eval(AuxFamily::G, &args, &c).unwrap();
            main *= Float::with_val(c.bits(), g1.re / big_n).exp();
        }
        rel(main.to_f64(), exact.to_f64())
    };
    assert!(err(400, 300, false) < 1e-2);
    assert!(err(400, 300, true) < 1e-3);
    let sweep: Vec<f64> = [(200, 150), (400, 300), (800, 600)].iter().map(|&(n, k)| err(n, k, false)).collect();
    assert!(sweep[0] > sweep[1] && sweep[1] > sweep[2], "{sweep:?}");
    assert!(matches!(sine_product_main_term(400, 399, &c), Err(Error::Domain(_))));
}

#[test]
fn a_class_equals_its_residues() {
    let c = ctx(40);
    for big_n in [50u64, 121, 200] {
        for sigma in [-(big_n as i64), 0, 13, -2 * big_n as i64] {
            let got = sum_a1(big_n, sigma, &c).unwrap();
            let want = series_sum(big_n, sigma, &class_a(big_n), &c);
            assert_matches(&format!("A N={big_n} σ={sigma}"), &got.value, &want, &c);
        }
    }
}

#[test]
fn double_pole_classes_equal_their_residues() {
    let c = ctx(40);
    for big_n in [40u64, 41, 60, 61] {
        for sigma in [-(big_n as i64), -2 * big_n as i64, 0, 7] {
            let tag = format!("N={big_n} σ={sigma}");
            let (c2, cs, c1) = sum_c(big_n, sigma, &c).unwrap();
            assert_matches(&format!("C2 {tag}"), &c2.value, &series_sum(big_n, sigma, &class_c(big_n, false), &c), &c);
            assert_matches(&format!("C2* {tag}"), &cs.value, &series_sum(big_n, sigma, &class_c(big_n, true), &c), &c);
            let sum = Float::with_val(c.bits(), &c2.value + &cs.value);
            assert!((sum - &c1.value).abs().to_f64() <= 1e-30 * c1.value.to_f64().abs().max(1.0));
            let d = sum_d1(big_n, sigma, &c).unwrap();
            assert_matches(&format!("D {tag}"), &d.value, &series_sum(big_n, sigma, &class_d(big_n), &c), &c);
            let e = sum_e1(big_n, sigma, &c).unwrap();
            assert_matches(&format!("E {tag}"), &e.value, &series_sum(big_n, sigma, &class_e(big_n), &c), &c);
        }
    }
}

fn sig6(got: &Float, want: f64) -> bool {
    rel(got.to_f64(), want) < 5e-6
}

#[test]
fn class_sums_match_tables_at_1200() {
    let c = ctx(40);
    let a = [-1.60784e30, 1.72507e30, -1.94291e31];
    let c2 = [3.93016e7, -8.98650e7, -3.21242e9];
    let cs = [-3.38622e11, -5.36404e11, -5.00737e11];
    let e = [1.17905e8, -2.69595e8, -9.63726e9];
    for (i, sigma) in [-400i64, -1200, -2400].into_iter().enumerate() {
        assert!(sig6(&sum_a1(1200, sigma, &c).unwrap().value, a[i]), "A σ={sigma}");
        let (x, y, _) = sum_c(1200, sigma, &c).unwrap();
        assert!(sig6(&x.value, c2[i]), "C2 σ={sigma}");
        assert!(sig6(&y.value, cs[i]), "C2* σ={sigma}");
        assert!(sig6(&sum_e1(1200, sigma, &c).unwrap().value, e[i]), "E σ={sigma}");
    }
}

/// The tabulated D values carry a factor (−1)^{σ+1} relative to the residue sum,
/// so they agree with it for odd σ and are its negative for even σ.
#[test]
fn d_class_matches_tables_up_to_sigma_parity() {
    let c = ctx(40);
    let rows = [
        (1200u64, -400i64, -1.53757e12),
        (1200, -1200, 2.20181e12),
        (1200, -2400, -5.60866e12),
        (1203, -401, -2.17904e12),
        (1203, -1203, 1.73545e12),
        (1203, -2406, -7.66007e12),
    ];
    for (big_n, sigma, printed) in rows {
        let v = sum_d1(big_n, sigma, &c).unwrap().value;
        let convention = if sigma % 2 == 0 { -1.0 } else { 1.0 };
        assert!(sig6(&v, convention * printed), "D N={big_n} σ={sigma}: {}", v.to_f64());
    }
}

#[test]
fn phi_is_order_n() {
    let big_n = 1200u64;
    for sigma in [-400i64, -1200, -2400] {
        for k in big_n / 3 + 1..=big_n / 2 {
            let p = e_phi(big_n, k, sigma, 128);
            let m = p.abs().to_f64();
            assert!(m <= 10.0 * big_n as f64, "k={k} |φ|={m}");
        }
    }
}

#[test]
fn a_class_growth_rate() {
    let c = ctx(40);
    let u = 0.0680762;
    let r: Vec<f64> = [600u64, 900, 1200]
        .iter()
        .map(|&n| sum_a1(n, -(n as i64), &c).unwrap().value.abs().ln().to_f64() / n as f64)
        .collect();
    assert!(r[0] < r[1] && r[1] < r[2] && r[2] < u, "{r:?}");
    assert!(rel(r[2], u) < 0.2, "{r:?}");
}

#[test]
fn empty_remainder_class() {
    let c = ctx(40);
    let b = sum_b(100, -100, &c).unwrap();
    assert_eq!(b.term_count, 0);
    assert!(b.value.is_zero());
}

#[test]
fn class_membership() {
    assert!(in_named_class(1, 150, 200));
    assert!(in_named_class(2, 151, 200));
    assert!(in_named_class(75, 151, 200));
    assert!(in_named_class(1, 80, 200));
    assert!(!in_named_class(3, 151, 200));
    assert!(!in_named_class(1, 50, 200));
}

#[test]
fn first_waves_values() {
    let c = ctx(40);
    let v = first_waves(8, 8, 8, &c).unwrap();
    assert!((v.to_f64() - 22.0).abs() < 1e-15);
    let w = first_waves(432, 432, 1, &c).unwrap();
    let exact = Float::with_val(c.bits(), &wave_exact_w1(432, 432));
    assert!(rel(w.to_f64(), exact.to_f64()) < 1e-30);
}

#[test]
fn key_identity_and_completeness() {
    let c = ctx(60);
    for (big_n, n) in [(150u64, 150i64), (151, 150), (300, 100), (300, -200)] {
        let r = key_identity_check(big_n, n, &c).unwrap();
        assert!(r.passed());
        assert_eq!(r.term_count, r.farey_count, "N={big_n}");
        assert_eq!(r.farey_count, farey_enumerate(big_n).len() as u64);
        assert_eq!(r.p_restricted, p_restricted(big_n, n));
    }
}

#[test]
fn identity_covers_every_regime() {
    let c = ctx(60);
    let big_n = 120u64;
    let t = (big_n * (big_n + 1) / 2) as i64;
    for n in [0i64, 1, 120, 240, -1, -t] {
        let r = key_identity_check(big_n, n, &c).unwrap();
        assert!(r.residual.to_f64() < 1e-20, "n={n}");
    }
}

#[test]
fn identity_rejects_small_n() {
    assert!(matches!(key_identity_check(100, 5, &ctx(40)), Err(Error::Usage(_))));
}

#[test]
fn remaining_classes_stay_below_growth_bound() {
    let c = ctx(60);
    let big_n = 150u64;
    let r = key_identity_report(big_n, big_n as i64, &c).unwrap();
    let rest = r.c1.to_f64() + r.d1.to_f64() + r.e1.to_f64() + r.b.to_f64();
    assert!(rest.abs() < 10.0 * (0.055 * big_n as f64).exp(), "{rest}");
}

#[test]
fn reduction_is_deterministic() {
    let c = ctx(40);
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let (_, _, c1) = sum_c(211, -211, &c).unwrap();
            [sum_a1(211, -211, &c).unwrap().value, c1.value, sum_d1(211, -211, &c).unwrap().value]
        })
    };
    assert_eq!(run(1), run(3));
    let fr = class_e(121);
    let mut rev = fr.clone();
    rev.reverse();
    let fwd = series_sum(121, 9, &fr, &c);
    let bwd = series_sum(121, 9, &rev, &c);
    assert!((fwd.re.to_f64() - bwd.re.to_f64()).abs() <= 1e-30 * fwd.re.to_f64().abs());
}
