use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use qldpc_erasure::channel::{trial_rng, ErasurePattern};
use qldpc_erasure::codes::{build_hypergraph_product, four_one_example, StabilizerCode};
use qldpc_erasure::decoders::gaussian_mld;
use qldpc_erasure::evaluation::{
    binomial_pmf, binomial_tail_from, ebdd, ebdd_exponent_bound, ebdd_radius, pi_conversion,
    stratified_rate, CosetChecker,
};
use qldpc_erasure::gf2::{BinaryMatrix, BinaryVector};
use rand::Rng;

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn choose(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| {
        acc * BigInt::from(n - i) / BigInt::from(i + 1)
    })
}

fn exact_pmf(n: u64, k: u64, p: &BigRational) -> BigRational {
    let q = BigRational::one() - p;
    BigRational::from_integer(choose(n, k))
        * num::pow(p.clone(), k as usize)
        * num::pow(q, (n - k) as usize)
}

fn exact_tail(n: u64, k: u64, p: &BigRational) -> BigRational {
    (k..=n).fold(BigRational::zero(), |acc, j| acc + exact_pmf(n, j, p))
}

fn close(got: f64, want: &BigRational, rel: f64) -> bool {
    let w = want.to_f64().unwrap();
    if w == 0.0 {
        return got == 0.0;
    }
    ((got - w) / w).abs() <= rel
}

#[test]
fn binomial_matches_exact_rationals() {
    for &(num, den) in &[(1, 2), (3, 16), (1, 100), (7, 10), (385, 1000)] {
        let p = rational(num, den);
        let pf = num as f64 / den as f64;
        for n in [1u64, 4, 7, 30, 120] {
            for k in 0..=n {
                let pmf = binomial_pmf(n, k, pf);
                assert!(
                    close(pmf, &exact_pmf(n, k, &p), 1e-10),
                    "pmf n={n} k={k} p={pf}: {pmf}"
                );
                let tail = binomial_tail_from(n, k, pf);
                assert!(
                    close(tail, &exact_tail(n, k, &p), 1e-10),
                    "tail n={n} k={k} p={pf}: {tail}"
                );
            }
        }
    }
}

#[test]
fn ebdd_matches_exact_tail() {
    // 3p/4 with p = 1/5 is 3/20.
    let p = rational(3, 20);
    for (n, t) in [(40u64, 10u64), (100, 25), (200, 37)] {
        let want = exact_tail(n, ebdd_radius(t) + 1, &p);
        assert!(close(ebdd(n, t, 0.2), &want, 1e-10), "n={n} t={t}");
    }
    assert_eq!(ebdd_radius(237), 178);
}

#[test]
fn pi_conversion_matches_exact_tail() {
    let eps = rational(385, 1000);
    let want = exact_tail(4, 2, &eps);
    assert!(close(pi_conversion(4, 1, 0.385), &want, 1e-12));
    assert_eq!(pi_conversion(7, 2, 0.0), 0.0);
}

#[test]
fn ebdd_shrinks_with_length_at_fixed_fraction() {
    let mut last = 1.0;
    for n in [200u64, 500, 1000, 2000, 4000] {
        let v = ebdd(n, n / 4, 0.2);
        assert!(v < last, "n={n}: {v} >= {last}");
        last = v;
    }
}

#[test]
fn exponent_bound_dominates() {
    let mut rng = trial_rng(61, 0);
    for _ in 0..200 {
        let n = rng.gen_range(10u64..3000);
        let t = rng.gen_range(1..n);
        let p = rng.gen_range(0.0..1.0);
        let (b, e) = (ebdd_exponent_bound(n, t, p), ebdd(n, t, p));
        assert!(b >= e * (1.0 - 1e-9), "n={n} t={t} p={p}: bound {b} < {e}");
    }
}

#[test]
fn stratified_rate_matches_direct_sum() {
    let n = 60u64;
    let rates: BTreeMap<u64, f64> = [(10u64, 0.0), (20, 0.5), (30, 1.0)].into_iter().collect();
    let p = 0.3;
    let mut want = 0.0;
    for w in 0..=n {
        let f = match w {
            0..=10 => 0.0,
            11..=20 => 0.05 * (w - 10) as f64,
            21..=30 => 0.5 + 0.05 * (w - 20) as f64,
            _ => 1.0,
        };
        want += binomial_pmf(n, w, p) * f;
    }
    let got = stratified_rate(n, p, &rates);
    assert!((got - want).abs() < 1e-12, "{got} vs {want}");
}

fn errors_on(n: usize, erased: &[usize]) -> Vec<BinaryVector> {
    (0..1usize << (2 * erased.len()))
        .map(|code| {
            let mut e = BinaryVector::zeros(2 * n);
            for (i, &q) in erased.iter().enumerate() {
                let v = (code >> (2 * i)) & 3;
                e.set(q, v & 1 == 1);
                e.set(n + q, v & 2 == 2);
            }
            e
        })
        .collect()
}

/// Feasible solutions for each (erasure, syndrome) split into logical
/// classes of equal size, so any feasible output is as good as any other.
fn check_equal_classes(code: &StabilizerCode) {
    let checker = CosetChecker::new(code);
    let n = code.n();
    for mask in 1..1usize << n {
        let erased: Vec<usize> = (0..n).filter(|j| mask >> j & 1 == 1).collect();
        let mut by_syndrome: BTreeMap<String, Vec<Vec<BinaryVector>>> = BTreeMap::new();
        for e in errors_on(n, &erased) {
            let classes = by_syndrome
                .entry(code.syndrome(&e).to_string())
                .or_default();
            match classes.iter_mut().find(|c| checker.same_coset(&c[0], &e)) {
                Some(c) => c.push(e),
                None => classes.push(vec![e]),
            }
        }
        let pat = ErasurePattern::new(n, erased.clone());
        for (s, classes) in by_syndrome {
            let size = classes[0].len();
            assert!(
                classes.iter().all(|c| c.len() == size),
                "{} erasure {erased:?} syndrome {s}",
                code.id()
            );
            // The decoder's answer lands in one of them.
            let syn = code.syndrome(&classes[0][0]);
            let out = gaussian_mld(code.swapped_check_matrix(), &syn, &pat);
            assert!(classes
                .iter()
                .any(|c| checker.same_coset(&c[0], &out.estimate)));
        }
    }
}

#[test]
fn feasible_classes_have_equal_size() {
    check_equal_classes(&four_one_example());
    let h = BinaryMatrix::parse("11").unwrap();
    check_equal_classes(&build_hypergraph_product(&h, &h));
}

#[test]
fn four_one_erasure_two_four_has_two_solutions_per_class() {
    let code = four_one_example();
    let checker = CosetChecker::new(&code);
    let errors = errors_on(4, &[1, 3]);
    for s in errors.iter().map(|e| code.syndrome(e)) {
        let feasible: Vec<_> = errors.iter().filter(|e| code.syndrome(e) == s).collect();
        for e in &feasible {
            let same = feasible.iter().filter(|f| checker.same_coset(e, f)).count();
            assert_eq!(same, 2);
        }
    }
}
