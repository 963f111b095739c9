use proptest::prelude::*;
use qldpc_erasure::channel::{
    priors_for, sample_erasure, sample_erasure_of_weight, sample_error_on, trial_rng,
    ErasurePattern, PriorMode,
};
use qldpc_erasure::codes::{
    build_bicycle, build_hypergraph_product, build_toric, build_xzzx, four_one_example,
    BicycleParams, StabilizerCode,
};
use qldpc_erasure::decoders::{
    gaussian_mld, make_schedule, AlphaList, AlphaSpec, BinaryBp, DecodeInput, DecoderSpec,
    ErasureDecoder, GdOpts, Mbp2, Mbp4, ScheduleKind, TannerGraph,
};
use qldpc_erasure::gf2::{pauli_string_to_binary, BinaryMatrix, BinaryVector};
use rand::Rng;

fn hp_five_one() -> StabilizerCode {
    let h = BinaryMatrix::parse("11").unwrap();
    build_hypergraph_product(&h, &h)
}

fn small_codes() -> Vec<StabilizerCode> {
    vec![
        four_one_example(),
        hp_five_one(),
        build_toric(4).unwrap(),
        build_xzzx(5).unwrap(),
        build_bicycle(&BicycleParams {
            n: 120,
            rate: 0.5,
            w: 8,
            seed: 5,
        })
        .unwrap(),
    ]
}

fn all_specs() -> Vec<DecoderSpec> {
    let mut v = vec![DecoderSpec::Mld, DecoderSpec::GdFlip { t_max: 100 }];
    for schedule in [ScheduleKind::Parallel, ScheduleKind::GroupRandom] {
        v.push(DecoderSpec::Mbp2 {
            alpha: 0.8,
            t_max: 50,
            gd: Some(GdOpts::default()),
            schedule,
        });
        v.push(DecoderSpec::Ambp2 {
            alphas: AlphaSpec::Range {
                start: 1.0,
                stop: 0.5,
                step: 0.1,
            },
            t_max: 30,
            gd: None,
            schedule,
            parallel_alpha: false,
        });
        v.push(DecoderSpec::Mbp4 {
            alpha: 0.9,
            t_max: 50,
            schedule,
        });
        v.push(DecoderSpec::Ambp4 {
            alphas: AlphaSpec::Range {
                start: 1.0,
                stop: 0.5,
                step: 0.1,
            },
            t_max: 30,
            schedule,
            parallel_alpha: false,
        });
    }
    v
}

/// Rank of `h` equals the rank with `v` appended iff `v` is in the row space.
fn in_row_space(h: &BinaryMatrix, v: &BinaryVector) -> bool {
    h.rank()
        == h.vstack(&BinaryMatrix::from_rows(v.len(), std::slice::from_ref(v)))
            .rank()
}

#[test]
fn estimates_stay_on_erasure_and_converged_means_syndrome_match() {
    let mut rng = trial_rng(31, 0);
    for code in small_codes() {
        let prepared: Vec<_> = all_specs()
            .iter()
            .map(|s| s.prepare::<f64>(&code).unwrap())
            .collect();
        for t in 0..40 {
            let p = 0.05 + 0.45 * (t as f64 / 40.0);
            let pat = sample_erasure(code.n(), p, &mut rng);
            let e = sample_error_on(&pat, &mut rng);
            let s = code.syndrome(&e);
            let prior = priors_for(&pat, PriorMode::PureErasure);
            let input = DecodeInput {
                syndrome: &s,
                pattern: &pat,
                prior: &prior,
            };
            let mask = pat.mask();
            for d in &prepared {
                let dec = d.at(p).unwrap();
                let out = dec.decode(&input, &mut rng);
                assert_eq!(out.estimate.len(), 2 * code.n());
                for b in out.estimate.iter_ones() {
                    assert!(
                        mask[b % code.n()],
                        "{} on {} put weight off the erasure",
                        d.id(),
                        code.id()
                    );
                }
                if out.converged() {
                    assert_eq!(
                        code.syndrome(&out.estimate),
                        s,
                        "{} on {}",
                        d.id(),
                        code.id()
                    );
                }
            }
        }
    }
}

/// Exact bit marginals by enumeration of all `2^n` configurations.
fn enumerate_marginals(h: &BinaryMatrix, s: &BinaryVector, p1: &[f64]) -> Vec<f64> {
    let n = h.cols();
    let mut z = 0.0;
    let mut ones = vec![0.0; n];
    for x in 0..1u32 << n {
        let v = BinaryVector::from_indices(n, (0..n).filter(|j| x >> j & 1 == 1));
        if h.mul_vec(&v) != *s {
            continue;
        }
        let w: f64 = (0..n)
            .map(|j| if v.get(j) { p1[j] } else { 1.0 - p1[j] })
            .product();
        z += w;
        for j in v.iter_ones() {
            ones[j] += w;
        }
    }
    ones.iter().map(|o| o / z).collect()
}

#[test]
fn plain_bp_on_a_tree_is_exact() {
    // Checks {0,1,2}, {2,3,4}, {4,5,6}, {1,7}: a tree.
    let h = BinaryMatrix::parse("11100000;00111000;00001110;01000001").unwrap();
    let g = TannerGraph::from_binary(&h);
    let sched = make_schedule(&g, ScheduleKind::Parallel);
    let mut rng = trial_rng(41, 0);
    for _ in 0..20 {
        let p1: Vec<f64> = (0..8).map(|_| rng.gen_range(0.05..0.6)).collect();
        let s = BinaryVector::from_bits(&(0..4).map(|_| rng.gen_range(0..2u8)).collect::<Vec<_>>());
        let exact = enumerate_marginals(&h, &s, &p1);
        let priors: Vec<[f64; 2]> = p1.iter().map(|&p| [1.0 - p, p]).collect();
        let mut bp = BinaryBp::<f64>::new(&g, &sched, &s, &priors, 1.0, None);
        for _ in 0..10 {
            bp.step(&mut rng);
        }
        for (j, &gamma) in bp.beliefs().iter().enumerate() {
            let bp_p1 = 1.0 / (1.0 + gamma.exp());
            assert!(
                (bp_p1 - exact[j]).abs() < 1e-9,
                "bit {j}: bp {bp_p1} exact {}",
                exact[j]
            );
        }
    }
}

#[test]
fn mbp4_corrects_any_single_erasure_on_the_toric_code() {
    let code = build_toric(4).unwrap();
    let dec = Mbp4::<f64>::new(
        code.pauli(),
        ScheduleKind::GroupRandom,
        AlphaList::single(0.9).unwrap(),
        100,
    );
    let mut rng = trial_rng(43, 0);
    for q in 0..code.n() {
        let pat = ErasurePattern::new(code.n(), vec![q]);
        let prior = priors_for(&pat, PriorMode::PureErasure);
        for letter in ['I', 'X', 'Y', 'Z'] {
            let mut chars = vec!['I'; code.n()];
            chars[q] = letter;
            let e = pauli_string_to_binary(&chars.iter().collect::<String>()).unwrap();
            let s = code.syndrome(&e);
            let out = dec.decode(
                &DecodeInput {
                    syndrome: &s,
                    pattern: &pat,
                    prior: &prior,
                },
                &mut rng,
            );
            assert!(out.converged(), "qubit {q} {letter}");
            assert!(
                in_row_space(code.check_matrix(), &out.estimate.xor(&e)),
                "qubit {q} {letter}"
            );
        }
    }
}

#[test]
fn parallel_alpha_matches_serial_sweep() {
    let code = build_toric(6).unwrap();
    let alphas = AlphaList::range(1.0, 0.3, 0.05).unwrap();
    let serial4 = Mbp4::<f64>::new(code.pauli(), ScheduleKind::GroupRandom, alphas.clone(), 40);
    let par4 = Mbp4::<f64>::new(code.pauli(), ScheduleKind::GroupRandom, alphas.clone(), 40)
        .with_parallel_alpha(true);
    let hs = code.swapped_check_matrix();
    let serial2 = Mbp2::<f64>::new(hs, ScheduleKind::GroupRandom, alphas.clone(), 40, None);
    let par2 =
        Mbp2::<f64>::new(hs, ScheduleKind::GroupRandom, alphas, 40, None).with_parallel_alpha(true);
    let mut rng = trial_rng(47, 0);
    for t in 0..60u64 {
        let pat = sample_erasure(code.n(), 0.3 + 0.3 * (t % 3) as f64 / 2.0, &mut rng);
        let e = sample_error_on(&pat, &mut rng);
        let s = code.syndrome(&e);
        let prior = priors_for(&pat, PriorMode::PureErasure);
        let input = DecodeInput {
            syndrome: &s,
            pattern: &pat,
            prior: &prior,
        };
        for (a, b) in [
            (
                &serial4 as &dyn ErasureDecoder,
                &par4 as &dyn ErasureDecoder,
            ),
            (&serial2, &par2),
        ] {
            let x = a.decode(&input, &mut trial_rng(t, 1));
            let y = b.decode(&input, &mut trial_rng(t, 1));
            assert_eq!(x, y, "trial {t}");
        }
    }
}

#[test]
fn seeded_decodes_are_reproducible() {
    let code = build_xzzx(5).unwrap();
    let spec = &all_specs()[9];
    let dec = spec.prepare::<f32>(&code).unwrap().at(0.3).unwrap();
    let mut rng = trial_rng(53, 0);
    let pat = sample_erasure_of_weight(code.n(), 12, &mut rng);
    let e = sample_error_on(&pat, &mut rng);
    let s = code.syndrome(&e);
    let prior = priors_for(&pat, PriorMode::PureErasure);
    let input = DecodeInput {
        syndrome: &s,
        pattern: &pat,
        prior: &prior,
    };
    let first = dec.decode(&input, &mut trial_rng(9, 9));
    let again = dec.decode(&input, &mut trial_rng(9, 9));
    assert_eq!(first, again);
}

/// Smallest weight of a nonzero Pauli commuting with every check, by
/// exhaustive search up to `cap`.
fn min_commuting_weight(code: &StabilizerCode, cap: usize) -> Option<usize> {
    let n = code.n();
    for w in 1..=cap {
        let mut found = false;
        for_each_subset(n, w, &mut |support| {
            for code_word in 0..3usize.pow(w as u32) {
                let mut e = BinaryVector::zeros(2 * n);
                let mut c = code_word;
                for &q in support {
                    // X, Y, Z
                    let v = c % 3 + 1;
                    c /= 3;
                    e.set(q, v & 1 == 1);
                    e.set(n + q, v & 2 == 2);
                }
                if code.syndrome(&e).is_zero() {
                    found = true;
                    return;
                }
            }
        });
        if found {
            return Some(w);
        }
    }
    None
}

fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for j in start..n {
            cur.push(j);
            rec(j + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::with_capacity(k), f);
}

#[test]
fn small_erasures_have_a_unique_solution() {
    let four_one = four_one_example();
    assert_eq!(
        min_commuting_weight(&four_one, 2),
        Some(1),
        "IYII commutes with every check"
    );

    for code in [
        hp_five_one(),
        build_toric(4).unwrap(),
        build_xzzx(3).unwrap(),
    ] {
        let d_prime = min_commuting_weight(&code, 4).unwrap();
        assert!(d_prime >= 2, "{}", code.id());
        let hs = code.swapped_check_matrix();
        let mut checked = 0;
        for w in 1..d_prime {
            for_each_subset(code.n(), w, &mut |support| {
                let pat = ErasurePattern::new(code.n(), support.to_vec());
                let cols = hs.select_columns(&pat.bit_positions());
                assert_eq!(cols.rank(), 2 * w, "{} erasure {support:?}", code.id());
                let mut rng = trial_rng(support.iter().sum::<usize>() as u64, w as u64);
                let e = sample_error_on(&pat, &mut rng);
                let out = gaussian_mld(hs, &code.syndrome(&e), &pat);
                assert_eq!(out.estimate, e);
                checked += 1;
            });
        }
        assert!(checked > 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mld_output_is_always_feasible(seed in any::<u64>(), p in 0.0f64..0.6) {
        let code = build_toric(4).unwrap();
        let mut rng = trial_rng(seed, 0);
        let pat = sample_erasure(code.n(), p, &mut rng);
        let e = sample_error_on(&pat, &mut rng);
        let s = code.syndrome(&e);
        let out = gaussian_mld(code.swapped_check_matrix(), &s, &pat);
        prop_assert!(out.converged());
        prop_assert_eq!(code.syndrome(&out.estimate), s);
        let mask = pat.mask();
        prop_assert!(out.estimate.iter_ones().all(|b| mask[b % code.n()]));
    }
}
