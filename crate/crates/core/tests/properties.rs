use std::collections::BTreeMap;

use orlicz_core::classify::{classify_all, exponent_estimates, uniformly_expansive_dissipative};
use orlicz_core::dissipative::{distortion_constant, generalized_distortion, ratio_sequence};
use orlicz_core::norm::{modular, modular_convergence_check};
use orlicz_core::probe::orbit_stats;
use orlicz_core::young::ConjugateGrid;
use orlicz_core::*;
use proptest::prelude::*;

fn phi_strategy() -> impl Strategy<Value = YoungFunction> {
    prop_oneof![
        (1.0f64..4.0).prop_map(|p| YoungFunction::power(p).unwrap()),
        (1.2f64..4.0).prop_map(|p| YoungFunction::power_over_p(p).unwrap()),
        (1.0f64..3.0).prop_map(|p| YoungFunction::p_log(p).unwrap()),
        Just(YoungFunction::exp_minus_one()),
    ]
}

fn coefficient() -> impl Strategy<Value = f64> {
    (-2.0f64..2.0, any::<bool>()).prop_map(|(e, neg)| if neg { -(10f64.powf(e)) } else { 10f64.powf(e) })
}

fn simple_function(max_support: usize) -> impl Strategy<Value = SimpleFunction> {
    prop::collection::btree_map(-10i64..=10, coefficient(), 1..=max_support)
        .prop_map(|m| SimpleFunction::new(m).unwrap())
}

fn space_strategy() -> impl Strategy<Value = MeasureSpace> {
    prop_oneof![
        (0.25f64..4.0).prop_map(|r| MeasureSpace::geometric(r, -32, 32).unwrap()),
        (1.0f64..3.0).prop_map(|b| MeasureSpace::two_sided_exp(b, -32, 32).unwrap()),
        prop::collection::vec(0.1f64..10.0, 65).prop_map(|w| {
            let weights: BTreeMap<i64, f64> = (-32..=32).zip(w).collect();
            MeasureSpace::table(weights, None, None, None).unwrap()
        }),
    ]
}

fn gauge(space: &MeasureSpace, phi: &YoungFunction, f: &SimpleFunction) -> f64 {
    gauge_norm(space, phi, f).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn inverse_round_trip(phi in phi_strategy(), ln_y in -20.0f64..20.0) {
        let y = ln_y.exp();
        let x = phi.inverse(y).unwrap();
        let back = phi.eval(x).unwrap();
        prop_assert!((back - y).abs() <= 1e-9 * y.max(1e-300));
        prop_assert!((phi.ln_inverse(ln_y) - x.ln()).abs() <= 1e-9 * x.ln().abs().max(1.0));
    }

    #[test]
    fn gauge_is_homogeneous(space in space_strategy(), phi in phi_strategy(), f in simple_function(6), alpha in coefficient()) {
        let n = gauge(&space, &phi, &f);
        let scaled = gauge(&space, &phi, &f.scale(alpha));
        prop_assert!((scaled - alpha.abs() * n).abs() <= 1e-9 * scaled);
    }

    #[test]
    fn triangle_inequality(space in space_strategy(), phi in phi_strategy(), f in simple_function(6), g in simple_function(6)) {
        let sum = f.add(&g);
        prop_assume!(!sum.is_zero());
        let lhs = gauge(&space, &phi, &sum);
        let rhs = gauge(&space, &phi, &f) + gauge(&space, &phi, &g);
        prop_assert!(lhs <= rhs * (1.0 + 1e-10));
    }

    #[test]
    fn sandwich(space in space_strategy(), phi in phi_strategy(), f in simple_function(6)) {
        let g = gauge(&space, &phi, &f);
        let a = amemiya_norm(&space, &phi, &f).unwrap();
        prop_assert!(g <= a * (1.0 + 1e-9));
        prop_assert!(a <= 2.0 * g + 1e-9);
    }

    #[test]
    fn power_gauge_is_lp(space in space_strategy(), p in 1.0f64..4.0, f in simple_function(6)) {
        let phi = YoungFunction::power(p).unwrap();
        let lp: f64 = f.iter().map(|(i, c)| space.weight(i).unwrap() * c.abs().powf(p)).sum::<f64>().powf(1.0 / p);
        prop_assert!((gauge(&space, &phi, &f) - lp).abs() <= 1e-9 * lp);
    }

    #[test]
    fn indicator_matches_gauge(space in space_strategy(), phi in phi_strategy(), set in prop::collection::btree_set(-10i64..=10, 1..8)) {
        let by_formula = indicator_norm(&space, &phi, &set).unwrap();
        let by_gauge = gauge(&space, &phi, &SimpleFunction::indicator(&set));
        prop_assert!((by_formula - by_gauge).abs() <= 1e-9 * by_gauge);
    }

    #[test]
    fn delta_prime_implies_delta2(phi in phi_strategy()) {
        let dp = check_delta_prime(&phi, &Window::delta_prime_default()).unwrap();
        let d2 = check_delta2(&phi, &Window::delta2_default()).unwrap();
        if dp.status == Status::Holds {
            prop_assert_eq!(d2.status, Status::Holds);
        }
    }

    #[test]
    fn compose_power_is_additive(step in -3i64..=3, m in -5i64..=5, n in -5i64..=5, f in simple_function(4)) {
        let system = System::new(
            MeasureSpace::geometric(0.5, -64, 64).unwrap(),
            Transform::shift(step),
            YoungFunction::power(2.0).unwrap(),
        ).unwrap();
        let lhs = system.compose_power(&system.compose_power(&f, n).unwrap(), m).unwrap();
        prop_assert_eq!(lhs, system.compose_power(&f, m + n).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn generator_norms_invert_ratio_sequence(space in space_strategy(), phi in phi_strategy()) {
        let system = System::new(space, Transform::shift(1), phi).unwrap();
        let w = atoms(&[0]);
        let seq = ratio_sequence(&system, &w, -20..=20).unwrap();
        for (k, a) in seq.iter() {
            let n = indicator_norm(&system.space, &system.phi, &system.image(&w, k).unwrap()).unwrap();
            prop_assert!((n * a - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn distortion_grows_with_evidence(ratios in prop::collection::vec(0.3f64..3.0, 2), scales in prop::collection::vec(0.5f64..2.0, 2)) {
        let system = System::new(
            MeasureSpace::interleaved(ratios, scales, -256, 256).unwrap(),
            Transform::shift(2),
            YoungFunction::power(2.0).unwrap(),
        ).unwrap();
        let w = atoms(&[0, 1]);
        let mut last = 1.0;
        for k in [4, 8, 16, 32] {
            let est = distortion_constant(&system, &w, k, SubsetSpec::Exhaustive).unwrap();
            prop_assert!(est.value >= last);
            last = est.value;
        }
        let few = distortion_constant(&system, &w, 32, SubsetSpec::Sample { count: 1, seed: 1 }).unwrap();
        prop_assert!(few.value <= last);
    }

    #[test]
    fn exhaustive_distortion_equals_full_sample(
        ratios in prop::collection::vec(0.3f64..3.0, 1..=4),
        scale in 0.5f64..2.0,
        seed in any::<u64>(),
    ) {
        let m = ratios.len();
        let scales: Vec<f64> = (0..m).map(|j| scale.powi(j as i32)).collect();
        let system = System::new(
            MeasureSpace::interleaved(ratios, scales, -256, 256).unwrap(),
            Transform::shift(m as i64),
            YoungFunction::power(1.5).unwrap(),
        ).unwrap();
        let w: AtomSet = (0..m as i64).collect();
        let all = (1usize << m) - 1;
        let ex = distortion_constant(&system, &w, 16, SubsetSpec::Exhaustive).unwrap();
        let sa = distortion_constant(&system, &w, 16, SubsetSpec::Sample { count: all, seed }).unwrap();
        prop_assert!(ex.exhaustive && sa.exhaustive);
        prop_assert_eq!(ex.value, sa.value);
    }

    #[test]
    fn horizon_never_flips_verdicts(r in 0.25f64..4.0) {
        let run = |h: usize| {
            let system = System::new(
                MeasureSpace::geometric(r, -256, 256).unwrap(),
                Transform::shift(1),
                YoungFunction::power(2.0).unwrap(),
            ).unwrap();
            let config = ClassifierConfig { horizon: h, ..Default::default() };
            Analysis::new(system, Some(&DissipativeSpec::new(atoms(&[0]))), config).unwrap()
        };
        let (short, long) = (run(16), run(32));
        let statuses = |a: &Analysis| classify_all(a).iter().map(Outcome::status).collect::<Vec<_>>();
        prop_assert_eq!(statuses(&short), statuses(&long));
        let (e1, e2) = (
            uniformly_expansive_dissipative(&short).unwrap().values,
            uniformly_expansive_dissipative(&long).unwrap().values,
        );
        for (a, b) in e1.iter().zip(&e2) {
            prop_assert!(*b <= *a * (1.0 + 1e-12));
        }
    }

    #[test]
    fn power_family_invariance(ratio_left in 0.3f64..3.0, ratio_right in 0.3f64..3.0, core in prop::collection::vec(0.5f64..2.0, 9)) {
        // table weights with geometric tails declared and realised on both sides
        let mut weights = BTreeMap::new();
        for (i, c) in (-4i64..=4).zip(&core) {
            weights.insert(i, *c);
        }
        for i in 5..=40 {
            weights.insert(i, core[8] * ratio_right.powi((i - 4) as i32));
            weights.insert(-i, core[0] * ratio_left.powi((i - 4) as i32));
        }
        let space = MeasureSpace::table(
            weights,
            Some(DeclaredTail::Geometric { ratio: ratio_left }),
            Some(DeclaredTail::Geometric { ratio: ratio_right }),
            Some((-64, 64)),
        ).unwrap();
        let statuses: Vec<Vec<Option<Status>>> = [1.5, 2.0, 3.0].iter().map(|&p| {
            let system = System::new(space.clone(), Transform::shift(1), YoungFunction::power(p).unwrap()).unwrap();
            let config = ClassifierConfig { horizon: 16, ..Default::default() };
            let a = Analysis::new(system, Some(&DissipativeSpec::new(atoms(&[0]))), config).unwrap();
            classify_all(&a).iter().map(Outcome::status).collect()
        }).collect();
        prop_assert_eq!(&statuses[0], &statuses[1]);
        prop_assert_eq!(&statuses[1], &statuses[2]);
    }

    #[test]
    fn exponents_scale_with_power(r in 0.25f64..4.0, p in 1.0f64..4.0) {
        let exps = |p: f64| {
            let system = System::new(
                MeasureSpace::geometric(r, -128, 128).unwrap(),
                Transform::shift(1),
                YoungFunction::power(p).unwrap(),
            ).unwrap();
            let config = ClassifierConfig { horizon: 16, ..Default::default() };
            let a = Analysis::new(system, Some(&DissipativeSpec::new(atoms(&[0]))), config).unwrap();
            exponent_estimates(&a).unwrap()
        };
        let (e1, ep) = (exps(1.0), exps(p));
        for (x1, xp) in e1.all().iter().zip(ep.all()) {
            let (l1, lp) = (x1.closed_form.unwrap(), xp.closed_form.unwrap());
            prop_assert!((lp - l1.powf(1.0 / p)).abs() <= 1e-6);
            prop_assert!(xp.numeric.unwrap() <= xp.closed_form.unwrap() * (1.0 + 1e-9) || x1.name.contains("inf"));
        }
        for x in [&ep.forward_inf_all, &ep.backward_inf_nonpos] {
            prop_assert!(x.closed_form.unwrap() <= ep.forward_sup_all.closed_form.unwrap() * (1.0 + 1e-12));
        }
    }

    #[test]
    fn dissipative_and_general_agree(r in 0.25f64..4.0, two_sided in any::<bool>()) {
        let space = if two_sided {
            MeasureSpace::two_sided_exp(r.max(1.0), -128, 128).unwrap()
        } else {
            MeasureSpace::geometric(r, -128, 128).unwrap()
        };
        let system = System::new(space, Transform::shift(1), YoungFunction::power(2.0).unwrap()).unwrap();
        let config = ClassifierConfig { horizon: 16, ..Default::default() };
        let a = Analysis::new(system, Some(&DissipativeSpec::new(atoms(&[0]))), config).unwrap();
        let general = orlicz_core::classify::positively_expansive_general(&a).unwrap().status;
        let dissipative = orlicz_core::classify::positively_expansive_dissipative(&a).unwrap().status;
        prop_assert_eq!(general, dissipative);
        let uniform = uniformly_expansive_dissipative(&a).unwrap().status;
        if uniform == Status::Holds {
            prop_assert_eq!(orlicz_core::classify::expansive_dissipative(&a).unwrap().status, Status::Holds);
        }
    }

    #[test]
    fn failing_witness_orbit_stays_bounded(r in 1.0f64..4.0, p in 1.0f64..4.0) {
        let system = System::new(
            MeasureSpace::geometric(r, -128, 128).unwrap(),
            Transform::shift(1),
            YoungFunction::power(p).unwrap(),
        ).unwrap();
        let config = ClassifierConfig { horizon: 16, ..Default::default() };
        let a = Analysis::new(system.clone(), None, config).unwrap();
        let v = orlicz_core::classify::positively_expansive_general(&a).unwrap();
        prop_assert_eq!(v.status, Status::Fails);
        let Some(Witness::Atom { atom }) = v.witness else { panic!("missing witness") };
        let chi = SimpleFunction::indicator(&atoms(&[atom]));
        let unit = chi.scale(1.0 / gauge(&system.space, &system.phi, &chi));
        // N(C^n χ̂_a) = r^{-n/p} ≤ 1 for n ≥ 0
        let stats = orbit_stats(&system, &unit, 40).unwrap();
        prop_assert!(stats.forward_sup <= 1.0 + 1e-9);
    }

    #[test]
    fn modular_and_norm_convergence_agree(phi in phi_strategy(), f in simple_function(4), g in simple_function(4)) {
        let space = MeasureSpace::geometric(0.8, -16, 16).unwrap();
        let seq: Vec<SimpleFunction> = (1..=40).map(|n| f.add(&g.scale(0.7f64.powi(n)))).collect();
        let d2 = check_delta2(&phi, &Window::delta2_default()).unwrap().status;
        let report = modular_convergence_check(&space, &phi, &seq, &f, d2, 1e-4).unwrap();
        prop_assert!(report.consistent);
    }
}

fn shift_system() -> impl Strategy<Value = System> {
    let space = prop_oneof![
        (0.25f64..4.0).prop_map(|r| MeasureSpace::geometric(r, -64, 64).unwrap()),
        (1.0f64..3.0).prop_map(|b| MeasureSpace::two_sided_exp(b, -64, 64).unwrap()),
        (0.5f64..2.0, 0.5f64..2.0).prop_map(|(r, s)| MeasureSpace::interleaved(vec![r, r], vec![1.0, s], -64, 64).unwrap()),
    ];
    (space, -3i64..=3, phi_strategy()).prop_map(|(space, step, phi)| System::new(space, Transform::shift(step), phi).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_is_monotone(phi in phi_strategy(), mut ys in prop::collection::vec(-12.0f64..12.0, 2..20)) {
        ys.sort_by(f64::total_cmp);
        let xs: Vec<f64> = ys.iter().map(|&l| phi.inverse(l.exp()).unwrap()).collect();
        prop_assert!(xs.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn young_inequality_on_grid_pairs(phi in phi_strategy(), i in 0usize..161, ln_x in -8.0f64..8.0) {
        let grid = ConjugateGrid::default();
        let conj = phi.conjugate_with(&grid).unwrap();
        let y = grid.abscissae().nth(i).unwrap();
        prop_assume!(!conj.undetermined.contains(&y));
        let x = ln_x.exp();
        let rhs = phi.eval(x).unwrap() + conj.function.eval(y).unwrap() + 1e-9;
        prop_assert!(x * y <= rhs * (1.0 + 1e-12));
    }

    #[test]
    fn disjoint_supports_superadditive(space in space_strategy(), phi in phi_strategy(), f in simple_function(4), g in simple_function(4)) {
        // f on the left half, g on the right half
        let f = SimpleFunction::new(f.iter().map(|(i, c)| (i - 11, c))).unwrap();
        let g = SimpleFunction::new(g.iter().map(|(i, c)| (i + 11, c))).unwrap();
        let (af, ag) = (amemiya_norm(&space, &phi, &f).unwrap(), amemiya_norm(&space, &phi, &g).unwrap());
        let sum = amemiya_norm(&space, &phi, &f.add(&g)).unwrap();
        prop_assert!(sum >= af.max(ag) * (1.0 - 1e-9));
        prop_assert!(af.max(ag) >= 0.5 * (af + ag));
    }

    #[test]
    fn bounded_operator_norm(system in shift_system(), f in simple_function(6)) {
        let cert = system.boundedness_check();
        prop_assume!(cert.status == Boundedness::Bounded);
        let c = cert.constant.max(1.0);
        let image = system.compose_power(&f, 1).unwrap();
        let (space, phi) = (&system.space, &system.phi);
        prop_assert!(gauge(space, phi, &image) <= c * gauge(space, phi, &f) * (1.0 + 1e-10) + 1e-9);
    }

    #[test]
    fn modular_transfer(system in shift_system(), f in simple_function(6), n in -8i64..=8) {
        let lhs = modular(&system.space, &system.phi, &system.compose_power(&f, n).unwrap()).unwrap();
        let rhs: f64 = f
            .iter()
            .map(|(i, c)| system.space.weight(system.transform.power(i, -n).unwrap()).unwrap() * system.phi.eval_abs(c))
            .sum();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300));
    }

    #[test]
    fn indicator_orbits_match_transported_sets(system in shift_system(), set in prop::collection::btree_set(-10i64..=10, 1..6), n in -8i64..=8) {
        let chi = SimpleFunction::indicator(&set);
        let lhs = gauge(&system.space, &system.phi, &system.compose_power(&chi, n).unwrap());
        let rhs = indicator_norm(&system.space, &system.phi, &system.image(&set, -n).unwrap()).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs);
    }

    #[test]
    fn generalized_distortion_finite_under_geometric_tails(r in 0.3f64..3.0, scales in prop::collection::vec(0.5f64..2.0, 2..=4), p in 1.0f64..3.0) {
        let m = scales.len();
        let system = System::new(
            MeasureSpace::interleaved(vec![r; m], scales, -256, 256).unwrap(),
            Transform::shift(m as i64),
            YoungFunction::power(p).unwrap(),
        ).unwrap();
        let w: AtomSet = (0..m as i64).collect();
        for k in [8, 16, 32] {
            let kk = distortion_constant(&system, &w, k, SubsetSpec::Exhaustive).unwrap().value;
            let hh = generalized_distortion(&system, &w, k, SubsetSpec::Exhaustive).unwrap().value;
            prop_assert!(kk.is_finite() && hh.is_finite());
            prop_assert!(hh <= kk * kk * (1.0 + 1e-9));
        }
    }
}
