mod common;

use std::collections::BTreeSet;

use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cpdisc_core::bdmatch::{build_witness, optimality_check, MatchingWitness};
use cpdisc_core::discrepancy::signed_disc;
use cpdisc_core::{
    acceptance_domain, bd_verdict, indicator_hits, kesten_condition, local_discrepancy, oren_condition, orbit_hits, profile, profile_parallel,
    strip_points, PatternSpec, PointPattern, RotationSystem, Schedule, Window, XiReal, XiSpec,
};

use common::*;

fn xi_strategy() -> impl Strategy<Value = XiSpec> {
    (0..xi_pool().len()).prop_map(|i| xi_pool()[i].clone())
}

fn real_strategy() -> impl Strategy<Value = XiReal> {
    (-60i64..60, 1i64..13, -8i64..8, 1i64..7)
        .prop_map(|(an, ad, bn, bd)| XiReal::new(BigRational::new(an.into(), ad.into()), BigRational::new(bn.into(), bd.into())))
}

fn system_strategy(max_intervals: usize) -> impl Strategy<Value = RotationSystem> {
    any::<u64>().prop_map(move |seed| random_system(&mut ChaCha8Rng::seed_from_u64(seed), max_intervals))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn sign_matches_high_precision_decimal(xi in xi_strategy(), u in real_strategy()) {
        let dec = xi.to_decimal(&u, 50);
        let expected = if u.is_zero() {
            std::cmp::Ordering::Equal
        } else if dec.starts_with('-') {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        };
        prop_assert_eq!(xi.sign(&u), expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fractional_part_decomposes(xi in xi_strategy(), u in real_strategy()) {
        let (f, n) = xi.fractional_part(&u);
        prop_assert!(xi.sign(&f) != std::cmp::Ordering::Less);
        prop_assert!(xi.lt(&f, &XiReal::one()));
        prop_assert_eq!(&f + &XiReal::from_integer(n), u);
    }

    #[test]
    fn lattice_membership_is_symmetric(u in real_strategy()) {
        prop_assert_eq!(u.in_z_plus_zxi().is_some(), (-u.clone()).in_z_plus_zxi().is_some());
        if let Some((k, m)) = u.z_plus_zxi_coords() {
            prop_assert_eq!(XiReal::new(BigRational::from_integer(m), BigRational::from_integer(k)), u);
        }
    }

    #[test]
    fn ordering_is_total_and_antisymmetric(xi in xi_strategy(), u in real_strategy(), v in real_strategy()) {
        prop_assert_eq!(xi.cmp(&u, &v), xi.cmp(&v, &u).reverse());
        prop_assert_eq!(xi.cmp(&u, &v) == std::cmp::Ordering::Equal, u == v);
        let w = &u + &XiReal::ratio(1, 97);
        prop_assert!(xi.lt(&u, &w));
    }

    #[test]
    fn display_parses_back(u in real_strategy(), xi in xi_strategy()) {
        prop_assert_eq!(u.to_string().parse::<XiReal>().unwrap(), u);
        prop_assert_eq!(xi.to_string().parse::<XiSpec>().unwrap(), xi);
    }

    #[test]
    fn field_operations(xi in xi_strategy(), u in real_strategy(), v in real_strategy()) {
        prop_assume!(!v.is_zero());
        let q = xi.div(&u, &v).unwrap();
        prop_assert_eq!(xi.mul(&q, &v), u);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn orbit_equals_strip(sys in system_strategy(3), k0 in -3000i64..0, len in 0i64..3000) {
        let a = orbit_hits(&sys, k0, k0 + len).unwrap();
        let b = strip_points(&sys, k0, k0 + len).unwrap();
        prop_assert_eq!(a.points(), b.points());
    }

    #[test]
    fn complement_partitions_the_orbit(sys in system_strategy(3)) {
        let xi = sys.xi().clone();
        let inside = orbit_hits(&sys, 0, 2000).unwrap();
        let outside = orbit_hits(&sys.with_window(sys.window().complement(&xi)), 0, 2000).unwrap();
        prop_assert_eq!(inside.len() + outside.len(), 2001);
        prop_assert!(inside.points().iter().all(|k| !outside.contains(*k)));
    }

    #[test]
    fn window_parse_round_trip(sys in system_strategy(3)) {
        let xi = sys.xi();
        let text = sys.window().to_string();
        prop_assert_eq!(&Window::parse(xi, &text).unwrap(), sys.window());
    }

    #[test]
    fn local_discrepancy_matches_definition(sys in system_strategy(2), n in 0i64..300) {
        prop_assert_eq!(local_discrepancy(&sys, n).unwrap(), direct_discrepancy(&sys, n));
    }

    #[test]
    fn signed_disc_is_additive(sys in system_strategy(2), a in 0i64..500, b in 1i64..500, c in 1i64..500) {
        let xi = sys.xi();
        let pts = orbit_hits(&sys, 0, 2000).unwrap();
        let delta = sys.window().length();
        let (x0, x1, x2) = (XiReal::ratio(a, 3), XiReal::ratio(a, 3) + XiReal::ratio(b, 2), XiReal::ratio(a, 3) + XiReal::ratio(b, 2) + XiReal::ratio(c, 5));
        let whole = signed_disc(xi, &pts, &x0, &x2, &delta).unwrap();
        let parts = signed_disc(xi, &pts, &x0, &x1, &delta).unwrap() + signed_disc(xi, &pts, &x1, &x2, &delta).unwrap();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn profile_independent_of_sharding(sys in system_strategy(3), shards in 1usize..6) {
        let s = Schedule { trace_points: 64 };
        let a = profile(&sys, 5000, &s).unwrap();
        let b = profile_parallel(&sys, 5000, &s, shards).unwrap();
        prop_assert_eq!(&a, &b);
        let xi = sys.xi();
        prop_assert!(a.decade_maxima.windows(2).all(|w| !xi.lt(&w[1].1, &w[0].1)));
        prop_assert_eq!(&a.sup_seen, &a.decade_maxima.last().unwrap().1);
    }

    #[test]
    fn verdict_is_translation_invariant(sys in system_strategy(3), num in 0i64..12, k in -3i64..=3) {
        let xi = sys.xi();
        let w = sys.window();
        let t = XiReal::ratio(num, 12) + XiReal::ints(0, k);
        let moved = w.shift(xi, &t);
        prop_assert_eq!(bd_verdict(w).unwrap().verdict, bd_verdict(&moved).unwrap().verdict);
    }

    #[test]
    fn indicator_hits_match_sliding_window(
        sys in system_strategy(2),
        req in proptest::collection::vec(-6i64..=6, 0..3),
        forb in proptest::collection::vec(-6i64..=6, 0..3),
    ) {
        let forb: Vec<i64> = forb.into_iter().filter(|f| *f != 0 && !req.contains(f)).collect();
        let p = PatternSpec::new(req, forb).unwrap();
        let hits: BTreeSet<i64> = orbit_hits(&sys, -6, 1506).unwrap().points().iter().copied().collect();
        let got = indicator_hits(&sys, &p, 0, 1500).unwrap();
        let expect = sliding_matches(&hits, &p, 0, 1500);
        prop_assert_eq!(got.points(), expect.as_slice());
    }

    #[test]
    fn point_pattern_text_round_trip(sys in system_strategy(2)) {
        let p = orbit_hits(&sys, -50, 50).unwrap();
        let back = PointPattern::from_text(&p.to_text(&["test".into()])).unwrap();
        prop_assert_eq!(back.points(), p.points());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn monotone_matching_is_optimal(
        nums in proptest::collection::btree_set(-300i64..300, 2..9),
        pn in 1i64..8,
        qd in 1i64..8,
    ) {
        let xi = XiSpec::sqrt(2).unwrap();
        let nums: Vec<i64> = nums.into_iter().collect();
        let pts: Vec<XiReal> = nums.iter().map(|&a| XiReal::ratio(a, 30)).collect();
        let delta = XiReal::ratio(pn, qd);
        prop_assert!(optimality_check(&xi, &pts, &delta).unwrap());
        let w = build_witness(&xi, &pts, &delta).unwrap();
        prop_assert!(w.verify(&xi));
        let off: i128 = w.offset.to_string().parse().unwrap();
        // every other integer offset is no better
        let ys: Vec<i128> = nums.iter().map(|&a| a as i128 * pn as i128).collect();
        let cost = |o: i128| ys.iter().enumerate().map(|(j, y)| (y - (j as i128 + o) * qd as i128 * 30).abs()).max().unwrap();
        for o in off - 5..=off + 5 {
            prop_assert!(cost(off) <= cost(o));
        }
    }

    #[test]
    fn witness_csv_round_trips(xi in xi_strategy(), mut pts in proptest::collection::vec(real_strategy(), 2..12), d in 1i64..9) {
        let xi2 = xi.clone();
        pts.sort_by(|a, b| xi2.cmp(a, b));
        pts.dedup();
        prop_assume!(pts.len() >= 2);
        let w = build_witness(&xi, &pts, &XiReal::ratio(d, 3)).unwrap();
        prop_assert_eq!(MatchingWitness::from_csv(&w.to_csv(&[])).unwrap(), w);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn oren_matches_exhaustive_oracle(sys in system_strategy(4)) {
        let w = sys.window();
        let all = exhaustive_oren(w);
        match oren_condition(w) {
            Some(o) => {
                prop_assert!(o.verify(w));
                prop_assert!(all.contains(&o.sigma));
            }
            None => prop_assert!(all.is_empty()),
        }
        prop_assert_eq!(bd_verdict(w).unwrap().verdict == cpdisc_core::Verdict::Bounded, !all.is_empty());
    }

    #[test]
    fn kesten_agrees_with_oren_on_single_intervals(sys in system_strategy(1)) {
        let w = sys.window();
        prop_assert_eq!(kesten_condition(w).unwrap().is_some(), oren_condition(w).is_some());
    }

    #[test]
    fn extra_constraints_shrink_the_domain(sys in system_strategy(2), r in 1i64..8, f in -8i64..-1) {
        let xi = sys.xi();
        let base = PatternSpec::point();
        let d0 = acceptance_domain(&sys, &base).unwrap().window;
        for p in [base.require(r).unwrap(), base.forbid(f).unwrap()] {
            let d1 = acceptance_domain(&sys, &p).unwrap().window;
            prop_assert_eq!(d1.intersect(xi, &d0), d1.clone());
            prop_assert!(!xi.lt(&d0.length(), &d1.length()));
        }
    }
}
