use lifetime_core::complex::{StaticComplex, WORKED_EXAMPLE};
use lifetime_core::exec::Strategy as Exec;
use lifetime_core::homology::{
    betti, betti_curve, betti_curve_refined, chain_condition_holds, persistence_pairs, FieldTag,
};
use lifetime_core::rational::ratio;
use lifetime_core::sample::{self, rng_for, ComplexShape};
use lifetime_core::{Rational, VariableComplex};
use proptest::prelude::*;

fn random_complex(seed: u64, filtration: bool) -> VariableComplex {
    let shape = ComplexShape {
        filtration,
        shuffle: true,
        ..ComplexShape::default()
    };
    sample::complex(&mut rng_for(seed, 0, 0), &shape)
}

fn prefix(c: &VariableComplex, t: &Rational) -> StaticComplex {
    StaticComplex::from_selection(c, |e| e.birth() <= t)
}

#[test]
fn fixture_betti_at_integer_times() {
    let c = VariableComplex::parse(WORKED_EXAMPLE).unwrap();
    let row = |n| -> Vec<usize> {
        (0..=5)
            .map(|t| betti(&c.slice(&ratio(t, 1)), n, FieldTag::F2).unwrap())
            .collect()
    };
    assert_eq!(row(0), [2, 1, 1, 1, 1, 1]);
    assert_eq!(row(1), [0, 1, 0, 0, 0, 0]);
    assert_eq!(row(2), [0, 0, 0, 0, 0, 0]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn slices_are_valid_chain_complexes(seed in any::<u64>()) {
        let c = random_complex(seed, false);
        for t in c.sample_points() {
            let s = c.slice(&t);
            prop_assert!(s.is_closed_under_faces());
            for field in [FieldTag::F2, FieldTag::Q] {
                for n in 0..3 {
                    prop_assert!(chain_condition_holds(&s, n, field));
                }
                let chi: i64 = (0..3)
                    .map(|n| {
                        let b = betti(&s, n, field).unwrap() as i64;
                        if n % 2 == 0 { b } else { -b }
                    })
                    .sum();
                prop_assert_eq!(chi, s.euler_characteristic());
            }
        }
    }

    #[test]
    fn slices_constant_between_critical_values(seed in any::<u64>()) {
        let c = random_complex(seed, false);
        let cv = c.critical_values();
        for w in cv.windows(2) {
            let a = &w[0] + (&w[1] - &w[0]) * ratio(1, 3);
            let b = &w[0] + (&w[1] - &w[0]) * ratio(2, 3);
            let (sa, sb) = (c.slice(&a), c.slice(&b));
            prop_assert_eq!(sa.ids(), sb.ids());
        }
    }

    #[test]
    fn alive_over_is_antitone(seed in any::<u64>()) {
        let c = random_complex(seed, false);
        let b = c.bounds().clone();
        let mut rng = rng_for(seed, 1, 0);
        for _ in 0..10 {
            let q_big = sample::lifetime(&mut rng, &b);
            let q_small = sample::lifetime(&mut rng, &b).meet(&q_big).unwrap();
            if q_big.orientation() == lifetime_core::Orientation::Negative
                || q_small.orientation() == lifetime_core::Orientation::Negative
            {
                continue;
            }
            let big = c.alive_over(&q_big).unwrap();
            let small = c.alive_over(&q_small).unwrap();
            prop_assert!(big.iter().all(|id| small.contains(id)));
        }
    }

    #[test]
    fn curves_ignore_refinement(seed in any::<u64>()) {
        let c = random_complex(seed, false);
        let extra: Vec<Rational> = (0..=16).map(|k| ratio(k, 2)).collect();
        for n in 0..3 {
            let plain = betti_curve(&c, n, FieldTag::F2, Exec::Parallel).unwrap();
            let refined = betti_curve_refined(&c, n, FieldTag::F2, &extra, Exec::Sequential).unwrap();
            prop_assert_eq!(&plain, &refined);
            for step in &plain.steps {
                prop_assert!(step.start <= step.end);
            }
            for w in plain.steps.windows(2) {
                prop_assert_ne!(w[0].rank, w[1].rank);
                prop_assert_eq!(&w[0].end, &w[1].start);
            }
            for t in c.sample_points() {
                let direct = betti(&c.slice(&t), n, FieldTag::F2).unwrap();
                prop_assert_eq!(plain.rank_at(&t), Some(direct));
            }
        }
    }

    #[test]
    fn pairs_count_prefix_homology(seed in any::<u64>()) {
        let c = random_complex(seed, true);
        for field in [FieldTag::F2, FieldTag::Q] {
            let pairs = persistence_pairs(&c, field).unwrap();
            for t in c.sample_points() {
                let s = prefix(&c, &t);
                for n in 0..3 {
                    let alive = pairs.iter().filter(|p| p.dimension == n && p.alive_at(&t)).count();
                    prop_assert_eq!(alive, betti(&s, n, field).unwrap(), "t={} n={}", t, n);
                }
            }
        }
    }

    #[test]
    fn rendering_round_trips(seed in any::<u64>(), filtration in any::<bool>()) {
        let c = random_complex(seed, filtration);
        let text = c.to_string();
        let back = VariableComplex::parse(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(back.to_string(), text);
    }
}
