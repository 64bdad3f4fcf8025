use lifetime_core::lifetime::{join_family, meet_family};
use lifetime_core::order::{ideal_generated, principal_ideal};
use lifetime_core::rational::ratio;
use lifetime_core::{Bounds, Lifetime, Orientation, Rational};
use proptest::prelude::*;

fn bounds() -> Bounds {
    Bounds::square(10)
}

fn coord() -> impl Strategy<Value = Rational> {
    prop_oneof![
        1 => Just(ratio(0, 1)),
        1 => Just(ratio(10, 1)),
        6 => (1i64..=6).prop_flat_map(|d| (0..=10 * d).prop_map(move |n| ratio(n, d))),
    ]
}

fn lifetime() -> impl Strategy<Value = Lifetime> {
    (coord(), coord()).prop_map(|(a, b)| bounds().lifetime(a, b).unwrap())
}

fn positive() -> impl Strategy<Value = Lifetime> {
    (coord(), coord()).prop_filter_map("degenerate", |(a, b)| {
        (a != b).then(|| bounds().lifetime(a.clone().min(b.clone()), a.max(b)).unwrap())
    })
}

fn grid() -> Vec<Lifetime> {
    let b = bounds();
    (0..=10)
        .flat_map(|i| (0..=10).map(move |j| (i, j)))
        .map(|(i, j)| b.point(i, j).unwrap())
        .collect()
}

/// Supremum of `{x on the grid : x ^ a <= b}` computed by enumeration.
fn grid_implication(a: &Lifetime, b: &Lifetime) -> Lifetime {
    let below: Vec<Lifetime> = grid()
        .into_iter()
        .filter(|x| x.meet(a).unwrap().leq(b).unwrap())
        .collect();
    join_family(&bounds(), &below).unwrap()
}

#[test]
fn pseudo_complement_matches_grid_oracle() {
    let b = bounds();
    let bottom = b.bottom();
    for (x1, x2, expected) in [(2, 8, (10, 0)), (0, 0, (10, 10)), (10, 0, (0, 10))] {
        let a = b.point(x1, x2).unwrap();
        let oracle = grid_implication(&a, &bottom);
        assert_eq!(oracle, b.point(expected.0, expected.1).unwrap());
        assert_eq!(a.pseudo_complement(), oracle);
    }
}

#[test]
fn implication_boundary_case_matches_grid_oracle() {
    let b = bounds();
    let (a, bot) = (b.point(0, 0).unwrap(), b.bottom());
    assert_eq!(grid_implication(&a, &bot), b.point(10, 10).unwrap());
    assert_eq!(a.implies(&bot).unwrap(), grid_implication(&a, &bot));
}

#[test]
fn complemented_elements_are_the_corners() {
    let b = bounds();
    let g = grid();
    let top = b.top();
    let bottom = b.bottom();
    let mut found = Vec::new();
    for a in &g {
        let brute = g
            .iter()
            .find(|c| a.meet(c).unwrap() == bottom && a.join(c).unwrap() == top);
        assert_eq!(a.complement().as_ref(), brute, "{a}");
        if brute.is_some() {
            found.push(a.to_string());
        }
    }
    found.sort();
    assert_eq!(found, ["(0,0)", "(0,10)", "(10,0)", "(10,10)"]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn lattice_laws(a in lifetime(), b in lifetime(), c in lifetime()) {
        let m = |x: &Lifetime, y: &Lifetime| x.meet(y).unwrap();
        let j = |x: &Lifetime, y: &Lifetime| x.join(y).unwrap();
        prop_assert_eq!(m(&m(&a, &b), &c), m(&a, &m(&b, &c)));
        prop_assert_eq!(j(&j(&a, &b), &c), j(&a, &j(&b, &c)));
        prop_assert_eq!(m(&a, &b), m(&b, &a));
        prop_assert_eq!(j(&a, &b), j(&b, &a));
        prop_assert_eq!(m(&a, &a), a.clone());
        prop_assert_eq!(j(&a, &a), a.clone());
        prop_assert_eq!(m(&a, &j(&a, &b)), a.clone());
        prop_assert_eq!(j(&a, &m(&a, &b)), a.clone());
    }

    #[test]
    fn order_agrees_with_operations(a in lifetime(), b in lifetime(), c in lifetime()) {
        let leq = a.leq(&b).unwrap();
        prop_assert_eq!(leq, a.meet(&b).unwrap() == a);
        prop_assert_eq!(leq, a.join(&b).unwrap() == b);
        let m = a.meet(&b).unwrap();
        prop_assert!(m.leq(&a).unwrap() && m.leq(&b).unwrap());
        if c.leq(&a).unwrap() && c.leq(&b).unwrap() {
            prop_assert!(c.leq(&m).unwrap());
        }
        let jn = a.join(&b).unwrap();
        prop_assert!(a.leq(&jn).unwrap() && b.leq(&jn).unwrap());
        if a.leq(&c).unwrap() && b.leq(&c).unwrap() {
            prop_assert!(jn.leq(&c).unwrap());
        }
    }

    #[test]
    fn adjunction(a in lifetime(), b in lifetime(), x in lifetime()) {
        let imp = a.implies(&b).unwrap();
        prop_assert_eq!(x.meet(&a).unwrap().leq(&b).unwrap(), x.leq(&imp).unwrap());
    }

    #[test]
    fn implication_identities(a in lifetime(), b in lifetime()) {
        let top = bounds().top();
        prop_assert_eq!(a.implies(&a).unwrap(), top.clone());
        prop_assert_eq!(top.implies(&b).unwrap(), b.clone());
        prop_assert!(a.meet(&a.implies(&b).unwrap()).unwrap().leq(&b).unwrap());
    }

    #[test]
    fn finite_distributivity(a in lifetime(), ys in prop::collection::vec(lifetime(), 0..8)) {
        let b = bounds();
        let lhs = a.meet(&join_family(&b, &ys).unwrap()).unwrap();
        let meets: Vec<Lifetime> = ys.iter().map(|y| a.meet(y).unwrap()).collect();
        prop_assert_eq!(lhs, join_family(&b, &meets).unwrap());
    }

    #[test]
    fn families_equal_folds(xs in prop::collection::vec(lifetime(), 1..8)) {
        let b = bounds();
        let folded_meet = xs[1..].iter().fold(xs[0].clone(), |acc, x| acc.meet(x).unwrap());
        let folded_join = xs[1..].iter().fold(xs[0].clone(), |acc, x| acc.join(x).unwrap());
        prop_assert_eq!(meet_family(&b, &xs).unwrap(), folded_meet.clone());
        prop_assert_eq!(join_family(&b, &xs).unwrap(), folded_join);
        prop_assert_eq!(ideal_generated(&xs).unwrap(), principal_ideal(&folded_meet));
    }

    #[test]
    fn interior_points_are_not_boolean(x1 in 1i64..10, x2 in 1i64..10) {
        let a = bounds().point(x1, x2).unwrap();
        prop_assert_ne!(a.join(&a.pseudo_complement()).unwrap(), bounds().top());
        prop_assert!(a.complement().is_none());
    }

    #[test]
    fn bars_nest_with_order(a in positive(), b in positive()) {
        prop_assert_eq!(a.orientation(), Orientation::Positive);
        prop_assert_eq!(a.leq(&b).unwrap(), b.bar_interval().contains_interval(&a.bar_interval()));
    }

    #[test]
    fn rendering_round_trips(a in lifetime()) {
        prop_assert_eq!(bounds().parse_lifetime(&a.to_string()).unwrap(), a);
    }
}
