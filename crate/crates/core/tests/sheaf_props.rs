use lifetime_core::complex::WORKED_EXAMPLE;
use lifetime_core::sample::{self, rng_for};
use lifetime_core::sheaf::{omega_contains, restrict, separated_check};
use lifetime_core::{Bounds, Lifetime, VariableComplex};
use proptest::prelude::*;

fn bounds() -> Bounds {
    Bounds::square(10)
}

fn lifetime() -> impl Strategy<Value = Lifetime> {
    (0i64..=10, 0i64..=10).prop_map(|(a, b)| bounds().point(a, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn restriction_is_functorial(x in lifetime(), y in lifetime(), w in lifetime(), z in lifetime()) {
        // force w <= y <= x and z a section over x
        let y = y.meet(&x).unwrap();
        let w = w.meet(&y).unwrap();
        let z = z.meet(&x).unwrap();
        prop_assert_eq!(restrict(&z, &x, &x).unwrap(), z.clone());
        let step = restrict(&z, &x, &y).unwrap();
        prop_assert!(omega_contains(&y, &step).unwrap());
        prop_assert_eq!(restrict(&step, &y, &w).unwrap(), restrict(&z, &x, &w).unwrap());
    }

    #[test]
    fn compatible_covers_glue_uniquely(seed in any::<u64>()) {
        let mut rng = rng_for(seed, 0, 0);
        let cover = sample::compatible_cover(&mut rng, &bounds(), 5);
        let glued = cover.glue().unwrap();
        let base = cover.base();
        prop_assert!(glued.leq(base).unwrap());
        for item in cover.items() {
            prop_assert_eq!(&restrict(&glued, base, &item.patch).unwrap(), &item.section);
        }
        // any section over the base with the same restrictions is the glued one
        let patches = cover.patches();
        for _ in 0..8 {
            let s = sample::lifetime(&mut rng, &bounds()).meet(base).unwrap();
            prop_assert!(separated_check(base, &patches, &glued, &s).unwrap());
        }
    }

    #[test]
    fn barcode_sheaf_restrictions_are_inclusions(q in lifetime(), r in lifetime()) {
        let c = VariableComplex::parse(WORKED_EXAMPLE).unwrap();
        let b = c.bounds().clone();
        let shrink = |x: &Lifetime| {
            let (lo, hi) = (x.x1().min(x.x2()).clone(), x.x1().max(x.x2()).clone());
            let cap = |v: lifetime_core::Rational| v.min(b.eps1().clone());
            b.lifetime(cap(lo), cap(hi)).unwrap()
        };
        let (q, r) = (shrink(&q), shrink(&r));
        let small = q.meet(&r).unwrap();
        prop_assume!(small.orientation() != lifetime_core::Orientation::Negative);
        // small <= q, so anything alive over q is alive over small
        let over_q = c.alive_over(&q).unwrap();
        let over_small = c.alive_over(&small).unwrap();
        prop_assert!(over_q.iter().all(|id| over_small.contains(id)));
    }
}
