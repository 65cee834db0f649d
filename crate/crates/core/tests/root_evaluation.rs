use proptest::prelude::*;

use skein_core::exactalg::{LaurentPoly, RationalFn};
use skein_core::invariants::eval_at_root;

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-12i64..12, -5i64..6), 0..6).prop_map(LaurentPoly::from_terms)
}

/// Denominators that never vanish at a primitive 2r-th root for odd r.
fn safe_den() -> impl Strategy<Value = LaurentPoly> {
    let dens: Vec<Vec<(i64, i64)>> = vec![vec![(0, 1)], vec![(0, 1), (2, 1)], vec![(0, 1), (4, -1)], vec![(0, 1), (4, 1)], vec![(-2, 1), (2, 1)]];
    prop::sample::select(dens).prop_map(LaurentPoly::from_terms)
}

fn ratfn() -> impl Strategy<Value = RationalFn> {
    (laurent(), safe_den()).prop_map(|(n, d)| RationalFn::new(n, d).expect("nonzero denominator"))
}

fn level() -> impl Strategy<Value = u32> {
    (1u32..12).prop_map(|k| 2 * k + 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluation_is_a_ring_map(f in ratfn(), g in ratfn(), r in level()) {
        let (ef, eg) = (eval_at_root(&f, r).unwrap(), eval_at_root(&g, r).unwrap());
        prop_assert_eq!(eval_at_root(&(&f + &g), r).unwrap(), ef.add(&eg));
        prop_assert_eq!(eval_at_root(&(&f * &g), r).unwrap(), ef.mul(&eg));
        if !eg.is_zero() {
            let q = eval_at_root(&(&f / &g), r).unwrap();
            prop_assert_eq!(q.mul(&eg), ef);
        }
    }
}
