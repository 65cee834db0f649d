use skein_core::exactalg::RationalFn;
use skein_core::recoupling::{self, admissible, tet_admissible};
use skein_core::tloracle::Oracle;

#[test]
fn delta_matches_oracle_up_to_eight() {
    let mut o = Oracle::default();
    for n in 0..=8 {
        assert_eq!(o.delta(n).unwrap(), RationalFn::from_poly(recoupling::delta(n)), "Δ_{n}");
    }
}

#[test]
fn theta_and_lambda_match_oracle() {
    let mut o = Oracle::default();
    for a in 0..=8u32 {
        for b in 0..=8 - a {
            for c in 0..=8 - a - b {
                if !admissible(a, b, c) {
                    continue;
                }
                assert_eq!(o.theta(a, b, c).unwrap(), recoupling::theta(a, b, c), "θ({a},{b},{c})");
                let lam = RationalFn::from_poly(recoupling::lambda(c, a, b));
                assert_eq!(o.lambda(c, a, b).unwrap(), lam, "λ_{c}^({a},{b})");
            }
        }
    }
}

#[test]
fn tet_matches_oracle() {
    let mut o = Oracle::default();
    let mut checked = 0;
    for a in 0..=8u32 {
        for b in 0..=8 - a {
            for c in 0..=8 - a - b {
                for d in 0..=8 - a - b - c {
                    for e in 0..=8 - a - b - c - d {
                        for f in 0..=8 - a - b - c - d - e {
                            let l = [a, b, c, d, e, f];
                            if !tet_admissible(l) {
                                continue;
                            }
                            assert_eq!(o.tet(l).unwrap(), recoupling::tet(a, b, c, d, e, f), "tet{l:?}");
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 20);
}
