use proptest::prelude::*;

use dualpoly::lp_degree::{min_eps_for_degree, verify_certificate};
use dualpoly::{Rat, SinglePoly, SymBoolFn};

fn rat() -> impl Strategy<Value = Rat> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| Rat::new(n, d))
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    rat().prop_filter("nonzero", |r| !r.is_zero())
}

fn sym_fn() -> impl Strategy<Value = SymBoolFn> {
    (2usize..=7)
        .prop_flat_map(|n| proptest::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], n + 1))
        .prop_map(|v| SymBoolFn::from_values("random", v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The LP witness has unit norm, correlation eps*, and phd above d.
    #[test]
    fn witness_matches_primal(f in sym_fn(), d_frac in 0.0f64..1.0) {
        let d = ((f.n() as f64) * d_frac) as usize;
        let m = min_eps_for_degree(&f, d).unwrap();
        match m.witness {
            None => prop_assert!(m.epsilon_star.is_zero()),
            Some(w) => {
                prop_assert_eq!(w.b.l1_norm(), Rat::one());
                prop_assert_eq!(w.b.pair_with(&f).unwrap(), m.epsilon_star.clone());
                prop_assert!(w.b.pure_high_degree().unwrap() > d);
                let below = &m.epsilon_star * Rat::new(9, 10);
                prop_assert!(verify_certificate(&f, &w.b, &below, d + 1).unwrap().accepted);
                prop_assert!(!verify_certificate(&f, &w.b, &m.epsilon_star, d + 1).unwrap().accepted);
            }
        }
        // the approximant attains eps* exactly
        prop_assert_eq!(m.approximant.max_error(&f).unwrap(), m.epsilon_star);
        prop_assert!(m.approximant.interpolate_degree() <= d as isize);
    }

    #[test]
    fn phd_is_scale_invariant(values in proptest::collection::vec(rat(), 2..=10), c in nonzero_rat()) {
        let p = SinglePoly::new(values).unwrap();
        prop_assume!(!p.is_zero());
        let scaled = p.scale(&c);
        prop_assert_eq!(p.pure_high_degree().unwrap(), scaled.pure_high_degree().unwrap());
        prop_assert_eq!(p.pure_high_degree().unwrap(), p.pure_high_degree_by_moments().unwrap());
    }

    /// Parity multiplication swaps degree and pure high degree.
    #[test]
    fn parity_duality(values in proptest::collection::vec(rat(), 2..=10)) {
        let p = SinglePoly::new(values).unwrap();
        prop_assume!(!p.is_zero());
        let n = p.n() as isize;
        prop_assert_eq!(p.parity_multiply().pure_high_degree().unwrap() as isize, n - p.interpolate_degree());
        prop_assert_eq!(p.parity_multiply().parity_multiply(), p);
    }
}
