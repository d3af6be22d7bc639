use std::sync::Arc;

use proptest::prelude::*;

use qcrystal_core::fock::{apply_bilinear, charge_offset, BasisState, Bilinear, FockVector, Side};
use qcrystal_core::partitions::{diagonal_slices, enumerate_plane_partitions, from_slices, n_stat, Partition};
use qcrystal_core::series::{rat, Rational, SeriesContext, TruncSeries};

fn ctx() -> Arc<SeriesContext> {
    SeriesContext::new(&["x", "y"], &[3, 2]).unwrap()
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (prop_oneof![-6i64..=-1, 1i64..=6], 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

/// Dense series over `(x, y)` with caps `(3, 2)`; `constant` controls the
/// `x^0 y^0` coefficient.
fn series(constant: impl Strategy<Value = Rational>) -> impl Strategy<Value = TruncSeries> {
    (constant, prop::collection::vec(small_rational(), 11)).prop_map(|(c0, rest)| {
        let ctx = ctx();
        let mut s = TruncSeries::constant(&ctx, c0);
        let mut it = rest.into_iter();
        for i in 0..=3 {
            for j in 0..=2 {
                if i + j == 0 {
                    continue;
                }
                let m = TruncSeries::monomial(&ctx, &[i, j], it.next().unwrap()).unwrap();
                s = s.try_add(&m).unwrap();
            }
        }
        s
    })
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..=5, 0..=5).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_ring_laws(a in series(small_rational()), b in series(small_rational()), c in series(small_rational())) {
        prop_assert_eq!(a.try_mul(&b).unwrap(), b.try_mul(&a).unwrap());
        prop_assert_eq!(a.try_mul(&b).unwrap().try_mul(&c).unwrap(), a.try_mul(&b.try_mul(&c).unwrap()).unwrap());
        let lhs = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
        let rhs = a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(a.try_sub(&a).unwrap().is_zero());
    }

    #[test]
    fn exp_turns_sums_into_products(a in series(Just(Rational::from_integer(0.into()))), b in series(Just(Rational::from_integer(0.into())))) {
        let lhs = a.try_add(&b).unwrap().exp().unwrap();
        let rhs = a.exp().unwrap().try_mul(&b.exp().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_is_two_sided(a in series(nonzero_rational())) {
        let inv = a.invert().unwrap();
        prop_assert_eq!(a.try_mul(&inv).unwrap(), TruncSeries::one(a.context()));
    }

    #[test]
    fn scale_var_composes_and_is_multiplicative(a in series(small_rational()), b in series(small_rational()), c in nonzero_rational(), d in nonzero_rational()) {
        let twice = a.scale_var("x", &c).unwrap().scale_var("x", &d).unwrap();
        prop_assert_eq!(twice, a.scale_var("x", &(&c * &d)).unwrap());
        let prod = a.try_mul(&b).unwrap().scale_var("y", &c).unwrap();
        prop_assert_eq!(prod, a.scale_var("y", &c).unwrap().try_mul(&b.scale_var("y", &c).unwrap()).unwrap());
    }

    #[test]
    fn canonical_json_round_trips(a in series(small_rational())) {
        let text = a.to_canonical_json();
        prop_assert_eq!(TruncSeries::from_canonical_json(&text).unwrap(), a);
    }

    #[test]
    fn conjugation_is_an_involution(lam in partition()) {
        let c = lam.conjugate();
        prop_assert_eq!(c.weight(), lam.weight());
        prop_assert_eq!(c.conjugate(), lam.clone());
        // n(λ) = Σ C(λ'_j, 2)
        let from_columns: u32 = c.parts().iter().map(|&l| l * l.saturating_sub(1) / 2).sum();
        prop_assert_eq!(n_stat(&lam), from_columns);
    }

    #[test]
    fn maya_diagram_round_trips(lam in partition(), p in -3i32..=3) {
        let s = BasisState::new(lam.clone(), p);
        let floor = p - lam.len() as i32 - 2;
        prop_assert_eq!(s.maya(floor).to_state(), s);
    }

    #[test]
    fn heisenberg_on_random_states(lam in partition(), p in -2i32..=2, m in -3i32..=3, n in -3i32..=3) {
        let zeta = rat(1, 2);
        let v = FockVector::basis(Side::Ket, BasisState::new(lam.clone(), p), &Rational::from_integer(1.into()));
        let mn = apply_bilinear(&apply_bilinear(&v, &Bilinear::J(n), &zeta, None), &Bilinear::J(m), &zeta, None);
        let nm = apply_bilinear(&apply_bilinear(&v, &Bilinear::J(m), &zeta, None), &Bilinear::J(n), &zeta, None);
        let expect = if m + n == 0 { v.scale_rational(&rat(m as i64, 1)) } else { v.scale_rational(&rat(0, 1)) };
        prop_assert_eq!(mn.try_sub(&nm).unwrap().try_sub(&expect).unwrap().is_zero(), true);
    }

    #[test]
    fn l0_is_energy_plus_vacuum_offset(lam in partition(), p in -2i32..=2) {
        let s = BasisState::new(lam.clone(), p);
        let v = FockVector::basis(Side::Ket, s.clone(), &Rational::from_integer(1.into()));
        let w = apply_bilinear(&v, &Bilinear::L0, &rat(1, 2), None);
        let e = lam.weight() + charge_offset(p);
        prop_assert_eq!(w.coeff(&s), rat(e as i64, 1));
        prop_assert_eq!(w.len(), usize::from(e > 0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn plane_partition_slices_round_trip(i in 0usize..10_000) {
        let all = enumerate_plane_partitions(6);
        let pi = &all[i % all.len()];
        let slices = diagonal_slices(pi);
        prop_assert_eq!(&from_slices(&slices).unwrap(), pi);
        let vol: u32 = slices.values().map(|l| l.weight()).sum();
        prop_assert_eq!(vol, pi.volume());
    }
}
