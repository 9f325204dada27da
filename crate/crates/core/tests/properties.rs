mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use common::{quiver_presentation, random_quiver, rng, v};
use cox_core::artranslate::{
    almost_split_mesh, min_inj_copresentation, socle, tau_module, Comodule, IntervalFamily, IntervalModule,
    MeshDirection, TauDirection, DEFAULT_MARGIN,
};
use cox_core::cartan::CartanPair;
use cox_core::coxeter::{CoxDirection, CoxInput, CoxeterOperator};
use cox_core::lazymatrix::{verify_identity_on_window, Side};
use cox_core::presentation::Presentation;
use cox_core::SparseVector;

fn sparse() -> impl Strategy<Value = SparseVector> {
    prop::collection::vec((-15i64..15, -50i64..50), 0..6)
        .prop_map(|pairs| SparseVector::from_pairs(pairs.into_iter().map(|(a, c)| (v(a), c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inverse_identity_on_random_quivers(seed in any::<u64>()) {
        let (arrows, n) = random_quiver(&mut rng(seed), 9, 14);
        let p = quiver_presentation(&arrows, n);
        let w = p.window_of(p.finite_vertices().unwrap()).unwrap();
        let pair = CartanPair::new(&p).unwrap();
        for side in [Side::Left, Side::Right] {
            prop_assert!(verify_identity_on_window(&pair.inverse, &pair.cartan, &w, side).unwrap().holds);
            prop_assert!(verify_identity_on_window(&pair.cartan, &pair.inverse, &w, side).unwrap().holds);
        }
    }

    #[test]
    fn literal_round_trip(x in sparse()) {
        let text = x.to_literal(&[]);
        prop_assert_eq!(SparseVector::parse_literal(&text).unwrap(), x);
    }

    #[test]
    fn coxeter_round_trip_on_za_infinity(x in sparse()) {
        // Images have formally unbounded support here, so read them on a
        // window covering the shifted support.
        let p = Presentation::za_infinity();
        let w = p.window("-20..20").unwrap();
        let op = CoxeterOperator::new(&p).unwrap();
        let y = op.apply(&CoxInput::Sparse(x.clone()), CoxDirection::Forward).unwrap().restrict(&w).unwrap();
        let back = op.apply(&CoxInput::Sparse(y), CoxDirection::Inverse).unwrap().restrict(&w).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn coxeter_round_trip_on_random_quivers(seed in any::<u64>(), coeffs in prop::collection::vec(-20i64..20, 9)) {
        let (arrows, n) = random_quiver(&mut rng(seed), 9, 14);
        let p = quiver_presentation(&arrows, n);
        let op = CoxeterOperator::new(&p).unwrap();
        let x = SparseVector::from_pairs((0..n).map(|i| (v(i as i64), coeffs[i])));
        let y = op.apply(&CoxInput::Sparse(x.clone()), CoxDirection::Inverse).unwrap().to_sparse().unwrap().unwrap();
        let back = op.apply(&CoxInput::Sparse(y), CoxDirection::Forward).unwrap().to_sparse().unwrap().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn interval_translates_round_trip(n in 0i64..7, len in 0i64..5, za in any::<bool>()) {
        let family = if za { IntervalFamily::ZAInfinity } else { IntervalFamily::AInfinity };
        let n = if za { n - 3 } else { n };
        let module = IntervalModule::new(family, n, n + len).unwrap().comodule();
        let down = tau_module(&module, TauDirection::Tau, DEFAULT_MARGIN).unwrap();
        let up = tau_module(&down, TauDirection::TauMinus, DEFAULT_MARGIN).unwrap();
        prop_assert!(up.is_isomorphic(&module).unwrap());
    }

    #[test]
    fn interval_meshes_are_additive(n in 0i64..8, len in 0i64..6, start in any::<bool>()) {
        let (n, direction) = if start {
            (n + 1, MeshDirection::StartingFrom)
        } else {
            (n, MeshDirection::EndingAt)
        };
        let module = IntervalModule::new(IntervalFamily::AInfinity, n, n + len).unwrap().comodule();
        let mesh = almost_split_mesh(&module, direction, None).unwrap();
        prop_assert!(mesh.is_additive());
        prop_assert!(mesh.defect().is_zero());
    }

    #[test]
    fn socle_is_idempotent(seed in any::<u64>(), n in 0i64..6, len in 0i64..4, extra in 0i64..6) {
        let p = Presentation::a_infinity();
        let a = IntervalModule::new(IntervalFamily::AInfinity, n, n + len).unwrap().comodule();
        let b = Comodule::simple(&p, &v(extra)).unwrap();
        let m = if seed % 2 == 0 { a.direct_sum(&b).unwrap() } else { a };
        let s = socle(&m);
        let again = socle(&s.module);
        prop_assert_eq!(&again.dims, &s.dims);
        prop_assert_eq!(s.module.dim_vector(), s.dims);
    }

    #[test]
    fn copresentation_socle_matches(n in 0i64..6, len in 0i64..5, za in any::<bool>()) {
        let family = if za { IntervalFamily::ZAInfinity } else { IntervalFamily::AInfinity };
        let module = IntervalModule::new(family, n, n + len).unwrap().comodule();
        let c = min_inj_copresentation(&module, DEFAULT_MARGIN).unwrap();
        let soc = socle(&module).dims;
        let mut e0 = SparseVector::zero();
        for x in c.e0.expanded() {
            e0.add_at(x, &BigInt::from(1));
        }
        prop_assert_eq!(e0, soc);
    }
}
