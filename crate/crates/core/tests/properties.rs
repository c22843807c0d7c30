//! Property tests of the algebraic identities, with inputs drawn by
//! proptest over a mix of rings.

use proptest::prelude::*;

use evencliff::azumaya::recover_bilinear;
use evencliff::clifford::{base_change_bilinear, opposite, upsilon, AlgebraStructure4};
use evencliff::linalg::Mat;
use evencliff::quadform::{
    act_similarity, half_discriminant, induced_quadratic, polar_bilinear, standard_lift,
    BilinearForm3, QuadraticForm3, Similarity,
};
use evencliff::ring::{Ring, RingElement};

fn arb_ring() -> impl Strategy<Value = Ring> {
    prop_oneof![
        Just(Ring::Integers),
        Just(Ring::Rationals),
        Just(Ring::PrimeField(2)),
        Just(Ring::PrimeField(3)),
        Just(Ring::PrimeField(5)),
        Just(Ring::ResidueRing { p: 2, k: 3 }),
        Just(Ring::DualNumbers(3)),
    ]
}

fn arb_element(ring: Ring) -> impl Strategy<Value = RingElement> {
    (-9i64..=9, 1i64..=9).prop_map(move |(n, d)| match &ring {
        Ring::Rationals => ring.fraction(n, d),
        Ring::DualNumbers(_) => ring.dual(n, d),
        _ => ring.from_i64(n),
    })
}

fn arb_form(ring: Ring) -> impl Strategy<Value = QuadraticForm3> {
    let r = ring.clone();
    proptest::array::uniform6(arb_element(ring))
        .prop_map(move |coeffs| QuadraticForm3::new(&r, coeffs))
}

fn arb_bilinear(ring: Ring) -> impl Strategy<Value = BilinearForm3> {
    let r = ring.clone();
    proptest::collection::vec(arb_element(ring), 9).prop_map(move |v| {
        let rows = v.chunks(3).map(|c| c.to_vec()).collect();
        BilinearForm3::new(Mat::from_rows(&r, rows))
    })
}

fn arb_vec3(ring: Ring) -> impl Strategy<Value = [RingElement; 3]> {
    proptest::array::uniform3(arb_element(ring))
}

proptest! {
    #[test]
    fn upsilon_tables_are_unital_and_associative(
        b in arb_ring().prop_flat_map(arb_bilinear)
    ) {
        let a = upsilon(&b);
        prop_assert!(a.is_unital());
        prop_assert!(a.is_associative());
    }

    #[test]
    fn recover_inverts_upsilon(b in arb_ring().prop_flat_map(arb_bilinear)) {
        prop_assert_eq!(recover_bilinear(&upsilon(&b)).unwrap(), b);
    }

    #[test]
    fn opposite_is_transpose_negation(b in arb_ring().prop_flat_map(arb_bilinear)) {
        let ring = b.ring().clone();
        let neg_t = BilinearForm3::new(
            b.matrix().transpose().scale(&ring.from_i64(-1)),
        );
        prop_assert_eq!(opposite(&upsilon(&b)), upsilon(&neg_t));
    }

    #[test]
    fn induced_form_polarizes_to_symmetrization(
        b in arb_ring().prop_flat_map(arb_bilinear)
    ) {
        let q = induced_quadratic(&b);
        let sym = BilinearForm3::new(b.matrix().add(&b.matrix().transpose()));
        prop_assert_eq!(polar_bilinear(&q), sym);
    }

    #[test]
    fn evaluation_is_quadratic(
        (q, x, t) in arb_ring().prop_flat_map(|ring| (
            arb_form(ring.clone()),
            arb_vec3(ring.clone()),
            arb_element(ring),
        ))
    ) {
        let tx: [RingElement; 3] = std::array::from_fn(|i| &t * &x[i]);
        prop_assert_eq!(q.evaluate(&tx), &(&t * &t) * &q.evaluate(&x));
    }

    #[test]
    fn standard_lift_induces_back(q in arb_ring().prop_flat_map(arb_form)) {
        prop_assert_eq!(induced_quadratic(&standard_lift(&q)), q);
    }

    #[test]
    fn half_discriminant_scaling_law(
        (q, t) in arb_ring().prop_flat_map(|ring| (
            arb_form(ring.clone()),
            arb_element(ring),
        ))
    ) {
        let scaled = q.scale(&t);
        prop_assert_eq!(
            half_discriminant(&scaled),
            &t.pow(3) * &half_discriminant(&q)
        );
    }

    #[test]
    fn semiregular_iff_unit_half_discriminant(
        q in arb_ring().prop_flat_map(arb_form)
    ) {
        prop_assert_eq!(q.is_semiregular(), half_discriminant(&q).is_unit());
    }

    #[test]
    fn similarity_action_is_a_group_action(
        (q, g1, g2, l1, l2) in Just(Ring::PrimeField(5)).prop_flat_map(|ring| (
            arb_form(ring.clone()),
            proptest::collection::vec(arb_element(ring.clone()), 9),
            proptest::collection::vec(arb_element(ring.clone()), 9),
            arb_element(ring.clone()),
            arb_element(ring),
        ))
    ) {
        let ring = q.ring().clone();
        let mk = |v: Vec<RingElement>| {
            Mat::from_rows(&ring, v.chunks(3).map(|c| c.to_vec()).collect())
        };
        let (m1, m2) = (mk(g1), mk(g2));
        prop_assume!(m1.is_invertible() && m2.is_invertible());
        prop_assume!(l1.is_unit() && l2.is_unit());
        let s1 = Similarity::new(m1, l1).unwrap();
        let s2 = Similarity::new(m2, l2).unwrap();
        let sequential = act_similarity(&s2, &act_similarity(&s1, &q).unwrap()).unwrap();
        let composed = act_similarity(&s2.compose(&s1), &q).unwrap();
        prop_assert_eq!(sequential, composed);
    }

    #[test]
    fn base_change_commutes_with_upsilon(
        b in prop_oneof![
            Just(Ring::Integers),
            Just(Ring::DualNumbers(3)),
        ].prop_flat_map(arb_bilinear),
        p in prop_oneof![Just(2u32), Just(3), Just(5)],
    ) {
        let dst = Ring::PrimeField(p);
        // dual(3) only maps to F3; skip undefined pairs.
        prop_assume!(
            b.ring() == &Ring::Integers || p == 3
        );
        let lhs = evencliff::clifford::base_change_algebra(&upsilon(&b), &dst).unwrap();
        let rhs = upsilon(&base_change_bilinear(&b, &dst).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn transport_preserves_associativity(
        (b, u) in Just(Ring::PrimeField(3)).prop_flat_map(|ring| (
            arb_bilinear(ring.clone()),
            proptest::collection::vec(arb_element(ring), 12),
        ))
    ) {
        let ring = b.ring().clone();
        let mut m = Mat::identity(&ring, 4);
        for (t, x) in u.into_iter().enumerate() {
            m.set(t % 4, 1 + t / 4, x);
        }
        prop_assume!(m.is_invertible());
        let a: AlgebraStructure4 = upsilon(&b);
        let moved = a.transport(&m).unwrap();
        prop_assert!(moved.is_unital());
        prop_assert!(moved.is_associative());
    }
}
