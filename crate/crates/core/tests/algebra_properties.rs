mod common;

use common::*;
use cyclift::algebra::{
    eps_invert, groebner_basis, ideal_member, local_ideal_member, EpsElement, IdealBasis, LocalFraction, PrimePoint,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_idempotent(
        gens in prop::collection::vec(polynomial(3, 2, 3), 1..=3),
        u in polynomial(3, 3, 5),
    ) {
        let ideal = IdealBasis::new(&vars(3), gens);
        let once = ideal.normal_form(&u);
        prop_assert_eq!(ideal.normal_form(&once), once.clone());
        prop_assert!(ideal_member(&(&u - &once), &ideal));
    }

    #[test]
    fn membership_is_linear(
        gens in prop::collection::vec(polynomial(3, 2, 3), 1..=3),
        q in prop::collection::vec(polynomial(3, 1, 3), 6),
        alpha in small_rational(),
        beta in small_rational(),
    ) {
        let v = vars(3);
        let ideal = IdealBasis::new(&v, gens.clone());
        let combo = |qs: &[cyclift::algebra::Polynomial]| {
            gens.iter().zip(qs).fold(cyclift::algebra::Polynomial::zero(&v), |acc, (g, q)| &acc + &(g * q))
        };
        let u = combo(&q[..3]);
        let w = combo(&q[3..]);
        prop_assert!(ideal_member(&u, &ideal));
        prop_assert!(ideal_member(&w, &ideal));
        prop_assert!(ideal_member(&(&u.scale(&alpha) + &w.scale(&beta)), &ideal));
    }

    #[test]
    fn groebner_basis_ignores_generator_order(
        gens in prop::collection::vec(polynomial(3, 2, 3), 1..=4),
        seed in any::<u64>(),
    ) {
        let v = vars(3);
        let mut shuffled = gens.clone();
        let k = shuffled.len();
        shuffled.rotate_left((seed as usize) % k);
        if seed % 2 == 1 {
            shuffled.reverse();
        }
        let a = groebner_basis(&IdealBasis::new(&v, gens));
        let b = groebner_basis(&IdealBasis::new(&v, shuffled));
        prop_assert_eq!(a.cached_groebner().unwrap(), b.cached_groebner().unwrap());
        let again = groebner_basis(&IdealBasis::new(&v, a.cached_groebner().unwrap().to_vec()));
        prop_assert_eq!(again.cached_groebner().unwrap(), a.cached_groebner().unwrap());
    }

    #[test]
    fn local_membership_matches_global_for_primary_ideals(
        extra in prop::collection::vec(polynomial_at_origin(2, 4, 3), 0..=2),
        a in 1u32..=3,
        b in 1u32..=3,
        u in polynomial(2, 4, 5),
    ) {
        // (x^a, y^b, …) is primary to the maximal ideal at the origin
        let v = vars(2);
        let mut gens = vec![poly(&v, &format!("x^{a}")), poly(&v, &format!("y^{b}"))];
        gens.extend(extra);
        let ideal = IdealBasis::new(&v, gens);
        let origin = PrimePoint::origin(&v);
        let frac = LocalFraction::from_polynomial(u.clone(), origin.clone());
        prop_assert_eq!(local_ideal_member(&frac, &ideal, &origin).unwrap(), ideal_member(&u, &ideal));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn origin_component_agrees_with_ideal_quotient(
        a in 1u32..=2,
        b in 1u32..=2,
        c in prop_oneof![-2i64..=-1, 1i64..=2],
        d in prop_oneof![-2i64..=-1, 1i64..=2],
        r in polynomial(2, 1, 2),
        s in polynomial(2, 2, 3),
        t in polynomial(2, 2, 3),
        drop_t in any::<bool>(),
    ) {
        // zero-dimensional, with points off the origin
        let v = vars(2);
        let x = poly(&v, "x");
        let f1 = &x.pow(a) * &poly(&v, &format!("x - ({c})"));
        let f2 = &(&poly(&v, "y").pow(b) * &poly(&v, &format!("y - ({d})"))) + &(&x * &r);
        let ideal = IdealBasis::new(&v, [f1, f2]);
        let u = if drop_t { &s * &x.pow(a) } else { &(&s * &x.pow(a)) + &t };
        let origin = PrimePoint::origin(&v);
        let fast = local_ideal_member(&LocalFraction::from_polynomial(u.clone(), origin.clone()), &ideal, &origin).unwrap();
        let slow = ideal.contains(&u) || ideal.quotient(&u).iter().any(|g| !g.vanishes_at_origin());
        prop_assert_eq!(fast, slow);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn eps_inverse_is_exact(
        order in 0usize..=3,
        unit in polynomial_at_origin(2, 2, 3),
        c in (1i64..=4),
        den in polynomial_at_origin(2, 2, 2),
        higher in prop::collection::vec(polynomial(2, 2, 3), 3),
    ) {
        let v = vars(2);
        let px = PrimePoint::sequence(&[poly(&v, "x")]).unwrap();
        let one_plus = |p: &cyclift::algebra::Polynomial| p + &cyclift::algebra::Polynomial::from_int(&v, c);
        let d = one_plus(&den);
        let mut slots = vec![LocalFraction::new(one_plus(&unit), d.clone(), px.clone()).unwrap()];
        for h in higher.iter().take(order) {
            slots.push(LocalFraction::new(h.clone(), d.clone(), px.clone()).unwrap());
        }
        let u = EpsElement::new(slots).unwrap();
        let inv = eps_invert(&u).unwrap();
        prop_assert_eq!(u.mul(&inv), EpsElement::one(px, order));
    }
}
