mod common;

use std::sync::Arc;

use common::*;
use cyclift::algebra::{LocalFraction, Polynomial, PrimePoint};
use cyclift::cohomology::{boundary, class_equal, class_is_trivial, reorder_class, CohClass, FormNumerator};
use cyclift::koszul::Permutation;
use proptest::prelude::*;

/// Classes over `(x, y + x^2)` at the prime `(x, y + x^2)` in three variables,
/// coefficient `num / (1 + z + den)` with `den` vanishing on the prime.
fn class(num: &Polynomial, den: &Polynomial, locus: &Arc<PrimePoint>, seq: &[Polynomial]) -> CohClass {
    let coef = LocalFraction::new(num.clone(), den + &poly(num.vars(), "1 + z"), locus.clone()).unwrap();
    CohClass::new(
        seq.iter().map(|s| (s.clone(), 1)).collect(),
        locus.clone(),
        vec![FormNumerator::new(coef, &seq[1..])],
    )
    .unwrap()
}

fn setting() -> (Vec<Polynomial>, Arc<PrimePoint>) {
    let v = vars(3);
    let seq = vec![poly(&v, "x"), poly(&v, "y + x^2")];
    let locus = PrimePoint::sequence(&seq).unwrap();
    (seq, locus)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn class_equality_is_an_equivalence(
        a in polynomial(3, 2, 3),
        b in polynomial(3, 2, 3),
        shift in polynomial(3, 2, 3),
        da in polynomial_at_origin(3, 1, 2),
    ) {
        let (seq, locus) = setting();
        let v = vars(3);
        let x = poly(&v, "x");
        let c1 = class(&a, &Polynomial::zero(&v), &locus, &seq);
        // c2 differs from c1 by a multiple of x, so they agree
        let c2 = class(&(&a + &(&x * &shift)), &Polynomial::zero(&v), &locus, &seq);
        let c3 = class(&b, &(&x * &da), &locus, &seq);
        prop_assert!(class_equal(&c1, &c1).unwrap());
        prop_assert!(class_equal(&c1, &c2).unwrap());
        prop_assert_eq!(class_equal(&c1, &c3).unwrap(), class_equal(&c3, &c1).unwrap());
        if class_equal(&c1, &c3).unwrap() {
            prop_assert!(class_equal(&c2, &c3).unwrap());
        }
    }

    #[test]
    fn triviality_survives_reordering(num in polynomial(3, 3, 4), seed in 0usize..2) {
        let v = vars(3);
        let origin = PrimePoint::origin(&v);
        let seq = [poly(&v, "x"), poly(&v, "y + x^2"), poly(&v, "z")];
        let coef = LocalFraction::from_polynomial(num, origin.clone());
        let c = CohClass::new(
            seq.iter().map(|s| (s.clone(), 1)).collect(),
            origin,
            vec![FormNumerator::new(coef, &seq[1..])],
        )
        .unwrap();
        let perm = &Permutation::all(3)[seed * 3 + 1];
        prop_assert_eq!(class_is_trivial(&c).trivial, class_is_trivial(&reorder_class(&c, perm).unwrap()).trivial);
    }

    #[test]
    fn boundary_is_additive(
        a in polynomial(3, 2, 3),
        b in polynomial(3, 2, 3),
        ka in 0u32..=2,
        kb in 0u32..=2,
    ) {
        let v = vars(3);
        let seq = vec![poly(&v, "x"), poly(&v, "y")];
        let locus = PrimePoint::sequence(&seq).unwrap();
        let z = poly(&v, "z");
        let make = |n: &Polynomial, k: u32| {
            let coef = LocalFraction::new(n.clone(), &z.pow(k) * &poly(&v, "1 + x"), locus.clone()).unwrap();
            CohClass::new(
                seq.iter().map(|s| (s.clone(), 1)).collect(),
                locus.clone(),
                vec![FormNumerator::new(coef, &seq[1..])],
            )
            .unwrap()
        };
        let (c1, c2) = (make(&a, ka), make(&b, kb));
        let whole = boundary(&c1.add(&c2).unwrap(), &z).unwrap();
        let parts = boundary(&c1, &z).unwrap().add(&boundary(&c2, &z).unwrap()).unwrap();
        prop_assert!(class_equal(&whole, &parts).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn generalized_fraction_rule(num in polynomial(3, 3, 4), den in polynomial_at_origin(3, 1, 2), which in 0usize..2) {
        let (seq, locus) = setting();
        let c = class(&num, &(&den * &seq[0]), &locus, &seq);
        let mut powers = vec![1, 1];
        powers[which] = 2;
        prop_assert!(class_equal(&c, &c.raise_powers(&powers).unwrap()).unwrap());
    }
}
