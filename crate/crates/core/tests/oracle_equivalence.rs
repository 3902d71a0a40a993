mod common;

use common::*;
use cyclift::algebra::{ideal_member, is_regular_sequence, IdealBasis};
use cyclift_testkit::{linear_membership, monomial_ideal_dimension, random_membership_instance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn ideal_member_agrees_with_linear_algebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut members = 0;
    for i in 0..120 {
        let n = 1 + i % 3;
        let (u, gens) = random_membership_instance(&mut rng, n);
        let ideal = IdealBasis::new(u.vars(), gens.clone());
        let fast = ideal_member(&u, &ideal);
        let slow = linear_membership(&u, &gens, 8).is_some();
        assert_eq!(fast, slow, "instance {i}: {u} in {ideal}");
        members += fast as usize;
    }
    // both outcomes are exercised
    assert!(members > 20 && members < 100, "{members} members");
}

#[test]
fn textbook_membership() {
    let v = vars(2);
    let gens = vec![poly(&v, "x^2 - y"), poly(&v, "x*y - 1")];
    let ideal = IdealBasis::new(&v, gens.clone());
    let u = poly(&v, "y^3 - 1");
    assert!(ideal_member(&u, &ideal));
    assert!(linear_membership(&u, &gens, 6).is_some());
}

#[test]
fn dimension_agrees_with_standard_monomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let n = rng.gen_range(2..=3);
        let (_, gens) = random_membership_instance(&mut rng, n);
        let ideal = IdealBasis::new(&vars(n), gens);
        let leading: Vec<Vec<u32>> = ideal
            .reduced_basis()
            .iter()
            .map(|g| g.leading_monomial().unwrap().exponents().to_vec())
            .collect();
        assert_eq!(ideal.dimension(), monomial_ideal_dimension(&leading, n), "{ideal}");
    }
}

#[test]
fn regularity_examples() {
    let v2 = vars(2);
    let v3 = vars(3);
    assert!(is_regular_sequence(&[poly(&v2, "x"), poly(&v2, "y")], 2).unwrap());
    assert!(!is_regular_sequence(&[poly(&v2, "x"), poly(&v2, "x*y")], 2).unwrap());
    let seq = [poly(&v3, "x*z"), poly(&v3, "y")];
    assert!(is_regular_sequence(&seq, 3).unwrap());
    let leading: Vec<Vec<u32>> = IdealBasis::new(&v3, seq)
        .reduced_basis()
        .iter()
        .map(|g| g.leading_monomial().unwrap().exponents().to_vec())
        .collect();
    assert_eq!(monomial_ideal_dimension(&leading, 3), Some(1));
}
