mod common;

use common::*;
use cyclift::algebra::{LocalFraction, Polynomial, PrimePoint};
use cyclift::koszul::{build_koszul, permutation_chain_map, verify_complex, DeformedKoszul, Permutation};
use num::One;
use proptest::prelude::*;

fn coordinates(n: usize) -> Vec<Polynomial> {
    let v = vars(n);
    (0..n).map(|i| Polynomial::variable(&v, i)).collect()
}

#[test]
fn chain_map_signs_multiply() {
    for n in [3, 4] {
        let seq = coordinates(n);
        let perms = Permutation::all(n);
        for a in &perms {
            let first = permutation_chain_map(&seq, a).unwrap();
            for b in &perms {
                let second = permutation_chain_map(&first.target(), b).unwrap();
                let composite = first.then(&second).unwrap();
                assert_eq!(composite.sign(), &(first.sign() * second.sign()));
                assert_eq!(composite.target(), a.then(b).apply(&seq));
                let direct = permutation_chain_map(&seq, &a.then(b)).unwrap();
                assert_eq!(composite.stage_matrices(), direct.stage_matrices());
                assert_eq!(rational(a.then(b).signature()), *composite.sign());
            }
        }
    }
}

#[test]
fn first_last_swap_has_sign_minus_one() {
    for n in 2..=5 {
        let v = vars(n);
        // non-coordinate entries make the commutation check meaningful
        let seq: Vec<Polynomial> = (0..n)
            .map(|i| &Polynomial::variable(&v, i) + &Polynomial::variable(&v, (i + 1) % n).pow(2))
            .collect();
        let chain = permutation_chain_map(&seq, &Permutation::swap(n, 0, n - 1)).unwrap();
        assert_eq!(chain.sign(), &-rational(1));
        assert!(chain.commutes());
    }
}

#[test]
fn swap_of_two_entries() {
    let seq = coordinates(2);
    let chain = permutation_chain_map(&seq, &Permutation::swap(2, 0, 1)).unwrap();
    let m = chain.stage_matrices();
    assert_eq!(m[0].to_string(), "[1]\n");
    assert_eq!(m[1].to_string(), "[0, 1]\n[1, 0]\n");
    assert_eq!(m[2].to_string(), "[-1]\n");
    assert!(chain.commutes());
    let id = permutation_chain_map(&coordinates(3), &Permutation::identity(3)).unwrap();
    assert!(id.sign().is_one());
    assert!(id.stage_matrices().iter().all(|s| *s == cyclift::koszul::Matrix::identity(s.rows())));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn truncation_commutes_with_construction(
        p in 1usize..=3,
        order in 1usize..=3,
        nums in prop::collection::vec(polynomial(4, 2, 3), 3),
        dens in prop::collection::vec(polynomial_at_origin(4, 2, 2), 3),
    ) {
        let v = vars(4);
        let base: Vec<Polynomial> = (0..p).map(|i| Polynomial::variable(&v, i)).collect();
        let locus = PrimePoint::sequence(&base).unwrap();
        let deformation: Vec<LocalFraction> = (0..order)
            .map(|i| {
                let den = &dens[i] + &Polynomial::one(&v);
                LocalFraction::new(nums[i].clone(), den, locus.clone()).unwrap()
            })
            .collect();
        let d = DeformedKoszul::new(base, deformation, locus).unwrap();
        let full = build_koszul(&d);
        prop_assert!(verify_complex(&full));
        prop_assert_eq!(full.truncate(order - 1), build_koszul(&d.truncate(order - 1)));
    }
}
