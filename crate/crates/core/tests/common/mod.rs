#![allow(dead_code)]

use cyclift::algebra::{parse_polynomial, Monomial, Polynomial, Rational, Variables};
use proptest::prelude::*;

pub fn vars(n: usize) -> Variables {
    cyclift_testkit::variables(n)
}

pub fn poly(v: &Variables, text: &str) -> Polynomial {
    parse_polynomial(text, v).unwrap()
}

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Polynomials in `n` variables with up to `terms` terms of degree ≤ `deg`
/// and small integer coefficients.
pub fn polynomial(n: usize, deg: u32, terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=deg, n), -3i64..=3), 0..=terms).prop_map(move |ts| {
        let v = vars(n);
        Polynomial::from_terms(
            &v,
            ts.into_iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= deg)
                .map(|(e, c)| (Monomial::new(e), rational(c))),
        )
    })
}

/// Polynomials vanishing at the origin.
pub fn polynomial_at_origin(n: usize, deg: u32, terms: usize) -> impl Strategy<Value = Polynomial> {
    polynomial(n, deg, terms).prop_map(|p| {
        let c = p.constant_term();
        &p - &Polynomial::constant(p.vars(), c)
    })
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}
