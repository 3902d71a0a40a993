use std::fmt;
use std::sync::{Arc, OnceLock};

use num::One;

use super::groebner;
use super::monomial::Monomial;
use super::polynomial::{Polynomial, Variables};
use super::{AlgebraError, LocalFraction, Rational};

/// Finitely generated ideal of a polynomial ring, with a lazily computed
/// reduced grevlex Gröbner basis.
#[derive(Clone, Debug)]
pub struct IdealBasis {
    vars: Variables,
    generators: Vec<Polynomial>,
    groebner: OnceLock<Vec<Polynomial>>,
    origin_component: OnceLock<Option<Box<IdealBasis>>>,
}

impl IdealBasis {
    /// Zero generators are dropped.
    pub fn new(vars: &Variables, generators: impl IntoIterator<Item = Polynomial>) -> Self {
        let generators: Vec<Polynomial> = generators
            .into_iter()
            .inspect(|g| assert_eq!(g.vars(), vars, "variable mismatch"))
            .filter(|g| !g.is_zero())
            .collect();
        IdealBasis {
            vars: vars.clone(),
            generators,
            groebner: OnceLock::new(),
            origin_component: OnceLock::new(),
        }
    }

    /// The maximal ideal of the origin, `(x_1, ..., x_n)`.
    pub fn origin(vars: &Variables) -> Self {
        Self::new(vars, (0..vars.len()).map(|i| Polynomial::variable(vars, i)))
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// The reduced Gröbner basis, if it has been computed already.
    pub fn cached_groebner(&self) -> Option<&[Polynomial]> {
        self.groebner.get().map(Vec::as_slice)
    }

    /// The reduced grevlex Gröbner basis, computed on first use.
    pub fn reduced_basis(&self) -> &[Polynomial] {
        self.groebner
            .get_or_init(|| groebner::reduced_basis(&self.generators, &self.vars))
    }

    /// A copy with the Gröbner basis present.
    pub fn groebner_basis(&self) -> IdealBasis {
        let basis = self.reduced_basis().to_vec();
        let cache = OnceLock::new();
        let _ = cache.set(basis.clone());
        IdealBasis {
            vars: self.vars.clone(),
            generators: basis,
            groebner: cache,
            origin_component: OnceLock::new(),
        }
    }

    pub fn normal_form(&self, u: &Polynomial) -> Polynomial {
        groebner::normal_form(u, self.reduced_basis())
    }

    /// Membership in the ideal over the polynomial ring.
    pub fn contains(&self, u: &Polynomial) -> bool {
        assert_eq!(u.vars(), &self.vars, "variable mismatch");
        u.is_zero() || self.normal_form(u).is_zero()
    }

    pub fn is_whole_ring(&self) -> bool {
        self.reduced_basis().iter().any(Polynomial::is_constant)
    }

    /// Ideal-wise containment `self ⊆ other`.
    pub fn is_subset_of(&self, other: &IdealBasis) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    /// Generators of the ideal quotient `(self : u)`.
    pub fn quotient(&self, u: &Polynomial) -> Vec<Polynomial> {
        if self.contains(u) {
            return vec![Polynomial::one(&self.vars)];
        }
        let principal = [u.clone()];
        groebner::intersection(&self.generators, &principal, &self.vars)
            .iter()
            .map(|g| g.div_exact(u).expect("element of (u) is divisible by u"))
            .collect()
    }

    /// `self + m^n` for the maximal ideal `m` of the origin.
    fn plus_origin_power(&self, n: u32) -> IdealBasis {
        let powers = monomials_of_degree(self.vars.len(), n)
            .into_iter()
            .map(|m| Polynomial::monomial(&self.vars, m, Rational::one()));
        IdealBasis::new(&self.vars, self.generators.iter().cloned().chain(powers))
    }

    /// The contraction `I R_m ∩ R` of the localization at the origin, when
    /// the origin is an isolated point of the zero set or not on it.
    ///
    /// It equals `I + m^N` for the least `N` with `m^N ⊆ I + m^(N+1)`: by
    /// Nakayama that containment gives `m^N R_m ⊆ I R_m`, and `I + m^N` is
    /// `m`-primary, hence contracted.
    pub fn origin_component(&self) -> Option<&IdealBasis> {
        self.origin_component
            .get_or_init(|| {
                if !matches!(self.dimension(), Some(0) | None) {
                    return None;
                }
                (0..=MAX_ORIGIN_POWER).find_map(|n| {
                    let next = self.plus_origin_power(n + 1);
                    let stable = monomials_of_degree(self.vars.len(), n)
                        .into_iter()
                        .all(|m| next.contains(&Polynomial::monomial(&self.vars, m, Rational::one())));
                    stable.then(|| Box::new(self.plus_origin_power(n).groebner_basis()))
                })
            })
            .as_deref()
    }

    /// Krull dimension of the quotient ring, read off the leading-term ideal.
    ///
    /// `None` when the ideal is the whole ring.
    pub fn dimension(&self) -> Option<usize> {
        if self.is_whole_ring() {
            return None;
        }
        let leads: Vec<Vec<usize>> = self
            .reduced_basis()
            .iter()
            .map(|g| g.leading_monomial().expect("nonzero").support().collect())
            .collect();
        Some(monomial_ideal_dimension(&leads, self.vars.len()))
    }
}

/// Past this power the contraction falls back to the ideal quotient.
const MAX_ORIGIN_POWER: u32 = 32;

fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn go(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            go(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, d, &mut Vec::new(), &mut out);
    }
    out
}

/// Largest set of variables containing the support of no generator.
fn monomial_ideal_dimension(supports: &[Vec<usize>], n: usize) -> usize {
    assert!(n < 32, "too many variables for subset enumeration");
    let masks: Vec<u32> = supports
        .iter()
        .map(|s| s.iter().fold(0u32, |m, &i| m | (1 << i)))
        .collect();
    (0u32..(1 << n))
        .filter(|&u| masks.iter().all(|&m| m & !u != 0))
        .map(|u| u.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Reduced Gröbner bases are canonical, so equality of ideals is equality
/// of their bases.
impl PartialEq for IdealBasis {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.reduced_basis() == other.reduced_basis()
    }
}

impl fmt::Display for IdealBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// A point of affine space through the origin at which rings are localized.
#[derive(Clone, Debug)]
pub enum PrimePoint {
    /// The closed point at the origin, ideal `(x_1, ..., x_n)`.
    MaximalOrigin(Variables),
    /// The generic point of the locus cut out by a regular sequence whose
    /// ideal is assumed prime.
    SequencePrime(IdealBasis),
}

impl PrimePoint {
    pub fn origin(vars: &Variables) -> Arc<PrimePoint> {
        Arc::new(PrimePoint::MaximalOrigin(vars.clone()))
    }

    /// Prime of a regular sequence through the origin.
    ///
    /// Regularity is checked; primality of the resulting ideal is taken on
    /// trust.
    pub fn sequence(generators: &[Polynomial]) -> Result<Arc<PrimePoint>, AlgebraError> {
        let vars = generators
            .first()
            .ok_or_else(|| AlgebraError::Degenerate("empty generator sequence".into()))?
            .vars()
            .clone();
        if !is_regular_sequence(generators, vars.len())? {
            return Err(AlgebraError::NotRegular(fmt_list(generators)));
        }
        Ok(Arc::new(PrimePoint::SequencePrime(IdealBasis::new(
            &vars,
            generators.iter().cloned(),
        ))))
    }

    pub fn vars(&self) -> &Variables {
        match self {
            PrimePoint::MaximalOrigin(v) => v,
            PrimePoint::SequencePrime(i) => i.vars(),
        }
    }

    pub fn is_origin(&self) -> bool {
        matches!(self, PrimePoint::MaximalOrigin(_))
    }

    pub fn ideal(&self) -> IdealBasis {
        match self {
            PrimePoint::MaximalOrigin(v) => IdealBasis::origin(v),
            PrimePoint::SequencePrime(i) => i.clone(),
        }
    }

    /// Whether `u` lies in the prime, i.e. is not invertible after
    /// localizing at it.
    pub fn contains(&self, u: &Polynomial) -> bool {
        match self {
            PrimePoint::MaximalOrigin(_) => u.vanishes_at_origin(),
            PrimePoint::SequencePrime(i) => i.contains(u),
        }
    }

    pub fn is_unit(&self, u: &Polynomial) -> bool {
        !self.contains(u)
    }
}

impl PartialEq for PrimePoint {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (PrimePoint::MaximalOrigin(a), PrimePoint::MaximalOrigin(b)) => a == b,
            (PrimePoint::SequencePrime(a), PrimePoint::SequencePrime(b)) => a == b,
            _ => false,
        }
    }
}

impl fmt::Display for PrimePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimePoint::MaximalOrigin(_) => write!(f, "origin"),
            PrimePoint::SequencePrime(i) => write!(f, "{i}"),
        }
    }
}

pub(crate) fn same_point(a: &Arc<PrimePoint>, b: &Arc<PrimePoint>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn fmt_list(polys: &[Polynomial]) -> String {
    let parts: Vec<String> = polys.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Reduced grevlex Gröbner basis of an ideal.
pub fn groebner_basis(ideal: &IdealBasis) -> IdealBasis {
    ideal.groebner_basis()
}

/// Membership of `u` in `ideal` over the polynomial ring.
pub fn ideal_member(u: &Polynomial, ideal: &IdealBasis) -> bool {
    ideal.contains(u)
}

/// Membership of `u` in the localized ideal `ideal · R_locus`.
///
/// `u` lies in the localization exactly when some `s` outside the prime has
/// `s · numerator(u) ∈ ideal`, i.e. when the ideal quotient
/// `(ideal : numerator(u))` is not contained in the prime.
pub fn local_ideal_member(u: &LocalFraction, ideal: &IdealBasis, locus: &PrimePoint) -> Result<bool, AlgebraError> {
    if locus.contains(u.denominator()) {
        return Err(AlgebraError::InvalidFraction(format!(
            "denominator {} lies in the prime {}",
            u.denominator(),
            locus
        )));
    }
    let num = u.numerator();
    if num.is_zero() || ideal.contains(num) {
        return Ok(true);
    }
    if locus.is_unit(num) && ideal.generators().iter().all(|g| locus.contains(g)) {
        return Ok(false);
    }
    if locus.is_origin() {
        if let Some(component) = ideal.origin_component() {
            return Ok(component.contains(num));
        }
    }
    Ok(ideal.quotient(num).iter().any(|g| locus.is_unit(g)))
}

/// Whether `seq` is a regular sequence through the origin of `n`-space:
/// the ideal it generates has dimension `n - len(seq)`.
pub fn is_regular_sequence(seq: &[Polynomial], n: usize) -> Result<bool, AlgebraError> {
    if seq.is_empty() {
        return Err(AlgebraError::Degenerate("empty sequence".into()));
    }
    for f in seq {
        if f.nvars() != n {
            return Err(AlgebraError::VariableMismatch);
        }
        if !f.vanishes_at_origin() {
            return Err(AlgebraError::NotAtOrigin(f.to_string()));
        }
    }
    if seq.len() > n {
        return Ok(false);
    }
    let ideal = IdealBasis::new(seq[0].vars(), seq.iter().cloned());
    if ideal.generators().len() != seq.len() {
        // a zero entry is never a nonzerodivisor
        return Ok(false);
    }
    Ok(ideal.dimension() == Some(n - seq.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;

    fn p(text: &str, v: &Variables) -> Polynomial {
        parse_polynomial(text, v).unwrap()
    }

    fn ideal(text: &[&str], v: &Variables) -> IdealBasis {
        IdealBasis::new(v, text.iter().map(|t| p(t, v)))
    }

    #[test]
    fn membership_examples() {
        let v = Variables::new(["x", "y"]);
        assert!(ideal_member(&p("x^2*y + y*x", &v), &ideal(&["x"], &v)));
        assert!(!ideal_member(&p("1", &v), &ideal(&["x", "y"], &v)));
        assert!(ideal_member(&p("y^3 - 1", &v), &ideal(&["x^2 - y", "x*y - 1"], &v)));
    }

    #[test]
    fn groebner_is_idempotent_and_canonical() {
        let v = Variables::new(["x", "y", "z"]);
        let i = ideal(&["x*y - z", "y^2 - x", "z*x"], &v);
        let g = groebner_basis(&i);
        assert_eq!(groebner_basis(&g).generators(), g.generators());
        let permuted = ideal(&["z*x", "x*y - z", "y^2 - x"], &v);
        assert_eq!(groebner_basis(&permuted).generators(), g.generators());
    }

    #[test]
    fn quotient_examples() {
        let v = Variables::new(["x", "y"]);
        let i = ideal(&["x*y"], &v);
        assert_eq!(IdealBasis::new(&v, i.quotient(&p("x", &v))), ideal(&["y"], &v));
        let i = ideal(&["x^2", "x*y"], &v);
        assert_eq!(IdealBasis::new(&v, i.quotient(&p("x", &v))), ideal(&["x", "y"], &v));
    }

    #[test]
    fn local_membership_examples() {
        let v = Variables::new(["x", "y"]);
        let origin = PrimePoint::origin(&v);
        let one = p("1", &v);
        let frac = LocalFraction::new(p("y", &v), one.clone(), origin.clone()).unwrap();
        assert!(local_ideal_member(&frac, &ideal(&["x", "y"], &v), &origin).unwrap());
        let unit = LocalFraction::new(one, p("1 + x", &v), origin.clone()).unwrap();
        assert!(!local_ideal_member(&unit, &ideal(&["x", "y"], &v), &origin).unwrap());

        let px = PrimePoint::sequence(&[p("x", &v)]).unwrap();
        let diff = LocalFraction::new(p("-x", &v), p("(x+y)*y", &v), px.clone()).unwrap();
        assert!(local_ideal_member(&diff, &ideal(&["x"], &v), &px).unwrap());

        // a global member
        let xy = LocalFraction::new(p("x*y", &v), p("1", &v), origin.clone()).unwrap();
        assert!(local_ideal_member(&xy, &ideal(&["x^2", "y"], &v), &origin).unwrap());
        // x(1 + y) ∈ (x*(1+y)) globally; x alone only locally at the origin.
        let x = LocalFraction::new(p("x", &v), p("1", &v), origin.clone()).unwrap();
        assert!(!ideal_member(&p("x", &v), &ideal(&["x + x*y"], &v)));
        assert!(local_ideal_member(&x, &ideal(&["x + x*y"], &v), &origin).unwrap());
    }

    #[test]
    fn origin_component_examples() {
        let v = Variables::new(["x", "y"]);
        let c = ideal(&["x^2*(x - 1)", "y*(y + 2)"], &v);
        assert_eq!(c.origin_component().unwrap(), &ideal(&["x^2", "y"], &v));
        let away = ideal(&["x - 1", "y"], &v);
        assert!(away.origin_component().unwrap().is_whole_ring());
        assert!(ideal(&["x*y"], &v).origin_component().is_none());
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(2, 0), vec![Monomial::one(2)]);
    }

    #[test]
    fn local_membership_rejects_bad_denominator() {
        let v = Variables::new(["x", "y"]);
        let px = PrimePoint::sequence(&[p("x", &v)]).unwrap();
        let origin = PrimePoint::origin(&v);
        let frac = LocalFraction::new(p("1", &v), p("y", &v), px).unwrap();
        assert!(matches!(
            local_ideal_member(&frac, &ideal(&["x"], &v), &origin),
            Err(AlgebraError::InvalidFraction(_))
        ));
    }

    #[test]
    fn regular_sequence_examples() {
        let v = Variables::new(["x", "y"]);
        assert!(is_regular_sequence(&[p("x", &v), p("y", &v)], 2).unwrap());
        assert!(!is_regular_sequence(&[p("x", &v), p("x*y", &v)], 2).unwrap());
        let w = Variables::new(["x", "y", "z"]);
        assert!(is_regular_sequence(&[p("x*z", &w), p("y", &w)], 3).unwrap());
        assert!(matches!(
            is_regular_sequence(&[p("x + 1", &v)], 2),
            Err(AlgebraError::NotAtOrigin(_))
        ));
        assert!(is_regular_sequence(&[], 2).is_err());
    }

    #[test]
    fn prime_point_equality_is_ideal_equality() {
        let v = Variables::new(["x", "y"]);
        let a = PrimePoint::sequence(&[p("x", &v), p("y", &v)]).unwrap();
        let b = PrimePoint::sequence(&[p("y + x", &v), p("x", &v)]).unwrap();
        assert_eq!(*a, *b);
        assert_ne!(*a, *PrimePoint::origin(&v));
    }
}
