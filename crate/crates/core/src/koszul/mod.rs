//! Koszul complexes of regular sequences whose first entry carries a
//! truncated ε-deformation.

mod matrix;
mod permutation;

use std::fmt;
use std::sync::Arc;

use num::One;

pub use matrix::{koszul_differential, subsets, Entry, Matrix};
pub use permutation::{permutation_chain_map, Permutation, PermutationChainMap};

use crate::algebra::{fmt_list, is_regular_sequence, same_point, EpsElement, IdealBasis, LocalFraction, Polynomial, PrimePoint, Rational};
use crate::{Error, Result};

/// Koszul generator `F(f_1 + ε h_1 + … + ε^j h_j, f_2, …, f_p)` localized
/// at a prime containing the base sequence.
#[derive(Clone, Debug)]
pub struct DeformedKoszul {
    base: Vec<Polynomial>,
    /// `deformation[i]` multiplies `ε^(i+1)`.
    deformation: Vec<LocalFraction>,
    locus: Arc<PrimePoint>,
}

impl DeformedKoszul {
    pub fn new(base: Vec<Polynomial>, deformation: Vec<LocalFraction>, locus: Arc<PrimePoint>) -> Result<Self> {
        let first = base
            .first()
            .ok_or_else(|| Error::InvalidScenario("Koszul generator needs a nonempty sequence".into()))?;
        let vars = first.vars();
        if locus.vars() != vars || base.iter().any(|f| f.vars() != vars) {
            return Err(crate::algebra::AlgebraError::VariableMismatch.into());
        }
        for f in &base {
            if f.is_constant() {
                return Err(Error::InvalidScenario(format!("sequence entry {f} is constant")));
            }
        }
        if !is_regular_sequence(&base, vars.len())? {
            return Err(crate::algebra::AlgebraError::NotRegular(fmt_list(&base)).into());
        }
        if let Some(f) = base.iter().find(|f| !locus.contains(f)) {
            return Err(Error::InvalidScenario(format!("sequence entry {f} is a unit at {locus}")));
        }
        if deformation.iter().any(|h| !same_point(h.locus(), &locus)) {
            return Err(Error::Incompatible("deformation localized at a different point".into()));
        }
        Ok(DeformedKoszul {
            base,
            deformation,
            locus,
        })
    }

    pub fn undeformed(base: Vec<Polynomial>, locus: Arc<PrimePoint>) -> Result<Self> {
        Self::new(base, Vec::new(), locus)
    }

    pub fn base(&self) -> &[Polynomial] {
        &self.base
    }

    pub fn deformation(&self) -> &[LocalFraction] {
        &self.deformation
    }

    pub fn locus(&self) -> &Arc<PrimePoint> {
        &self.locus
    }

    pub fn order(&self) -> usize {
        self.deformation.len()
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    /// Whether every ε-coefficient vanishes.
    pub fn is_undeformed(&self) -> bool {
        self.deformation.iter().all(LocalFraction::is_zero)
    }

    /// Image under `ε^(order+1) = 0`.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot truncate to a higher order");
        DeformedKoszul {
            base: self.base.clone(),
            deformation: self.deformation[..order].to_vec(),
            locus: self.locus.clone(),
        }
    }

    /// Same generator viewed at order `order`, padding with zero coefficients
    /// or truncating.
    pub fn at_order(&self, order: usize) -> Self {
        if order <= self.order() {
            return self.truncate(order);
        }
        let mut deformation = self.deformation.clone();
        deformation.resize(order, LocalFraction::zero(self.locus.clone()));
        DeformedKoszul {
            base: self.base.clone(),
            deformation,
            locus: self.locus.clone(),
        }
    }

    /// The deformed first entry as an ε-element.
    pub fn first_entry(&self) -> EpsElement {
        let mut slots = vec![LocalFraction::from_polynomial(self.base[0].clone(), self.locus.clone())];
        slots.extend(self.deformation.iter().cloned());
        EpsElement::new(slots).expect("slots share the generator's locus")
    }
}

impl PartialEq for DeformedKoszul {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && same_point(&self.locus, &other.locus) && self.deformation == other.deformation
    }
}

impl fmt::Display for DeformedKoszul {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let first = self.first_entry();
        write!(f, "Koszul({first}")?;
        for g in &self.base[1..] {
            write!(f, ", {g}")?;
        }
        write!(f, ") at {}", self.locus)
    }
}

/// Koszul complex over `R_locus[ε]/ε^(order+1)`.
///
/// `differentials[k - 1]` is `d_k : Λ^k → Λ^(k-1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct KoszulComplex {
    ring_locus: Arc<PrimePoint>,
    order: usize,
    entries: Vec<EpsElement>,
    differentials: Vec<Matrix<EpsElement>>,
}

impl KoszulComplex {
    /// Assemble a complex from explicit differentials without checking them.
    pub fn from_parts(entries: Vec<EpsElement>, differentials: Vec<Matrix<EpsElement>>) -> Result<Self> {
        let first = entries
            .first()
            .ok_or_else(|| Error::InvalidScenario("Koszul complex needs a nonempty sequence".into()))?;
        if differentials.len() != entries.len() {
            return Err(Error::Incompatible(format!(
                "{} differentials for a sequence of length {}",
                differentials.len(),
                entries.len()
            )));
        }
        Ok(KoszulComplex {
            ring_locus: first.locus().clone(),
            order: first.order(),
            entries,
            differentials,
        })
    }

    pub fn length(&self) -> usize {
        self.entries.len()
    }

    pub fn ring_locus(&self) -> &Arc<PrimePoint> {
        &self.ring_locus
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[EpsElement] {
        &self.entries
    }

    pub fn differentials(&self) -> &[Matrix<EpsElement>] {
        &self.differentials
    }

    /// `d_k` for `1 ≤ k ≤ length`.
    pub fn differential(&self, k: usize) -> &Matrix<EpsElement> {
        &self.differentials[k - 1]
    }

    /// Entry-wise truncation to a lower ε-order.
    pub fn truncate(&self, order: usize) -> KoszulComplex {
        let zero = EpsElement::zero(self.ring_locus.clone(), order);
        KoszulComplex {
            ring_locus: self.ring_locus.clone(),
            order,
            entries: self.entries.iter().map(|e| e.truncate(order)).collect(),
            differentials: self
                .differentials
                .iter()
                .map(|d| d.map(zero.clone(), |e| e.truncate(order)))
                .collect(),
        }
    }
}

/// The Koszul complex of a deformed generator. Every complex built here is
/// checked to satisfy `d ∘ d = 0`.
pub fn build_koszul(d: &DeformedKoszul) -> KoszulComplex {
    let order = d.order();
    let locus = d.locus().clone();
    let mut entries = vec![d.first_entry()];
    entries.extend(
        d.base()[1..]
            .iter()
            .map(|f| EpsElement::from_polynomial(f.clone(), locus.clone(), order)),
    );
    let zero = EpsElement::zero(locus.clone(), order);
    let differentials = (1..=entries.len())
        .map(|k| koszul_differential(&entries, k, &zero))
        .collect();
    let complex = KoszulComplex {
        ring_locus: locus,
        order,
        entries,
        differentials,
    };
    assert!(verify_complex(&complex), "Koszul differentials do not square to zero for {d}");
    complex
}

/// Whether all consecutive differential products vanish exactly.
pub fn verify_complex(c: &KoszulComplex) -> bool {
    c.differentials.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
}

/// Multiplicity of the generator along its locus. Only bases generating the
/// locus prime itself are supported; their multiplicity is 1.
pub fn multiplicity(d: &DeformedKoszul) -> Result<Rational> {
    let generated = IdealBasis::new(d.locus().vars(), d.base().iter().cloned());
    if generated == d.locus().ideal() {
        Ok(Rational::one())
    } else {
        Err(Error::UnsupportedBase(format!(
            "{} does not generate the prime {}",
            fmt_list(d.base()),
            d.locus()
        )))
    }
}
