//! Generalized-fraction representatives of local cohomology classes.
//!
//! A class `[ω / (s_1^k_1, …, s_m^k_m)]` is stored as its numerator form
//! (one per ε-power) together with the powered denominator sequence. It is
//! trivial at the presented powers exactly when every coordinate coefficient
//! of the numerator lies in `(s_1^k_1, …, s_m^k_m)` after localizing.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::One;

use crate::algebra::{
    is_regular_sequence, local_ideal_member, same_point, IdealBasis, LocalFraction, Polynomial, PrimePoint, Rational,
    Variables,
};
use crate::koszul::{build_koszul, permutation_chain_map, subsets, DeformedKoszul, Permutation};
use crate::{Error, Result};

/// Coordinate expansion of `d s_1 ∧ … ∧ d s_m`: the coefficient of
/// `dx_I` for each sorted `m`-subset `I` is the minor `det(∂s_a/∂x_{I_b})`.
/// Zero minors are omitted; the empty wedge is `{[]: 1}`.
pub fn wedge_expansion(forms: &[Polynomial], vars: &Variables) -> BTreeMap<Vec<usize>, Polynomial> {
    let m = forms.len();
    let jacobian: Vec<Vec<Polynomial>> = forms
        .iter()
        .map(|f| (0..vars.len()).map(|i| f.partial_derivative(i)).collect())
        .collect();
    let perms = Permutation::all(m);
    let mut out = BTreeMap::new();
    for subset in subsets(vars.len(), m) {
        let mut minor = Polynomial::zero(vars);
        for perm in &perms {
            let mut term = Polynomial::from_int(vars, perm.signature());
            for (a, &b) in perm.images().iter().enumerate() {
                term = &term * &jacobian[a][subset[b]];
                if term.is_zero() {
                    break;
                }
            }
            minor = &minor + &term;
        }
        if !minor.is_zero() {
            out.insert(subset, minor);
        }
    }
    out
}

/// Numerator `coefficient · d s_2 ∧ … ∧ d s_p` of one ε-component, with the
/// wedge already expanded in coordinates.
#[derive(Clone, Debug)]
pub struct FormNumerator {
    coefficient: LocalFraction,
    wedge: BTreeMap<Vec<usize>, Polynomial>,
}

impl FormNumerator {
    pub fn new(coefficient: LocalFraction, forms: &[Polynomial]) -> Self {
        let wedge = wedge_expansion(forms, coefficient.locus().vars());
        FormNumerator { coefficient, wedge }
    }

    pub fn from_parts(coefficient: LocalFraction, wedge: BTreeMap<Vec<usize>, Polynomial>) -> Self {
        FormNumerator { coefficient, wedge }
    }

    pub fn zero(locus: Arc<PrimePoint>) -> Self {
        FormNumerator {
            coefficient: LocalFraction::zero(locus),
            wedge: BTreeMap::new(),
        }
    }

    pub fn coefficient(&self) -> &LocalFraction {
        &self.coefficient
    }

    pub fn wedge(&self) -> &BTreeMap<Vec<usize>, Polynomial> {
        &self.wedge
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero() || self.wedge.is_empty()
    }

    /// Coefficient of each coordinate basis form.
    pub fn coordinates(&self) -> BTreeMap<Vec<usize>, LocalFraction> {
        if self.coefficient.is_zero() {
            return BTreeMap::new();
        }
        self.wedge
            .iter()
            .map(|(k, w)| (k.clone(), self.coefficient.mul_polynomial(w)))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    fn with_coefficient(&self, coefficient: LocalFraction) -> Self {
        FormNumerator {
            coefficient,
            wedge: self.wedge.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if self.wedge == other.wedge {
            return self.with_coefficient(self.coefficient.add(&other.coefficient));
        }
        // u1/v1·w1 + u2/v2·w2 = (u1 v2 w1 + u2 v1 w2) / (v1 v2)
        let (u1, v1) = (self.coefficient.numerator(), self.coefficient.denominator());
        let (u2, v2) = (other.coefficient.numerator(), other.coefficient.denominator());
        let a = u1 * v2;
        let b = u2 * v1;
        let mut wedge: BTreeMap<Vec<usize>, Polynomial> = BTreeMap::new();
        for (k, w) in &self.wedge {
            wedge.insert(k.clone(), &a * w);
        }
        for (k, w) in &other.wedge {
            let term = &b * w;
            let entry = wedge.entry(k.clone()).or_insert_with(|| Polynomial::zero(w.vars()));
            *entry = &*entry + &term;
        }
        wedge.retain(|_, w| !w.is_zero());
        let locus = self.coefficient.locus().clone();
        let coefficient = LocalFraction::new(Polynomial::one(v1.vars()), v1 * v2, locus)
            .expect("product of denominators outside the prime stays outside");
        FormNumerator { coefficient, wedge }
    }

    pub fn neg(&self) -> Self {
        self.with_coefficient(self.coefficient.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.with_coefficient(self.coefficient.scale(c))
    }

    pub fn mul_polynomial(&self, p: &Polynomial) -> Self {
        self.with_coefficient(self.coefficient.mul_polynomial(p))
    }

    /// Human-readable coordinate expansion, e.g. `(1/z)*dy`.
    pub fn describe(&self) -> String {
        let coords = self.coordinates();
        if coords.is_empty() {
            return "0".into();
        }
        let names = self.coefficient.locus().vars().names().to_vec();
        let parts: Vec<String> = coords
            .iter()
            .map(|(k, c)| {
                if k.is_empty() {
                    c.to_string()
                } else {
                    let basis: Vec<String> = k.iter().map(|&i| format!("d{}", names[i])).collect();
                    format!("({c})*{}", basis.join("^"))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl PartialEq for FormNumerator {
    fn eq(&self, other: &Self) -> bool {
        self.coordinates() == other.coordinates()
    }
}

impl fmt::Display for FormNumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

/// Class `[components / (denominators with powers)]` at `locus`;
/// `components[i]` is the `ε^(i+1)` part.
#[derive(Clone, Debug, PartialEq)]
pub struct CohClass {
    denominators: Vec<(Polynomial, u32)>,
    locus: Arc<PrimePoint>,
    components: Vec<FormNumerator>,
}

impl CohClass {
    pub fn new(denominators: Vec<(Polynomial, u32)>, locus: Arc<PrimePoint>, components: Vec<FormNumerator>) -> Result<Self> {
        let bases: Vec<Polynomial> = denominators.iter().map(|(d, _)| d.clone()).collect();
        if bases.is_empty() {
            return Err(Error::Incompatible("empty denominator sequence".into()));
        }
        if denominators.iter().any(|&(_, k)| k == 0) {
            return Err(Error::Incompatible("denominator powers must be positive".into()));
        }
        if !is_regular_sequence(&bases, locus.vars().len())? {
            return Err(crate::algebra::AlgebraError::NotRegular(crate::algebra::fmt_list(&bases)).into());
        }
        if components.iter().any(|c| !same_point(c.coefficient().locus(), &locus)) {
            return Err(Error::Incompatible("class components localized elsewhere".into()));
        }
        Ok(CohClass {
            denominators,
            locus,
            components,
        })
    }

    /// Zero class with `order` components over the sequence at power 1.
    pub fn zero(sequence: &[Polynomial], locus: Arc<PrimePoint>, order: usize) -> Result<Self> {
        let components = vec![FormNumerator::zero(locus.clone()); order];
        Self::new(sequence.iter().map(|d| (d.clone(), 1)).collect(), locus, components)
    }

    pub fn denominators(&self) -> &[(Polynomial, u32)] {
        &self.denominators
    }

    pub fn sequence(&self) -> Vec<Polynomial> {
        self.denominators.iter().map(|(d, _)| d.clone()).collect()
    }

    pub fn powers(&self) -> Vec<u32> {
        self.denominators.iter().map(|&(_, k)| k).collect()
    }

    pub fn locus(&self) -> &Arc<PrimePoint> {
        &self.locus
    }

    pub fn components(&self) -> &[FormNumerator] {
        &self.components
    }

    pub fn order(&self) -> usize {
        self.components.len()
    }

    /// Whether every numerator is literally zero.
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(FormNumerator::is_zero)
    }

    /// The ideal `(s_1^k_1, …)` that numerators are tested against.
    pub fn ideal(&self) -> IdealBasis {
        IdealBasis::new(
            self.locus.vars(),
            self.denominators.iter().map(|(d, k)| d.pow(*k)),
        )
    }

    /// Same class presented at higher powers:
    /// `[ω / (s^k, …)] = [s^(K-k) ω / (s^K, …)]`.
    pub fn raise_powers(&self, powers: &[u32]) -> Result<CohClass> {
        if powers.len() != self.denominators.len() {
            return Err(Error::Incompatible("power list has the wrong length".into()));
        }
        let mut factor = Polynomial::one(self.locus.vars());
        let mut denominators = Vec::with_capacity(powers.len());
        for ((d, k), &target) in self.denominators.iter().zip(powers) {
            if target < *k {
                return Err(Error::Incompatible(format!("cannot lower the power of {d} from {k} to {target}")));
            }
            factor = &factor * &d.pow(target - k);
            denominators.push((d.clone(), target));
        }
        Ok(CohClass {
            denominators,
            locus: self.locus.clone(),
            components: self.components.iter().map(|c| c.mul_polynomial(&factor)).collect(),
        })
    }

    fn check_shape(&self, other: &CohClass) -> Result<()> {
        if !same_point(&self.locus, &other.locus) {
            return Err(Error::Incompatible(format!(
                "classes at different points {} and {}",
                self.locus, other.locus
            )));
        }
        if self.sequence() != other.sequence() {
            return Err(Error::Incompatible("classes over different denominator sequences".into()));
        }
        if self.order() != other.order() {
            return Err(Error::Incompatible(format!(
                "classes with {} and {} ε-components",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    /// Both classes presented at the component-wise maximum powers.
    fn aligned(&self, other: &CohClass) -> Result<(CohClass, CohClass)> {
        self.check_shape(other)?;
        let powers: Vec<u32> = self
            .powers()
            .iter()
            .zip(other.powers())
            .map(|(&a, b)| a.max(b))
            .collect();
        Ok((self.raise_powers(&powers)?, other.raise_powers(&powers)?))
    }

    pub fn add(&self, other: &CohClass) -> Result<CohClass> {
        let (a, b) = self.aligned(other)?;
        let components = a.components.iter().zip(&b.components).map(|(x, y)| x.add(y)).collect();
        Ok(CohClass { components, ..a })
    }

    pub fn neg(&self) -> CohClass {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &CohClass) -> Result<CohClass> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> CohClass {
        CohClass {
            denominators: self.denominators.clone(),
            locus: self.locus.clone(),
            components: self.components.iter().map(|x| x.scale(c)).collect(),
        }
    }

    /// Replace the coefficient of one component, keeping its wedge.
    pub fn with_coefficient(&self, component: usize, coefficient: LocalFraction) -> CohClass {
        let mut out = self.clone();
        out.components[component] = self.components[component].with_coefficient(coefficient);
        out
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .map(|(i, c)| format!("ε^{}: {}", i + 1, c))
            .collect();
        let dens: Vec<String> = self
            .denominators
            .iter()
            .map(|(d, k)| if *k == 1 { format!("{d}") } else { format!("({d})^{k}") })
            .collect();
        write!(f, "[{}] over ({}) at {}", comps.join("; "), dens.join(", "), self.locus)
    }
}

/// One coordinate coefficient and whether it lies in the localized
/// denominator ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct MembershipWitness {
    /// ε-power of the component, starting at 1.
    pub component: usize,
    /// Sorted variable indices of the basis form `dx_I`.
    pub coordinate: Vec<usize>,
    pub value: LocalFraction,
    pub member: bool,
}

impl MembershipWitness {
    pub fn describe(&self, vars: &Variables, ideal: &IdealBasis) -> String {
        let basis = if self.coordinate.is_empty() {
            "1".to_string()
        } else {
            let names: Vec<String> = self.coordinate.iter().map(|&i| format!("d{}", vars.names()[i])).collect();
            names.join("^")
        };
        let rel = if self.member { "∈" } else { "∉" };
        format!("ε^{} [{}]: {} {} {}", self.component, basis, self.value, rel, ideal)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrivialityVerdict {
    pub trivial: bool,
    pub witnesses: Vec<MembershipWitness>,
}

/// Chern-character representative of a deformed Koszul generator: the
/// `ε^i` component is `h_i · d f_2 ∧ … ∧ d f_p` over `(f_1, …, f_p)`.
pub fn ch_representative(d: &DeformedKoszul) -> CohClass {
    let complex = build_koszul(d);
    let first = &complex.entries()[0];
    let forms = &d.base()[1..];
    let components = (1..=d.order())
        .map(|i| FormNumerator::new(first.slot(i).clone(), forms))
        .collect();
    CohClass {
        denominators: d.base().iter().map(|f| (f.clone(), 1)).collect(),
        locus: d.locus().clone(),
        components,
    }
}

/// Triviality at the presented powers, coefficient by coefficient.
pub fn class_is_trivial(c: &CohClass) -> TrivialityVerdict {
    let ideal = c.ideal();
    let mut witnesses = Vec::new();
    for (i, comp) in c.components.iter().enumerate() {
        for (coordinate, value) in comp.coordinates() {
            let member = local_ideal_member(&value, &ideal, &c.locus).expect("class coefficients are valid at the locus");
            witnesses.push(MembershipWitness {
                component: i + 1,
                coordinate,
                value,
                member,
            });
        }
    }
    TrivialityVerdict {
        trivial: witnesses.iter().all(|w| w.member),
        witnesses,
    }
}

/// Verdict on `c1 - c2` after bringing both to common powers.
pub fn compare_classes(c1: &CohClass, c2: &CohClass) -> Result<TrivialityVerdict> {
    Ok(class_is_trivial(&c1.sub(c2)?))
}

/// Equality at the presented powers. A `false` answer means "not equal at
/// this presentation".
pub fn class_equal(c1: &CohClass, c2: &CohClass) -> Result<bool> {
    Ok(compare_classes(c1, c2)?.trivial)
}

/// Write `1/v` as `mult / (s · extra^k)` with `s` a unit at the origin.
fn split_extra(v: &Polynomial, extra: &Polynomial) -> Option<(Polynomial, u32, Polynomial)> {
    let vars = v.vars();
    let mut rest = v.clone();
    let mut k = 0;
    while !rest.is_constant() {
        match rest.div_exact(extra) {
            Some(q) => {
                rest = q;
                k += 1;
            }
            None => break,
        }
    }
    if rest.is_unit_at_origin() {
        return Some((rest, k, Polynomial::one(vars)));
    }
    // rest divides a power of extra: 1/rest = q/extra^m
    let mut power = extra.clone();
    for m in 1..=4 {
        if let Some(q) = power.div_exact(&rest) {
            return Some((Polynomial::one(vars), k + m, q));
        }
        power = &power * extra;
    }
    None
}

/// Boundary toward the origin along `extra`: each coefficient
/// `u / (s · extra^k)` becomes `u · extra^(K-k) / s` over the sequence
/// extended by `extra^K`, `K` the largest `k` (at least 1).
pub fn boundary(c: &CohClass, extra: &Polynomial) -> Result<CohClass> {
    if c.locus.is_origin() {
        return Err(Error::NotApplicable("boundary of a class already at the origin".into()));
    }
    if !extra.vanishes_at_origin() {
        return Err(Error::NotApplicable(format!("{extra} does not vanish at the origin")));
    }
    if c.locus.contains(extra) {
        return Err(Error::NotApplicable(format!("{extra} lies in the prime {}", c.locus)));
    }
    let origin = PrimePoint::origin(c.locus.vars());
    let mut shapes = Vec::with_capacity(c.components.len());
    for comp in &c.components {
        if comp.is_zero() {
            shapes.push(None);
            continue;
        }
        let coef = comp.coefficient();
        let (s, k, mult) = split_extra(coef.denominator(), extra).ok_or_else(|| {
            Error::UnsupportedNumerator(format!(
                "denominator {} is not a unit times a power of {extra}",
                coef.denominator()
            ))
        })?;
        shapes.push(Some((s, k, coef.numerator() * &mult)));
    }
    let top = shapes.iter().flatten().map(|(_, k, _)| *k).max().unwrap_or(0).max(1);
    let components = c
        .components
        .iter()
        .zip(shapes)
        .map(|(comp, shape)| match shape {
            None => FormNumerator::zero(origin.clone()),
            Some((s, k, u)) => {
                let num = &u * &extra.pow(top - k);
                let coef = LocalFraction::new(num, s, origin.clone()).expect("unit denominator at the origin");
                FormNumerator::from_parts(coef, comp.wedge().clone())
            }
        })
        .collect();
    let mut denominators = c.denominators.clone();
    denominators.push((extra.clone(), top));
    CohClass::new(denominators, origin, components)
}

/// The class over the permuted denominator sequence, every component
/// multiplied by the determinant of the permutation chain map.
pub fn reorder_class(c: &CohClass, perm: &Permutation) -> Result<CohClass> {
    let chain = permutation_chain_map(&c.sequence(), perm)?;
    Ok(CohClass {
        denominators: perm.apply(&c.denominators),
        locus: c.locus.clone(),
        components: c.components.iter().map(|x| x.scale(chain.sign())).collect(),
    })
}

impl TrivialityVerdict {
    /// The first coefficient found outside the ideal, if any.
    pub fn first_failure(&self) -> Option<&MembershipWitness> {
        self.witnesses.iter().find(|w| !w.member)
    }
}
