//! Cycle-level constructions on a fixed scenario: `μ_Y`, `μ_Z`, the product
//! family `C_j` split over its two points, restriction to lower ε-order,
//! Milnor-cycle membership and the obstruction-elimination pipeline.

use std::fmt;
use std::sync::Arc;

use num::{One, Zero};

use crate::algebra::{
    eps_invert, fmt_list, is_regular_sequence, local_ideal_member, same_point, EpsElement, IdealBasis, LocalFraction,
    Polynomial, PrimePoint, Rational, Variables,
};
use crate::cohomology::{
    boundary, ch_representative, class_is_trivial, compare_classes, reorder_class, CohClass, TrivialityVerdict,
};
use crate::koszul::{multiplicity, DeformedKoszul, Permutation};
use crate::{Error, Result};

/// Raw scenario data before validation.
#[derive(Clone, Debug)]
pub struct ScenarioSpec {
    pub vars: Variables,
    /// `f_1, …, f_p`.
    pub f: Vec<Polynomial>,
    /// `f_(p+1)`.
    pub fnext: Polynomial,
    pub order: usize,
    /// First-order deformation `g_1 = deform_num / deform_den`.
    pub deform_num: Polynomial,
    pub deform_den: Polynomial,
    /// `a_1, …` for the product family `C_j`.
    pub a: Vec<Polynomial>,
    /// `a_i` with `b = Σ a_i f_i + f_(p+1)`, when supplied.
    pub b_decomp: Option<Vec<Polynomial>>,
}

/// Validated scenario: `Y = V(f_1, …, f_p)`, `Z = V(f_(p+1), f_2, …, f_p)`,
/// meeting at the origin.
#[derive(Clone, Debug)]
pub struct Scenario {
    vars: Variables,
    f: Vec<Polynomial>,
    fnext: Polynomial,
    order: usize,
    g: LocalFraction,
    a: Vec<Polynomial>,
    b_decomp: Option<Vec<Polynomial>>,
    q1: Arc<PrimePoint>,
    q2: Arc<PrimePoint>,
    origin: Arc<PrimePoint>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidScenario(msg.into())
}

impl Scenario {
    pub fn new(spec: ScenarioSpec) -> Result<Self> {
        let ScenarioSpec {
            vars,
            f,
            fnext,
            order,
            deform_num,
            deform_den,
            a,
            b_decomp,
        } = spec;
        if f.is_empty() {
            return Err(invalid("p must be at least 1"));
        }
        if order == 0 {
            return Err(invalid("order must be at least 1"));
        }
        let all = f
            .iter()
            .chain([&fnext, &deform_num, &deform_den])
            .chain(&a)
            .chain(b_decomp.iter().flatten());
        for q in all {
            if q.vars() != &vars {
                return Err(crate::algebra::AlgebraError::VariableMismatch.into());
            }
        }
        for q in f.iter().chain([&fnext]) {
            if q.is_constant() {
                return Err(invalid(format!("sequence entry {q} is constant")));
            }
            if !q.vanishes_at_origin() {
                return Err(invalid(format!("{q} does not vanish at the origin")));
            }
        }
        if !is_regular_sequence(&f, vars.len())? {
            return Err(crate::algebra::AlgebraError::NotRegular(fmt_list(&f)).into());
        }
        let p = f.len();
        if vars.len() != p + 1 {
            return Err(invalid(format!(
                "the sequences meet at the origin only when there are p + 1 = {} variables, found {}",
                p + 1,
                vars.len()
            )));
        }
        let mut z_seq = vec![fnext.clone()];
        z_seq.extend(f[1..].iter().cloned());
        let mut full = f.clone();
        full.push(fnext.clone());
        for seq in [&z_seq, &full] {
            if !is_regular_sequence(seq, vars.len())? {
                return Err(crate::algebra::AlgebraError::NotRegular(fmt_list(seq)).into());
            }
        }
        let q1 = PrimePoint::sequence(&f)?;
        let q2 = PrimePoint::sequence(&z_seq)?;
        if q1.contains(&fnext) {
            return Err(invalid(format!("{fnext} lies in {}", fmt_list(&f))));
        }
        let g = LocalFraction::new(deform_num, deform_den, q1.clone())?;
        if let Some(d) = &b_decomp {
            if d.len() != p {
                return Err(invalid(format!("b_decomp has {} entries, expected p = {p}", d.len())));
            }
        }
        Ok(Scenario {
            origin: PrimePoint::origin(&vars),
            vars,
            f,
            fnext,
            order,
            g,
            a,
            b_decomp,
            q1,
            q2,
        })
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn p(&self) -> usize {
        self.f.len()
    }

    pub fn f(&self) -> &[Polynomial] {
        &self.f
    }

    pub fn fnext(&self) -> &Polynomial {
        &self.fnext
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The first-order deformation `g_1 = a / b` at `Y`.
    pub fn deformation(&self) -> &LocalFraction {
        &self.g
    }

    pub fn a(&self) -> &[Polynomial] {
        &self.a
    }

    pub fn b_decomp(&self) -> Option<&[Polynomial]> {
        self.b_decomp.as_deref()
    }

    /// The generic point of `Y`, prime `(f_1, …, f_p)`.
    pub fn q1(&self) -> &Arc<PrimePoint> {
        &self.q1
    }

    /// The generic point of `Z`, prime `(f_(p+1), f_2, …, f_p)`.
    pub fn q2(&self) -> &Arc<PrimePoint> {
        &self.q2
    }

    pub fn origin(&self) -> &Arc<PrimePoint> {
        &self.origin
    }

    /// `(f_(p+1), f_2, …, f_p)`.
    pub fn z_sequence(&self) -> Vec<Polynomial> {
        let mut z = vec![self.fnext.clone()];
        z.extend(self.f[1..].iter().cloned());
        z
    }

    /// `(f_1, …, f_p, f_(p+1))`, the common order of boundary classes.
    pub fn full_sequence(&self) -> Vec<Polynomial> {
        let mut s = self.f.clone();
        s.push(self.fnext.clone());
        s
    }

    /// Copy with a different ε-order.
    pub fn with_order(&self, order: usize) -> Result<Scenario> {
        if order == 0 {
            return Err(invalid("order must be at least 1"));
        }
        Ok(Scenario { order, ..self.clone() })
    }

    /// Copy with a different family `a_1, …`.
    pub fn with_a(&self, a: Vec<Polynomial>) -> Result<Scenario> {
        if a.iter().any(|q| q.vars() != &self.vars) {
            return Err(crate::algebra::AlgebraError::VariableMismatch.into());
        }
        Ok(Scenario { a, ..self.clone() })
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars: {}", self.vars.names().join(" "))?;
        writeln!(f, "p: {}", self.p())?;
        writeln!(f, "f: {}", fmt_list(&self.f))?;
        writeln!(f, "fnext: {}", self.fnext)?;
        writeln!(f, "order: {}", self.order)?;
        writeln!(f, "deform_g: {}", self.g)?;
        writeln!(f, "a: {}", fmt_list(&self.a))?;
        match &self.b_decomp {
            Some(d) => write!(f, "b_decomp: {}", fmt_list(d)),
            None => write!(f, "b_decomp: none"),
        }
    }
}

/// Rational combination of Koszul generators over a common ε-order.
#[derive(Clone, Debug)]
pub struct CycleElement {
    terms: Vec<(Rational, DeformedKoszul)>,
    order: usize,
}

impl CycleElement {
    /// Equal generators are merged and zero coefficients dropped. A generator
    /// of lower order is accepted only if it carries no ε-terms.
    pub fn new(terms: Vec<(Rational, DeformedKoszul)>, order: usize) -> Result<Self> {
        let mut merged: Vec<(Rational, DeformedKoszul)> = Vec::with_capacity(terms.len());
        for (c, gen) in terms {
            let gen = if gen.order() == order {
                gen
            } else if gen.order() < order && gen.is_undeformed() {
                gen.at_order(order)
            } else {
                return Err(Error::Incompatible(format!(
                    "generator of order {} in an element of order {order}",
                    gen.order()
                )));
            };
            match merged.iter_mut().find(|(_, g)| *g == gen) {
                Some((acc, _)) => *acc += c,
                None => merged.push((c, gen)),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        Ok(CycleElement { terms: merged, order })
    }

    pub fn single(gen: DeformedKoszul) -> Self {
        let order = gen.order();
        CycleElement {
            terms: vec![(Rational::one(), gen)],
            order,
        }
    }

    pub fn terms(&self) -> &[(Rational, DeformedKoszul)] {
        &self.terms
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &CycleElement) -> Result<CycleElement> {
        let order = self.order.max(other.order);
        let terms = self.terms.iter().chain(&other.terms).cloned().collect();
        CycleElement::new(terms, order)
    }

    pub fn scale(&self, c: &Rational) -> CycleElement {
        let terms = self.terms.iter().map(|(k, g)| (k * c, g.clone())).collect();
        CycleElement::new(terms, self.order).expect("scaling keeps orders")
    }

    pub fn sub(&self, other: &CycleElement) -> Result<CycleElement> {
        self.add(&other.scale(&-Rational::one()))
    }
}

/// Equality as formal combinations: the same generators with the same
/// coefficients, in any order.
impl PartialEq for CycleElement {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .all(|(c, g)| other.terms.iter().any(|(d, h)| c == d && g == h))
    }
}

impl fmt::Display for CycleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(c, g)| format!("{c}*{g}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `μ_Y(Y^1)`: the Koszul complex of `(f_1 + ε g_1, f_2, …, f_p)` at `Y`.
/// With `g_1 = 0` this is the undeformed `μ_Y(Y)` of order 0.
pub fn mu_y(s: &Scenario) -> CycleElement {
    let deformation = if s.g.is_zero() { Vec::new() } else { vec![s.g.clone()] };
    CycleElement::single(
        DeformedKoszul::new(s.f.clone(), deformation, s.q1.clone()).expect("validated with the scenario"),
    )
}

/// `μ_Y(Y)`: the undeformed Koszul complex of `(f_1, …, f_p)` at `Y`.
pub fn mu_y_undeformed(s: &Scenario) -> CycleElement {
    CycleElement::single(DeformedKoszul::undeformed(s.f.clone(), s.q1.clone()).expect("validated with the scenario"))
}

/// `μ_Z(Z)`: the undeformed Koszul complex of `(f_(p+1), f_2, …, f_p)` at `Z`.
pub fn mu_z(s: &Scenario) -> CycleElement {
    CycleElement::single(DeformedKoszul::undeformed(s.z_sequence(), s.q2.clone()).expect("validated with the scenario"))
}

/// Localize the first entry `f_1 f_(p+1) + Σ ε^i a_i` at `locus` and divide
/// it by the unit `divisor`, leaving `expected` in the ε^0 slot.
fn split_part(s: &Scenario, j: usize, locus: &Arc<PrimePoint>, divisor: &Polynomial, expected: &Polynomial) -> Result<DeformedKoszul> {
    let mut slots = vec![LocalFraction::from_polynomial(&s.f[0] * &s.fnext, locus.clone())];
    slots.extend(s.a[..j].iter().map(|a| LocalFraction::from_polynomial(a.clone(), locus.clone())));
    let product = EpsElement::new(slots)?;
    let unit = EpsElement::from_polynomial(divisor.clone(), locus.clone(), j);
    let first = product.mul(&eps_invert(&unit)?);
    if first.slot(0) != &LocalFraction::from_polynomial(expected.clone(), locus.clone()) {
        return Err(invalid(format!("dividing by {divisor} at {locus} did not recover {expected}")));
    }
    let mut base = vec![expected.clone()];
    base.extend(s.f[1..].iter().cloned());
    DeformedKoszul::new(base, first.coefficients()[1..].to_vec(), locus.clone())
}

/// `[C_j]` split over its two points: the Koszul complex of
/// `(f_1 f_(p+1) + ε a_1 + … + ε^j a_j, f_2, …, f_p)` becomes
/// `C¹_j` at `Y` (dividing by `f_(p+1)`) plus `C²_j` at `Z` (dividing by `f_1`).
pub fn build_c(s: &Scenario, j: usize) -> Result<CycleElement> {
    if s.a.len() < j {
        return Err(invalid(format!("C_{j} needs {j} entries of a, found {}", s.a.len())));
    }
    let c1 = split_part(s, j, &s.q1, &s.fnext, &s.f[0])?;
    let c2 = split_part(s, j, &s.q2, &s.f[0], &s.fnext)?;
    CycleElement::new(vec![(Rational::one(), c1), (Rational::one(), c2)], j)
}

/// `T^j`: `μ_Y(Y^1)` lifted with higher corrections `h_2, …, h_j`.
pub fn lift_mu_y(s: &Scenario, higher: &[LocalFraction]) -> Result<CycleElement> {
    let mut deformation = vec![s.g.clone()];
    deformation.extend(higher.iter().cloned());
    Ok(CycleElement::single(DeformedKoszul::new(s.f.clone(), deformation, s.q1.clone())?))
}

/// Image under the restriction to a lower ε-order.
pub fn restrict(e: &CycleElement, to_order: usize) -> Result<CycleElement> {
    if to_order > e.order {
        return Err(Error::Incompatible(format!(
            "cannot restrict an element of order {} to order {to_order}",
            e.order
        )));
    }
    let terms = e.terms.iter().map(|(c, g)| (c.clone(), g.truncate(to_order))).collect();
    CycleElement::new(terms, to_order)
}

/// Which of the scenario's two codimension-`p` points a generator sits at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SupportPoint {
    Y,
    Z,
}

impl fmt::Display for SupportPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SupportPoint::Y => write!(f, "Y"),
            SupportPoint::Z => write!(f, "Z"),
        }
    }
}

/// A coefficient replaced by a congruent one so that the boundary applies;
/// `certified` records that both classes agree.
#[derive(Clone, Debug, PartialEq)]
pub struct Rewrite {
    pub component: usize,
    pub from: LocalFraction,
    pub to: LocalFraction,
    pub certified: bool,
}

/// One term's share of the summed boundary.
#[derive(Clone, Debug)]
pub struct Contribution {
    pub coefficient: Rational,
    pub generator: DeformedKoszul,
    pub point: SupportPoint,
    pub ch: CohClass,
    pub rewrites: Vec<Rewrite>,
    /// Boundary over `(f_1, …, f_p, f_(p+1))`, sign-normalized and unscaled;
    /// absent for ε-free generators.
    pub boundary: Option<CohClass>,
    pub verdict: Option<TrivialityVerdict>,
}

#[derive(Clone, Debug)]
pub struct MilnorVerdict {
    pub is_cycle: bool,
    pub boundary: CohClass,
    pub verdict: TrivialityVerdict,
    pub contributions: Vec<Contribution>,
}

fn locate(gen: &DeformedKoszul, s: &Scenario) -> Result<SupportPoint> {
    if same_point(gen.locus(), &s.q1) {
        if gen.base() == s.f.as_slice() {
            return Ok(SupportPoint::Y);
        }
    } else if same_point(gen.locus(), &s.q2) {
        if gen.base() == s.z_sequence().as_slice() {
            return Ok(SupportPoint::Z);
        }
    } else {
        return Err(Error::UnrecognizedLocus(format!("{gen}")));
    }
    Err(Error::UnrecognizedLocus(format!(
        "{gen} is not presented by the scenario's sequence at that point"
    )))
}

/// Replace coefficient denominators that are not a unit times a power of
/// `extra` by congruent ones modulo the class's sequence ideal.
fn normalize_denominators(ch: &CohClass, extra: &Polynomial, s: &Scenario) -> Result<(CohClass, Vec<Rewrite>)> {
    let ideal = IdealBasis::new(&s.vars, ch.sequence());
    let mut out = ch.clone();
    let mut rewrites = Vec::new();
    for (i, comp) in ch.components().iter().enumerate() {
        let coef = comp.coefficient();
        if coef.is_zero() || has_boundary_shape(coef.denominator(), extra) {
            continue;
        }
        let v = coef.denominator();
        let mut candidates = Vec::new();
        if s.b_decomp.is_some() && same_point(ch.locus(), &s.q1) {
            if let Some(q) = v.div_exact(s.g.denominator()) {
                // b ≡ f_(p+1) modulo (f_1, …, f_p)
                candidates.push(&q * &s.fnext);
            }
        }
        candidates.push(ideal.normal_form(v));
        let replacement = candidates
            .into_iter()
            .filter(|w| ideal.contains(&(v - w)) && has_boundary_shape(w, extra))
            .find_map(|w| LocalFraction::new(coef.numerator().clone(), w, ch.locus().clone()).ok());
        if let Some(to) = replacement {
            out = out.with_coefficient(i, to.clone());
            rewrites.push(Rewrite {
                component: i + 1,
                from: coef.clone(),
                to,
                certified: false,
            });
        }
    }
    if !rewrites.is_empty() {
        let certified = compare_classes(ch, &out)?.trivial;
        for r in &mut rewrites {
            r.certified = certified;
        }
        if !certified {
            return Ok((ch.clone(), rewrites));
        }
    }
    Ok((out, rewrites))
}

fn has_boundary_shape(v: &Polynomial, extra: &Polynomial) -> bool {
    let mut rest = v.clone();
    while !rest.is_constant() {
        match rest.div_exact(extra) {
            Some(q) => rest = q,
            None => break,
        }
    }
    rest.is_unit_at_origin() || (1..=4).any(|m| extra.pow(m).div_exact(&rest).is_some())
}

/// Whether `e` lies in the kernel of the first differential: the boundaries
/// of all terms toward the origin, brought to the sequence
/// `(f_1, …, f_p, f_(p+1))` and summed, form a trivial class.
pub fn is_milnor_cycle(e: &CycleElement, s: &Scenario) -> Result<MilnorVerdict> {
    let p = s.p();
    let full = s.full_sequence();
    let mut total = CohClass::zero(&full, s.origin.clone(), e.order())?;
    let mut contributions = Vec::with_capacity(e.terms().len());
    for (c, gen) in e.terms() {
        let point = locate(gen, s)?;
        let ch = ch_representative(gen);
        if gen.is_undeformed() {
            contributions.push(Contribution {
                coefficient: c.clone(),
                generator: gen.clone(),
                point,
                ch,
                rewrites: Vec::new(),
                boundary: None,
                verdict: None,
            });
            continue;
        }
        let extra = match point {
            SupportPoint::Y => &s.fnext,
            SupportPoint::Z => &s.f[0],
        };
        let (normalized, rewrites) = normalize_denominators(&ch, extra, s)?;
        let mut b = boundary(&normalized, extra)?;
        if point == SupportPoint::Z {
            // (f_(p+1), f_2, …, f_p, f_1) → (f_1, …, f_p, f_(p+1))
            b = reorder_class(&b, &Permutation::swap(p + 1, 0, p))?;
        }
        total = total.add(&b.scale(c))?;
        let verdict = class_is_trivial(&b);
        contributions.push(Contribution {
            coefficient: c.clone(),
            generator: gen.clone(),
            point,
            ch,
            rewrites,
            boundary: Some(b),
            verdict: Some(verdict),
        });
    }
    let verdict = class_is_trivial(&total);
    Ok(MilnorVerdict {
        is_cycle: verdict.trivial,
        boundary: total,
        verdict,
        contributions,
    })
}

/// Which case of the first-order deformation `g_1 = a / b` a scenario is in.
#[derive(Clone, Debug, PartialEq)]
pub enum Obstruction {
    /// `b` is a unit at the origin; `μ_Y(Y^1)` lifts directly.
    Unobstructed,
    /// `b = Σ a_i f_i + f_(p+1)` with the recorded `a_i`.
    Obstructed { decomposition: Vec<Polynomial> },
    /// `b` vanishes at the origin but no decomposition of the supported
    /// shape was supplied.
    Unsupported { reason: String },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::Unobstructed => write!(f, "Unobstructed"),
            Obstruction::Obstructed { .. } => write!(f, "Obstructed"),
            Obstruction::Unsupported { .. } => write!(f, "Unsupported"),
        }
    }
}

pub fn detect_obstruction(s: &Scenario) -> Result<Obstruction> {
    let b = s.g.denominator();
    if s.q1.contains(b) {
        return Err(Error::Algebra(crate::algebra::AlgebraError::InvalidFraction(format!(
            "denominator {b} lies in {}",
            s.q1
        ))));
    }
    let ideal = IdealBasis::new(&s.vars, s.full_sequence());
    let b_local = LocalFraction::from_polynomial(b.clone(), s.origin.clone());
    if !local_ideal_member(&b_local, &ideal, &s.origin)? {
        return Ok(Obstruction::Unobstructed);
    }
    let Some(d) = &s.b_decomp else {
        return Ok(Obstruction::Unsupported {
            reason: format!(
                "{b} lies in {} but no decomposition b = Σ a_i f_i + f_(p+1) was supplied",
                fmt_list(&s.full_sequence())
            ),
        });
    };
    let mut rest = b - &s.fnext;
    for (ai, fi) in d.iter().zip(&s.f) {
        rest = &rest - &(ai * fi);
    }
    if rest.is_zero() {
        Ok(Obstruction::Obstructed { decomposition: d.clone() })
    } else {
        Ok(Obstruction::Unsupported {
            reason: format!("b - Σ a_i f_i - f_(p+1) = {rest}, not 0"),
        })
    }
}

/// A named verification step and the data that decided it.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Vec<String>,
}

/// Human-readable account of a Milnor verdict.
pub fn milnor_witness(v: &MilnorVerdict) -> Vec<String> {
    let mut out = Vec::new();
    for c in &v.contributions {
        match &c.boundary {
            None => out.push(format!("{}*[{}] at {}: ε-free, contributes 0", c.coefficient, c.generator, c.point)),
            Some(b) => {
                for r in &c.rewrites {
                    out.push(format!(
                        "rewrite ε^{} coefficient {} as {} ({})",
                        r.component,
                        r.from,
                        r.to,
                        if r.certified { "classes equal" } else { "not certified" }
                    ));
                }
                let trivial = c.verdict.as_ref().is_some_and(|t| t.trivial);
                out.push(format!(
                    "{}*[{}] at {}: boundary {} ({})",
                    c.coefficient,
                    c.generator,
                    c.point,
                    b,
                    if trivial { "trivial" } else { "nontrivial" }
                ));
            }
        }
    }
    out.push(format!("sum: {}", v.boundary));
    let ideal = v.boundary.ideal();
    let vars = v.boundary.locus().vars();
    for w in &v.verdict.witnesses {
        out.push(w.describe(vars, &ideal));
    }
    out.push(format!("verdict: {}", if v.is_cycle { "cycle" } else { "not a cycle" }));
    out
}

/// Result of the elimination pipeline.
#[derive(Clone, Debug)]
pub struct EliminationReport {
    pub decomposition: Vec<Polynomial>,
    pub checks: Vec<Check>,
}

impl EliminationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn milnor_check(name: String, e: &CycleElement, s: &Scenario, expected_restriction: &CycleElement) -> Result<Check> {
    let verdict = is_milnor_cycle(e, s)?;
    let restricted = restrict(e, e.order() - 1)?;
    let lifts = restricted == *expected_restriction;
    let mut witness = vec![format!("element: {e}")];
    witness.extend(milnor_witness(&verdict));
    let status = if lifts {
        "matches".to_string()
    } else {
        format!("expected {expected_restriction}")
    };
    witness.push(format!("restriction to order {}: {restricted} ({status})", e.order() - 1));
    Ok(Check {
        name,
        passed: verdict.is_cycle && lifts,
        witness,
    })
}

/// The scenario's family with `a_1` taken from the numerator of `g_1` and
/// missing higher entries set to zero.
fn elimination_scenario(s: &Scenario) -> Result<Scenario> {
    let mut a = vec![s.g.numerator().clone()];
    for i in 1..s.order {
        a.push(s.a.get(i).cloned().unwrap_or_else(|| Polynomial::zero(&s.vars)));
    }
    s.with_a(a)
}

/// Write `μ_Y(Y) = ([C_1] − μ_Z(Z))|_Y` and lift `[C_i] − μ_Z(Z)` order by
/// order, checking each step.
pub fn eliminate_obstruction(s: &Scenario) -> Result<EliminationReport> {
    let decomposition = match detect_obstruction(s)? {
        Obstruction::Obstructed { decomposition } => decomposition,
        other => {
            return Err(Error::NotApplicable(format!(
                "elimination applies to the obstructed case only; scenario is {other}"
            )))
        }
    };
    let s = elimination_scenario(s)?;
    let z = mu_z(&s);
    let c1 = build_c(&s, 1)?;
    let d1 = c1.sub(&z)?;
    let mut checks = Vec::new();

    let y1_element = lift_mu_y(&s, &[])?;
    let y1 = &y1_element.terms()[0].1;
    let c1_y = c1
        .terms()
        .iter()
        .find(|(_, g)| same_point(g.locus(), &s.q1))
        .map(|(_, g)| g.clone())
        .expect("C_1 has a part at Y");
    let m_y = multiplicity(y1)?;
    let m_c = multiplicity(&c1_y)?;
    let ch_y = ch_representative(y1);
    let ch_c = ch_representative(&c1_y);
    let cmp = compare_classes(&ch_y, &ch_c)?;
    let mut witness = vec![
        format!("multiplicities: mu_Y(Y^1) {m_y}, C^1_1 {m_c}"),
        format!("Ch(mu_Y(Y^1)) = {ch_y}"),
        format!("Ch(C^1_1) = {ch_c}"),
    ];
    let diff_ideal = ch_y.ideal();
    witness.extend(cmp.witnesses.iter().map(|w| format!("difference {}", w.describe(&s.vars, &diff_ideal))));
    checks.push(Check {
        name: "1: ([C_1] - mu_Z(Z)) restricted to Y equals mu_Y(Y^1)".into(),
        passed: m_y == m_c && cmp.trivial,
        witness,
    });

    checks.push(milnor_check(
        "2: [C_1] - mu_Z(Z) is a Milnor cycle lifting mu_Y(Y)".into(),
        &d1,
        &s,
        &mu_y_undeformed(&s),
    )?);

    let mut previous = d1;
    for i in 2..=s.order {
        let di = build_c(&s, i)?.sub(&z)?;
        checks.push(milnor_check(
            format!("3: [C_{i}] - mu_Z(Z) is a Milnor cycle lifting order {}", i - 1),
            &di,
            &s,
            &previous,
        )?);
        previous = di;
    }
    Ok(EliminationReport { decomposition, checks })
}

/// Lifting in the unobstructed case: `T^j` with corrections
/// `h_i = a_i` for `i ≥ 2` is a Milnor cycle restricting to `T^(j-1)`.
pub fn lift_unobstructed(s: &Scenario) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut previous = mu_y_undeformed(s);
    let mut higher = Vec::new();
    for j in 1..=s.order {
        if j >= 2 {
            let h = s.a.get(j - 1).cloned().unwrap_or_else(|| Polynomial::zero(&s.vars));
            higher.push(LocalFraction::from_polynomial(h, s.q1.clone()));
        }
        let t = lift_mu_y(s, &higher)?;
        let name = if j == 1 {
            "mu_Y(Y^1) is a Milnor cycle lifting mu_Y(Y)".to_string()
        } else {
            format!("T^{j} is a Milnor cycle lifting T^{}", j - 1)
        };
        checks.push(milnor_check(name, &t, s, &previous)?);
        previous = t;
    }
    Ok(checks)
}

/// Full verification: classify the scenario and run the matching pipeline.
#[derive(Clone, Debug)]
pub struct Verification {
    pub branch: Obstruction,
    pub checks: Vec<Check>,
    /// For the obstructed case, the boundary account of `μ_Y(Y^1)`.
    pub obstruction: Option<Vec<String>>,
}

impl Verification {
    /// All checks pass and the branch is supported.
    pub fn passed(&self) -> bool {
        !matches!(self.branch, Obstruction::Unsupported { .. }) && self.checks.iter().all(|c| c.passed)
    }
}

pub fn verify(s: &Scenario) -> Result<Verification> {
    let branch = detect_obstruction(s)?;
    match &branch {
        Obstruction::Unobstructed => Ok(Verification {
            checks: lift_unobstructed(s)?,
            branch,
            obstruction: None,
        }),
        Obstruction::Obstructed { .. } => {
            let obstruction = Some(milnor_witness(&is_milnor_cycle(&mu_y(s), s)?));
            let report = eliminate_obstruction(s)?;
            Ok(Verification {
                checks: report.checks,
                branch,
                obstruction,
            })
        }
        Obstruction::Unsupported { .. } => Ok(Verification {
            branch,
            checks: Vec::new(),
            obstruction: None,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;

    fn spec(vars: &[&str], f: &[&str], fnext: &str, order: usize, g: (&str, &str), a: &[&str], bd: Option<&[&str]>) -> ScenarioSpec {
        let v = Variables::new(vars.iter().copied());
        let p = |t: &str| parse_polynomial(t, &v).unwrap();
        ScenarioSpec {
            f: f.iter().map(|t| p(t)).collect(),
            fnext: p(fnext),
            order,
            deform_num: p(g.0),
            deform_den: p(g.1),
            a: a.iter().map(|t| p(t)).collect(),
            b_decomp: bd.map(|d| d.iter().map(|t| p(t)).collect()),
            vars: v,
        }
    }

    fn worked(order: usize) -> Scenario {
        Scenario::new(spec(&["x", "y"], &["x"], "y", order, ("1", "x + y"), &["1"], Some(&["1"]))).unwrap()
    }

    #[test]
    fn split_at_first_order() {
        let s = worked(1);
        let c = build_c(&s, 1).unwrap();
        assert_eq!(c.terms().len(), 2);
        let shown: Vec<String> = c.terms().iter().map(|(_, g)| g.to_string()).collect();
        assert_eq!(shown, ["Koszul(x + ε*(1/y)) at (x)", "Koszul(y + ε*(1/x)) at (y)"]);
        assert!(is_milnor_cycle(&c, &s).unwrap().is_cycle);
    }

    #[test]
    fn order_zero_split_is_mu_y_plus_mu_z() {
        let s = worked(1);
        let c0 = build_c(&s, 0).unwrap();
        assert_eq!(c0, mu_y_undeformed(&s).add(&mu_z(&s)).unwrap());
        assert_eq!(restrict(&build_c(&s, 1).unwrap(), 0).unwrap(), c0);
    }

    #[test]
    fn obstructed_mu_y_is_not_a_cycle() {
        let s = worked(1);
        let v = is_milnor_cycle(&mu_y(&s), &s).unwrap();
        assert!(!v.is_cycle);
        assert_eq!(v.contributions[0].rewrites.len(), 1);
        assert!(v.contributions[0].rewrites[0].certified);
    }

    #[test]
    fn unit_denominator_is_unobstructed() {
        let s = Scenario::new(spec(&["x", "y"], &["x"], "y", 2, ("1", "1 + x"), &["1", "y"], None)).unwrap();
        assert_eq!(detect_obstruction(&s).unwrap(), Obstruction::Unobstructed);
        assert!(is_milnor_cycle(&mu_y(&s), &s).unwrap().is_cycle);
        let v = verify(&s).unwrap();
        assert!(v.passed(), "{:?}", v.checks);
        assert!(matches!(eliminate_obstruction(&s), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn classification() {
        let s = worked(1);
        assert!(matches!(detect_obstruction(&s).unwrap(), Obstruction::Obstructed { .. }));
        let u = Scenario::new(spec(&["x", "y"], &["x"], "y", 1, ("1", "x^2 + y"), &["1"], None)).unwrap();
        assert!(matches!(detect_obstruction(&u).unwrap(), Obstruction::Unsupported { .. }));
        assert!(!verify(&u).unwrap().passed());
    }

    #[test]
    fn worked_case_eliminates() {
        let s = worked(3);
        let report = eliminate_obstruction(&s).unwrap();
        assert_eq!(report.checks.len(), 4);
        for c in &report.checks {
            assert!(c.passed, "{}: {:#?}", c.name, c.witness);
        }
    }

    #[test]
    fn two_codimension_case_eliminates() {
        let s = Scenario::new(spec(&["x", "y", "z"], &["x", "y"], "z", 2, ("1", "x + z"), &["1"], Some(&["1", "0"]))).unwrap();
        let report = eliminate_obstruction(&s).unwrap();
        assert!(report.passed(), "{:#?}", report.checks);
    }

    #[test]
    fn second_order_split_with_two_entries() {
        let s = Scenario::new(spec(&["x", "y", "z"], &["x", "y"], "z", 2, ("0", "1"), &["1", "x"], None)).unwrap();
        let c = build_c(&s, 2).unwrap();
        let c1 = &c.terms()[0].1;
        let v = s.vars().clone();
        let q1 = s.q1().clone();
        let fr = |n: &str, d: &str| {
            LocalFraction::new(parse_polynomial(n, &v).unwrap(), parse_polynomial(d, &v).unwrap(), q1.clone()).unwrap()
        };
        assert_eq!(c1.deformation(), &[fr("1", "z"), fr("x", "z")]);
        assert!(is_milnor_cycle(&c, &s).unwrap().is_cycle);
    }

    #[test]
    fn invalid_scenarios() {
        let bad = Scenario::new(spec(&["x", "y", "z"], &["x", "x*y"], "z", 1, ("0", "1"), &[], None));
        assert!(matches!(bad, Err(Error::Algebra(crate::algebra::AlgebraError::NotRegular(_)))));
        let dependent = Scenario::new(spec(&["x", "y"], &["x"], "x^2", 1, ("0", "1"), &[], None));
        assert!(dependent.is_err());
        let constant = Scenario::new(spec(&["x", "y"], &["x"], "1", 1, ("0", "1"), &[], None));
        assert!(constant.is_err());
    }

    #[test]
    fn unrecognized_locus_is_rejected() {
        let s = worked(1);
        let v = s.vars().clone();
        let xy = vec![parse_polynomial("x + y", &v).unwrap()];
        let elsewhere = DeformedKoszul::undeformed(xy.clone(), PrimePoint::sequence(&xy).unwrap()).unwrap();
        let e = CycleElement::single(elsewhere);
        assert!(matches!(is_milnor_cycle(&e, &s), Err(Error::UnrecognizedLocus(_))));
    }

    #[test]
    fn merging_and_cancellation() {
        let s = worked(1);
        let z = mu_z(&s);
        assert!(z.sub(&z).unwrap().is_zero());
        let twice = z.add(&z).unwrap();
        assert_eq!(twice.terms()[0].0, Rational::from_integer(2.into()));
        // a deformed generator cannot be promoted
        assert!(mu_y(&s).add(&build_c(&s, 1).unwrap().scale(&Rational::one())).is_ok());
        let c2 = build_c(&s.with_a(vec![Polynomial::one(s.vars()); 2]).unwrap(), 2).unwrap();
        assert!(mu_y(&s).add(&c2).is_err());
    }
}
