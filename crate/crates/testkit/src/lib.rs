//! Independent oracles and seeded scenario generators for the test suites.
//!
//! The oracles here deliberately avoid the Gröbner machinery of the main
//! crate: membership is decided by row-reducing the span of `m · f_i` over
//! all monomials `m` up to a degree bound, and monomial-ideal dimension by
//! testing which pure-power monomials are standard.

use std::collections::BTreeMap;

use cyclift::algebra::{parse_polynomial, Polynomial, Variables};
use cyclift::cycles::ScenarioSpec;
use num::{BigRational, Zero};
use rand::Rng;

type Vector = BTreeMap<Vec<u32>, BigRational>;

fn to_vector(p: &Polynomial) -> Vector {
    p.terms().map(|(m, c)| (m.exponents().to_vec(), c.clone())).collect()
}

fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials_of_degree(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn shift(v: &Vector, m: &[u32]) -> Vector {
    v.iter()
        .map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a + b).collect(), c.clone()))
        .collect()
}

/// Row-echelon basis keyed by pivot (the largest exponent vector of a row in
/// plain lexicographic order on exponent vectors).
#[derive(Default)]
struct Echelon {
    rows: BTreeMap<Vec<u32>, Vector>,
}

impl Echelon {
    /// Entries that are no row's pivot, after eliminating all others.
    fn reduce(&self, mut v: Vector) -> Vector {
        let mut out = Vector::new();
        while let Some((k, c)) = v.pop_last() {
            let Some(row) = self.rows.get(&k) else {
                out.insert(k, c);
                continue;
            };
            for (k2, a) in row.range(..k.clone()) {
                let entry = v.entry(k2.clone()).or_insert_with(BigRational::zero);
                *entry -= &c * a;
                if entry.is_zero() {
                    v.remove(k2);
                }
            }
        }
        out
    }

    fn insert(&mut self, v: Vector) {
        let v = self.reduce(v);
        if let Some((pivot, c)) = v.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) {
            let inv = c.recip();
            let row: Vector = v.into_iter().map(|(k, a)| (k, a * &inv)).collect();
            self.rows.insert(pivot, row);
        }
    }
}

/// Whether `u = Σ q_i f_i` has a solution with every `deg q_i ≤ max_degree`,
/// found by linear algebra over ℚ. Returns the smallest degree bound that
/// works, or `None` if none up to `max_degree` does.
pub fn linear_membership(u: &Polynomial, gens: &[Polynomial], max_degree: u32) -> Option<u32> {
    let target = to_vector(u);
    if target.is_empty() {
        return Some(0);
    }
    let n = u.nvars();
    let gens: Vec<Vector> = gens.iter().map(to_vector).filter(|g| !g.is_empty()).collect();
    let mut echelon = Echelon::default();
    for d in 0..=max_degree {
        for m in monomials_of_degree(n, d) {
            for g in &gens {
                echelon.insert(shift(g, &m));
            }
        }
        if echelon.reduce(target.clone()).is_empty() {
            return Some(d);
        }
    }
    None
}

/// Dimension of the monomial ideal generated by `gens` (exponent vectors) in
/// `n` variables: the largest set of variables `S` such that a high pure
/// power of the variables in `S` is a standard monomial.
pub fn monomial_ideal_dimension(gens: &[Vec<u32>], n: usize) -> Option<usize> {
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return None;
    }
    let big = 1 + gens.iter().flatten().copied().max().unwrap_or(0);
    (0..1u32 << n)
        .filter(|mask| {
            let probe: Vec<u32> = (0..n).map(|i| if mask >> i & 1 == 1 { big } else { 0 }).collect();
            !gens.iter().any(|g| g.iter().zip(&probe).all(|(a, b)| a <= b))
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
}

const NAMES: [&str; 5] = ["x", "y", "z", "w", "v"];

pub fn variables(n: usize) -> Variables {
    Variables::new(NAMES[..n].iter().copied())
}

fn var_name(i: usize) -> &'static str {
    NAMES[i]
}

fn small_coefficient(rng: &mut impl Rng) -> i64 {
    let c = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        c
    } else {
        -c
    }
}

/// Polynomial text of a random monomial of the given degree in `pool`.
fn random_monomial(rng: &mut impl Rng, pool: &[usize], degree: u32) -> String {
    let mut parts = Vec::new();
    for _ in 0..degree {
        parts.push(var_name(pool[rng.gen_range(0..pool.len())]).to_string());
    }
    parts.join("*")
}

/// Random polynomial text of total degree at most `max_degree`, with or
/// without a constant term.
pub fn random_polynomial_text(rng: &mut impl Rng, n: usize, max_degree: u32, constant: Constant) -> String {
    let pool: Vec<usize> = (0..n).collect();
    let mut terms = Vec::new();
    match constant {
        Constant::Zero => {}
        Constant::NonZero => terms.push(small_coefficient(rng).to_string()),
        Constant::Any => {
            if rng.gen_bool(0.5) {
                terms.push(small_coefficient(rng).to_string());
            }
        }
    }
    for _ in 0..rng.gen_range(0..=3) {
        let d = rng.gen_range(1..=max_degree.max(1));
        terms.push(format!("{}*{}", small_coefficient(rng), random_monomial(rng, &pool, d)));
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constant {
    Zero,
    NonZero,
    Any,
}

/// Triangular sequences: `f_i = x_i + (quadratic terms in x_(i+1), …)`,
/// `f_(p+1) = x_(p+1) + c · x_1^2`. Both `(f_1, …, f_p)` and
/// `(f_(p+1), f_2, …, f_p)` cut out smooth curves through the origin.
#[derive(Clone, Debug)]
pub struct Geometry {
    pub vars: Variables,
    pub f: Vec<String>,
    pub fnext: String,
}

pub fn random_geometry(rng: &mut impl Rng, p: usize) -> Geometry {
    let n = p + 1;
    let mut f = Vec::with_capacity(p);
    for i in 0..p {
        let pool: Vec<usize> = (i + 1..n).collect();
        let mut text = var_name(i).to_string();
        for _ in 0..rng.gen_range(0..=2) {
            text.push_str(&format!(" + {}*{}", small_coefficient(rng), random_monomial(rng, &pool, 2)));
        }
        f.push(text);
    }
    let mut fnext = var_name(p).to_string();
    if rng.gen_bool(0.5) {
        fnext.push_str(&format!(" + {}*{}^2", small_coefficient(rng), var_name(0)));
    }
    Geometry {
        vars: variables(n),
        f,
        fnext,
    }
}

/// Scenario data in text form, convertible to a spec or a scenario file.
#[derive(Clone, Debug)]
pub struct ScenarioText {
    pub vars: Variables,
    pub f: Vec<String>,
    pub fnext: String,
    pub order: usize,
    pub deform_num: String,
    pub deform_den: String,
    pub a: Vec<String>,
    pub b_decomp: Option<Vec<String>>,
}

impl ScenarioText {
    pub fn spec(&self) -> ScenarioSpec {
        let p = |t: &str| parse_polynomial(t, &self.vars).expect("generated text parses");
        ScenarioSpec {
            vars: self.vars.clone(),
            f: self.f.iter().map(|t| p(t)).collect(),
            fnext: p(&self.fnext),
            order: self.order,
            deform_num: p(&self.deform_num),
            deform_den: p(&self.deform_den),
            a: self.a.iter().map(|t| p(t)).collect(),
            b_decomp: self.b_decomp.as_ref().map(|d| d.iter().map(|t| p(t)).collect()),
        }
    }

    /// The scenario-file rendering read by the command-line tool.
    pub fn file_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("vars: {}\n", self.vars.names().join(" ")));
        out.push_str(&format!("p: {}\n", self.f.len()));
        out.push_str(&format!("f: {}\n", self.f.join(" | ")));
        out.push_str(&format!("fnext: {}\n", self.fnext));
        out.push_str(&format!("order: {}\n", self.order));
        out.push_str(&format!("deform_g: ({})/({})\n", self.deform_num, self.deform_den));
        out.push_str(&format!("a: {}\n", self.a.join(" | ")));
        if let Some(d) = &self.b_decomp {
            out.push_str(&format!("b_decomp: {}\n", d.join(" | ")));
        }
        out
    }
}

/// Scenario for the product family: random `a_i` of degree ≤ 2 with a unit
/// `a_1`, and no first-order deformation.
pub fn random_split_scenario(rng: &mut impl Rng, p: usize, order: usize) -> ScenarioText {
    let geo = random_geometry(rng, p);
    let n = p + 1;
    let mut a = vec![random_polynomial_text(rng, n, 2, Constant::NonZero)];
    for _ in 1..order {
        a.push(random_polynomial_text(rng, n, 2, Constant::Any));
    }
    ScenarioText {
        vars: geo.vars,
        f: geo.f,
        fnext: geo.fnext,
        order,
        deform_num: "0".into(),
        deform_den: "1".into(),
        a,
        b_decomp: None,
    }
}

/// Scenario with `g_1 = a / b`, `b` a unit at the origin, and random higher
/// corrections in `a_2, …`.
pub fn random_unobstructed_scenario(rng: &mut impl Rng, p: usize, order: usize) -> ScenarioText {
    let geo = random_geometry(rng, p);
    let n = p + 1;
    let num = random_polynomial_text(rng, n, 2, Constant::Any);
    let den = format!("1 + {}", random_polynomial_text(rng, n, 2, Constant::Zero));
    let mut a = vec![num.clone()];
    for _ in 1..order {
        a.push(random_polynomial_text(rng, n, 2, Constant::Any));
    }
    ScenarioText {
        vars: geo.vars,
        f: geo.f,
        fnext: geo.fnext,
        order,
        deform_num: num,
        deform_den: den,
        a,
        b_decomp: None,
    }
}

/// Obstructed scenario: `b = Σ a_i f_i + f_(p+1)` with random `a_i` and a
/// numerator that is a unit at the origin.
pub fn random_obstructed_scenario(rng: &mut impl Rng, p: usize, order: usize) -> ScenarioText {
    let geo = random_geometry(rng, p);
    let n = p + 1;
    let decomposition: Vec<String> = (0..p)
        .map(|_| random_polynomial_text(rng, n, 1, Constant::Any))
        .collect();
    let mut b = geo.fnext.clone();
    for (ai, fi) in decomposition.iter().zip(&geo.f) {
        b.push_str(&format!(" + ({ai})*({fi})"));
    }
    let num = random_polynomial_text(rng, n, 2, Constant::NonZero);
    let mut a = vec![num.clone()];
    for _ in 1..order {
        a.push(random_polynomial_text(rng, n, 2, Constant::Any));
    }
    ScenarioText {
        vars: geo.vars,
        f: geo.f,
        fnext: geo.fnext,
        order,
        deform_num: num,
        deform_den: b,
        a,
        b_decomp: Some(decomposition),
    }
}

/// The worked case: `f_1 = x`, `f_2 = y`, `g_1 = 1/(x + y)`.
pub fn worked_case(order: usize) -> ScenarioText {
    ScenarioText {
        vars: variables(2),
        f: vec!["x".into()],
        fnext: "y".into(),
        order,
        deform_num: "1".into(),
        deform_den: "x + y".into(),
        a: vec!["1".into()],
        b_decomp: Some(vec!["1".into()]),
    }
}

/// Random membership instance in `n ≤ 3` variables. Half of the instances
/// are built as explicit combinations `Σ q_i f_i`.
pub fn random_membership_instance(rng: &mut impl Rng, n: usize) -> (Polynomial, Vec<Polynomial>) {
    let vars = variables(n);
    let p = |t: &str| parse_polynomial(t, &vars).expect("generated text parses");
    let count = rng.gen_range(1..=n.min(3));
    let gens: Vec<Polynomial> = (0..count)
        .map(|_| loop {
            let constant = if rng.gen_bool(0.2) { Constant::Any } else { Constant::Zero };
            let g = p(&random_polynomial_text(rng, n, 2, constant));
            if !g.is_zero() {
                break g;
            }
        })
        .collect();
    let u = if rng.gen_bool(0.5) {
        gens.iter().fold(Polynomial::zero(&vars), |acc, g| {
            &acc + &(&p(&random_polynomial_text(rng, n, 2, Constant::Any)) * g)
        })
    } else {
        p(&random_polynomial_text(rng, n, 3, Constant::Any))
    };
    (u, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_on_textbook_instance() {
        let v = variables(2);
        let p = |t: &str| parse_polynomial(t, &v).unwrap();
        let gens = [p("x^2 - y"), p("x*y - 1")];
        assert!(linear_membership(&p("y^3 - 1"), &gens, 6).is_some());
        assert!(linear_membership(&p("x"), &[p("y")], 6).is_none());
    }

    #[test]
    fn monomial_dimension() {
        // (x z, y) in three variables
        assert_eq!(monomial_ideal_dimension(&[vec![1, 0, 1], vec![0, 1, 0]], 3), Some(1));
        assert_eq!(monomial_ideal_dimension(&[vec![1, 0], vec![0, 1]], 2), Some(0));
        assert_eq!(monomial_ideal_dimension(&[vec![0, 0]], 2), None);
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomials_of_degree(3, 0), vec![vec![0, 0, 0]]);
    }
}
