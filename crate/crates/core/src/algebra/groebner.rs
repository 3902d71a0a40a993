//! Buchberger's algorithm over the rationals.
//!
//! Polynomials are handled here as term vectors sorted ascending under a
//! [`TermOrder`], so the leading term is always the last element. Public
//! callers only ever see graded reverse lexicographic bases; the block
//! elimination order exists for ideal intersections.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num::{One, Zero};

use super::monomial::{grevlex, Monomial};
use super::polynomial::{Polynomial, Variables};
use super::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum TermOrder {
    Grevlex,
    /// Block order: the first `k` variables are compared first (grevlex
    /// within the block), ties broken by grevlex on the remaining ones.
    Eliminate(usize),
}

impl TermOrder {
    pub(crate) fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Grevlex => grevlex(a.exponents(), b.exponents()),
            TermOrder::Eliminate(k) => {
                let (a0, a1) = a.exponents().split_at(k);
                let (b0, b1) = b.exponents().split_at(k);
                grevlex(a0, b0).then_with(|| grevlex(a1, b1))
            }
        }
    }
}

type Term = (Monomial, Rational);

/// Polynomial as an ascending term vector.
#[derive(Clone, Debug)]
struct Sparse {
    terms: Vec<Term>,
}

impl Sparse {
    fn from_poly(p: &Polynomial, order: TermOrder) -> Sparse {
        let mut terms: Vec<Term> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        if order != TermOrder::Grevlex {
            terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        }
        Sparse { terms }
    }

    fn to_poly(&self, vars: &Variables) -> Polynomial {
        Polynomial::from_sorted_map(vars, self.terms.iter().cloned().collect::<BTreeMap<_, _>>())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &Term {
        self.terms.last().expect("nonzero polynomial")
    }

    fn make_monic(&mut self) {
        if let Some((_, lc)) = self.terms.last() {
            if !lc.is_one() {
                let inv = lc.recip();
                for (_, c) in &mut self.terms {
                    *c *= &inv;
                }
            }
        }
    }

    /// `self - coef * mono * other`, merging two ascending vectors.
    fn sub_scaled(&self, coef: &Rational, mono: &Monomial, other: &Sparse, order: TermOrder) -> Sparse {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let shifted: Vec<Term> = other.terms.iter().map(|(m, c)| (m.mul(mono), c * coef)).collect();
        let mut j = 0;
        while i < self.terms.len() && j < shifted.len() {
            match order.cmp(&self.terms[i].0, &shifted[j].0) {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((shifted[j].0.clone(), -&shifted[j].1));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 - &shifted[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(shifted[j..].iter().map(|(m, c)| (m.clone(), -c)));
        Sparse { terms: out }
    }
}

/// Full reduction of `p` modulo `basis` (every term, not just the leading one).
fn reduce(p: &Sparse, basis: &[Sparse], order: TermOrder) -> Sparse {
    let mut rest = p.clone();
    let mut remainder: Vec<Term> = Vec::new();
    while let Some((lm, lc)) = rest.terms.last().cloned() {
        let divisor = basis.iter().find(|g| g.lead().0.divides(&lm));
        match divisor {
            Some(g) => {
                let (glm, glc) = g.lead();
                let q = glm.quotient_of(&lm).expect("divides");
                rest = rest.sub_scaled(&(&lc / glc), &q, g, order);
            }
            None => {
                remainder.push(rest.terms.pop().expect("nonempty"));
            }
        }
    }
    remainder.reverse();
    Sparse { terms: remainder }
}

fn s_polynomial(a: &Sparse, b: &Sparse, order: TermOrder) -> Sparse {
    let (alm, alc) = a.lead();
    let (blm, blc) = b.lead();
    let lcm = alm.lcm(blm);
    let qa = alm.quotient_of(&lcm).expect("lcm");
    let qb = blm.quotient_of(&lcm).expect("lcm");
    // (lcm/LT(a)) a - (lcm/LT(b)) b
    let scaled_a = Sparse {
        terms: a.terms.iter().map(|(m, c)| (m.mul(&qa), c / alc)).collect(),
    };
    scaled_a.sub_scaled(&blc.recip(), &qb, b, order)
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// The result is monic, inter-reduced and sorted by descending leading
/// monomial, so it is a canonical form of the ideal for the given order.
fn buchberger(gens: Vec<Sparse>, order: TermOrder) -> Vec<Sparse> {
    let mut basis: Vec<Sparse> = Vec::new();
    for mut g in gens.into_iter().filter(|g| !g.is_zero()) {
        g.make_monic();
        if g.lead().0.is_one() {
            return vec![g_one(&g)];
        }
        basis.push(g);
    }

    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();

    while !pending.is_empty() {
        // normal selection strategy: smallest lcm first
        let &(i, j) = pending
            .iter()
            .min_by(|&&(a, b), &&(c, d)| {
                let l1 = basis[a].lead().0.lcm(&basis[b].lead().0);
                let l2 = basis[c].lead().0.lcm(&basis[d].lead().0);
                order.cmp(&l1, &l2).then_with(|| (a, b).cmp(&(c, d)))
            })
            .expect("nonempty");
        pending.remove(&(i, j));
        done.insert((i, j));

        let li = &basis[i].lead().0;
        let lj = &basis[j].lead().0;
        if li.is_coprime(lj) {
            continue;
        }
        let lcm = li.lcm(lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lead().0.divides(&lcm)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        let s = s_polynomial(&basis[i], &basis[j], order);
        let mut r = reduce(&s, &basis, order);
        if r.is_zero() {
            continue;
        }
        r.make_monic();
        if r.lead().0.is_one() {
            return vec![g_one(&r)];
        }
        let n = basis.len();
        basis.push(r);
        for k in 0..n {
            pending.insert((k, n));
        }
    }

    minimal_reduced(basis, order)
}

fn g_one(template: &Sparse) -> Sparse {
    let n = template.lead().0.nvars();
    Sparse {
        terms: vec![(Monomial::one(n), Rational::one())],
    }
}

fn minimal_reduced(basis: Vec<Sparse>, order: TermOrder) -> Vec<Sparse> {
    // drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<Sparse> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let lm = &g.lead().0;
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            let hl = &h.lead().0;
            k != idx && hl.divides(lm) && (hl != lm || k < idx)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Sparse> = keep
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, g)| g.clone())
            .collect();
        let (lm, lc) = keep[i].lead().clone();
        let tail = Sparse {
            terms: keep[i].terms[..keep[i].terms.len() - 1].to_vec(),
        };
        let mut reduced = reduce(&tail, &others, order);
        reduced.terms.push((lm, lc));
        reduced.make_monic();
        out.push(reduced);
    }
    out.sort_by(|a, b| order.cmp(&b.lead().0, &a.lead().0));
    out
}

/// Reduced grevlex Gröbner basis of `gens` (all over the same variables).
pub(crate) fn reduced_basis(gens: &[Polynomial], vars: &Variables) -> Vec<Polynomial> {
    let sparse = gens.iter().map(|g| Sparse::from_poly(g, TermOrder::Grevlex)).collect();
    buchberger(sparse, TermOrder::Grevlex)
        .iter()
        .map(|g| g.to_poly(vars))
        .collect()
}

/// Normal form of `p` modulo a grevlex Gröbner basis.
pub(crate) fn normal_form(p: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let sparse: Vec<Sparse> = basis.iter().map(|g| Sparse::from_poly(g, TermOrder::Grevlex)).collect();
    reduce(&Sparse::from_poly(p, TermOrder::Grevlex), &sparse, TermOrder::Grevlex).to_poly(p.vars())
}

/// Generators of `I ∩ J` by eliminating an auxiliary variable `t` from
/// `t·I + (1 - t)·J`.
pub(crate) fn intersection(i_gens: &[Polynomial], j_gens: &[Polynomial], vars: &Variables) -> Vec<Polynomial> {
    let mut names = vec!["__t".to_string()];
    names.extend(vars.names().iter().cloned());
    let ext = Variables::new(names);
    let t = Polynomial::variable(&ext, 0);
    let one_minus_t = &Polynomial::one(&ext) - &t;
    let order = TermOrder::Eliminate(1);
    let mut gens = Vec::new();
    for g in i_gens {
        gens.push(Sparse::from_poly(&(&t * &g.embed(&ext, 1)), order));
    }
    for g in j_gens {
        gens.push(Sparse::from_poly(&(&one_minus_t * &g.embed(&ext, 1)), order));
    }
    buchberger(gens, order)
        .into_iter()
        .filter(|g| g.terms.iter().all(|(m, _)| m.exponents()[0] == 0))
        .map(|g| {
            Polynomial::from_terms(vars, g.terms.iter().map(|(m, c)| (m.drop_prefix(1), c.clone())))
        })
        .collect()
}
