use std::fmt;
use std::sync::Arc;

use super::fraction::LocalFraction;
use super::ideal::{same_point, PrimePoint};
use super::polynomial::Polynomial;
use super::AlgebraError;

/// Element of `R_P[ε]/ε^(j+1)`: one localized coefficient per power of ε.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsElement {
    coefficients: Vec<LocalFraction>,
}

impl EpsElement {
    /// Coefficients are the slots `ε^0, ..., ε^j`; all must share one locus.
    pub fn new(coefficients: Vec<LocalFraction>) -> Result<Self, AlgebraError> {
        let first = coefficients
            .first()
            .ok_or_else(|| AlgebraError::Degenerate("ε-element needs at least the ε^0 slot".into()))?;
        if coefficients.iter().any(|c| !same_point(c.locus(), first.locus())) {
            return Err(AlgebraError::InvalidFraction(
                "ε-coefficients localized at different points".into(),
            ));
        }
        Ok(EpsElement { coefficients })
    }

    /// `value` in the ε^0 slot, zero elsewhere.
    pub fn constant(value: LocalFraction, order: usize) -> Self {
        let zero = LocalFraction::zero(value.locus().clone());
        let mut coefficients = vec![value];
        coefficients.extend(std::iter::repeat_n(zero, order));
        EpsElement { coefficients }
    }

    pub fn from_polynomial(p: Polynomial, locus: Arc<PrimePoint>, order: usize) -> Self {
        Self::constant(LocalFraction::from_polynomial(p, locus), order)
    }

    pub fn zero(locus: Arc<PrimePoint>, order: usize) -> Self {
        Self::constant(LocalFraction::zero(locus), order)
    }

    pub fn one(locus: Arc<PrimePoint>, order: usize) -> Self {
        Self::constant(LocalFraction::one(locus), order)
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn locus(&self) -> &Arc<PrimePoint> {
        self.coefficients[0].locus()
    }

    pub fn coefficients(&self) -> &[LocalFraction] {
        &self.coefficients
    }

    pub fn slot(&self, i: usize) -> &LocalFraction {
        &self.coefficients[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(LocalFraction::is_zero)
    }

    /// Image under `ε^(order+1) = 0` for a smaller order.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot truncate to a higher order");
        EpsElement {
            coefficients: self.coefficients[..=order].to_vec(),
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.order(), other.order(), "ε-orders differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        EpsElement {
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        EpsElement {
            coefficients: self.coefficients.iter().map(LocalFraction::neg).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Truncated product: terms of ε-degree above the order are dropped.
    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let j = self.order();
        let coefficients = (0..=j)
            .map(|k| {
                (0..=k)
                    .filter(|&i| !self.coefficients[i].is_zero() && !other.coefficients[k - i].is_zero())
                    .map(|i| self.coefficients[i].mul(&other.coefficients[k - i]))
                    .fold(LocalFraction::zero(self.locus().clone()), |acc, t| acc.add(&t))
            })
            .collect();
        EpsElement { coefficients }
    }
}

/// Inverse in `R_P[ε]/ε^(j+1)` by the finite geometric-series recursion
/// `v_0 = 1/u_0`, `v_k = -v_0 · Σ_{i=1..k} u_i v_(k-i)`.
pub fn eps_invert(u: &EpsElement) -> Result<EpsElement, AlgebraError> {
    let v0 = u.slot(0).inverse()?;
    let mut v: Vec<LocalFraction> = vec![v0.clone()];
    for k in 1..=u.order() {
        let mut acc = LocalFraction::zero(u.locus().clone());
        for i in 1..=k {
            if u.slot(i).is_zero() || v[k - i].is_zero() {
                continue;
            }
            acc = acc.add(&u.slot(i).mul(&v[k - i]));
        }
        v.push(v0.mul(&acc).neg());
    }
    Ok(EpsElement { coefficients: v })
}

impl fmt::Display for EpsElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            wrote = true;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "ε*({c})")?,
                _ => write!(f, "ε^{i}*({c})")?,
            }
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, Variables};

    fn setup() -> (Variables, Arc<PrimePoint>) {
        let v = Variables::new(["x", "y"]);
        let px = PrimePoint::sequence(&[parse_polynomial("x", &v).unwrap()]).unwrap();
        (v, px)
    }

    fn frac(n: &str, d: &str, v: &Variables, at: &Arc<PrimePoint>) -> LocalFraction {
        LocalFraction::new(
            parse_polynomial(n, v).unwrap(),
            parse_polynomial(d, v).unwrap(),
            at.clone(),
        )
        .unwrap()
    }

    #[test]
    fn invert_one_plus_eps_x() {
        let (v, px) = setup();
        let u = EpsElement::new(vec![frac("1", "1", &v, &px), frac("x", "1", &v, &px)]).unwrap();
        let inv = eps_invert(&u).unwrap();
        assert_eq!(inv.slot(0), &frac("1", "1", &v, &px));
        assert_eq!(inv.slot(1), &frac("-x", "1", &v, &px));
    }

    #[test]
    fn invert_epsilon_free_unit() {
        let (v, px) = setup();
        let u = EpsElement::from_polynomial(parse_polynomial("y", &v).unwrap(), px.clone(), 2);
        let inv = eps_invert(&u).unwrap();
        assert_eq!(inv.slot(0), &frac("1", "y", &v, &px));
        assert!(inv.slot(1).is_zero() && inv.slot(2).is_zero());
    }

    #[test]
    fn invert_y_plus_eps() {
        let (v, px) = setup();
        let u = EpsElement::new(vec![
            frac("y", "1", &v, &px),
            frac("1", "1", &v, &px),
            frac("0", "1", &v, &px),
        ])
        .unwrap();
        let inv = eps_invert(&u).unwrap();
        assert_eq!(inv.slot(0), &frac("1", "y", &v, &px));
        assert_eq!(inv.slot(1), &frac("-1", "y^2", &v, &px));
        assert_eq!(inv.slot(2), &frac("1", "y^3", &v, &px));
        assert_eq!(u.mul(&inv), EpsElement::one(px, 2));
    }

    #[test]
    fn non_unit_constant_term_is_rejected() {
        let (v, px) = setup();
        let u = EpsElement::new(vec![frac("x", "1", &v, &px), frac("1", "1", &v, &px)]).unwrap();
        assert!(matches!(eps_invert(&u), Err(AlgebraError::NonUnit(_))));
    }
}
