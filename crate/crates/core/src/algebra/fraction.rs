use std::fmt;
use std::sync::Arc;

use num::One;

use super::ideal::{same_point, PrimePoint};
use super::polynomial::Polynomial;
use super::{AlgebraError, Rational};

/// Element `numerator / denominator` of the localization of the polynomial
/// ring at `locus`. The denominator never lies in the prime.
#[derive(Clone, Debug)]
pub struct LocalFraction {
    num: Polynomial,
    den: Polynomial,
    locus: Arc<PrimePoint>,
}

impl LocalFraction {
    pub fn new(num: Polynomial, den: Polynomial, locus: Arc<PrimePoint>) -> Result<Self, AlgebraError> {
        if num.vars() != locus.vars() || den.vars() != locus.vars() {
            return Err(AlgebraError::VariableMismatch);
        }
        if locus.contains(&den) {
            return Err(AlgebraError::InvalidFraction(format!(
                "denominator {den} lies in the prime {locus}"
            )));
        }
        Ok(LocalFraction { num, den, locus })
    }

    pub fn from_polynomial(p: Polynomial, locus: Arc<PrimePoint>) -> Self {
        let den = Polynomial::one(p.vars());
        LocalFraction { num: p, den, locus }
    }

    pub fn zero(locus: Arc<PrimePoint>) -> Self {
        let vars = locus.vars().clone();
        Self::from_polynomial(Polynomial::zero(&vars), locus)
    }

    pub fn one(locus: Arc<PrimePoint>) -> Self {
        let vars = locus.vars().clone();
        Self::from_polynomial(Polynomial::one(&vars), locus)
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn locus(&self) -> &Arc<PrimePoint> {
        &self.locus
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Whether the denominator is a constant, so the value is a polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Units of the local ring are the fractions whose numerator also lies
    /// outside the prime.
    pub fn is_unit(&self) -> bool {
        self.locus.is_unit(&self.num)
    }

    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        if !self.is_unit() {
            return Err(AlgebraError::NonUnit(self.to_string()));
        }
        Ok(LocalFraction {
            num: self.den.clone(),
            den: self.num.clone(),
            locus: self.locus.clone(),
        }
        .tidy())
    }

    /// Same value viewed at another point where the denominator is still a unit.
    pub fn relocate(&self, locus: Arc<PrimePoint>) -> Result<Self, AlgebraError> {
        Self::new(self.num.clone(), self.den.clone(), locus)
    }

    fn check_locus(&self, other: &Self) {
        assert!(
            same_point(&self.locus, &other.locus),
            "fractions localized at different points"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_locus(other);
        let (num, den) = if self.den == other.den {
            (&self.num + &other.num, self.den.clone())
        } else if other.den.is_constant() && other.den.constant_term().is_one() {
            (&self.num + &(&other.num * &self.den), self.den.clone())
        } else if self.den.is_constant() && self.den.constant_term().is_one() {
            (&(&self.num * &other.den) + &other.num, other.den.clone())
        } else {
            (
                &(&self.num * &other.den) + &(&other.num * &self.den),
                &self.den * &other.den,
            )
        };
        LocalFraction {
            num,
            den,
            locus: self.locus.clone(),
        }
        .tidy()
    }

    pub fn neg(&self) -> Self {
        LocalFraction {
            num: -&self.num,
            den: self.den.clone(),
            locus: self.locus.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_locus(other);
        LocalFraction {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
            locus: self.locus.clone(),
        }
        .tidy()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LocalFraction {
            num: self.num.scale(c),
            den: self.den.clone(),
            locus: self.locus.clone(),
        }
        .tidy()
    }

    pub fn mul_polynomial(&self, p: &Polynomial) -> Self {
        LocalFraction {
            num: &self.num * p,
            den: self.den.clone(),
            locus: self.locus.clone(),
        }
        .tidy()
    }

    /// Cheap cancellations: constant denominators are folded into the
    /// numerator and exact divisibility in either direction is removed.
    fn tidy(self) -> Self {
        let vars = self.num.vars().clone();
        if self.num.is_zero() {
            return LocalFraction {
                num: self.num,
                den: Polynomial::one(&vars),
                locus: self.locus,
            };
        }
        if self.den.is_constant() {
            let c = self.den.constant_term();
            if c.is_one() {
                return self;
            }
            return LocalFraction {
                num: self.num.scale(&c.recip()),
                den: Polynomial::one(&vars),
                locus: self.locus,
            };
        }
        if let Some(q) = self.num.div_exact(&self.den) {
            return LocalFraction {
                num: q,
                den: Polynomial::one(&vars),
                locus: self.locus,
            };
        }
        if let Some(q) = self.den.div_exact(&self.num) {
            // den/num stays outside the prime because den does
            return LocalFraction {
                num: Polynomial::one(&vars),
                den: q,
                locus: self.locus,
            };
        }
        self
    }
}

/// Equality as elements of the localization: same point and
/// `a·d = b·c` (the polynomial ring is a domain).
impl PartialEq for LocalFraction {
    fn eq(&self, other: &Self) -> bool {
        same_point(&self.locus, &other.locus)
            && (&self.num * &other.den - &other.num * &self.den).is_zero()
    }
}

impl fmt::Display for LocalFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Polynomial| {
            if p.num_terms() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        if self.den.is_constant() && self.den.constant_term().is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}
