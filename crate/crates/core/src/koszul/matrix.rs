use std::fmt;

use num::{One, Zero};

use crate::algebra::{EpsElement, Polynomial, Rational};

/// Minimal ring interface needed for matrix products.
pub trait Entry: Clone + PartialEq + fmt::Display {
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Entry for Rational {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Entry for Polynomial {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
}

impl Entry for EpsElement {
    fn add(&self, other: &Self) -> Self {
        EpsElement::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        EpsElement::mul(self, other)
    }
    fn neg(&self) -> Self {
        EpsElement::neg(self)
    }
    fn is_zero(&self) -> bool {
        EpsElement::is_zero(self)
    }
}

/// Dense row-major matrix. Carries its own zero so that products work for
/// entry types whose zero depends on context (a locus, an ε-order).
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
    zero: T,
}

impl<T: Entry> Matrix<T> {
    pub fn filled(rows: usize, cols: usize, zero: T) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![zero.clone(); rows * cols],
            zero,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        self.data[r * self.cols + c] = value;
    }

    pub fn zero_entry(&self) -> &T {
        &self.zero
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Entry::is_zero)
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let mut out = Matrix::filled(self.rows, rhs.cols, self.zero.clone());
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = self.zero.clone();
                for k in 0..self.cols {
                    let a = self.get(r, k);
                    let b = rhs.get(k, c);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b));
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn map<U: Entry>(&self, zero: U, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            zero,
        }
    }
}

impl Matrix<Rational> {
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::filled(n, n, Rational::zero());
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }
}

impl<T: Entry> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Sorted `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Koszul differential `d_k : Λ^k → Λ^(k-1)` for the sequence `entries`,
/// `d_k(e_{i_1} ∧ … ∧ e_{i_k}) = Σ_j (-1)^j s_{i_j} · (e_I with e_{i_j} omitted)`
/// with `j` counted from 1.
pub fn koszul_differential<T: Entry>(entries: &[T], k: usize, zero: &T) -> Matrix<T> {
    let p = entries.len();
    assert!(k >= 1 && k <= p, "differential index out of range");
    let rows = subsets(p, k - 1);
    let cols = subsets(p, k);
    let mut m = Matrix::filled(rows.len(), cols.len(), zero.clone());
    for (c, subset) in cols.iter().enumerate() {
        for (pos, &idx) in subset.iter().enumerate() {
            let mut face = subset.clone();
            face.remove(pos);
            let r = rows.binary_search(&face).expect("face is a (k-1)-subset");
            let entry = &entries[idx];
            // j = pos + 1
            let value = if pos % 2 == 0 { entry.neg() } else { entry.clone() };
            m.set(r, c, value);
        }
    }
    m
}
