use std::fmt;

use num::{One, Zero};

use super::matrix::{koszul_differential, subsets, Matrix};
use crate::algebra::{Polynomial, Rational};
use crate::{Error, Result};

/// Bijection of sequence positions, stored 0-based.
///
/// Applied to a sequence `s`, the permuted sequence is `t[k] = s[images[k]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Transposition of positions `a` and `b` (0-based).
    pub fn swap(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply<T: Clone>(&self, seq: &[T]) -> Vec<T> {
        assert_eq!(seq.len(), self.images.len(), "permutation size mismatch");
        self.images.iter().map(|&i| seq[i].clone()).collect()
    }

    /// Permuting by `self` and then by `then` is permuting by the result.
    pub fn then(&self, then: &Permutation) -> Permutation {
        Permutation {
            images: then.images.iter().map(|&k| self.images[k]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (k, &i) in self.images.iter().enumerate() {
            inv[i] = k;
        }
        Permutation { images: inv }
    }

    /// Signature via cycle decomposition.
    pub fn signature(&self) -> i64 {
        let mut seen = vec![false; self.images.len()];
        let mut sign = 1;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// All permutations of `n` elements in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
            if cur.len() == used.len() {
                out.push(Permutation { images: cur.clone() });
                return;
            }
            for i in 0..used.len() {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    go(cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Chain map between the Koszul complexes of a sequence and of its
/// permutation, given by the permutation matrix `A` and its exterior powers.
#[derive(Clone, Debug)]
pub struct PermutationChainMap {
    permutation: Permutation,
    source: Vec<Polynomial>,
    stage_matrices: Vec<Matrix<Rational>>,
    sign: Rational,
}

impl PermutationChainMap {
    pub fn permutation(&self) -> &Permutation {
        &self.permutation
    }

    pub fn source(&self) -> &[Polynomial] {
        &self.source
    }

    pub fn target(&self) -> Vec<Polynomial> {
        self.permutation.apply(&self.source)
    }

    /// `Λ^k A` for `k = 0..=m`.
    pub fn stage_matrices(&self) -> &[Matrix<Rational>] {
        &self.stage_matrices
    }

    /// `det A`, the top stage.
    pub fn sign(&self) -> &Rational {
        &self.sign
    }

    /// Whether `E_k · Λ^k A = Λ^(k-1) A · D_k` for every `k`, where `D` and
    /// `E` are the Koszul differentials of the source and target sequences.
    pub fn commutes(&self) -> bool {
        let m = self.source.len();
        let vars = self.source[0].vars().clone();
        let zero = Polynomial::zero(&vars);
        let target = self.target();
        let lift = |a: &Matrix<Rational>| a.map(zero.clone(), |c| Polynomial::constant(&vars, c.clone()));
        (1..=m).all(|k| {
            let d = koszul_differential(&self.source, k, &zero);
            let e = koszul_differential(&target, k, &zero);
            let left = e.mul(&lift(&self.stage_matrices[k]));
            let right = lift(&self.stage_matrices[k - 1]).mul(&d);
            left == right
        })
    }

    /// Composite ladder: first `self`, then `next` applied to `self`'s target.
    pub fn then(&self, next: &PermutationChainMap) -> Result<PermutationChainMap> {
        if next.source != self.target() {
            return Err(Error::Incompatible(
                "chain maps do not compose: target and source sequences differ".into(),
            ));
        }
        let stage_matrices = self
            .stage_matrices
            .iter()
            .zip(&next.stage_matrices)
            .map(|(a, b)| b.mul(a))
            .collect();
        Ok(PermutationChainMap {
            permutation: self.permutation.then(&next.permutation),
            source: self.source.clone(),
            stage_matrices,
            sign: &self.sign * &next.sign,
        })
    }
}

/// `Λ^k` of the permutation matrix `A` with `A[k][i] = 1` iff `images[k] = i`.
fn exterior_power(perm: &Permutation, k: usize) -> Matrix<Rational> {
    let m = perm.len();
    let basis = subsets(m, k);
    let inv = perm.inverse();
    let mut out = Matrix::filled(basis.len(), basis.len(), Rational::zero());
    for (c, subset) in basis.iter().enumerate() {
        // A e_i = e_{inv(i)}
        let mut image: Vec<usize> = subset.iter().map(|&i| inv.images()[i]).collect();
        let inversions = (0..image.len())
            .flat_map(|a| (a + 1..image.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| image[a] > image[b])
            .count();
        let sign: i64 = if inversions % 2 == 0 { 1 } else { -1 };
        image.sort_unstable();
        let r = basis.binary_search(&image).expect("image is a sorted subset");
        out.set(r, c, Rational::from_integer(sign.into()));
    }
    out
}

/// The ladder relating the Koszul complex of `seq` to that of `perm(seq)`.
pub fn permutation_chain_map(seq: &[Polynomial], perm: &Permutation) -> Result<PermutationChainMap> {
    if seq.len() != perm.len() || seq.is_empty() {
        return Err(Error::InvalidPermutation(format!(
            "permutation of {} positions applied to a sequence of length {}",
            perm.len(),
            seq.len()
        )));
    }
    let m = seq.len();
    let stage_matrices: Vec<Matrix<Rational>> = (0..=m).map(|k| exterior_power(perm, k)).collect();
    let sign = stage_matrices[m].get(0, 0).clone();
    debug_assert_eq!(sign, Rational::from_integer(perm.signature().into()));
    debug_assert!(stage_matrices[0].get(0, 0).is_one());
    Ok(PermutationChainMap {
        permutation: perm.clone(),
        source: seq.to_vec(),
        stage_matrices,
        sign,
    })
}
