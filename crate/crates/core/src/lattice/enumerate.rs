use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{IntegerLattice, LatticeError, LatticeVector};
use crate::exact::{linalg, saturate, IntMatrix, Rational};

/// A negative definite sublattice, stored by a ℤ-basis of its saturation
/// `span_ℚ(basis) ∩ L`.
#[derive(Clone, Debug)]
pub struct NegativeDefiniteSublattice<'a> {
    ambient: &'a IntegerLattice,
    basis: Vec<LatticeVector>,
    gram: IntMatrix,
}

impl<'a> NegativeDefiniteSublattice<'a> {
    pub fn new(ambient: &'a IntegerLattice, basis: &[LatticeVector]) -> Result<Self, LatticeError> {
        for v in basis {
            if v.len() != ambient.rank() {
                return Err(LatticeError::DimensionMismatch {
                    rank: ambient.rank(),
                    got: v.len(),
                });
            }
        }
        let basis = saturate(basis);
        let gram = ambient.gram_of(&basis);
        let k = basis.len();
        if linalg::signature(&gram.to_rational()) != (0, k, 0) {
            return Err(LatticeError::NotNegativeDefinite);
        }
        Ok(Self {
            ambient,
            basis,
            gram,
        })
    }

    pub fn ambient(&self) -> &IntegerLattice {
        self.ambient
    }

    pub fn basis(&self) -> &[LatticeVector] {
        &self.basis
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

fn round(x: &Rational) -> BigInt {
    (x + Rational::new(BigInt::one(), BigInt::from(2))).floor().to_integer()
}

struct Lll {
    gram: IntMatrix,
    h: IntMatrix,
    mu: Vec<Vec<Rational>>,
    b: Vec<Rational>,
}

impl Lll {
    /// `false` at the first non-positive pivot.
    fn gram_schmidt(&mut self) -> bool {
        let n = self.gram.rows();
        for k in 0..n {
            for j in 0..k {
                let mut s = Rational::from_integer(self.gram[(k, j)].clone());
                for i in 0..j {
                    s -= &self.mu[j][i] * &self.mu[k][i] * &self.b[i];
                }
                self.mu[k][j] = s / &self.b[j];
            }
            let mut s = Rational::from_integer(self.gram[(k, k)].clone());
            for j in 0..k {
                s -= &self.mu[k][j] * &self.mu[k][j] * &self.b[j];
            }
            if !s.is_positive() {
                return false;
            }
            self.b[k] = s;
        }
        true
    }

    fn size_reduce(&mut self, k: usize, l: usize) {
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        if self.mu[k][l].abs() <= half {
            return;
        }
        let q = round(&self.mu[k][l]);
        let n = self.gram.rows();
        for j in 0..n {
            let t = &q * &self.h[(l, j)];
            self.h[(k, j)] -= t;
        }
        for j in 0..n {
            let t = &q * &self.gram[(l, j)];
            self.gram[(k, j)] -= t;
        }
        for j in 0..n {
            let t = &q * &self.gram[(j, l)];
            self.gram[(j, k)] -= t;
        }
        let qr = Rational::from_integer(q);
        for i in 0..l {
            let t = &qr * &self.mu[l][i];
            self.mu[k][i] -= t;
        }
        self.mu[k][l] -= qr;
    }

    fn swap(&mut self, k: usize) {
        let n = self.gram.rows();
        self.h.swap_rows(k, k - 1);
        self.gram.swap_rows(k, k - 1);
        self.gram.swap_cols(k, k - 1);
        for j in 0..k - 1 {
            let (lo, hi) = self.mu.split_at_mut(k);
            std::mem::swap(&mut lo[k - 1][j], &mut hi[0][j]);
        }
        let m = self.mu[k][k - 1].clone();
        let big_b = &self.b[k] + &m * &m * &self.b[k - 1];
        self.mu[k][k - 1] = &m * &self.b[k - 1] / &big_b;
        self.b[k] = &self.b[k - 1] * &self.b[k] / &big_b;
        self.b[k - 1] = big_b;
        for i in k + 1..n {
            let t = self.mu[i][k].clone();
            self.mu[i][k] = &self.mu[i][k - 1] - &m * &t;
            self.mu[i][k - 1] = t + &self.mu[k][k - 1] * &self.mu[i][k];
        }
    }
}

/// LLL reduction (δ = 3/4) of a positive definite Gram matrix.
///
/// Returns `(h, g)` with `h` unimodular and `g = h · gram · hᵀ`; the rows of
/// `h` express the reduced basis in the old one. `None` when `gram` is not
/// positive definite.
pub fn lll_reduce(gram: &IntMatrix) -> Option<(IntMatrix, IntMatrix)> {
    let n = gram.rows();
    let mut s = Lll {
        gram: gram.clone(),
        h: IntMatrix::identity(n),
        mu: vec![vec![Rational::zero(); n]; n],
        b: vec![Rational::zero(); n],
    };
    if n == 0 {
        return Some((s.h, s.gram));
    }
    if !s.gram_schmidt() {
        return None;
    }
    let delta = Rational::new(BigInt::from(3), BigInt::from(4));
    let mut k = 1;
    while k < n {
        s.size_reduce(k, k - 1);
        let lhs = s.b[k].clone();
        let rhs = (&delta - &s.mu[k][k - 1] * &s.mu[k][k - 1]) * &s.b[k - 1];
        if lhs < rhs {
            s.swap(k);
            k = (k - 1).max(1);
        } else {
            for l in (0..k - 1).rev() {
                s.size_reduce(k, l);
            }
            k += 1;
        }
    }
    Some((s.h, s.gram))
}

/// `Q(x) = Σ q_ii (x_i + Σ_{j>i} q_ij x_j)²` for a positive definite `g`.
fn cholesky(g: &IntMatrix) -> Vec<Vec<Rational>> {
    let n = g.rows();
    let mut q: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| Rational::from_integer(g[(i, j)].clone())).collect())
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let t = &q[k][i] * &q[i][l];
                q[k][l] -= t;
            }
        }
    }
    q
}

struct FinckePohst<'q> {
    q: &'q [Vec<Rational>],
    x: Vec<BigInt>,
    out: Vec<Vec<BigInt>>,
}

impl FinckePohst<'_> {
    fn search(&mut self, i: usize, budget: Rational) {
        let n = self.x.len();
        let mut c = Rational::zero();
        for j in i + 1..n {
            if !self.x[j].is_zero() {
                c -= &self.q[i][j] * Rational::from_integer(self.x[j].clone());
            }
        }
        let qii = &self.q[i][i];
        let cost = |t: &BigInt| {
            let d = Rational::from_integer(t.clone()) - &c;
            qii * &d * &d
        };
        let start = c.floor().to_integer();
        let mut t = start.clone();
        loop {
            let used = cost(&t);
            if used > budget {
                break;
            }
            self.visit(i, &t, &budget - used);
            t -= 1;
        }
        let mut t = start + 1;
        loop {
            let used = cost(&t);
            if used > budget {
                break;
            }
            self.visit(i, &t, &budget - used);
            t += 1;
        }
    }

    fn visit(&mut self, i: usize, t: &BigInt, rest: Rational) {
        self.x[i] = t.clone();
        if i == 0 {
            if self.x.iter().any(|v| !v.is_zero()) {
                self.out.push(self.x.clone());
            }
        } else {
            self.search(i - 1, rest);
        }
        self.x[i] = BigInt::zero();
    }
}

/// All nonzero `x` with `xᵀ g x ≤ bound` for positive definite `g`.
fn short_vectors(g: &IntMatrix, bound: &Rational) -> Vec<Vec<BigInt>> {
    let n = g.rows();
    if n == 0 {
        return Vec::new();
    }
    let q = cholesky(g);
    let mut fp = FinckePohst {
        q: &q,
        x: vec![BigInt::zero(); n],
        out: Vec::new(),
    };
    fp.search(n - 1, bound.clone());
    fp.out
}

/// Every vector of norm −2 in the sublattice, sorted lexicographically by
/// ambient coordinates.
pub fn enumerate_roots(sub: &NegativeDefiniteSublattice<'_>) -> Vec<LatticeVector> {
    let k = sub.rank();
    if k == 0 {
        return Vec::new();
    }
    let positive = sub.gram.map(|x| -x);
    let (h, reduced) = lll_reduce(&positive).expect("negated Gram matrix is positive definite");
    let dim = sub.ambient.rank();
    let new_basis: Vec<LatticeVector> = (0..k)
        .map(|r| {
            let mut v = vec![BigInt::zero(); dim];
            for (c, coef) in h.row(r).iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                for (slot, b) in v.iter_mut().zip(&sub.basis[c]) {
                    *slot += coef * b;
                }
            }
            v
        })
        .collect();
    let two = BigInt::from(2);
    let mut roots: Vec<LatticeVector> = short_vectors(&reduced, &Rational::from_integer(two.clone()))
        .into_iter()
        .map(|y| {
            let mut v = vec![BigInt::zero(); dim];
            for (coef, b) in y.iter().zip(&new_basis) {
                if coef.is_zero() {
                    continue;
                }
                for (slot, bj) in v.iter_mut().zip(b) {
                    *slot += coef * bj;
                }
            }
            v
        })
        .filter(|v| sub.ambient.norm(v) == -&two)
        .collect();
    roots.sort();
    roots.dedup();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{int_vector, reflection_closure};
    use std::collections::BTreeSet;

    fn unit(i: usize) -> LatticeVector {
        let mut v = vec![BigInt::zero(); 8];
        v[i] = BigInt::one();
        v
    }

    #[test]
    fn e8_has_240_roots_matching_closure() {
        let e = IntegerLattice::minus_e8();
        let simple: Vec<_> = (0..8).map(unit).collect();
        let sub = NegativeDefiniteSublattice::new(&e, &simple).unwrap();
        let roots = enumerate_roots(&sub);
        assert_eq!(roots.len(), 240);
        let closure: BTreeSet<_> = reflection_closure(&e, &simple).into_iter().collect();
        let found: BTreeSet<_> = roots.into_iter().collect();
        assert_eq!(found, closure);
    }

    #[test]
    fn trivial_cases() {
        let e = IntegerLattice::minus_e8();
        let sub = NegativeDefiniteSublattice::new(&e, &[]).unwrap();
        assert!(enumerate_roots(&sub).is_empty());
        let a = unit(4);
        let sub = NegativeDefiniteSublattice::new(&e, std::slice::from_ref(&a)).unwrap();
        let neg: LatticeVector = a.iter().map(|x| -x).collect();
        let mut expected = vec![a, neg];
        expected.sort();
        assert_eq!(enumerate_roots(&sub), expected);
    }

    #[test]
    fn saturation_finds_hidden_roots() {
        // 2α spans a rank-one sublattice whose saturation contains ±α
        let e = IntegerLattice::minus_e8();
        let two_alpha: LatticeVector = unit(0).iter().map(|x| x * 2).collect();
        let sub = NegativeDefiniteSublattice::new(&e, &[two_alpha]).unwrap();
        assert_eq!(enumerate_roots(&sub).len(), 2);
    }

    #[test]
    fn indefinite_rejected() {
        let h = IntegerLattice::hyperbolic();
        assert_eq!(
            NegativeDefiniteSublattice::new(&h, &[int_vector(&[1, 0]), int_vector(&[0, 1])])
                .unwrap_err(),
            LatticeError::NotNegativeDefinite
        );
    }

    #[test]
    fn lll_preserves_gram() {
        let g = IntMatrix::from_i64(&[&[10, 7, 3], &[7, 6, 2], &[3, 2, 9]]);
        let (h, r) = lll_reduce(&g).unwrap();
        assert_eq!(h.mul(&g).mul(&h.transpose()), r);
        assert_eq!(
            linalg::determinant(&h.to_rational()).abs(),
            Rational::one()
        );
        assert!(lll_reduce(&g.map(|x| -x)).is_none());
        assert!(lll_reduce(&IntMatrix::from_i64(&[&[0, 1], &[1, 0]])).is_none());
    }
}
