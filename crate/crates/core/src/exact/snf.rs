//! Smith normal form over the integers and what it buys us: integral kernels,
//! saturation of sublattices, and solvability of `A x ≡ b (mod ℤⁿ)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{linalg, IntMatrix, Rational};

/// `u * m * v == d`, with `d` diagonal, nonnegative and `d[i] | d[i+1]`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors()
            .iter()
            .take_while(|x| !x.is_zero())
            .count()
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }

    /// row[dst] -= q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.a.cols() {
            if !self.a[(src, j)].is_zero() {
                let t = q * &self.a[(src, j)];
                self.a[(dst, j)] -= t;
            }
        }
        for j in 0..self.u.cols() {
            if !self.u[(src, j)].is_zero() {
                let t = q * &self.u[(src, j)];
                self.u[(dst, j)] -= t;
            }
        }
    }

    /// col[dst] -= q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.a.rows() {
            if !self.a[(i, src)].is_zero() {
                let t = q * &self.a[(i, src)];
                self.a[(i, dst)] -= t;
            }
        }
        for i in 0..self.v.rows() {
            if !self.v[(i, src)].is_zero() {
                let t = q * &self.v[(i, src)];
                self.v[(i, dst)] -= t;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.a.cols() {
            self.a[(i, j)] = -self.a[(i, j)].clone();
        }
        for j in 0..self.u.cols() {
            self.u[(i, j)] = -self.u[(i, j)].clone();
        }
    }

    fn smallest_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn run(mut self) -> SmithForm {
        let (rows, cols) = (self.a.rows(), self.a.cols());
        for t in 0..rows.min(cols) {
            let Some((pi, pj)) = self.smallest_nonzero(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..rows {
                    if self.a[(i, t)].is_zero() {
                        continue;
                    }
                    let q = self.a[(i, t)].div_floor(&self.a[(t, t)]);
                    self.row_axpy(i, t, &q);
                    if !self.a[(i, t)].is_zero() {
                        dirty = true;
                    }
                }
                for j in t + 1..cols {
                    if self.a[(t, j)].is_zero() {
                        continue;
                    }
                    let q = self.a[(t, j)].div_floor(&self.a[(t, t)]);
                    self.col_axpy(j, t, &q);
                    if !self.a[(t, j)].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    // move the smallest remainder in row/column t to the pivot
                    let mut best = (t, t);
                    for i in t + 1..rows {
                        let x = &self.a[(i, t)];
                        if !x.is_zero() && x.abs() < self.a[best].abs() {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..cols {
                        let x = &self.a[(t, j)];
                        if !x.is_zero() && x.abs() < self.a[best].abs() {
                            best = (t, j);
                        }
                    }
                    if best.0 != t {
                        self.swap_rows(t, best.0);
                    } else if best.1 != t {
                        self.swap_cols(t, best.1);
                    }
                    continue;
                }
                // row and column are clear; enforce divisibility of the rest
                let pivot = self.a[(t, t)].clone();
                let offender = (t + 1..rows).find(|&i| {
                    (t + 1..cols).any(|j| !self.a[(i, j)].is_multiple_of(&pivot))
                });
                match offender {
                    Some(i) => {
                        let minus_one = -BigInt::one();
                        self.row_axpy(t, i, &minus_one);
                    }
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
        }
        SmithForm {
            u: self.u,
            d: self.a,
            v: self.v,
        }
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    Reducer {
        a: m.clone(),
        u: IntMatrix::identity(m.rows()),
        v: IntMatrix::identity(m.cols()),
    }
    .run()
}

/// A ℤ-basis of `{x ∈ ℤⁿ : M x = 0}`; the basis is saturated.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    if m.rows() == 0 {
        return IntMatrix::identity(m.cols()).to_rows();
    }
    let snf = smith_normal_form(m);
    let r = snf.rank();
    (r..m.cols()).map(|j| snf.v.column(j)).collect()
}

/// A ℤ-basis of `span_ℚ(rows) ∩ ℤⁿ`.
pub fn saturate(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let b = IntMatrix::from_rows(rows.to_vec());
    let snf = smith_normal_form(&b);
    let r = snf.rank();
    // B = U⁻¹ D V⁻¹, so the row space is spanned by the first r rows of V⁻¹,
    // which extend to a basis of ℤⁿ.
    let vinv = linalg::inverse(&snf.v.to_rational())
        .and_then(|m| m.to_integer())
        .expect("unimodular transform has an integral inverse");
    (0..r).map(|i| vinv.row(i).to_vec()).collect()
}

/// Decides whether some real `x` satisfies `A x ≡ b (mod ℤⁿ)`.
///
/// With `U A V = D` and `y = V⁻¹ x`, the system becomes `D y ≡ U b`; rows
/// with a nonzero invariant factor are always solvable over ℝ, rows with a
/// zero factor need `(U b)_i ∈ ℤ`.
pub fn solve_affine_congruence(a: &IntMatrix, b: &[Rational]) -> bool {
    assert!(a.is_square(), "congruence matrix must be square");
    assert_eq!(a.rows(), b.len(), "right-hand side has the wrong length");
    let snf = smith_normal_form(a);
    let ub = snf.u.to_rational().mul_vec(b);
    let factors = snf.invariant_factors();
    ub.iter()
        .zip(&factors)
        .all(|(rhs, d)| !d.is_zero() || rhs.is_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{linalg::determinant, rat};
    use proptest::prelude::*;

    fn check_snf(m: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert_eq!(determinant(&s.u.to_rational()).abs(), rat(1, 1));
        assert_eq!(determinant(&s.v.to_rational()).abs(), rat(1, 1));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            if !w[1].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]));
            } else if !w[0].is_zero() {
                // zeros trail the nonzero factors
            } else {
                assert!(w[1].is_zero());
            }
        }
        s
    }

    #[test]
    fn diag_two_three() {
        let s = check_snf(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn identity_and_zero() {
        let s = check_snf(&IntMatrix::identity(3));
        assert!(s.d.is_identity());
        let z = IntMatrix::zeros(2, 3);
        assert_eq!(check_snf(&z).d, z);
    }

    #[test]
    fn congruence_examples() {
        let zero = IntMatrix::from_i64(&[&[0]]);
        assert!(!solve_affine_congruence(&zero, &[rat(1, 2)]));
        assert!(solve_affine_congruence(&zero, &[rat(3, 1)]));
        assert!(solve_affine_congruence(
            &IntMatrix::identity(3),
            &[rat(1, 3), rat(2, 7), rat(-5, 4)]
        ));
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 0]]);
        assert!(!solve_affine_congruence(&a, &[rat(1, 3), rat(1, 4)]));
        assert!(solve_affine_congruence(&a, &[rat(1, 3), rat(0, 1)]));
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x + 4y = 0 has kernel generated by (2, -1), not (4, -2)
        let m = IntMatrix::from_i64(&[&[2, 4]]);
        let k = integer_kernel(&m);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        assert_eq!(num_integer::Integer::gcd(&v[0], &v[1]), BigInt::one());
    }

    #[test]
    fn saturation_recovers_primitive_basis() {
        let rows = vec![vec![BigInt::from(2), BigInt::from(2), BigInt::from(0)]];
        let s = saturate(&rows);
        assert_eq!(s.len(), 1);
        assert!(s[0] == vec![BigInt::from(1), BigInt::from(1), BigInt::from(0)]
            || s[0] == vec![BigInt::from(-1), BigInt::from(-1), BigInt::from(0)]);
    }

    /// Brute-force oracle: x ranges over the grid `(1/q)ℤ³ / ℤ³` with
    /// `q = 2 · lcm(denominators)`, which contains a solution whenever one exists
    /// for sign-diagonal `A` (each coordinate equation is `0`, `2x` or `-2x`).
    fn grid_solvable(signs: [i64; 3], b: &[Rational]) -> bool {
        let q = 2 * 12; // denominators ≤ 4 ⇒ lcm divides 12
        let coord_ok = |s: i64, rhs: &Rational| {
            (0..q).any(|k| {
                let x = rat(k, q);
                let lhs = Rational::from_integer(BigInt::from(s - 1)) * x;
                (lhs - rhs).is_integer()
            })
        };
        signs.iter().zip(b).all(|(&s, r)| coord_ok(s, r))
    }

    proptest! {
        #[test]
        fn snf_reconstructs(entries in proptest::collection::vec(-9i64..=9, 12)) {
            let m = IntMatrix::from_fn(3, 4, |i, j| BigInt::from(entries[i * 4 + j]));
            check_snf(&m);
        }

        #[test]
        fn congruence_matches_grid(
            signs in proptest::array::uniform3(prop_oneof![Just(-1i64), Just(1i64)]),
            nums in proptest::array::uniform3(-8i64..8),
            dens in proptest::array::uniform3(1i64..=4),
        ) {
            // A = diag(signs) - I, the fixed-point system of a sign-diagonal rotation
            let a = IntMatrix::from_fn(3, 3, |i, j| {
                BigInt::from(if i == j { signs[i] - 1 } else { 0 })
            });
            let b: Vec<Rational> = (0..3).map(|i| rat(nums[i], dens[i])).collect();
            prop_assert_eq!(solve_affine_congruence(&a, &b), grid_solvable(signs, &b));
        }
    }
}
