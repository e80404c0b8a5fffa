//! Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use super::{RatMatrix, Rational};

/// Reduced row echelon form together with the pivot columns.
pub fn rref(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a[(r, c)].recip();
        for j in c..cols {
            if !a[(r, j)].is_zero() {
                a[(r, j)] = &a[(r, j)] * &inv;
            }
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                if a[(r, j)].is_zero() {
                    continue;
                }
                let t = &f * &a[(r, j)];
                a[(i, j)] -= t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Rank by forward elimination, skipping zero entries (the matrices we feed
/// here are mostly sparse representation matrices).
pub fn rank(m: &RatMatrix) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a[(r, c)].recip();
        for i in r + 1..rows {
            if a[(i, c)].is_zero() {
                continue;
            }
            let f = &a[(i, c)] * &inv;
            for j in c..cols {
                if a[(r, j)].is_zero() {
                    continue;
                }
                let t = &f * &a[(r, j)];
                a[(i, j)] -= t;
            }
        }
        r += 1;
    }
    r
}

/// Basis of the right null space `{v : M v = 0}`.
///
/// The basis is the standard one read off the reduced row echelon form: one
/// vector per free column, with a 1 in that column.
pub fn rational_kernel(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let cols = m.cols();
    if m.rows() == 0 {
        return (0..cols)
            .map(|k| {
                (0..cols)
                    .map(|j| if j == k { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
    }
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, f)].clone();
            }
            v
        })
        .collect()
}

pub fn determinant(m: &RatMatrix) -> Rational {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let mut a = m.clone();
    let n = a.rows();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap_rows(p, c);
            det = -det;
        }
        let pivot = a[(c, c)].clone();
        det *= &pivot;
        let inv = pivot.recip();
        for i in c + 1..n {
            if a[(i, c)].is_zero() {
                continue;
            }
            let f = &a[(i, c)] * &inv;
            for j in c..n {
                if a[(c, j)].is_zero() {
                    continue;
                }
                let t = &f * &a[(c, j)];
                a[(i, j)] -= t;
            }
        }
    }
    det
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    assert!(m.is_square(), "inverse of a non-square matrix");
    let n = m.rows();
    let aug = RatMatrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else if j - n == i {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(RatMatrix::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
}

/// Solves `M x = b` for square invertible `M`.
pub fn solve(m: &RatMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let inv = inverse(m)?;
    Some(inv.mul_vec(b))
}

/// Inertia `(positive, negative, zero)` of a symmetric matrix, computed by
/// symmetric elimination (congruence transformations only).
pub fn signature(m: &RatMatrix) -> (usize, usize, usize) {
    assert!(m.is_square());
    let mut a = m.clone();
    let n = a.rows();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        // find a nonzero diagonal entry among active indices
        let diag = active.iter().copied().find(|&i| !a[(i, i)].is_zero());
        let p = match diag {
            Some(p) => p,
            None => {
                // all active diagonals vanish: find an off-diagonal pair and
                // replace e_i by e_i + e_j, which makes the diagonal nonzero
                let pair = active.iter().copied().find_map(|i| {
                    active
                        .iter()
                        .copied()
                        .find(|&j| j != i && !a[(i, j)].is_zero())
                        .map(|j| (i, j))
                });
                match pair {
                    Some((i, j)) => {
                        for k in 0..n {
                            let t = a[(j, k)].clone();
                            a[(i, k)] += t;
                        }
                        for k in 0..n {
                            let t = a[(k, j)].clone();
                            a[(k, i)] += t;
                        }
                        i
                    }
                    None => {
                        zero += active.len();
                        break;
                    }
                }
            }
        };
        let pivot = a[(p, p)].clone();
        if pivot > Rational::zero() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != p);
        for &i in &active {
            if a[(i, p)].is_zero() {
                continue;
            }
            let f = &a[(i, p)] / &pivot;
            for k in 0..n {
                let t = &f * &a[(p, k)];
                a[(i, k)] -= t;
            }
            for k in 0..n {
                let t = &f * &a[(k, p)];
                a[(k, i)] -= t;
            }
        }
    }
    (pos, neg, zero)
}

/// Increasing index tuples of length `k` from `0..n`, in lexicographic order.
pub fn index_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// `k`-th compound matrix: the action of `m` on `Λᵏ` in the basis of
/// increasing index tuples.
pub fn compound(m: &RatMatrix, k: usize) -> RatMatrix {
    assert!(m.is_square());
    let tuples = index_tuples(m.rows(), k);
    RatMatrix::from_fn(tuples.len(), tuples.len(), |a, b| {
        if k == 0 {
            return Rational::one();
        }
        let minor = RatMatrix::from_fn(k, k, |i, j| m[(tuples[a][i], tuples[b][j])].clone());
        determinant(&minor)
    })
}

/// `(1/|G|) Σ g` over the listed group elements.
pub fn averaging_projector(elements: &[RatMatrix]) -> RatMatrix {
    assert!(!elements.is_empty());
    let n = elements[0].rows();
    let mut acc = RatMatrix::zeros(n, n);
    for g in elements {
        acc = acc.add(g);
    }
    acc.scale(&Rational::new(1.into(), (elements.len() as i64).into()))
}

/// Common fixed space of the generators, as the kernel of the stacked `g − I`.
pub fn joint_fixed_space(generators: &[RatMatrix], dim: usize) -> Vec<Vec<Rational>> {
    let id = RatMatrix::identity(dim);
    let rows: Vec<Vec<Rational>> = generators
        .iter()
        .flat_map(|g| g.sub(&id).to_rows())
        .collect();
    if rows.is_empty() {
        return rational_kernel(&RatMatrix::zeros(0, dim));
    }
    rational_kernel(&RatMatrix::from_rows(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn kernel_of_row_one_one() {
        let k = rational_kernel(&RatMatrix::from_i64(&[&[1, 1]]));
        assert_eq!(k, vec![vec![rat(-1, 1), rat(1, 1)]]);
    }

    #[test]
    fn kernel_of_invertible_is_empty() {
        assert!(rational_kernel(&RatMatrix::from_i64(&[&[1, 2], &[3, 4]])).is_empty());
    }

    #[test]
    fn kernel_of_one_two_three() {
        let m = RatMatrix::from_i64(&[&[1, 2, 3]]);
        let k = rational_kernel(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        let basis = RatMatrix::from_rows(k);
        assert_eq!(rank(&basis), 2);
        assert_eq!(rank(&m) + 2, 3);
    }

    #[test]
    fn determinant_and_inverse() {
        let m = RatMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(determinant(&m), rat(1, 1));
        let inv = inverse(&m).unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inverse(&RatMatrix::from_i64(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn compounds() {
        let a = RatMatrix::from_i64(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 1]]);
        let c2 = compound(&a, 2);
        assert_eq!(c2, RatMatrix::from_i64(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]));
        assert_eq!(compound(&a, 3), RatMatrix::from_i64(&[&[1]]));
        assert_eq!(compound(&a, 1), a);
        let b = RatMatrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        assert_eq!(compound(&a.mul(&b), 2), compound(&a, 2).mul(&compound(&b, 2)));
    }

    #[test]
    fn invariants_two_ways() {
        let a = RatMatrix::from_i64(&[&[-1, 0], &[0, 1]]);
        let id = RatMatrix::identity(2);
        let p = averaging_projector(&[id, a.clone()]);
        assert_eq!(rank(&p), 1);
        assert_eq!(joint_fixed_space(&[a], 2).len(), 1);
        assert_eq!(index_tuples(4, 2).len(), 6);
    }

    #[test]
    fn signature_of_hyperbolic_plane() {
        let h = RatMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(signature(&h), (1, 1, 0));
        let d = RatMatrix::from_i64(&[&[-2, 1], &[1, -2]]);
        assert_eq!(signature(&d), (0, 2, 0));
        assert_eq!(signature(&RatMatrix::zeros(2, 2)), (0, 0, 2));
    }
}
