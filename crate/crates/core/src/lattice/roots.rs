use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{IntegerLattice, LatticeError, LatticeVector, RationalVector};
use crate::exact::{linalg, primitive_integer_vector, RatMatrix, Rational};

/// Reflection of `x` in the hyperplane orthogonal to `a`; `a` must be a
/// reflective vector for `x` (always true for norm −2 roots).
pub fn reflect(lattice: &IntegerLattice, a: &[BigInt], x: &[BigInt]) -> LatticeVector {
    let aa = lattice.norm(a);
    let two_xa: BigInt = lattice.dot(x, a) * 2;
    assert!(
        (&two_xa % &aa).is_zero(),
        "reflection does not preserve the lattice"
    );
    let k = two_xa / aa;
    x.iter().zip(a).map(|(xi, ai)| xi - &k * ai).collect()
}

/// Smallest set containing the generators that is closed under the
/// reflections in its own members; sorted lexicographically.
pub fn reflection_closure(lattice: &IntegerLattice, generators: &[LatticeVector]) -> Vec<LatticeVector> {
    let mut seen: HashSet<LatticeVector> = HashSet::new();
    let mut queue = VecDeque::new();
    for g in generators {
        if seen.insert(g.clone()) {
            queue.push_back(g.clone());
        }
    }
    while let Some(v) = queue.pop_front() {
        for g in generators {
            let w = reflect(lattice, g, &v);
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    out
}

fn simple_root(i: usize) -> LatticeVector {
    let mut v = vec![BigInt::zero(); 8];
    v[i - 1] = BigInt::one();
    v
}

/// The 240 roots of −E8 in block-local simple-root coordinates, obtained as the
/// reflection closure of the simple roots.
pub fn e8_block_roots() -> &'static [LatticeVector] {
    static ROOTS: OnceLock<Vec<LatticeVector>> = OnceLock::new();
    ROOTS.get_or_init(|| {
        let simple: Vec<_> = (1..=8).map(simple_root).collect();
        reflection_closure(&IntegerLattice::minus_e8(), &simple)
    })
}

/// Roots of the named (−E8) block orthogonal to `u`, which must be supported
/// in that block.
pub fn orthogonal_root_set(
    lattice: &IntegerLattice,
    block: &str,
    u: &[Rational],
) -> Result<Vec<LatticeVector>, LatticeError> {
    let b = lattice.e8_block(block)?;
    if u.len() != lattice.rank() {
        return Err(LatticeError::DimensionMismatch {
            rank: lattice.rank(),
            got: u.len(),
        });
    }
    if !lattice.is_supported_in(b, u) {
        return Err(LatticeError::WrongSupport(block.to_string()));
    }
    let local_u = lattice.restrict(b, u);
    let e8 = IntegerLattice::minus_e8();
    let mut out: Vec<LatticeVector> = e8_block_roots()
        .iter()
        .filter(|d| e8.dot_rat(d, local_u).is_zero())
        .map(|d| lattice.embed(b, d))
        .collect();
    out.sort();
    Ok(out)
}

const MAX_BASE: u64 = 64;

/// A rational vector in the named block whose orthogonal roots are exactly
/// the reflection closure of the simple roots in `keep` (1-based Bourbaki).
///
/// Candidates are `u = Σ bⁱ wᵢ` over an integral basis `wᵢ` of the orthogonal
/// complement of `keep`, for `b = 2, 3, …`.
pub fn generic_orthogonal_vector(
    lattice: &IntegerLattice,
    block: &str,
    keep: &BTreeSet<usize>,
) -> Result<RationalVector, LatticeError> {
    let b = lattice.e8_block(block)?.clone();
    if let Some(&bad) = keep.iter().find(|&&i| !(1..=8).contains(&i)) {
        return Err(LatticeError::InvalidNode(bad));
    }
    if keep.len() == 8 {
        return Err(LatticeError::ImproperKeep);
    }
    let e8 = IntegerLattice::minus_e8();
    let kept: Vec<LatticeVector> = keep.iter().map(|&i| simple_root(i)).collect();
    let target: BTreeSet<LatticeVector> = reflection_closure(&e8, &kept).into_iter().collect();

    // αᵢᵀ G is row i of the Gram matrix
    let mut constraints = RatMatrix::zeros(keep.len(), 8);
    for (r, &i) in keep.iter().enumerate() {
        for j in 0..8 {
            constraints[(r, j)] = Rational::from_integer(e8.gram()[(i - 1, j)].clone());
        }
    }
    let complement: Vec<Vec<BigInt>> = linalg::rational_kernel(&constraints)
        .iter()
        .map(|w| primitive_integer_vector(w))
        .collect();

    for base in 2..=MAX_BASE {
        let mut u = vec![BigInt::zero(); 8];
        let mut weight = BigInt::one();
        for w in &complement {
            for (slot, wi) in u.iter_mut().zip(w) {
                *slot += &weight * wi;
            }
            weight *= base;
        }
        let orth: BTreeSet<LatticeVector> = e8_block_roots()
            .iter()
            .filter(|d| e8.dot(d, &u).is_zero())
            .cloned()
            .collect();
        if orth == target {
            let local: Vec<Rational> = u.into_iter().map(Rational::from_integer).collect();
            return Ok(lattice.embed(&b, &local));
        }
    }
    Err(LatticeError::SearchExhausted(MAX_BASE))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn keep(ix: &[usize]) -> BTreeSet<usize> {
        ix.iter().copied().collect()
    }

    #[test]
    fn orthogonal_sets_in_k3() {
        let l = IntegerLattice::k3();
        let zero = vec![Rational::zero(); 22];
        assert_eq!(orthogonal_root_set(&l, "E8_1", &zero).unwrap().len(), 240);
        let bad = l.embed(l.block("H1").unwrap(), &[Rational::one(), Rational::zero()]);
        assert_eq!(
            orthogonal_root_set(&l, "E8_1", &bad).unwrap_err(),
            LatticeError::WrongSupport("E8_1".into())
        );
        assert!(orthogonal_root_set(&l, "H1", &zero).is_err());
    }

    #[test]
    fn generic_vectors_realize_keep() {
        let l = IntegerLattice::k3();
        for (k, count) in [
            (keep(&[]), 0),
            (keep(&[1, 2, 3, 4, 5, 6, 7]), 126),
            (keep(&[2, 3, 4, 5, 6, 7, 8]), 84),
            (keep(&[1, 3]), 6),
            (keep(&[1, 2]), 4),
        ] {
            let u = generic_orthogonal_vector(&l, "E8_2", &k).unwrap();
            assert_eq!(orthogonal_root_set(&l, "E8_2", &u).unwrap().len(), count);
        }
        assert_eq!(
            generic_orthogonal_vector(&l, "E8_1", &(1..=8).collect()).unwrap_err(),
            LatticeError::ImproperKeep
        );
        assert_eq!(
            generic_orthogonal_vector(&l, "E8_1", &keep(&[9])).unwrap_err(),
            LatticeError::InvalidNode(9)
        );
    }
}
