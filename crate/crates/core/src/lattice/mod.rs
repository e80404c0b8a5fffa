//! Integral lattices with named orthogonal blocks; the K3 lattice.

mod enumerate;
mod roots;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::exact::{linalg, IntMatrix, Rational};

pub use enumerate::{enumerate_roots, lll_reduce, NegativeDefiniteSublattice};
pub use roots::{
    e8_block_roots, generic_orthogonal_vector, orthogonal_root_set, reflect, reflection_closure,
};

pub type LatticeVector = Vec<BigInt>;
pub type RationalVector = Vec<Rational>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("vector of length {got} does not belong to a rank-{rank} lattice")]
    DimensionMismatch { rank: usize, got: usize },
    #[error("restricted Gram matrix is not negative definite")]
    NotNegativeDefinite,
    #[error("no block named {0}")]
    UnknownBlock(String),
    #[error("block {0} is not a (-E8) block")]
    NotE8Block(String),
    #[error("vector is not supported in block {0}")]
    WrongSupport(String),
    #[error("keep set must be a proper subset of the simple roots 1..8")]
    ImproperKeep,
    #[error("node index {0} outside 1..8")]
    InvalidNode(usize),
    #[error("no generic vector found with search base up to {0}")]
    SearchExhausted(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub name: String,
    pub offset: usize,
    pub size: usize,
    pub kind: BlockKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    Hyperbolic,
    MinusE8,
}

#[derive(Clone, Debug)]
pub struct IntegerLattice {
    gram: IntMatrix,
    blocks: Vec<Block>,
    // nonzero Gram entries per row
    sparse: Vec<Vec<(usize, BigInt)>>,
}

/// Bourbaki adjacency of E8: chain 1-3-4-5-6-7-8, node 2 on node 4.
pub const E8_EDGES: [(usize, usize); 7] = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)];

fn minus_e8_gram() -> IntMatrix {
    let mut g = IntMatrix::zeros(8, 8);
    for i in 0..8 {
        g[(i, i)] = BigInt::from(-2);
    }
    for &(a, b) in &E8_EDGES {
        g[(a - 1, b - 1)] = BigInt::from(1);
        g[(b - 1, a - 1)] = BigInt::from(1);
    }
    g
}

impl IntegerLattice {
    fn new(gram: IntMatrix, blocks: Vec<Block>) -> Self {
        assert_eq!(gram, gram.transpose(), "Gram matrix must be symmetric");
        let sparse = (0..gram.rows())
            .map(|i| {
                (0..gram.cols())
                    .filter(|&j| !gram[(i, j)].is_zero())
                    .map(|j| (j, gram[(i, j)].clone()))
                    .collect()
            })
            .collect();
        Self {
            gram,
            blocks,
            sparse,
        }
    }

    fn single(name: &str, gram: IntMatrix, kind: BlockKind) -> Self {
        let size = gram.rows();
        Self::new(
            gram,
            vec![Block {
                name: name.to_string(),
                offset: 0,
                size,
                kind,
            }],
        )
    }

    pub fn hyperbolic() -> Self {
        Self::single("H", IntMatrix::from_i64(&[&[0, 1], &[1, 0]]), BlockKind::Hyperbolic)
    }

    pub fn minus_e8() -> Self {
        Self::single("E8", minus_e8_gram(), BlockKind::MinusE8)
    }

    /// Orthogonal direct sum; block names are taken from the given labels.
    pub fn direct_sum(parts: &[(&str, IntegerLattice)]) -> Self {
        let mut blocks = Vec::new();
        let mut grams = Vec::new();
        let mut offset = 0;
        for (name, lat) in parts {
            assert_eq!(lat.blocks.len(), 1, "direct summands must be single blocks");
            blocks.push(Block {
                name: name.to_string(),
                offset,
                size: lat.rank(),
                kind: lat.blocks[0].kind,
            });
            offset += lat.rank();
            grams.push(lat.gram.clone());
        }
        Self::new(IntMatrix::block_diagonal(&grams), blocks)
    }

    /// `3H ⊕ 2(−E8)` with blocks `H1, H2, H3, E8_1, E8_2`.
    pub fn k3() -> Self {
        Self::direct_sum(&[
            ("H1", Self::hyperbolic()),
            ("H2", Self::hyperbolic()),
            ("H3", Self::hyperbolic()),
            ("E8_1", Self::minus_e8()),
            ("E8_2", Self::minus_e8()),
        ])
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, name: &str) -> Result<&Block, LatticeError> {
        self.blocks
            .iter()
            .find(|b| b.name == name)
            .ok_or_else(|| LatticeError::UnknownBlock(name.to_string()))
    }

    pub fn e8_block(&self, name: &str) -> Result<&Block, LatticeError> {
        let b = self.block(name)?;
        if b.kind != BlockKind::MinusE8 {
            return Err(LatticeError::NotE8Block(name.to_string()));
        }
        Ok(b)
    }

    pub fn e8_blocks(&self) -> impl Iterator<Item = &Block> {
        self.blocks.iter().filter(|b| b.kind == BlockKind::MinusE8)
    }

    /// Places block-local coordinates into an ambient vector.
    pub fn embed<T: Clone + Zero>(&self, block: &Block, local: &[T]) -> Vec<T> {
        assert_eq!(local.len(), block.size);
        let mut v = vec![T::zero(); self.rank()];
        v[block.offset..block.offset + block.size].clone_from_slice(local);
        v
    }

    pub fn restrict<'a, T>(&self, block: &Block, v: &'a [T]) -> &'a [T] {
        &v[block.offset..block.offset + block.size]
    }

    pub fn is_supported_in<T: Zero>(&self, block: &Block, v: &[T]) -> bool {
        v.iter()
            .enumerate()
            .all(|(i, x)| x.is_zero() || (block.offset..block.offset + block.size).contains(&i))
    }

    fn check_len(&self, n: usize) -> Result<(), LatticeError> {
        if n != self.rank() {
            return Err(LatticeError::DimensionMismatch {
                rank: self.rank(),
                got: n,
            });
        }
        Ok(())
    }

    pub fn inner_product(&self, x: &[Rational], y: &[Rational]) -> Result<Rational, LatticeError> {
        self.check_len(x.len())?;
        self.check_len(y.len())?;
        let mut acc = Rational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, g) in &self.sparse[i] {
                if !y[*j].is_zero() {
                    acc += xi * &y[*j] * g;
                }
            }
        }
        Ok(acc)
    }

    /// Integer inner product; panics on a length mismatch.
    pub fn dot(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        assert!(x.len() == self.rank() && y.len() == self.rank());
        let mut acc = BigInt::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, g) in &self.sparse[i] {
                if !y[*j].is_zero() {
                    acc += xi * &y[*j] * g;
                }
            }
        }
        acc
    }

    /// Mixed integer/rational inner product.
    pub fn dot_rat(&self, x: &[BigInt], y: &[Rational]) -> Rational {
        assert!(x.len() == self.rank() && y.len() == self.rank());
        let mut acc = Rational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, g) in &self.sparse[i] {
                if !y[*j].is_zero() {
                    acc += &y[*j] * Rational::from_integer(xi * g);
                }
            }
        }
        acc
    }

    pub fn norm(&self, x: &[BigInt]) -> BigInt {
        self.dot(x, x)
    }

    pub fn signature(&self) -> (usize, usize, usize) {
        linalg::signature(&self.gram.to_rational())
    }

    pub fn determinant(&self) -> Rational {
        linalg::determinant(&self.gram.to_rational())
    }

    /// Gram matrix of the given vectors.
    pub fn gram_of(&self, basis: &[LatticeVector]) -> IntMatrix {
        IntMatrix::from_fn(basis.len(), basis.len(), |i, j| self.dot(&basis[i], &basis[j]))
    }
}

pub fn to_rational_vector(v: &[BigInt]) -> RationalVector {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

pub fn int_vector(v: &[i64]) -> LatticeVector {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn hyperbolic_plane() {
        let h = IntegerLattice::hyperbolic();
        let v1 = int_vector(&[1, 0]);
        let v2 = int_vector(&[0, 1]);
        assert_eq!(h.dot(&v1, &v2), BigInt::from(1));
        assert_eq!(h.norm(&v1), BigInt::zero());
        assert_eq!(h.norm(&int_vector(&[1, 2])), BigInt::from(4));
        assert_eq!(h.norm(&int_vector(&[1, -2])), BigInt::from(-4));
    }

    #[test]
    fn minus_e8_adjacency() {
        let e = IntegerLattice::minus_e8();
        let a = |i: usize| {
            let mut v = vec![BigInt::zero(); 8];
            v[i - 1] = BigInt::from(1);
            v
        };
        for i in 1..=8 {
            assert_eq!(e.norm(&a(i)), BigInt::from(-2));
        }
        assert_eq!(e.dot(&a(3), &a(4)), BigInt::from(1));
        assert_eq!(e.dot(&a(1), &a(2)), BigInt::zero());
        assert_eq!(e.dot(&a(2), &a(4)), BigInt::from(1));
        assert_eq!(e.determinant(), rat(1, 1));
        assert_eq!(e.signature(), (0, 8, 0));
    }

    #[test]
    fn k3_invariants() {
        let l = IntegerLattice::k3();
        assert_eq!(l.rank(), 22);
        assert_eq!(l.signature(), (3, 19, 0));
        assert_eq!(l.determinant(), rat(-1, 1));
        let names: Vec<_> = l.blocks().iter().map(|b| b.name.as_str()).collect();
        assert_eq!(names, ["H1", "H2", "H3", "E8_1", "E8_2"]);
        let h = l.block("H2").unwrap().clone();
        let e = l.block("E8_1").unwrap().clone();
        let x = l.embed(&h, &[rat(1, 1), rat(3, 2)]);
        let y = l.embed(&e, &[rat(1, 1), rat(0, 1), rat(5, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)]);
        assert_eq!(l.inner_product(&x, &y).unwrap(), rat(0, 1));
        assert!(l.inner_product(&x, &x[..5]).is_err());
    }
}
