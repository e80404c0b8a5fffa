//! Exact arithmetic: rationals, cyclotomic fields, dense matrices and the
//! integer/rational linear algebra built on them.

mod cyclotomic;
pub mod linalg;
mod matrix;
pub mod snf;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use cyclotomic::{cyclotomic_arith, CycOp, Cyclotomic};
pub use matrix::{IntMatrix, Matrix, RatMatrix};
pub use snf::{integer_kernel, saturate, smith_normal_form, solve_affine_congruence, SmithForm};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor mismatch: {left} vs {right}")]
    ConductorMismatch { left: u32, right: u32 },
    #[error("conductor {from} does not divide {to}")]
    NotEmbeddable { from: u32, to: u32 },
}

/// Primitive integer vector on the same ray as `v` (zero stays zero).
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    use num_integer::Integer;
    use num_traits::{One, Zero};
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}
