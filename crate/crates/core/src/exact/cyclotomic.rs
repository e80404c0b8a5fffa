use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{linalg, ExactError, RatMatrix, Rational};

/// Per-conductor data: `powers[k]` is ζᵏ reduced modulo Φ_N, for `k < N`.
struct Field {
    degree: usize,
    powers: Vec<Vec<Rational>>,
}

fn field_cache() -> &'static RwLock<HashMap<u32, Arc<Field>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Field>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Integer coefficients of Φ_n, lowest degree first.
fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = divide_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn divide_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        q[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

fn field(n: u32) -> Arc<Field> {
    if let Some(f) = field_cache().read().unwrap().get(&n) {
        return f.clone();
    }
    let phi = cyclotomic_polynomial(n);
    let degree = phi.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![Rational::zero(); degree];
    cur[0] = Rational::one();
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce with x^degree = -Σ phi_i x^i
        let top = cur[degree - 1].clone();
        let mut next = vec![Rational::zero(); degree];
        for i in (1..degree).rev() {
            next[i] = cur[i - 1].clone();
        }
        if !top.is_zero() {
            for i in 0..degree {
                next[i] -= &top * Rational::from_integer(phi[i].clone());
            }
        }
        cur = next;
    }
    let f = Arc::new(Field { degree, powers });
    field_cache().write().unwrap().insert(n, f.clone());
    f
}

/// An element of ℚ(ζ_N), stored in the power basis `1, ζ, …, ζ^{φ(N)-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero(conductor: u32) -> Self {
        assert!(conductor >= 1, "conductor must be positive");
        let d = field(conductor).degree;
        Self {
            conductor,
            coeffs: vec![Rational::zero(); d],
        }
    }

    pub fn from_rational(conductor: u32, r: Rational) -> Self {
        let mut z = Self::zero(conductor);
        z.coeffs[0] = r;
        z
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_rational(conductor, Rational::one())
    }

    /// ζ_N^k for any integer k.
    pub fn zeta_pow(conductor: u32, k: i64) -> Self {
        let f = field(conductor);
        let idx = k.rem_euclid(conductor as i64) as usize;
        Self {
            conductor,
            coeffs: f.powers[idx].clone(),
        }
    }

    /// `exp(2πi·num/den)` expressed in conductor `conductor`; `den` must divide it.
    pub fn root_of_unity(conductor: u32, num: i64, den: u32) -> Self {
        assert!(
            conductor.is_multiple_of(den),
            "order {den} does not divide conductor {conductor}"
        );
        Self::zeta_pow(conductor, num * (conductor / den) as i64)
    }

    /// The imaginary unit; requires `4 | N`.
    pub fn i(conductor: u32) -> Self {
        Self::root_of_unity(conductor, 1, 4)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if this element lies in ℚ.
    pub fn to_rational(&self) -> Option<Rational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    fn from_exponents(conductor: u32, terms: impl Iterator<Item = (usize, Rational)>) -> Self {
        let f = field(conductor);
        let mut coeffs = vec![Rational::zero(); f.degree];
        for (k, c) in terms {
            if c.is_zero() {
                continue;
            }
            for (slot, p) in coeffs.iter_mut().zip(&f.powers[k % conductor as usize]) {
                if !p.is_zero() {
                    *slot += &c * p;
                }
            }
        }
        Self { conductor, coeffs }
    }

    pub fn conj(&self) -> Self {
        let n = self.conductor as usize;
        Self::from_exponents(
            self.conductor,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| ((n - i) % n, c.clone())),
        )
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let d = self.coeffs.len();
        // column j = self · ζ^j
        let cols: Vec<Cyclotomic> = (0..d)
            .map(|j| self * &Self::zeta_pow(self.conductor, j as i64))
            .collect();
        let m = RatMatrix::from_fn(d, d, |i, j| cols[j].coeffs[i].clone());
        let mut e0 = vec![Rational::zero(); d];
        e0[0] = Rational::one();
        let x = linalg::solve(&m, &e0).ok_or(ExactError::DivisionByZero)?;
        Ok(Self {
            conductor: self.conductor,
            coeffs: x,
        })
    }

    /// Re-expresses this element in ℚ(ζ_M) via ζ_N = ζ_M^{M/N}.
    pub fn embed(&self, target: u32) -> Result<Self, ExactError> {
        if !target.is_multiple_of(self.conductor) {
            return Err(ExactError::NotEmbeddable {
                from: self.conductor,
                to: target,
            });
        }
        let step = (target / self.conductor) as usize;
        Ok(Self::from_exponents(
            target,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (i * step, c.clone())),
        ))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(
            self.conductor, other.conductor,
            "cyclotomic conductor mismatch"
        );
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check(rhs);
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Self {
        -&self
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check(rhs);
        let d = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Cyclotomic::from_exponents(self.conductor, prod.into_iter().enumerate())
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z{}^{k}", self.conductor)?,
                _ => write!(f, "{mag}*z{}^{k}", self.conductor)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycOp {
    Add,
    Mul,
    Conj,
    Inv,
}

/// Checked arithmetic entry point; unary ops ignore `b`.
pub fn cyclotomic_arith(
    a: &Cyclotomic,
    b: Option<&Cyclotomic>,
    op: CycOp,
) -> Result<Cyclotomic, ExactError> {
    let binary = |b: Option<&Cyclotomic>| -> Result<Cyclotomic, ExactError> {
        let b = b.expect("binary cyclotomic op needs a second operand").clone();
        if a.conductor != b.conductor {
            return Err(ExactError::ConductorMismatch {
                left: a.conductor,
                right: b.conductor,
            });
        }
        Ok(b)
    };
    match op {
        CycOp::Add => Ok(a + &binary(b)?),
        CycOp::Mul => Ok(a * &binary(b)?),
        CycOp::Conj => Ok(a.conj()),
        CycOp::Inv => a.inv(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        let as_i64 = |n| {
            cyclotomic_polynomial(n)
                .iter()
                .map(|c| i64::try_from(c).unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn i_squared() {
        let i = Cyclotomic::zeta_pow(4, 1);
        assert_eq!(&i * &i, Cyclotomic::from_rational(4, rat(-1, 1)));
    }

    #[test]
    fn conj_zeta3() {
        assert_eq!(Cyclotomic::zeta_pow(3, 1).conj(), Cyclotomic::zeta_pow(3, 2));
    }

    /// Reduces x + x² + x³ + x⁴ modulo 1 + x + x² + x³ + x⁴ by schoolbook
    /// long division over i64, independent of the field tables.
    fn long_division_oracle() -> Vec<i64> {
        let modulus = [1i64, 1, 1, 1, 1];
        let mut p = vec![0i64, 1, 1, 1, 1];
        for top in (4..p.len()).rev() {
            let c = p[top];
            for (j, m) in modulus.iter().enumerate() {
                p[top - 4 + j] -= c * m;
            }
        }
        p.truncate(4);
        p
    }

    #[test]
    fn sum_of_fifth_roots() {
        let s = (1..5).fold(Cyclotomic::zero(5), |acc, k| &acc + &Cyclotomic::zeta_pow(5, k));
        let oracle = long_division_oracle();
        let expected: Vec<Rational> = oracle.iter().map(|&c| rat(c, 1)).collect();
        assert_eq!(s.coefficients(), expected.as_slice());
        assert_eq!(s.to_rational(), Some(rat(-1, 1)));
    }

    #[test]
    fn mismatch_and_zero_division() {
        let a = Cyclotomic::zeta_pow(3, 1);
        let b = Cyclotomic::zeta_pow(4, 1);
        assert_eq!(
            cyclotomic_arith(&a, Some(&b), CycOp::Add),
            Err(ExactError::ConductorMismatch { left: 3, right: 4 })
        );
        assert_eq!(
            cyclotomic_arith(&Cyclotomic::zero(5), None, CycOp::Inv),
            Err(ExactError::DivisionByZero)
        );
    }

    #[test]
    fn embedding_respects_products() {
        let a = &Cyclotomic::zeta_pow(5, 2) + &Cyclotomic::from_rational(5, rat(1, 3));
        let b = Cyclotomic::zeta_pow(5, 3);
        let lhs = (&a * &b).embed(20).unwrap();
        let rhs = &a.embed(20).unwrap() * &b.embed(20).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(Cyclotomic::zeta_pow(5, 1).embed(20).unwrap(), Cyclotomic::zeta_pow(20, 4));
        assert!(Cyclotomic::zeta_pow(5, 1).embed(12).is_err());
    }

    #[test]
    fn conj_is_involutive_multiplicative() {
        let a = &Cyclotomic::zeta_pow(24, 5) + &Cyclotomic::from_rational(24, rat(2, 7));
        let b = Cyclotomic::zeta_pow(24, 11);
        assert_eq!(a.conj().conj(), a);
        assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    fn arb_cyc() -> impl Strategy<Value = Cyclotomic> {
        (
            prop_oneof![Just(3u32), Just(5), Just(8), Just(12), Just(20), Just(24)],
            proptest::collection::vec((-5i64..=5, 1i64..=4), 8),
        )
            .prop_map(|(n, cs)| {
                cs.iter().enumerate().fold(Cyclotomic::zero(n), |acc, (k, &(p, q))| {
                    &acc + &Cyclotomic::zeta_pow(n, k as i64).scale(&rat(p, q))
                })
            })
    }

    proptest! {
        #[test]
        fn inverse_is_exact(a in arb_cyc()) {
            prop_assume!(!a.is_zero());
            let inv = a.inv().unwrap();
            prop_assert!((&a * &inv).is_one());
        }

        #[test]
        fn multiplication_commutes(a in arb_cyc(), k in 0i64..30) {
            let b = Cyclotomic::zeta_pow(a.conductor(), k);
            prop_assert_eq!(&a * &b, &b * &a);
        }
    }
}
