//! Constant-coefficient exterior forms on ℚⁿ and the G₂-form on ℝ⁷.
//!
//! Public constructors take 1-based index tuples (`e¹²³` is `[1, 2, 3]`);
//! coordinates 1..3 are the torus, 4..7 are ℂ² with `z₁ = x₄ + i x₅`,
//! `z₂ = x₆ + i x₇`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{linalg, rat, RatMatrix, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("forms live on spaces of dimension {0} and {1}")]
    DimensionMismatch(usize, usize),
    #[error("cannot contract a 0-form")]
    DegreeZero,
    #[error("map is not orthogonal")]
    NonOrthogonal,
    #[error("pull-back of omega{0} leaves the span of the self-dual basis")]
    SpanViolation(usize),
    #[error("index {0} outside 1..={1}")]
    IndexOutOfRange(usize, usize),
}

/// Sign of the permutation sorting `idx`, or `None` on a repeated index.
fn sort_sign(idx: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 0..idx.len() {
        for j in 0..idx.len() - 1 - i {
            if idx[j] == idx[j + 1] {
                return None;
            }
            if idx[j] > idx[j + 1] {
                idx.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(sign)
}

#[derive(Clone, PartialEq, Eq)]
pub struct ExteriorForm {
    dim: usize,
    degree: usize,
    // 0-based increasing tuples; zero coefficients are never stored
    coeffs: BTreeMap<Vec<usize>, Rational>,
}

impl ExteriorForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Self {
            dim,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// `c · e^{i₁…iₖ}` for 1-based, not necessarily sorted indices.
    pub fn monomial(dim: usize, indices: &[usize], c: Rational) -> Result<Self, FormError> {
        let mut idx = Vec::with_capacity(indices.len());
        for &i in indices {
            if !(1..=dim).contains(&i) {
                return Err(FormError::IndexOutOfRange(i, dim));
            }
            idx.push(i - 1);
        }
        let mut f = Self::zero(dim, indices.len());
        if let Some(s) = sort_sign(&mut idx) {
            f.insert(idx, c * rat(s, 1));
        }
        Ok(f)
    }

    /// Sum of integer multiples of monomials; panics on bad indices.
    pub fn from_terms(dim: usize, degree: usize, terms: &[(&[usize], i64)]) -> Self {
        terms.iter().fold(Self::zero(dim, degree), |acc, (idx, c)| {
            assert_eq!(idx.len(), degree, "term degree mismatch");
            acc.add(&Self::monomial(dim, idx, rat(*c, 1)).expect("valid indices"))
        })
    }

    fn insert(&mut self, idx: Vec<usize>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(idx).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.retain(|_, v| !v.is_zero());
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `e^{indices}` (1-based, any order, sign-adjusted).
    pub fn coefficient(&self, indices: &[usize]) -> Rational {
        let mut idx: Vec<usize> = indices.iter().map(|i| i - 1).collect();
        match sort_sign(&mut idx) {
            Some(s) => self.coeffs.get(&idx).map_or_else(Rational::zero, |c| c * rat(s, 1)),
            None => Rational::zero(),
        }
    }

    /// `(1-based indices, coefficient)` pairs in lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &Rational)> {
        self.coeffs
            .iter()
            .map(|(k, v)| (k.iter().map(|i| i + 1).collect(), v))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.dim, self.degree), (other.dim, other.degree), "adding unlike forms");
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.insert(k.clone(), v.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (k, v) in &self.coeffs {
            out.insert(k.clone(), v * s);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&rat(-1, 1))
    }

    /// Squared ℓ² norm of the coefficient vector.
    pub fn coefficient_norm2(&self) -> Rational {
        self.coeffs.values().map(|c| c * c).sum()
    }

    /// Coefficient inner product.
    pub fn coefficient_dot(&self, other: &Self) -> Rational {
        self.coeffs
            .iter()
            .filter_map(|(k, v)| other.coeffs.get(k).map(|w| v * w))
            .sum()
    }
}

impl fmt::Debug for ExteriorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(idx, c)| {
                let name: String = idx.iter().map(ToString::to_string).collect();
                format!("{c}*e{name}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn wedge(a: &ExteriorForm, b: &ExteriorForm) -> Result<ExteriorForm, FormError> {
    if a.dim != b.dim {
        return Err(FormError::DimensionMismatch(a.dim, b.dim));
    }
    let mut out = ExteriorForm::zero(a.dim, a.degree + b.degree);
    for (i, x) in &a.coeffs {
        for (j, y) in &b.coeffs {
            let mut idx: Vec<usize> = i.iter().chain(j).copied().collect();
            if let Some(s) = sort_sign(&mut idx) {
                out.insert(idx, x * y * rat(s, 1));
            }
        }
    }
    Ok(out)
}

/// Interior product `X ⌟ a`.
pub fn contract(x: &[Rational], a: &ExteriorForm) -> Result<ExteriorForm, FormError> {
    if a.degree == 0 {
        return Err(FormError::DegreeZero);
    }
    if x.len() != a.dim {
        return Err(FormError::DimensionMismatch(x.len(), a.dim));
    }
    let mut out = ExteriorForm::zero(a.dim, a.degree - 1);
    for (idx, c) in &a.coeffs {
        for (m, &i) in idx.iter().enumerate() {
            if x[i].is_zero() {
                continue;
            }
            let sign = if m % 2 == 0 { 1 } else { -1 };
            let rest: Vec<usize> = idx.iter().enumerate().filter(|&(k, _)| k != m).map(|(_, &v)| v).collect();
            out.insert(rest, c * &x[i] * rat(sign, 1));
        }
    }
    Ok(out)
}

/// Euclidean Hodge star with orientation `e^{1…n}`.
pub fn hodge_star(a: &ExteriorForm) -> ExteriorForm {
    let n = a.dim;
    let mut out = ExteriorForm::zero(n, n - a.degree);
    for (idx, c) in &a.coeffs {
        let comp: Vec<usize> = (0..n).filter(|i| !idx.contains(i)).collect();
        let mut perm: Vec<usize> = idx.iter().chain(&comp).copied().collect();
        let s = sort_sign(&mut perm).expect("disjoint index sets");
        out.insert(comp, c * rat(s, 1));
    }
    out
}

/// Pull-back by the linear map `x ↦ M x`: `f*(eⁱ) = Σⱼ Mᵢⱼ eʲ`.
pub fn pullback(m: &RatMatrix, a: &ExteriorForm) -> Result<ExteriorForm, FormError> {
    if m.rows() != a.dim || m.cols() != a.dim {
        return Err(FormError::DimensionMismatch(m.rows(), a.dim));
    }
    let mut out = ExteriorForm::zero(a.dim, a.degree);
    let targets = linalg::index_tuples(a.dim, a.degree);
    for (idx, c) in &a.coeffs {
        for j in &targets {
            let minor = RatMatrix::from_fn(a.degree, a.degree, |r, s| m[(idx[r], j[s])].clone());
            let d = linalg::determinant(&minor);
            if !d.is_zero() {
                out.insert(j.clone(), c * d);
            }
        }
    }
    Ok(out)
}

pub fn standard_phi() -> ExteriorForm {
    ExteriorForm::from_terms(
        7,
        3,
        &[
            (&[1, 2, 3], 1),
            (&[1, 4, 5], 1),
            (&[1, 6, 7], 1),
            (&[2, 4, 6], 1),
            (&[2, 5, 7], -1),
            (&[3, 4, 7], -1),
            (&[3, 5, 6], -1),
        ],
    )
}

/// `Bᵢⱼ = (1/6)·[e¹²³⁴⁵⁶⁷] (eᵢ⌟φ) ∧ (eⱼ⌟φ) ∧ φ`, evaluated against the fixed
/// volume form (so the result is cubic in φ).
pub fn metric_from_phi(phi: &ExteriorForm) -> RatMatrix {
    assert_eq!((phi.dim, phi.degree), (7, 3), "metric needs a 3-form on R^7");
    let unit = |i: usize| -> Vec<Rational> {
        (0..7).map(|k| if k == i { Rational::one() } else { Rational::zero() }).collect()
    };
    let contracted: Vec<ExteriorForm> = (0..7)
        .map(|i| contract(&unit(i), phi).expect("degree 3"))
        .collect();
    let sixth = rat(1, 6);
    RatMatrix::from_fn(7, 7, |i, j| {
        let top = wedge(&wedge(&contracted[i], &contracted[j]).unwrap(), phi).unwrap();
        top.coefficient(&[1, 2, 3, 4, 5, 6, 7]) * &sixth
    })
}

/// The self-dual 2-forms `ω¹ = e⁴⁵ + e⁶⁷`, `ω² = e⁴⁶ − e⁵⁷`,
/// `ω³ = −(e⁴⁷ + e⁵⁶)` on ℝ⁷.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfDualBasis {
    pub omega: [ExteriorForm; 3],
}

impl SelfDualBasis {
    pub fn standard() -> Self {
        Self {
            omega: [
                ExteriorForm::from_terms(7, 2, &[(&[4, 5], 1), (&[6, 7], 1)]),
                ExteriorForm::from_terms(7, 2, &[(&[4, 6], 1), (&[5, 7], -1)]),
                ExteriorForm::from_terms(7, 2, &[(&[4, 7], -1), (&[5, 6], -1)]),
            ],
        }
    }

    pub fn zero() -> Self {
        Self {
            omega: std::array::from_fn(|_| ExteriorForm::zero(7, 2)),
        }
    }

    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        Self {
            omega: std::array::from_fn(|i| self.omega[perm[i]].clone()),
        }
    }

    pub fn volume() -> ExteriorForm {
        ExteriorForm::from_terms(7, 4, &[(&[4, 5, 6, 7], 1)])
    }
}

/// `φ = ω¹∧dx¹ + ω²∧dx² + ω³∧dx³ + dx¹²³`.
pub fn split_phi(omega: &SelfDualBasis) -> ExteriorForm {
    let dx = |i| ExteriorForm::from_terms(7, 1, &[(&[i], 1)]);
    let mut phi = ExteriorForm::from_terms(7, 3, &[(&[1, 2, 3], 1)]);
    for (i, w) in omega.omega.iter().enumerate() {
        phi = phi.add(&wedge(w, &dx(i + 1)).unwrap());
    }
    phi
}

/// `∗φ = vol_S + ω¹∧dx²³ + ω²∧dx³¹ + ω³∧dx¹²` with `vol_S = e⁴⁵⁶⁷`.
pub fn split_star_phi(omega: &SelfDualBasis) -> ExteriorForm {
    let dx = |a, b| ExteriorForm::from_terms(7, 2, &[(&[a, b], 1)]);
    let mut out = SelfDualBasis::volume();
    for (w, d) in omega.omega.iter().zip([dx(2, 3), dx(3, 1), dx(1, 2)]) {
        out = out.add(&wedge(w, &d).unwrap());
    }
    out
}

/// `hodge_star(standard_phi())` agrees with the split expansion.
pub fn hodge_dual_check() -> bool {
    hodge_star(&standard_phi()) == split_star_phi(&SelfDualBasis::standard())
}

/// Matrix `A` with `f*ωⁱ = Σⱼ Aᵢⱼ ωʲ` for an orthogonal map `f` of ℝ⁴
/// (coordinates x₄..x₇).
pub fn action_matrix_on_selfdual(map: &RatMatrix) -> Result<RatMatrix, FormError> {
    if map.rows() != 4 || map.cols() != 4 {
        return Err(FormError::DimensionMismatch(map.rows(), 4));
    }
    if !map.transpose().mul(map).is_identity() {
        return Err(FormError::NonOrthogonal);
    }
    let full = RatMatrix::from_fn(7, 7, |i, j| match (i >= 3, j >= 3) {
        (true, true) => map[(i - 3, j - 3)].clone(),
        (false, false) if i == j => Rational::one(),
        _ => Rational::zero(),
    });
    let basis = SelfDualBasis::standard();
    let mut a = RatMatrix::zeros(3, 3);
    for i in 0..3 {
        let pulled = pullback(&full, &basis.omega[i])?;
        let mut recon = ExteriorForm::zero(7, 2);
        for j in 0..3 {
            let w = &basis.omega[j];
            let c = pulled.coefficient_dot(w) / w.coefficient_norm2();
            recon = recon.add(&w.scale(&c));
            a[(i, j)] = c;
        }
        if recon != pulled {
            return Err(FormError::SpanViolation(i + 1));
        }
    }
    Ok(a)
}

/// The 48 signed permutation matrices of size 3, identity first.
pub fn signed_permutations() -> Vec<RatMatrix> {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::with_capacity(48);
    for p in perms {
        for signs in 0..8u32 {
            out.push(RatMatrix::from_fn(3, 3, |i, j| {
                if p[i] == j {
                    rat(if signs >> i & 1 == 1 { -1 } else { 1 }, 1)
                } else {
                    Rational::zero()
                }
            }));
        }
    }
    out
}

/// A signed permutation `P` with `P · action(mᵢ) · P⁻¹ = requiredᵢ` for all
/// pairs, if one exists.
pub fn find_basis_alignment(pairs: &[(RatMatrix, RatMatrix)]) -> Result<Option<RatMatrix>, FormError> {
    let actions: Vec<RatMatrix> = pairs
        .iter()
        .map(|(m, _)| action_matrix_on_selfdual(m))
        .collect::<Result<_, _>>()?;
    Ok(signed_permutations().into_iter().find(|p| {
        let p_inv = p.transpose();
        actions
            .iter()
            .zip(pairs)
            .all(|(a, (_, req))| &p.mul(a).mul(&p_inv) == req)
    }))
}

/// True when every coefficient of `a` is nonnegative; used in reports.
pub fn is_nonnegative(a: &ExteriorForm) -> bool {
    a.coeffs.values().all(|c| !c.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(dim: usize, idx: &[usize]) -> ExteriorForm {
        ExteriorForm::monomial(dim, idx, Rational::one()).unwrap()
    }

    #[test]
    fn antisymmetry() {
        assert_eq!(wedge(&e(3, &[1]), &e(3, &[2])).unwrap(), e(3, &[1, 2]));
        assert_eq!(wedge(&e(3, &[2]), &e(3, &[1])).unwrap(), e(3, &[1, 2]).neg());
        assert!(wedge(&e(3, &[1]), &e(3, &[1])).unwrap().is_zero());
        assert!(wedge(&e(3, &[1]), &e(4, &[1])).is_err());
    }

    #[test]
    fn contractions() {
        let x1 = vec![rat(1, 1), rat(0, 1), rat(0, 1)];
        let x3 = vec![rat(0, 1), rat(0, 1), rat(1, 1)];
        assert_eq!(contract(&x1, &e(3, &[1, 2])).unwrap(), e(3, &[2]));
        assert!(contract(&x3, &e(3, &[1, 2])).unwrap().is_zero());
        let mut u = vec![Rational::zero(); 7];
        u[0] = Rational::one();
        let expected = ExteriorForm::from_terms(7, 2, &[(&[2, 3], 1), (&[4, 5], 1), (&[6, 7], 1)]);
        assert_eq!(contract(&u, &standard_phi()).unwrap(), expected);
        assert_eq!(contract(&u, &ExteriorForm::zero(7, 0)), Err(FormError::DegreeZero));
    }

    #[test]
    fn star_basics() {
        assert_eq!(hodge_star(&e(7, &[1, 2, 3])), e(7, &[4, 5, 6, 7]));
        let phi = standard_phi();
        assert_eq!(hodge_star(&hodge_star(&phi)), phi);
        assert_eq!(hodge_star(&phi).coefficient_norm2(), phi.coefficient_norm2());
    }

    #[test]
    fn phi_coefficients() {
        let phi = standard_phi();
        assert_eq!(phi.coefficient(&[1, 2, 3]), rat(1, 1));
        assert_eq!(phi.coefficient(&[2, 5, 7]), rat(-1, 1));
        assert_eq!(phi.coefficient(&[7, 5, 2]), rat(1, 1));
        assert_eq!(phi.term_count(), 7);
    }

    #[test]
    fn pullback_is_contravariant() {
        let a = RatMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let b = RatMatrix::from_i64(&[&[-1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        let w = ExteriorForm::from_terms(3, 2, &[(&[1, 2], 1), (&[1, 3], 2)]);
        // (a∘b)* = b* ∘ a*
        let lhs = pullback(&a.mul(&b), &w).unwrap();
        let rhs = pullback(&b, &pullback(&a, &w).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn alignment_basics() {
        assert_eq!(signed_permutations().len(), 48);
        assert!(signed_permutations()[0].is_identity());
        assert!(find_basis_alignment(&[]).unwrap().unwrap().is_identity());
        assert_eq!(
            action_matrix_on_selfdual(&RatMatrix::from_i64(&[&[2, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]])),
            Err(FormError::NonOrthogonal)
        );
        // an orientation-reversing reflection maps self-dual to anti-self-dual forms
        let refl = RatMatrix::diagonal(&[rat(-1, 1), rat(1, 1), rat(1, 1), rat(1, 1)]);
        assert_eq!(action_matrix_on_selfdual(&refl), Err(FormError::SpanViolation(1)));
        assert!(action_matrix_on_selfdual(&RatMatrix::identity(4)).unwrap().is_identity());
    }
}
