//! Finite subgroups of SU(2) and the (anti)linear maps normalizing them.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{rat, Cyclotomic, RatMatrix, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Su2Error {
    #[error("closure exceeded {0} elements")]
    BoundExceeded(usize),
    #[error("conjugation does not preserve the group; witness element {0}")]
    NotNormalizing(usize),
    #[error("exponent map k -> {0}k is neither the identity nor the inversion")]
    UnsupportedExponent(i64),
    #[error("entry {0} does not lie in Q(i)")]
    NotGaussian(String),
    #[error("binary dihedral group D{0} needs n >= 4")]
    InvalidDihedral(usize),
    #[error("no binary polyhedral group for label {0}")]
    InvalidLabel(String),
}

/// 2×2 matrix over a cyclotomic field, `[[a, b], [c, d]]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: Cyclotomic,
    pub b: Cyclotomic,
    pub c: Cyclotomic,
    pub d: Cyclotomic,
}

impl Mat2 {
    pub fn new(a: Cyclotomic, b: Cyclotomic, c: Cyclotomic, d: Cyclotomic) -> Self {
        let n = a.conductor();
        assert!(
            [&b, &c, &d].iter().all(|x| x.conductor() == n),
            "entries must share a conductor"
        );
        Self { a, b, c, d }
    }

    pub fn conductor(&self) -> u32 {
        self.a.conductor()
    }

    pub fn identity(conductor: u32) -> Self {
        Self::diag(Cyclotomic::one(conductor), Cyclotomic::one(conductor))
    }

    pub fn diag(a: Cyclotomic, d: Cyclotomic) -> Self {
        let n = a.conductor();
        Self::new(a, Cyclotomic::zero(n), Cyclotomic::zero(n), d)
    }

    pub fn from_rationals(conductor: u32, entries: [[i64; 2]; 2]) -> Self {
        let q = |x: i64| Cyclotomic::from_rational(conductor, rat(x, 1));
        Self::new(
            q(entries[0][0]),
            q(entries[0][1]),
            q(entries[1][0]),
            q(entries[1][1]),
        )
    }

    /// Image of the quaternion `p + q·i + r·j + s·k` in SU(2)-normalization
    /// `[[p + q i, r + s i], [−r + s i, p − q i]]`.
    pub fn from_quaternion(p: Cyclotomic, q: Cyclotomic, r: Cyclotomic, s: Cyclotomic) -> Self {
        let i = Cyclotomic::i(p.conductor());
        Self::new(
            &p + &(&i * &q),
            &r + &(&i * &s),
            &(-&r) + &(&i * &s),
            &p - &(&i * &q),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            &(&self.a * &o.a) + &(&self.b * &o.c),
            &(&self.a * &o.b) + &(&self.b * &o.d),
            &(&self.c * &o.a) + &(&self.d * &o.c),
            &(&self.c * &o.b) + &(&self.d * &o.d),
        )
    }

    pub fn conj(&self) -> Self {
        Self::new(self.a.conj(), self.b.conj(), self.c.conj(), self.d.conj())
    }

    pub fn adjoint(&self) -> Self {
        Self::new(self.a.conj(), self.c.conj(), self.b.conj(), self.d.conj())
    }

    pub fn det(&self) -> Cyclotomic {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn inverse(&self) -> Option<Self> {
        let inv = self.det().inv().ok()?;
        Some(Self::new(
            &self.d * &inv,
            &(-&self.b) * &inv,
            &(-&self.c) * &inv,
            &self.a * &inv,
        ))
    }

    pub fn is_unitary(&self) -> bool {
        self.mul(&self.adjoint()) == Self::identity(self.conductor())
    }

    pub fn embed(&self, target: u32) -> Self {
        let e = |x: &Cyclotomic| x.embed(target).expect("conductor divides target");
        Self::new(e(&self.a), e(&self.b), e(&self.c), e(&self.d))
    }

    pub fn is_diagonal(&self) -> bool {
        self.b.is_zero() && self.c.is_zero()
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// `z ↦ M z` (`conjugating = false`) or `z ↦ M z̄` (`conjugating = true`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AntiUnitaryMap {
    pub matrix: Mat2,
    pub conjugating: bool,
}

impl AntiUnitaryMap {
    pub fn linear(matrix: Mat2) -> Self {
        Self {
            matrix,
            conjugating: false,
        }
    }

    pub fn identity(conductor: u32) -> Self {
        Self::linear(Mat2::identity(conductor))
    }

    pub fn conductor(&self) -> u32 {
        self.matrix.conductor()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let n = if self.conjugating {
            other.matrix.conj()
        } else {
            other.matrix.clone()
        };
        Self {
            matrix: self.matrix.mul(&n),
            conjugating: self.conjugating ^ other.conjugating,
        }
    }

    pub fn inverse(&self) -> Self {
        let inv = self.matrix.inverse().expect("unitary matrices are invertible");
        Self {
            matrix: if self.conjugating { inv.conj() } else { inv },
            conjugating: self.conjugating,
        }
    }

    pub fn is_identity(&self) -> bool {
        !self.conjugating && self.matrix == Mat2::identity(self.conductor())
    }

    pub fn embed(&self, target: u32) -> Self {
        Self {
            matrix: self.matrix.embed(target),
            conjugating: self.conjugating,
        }
    }

    /// The real-linear map on ℝ⁴ with `z₁ = x₄ + i x₅`, `z₂ = x₆ + i x₇`.
    pub fn real_form(&self) -> Result<RatMatrix, Su2Error> {
        let m = &self.matrix;
        let entries = [[&m.a, &m.b], [&m.c, &m.d]];
        let mut out = RatMatrix::zeros(4, 4);
        for (r, row) in entries.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                let (re, im) = gaussian_parts(x)?;
                let block = if self.conjugating {
                    [[re.clone(), im.clone()], [im, -re]]
                } else {
                    [[re.clone(), -im.clone()], [im, re]]
                };
                for i in 0..2 {
                    for j in 0..2 {
                        out[(2 * r + i, 2 * c + j)] = block[i][j].clone();
                    }
                }
            }
        }
        Ok(out)
    }
}

/// `(Re x, Im x)` for `x ∈ ℚ(i)`.
fn gaussian_parts(x: &Cyclotomic) -> Result<(Rational, Rational), Su2Error> {
    let bad = || Su2Error::NotGaussian(x.to_string());
    let xc = x.conj();
    let re = (x + &xc).scale(&rat(1, 2)).to_rational().ok_or_else(bad)?;
    let diff = x - &xc;
    if diff.is_zero() {
        return Ok((re, Rational::zero()));
    }
    if !x.conductor().is_multiple_of(4) {
        return Err(bad());
    }
    let minus_i_half = Cyclotomic::i(x.conductor()).scale(&rat(-1, 2));
    let im = (&diff * &minus_i_half).to_rational().ok_or_else(bad)?;
    Ok((re, im))
}

/// Breadth-first closure under composition; fails beyond `bound` elements.
pub fn closure(generators: &[AntiUnitaryMap], bound: usize) -> Result<Vec<AntiUnitaryMap>, Su2Error> {
    assert!(!generators.is_empty(), "closure needs at least one generator");
    let id = AntiUnitaryMap::identity(generators[0].conductor());
    let mut seen: HashSet<AntiUnitaryMap> = HashSet::from([id.clone()]);
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.compose(g);
            if seen.insert(y.clone()) {
                if elements.len() == bound {
                    return Err(Su2Error::BoundExceeded(bound));
                }
                elements.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(elements)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GroupLabel {
    /// Cyclic of order `n + 1`.
    A(usize),
    /// Binary dihedral of order `4(n − 2)`.
    D(usize),
    E(usize),
}

impl GroupLabel {
    pub fn expected_order(self) -> usize {
        match self {
            GroupLabel::A(n) => n + 1,
            GroupLabel::D(n) => 4 * (n - 2),
            GroupLabel::E(6) => 24,
            GroupLabel::E(7) => 48,
            GroupLabel::E(8) => 120,
            GroupLabel::E(_) => unreachable!("only E6, E7, E8 exist"),
        }
    }
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupLabel::A(n) => write!(f, "A{n}"),
            GroupLabel::D(n) => write!(f, "D{n}"),
            GroupLabel::E(n) => write!(f, "E{n}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FiniteSu2Group {
    pub label: GroupLabel,
    pub generators: Vec<AntiUnitaryMap>,
    pub elements: Vec<AntiUnitaryMap>,
}

const CLOSURE_BOUND: usize = 512;

impl FiniteSu2Group {
    fn from_generators(label: GroupLabel, generators: Vec<AntiUnitaryMap>) -> Result<Self, Su2Error> {
        let elements = closure(&generators, CLOSURE_BOUND)?;
        Ok(Self {
            label,
            generators,
            elements,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn conductor(&self) -> u32 {
        self.elements[0].conductor()
    }

    /// Every element is linear, unitary and of determinant one.
    pub fn all_special_unitary(&self) -> bool {
        self.elements
            .iter()
            .all(|g| !g.conjugating && g.matrix.is_unitary() && g.matrix.det().is_one())
    }

    pub fn index_of(&self, g: &AntiUnitaryMap) -> Option<usize> {
        self.elements.iter().position(|e| e == g)
    }
}

/// Cyclic group generated by `diag(ζₙ, ζₙ⁻¹)`.
pub fn cyclic_gamma(n: usize) -> FiniteSu2Group {
    assert!(n >= 1, "cyclic group order must be positive");
    let c = n as u32;
    let g = AntiUnitaryMap::linear(Mat2::diag(Cyclotomic::zeta_pow(c, 1), Cyclotomic::zeta_pow(c, -1)));
    FiniteSu2Group::from_generators(GroupLabel::A(n - 1), vec![g])
        .expect("a cyclic group of order n closes after n elements")
}

/// The element `(1 + i + j + k)/2` of the binary tetrahedral group.
fn hurwitz_unit(conductor: u32) -> AntiUnitaryMap {
    let h = Cyclotomic::from_rational(conductor, rat(1, 2));
    AntiUnitaryMap::linear(Mat2::from_quaternion(h.clone(), h.clone(), h.clone(), h))
}

/// Binary dihedral, tetrahedral, octahedral or icosahedral group.
pub fn binary_polyhedral(label: GroupLabel) -> Result<FiniteSu2Group, Su2Error> {
    let gens = match label {
        GroupLabel::D(n) => {
            if n < 4 {
                return Err(Su2Error::InvalidDihedral(n));
            }
            let m = 2 * (n as u32 - 2);
            let c = m.lcm(&4);
            let z = Cyclotomic::root_of_unity(c, 1, m);
            vec![
                AntiUnitaryMap::linear(Mat2::diag(z.clone(), z.conj())),
                AntiUnitaryMap::linear(Mat2::from_rationals(c, [[0, 1], [-1, 0]])),
            ]
        }
        GroupLabel::E(6) => {
            let i = Cyclotomic::i(24);
            vec![
                AntiUnitaryMap::linear(Mat2::diag(i.clone(), i.conj())),
                hurwitz_unit(24),
            ]
        }
        GroupLabel::E(7) => {
            let z8 = Cyclotomic::root_of_unity(24, 1, 8);
            vec![
                AntiUnitaryMap::linear(Mat2::diag(z8.clone(), z8.conj())),
                hurwitz_unit(24),
            ]
        }
        GroupLabel::E(8) => {
            // φ⁻¹ = ζ₅ + ζ₅⁴ and φ = 1 + φ⁻¹
            let phi_inv = &Cyclotomic::root_of_unity(20, 1, 5) + &Cyclotomic::root_of_unity(20, 4, 5);
            let phi = &Cyclotomic::one(20) + &phi_inv;
            let half = rat(1, 2);
            let q = Mat2::from_quaternion(
                phi.scale(&half),
                phi_inv.scale(&half),
                Cyclotomic::from_rational(20, half.clone()),
                Cyclotomic::zero(20),
            );
            vec![hurwitz_unit(20), AntiUnitaryMap::linear(q)]
        }
        other => return Err(Su2Error::InvalidLabel(other.to_string())),
    };
    FiniteSu2Group::from_generators(label, gens)
}

/// The maps τ₁, τ₂, τ₃ on ℂ², over ℚ(i).
pub fn tau(k: u8) -> AntiUnitaryMap {
    match k {
        1 => AntiUnitaryMap::linear(Mat2::from_rationals(4, [[-1, 0], [0, 1]])),
        2 => AntiUnitaryMap {
            matrix: Mat2::from_rationals(4, [[-1, 0], [0, -1]]),
            conjugating: true,
        },
        3 => {
            let i = Cyclotomic::i(4);
            AntiUnitaryMap {
                matrix: Mat2::new(Cyclotomic::zero(4), -&i, i, Cyclotomic::zero(4)),
                conjugating: true,
            }
        }
        _ => panic!("tau index must be 1, 2 or 3"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugationAction {
    /// `t · gᵢ · t⁻¹ = g_{permutation[i]}`.
    pub permutation: Vec<usize>,
    /// For cyclic groups: `t α t⁻¹ = α^m` with `α` the generator, `m` mod n.
    pub exponent: Option<i64>,
}

impl ConjugationAction {
    pub fn is_identity(&self) -> bool {
        self.permutation.iter().enumerate().all(|(i, &p)| i == p)
    }
}

pub fn conjugation_action(
    t: &AntiUnitaryMap,
    gamma: &FiniteSu2Group,
) -> Result<ConjugationAction, Su2Error> {
    let c = t.conductor().lcm(&gamma.conductor());
    let t = t.embed(c);
    let t_inv = t.inverse();
    let elements: Vec<AntiUnitaryMap> = gamma.elements.iter().map(|g| g.embed(c)).collect();
    let index: HashMap<&AntiUnitaryMap, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut permutation = Vec::with_capacity(elements.len());
    for (i, g) in elements.iter().enumerate() {
        let h = t.compose(g).compose(&t_inv);
        permutation.push(*index.get(&h).ok_or(Su2Error::NotNormalizing(i))?);
    }
    let exponent = match gamma.label {
        GroupLabel::A(k) => {
            let n = k + 1;
            let alpha = gamma.generators[0].embed(c);
            let image = &elements[permutation[index[&alpha]]];
            let mut power = AntiUnitaryMap::identity(c);
            let mut found = None;
            for m in 0..n {
                if &power == image {
                    found = Some(m as i64);
                    break;
                }
                power = power.compose(&alpha);
            }
            found
        }
        _ => None,
    };
    Ok(ConjugationAction {
        permutation,
        exponent,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagramAction {
    Trivial,
    Flip,
}

/// Outer class of `k ↦ m·k` on ℤ/n acting on the `A_{n−1}` diagram.
pub fn induced_diagram_automorphism(m: i64, n: usize) -> Result<DiagramAction, Su2Error> {
    let n = n as i64;
    let m = m.rem_euclid(n);
    if m == 1 % n {
        Ok(DiagramAction::Trivial)
    } else if m == (n - 1) % n {
        Ok(if n >= 3 {
            DiagramAction::Flip
        } else {
            DiagramAction::Trivial
        })
    } else {
        Err(Su2Error::UnsupportedExponent(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups() {
        assert_eq!(cyclic_gamma(1).order(), 1);
        let g2 = cyclic_gamma(2);
        assert_eq!(g2.order(), 2);
        assert!(g2.index_of(&AntiUnitaryMap::linear(Mat2::from_rationals(2, [[-1, 0], [0, -1]]))).is_some());
        let g5 = cyclic_gamma(5);
        assert_eq!(g5.order(), 5);
        assert!(g5.elements.iter().all(|g| g.matrix.is_diagonal()));
        assert!(g5.all_special_unitary());
    }

    #[test]
    fn closure_examples() {
        assert_eq!(closure(&[AntiUnitaryMap::identity(4)], 1).unwrap().len(), 1);
        let h2 = closure(&[tau(1), tau(3)], 64).unwrap();
        assert_eq!(8 % h2.len(), 0);
        let g = AntiUnitaryMap::linear(Mat2::diag(Cyclotomic::zeta_pow(3, 1), Cyclotomic::zeta_pow(3, 2)));
        assert_eq!(closure(std::slice::from_ref(&g), 10).unwrap().len(), 3);
        assert_eq!(closure(&[g], 2), Err(Su2Error::BoundExceeded(2)));
    }

    #[test]
    fn tau_relations() {
        let minus = AntiUnitaryMap::linear(Mat2::from_rationals(4, [[-1, 0], [0, -1]]));
        assert_eq!(tau(3).compose(&tau(3)), minus);
        assert!(tau(1).compose(&tau(1)).is_identity());
        assert!(tau(2).compose(&tau(2)).is_identity());
        for k in 1..=3 {
            assert!(tau(k).compose(&tau(k).inverse()).is_identity());
            assert!(tau(k).matrix.is_unitary());
        }
    }

    #[test]
    fn real_forms() {
        let t1 = tau(1).real_form().unwrap();
        assert_eq!(t1, RatMatrix::diagonal(&[rat(-1, 1), rat(-1, 1), rat(1, 1), rat(1, 1)]));
        let t2 = tau(2).real_form().unwrap();
        assert_eq!(t2, RatMatrix::diagonal(&[rat(-1, 1), rat(1, 1), rat(-1, 1), rat(1, 1)]));
        // (z₁, z₂) ↦ (−i z̄₂, i z̄₁): x₄ ↦ −x₇, x₅ ↦ −x₆, x₆ ↦ x₅, x₇ ↦ x₄
        let t3 = tau(3).real_form().unwrap();
        let expected = RatMatrix::from_i64(&[&[0, 0, 0, -1], &[0, 0, -1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]]);
        assert_eq!(t3, expected);
    }

    #[test]
    fn monodromy_exponents() {
        for n in 1..=8 {
            let g = cyclic_gamma(n);
            let gamma_action = conjugation_action(&tau(2), &g).unwrap();
            assert_eq!(gamma_action.exponent, Some((-1i64).rem_euclid(n as i64)));
            let eta_action = conjugation_action(&tau(3), &g).unwrap();
            assert!(eta_action.is_identity());
            assert!(conjugation_action(&AntiUnitaryMap::identity(4), &g).unwrap().is_identity());
        }
        assert_eq!(induced_diagram_automorphism(-1, 5).unwrap(), DiagramAction::Flip);
        assert_eq!(induced_diagram_automorphism(-1, 2).unwrap(), DiagramAction::Trivial);
        assert_eq!(induced_diagram_automorphism(1, 7).unwrap(), DiagramAction::Trivial);
        assert!(induced_diagram_automorphism(2, 7).is_err());
    }

    #[test]
    fn non_normalizing_map_detected() {
        // the Hurwitz unit (1 + i + j + k)/2 does not normalize the diagonal ℤ₃
        let c = 24;
        let h = rat(1, 2);
        let m = Mat2::from_quaternion(
            Cyclotomic::from_rational(c, h.clone()),
            Cyclotomic::from_rational(c, h.clone()),
            Cyclotomic::from_rational(c, h.clone()),
            Cyclotomic::from_rational(c, h),
        );
        let t = AntiUnitaryMap::linear(m);
        assert!(matches!(conjugation_action(&t, &cyclic_gamma(3)), Err(Su2Error::NotNormalizing(_))));
    }
}
