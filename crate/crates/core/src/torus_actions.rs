//! Affine isometries of T³ = ℝ³/ℤ³, the finite groups they generate, and
//! their action on the cohomology of T³.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{linalg, rat, solve_affine_congruence, IntMatrix, RatMatrix, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error("group closure exceeded {0} elements")]
    BoundExceeded(usize),
    #[error("unknown torus map {0}")]
    UnknownPart(String),
    #[error("cohomology degree {0} outside 0..=3")]
    BadDegree(usize),
}

pub type Rotation = [[i64; 3]; 3];

/// `x ↦ A x + v (mod ℤ³)` with `A` a signed permutation matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AffineTorusIsometry {
    rotation: Rotation,
    translation: [Rational; 3],
}

fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

impl AffineTorusIsometry {
    pub fn new(rotation: Rotation, translation: [Rational; 3]) -> Self {
        let a = IntMatrix::from_i64(&[&rotation[0], &rotation[1], &rotation[2]]);
        assert!(a.transpose().mul(&a).is_identity(), "rotation part must be orthogonal");
        Self {
            rotation,
            translation: translation.map(|t| frac(&t)),
        }
    }

    pub fn identity() -> Self {
        Self::new(
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            [Rational::zero(), Rational::zero(), Rational::zero()],
        )
    }

    pub fn rotation(&self) -> &Rotation {
        &self.rotation
    }

    pub fn translation(&self) -> &[Rational; 3] {
        &self.translation
    }

    pub fn rotation_matrix(&self) -> RatMatrix {
        RatMatrix::from_fn(3, 3, |i, j| rat(self.rotation[i][j], 1))
    }

    pub fn det(&self) -> i64 {
        let a = &self.rotation;
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    }

    /// `self ∘ other`: `(A, v) ∘ (A′, v′) = (AA′, Av′ + v)`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut rot = [[0i64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                rot[i][j] = (0..3).map(|k| self.rotation[i][k] * other.rotation[k][j]).sum();
            }
        }
        let trans: [Rational; 3] = std::array::from_fn(|i| {
            let mut t = self.translation[i].clone();
            for k in 0..3 {
                t += rat(self.rotation[i][k], 1) * &other.translation[k];
            }
            t
        });
        Self::new(rot, trans)
    }

    pub fn apply(&self, x: &[Rational; 3]) -> [Rational; 3] {
        std::array::from_fn(|i| {
            let mut t = self.translation[i].clone();
            for k in 0..3 {
                t += rat(self.rotation[i][k], 1) * &x[k];
            }
            frac(&t)
        })
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Decides whether `(A − I)x ≡ −v (mod ℤ³)` has a solution.
    pub fn has_fixed_point(&self) -> bool {
        let a_minus_i = IntMatrix::from_fn(3, 3, |i, j| {
            (self.rotation[i][j] - i64::from(i == j)).into()
        });
        let rhs: Vec<Rational> = self.translation.iter().map(|t| -t).collect();
        solve_affine_congruence(&a_minus_i, &rhs)
    }

    /// Searches `((1/d)ℤ)³ / ℤ³` for a fixed point.
    pub fn grid_fixed_point(&self, d: i64) -> Option<[Rational; 3]> {
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let x = [rat(a, d), rat(b, d), rat(c, d)];
                    if self.apply(&x) == x {
                        return Some(x);
                    }
                }
            }
        }
        None
    }
}

impl fmt::Debug for AffineTorusIsometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.translation.iter().map(ToString::to_string).collect();
        write!(f, "({:?}, ({}))", self.rotation, t.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TorusPart {
    Beta,
    Gamma,
    BetaPrime,
    Eta,
}

impl TorusPart {
    pub fn name(self) -> &'static str {
        match self {
            TorusPart::Beta => "beta",
            TorusPart::Gamma => "gamma",
            TorusPart::BetaPrime => "beta_prime",
            TorusPart::Eta => "eta",
        }
    }
}

impl FromStr for TorusPart {
    type Err = TorusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "beta" => Ok(TorusPart::Beta),
            "gamma" => Ok(TorusPart::Gamma),
            "beta_prime" => Ok(TorusPart::BetaPrime),
            "eta" => Ok(TorusPart::Eta),
            other => Err(TorusError::UnknownPart(other.to_string())),
        }
    }
}

pub fn torus_part(part: TorusPart) -> AffineTorusIsometry {
    let (diag, t) = match part {
        TorusPart::Beta => ([-1, -1, 1], [rat(1, 2), rat(0, 1), rat(1, 2)]),
        TorusPart::Gamma => ([-1, 1, -1], [rat(0, 1), rat(1, 2), rat(0, 1)]),
        TorusPart::BetaPrime => ([-1, -1, 1], [rat(0, 1), rat(3, 4), rat(1, 2)]),
        TorusPart::Eta => ([1, -1, -1], [rat(1, 4), rat(1, 4), rat(0, 1)]),
    };
    let mut rot = [[0; 3]; 3];
    for i in 0..3 {
        rot[i][i] = diag[i];
    }
    AffineTorusIsometry::new(rot, t)
}

#[derive(Clone, Debug)]
pub struct TorusElement {
    pub map: AffineTorusIsometry,
    /// Shortest word in the generators (indices) producing this element.
    pub word: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct TorusGroup {
    pub generator_names: Vec<String>,
    pub generators: Vec<AffineTorusIsometry>,
    pub elements: Vec<TorusElement>,
    /// `table[i][j]` is the index of `elements[i] ∘ elements[j]`.
    pub table: Vec<Vec<usize>>,
}

pub const TORUS_GROUP_BOUND: usize = 64;

pub fn close_group(generators: &[(String, AffineTorusIsometry)]) -> Result<TorusGroup, TorusError> {
    let id = AffineTorusIsometry::identity();
    let mut index: HashMap<AffineTorusIsometry, usize> = HashMap::from([(id.clone(), 0)]);
    let mut elements = vec![TorusElement {
        map: id,
        word: Vec::new(),
    }];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (g, (_, gen)) in generators.iter().enumerate() {
            let y = elements[i].map.compose(gen);
            if index.contains_key(&y) {
                continue;
            }
            if elements.len() == TORUS_GROUP_BOUND {
                return Err(TorusError::BoundExceeded(TORUS_GROUP_BOUND));
            }
            let mut word = elements[i].word.clone();
            word.push(g);
            index.insert(y.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push(TorusElement { map: y, word });
        }
    }
    let table = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| index[&a.map.compose(&b.map)])
                .collect()
        })
        .collect();
    Ok(TorusGroup {
        generator_names: generators.iter().map(|(n, _)| n.clone()).collect(),
        generators: generators.iter().map(|(_, g)| g.clone()).collect(),
        elements,
        table,
    })
}

/// The group generated by the named standard maps.
pub fn standard_group(parts: &[TorusPart]) -> TorusGroup {
    let gens: Vec<(String, AffineTorusIsometry)> = parts
        .iter()
        .map(|&p| (p.name().to_string(), torus_part(p)))
        .collect();
    close_group(&gens).expect("the standard torus groups are finite and small")
}

impl TorusGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (0..n).all(|j| self.table[i][j] == self.table[j][i]))
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut cur = i;
        while cur != 0 {
            cur = self.table[cur][i];
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order()).map(|i| self.element_order(i)).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FreenessReport {
    pub free: bool,
    /// `(element index, has a fixed point)` for every non-identity element.
    pub verdicts: Vec<(usize, bool)>,
}

pub fn is_free(group: &TorusGroup) -> FreenessReport {
    let verdicts: Vec<(usize, bool)> = group
        .elements
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, e)| (i, e.map.has_fixed_point()))
        .collect();
    FreenessReport {
        free: verdicts.iter().all(|(_, fixed)| !fixed),
        verdicts,
    }
}

/// Freeness decided by grid search at denominator `d`.
pub fn is_free_by_grid(group: &TorusGroup, d: i64) -> bool {
    group
        .elements
        .iter()
        .skip(1)
        .all(|e| e.map.grid_fixed_point(d).is_none())
}

#[derive(Clone, Debug)]
pub struct CohomologyAction {
    pub degree: usize,
    /// Pull-back matrices on coefficient vectors in the `dx^I` basis, one per
    /// group element.
    pub matrices: Vec<RatMatrix>,
    pub invariant_dimension: usize,
    pub invariant_basis: Vec<Vec<Rational>>,
}

/// Pull-back by `x ↦ Ax + v` on `Λᵏ(ℝ³)*`: the `k`-th compound of `Aᵀ`.
pub fn pullback_matrix(map: &AffineTorusIsometry, k: usize) -> RatMatrix {
    linalg::compound(&map.rotation_matrix().transpose(), k)
}

pub fn cohomology_action(group: &TorusGroup, k: usize) -> Result<CohomologyAction, TorusError> {
    if k > 3 {
        return Err(TorusError::BadDegree(k));
    }
    let matrices: Vec<RatMatrix> = group.elements.iter().map(|e| pullback_matrix(&e.map, k)).collect();
    let projector = linalg::averaging_projector(&matrices);
    let invariant_dimension = linalg::rank(&projector);
    let dim = matrices[0].rows();
    let invariant_basis = linalg::joint_fixed_space(&matrices, dim);
    debug_assert_eq!(invariant_basis.len(), invariant_dimension);
    Ok(CohomologyAction {
        degree: k,
        matrices,
        invariant_dimension,
        invariant_basis,
    })
}

/// Dimension of the space of vectors fixed by every rotation part.
pub fn common_fixed_directions(group: &TorusGroup) -> usize {
    let rots: Vec<RatMatrix> = group.elements.iter().map(|e| e.map.rotation_matrix()).collect();
    linalg::joint_fixed_space(&rots, 3).len()
}

/// Coordinate axes fixed pointwise by every rotation part.
pub fn fixed_axes(group: &TorusGroup) -> Vec<usize> {
    (0..3)
        .filter(|&i| {
            group.elements.iter().all(|e| {
                let col: Vec<i64> = (0..3).map(|r| e.map.rotation()[r][i]).collect();
                col.iter().enumerate().all(|(r, &v)| v == i64::from(r == i))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h1() -> TorusGroup {
        standard_group(&[TorusPart::Beta, TorusPart::Gamma])
    }

    fn h2() -> TorusGroup {
        standard_group(&[TorusPart::BetaPrime, TorusPart::Eta])
    }

    #[test]
    fn parts_are_rotations() {
        for p in [TorusPart::Beta, TorusPart::Gamma, TorusPart::BetaPrime, TorusPart::Eta] {
            assert_eq!(torus_part(p).det(), 1);
        }
        assert_eq!(torus_part(TorusPart::Beta).translation(), &[rat(1, 2), rat(0, 1), rat(1, 2)]);
        assert_eq!(torus_part(TorusPart::Eta).translation(), &[rat(1, 4), rat(1, 4), rat(0, 1)]);
    }

    #[test]
    fn group_structure() {
        let g1 = h1();
        assert_eq!(g1.order(), 4);
        assert!(g1.is_abelian());
        assert_eq!(g1.element_orders(), vec![1, 2, 2, 2]);
        let g2 = h2();
        assert_eq!(g2.order(), 8);
        assert!(!g2.is_abelian());
        assert!(g2.element_orders().contains(&4));
        let bp = torus_part(TorusPart::BetaPrime);
        assert!(bp.compose(&bp).is_identity());
        let eta = torus_part(TorusPart::Eta);
        let eta2 = eta.compose(&eta);
        assert!(!eta2.is_identity());
        assert!(eta2.compose(&eta2).is_identity());
        let trivial = close_group(&[("id".into(), AffineTorusIsometry::identity())]).unwrap();
        assert_eq!(trivial.order(), 1);
    }

    #[test]
    fn freeness() {
        assert!(is_free(&h1()).free);
        assert!(is_free(&h2()).free);
        assert!(is_free_by_grid(&h1(), 8));
        assert!(is_free_by_grid(&h2(), 8));
        let rot = AffineTorusIsometry::new(
            [[-1, 0, 0], [0, -1, 0], [0, 0, 1]],
            [rat(0, 1), rat(0, 1), rat(0, 1)],
        );
        let g = close_group(&[("r".into(), rot)]).unwrap();
        let report = is_free(&g);
        assert!(!report.free);
        assert!(!is_free_by_grid(&g, 8));
    }

    #[test]
    fn cohomology() {
        assert_eq!(cohomology_action(&h1(), 1).unwrap().invariant_dimension, 0);
        let beta = standard_group(&[TorusPart::Beta]);
        let c2 = cohomology_action(&beta, 2).unwrap();
        assert_eq!(c2.invariant_dimension, 1);
        // basis order dx12, dx13, dx23
        let v = &c2.invariant_basis[0];
        assert!(!v[0].is_zero() && v[1].is_zero() && v[2].is_zero());
        assert_eq!(cohomology_action(&h2(), 3).unwrap().invariant_dimension, 1);
        assert_eq!(common_fixed_directions(&h1()), 0);
        assert_eq!(common_fixed_directions(&h2()), 0);
        assert!(fixed_axes(&h1()).is_empty());
    }
}
