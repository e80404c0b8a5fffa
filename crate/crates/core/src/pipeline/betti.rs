//! Invariant cohomology of `S × T³` under the paired group action.

use serde::Serialize;

use super::isometries::{Kind, LatticeIsometry};
use super::PipelineError;
use crate::exact::{linalg, RatMatrix};
use crate::torus_actions::{cohomology_action, pullback_matrix, standard_group, TorusGroup};

/// The group generated by `(ψₖ, hₖ)`, one `ψ` per torus element.
#[derive(Clone, Debug)]
pub struct PairedGroup {
    pub torus: TorusGroup,
    pub psi: Vec<RatMatrix>,
}

/// Assigns `ψ` to each torus element along its word and checks that the
/// assignment is a homomorphism.
pub fn paired_group(kind: Kind, psi: &[LatticeIsometry; 2]) -> Result<PairedGroup, PipelineError> {
    let torus = standard_group(&kind.torus_parts());
    let gens: Vec<RatMatrix> = psi.iter().map(|s| s.matrix.to_rational()).collect();
    let n = gens[0].rows();
    let images: Vec<RatMatrix> = torus
        .elements
        .iter()
        .map(|e| e.word.iter().fold(RatMatrix::identity(n), |acc, &g| acc.mul(&gens[g])))
        .collect();
    for i in 0..torus.order() {
        for j in 0..torus.order() {
            if images[torus.table[i][j]] != images[i].mul(&images[j]) {
                return Err(PipelineError::InconsistentPairing(i, j));
            }
        }
    }
    Ok(PairedGroup { torus, psi: images })
}

impl PairedGroup {
    pub fn order(&self) -> usize {
        self.torus.order()
    }

    /// `(L ⊗ ℚ) ⊕ Λ²(ℚ³)`.
    pub fn h2_matrices(&self) -> Vec<RatMatrix> {
        self.torus
            .elements
            .iter()
            .zip(&self.psi)
            .map(|(e, s)| RatMatrix::block_diagonal(&[s.clone(), pullback_matrix(&e.map, 2)]))
            .collect()
    }

    /// `(L ⊗ ℚ ⊗ ℚ³) ⊕ Λ³(ℚ³)`.
    pub fn h3_matrices(&self) -> Vec<RatMatrix> {
        self.torus
            .elements
            .iter()
            .zip(&self.psi)
            .map(|(e, s)| RatMatrix::block_diagonal(&[s.kronecker(&pullback_matrix(&e.map, 1)), pullback_matrix(&e.map, 3)]))
            .collect()
    }

    fn generator_indices(&self) -> Vec<usize> {
        (0..self.torus.generators.len())
            .map(|g| {
                self.torus
                    .elements
                    .iter()
                    .position(|e| e.word == [g])
                    .expect("generators have length-one words")
            })
            .collect()
    }
}

/// Invariant dimension by the averaging projector and by the joint fixed
/// space of the generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantDimension {
    pub by_projector: usize,
    pub by_eigenspaces: usize,
}

impl InvariantDimension {
    pub fn agree(&self) -> bool {
        self.by_projector == self.by_eigenspaces
    }
}

fn invariant_dimension(all: &[RatMatrix], generators: &[usize]) -> InvariantDimension {
    let gens: Vec<RatMatrix> = generators.iter().map(|&g| all[g].clone()).collect();
    InvariantDimension {
        by_projector: linalg::rank(&linalg::averaging_projector(all)),
        by_eigenspaces: linalg::joint_fixed_space(&gens, all[0].rows()).len(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiNumbers {
    /// `dim inv(H²) − rank(D)`; may be negative when the invariant part is
    /// too small.
    pub b2: i64,
    pub b3: usize,
    #[serde(rename = "b1N")]
    pub b1n: usize,
    pub invariant_h2: InvariantDimension,
    pub invariant_h3: InvariantDimension,
    /// Invariant `H²` under the first generator alone.
    pub first_generator_h2: usize,
    pub group_order: usize,
}

impl BettiNumbers {
    pub fn methods_agree(&self) -> bool {
        self.invariant_h2.agree() && self.invariant_h3.agree()
    }
}

pub fn betti_numbers(group: &PairedGroup, singular_rank: usize) -> BettiNumbers {
    let gens = group.generator_indices();
    let h2 = group.h2_matrices();
    let h3 = group.h3_matrices();
    let invariant_h2 = invariant_dimension(&h2, &gens);
    let invariant_h3 = invariant_dimension(&h3, &gens);
    let first = linalg::joint_fixed_space(&[h2[gens[0]].clone()], h2[0].rows()).len();
    let b1n = cohomology_action(&group.torus, 1).expect("degree 1").invariant_dimension;
    BettiNumbers {
        b2: invariant_h2.by_projector as i64 - singular_rank as i64,
        b3: invariant_h3.by_projector,
        b1n,
        invariant_h2,
        invariant_h3,
        first_generator_h2: first,
        group_order: group.order(),
    }
}
