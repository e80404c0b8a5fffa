//! Diagram automorphisms induced by ψ₁, ψ₂ on the singularity components.

use serde::Serialize;

use super::isometries::LatticeIsometry;
use super::periods::block_of;
use super::PipelineError;
use crate::lattice::IntegerLattice;
use crate::root_systems::{fold_by_automorphism, weyl_decompose, AdeLabel, RootSubsystem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsometryMonodromy {
    pub isometry: String,
    /// Node permutation in the component's local order.
    pub sigma: Vec<usize>,
    pub weyl_length: usize,
    pub trivial: bool,
    /// Folded type when `sigma` is nontrivial.
    pub folded: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentMonodromy {
    pub block: Option<String>,
    pub label: AdeLabel,
    pub actions: Vec<IsometryMonodromy>,
}

impl ComponentMonodromy {
    pub fn trivial(&self) -> bool {
        self.actions.iter().all(|a| a.trivial)
    }
}

pub fn monodromy_report(
    lattice: &IntegerLattice,
    sub: &RootSubsystem,
    psi: &[LatticeIsometry],
) -> Result<Vec<ComponentMonodromy>, PipelineError> {
    let mut out = Vec::new();
    for comp in &sub.components {
        let block = block_of(lattice, &sub.simple_roots[comp.nodes[0]]).map(str::to_string);
        let n = comp.nodes.len();
        let mut actions = Vec::new();
        for s in psi {
            let mut iso = vec![vec![0i64; n]; n];
            for (j, &node) in comp.nodes.iter().enumerate() {
                let image = s.matrix.mul_vec(&sub.simple_roots[node]);
                let coords = sub
                    .component_coordinates(lattice, comp, &image)
                    .ok_or(PipelineError::ComponentNotPreserved(s.name.clone()))?;
                for (i, c) in coords.into_iter().enumerate() {
                    iso[i][j] = c;
                }
            }
            let dec = weyl_decompose(comp, &iso)?;
            let trivial = dec.is_trivial();
            let folded = if trivial {
                None
            } else {
                Some(fold_by_automorphism(comp, &dec.sigma)?.to_string())
            };
            actions.push(IsometryMonodromy {
                isometry: s.name.clone(),
                sigma: dec.sigma,
                weyl_length: dec.weyl_word.len(),
                trivial,
                folded,
            });
        }
        out.push(ComponentMonodromy {
            block,
            label: comp.label,
            actions,
        });
    }
    Ok(out)
}
