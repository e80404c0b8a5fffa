//! End-to-end construction: periods, isometries, singularities, Betti numbers
//! and monodromy for compact G₂ orbifolds built from a K3 surface and T³.

mod betti;
mod catalog;
mod flat;
mod isometries;
mod monodromy;
mod periods;
mod report;

use thiserror::Error;

use crate::lattice::LatticeError;
use crate::root_systems::RootSystemError;

pub use betti::{betti_numbers, paired_group, BettiNumbers, InvariantDimension, PairedGroup};
pub use catalog::{catalog, catalog_choices, realized_labels, CatalogEntry, LabelSweep};
pub use flat::{flat_model_report, FlatModelReport, GRID_DENOMINATOR};
pub use isometries::{
    construct_isometries, odd_sign_example, verify_isometries, IsometryVerification, Kind, LatticeIsometry,
};
pub use monodromy::{monodromy_report, ComponentMonodromy, IsometryMonodromy};
pub use periods::{
    block_of, check_periods, perturbed_periods, periods_for, singularity_set, standard_periods,
    structured_singularity_set, BlockChoice, PeriodCheck, PeriodTriple, E8_NAMES, H_NAMES,
};
pub use report::{evaluate, Check, Config, Options, OrbifoldReport, OrbifoldSpec, SCHEMA_VERSION};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error("no rescaling 2^-k (k <= 64) makes the perturbation of x1 small enough")]
    PerturbationTooLarge,
    #[error("orthogonal complement of the periods is not negative definite")]
    ComplementNotDefinite,
    #[error("cannot parse keep list {0:?}")]
    BadKeepList(String),
    #[error("pairing of isometries with torus maps is not a homomorphism at elements {0}, {1}")]
    InconsistentPairing(usize, usize),
    #[error("{0} does not preserve a singularity component")]
    ComponentNotPreserved(String),
}
