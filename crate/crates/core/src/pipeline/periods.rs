//! Period triples in the K3 lattice and their singularity sets.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::PipelineError;
use crate::exact::{integer_kernel, primitive_integer_vector, rat, IntMatrix, Rational};
use crate::lattice::{
    enumerate_roots, generic_orthogonal_vector, orthogonal_root_set, IntegerLattice, LatticeVector,
    NegativeDefiniteSublattice, RationalVector,
};
use crate::root_systems::{extract_simple_roots, RootSubsystem};

pub const E8_NAMES: [&str; 2] = ["E8_1", "E8_2"];
pub const H_NAMES: [&str; 3] = ["H1", "H2", "H3"];

/// How one (−E8) block enters `x₁`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockChoice {
    /// `x₁` has no component in the block.
    Unperturbed,
    /// `x₁` gets a generic component orthogonal to these simple roots (1-based).
    Keep(BTreeSet<usize>),
}

impl BlockChoice {
    pub fn keep(nodes: &[usize]) -> Self {
        BlockChoice::Keep(nodes.iter().copied().collect())
    }

    pub fn is_perturbed(&self) -> bool {
        matches!(self, BlockChoice::Keep(_))
    }
}

impl fmt::Display for BlockChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockChoice::Unperturbed => write!(f, "all"),
            BlockChoice::Keep(s) if s.is_empty() => write!(f, "none"),
            BlockChoice::Keep(s) => {
                let parts: Vec<String> = s.iter().map(ToString::to_string).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

impl FromStr for BlockChoice {
    type Err = PipelineError;

    /// `all` (unperturbed block), `none`, or a comma list of node indices.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "all" | "unperturbed" => return Ok(BlockChoice::Unperturbed),
            "none" | "" => return Ok(BlockChoice::Keep(BTreeSet::new())),
            _ => {}
        }
        let mut set = BTreeSet::new();
        for part in s.split(',') {
            let i: usize = part
                .trim()
                .parse()
                .map_err(|_| PipelineError::BadKeepList(s.to_string()))?;
            set.insert(i);
        }
        Ok(BlockChoice::Keep(set))
    }
}

impl Serialize for BlockChoice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            BlockChoice::Unperturbed => s.serialize_str("all"),
            BlockChoice::Keep(set) => set.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for BlockChoice {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Nodes(BTreeSet<usize>),
            Word(String),
        }
        match Raw::deserialize(d)? {
            Raw::Nodes(set) => Ok(BlockChoice::Keep(set)),
            Raw::Word(w) => w.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// `(x₁, x₂, x₃)` with rational entries. The effective norm of `xᵢ` is
/// `scale[i] · xᵢ²`, so the three effective norms agree.
#[derive(Clone, Debug)]
pub struct PeriodTriple {
    pub x: [RationalVector; 3],
    pub scale: [Rational; 3],
    /// Block-local perturbation added to `x₁` in each (−E8) block.
    pub perturbation: [Option<RationalVector>; 2],
    pub choices: [BlockChoice; 2],
    /// Common effective norm.
    pub ell: Rational,
}

fn h_period(lattice: &IntegerLattice, i: usize) -> RationalVector {
    let b = lattice.block(H_NAMES[i]).expect("K3 blocks");
    lattice.embed(b, &[rat(1, 1), rat(2, 1)])
}

/// `xᵢ = v₁ⁱ + 2v₂ⁱ` in block `Hⁱ`.
pub fn standard_periods(lattice: &IntegerLattice) -> PeriodTriple {
    PeriodTriple {
        x: [0, 1, 2].map(|i| h_period(lattice, i)),
        scale: [rat(1, 1), rat(1, 1), rat(1, 1)],
        perturbation: [None, None],
        choices: [BlockChoice::Unperturbed, BlockChoice::Unperturbed],
        ell: rat(4, 1),
    }
}

const MAX_HALVINGS: u32 = 64;

/// `x₁ = v₁¹ + 2v₂¹ + t(u¹ + u²)` with `t = 2⁻ᵏ` the first value giving
/// `9t²|u²| < 4`; `x₂, x₃` carry squared scale `ℓ/4` where `ℓ = x₁²`.
///
/// The bound rules out roots `h + e` orthogonal to the periods with
/// `m = h·(v₁¹ + 2v₂¹) ≠ 0`, `h` in the `H` blocks and `e` in the (−E8)
/// blocks: orthogonality gives `m = −t(e·u)`, and Cauchy–Schwarz with
/// `|e²| ≤ 2 + m²/4` forces `m² ≤ t²|u²|(2 + m²/4)`.
pub fn perturbed_periods(
    lattice: &IntegerLattice,
    choices: [BlockChoice; 2],
) -> Result<PeriodTriple, PipelineError> {
    let mut periods = standard_periods(lattice);
    let mut raw: [Option<RationalVector>; 2] = [None, None];
    for (i, choice) in choices.iter().enumerate() {
        if let BlockChoice::Keep(keep) = choice {
            raw[i] = Some(generic_orthogonal_vector(lattice, E8_NAMES[i], keep)?);
        }
    }
    let u_norm: Rational = raw
        .iter()
        .flatten()
        .map(|u| lattice.inner_product(u, u).expect("rank 22"))
        .sum();
    let mut t = Rational::one();
    let mut k = 0;
    let ell = loop {
        let shift = &t * &t * &u_norm;
        if (&shift * rat(-9, 1)) < rat(4, 1) {
            break rat(4, 1) + shift;
        }
        k += 1;
        if k > MAX_HALVINGS {
            return Err(PipelineError::PerturbationTooLarge);
        }
        t /= rat(2, 1);
    };
    for (i, u) in raw.iter().enumerate() {
        if let Some(u) = u {
            for (slot, c) in periods.x[0].iter_mut().zip(u) {
                *slot += &t * c;
            }
            let b = lattice.block(E8_NAMES[i]).unwrap();
            periods.perturbation[i] = Some(lattice.restrict(b, u).iter().map(|c| &t * c).collect());
        }
    }
    let quarter = &ell / rat(4, 1);
    periods.scale = [rat(1, 1), quarter.clone(), quarter];
    periods.choices = choices;
    periods.ell = ell;
    Ok(periods)
}

/// The triple for a pair of block choices: standard when both blocks are
/// unperturbed, perturbed otherwise.
pub fn periods_for(lattice: &IntegerLattice, choices: [BlockChoice; 2]) -> Result<PeriodTriple, PipelineError> {
    if choices.iter().all(|c| !c.is_perturbed()) {
        Ok(standard_periods(lattice))
    } else {
        perturbed_periods(lattice, choices)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodCheck {
    pub orthogonal: bool,
    pub positive: bool,
    pub equal_effective_norms: bool,
}

impl PeriodCheck {
    pub fn ok(&self) -> bool {
        self.orthogonal && self.positive && self.equal_effective_norms
    }
}

pub fn check_periods(lattice: &IntegerLattice, p: &PeriodTriple) -> PeriodCheck {
    let ip = |a: &RationalVector, b: &RationalVector| lattice.inner_product(a, b).expect("rank 22");
    let norms: Vec<Rational> = p.x.iter().map(|x| ip(x, x)).collect();
    let effective: Vec<Rational> = norms.iter().zip(&p.scale).map(|(n, s)| n * s).collect();
    PeriodCheck {
        orthogonal: (0..3).all(|i| (i + 1..3).all(|j| ip(&p.x[i], &p.x[j]).is_zero())),
        positive: norms.iter().all(Signed::is_positive) && p.scale.iter().all(Signed::is_positive),
        equal_effective_norms: effective.iter().all(|e| *e == p.ell),
    }
}

/// `{d ∈ L : d² = −2, d·x₁ = d·x₂ = d·x₃ = 0}` by short-vector enumeration
/// in an integral basis of the orthogonal complement.
pub fn singularity_set(lattice: &IntegerLattice, p: &PeriodTriple) -> Result<RootSubsystem, PipelineError> {
    let n = lattice.rank();
    let mut pairing = IntMatrix::zeros(3, n);
    for (r, x) in p.x.iter().enumerate() {
        let xi = primitive_integer_vector(x);
        let row = lattice.gram().mul_vec(&xi);
        for (j, v) in row.into_iter().enumerate() {
            pairing[(r, j)] = v;
        }
    }
    let basis = integer_kernel(&pairing);
    let sub = NegativeDefiniteSublattice::new(lattice, &basis).map_err(|_| PipelineError::ComplementNotDefinite)?;
    let roots = enumerate_roots(&sub);
    Ok(extract_simple_roots(lattice, &roots)?)
}

/// The per-block prediction `{d ∈ (−E8)ⁱ : d·uᵢ = 0}`, sorted.
pub fn structured_singularity_set(lattice: &IntegerLattice, p: &PeriodTriple) -> Result<Vec<LatticeVector>, PipelineError> {
    let mut out = Vec::new();
    for (i, name) in E8_NAMES.iter().enumerate() {
        let b = lattice.block(name)?;
        let local = p.perturbation[i].clone().unwrap_or_else(|| vec![Rational::zero(); 8]);
        out.extend(orthogonal_root_set(lattice, name, &lattice.embed(b, &local))?);
    }
    out.sort();
    Ok(out)
}

/// Name of the (−E8) block containing `v`, if any.
pub fn block_of(lattice: &IntegerLattice, v: &[BigInt]) -> Option<&'static str> {
    E8_NAMES
        .iter()
        .find(|name| lattice.is_supported_in(lattice.block(name).unwrap(), v))
        .copied()
}
