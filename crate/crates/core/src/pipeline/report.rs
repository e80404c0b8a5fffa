//! One orbifold evaluated end to end, and its serialized report.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::betti::{betti_numbers, paired_group, BettiNumbers};
use super::flat::{flat_model_report, FlatModelReport};
use super::isometries::{construct_isometries, IsometryVerification, Kind};
use super::monodromy::{monodromy_report, ComponentMonodromy};
use super::periods::{block_of, check_periods, periods_for, singularity_set, structured_singularity_set, BlockChoice};
use super::PipelineError;
use crate::g2_forms::find_basis_alignment;
use crate::lattice::IntegerLattice;
use crate::root_systems::{gauge_group, AdeLabel, GaugeGroupReport};
use crate::torus_actions::{is_free, standard_group, torus_part};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbifoldSpec {
    pub kind: Kind,
    pub keep1: BlockChoice,
    pub keep2: BlockChoice,
}

impl OrbifoldSpec {
    pub fn new(kind: Kind, keep1: BlockChoice, keep2: BlockChoice) -> Self {
        Self { kind, keep1, keep2 }
    }

    pub fn standard(kind: Kind) -> Self {
        Self::new(kind, BlockChoice::Unperturbed, BlockChoice::Unperturbed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Options {
    /// Compare the enumerated singularity set with the per-block prediction.
    pub crosscheck: bool,
    /// Attach the flat-model report for cyclic `Γ` of this order.
    pub flat_n: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            crosscheck: true,
            flat_n: None,
        }
    }
}

/// `{ "kind": 1, "keep1": [..], "keep2": [..], "options": {..} }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    #[serde(flatten)]
    pub spec: OrbifoldSpec,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    fn new(name: &str, passed: bool, witness: impl FnOnce() -> String) -> Self {
        Self {
            name: name.to_string(),
            passed,
            witness: (!passed).then(witness),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityEntry {
    pub block: Option<String>,
    pub label: AdeLabel,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaugeGroupEntry {
    pub factors: Vec<AdeLabel>,
    pub abelian_rank: usize,
    pub total_rank: usize,
    pub display: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodSummary {
    pub ell: String,
    pub squared_scales: [String; 3],
    /// Block-local perturbation of `x₁` in Bourbaki coordinates.
    pub perturbation: [Option<Vec<String>>; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbifoldReport {
    pub schema_version: u32,
    pub spec: OrbifoldSpec,
    pub periods: PeriodSummary,
    pub root_count: usize,
    pub singularities: Vec<SingularityEntry>,
    pub gauge_group: GaugeGroupEntry,
    pub betti: BettiNumbers,
    pub singular_points: usize,
    pub monodromy: Vec<ComponentMonodromy>,
    pub isometries: IsometryVerification,
    /// Verification conditions; the construction is valid when all pass.
    pub checks: Vec<Check>,
    /// Closed-form predictions compared with the computed values.
    pub claims: Vec<Check>,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flat_model: Option<FlatModelReport>,
    pub conventions: Vec<String>,
}

impl OrbifoldReport {
    pub fn total_rank(&self) -> usize {
        self.gauge_group.total_rank
    }

    pub fn labels(&self) -> Vec<AdeLabel> {
        self.singularities.iter().map(|s| s.label).collect()
    }

    pub fn claims_hold(&self) -> bool {
        self.claims.iter().all(|c| c.passed)
    }
}

pub fn conventions() -> Vec<String> {
    [
        "E8 simple roots use Bourbaki numbering; lattice vectors are block-local coordinates in the simple-root basis",
        "x2 and x3 carry the squared scale ell/4, so the vector multiplier is its positive square root and all effective norms equal ell",
        "self-dual forms: omega_i ^ omega_j = 2 delta_ij vol_S with vol_S = e4567",
        "psi acts on a perturbed E8 block by -Id when its sign table sends x1 to -x1 and by +Id otherwise; unperturbed blocks are fixed",
        "singular classes may lie in either E8 block; the monodromy analysis runs over the union",
        "b2 = dim of invariant H2 of S x T3 minus the rank of the singularity set",
    ]
    .map(str::to_string)
    .to_vec()
}

pub fn evaluate(lattice: &IntegerLattice, spec: &OrbifoldSpec, options: &Options) -> Result<OrbifoldReport, PipelineError> {
    let periods = periods_for(lattice, [spec.keep1.clone(), spec.keep2.clone()])?;
    let period_check = check_periods(lattice, &periods);
    let sub = singularity_set(lattice, &periods)?;
    let gauge = gauge_group(&sub.components)?;
    let (psi, verification) = construct_isometries(lattice, spec.kind, &periods);
    let monodromy = monodromy_report(lattice, &sub, &psi)?;

    let mut checks = vec![Check::new("periods", period_check.ok(), || format!("{period_check:?}"))];
    if options.crosscheck {
        let structured = structured_singularity_set(lattice, &periods)?;
        let agree = structured == sub.roots;
        checks.push(Check::new("singularities_match_blocks", agree, || {
            format!("enumerated {} roots, per-block prediction {}", sub.roots.len(), structured.len())
        }));
    }
    checks.push(Check::new("isometries", verification.ok(), || verification.failures.join(", ")));

    let group = paired_group(spec.kind, &psi)?;
    let betti = betti_numbers(&group, sub.rank());
    checks.push(Check::new("invariants_two_methods", betti.methods_agree(), || {
        format!("H2 {:?}, H3 {:?}", betti.invariant_h2, betti.invariant_h3)
    }));

    let pairs: Vec<_> = spec
        .kind
        .taus()
        .iter()
        .zip(spec.kind.torus_parts())
        .map(|(t, p)| (t.real_form().expect("Gaussian"), torus_part(p).rotation_matrix()))
        .collect();
    let aligned = matches!(find_basis_alignment(&pairs), Ok(Some(_)));
    checks.push(Check::new("pullback_alignment", aligned, || "no signed permutation aligns the frames".into()));
    let torus = standard_group(&spec.kind.torus_parts());
    let free = is_free(&torus);
    checks.push(Check::new("torus_action_free", free.free, || format!("{:?}", free.verdicts)));

    let rank = gauge.total_rank as i64;
    let claims = vec![
        Check::new("b2_equals_16_minus_rank", betti.b2 == 16 - rank, || format!("b2 = {}, 16 - rank = {}", betti.b2, 16 - rank)),
        Check::new("b3_equals_7", betti.b3 == 7, || format!("b3 = {}", betti.b3)),
        Check::new("b1N_equals_0", betti.b1n == 0, || format!("b1N = {}", betti.b1n)),
    ];

    let singularities = sub
        .components
        .iter()
        .map(|c| SingularityEntry {
            block: block_of(lattice, &sub.simple_roots[c.nodes[0]]).map(str::to_string),
            label: c.label,
            rank: c.label.rank(),
        })
        .collect();
    let valid = checks.iter().all(|c| c.passed);
    Ok(OrbifoldReport {
        schema_version: SCHEMA_VERSION,
        spec: spec.clone(),
        periods: PeriodSummary {
            ell: periods.ell.to_string(),
            squared_scales: periods.scale.clone().map(|s| s.to_string()),
            perturbation: periods
                .perturbation
                .clone()
                .map(|p| p.map(|v| v.iter().map(ToString::to_string).collect())),
        },
        root_count: sub.roots.len(),
        singularities,
        gauge_group: gauge_entry(&gauge),
        betti,
        singular_points: sub.components.len(),
        monodromy,
        isometries: verification,
        checks,
        claims,
        valid,
        flat_model: options.flat_n.map(|n| flat_model_report(spec.kind, n)),
        conventions: conventions(),
    })
}

fn gauge_entry(g: &GaugeGroupReport) -> GaugeGroupEntry {
    GaugeGroupEntry {
        factors: g.nonabelian_factors.clone(),
        abelian_rank: g.abelian_rank,
        total_rank: g.total_rank,
        display: g.to_string(),
    }
}

impl fmt::Display for OrbifoldReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "kind {} keep1={} keep2={}",
            u8::from(self.spec.kind),
            self.spec.keep1,
            self.spec.keep2
        )?;
        writeln!(f, "  roots: {}  singular points: {}", self.root_count, self.singular_points)?;
        for s in &self.singularities {
            writeln!(f, "  singularity {} in {}", s.label, s.block.as_deref().unwrap_or("?"))?;
        }
        writeln!(f, "  gauge group: {}", self.gauge_group.display)?;
        writeln!(f, "  b2 = {}  b3 = {}  b1(N) = {}", self.betti.b2, self.betti.b3, self.betti.b1n)?;
        for m in &self.monodromy {
            let desc: Vec<String> = m
                .actions
                .iter()
                .map(|a| match &a.folded {
                    None => format!("{}: trivial", a.isometry),
                    Some(l) => format!("{}: flip -> {l}", a.isometry),
                })
                .collect();
            writeln!(f, "  monodromy {}: {}", m.label, desc.join(", "))?;
        }
        for c in self.checks.iter().chain(&self.claims) {
            let status = if c.passed { "ok" } else { "FAILED" };
            match &c.witness {
                Some(w) => writeln!(f, "  [{status}] {} ({w})", c.name)?,
                None => writeln!(f, "  [{status}] {}", c.name)?,
            }
        }
        write!(f, "  valid: {}", self.valid)
    }
}
