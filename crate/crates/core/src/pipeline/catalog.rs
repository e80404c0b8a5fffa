//! Representative keep sets for every connected subdiagram of E8, and the
//! sweep over all of them.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use super::isometries::Kind;
use super::periods::{periods_for, singularity_set, BlockChoice};
use super::report::{evaluate, Options, OrbifoldReport, OrbifoldSpec};
use super::PipelineError;
use crate::lattice::IntegerLattice;

/// `(label, choice)` per connected subdiagram type, `"0"` for the empty one
/// and `E8` for the unperturbed block.
pub fn catalog_choices() -> Vec<(String, BlockChoice)> {
    let keep = |label: &str, nodes: &[usize]| (label.to_string(), BlockChoice::keep(nodes));
    vec![
        keep("0", &[]),
        keep("A1", &[1]),
        keep("A2", &[1, 3]),
        keep("A3", &[1, 3, 4]),
        keep("A4", &[1, 3, 4, 5]),
        keep("A5", &[1, 3, 4, 5, 6]),
        keep("A6", &[1, 3, 4, 5, 6, 7]),
        keep("A7", &[1, 3, 4, 5, 6, 7, 8]),
        keep("D4", &[2, 3, 4, 5]),
        keep("D5", &[2, 3, 4, 5, 6]),
        keep("D6", &[2, 3, 4, 5, 6, 7]),
        keep("D7", &[2, 3, 4, 5, 6, 7, 8]),
        keep("E6", &[1, 2, 3, 4, 5, 6]),
        keep("E7", &[1, 2, 3, 4, 5, 6, 7]),
        ("E8".to_string(), BlockChoice::Unperturbed),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub labels: [String; 2],
    pub report: OrbifoldReport,
}

/// Every pair of representatives, evaluated in parallel.
pub fn catalog(lattice: &IntegerLattice, kind: Kind, options: &Options) -> Result<Vec<CatalogEntry>, PipelineError> {
    let choices = catalog_choices();
    let pairs: Vec<_> = choices
        .iter()
        .flat_map(|a| choices.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    pairs
        .into_par_iter()
        .map(|((la, ca), (lb, cb))| {
            let report = evaluate(lattice, &OrbifoldSpec::new(kind, ca, cb), options)?;
            Ok(CatalogEntry { labels: [la, lb], report })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct LabelSweep {
    /// Block choices evaluated (255 proper keep sets plus the unperturbed block).
    pub choices: usize,
    /// Connected labels realized, with `"0"` when some choice is smooth.
    pub labels: BTreeSet<String>,
    /// Number of choices realizing each label as a component.
    pub counts: BTreeMap<String, usize>,
}

/// Singularity labels in the first block over every proper keep set and the
/// unperturbed block, the second block kept smooth.
pub fn realized_labels(lattice: &IntegerLattice) -> Result<LabelSweep, PipelineError> {
    let mut choices: Vec<BlockChoice> = (0u32..255)
        .map(|mask| BlockChoice::Keep((1..=8).filter(|i| mask >> (i - 1) & 1 == 1).collect()))
        .collect();
    choices.push(BlockChoice::Unperturbed);
    let labels: Vec<Vec<String>> = choices
        .par_iter()
        .map(|c| {
            let p = periods_for(lattice, [c.clone(), BlockChoice::keep(&[])])?;
            let sub = singularity_set(lattice, &p)?;
            let mut ls: Vec<String> = sub.components.iter().map(|c| c.label.to_string()).collect();
            if ls.is_empty() {
                ls.push("0".to_string());
            }
            Ok(ls)
        })
        .collect::<Result<_, PipelineError>>()?;
    let mut counts = BTreeMap::new();
    for ls in &labels {
        for l in ls {
            *counts.entry(l.clone()).or_insert(0) += 1;
        }
    }
    Ok(LabelSweep {
        choices: choices.len(),
        labels: counts.keys().cloned().collect(),
        counts,
    })
}
