//! The acceptance suite: one verdict per criterion, shared by the test
//! target and the `verify-all` command.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::exact::{rat, RatMatrix};
use crate::g2_forms::{find_basis_alignment, hodge_dual_check, metric_from_phi, split_phi, standard_phi, SelfDualBasis};
use crate::lattice::{enumerate_roots, reflection_closure, IntegerLattice, LatticeVector, NegativeDefiniteSublattice};
use crate::pipeline::{
    catalog, catalog_choices, construct_isometries, evaluate, flat_model_report, odd_sign_example,
    realized_labels, singularity_set, standard_periods, CatalogEntry, Kind, Options, OrbifoldSpec,
};
use crate::root_systems::{abstract_component, gauge_group, weyl_decompose, AdeLabel};
use crate::su2_groups::{binary_polyhedral, cyclic_gamma, DiagramAction, GroupLabel};
use crate::torus_actions::{is_free, is_free_by_grid, standard_group, torus_part, TorusPart};

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} criterion {:>2} {}: {}", self.id, self.name, self.detail)
    }
}

fn result(id: u8, name: &'static str, passed: bool, detail: String) -> CriterionResult {
    CriterionResult { id, name, passed, detail }
}

/// Inputs shared by several criteria.
pub struct Context {
    pub lattice: IntegerLattice,
    pub catalogs: Vec<(Kind, Vec<CatalogEntry>)>,
}

impl Context {
    pub fn build() -> Self {
        let lattice = IntegerLattice::k3();
        let catalogs = Kind::ALL
            .iter()
            .map(|&k| (k, catalog(&lattice, k, &Options::default()).expect("catalog entries evaluate")))
            .collect();
        Self { lattice, catalogs }
    }

    fn entries(&self) -> impl Iterator<Item = (Kind, &CatalogEntry)> {
        self.catalogs.iter().flat_map(|(k, es)| es.iter().map(move |e| (*k, e)))
    }
}

fn unit(n: usize, i: usize) -> LatticeVector {
    (0..n).map(|j| BigInt::from(i64::from(i == j))).collect()
}

pub fn root_enumeration(ctx: &Context) -> CriterionResult {
    let l = &ctx.lattice;
    let mut details = Vec::new();
    let mut ok = true;
    for block in l.e8_blocks() {
        let basis: Vec<LatticeVector> = (0..block.size).map(|i| unit(l.rank(), block.offset + i)).collect();
        let sub = NegativeDefiniteSublattice::new(l, &basis).expect("(-E8) is negative definite");
        let enumerated: BTreeSet<LatticeVector> = enumerate_roots(&sub).into_iter().collect();
        let oracle: BTreeSet<LatticeVector> = reflection_closure(l, &basis).into_iter().collect();
        ok &= enumerated.len() == 240 && enumerated == oracle;
        details.push(format!("{}: {} enumerated, {} by closure", block.name, enumerated.len(), oracle.len()));
    }
    result(1, "root enumeration", ok, details.join("; "))
}

pub fn standard_construction(ctx: &Context) -> CriterionResult {
    let sub = singularity_set(&ctx.lattice, &standard_periods(&ctx.lattice)).expect("standard periods");
    let labels: Vec<AdeLabel> = sub.components.iter().map(|c| c.label).collect();
    let g = gauge_group(&sub.components).expect("rank 16");
    let ok = labels == [AdeLabel::E(8), AdeLabel::E(8)] && g.abelian_rank == 0 && g.to_string() == "E8 x E8";
    result(
        2,
        "standard construction",
        ok,
        format!("{} roots, components {labels:?}, gauge group {g}, abelian rank {}", sub.roots.len(), g.abelian_rank),
    )
}

pub fn betti_numbers(ctx: &Context) -> CriterionResult {
    let mut failing = Vec::new();
    let mut total = 0;
    for (kind, e) in ctx.entries() {
        total += 1;
        let b = &e.report.betti;
        let rank = e.report.total_rank() as i64;
        if !(b.b3 == 7 && b.b1n == 0 && b.b2 == 16 - rank) {
            failing.push(format!(
                "kind {} ({}, {}): b2={} (16-rank={}), b3={}, b1N={}",
                u8::from(kind),
                e.labels[0],
                e.labels[1],
                b.b2,
                16 - rank,
                b.b3,
                b.b1n
            ));
        }
    }
    let standard = ctx
        .entries()
        .find(|(k, e)| *k == Kind::First && e.labels == ["E8", "E8"])
        .map(|(_, e)| e.report.betti.first_generator_h2)
        .unwrap_or(0);
    let ok = failing.is_empty() && standard == 19;
    let mut detail = format!(
        "{} of {total} entries satisfy b2 = 16 - rank, b3 = 7, b1N = 0; first-generator invariant H2 = {standard}",
        total - failing.len()
    );
    if let Some(first) = failing.first() {
        detail.push_str(&format!("; first failure {first}"));
    }
    result(3, "betti numbers", ok, detail)
}

pub fn catalog_completeness(ctx: &Context) -> CriterionResult {
    let sweep = realized_labels(&ctx.lattice).expect("label sweep");
    let expected: BTreeSet<String> = catalog_choices().into_iter().map(|(l, _)| l).collect();
    let ok = sweep.labels == expected;
    let got: Vec<&String> = sweep.labels.iter().collect();
    result(
        4,
        "catalog completeness",
        ok,
        format!("{} block choices realize {got:?}", sweep.choices),
    )
}

pub fn dual_method_agreement(ctx: &Context) -> CriterionResult {
    let mut total = 0;
    let mut agree = 0;
    for (_, e) in ctx.entries() {
        total += 1;
        if e.report.checks.iter().any(|c| c.name == "singularities_match_blocks" && c.passed) {
            agree += 1;
        }
    }
    result(
        5,
        "dual-method agreement",
        total > 0 && agree == total,
        format!("{agree} of {total} catalog entries agree"),
    )
}

pub fn flat_models(_ctx: &Context) -> CriterionResult {
    let mut ok = true;
    let mut notes = Vec::new();
    for n in 2..=8 {
        let r = flat_model_report(Kind::First, n);
        ok &= r.monodromy_relation == Some(true) && r.normalizes;
    }
    for n in 2..=8 {
        let r = flat_model_report(Kind::Second, n);
        ok &= r.commutes_with_alpha == Some(true) && r.normalizes;
    }
    notes.push("monodromy relation and H2 commutation hold for n = 2..8".to_string());
    let h1 = standard_group(&[TorusPart::Beta, TorusPart::Gamma]);
    let h2 = standard_group(&[TorusPart::BetaPrime, TorusPart::Eta]);
    let groups_ok = h1.order() == 4
        && h1.is_abelian()
        && h2.order() == 8
        && !h2.is_abelian()
        && h2.element_orders().contains(&4);
    ok &= groups_ok;
    notes.push(format!(
        "H1 order {} abelian {}, H2 order {} abelian {} max element order {}",
        h1.order(),
        h1.is_abelian(),
        h2.order(),
        h2.is_abelian(),
        h2.element_orders().into_iter().max().unwrap_or(1)
    ));
    for (name, g) in [("H1", &h1), ("H2", &h2)] {
        let free = is_free(g).free;
        let grid = is_free_by_grid(g, crate::pipeline::GRID_DENOMINATOR);
        ok &= free && grid;
        notes.push(format!("{name} free {free}, grid {grid}"));
    }
    result(6, "flat models", ok, notes.join("; "))
}

pub fn g2_identities(_ctx: &Context) -> CriterionResult {
    let phi = standard_phi();
    let metric = metric_from_phi(&phi).is_identity();
    let star = hodge_dual_check();
    let split = split_phi(&SelfDualBasis::standard()) == phi;
    let mut aligned = true;
    for kind in Kind::ALL {
        let pairs: Vec<(RatMatrix, RatMatrix)> = kind
            .taus()
            .iter()
            .zip(kind.torus_parts())
            .map(|(t, p)| (t.real_form().expect("Gaussian"), torus_part(p).rotation_matrix()))
            .collect();
        let expected = match kind {
            Kind::First => [[-1, -1, 1], [-1, 1, -1]],
            Kind::Second => [[-1, -1, 1], [1, -1, -1]],
        };
        let targets_ok = pairs
            .iter()
            .zip(expected)
            .all(|((_, r), d)| *r == RatMatrix::diagonal(&d.map(|x| rat(x, 1))));
        let found = matches!(find_basis_alignment(&pairs), Ok(Some(_)));
        aligned &= targets_ok && found && flat_model_report(kind, 4).aligned_all_elements;
    }
    result(
        7,
        "G2-form identities",
        metric && star && split && aligned,
        format!("metric = I7 {metric}, star expansion {star}, split {split}, alignment {aligned}"),
    )
}

pub fn isometry_verification(ctx: &Context) -> CriterionResult {
    let l = &ctx.lattice;
    let p = standard_periods(l);
    let mut ok = true;
    let mut checked = 0;
    for kind in Kind::ALL {
        let (_, v) = construct_isometries(l, kind, &p);
        ok &= v.ok();
        checked += 1;
    }
    let mut failing = Vec::new();
    for (kind, e) in ctx.entries() {
        checked += 1;
        if !e.report.isometries.ok() {
            failing.push(format!("kind {} {:?}: {:?}", u8::from(kind), e.labels, e.report.isometries.failures));
        }
    }
    let odd_rejected = !odd_sign_example(l).positive_cone_criterion(l, &p);
    ok &= failing.is_empty() && odd_rejected;
    let mut detail = format!(
        "{} of {checked} isometry pairs verified; odd sign map rejected {odd_rejected}",
        checked - failing.len()
    );
    if let Some(f) = failing.first() {
        detail.push_str(&format!("; first failure {f}"));
    }
    result(8, "isometry verification", ok, detail)
}

pub fn monodromy(ctx: &Context) -> CriterionResult {
    let l = &ctx.lattice;
    let mut ok = true;
    let mut notes = Vec::new();
    for kind in Kind::ALL {
        let r = evaluate(l, &OrbifoldSpec::standard(kind), &Options::default()).expect("standard spec");
        let trivial = r.monodromy.iter().all(|m| m.trivial());
        ok &= trivial;
        notes.push(format!("kind {} standard trivial {trivial}", u8::from(kind)));
    }
    let minus_id = |n: usize| -> Vec<Vec<i64>> { (0..n).map(|i| (0..n).map(|j| -i64::from(i == j)).collect()).collect() };
    let e8 = weyl_decompose(&abstract_component(AdeLabel::E(8)), &minus_id(8)).expect("-Id preserves roots");
    let a2 = weyl_decompose(&abstract_component(AdeLabel::A(2)), &minus_id(2)).expect("-Id preserves roots");
    ok &= e8.is_trivial() && a2.sigma == [1, 0];
    notes.push(format!("-Id on E8 trivial {}, on A2 sigma {:?}", e8.is_trivial(), a2.sigma));
    let flips = (3..=8).all(|n| flat_model_report(Kind::First, n).monodromy == DiagramAction::Flip);
    ok &= flips;
    notes.push(format!("flat kind 1 flips for n = 3..8 {flips}"));
    let n2 = flat_model_report(Kind::First, 2);
    notes.push(format!("n = 2 reports {:?} (noted, not asserted)", n2.monodromy));
    result(9, "monodromy", ok, notes.join("; "))
}

pub fn group_orders(_ctx: &Context) -> CriterionResult {
    let mut ok = true;
    let mut notes = Vec::new();
    for n in 1..=8 {
        let g = cyclic_gamma(n);
        ok &= g.order() == n && g.all_special_unitary();
    }
    notes.push("cyclic 1..8".to_string());
    let mut labels: Vec<GroupLabel> = (4..=8).map(GroupLabel::D).collect();
    labels.extend([GroupLabel::E(6), GroupLabel::E(7), GroupLabel::E(8)]);
    for label in labels {
        let g = binary_polyhedral(label).expect("valid label");
        let good = g.order() == label.expected_order() && g.all_special_unitary();
        ok &= good;
        notes.push(format!("{label}: {}", g.order()));
    }
    result(10, "group orders", ok, notes.join(", "))
}

/// Every criterion, in order.
pub fn run_all() -> Vec<CriterionResult> {
    let ctx = Context::build();
    vec![
        root_enumeration(&ctx),
        standard_construction(&ctx),
        betti_numbers(&ctx),
        catalog_completeness(&ctx),
        dual_method_agreement(&ctx),
        flat_models(&ctx),
        g2_identities(&ctx),
        isometry_verification(&ctx),
        monodromy(&ctx),
        group_orders(&ctx),
    ]
}
