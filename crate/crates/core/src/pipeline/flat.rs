//! The flat model `(ℂ²/Γ × T³)/H` with cyclic `Γ`.

use num_integer::Integer;
use serde::Serialize;

use super::isometries::Kind;
use crate::exact::RatMatrix;
use crate::g2_forms::{action_matrix_on_selfdual, find_basis_alignment};
use crate::root_systems::{abstract_component, fold_by_automorphism, AdeLabel};
use crate::su2_groups::{closure, conjugation_action, cyclic_gamma, induced_diagram_automorphism, AntiUnitaryMap, DiagramAction};
use crate::torus_actions::{common_fixed_directions, fixed_axes, is_free, is_free_by_grid, standard_group};

pub const GRID_DENOMINATOR: i64 = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatModelReport {
    pub kind: Kind,
    pub n: usize,
    pub gamma_order: usize,
    /// Every paired τ satisfies `τ Γ τ⁻¹ = Γ`.
    pub normalizes: bool,
    /// `τ α τ⁻¹ = α^m`, per paired τ.
    pub exponents: Vec<(String, Option<i64>)>,
    /// `γ αᵏ γ⁻¹ = α⁻ᵏ` for all `k` (first kind).
    pub monodromy_relation: Option<bool>,
    /// Every element generated by the paired τ's commutes with `α` (second kind).
    pub commutes_with_alpha: Option<bool>,
    pub torus_order: usize,
    pub torus_abelian: bool,
    pub torus_max_element_order: usize,
    pub free: bool,
    pub free_by_grid: bool,
    pub common_fixed_directions: usize,
    pub fixed_axes: Vec<usize>,
    /// Signed permutation aligning the self-dual forms with the torus frame.
    pub alignment: Option<Vec<Vec<i64>>>,
    /// The aligned action matrix equals the torus rotation for every element.
    pub aligned_all_elements: bool,
    /// `α` acts trivially on the self-dual forms; `None` when `α` has
    /// entries outside ℚ(i).
    pub alpha_acts_trivially: Option<bool>,
    pub monodromy: DiagramAction,
    pub folded: Option<String>,
    pub note: Option<String>,
}

impl FlatModelReport {
    pub fn checks_pass(&self) -> bool {
        self.normalizes
            && self.monodromy_relation.unwrap_or(true)
            && self.commutes_with_alpha.unwrap_or(true)
            && self.free
            && self.free == self.free_by_grid
            && self.alignment.is_some()
            && self.aligned_all_elements
            && self.alpha_acts_trivially.unwrap_or(true)
    }
}

fn to_i64(m: &RatMatrix) -> Vec<Vec<i64>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|x| i64::try_from(x.to_integer()).expect("small entries")).collect())
        .collect()
}

fn power(g: &AntiUnitaryMap, k: usize) -> AntiUnitaryMap {
    (0..k).fold(AntiUnitaryMap::identity(g.conductor()), |acc, _| acc.compose(g))
}

pub fn flat_model_report(kind: Kind, n: usize) -> FlatModelReport {
    assert!(n >= 1, "cyclic group order must be positive");
    let gamma = cyclic_gamma(n);
    let c = (n as u32).lcm(&4);
    let alpha = gamma.generators[0].embed(c);
    let taus = kind.taus();
    let names = kind.tau_indices().map(|k| format!("tau{k}"));

    let actions: Vec<_> = taus.iter().map(|t| conjugation_action(t, &gamma)).collect();
    let normalizes = actions.iter().all(Result::is_ok);
    let exponents: Vec<(String, Option<i64>)> = names
        .iter()
        .zip(&actions)
        .map(|(nm, a)| (nm.clone(), a.as_ref().ok().and_then(|a| a.exponent)))
        .collect();

    let monodromy_relation = (kind == Kind::First).then(|| {
        let g = taus[1].embed(c);
        let g_inv = g.inverse();
        (0..n).all(|k| g.compose(&power(&alpha, k)).compose(&g_inv) == power(&alpha, (n - k) % n))
    });
    let commutes_with_alpha = (kind == Kind::Second).then(|| {
        let h2 = closure(&[taus[0].clone(), taus[1].clone()], 64).expect("finite");
        h2.iter().all(|h| {
            let h = h.embed(c);
            h.compose(&alpha) == alpha.compose(&h)
        })
    });

    let torus = standard_group(&kind.torus_parts());
    let freeness = is_free(&torus);
    let free_by_grid = is_free_by_grid(&torus, GRID_DENOMINATOR);

    let rotations = kind.torus_parts().map(|p| crate::torus_actions::torus_part(p).rotation_matrix());
    let pairs: Vec<(RatMatrix, RatMatrix)> = taus
        .iter()
        .zip(&rotations)
        .map(|(t, r)| (t.real_form().expect("tau maps are Gaussian"), r.clone()))
        .collect();
    let alignment = find_basis_alignment(&pairs).ok().flatten();
    let aligned_all_elements = alignment.as_ref().is_some_and(|p| {
        torus.elements.iter().all(|e| {
            let c2 = e
                .word
                .iter()
                .fold(AntiUnitaryMap::identity(4), |acc, &g| acc.compose(&taus[g]));
            let a = action_matrix_on_selfdual(&c2.real_form().expect("Gaussian"));
            a.is_ok_and(|a| p.mul(&a).mul(&p.transpose()) == e.map.rotation_matrix())
        })
    });
    let alpha_acts_trivially = alpha
        .real_form()
        .ok()
        .map(|m| action_matrix_on_selfdual(&m).is_ok_and(|a| a.is_identity()));

    let mut monodromy = DiagramAction::Trivial;
    for (_, m) in &exponents {
        if let Some(m) = m {
            if induced_diagram_automorphism(*m, n) == Ok(DiagramAction::Flip) {
                monodromy = DiagramAction::Flip;
            }
        }
    }
    let folded = (monodromy == DiagramAction::Flip).then(|| {
        let comp = abstract_component(AdeLabel::A(n - 1));
        let sigma: Vec<usize> = (0..n - 1).rev().collect();
        fold_by_automorphism(&comp, &sigma).map_or_else(|e| e.to_string(), |f| f.to_string())
    });
    let note = (kind == Kind::First && n == 2).then(|| {
        "inversion on Z/2 is the identity, so the A1 diagram has no flip; the nontrivial monodromy expected for n >= 2 only appears from n = 3".to_string()
    });

    FlatModelReport {
        kind,
        n,
        gamma_order: gamma.order(),
        normalizes,
        exponents,
        monodromy_relation,
        commutes_with_alpha,
        torus_order: torus.order(),
        torus_abelian: torus.is_abelian(),
        torus_max_element_order: torus.element_orders().into_iter().max().unwrap_or(1),
        free: freeness.free,
        free_by_grid,
        common_fixed_directions: common_fixed_directions(&torus),
        fixed_axes: fixed_axes(&torus),
        alignment: alignment.as_ref().map(to_i64),
        aligned_all_elements,
        alpha_acts_trivially,
        monodromy,
        folded,
        note,
    }
}
