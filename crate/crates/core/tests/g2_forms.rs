use g2orbifold::exact::{rat, RatMatrix};
use g2orbifold::g2_forms::*;
use g2orbifold::pipeline::Kind;
use g2orbifold::su2_groups::tau;
use g2orbifold::torus_actions::torus_part;

fn diag(d: [i64; 3]) -> RatMatrix {
    RatMatrix::diagonal(&d.map(|x| rat(x, 1)))
}

#[test]
fn metric_of_standard_phi_is_identity() {
    assert!(metric_from_phi(&standard_phi()).is_identity());
}

#[test]
fn metric_is_cubic_in_phi() {
    let phi2 = standard_phi().scale(&rat(2, 1));
    assert_eq!(metric_from_phi(&phi2), RatMatrix::identity(7).scale(&rat(8, 1)));
}

#[test]
fn flipping_one_term_breaks_the_metric() {
    let mut phi = standard_phi();
    let e123 = ExteriorForm::from_terms(7, 3, &[(&[1, 2, 3], 2)]);
    phi = phi.add(&e123.neg());
    assert!(!metric_from_phi(&phi).is_identity());
}

#[test]
fn split_forms_match_standard() {
    let omega = SelfDualBasis::standard();
    assert_eq!(split_phi(&omega), standard_phi());
    assert!(hodge_dual_check());
    assert_eq!(split_star_phi(&omega), hodge_star(&standard_phi()));
    assert_ne!(split_phi(&omega.permuted([1, 0, 2])), standard_phi());
}

#[test]
fn selfdual_forms_are_orthogonal() {
    let omega = SelfDualBasis::standard();
    let vol = SelfDualBasis::volume();
    for i in 0..3 {
        for j in 0..3 {
            let w = wedge(&omega.omega[i], &omega.omega[j]).unwrap();
            let expected = if i == j { vol.scale(&rat(2, 1)) } else { ExteriorForm::zero(7, 4) };
            assert_eq!(w, expected, "{i} {j}");
        }
    }
}

#[test]
fn tau_actions_on_selfdual_forms() {
    let expected = [diag([1, -1, -1]), diag([-1, 1, -1]), diag([-1, -1, 1])];
    for (k, e) in (1..=3).zip(expected) {
        let m = tau(k).real_form().unwrap();
        assert_eq!(action_matrix_on_selfdual(&m).unwrap(), e, "tau{k}");
    }
}

#[test]
fn both_kinds_align_with_torus_rotations() {
    for kind in Kind::ALL {
        let pairs: Vec<(RatMatrix, RatMatrix)> = kind
            .taus()
            .iter()
            .zip(kind.torus_parts())
            .map(|(t, p)| (t.real_form().unwrap(), torus_part(p).rotation_matrix()))
            .collect();
        let p = find_basis_alignment(&pairs).unwrap();
        assert!(p.is_some(), "{kind:?}");
    }
}
