use std::collections::BTreeSet;

use g2orbifold::exact::rat;
use g2orbifold::lattice::{reflection_closure, IntegerLattice, LatticeError};
use g2orbifold::pipeline::*;
use g2orbifold::root_systems::{AdeLabel, RootSubsystem};

fn k3() -> IntegerLattice {
    IntegerLattice::k3()
}

fn labels(sub: &RootSubsystem) -> Vec<AdeLabel> {
    let mut l: Vec<AdeLabel> = sub.components.iter().map(|c| c.label).collect();
    l.sort();
    l
}

#[test]
fn standard_periods_are_orthogonal_of_norm_four() {
    let l = k3();
    let p = standard_periods(&l);
    for i in 0..3 {
        for j in 0..3 {
            let expected = if i == j { rat(4, 1) } else { rat(0, 1) };
            assert_eq!(l.inner_product(&p.x[i], &p.x[j]).unwrap(), expected);
        }
    }
    assert!(p.scale.iter().all(|s| *s == rat(1, 1)));
    assert!(check_periods(&l, &p).ok());
}

#[test]
fn standard_singularities_are_two_e8() {
    let l = k3();
    let sub = singularity_set(&l, &standard_periods(&l)).unwrap();
    assert_eq!(sub.roots.len(), 480);
    assert_eq!(labels(&sub), vec![AdeLabel::E(8), AdeLabel::E(8)]);
    assert_eq!(structured_singularity_set(&l, &standard_periods(&l)).unwrap(), sub.roots);
}

#[test]
fn perturbed_e7_pair() {
    let l = k3();
    let keep = BlockChoice::keep(&[1, 2, 3, 4, 5, 6, 7]);
    let p = perturbed_periods(&l, [keep.clone(), keep]).unwrap();
    assert!(check_periods(&l, &p).ok());
    assert!(p.ell > rat(0, 1));
    assert_eq!(p.scale[1], &p.ell / rat(4, 1));
    let sub = singularity_set(&l, &p).unwrap();
    assert_eq!(labels(&sub), vec![AdeLabel::E(7), AdeLabel::E(7)]);

    // oracle: reflection closure of the kept simple roots in each block
    let e8 = IntegerLattice::minus_e8();
    let simple: Vec<_> = (0..7)
        .map(|i| (0..8).map(|j| num_bigint::BigInt::from(i64::from(i == j))).collect::<Vec<_>>())
        .collect();
    assert_eq!(reflection_closure(&e8, &simple).len() * 2, sub.roots.len());
}

#[test]
fn smooth_and_isolated_cases() {
    let l = k3();
    let none = BlockChoice::keep(&[]);
    let p = perturbed_periods(&l, [none.clone(), none.clone()]).unwrap();
    assert!(singularity_set(&l, &p).unwrap().roots.is_empty());
    let p = perturbed_periods(&l, [BlockChoice::keep(&[1]), none]).unwrap();
    let sub = singularity_set(&l, &p).unwrap();
    assert_eq!(labels(&sub), vec![AdeLabel::A(1)]);
    assert_eq!(structured_singularity_set(&l, &p).unwrap(), sub.roots);
}

#[test]
fn improper_keep_rejected() {
    let l = k3();
    let all = BlockChoice::keep(&[1, 2, 3, 4, 5, 6, 7, 8]);
    assert_eq!(
        perturbed_periods(&l, [all, BlockChoice::Unperturbed]).unwrap_err(),
        PipelineError::Lattice(LatticeError::ImproperKeep)
    );
}

#[test]
fn generic_rational_periods_have_no_roots() {
    let l = k3();
    let mut p = standard_periods(&l);
    // give every coordinate of x1 a distinct weight
    for (i, c) in p.x[0].iter_mut().enumerate().skip(6) {
        *c = rat(1 << (i - 6), 1 << 20);
    }
    assert!(check_periods(&l, &p).orthogonal);
    assert!(singularity_set(&l, &p).unwrap().roots.is_empty());
}

#[test]
fn isometries_standard_kind_one() {
    let l = k3();
    let p = standard_periods(&l);
    let (psi, v) = construct_isometries(&l, Kind::First, &p);
    assert!(v.ok(), "{:?}", v.failures);
    assert_eq!(psi[0].e8_signs, [1, 1]);
    assert_eq!(psi[0].minus_count(), 2);
    assert_eq!(psi[1].minus_count(), 2);
    let r = psi[0].restricted_to_periods(&l, &p).unwrap();
    assert_eq!(r, g2orbifold::exact::RatMatrix::from_i64(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 1]]));
    assert!(!odd_sign_example(&l).positive_cone_criterion(&l, &p));
}

#[test]
fn isometries_perturbed() {
    let l = k3();
    let p = perturbed_periods(&l, [BlockChoice::keep(&[1, 3]), BlockChoice::Unperturbed]).unwrap();
    for kind in Kind::ALL {
        let (psi, v) = construct_isometries(&l, kind, &p);
        assert!(v.ok(), "{kind:?}: {:?}", v.failures);
        assert_eq!(psi[0].e8_signs, [-1, 1]);
        let expected = if kind == Kind::First { [-1, 1] } else { [1, 1] };
        assert_eq!(psi[1].e8_signs, expected);
    }
}

#[test]
fn betti_standard_kind_one() {
    let l = k3();
    let r = evaluate(&l, &OrbifoldSpec::standard(Kind::First), &Options::default()).unwrap();
    assert!(r.valid, "{r}");
    assert_eq!(r.betti.first_generator_h2, 19);
    assert_eq!((r.betti.b2, r.betti.b3, r.betti.b1n), (0, 7, 0));
    assert!(r.betti.methods_agree());
    assert_eq!(r.gauge_group.display, "E8 x E8");
    assert_eq!(r.gauge_group.abelian_rank, 0);
    assert_eq!(r.singular_points, 2);
    assert!(r.monodromy.iter().all(ComponentMonodromy::trivial));
}

#[test]
fn betti_standard_kind_two() {
    let l = k3();
    let r = evaluate(&l, &OrbifoldSpec::standard(Kind::Second), &Options::default()).unwrap();
    assert!(r.valid, "{r}");
    assert_eq!(r.betti.group_order, 8);
    assert_eq!((r.betti.b2, r.betti.b3, r.betti.b1n), (0, 7, 0));
}

#[test]
fn perturbed_minus_identity_folds_a2() {
    let l = k3();
    let spec = OrbifoldSpec::new(Kind::First, BlockChoice::keep(&[1, 3]), BlockChoice::Unperturbed);
    let r = evaluate(&l, &spec, &Options::default()).unwrap();
    let a2 = r.monodromy.iter().find(|m| m.label == AdeLabel::A(2)).unwrap();
    assert!(!a2.trivial());
    assert_eq!(a2.actions[0].folded.as_deref(), Some("BC1"));
    let e8 = r.monodromy.iter().find(|m| m.label == AdeLabel::E(8)).unwrap();
    assert!(e8.trivial());
}

#[test]
fn minus_identity_on_e7_is_a_weyl_element() {
    // −Id on E7 is the longest Weyl element
    let l = k3();
    let spec = OrbifoldSpec::new(Kind::First, BlockChoice::keep(&[1, 2, 3, 4, 5, 6, 7]), BlockChoice::keep(&[]));
    let r = evaluate(&l, &spec, &Options::default()).unwrap();
    let e7 = r.monodromy.iter().find(|m| m.label == AdeLabel::E(7)).unwrap();
    assert!(e7.trivial());
    assert_eq!(e7.actions[0].weyl_length, 63);
}

#[test]
fn flat_models() {
    for n in 1..=8 {
        let r = flat_model_report(Kind::First, n);
        assert!(r.checks_pass(), "{r:?}");
        assert_eq!(r.monodromy_relation, Some(true));
        assert_eq!(r.torus_order, 4);
        assert!(r.torus_abelian);
        let expected = if n >= 3 {
            g2orbifold::su2_groups::DiagramAction::Flip
        } else {
            g2orbifold::su2_groups::DiagramAction::Trivial
        };
        assert_eq!(r.monodromy, expected);
        assert_eq!(r.note.is_some(), n == 2);
    }
    assert_eq!(flat_model_report(Kind::First, 5).folded.as_deref(), Some("BC2"));
    for n in 1..=8 {
        let r = flat_model_report(Kind::Second, n);
        assert!(r.checks_pass(), "{r:?}");
        assert_eq!(r.commutes_with_alpha, Some(true));
        assert_eq!(r.torus_order, 8);
        assert!(!r.torus_abelian);
        assert_eq!(r.torus_max_element_order, 4);
        assert_eq!(r.monodromy, g2orbifold::su2_groups::DiagramAction::Trivial);
    }
    assert_eq!(flat_model_report(Kind::First, 4).alpha_acts_trivially, Some(true));
}

#[test]
fn label_sweep_realizes_the_connected_set() {
    let sweep = realized_labels(&k3()).unwrap();
    assert_eq!(sweep.choices, 256);
    let expected: BTreeSet<String> = catalog_choices().into_iter().map(|(l, _)| l).collect();
    assert_eq!(sweep.labels, expected);
}

#[test]
fn catalog_representatives_realize_their_label() {
    let l = k3();
    for (label, choice) in catalog_choices() {
        let p = periods_for(&l, [choice, BlockChoice::keep(&[])]).unwrap();
        let sub = singularity_set(&l, &p).unwrap();
        let got: Vec<String> = sub.components.iter().map(|c| c.label.to_string()).collect();
        if label == "0" {
            assert!(got.is_empty());
        } else {
            assert_eq!(got, vec![label]);
        }
    }
}

#[test]
fn config_round_trip() {
    let cfg: Config = serde_json::from_str(
        r#"{ "kind": 1, "keep1": [1,2,3,4,5,6,7], "keep2": [], "options": { "crosscheck": true } }"#,
    )
    .unwrap();
    assert_eq!(cfg.spec.kind, Kind::First);
    assert_eq!(cfg.spec.keep1, BlockChoice::keep(&[1, 2, 3, 4, 5, 6, 7]));
    assert_eq!(cfg.spec.keep2, BlockChoice::keep(&[]));
    let back: Config = serde_json::from_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
    assert_eq!(back, cfg);
    let all: Config = serde_json::from_str(r#"{ "kind": 2, "keep1": "all", "keep2": "none" }"#).unwrap();
    assert_eq!(all.spec.keep1, BlockChoice::Unperturbed);
    assert!(all.options.crosscheck);
    assert!(serde_json::from_str::<Config>(r#"{ "kind": 3, "keep1": [], "keep2": [] }"#).is_err());
}

#[test]
fn keep_list_parsing() {
    assert_eq!("1,3".parse::<BlockChoice>().unwrap(), BlockChoice::keep(&[1, 3]));
    assert_eq!("none".parse::<BlockChoice>().unwrap(), BlockChoice::keep(&[]));
    assert_eq!("all".parse::<BlockChoice>().unwrap(), BlockChoice::Unperturbed);
    assert!("1,x".parse::<BlockChoice>().is_err());
    assert_eq!(BlockChoice::keep(&[2, 4]).to_string(), "2,4");
}
