use qgl_core::ncalg::{LeggedMatrix, Letter, NcElement};
use qgl_core::qgroups::hopf::{check_hopf_axioms, coproduct_of, tensor_square};
use qgl_core::qgroups::maps::{cholesky_equivariance_residual, counit_right, xstar_x_re_residual};
use qgl_core::qgroups::pairing::action_residual;
use qgl_core::qgroups::{
    antipode_matrix, build, cholesky_map, coact_ad_map, pin_p, pin_r, qr_map, quantum_det, re_relations, uq_iso_map, AlgebraKind, DetForm,
    Pairing,
};
use qgl_core::QScalar;

fn all_zero(m: &LeggedMatrix) -> bool {
    m.nonzero().all(|(_, e)| e.is_zero())
}

#[test]
fn hopf_axioms_hold_for_catalog_n2() {
    for kind in AlgebraKind::ALL {
        if kind == AlgebraKind::OH {
            continue;
        }
        let h = build(kind, 2).unwrap();
        let fails = check_hopf_axioms(&h).unwrap();
        assert!(fails.is_empty(), "{kind}: {fails:?}");
    }
}

#[test]
fn hopf_axioms_hold_for_catalog_n3() {
    for kind in [AlgebraKind::OGL, AlgebraKind::OT, AlgebraKind::Uqgl] {
        let h = build(kind, 3).unwrap();
        let fails = check_hopf_axioms(&h).unwrap();
        assert!(fails.is_empty(), "{kind}: {fails:?}");
    }
}

#[test]
fn determinant_forms_agree_and_det_is_central_grouplike() {
    for n in [2, 3] {
        let h = build(AlgebraKind::OGL, n).unwrap();
        let d1 = h.normal_form(&quantum_det(&h, "X", DetForm::One).unwrap()).unwrap();
        for form in [DetForm::Two, DetForm::Three, DetForm::ThreeColumns] {
            let d = h.normal_form(&quantum_det(&h, "X", form).unwrap()).unwrap();
            assert_eq!(d, d1, "N={n} {form:?}");
        }
        assert!(h.is_central(&d1).unwrap());
        let delta = coproduct_of(&h, &d1).unwrap();
        let want = h.hopf.as_ref().unwrap().tensor.normal_form(&tensor_square(&h, &d1, &d1)).unwrap();
        assert_eq!(delta, want);
    }
}

#[test]
fn two_by_two_determinant_expansion() {
    let h = build(AlgebraKind::OM, 2).unwrap();
    let g = |i, j| h.gen("X", &[i, j]).unwrap();
    let want = &(&g(1, 1) * &g(2, 2)) - &(&g(1, 2) * &g(2, 1)).scale(&QScalar::q());
    assert_eq!(quantum_det(&h, "X", DetForm::One).unwrap(), want);
}

#[test]
fn antipode_matrix_verifies() {
    for n in [1, 2, 3] {
        let h = build(AlgebraKind::OGL, n).unwrap();
        antipode_matrix(&h, "X").unwrap();
    }
}

#[test]
fn det_y_is_inverse_star_of_det_x() {
    for n in [2, 3] {
        let h = build(AlgebraKind::OGLR, n).unwrap();
        let dx = quantum_det(&h, "X", DetForm::One).unwrap();
        let dy = quantum_det(&h, "Y", DetForm::One).unwrap();
        let prod = &h.star(&dx).unwrap() * &dy;
        assert!(h.is_zero(&(&prod - &NcElement::one())).unwrap(), "N={n}");
    }
}

#[test]
fn det_pairs_to_inverse_q() {
    for n in [2, 3] {
        let om = build(AlgebraKind::OM, n).unwrap();
        let pin = pin_r(&om).unwrap();
        let mut p = Pairing::r(&om, pin.selected).unwrap();
        let det = quantum_det(&om, "X", DetForm::One).unwrap();
        let x = om.matrix("X").unwrap();
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { QScalar::q_pow(-1) } else { QScalar::zero() };
                assert_eq!(p.pair(&det, &x.get(i, j)).unwrap(), want);
            }
        }
    }
}

#[test]
fn xstar_x_satisfies_reflection_equation() {
    for n in [2, 3] {
        let h = build(AlgebraKind::OGLR, n).unwrap();
        assert!(all_zero(&xstar_x_re_residual(&h).unwrap()), "N={n}");
    }
}

#[test]
fn cholesky_is_a_homomorphism_and_equivariant() {
    for n in [2, 3] {
        let oh = build(AlgebraKind::OH, n).unwrap();
        let ot = build(AlgebraKind::OT, n).unwrap();
        let chi = cholesky_map(&oh, &ot).unwrap();
        let z = oh.matrix("Z").unwrap();
        for rel in re_relations(n, &z).unwrap() {
            assert!(ot.is_zero(&chi.apply(&rel).unwrap()).unwrap());
        }
        assert!(all_zero(&cholesky_equivariance_residual(&ot).unwrap()), "N={n}");
    }
}

#[test]
fn pairing_p_action_identity() {
    let ot = build(AlgebraKind::OT, 2).unwrap();
    let ou = build(AlgebraKind::OU, 2).unwrap();
    let oh = build(AlgebraKind::OH, 2).unwrap();
    let pin = pin_p(&ot, &ou, &oh).unwrap();
    let mut p = Pairing::p(&ot, &ou, pin.selected).unwrap();
    assert_eq!(action_residual(&mut p, &ot, &ou, &oh).unwrap().nnz(), 0);
}

#[test]
fn uq_iso_respects_serre_relations_n3() {
    let uq = build(AlgebraKind::Uqgl, 3).unwrap();
    let ot = build(AlgebraKind::OT, 3).unwrap();
    let iso = uq_iso_map(&uq, &ot).unwrap();
    let e = |i| uq.gen("E", &[i]).unwrap();
    let two = QScalar::q() + QScalar::q_pow(-1);
    let serre = &(&(&(&e(2) * &e(2)) * &e(1)) - &(&(&e(2) * &e(1)) * &e(2)).scale(&two)) + &(&(&e(1) * &e(2)) * &e(2));
    assert!(ot.is_zero(&iso.apply(&serre).unwrap()).unwrap());
}

#[test]
fn adjoint_coaction_preserves_relations_and_counit() {
    let oh = build(AlgebraKind::OH, 2).unwrap();
    let ou = build(AlgebraKind::OU, 2).unwrap();
    let ad = coact_ad_map(&oh, &ou).unwrap();
    let mut red = ad.target.reducer();
    for rel in re_relations(2, &oh.matrix("Z").unwrap()).unwrap() {
        let img = ad.apply_with(&mut red, &rel).unwrap();
        assert!(red.is_zero(&img).unwrap());
    }
    for l in 0..oh.alphabet().len() as Letter {
        let z = NcElement::letter(l);
        assert_eq!(counit_right(&oh, &ou, &ad.apply(&z).unwrap()).unwrap(), z);
    }
}

#[test]
fn qr_is_a_homomorphism_n2() {
    let g = build(AlgebraKind::OGLR, 2).unwrap();
    let ou = build(AlgebraKind::OU, 2).unwrap();
    let ot = build(AlgebraKind::OT, 2).unwrap();
    let m = qr_map(&g, &ou, &ot).unwrap();
    let mut red = m.target.reducer();
    for (lead, rhs) in g.pres.rules() {
        let rel = &NcElement::word(lead.clone()) - rhs;
        let img = m.apply_with(&mut red, &rel).unwrap();
        assert!(red.is_zero(&img).unwrap(), "{}", g.alphabet().word_name(lead));
    }
    assert_eq!(m.apply(&NcElement::one()).unwrap(), NcElement::one());
}

#[test]
fn qr_is_injective_in_degree_two_n2() {
    let g = build(AlgebraKind::OGLR, 2).unwrap();
    let ou = build(AlgebraKind::OU, 2).unwrap();
    let ot = build(AlgebraKind::OT, 2).unwrap();
    let (dim, rank) = qgl_core::qgroups::qr_kernel(&g, &ou, &ot, 2).unwrap();
    assert!(dim > 1);
    assert_eq!(dim, rank);
}

#[test]
fn pbw_counts_and_overlaps() {
    for n in [2, 3] {
        for kind in [AlgebraKind::OM, AlgebraKind::OT, AlgebraKind::OH] {
            let h = build(kind, n).unwrap();
            let rep = qgl_core::qgroups::check_pbw(&h, 4).unwrap();
            assert!(rep.pass, "{kind} N={n}: {:?}", rep.witness);
            let ov = &rep.witness.iter().find(|(k, _)| k == "overlaps").unwrap().1;
            assert!(!ov.starts_with("0 "), "{kind} N={n}: {ov}");
        }
    }
}

#[test]
fn laurent_oracle_small() {
    // N=1: T and Ti, words T^d or Ti^d
    assert_eq!(qgl_core::qgroups::pbw_oracle(AlgebraKind::OT, 1, 3).unwrap(), 2);
    // N=2 degree 1: T12, T21, T1, T2, Ti1, Ti2
    assert_eq!(qgl_core::qgroups::pbw_oracle(AlgebraKind::OT, 2, 1).unwrap(), 6);
}
