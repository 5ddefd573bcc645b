use qgl_core::casimir::{
    b_central, derive_c, derive_c_against, hc, partitions, power_trace, tr_weighted, verify_ch, HcImage, Weight,
};
use qgl_core::qgroups::{build, AlgebraKind};
use qgl_core::QScalar;

fn pair(n: usize) -> (qgl_core::qgroups::AlgebraHandle, qgl_core::qgroups::AlgebraHandle) {
    (build(AlgebraKind::OH, n).unwrap(), build(AlgebraKind::OT, n).unwrap())
}

#[test]
fn partitions_reverse_lex() {
    assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
    assert_eq!(partitions(4).len(), 5);
}

#[test]
fn b_k_images_are_products_of_squares() {
    for n in [2, 3] {
        let (oh, ot) = pair(n);
        for k in 1..=n {
            let b = b_central(&oh, &ot, k).unwrap();
            let mut e = vec![0; n];
            e[..k].fill(1);
            assert_eq!(b.hc, HcImage::monomial(n, e, QScalar::one()), "N={n} k={k}");
        }
    }
}

#[test]
fn first_coefficient_is_weighted_trace() {
    for n in [2, 3] {
        let (oh, ot) = pair(n);
        let c1 = derive_c(&oh, &ot, 1).unwrap();
        let want = tr_weighted(&oh.matrix("Z").unwrap(), Weight::Q2);
        assert!(oh.is_zero(&(&c1.body - &want)).unwrap());
        assert_eq!(c1.kernel_dim, 0);
    }
}

#[test]
fn top_coefficient_is_scaled_b_n() {
    for n in [2, 3] {
        let (oh, ot) = pair(n);
        let c = derive_c(&oh, &ot, n).unwrap();
        let b = b_central(&oh, &ot, n).unwrap();
        let diff = &c.body - &b.body.scale(&QScalar::q_pow((n * (n - 1)) as i32));
        assert!(oh.is_zero(&diff).unwrap(), "N={n}");
    }
}

#[test]
fn cayley_hamilton_n2_with_pushforward() {
    let (oh, ot) = pair(2);
    let rep = verify_ch(&oh, &ot, true).unwrap();
    assert!(rep.pass, "{:?}", rep.witness);
}

#[test]
fn cayley_hamilton_n3() {
    let (oh, ot) = pair(3);
    let rep = verify_ch(&oh, &ot, false).unwrap();
    assert!(rep.pass, "{:?}", rep.witness);
}

#[test]
fn weighted_trace_against_inverse_weight_is_not_central() {
    let oh = build(AlgebraKind::OH, 2).unwrap();
    let t = tr_weighted(&oh.matrix("Z").unwrap(), Weight::QInv2);
    assert!(!oh.is_central(&t).unwrap());
}

#[test]
fn hc_rejects_non_central() {
    let (oh, ot) = pair(2);
    assert!(hc(&oh, &ot, &oh.gen("Z", &[1, 2]).unwrap()).is_err());
}

#[test]
fn hc_is_multiplicative_on_samples() {
    let (oh, ot) = pair(2);
    let p1 = power_trace(&oh, 1).unwrap();
    let p2 = power_trace(&oh, 2).unwrap();
    let b2 = b_central(&oh, &ot, 2).unwrap().body;
    for (x, y) in [(&p1, &p2), (&p1, &b2), (&b2, &b2)] {
        let xy = oh.normal_form(&(x * y)).unwrap();
        let lhs = hc(&oh, &ot, &xy).unwrap();
        let rhs = hc(&oh, &ot, x).unwrap().mul(&hc(&oh, &ot, y).unwrap());
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn prefactor_q_to_2k_target_rescales_c1() {
    let (oh, ot) = pair(2);
    let c = derive_c_against(&oh, &ot, 1, &HcImage::elementary(2, 1, 2)).unwrap();
    let p1 = power_trace(&oh, 1).unwrap();
    assert!(oh.is_zero(&(&c.body - &p1.scale(&QScalar::q_pow(4)))).unwrap());
}

#[test]
fn localized_b_inverse_is_central_with_inverse_image() {
    use qgl_core::casimir::LocalizedHc;
    let (oh, ot) = pair(2);
    let loc = LocalizedHc::new(&oh, &ot).unwrap();
    let bi = loc.b_inverse();
    let mut red = loc.pres.reducer();
    let b2 = loc.lift(&b_central(&oh, &ot, 2).unwrap().body);
    assert!(red.is_zero(&(&(&b2 * &bi) - &qgl_core::ncalg::NcElement::one())).unwrap());
    drop(red);
    assert_eq!(loc.hc(&bi).unwrap(), HcImage::monomial(2, vec![-1, -1], QScalar::one()));
    let x = loc.lift(&power_trace(&oh, 1).unwrap());
    let img = loc.hc(&(&x * &bi)).unwrap();
    assert_eq!(img, HcImage::ch_coefficient(2, 1).mul(&HcImage::monomial(2, vec![-1, -1], QScalar::one())));
}

#[test]
fn newton_traces_central_in_realified_gl2() {
    let g = build(AlgebraKind::OGLR, 2).unwrap();
    let rep = qgl_core::casimir::verify_newton_centrality(&g, 2).unwrap();
    assert!(rep.pass, "{:?}", rep.witness);
}

#[test]
fn newton_traces_central_in_realified_gl3() {
    let g = build(AlgebraKind::OGLR, 3).unwrap();
    let rep = qgl_core::casimir::verify_newton_centrality(&g, 1).unwrap();
    assert!(rep.pass, "{:?}", rep.witness);
}

#[test]
fn l_family_n2() {
    let oh = build(AlgebraKind::OH, 2).unwrap();
    let rep = qgl_core::casimir::verify_l_family(&oh).unwrap();
    assert!(rep.pass, "{:?}", rep.witness);
}

#[test]
fn minus_q_eigenvector_n2() {
    let space = qgl_core::casimir::joint_minus_q_eigenspace(2).unwrap();
    assert_eq!(space.len(), 1);
    let v = &space[0];
    // proportional to e1⊗e2 − q e2⊗e1
    assert!(v[0].is_zero() && v[3].is_zero());
    assert_eq!(v[2].checked_div(&v[1]).unwrap(), -QScalar::q());
}

#[test]
fn bn_slice_positive_multiple() {
    let half = num_rational::BigRational::new(1.into(), 2.into());
    for n in [2, 3] {
        let oh = build(AlgebraKind::OH, n).unwrap();
        let rep = qgl_core::casimir::verify_bn_slice(&oh, &half).unwrap();
        assert!(rep.pass, "N={n} {:?}", rep.witness);
    }
}

#[test]
fn b_i_commutation_table() {
    for n in [2, 3] {
        let oh = build(AlgebraKind::OH, n).unwrap();
        let rep = qgl_core::casimir::verify_bi_commutation(&oh).unwrap();
        assert!(rep.pass, "N={n} {:?}", rep.witness);
    }
}

#[test]
fn l_family_n3() {
    let oh = build(AlgebraKind::OH, 3).unwrap();
    let rep = qgl_core::casimir::verify_l_family(&oh).unwrap();
    assert!(rep.pass, "{:?}", rep.witness);
    assert_eq!(rep.witness.len(), 6);
}

#[test]
fn unbraided_legs_do_not_commute() {
    let oh = build(AlgebraKind::OH, 2).unwrap();
    let z1 = oh.matrix("Z").unwrap().leg_embed(2, 1).unwrap();
    let z2 = oh.matrix("Z").unwrap().leg_embed(2, 2).unwrap();
    let c = z1.mul(&z2).unwrap().sub(&z2.mul(&z1).unwrap()).unwrap();
    assert!(c.nonzero().any(|(_, e)| !oh.is_zero(e).unwrap()));
}
