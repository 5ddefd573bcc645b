use std::collections::BTreeMap;

use num_rational::BigRational;
use qgl_core::casimir::{b_central, derive_c};
use qgl_core::linalg::SparseMatrix;
use qgl_core::qgroups::{build, cholesky_map, uq_iso_map, AlgebraHandle, AlgebraKind};
use qgl_core::repth::*;
use qgl_core::QScalar;

fn w(v: &[i32]) -> Weight {
    Weight(v.to_vec())
}

/// Weyl dimension formula, computed over the integers.
fn weyl_dim(l: &[i32]) -> i64 {
    let n = l.len();
    let (mut num, mut den) = (1i64, 1i64);
    for i in 0..n {
        for j in i + 1..n {
            num *= (l[i] - l[j]) as i64 + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    num / den
}

fn uq(n: usize) -> AlgebraHandle {
    build(AlgebraKind::Uqgl, n).unwrap()
}

#[test]
fn vector_rep_satisfies_relations() {
    for n in [2, 3] {
        let rep = vector_rep(n).check_relations(&uq(n)).unwrap();
        assert!(rep.pass, "{:?}", rep.witness);
    }
}

#[test]
fn tensor_square_weight_two_zero_has_multiplicity_one() {
    let vv = tensor_power(2, 2).unwrap();
    assert_eq!(weight_mults(&vv)[&vec![2, 0]], 1);
    assert!(vv.check_relations(&uq(2)).unwrap().pass);
}

#[test]
fn tensor_is_coassociative_on_cube() {
    let v = vector_rep(2);
    let left = module_tensor(&module_tensor(&v, &v).unwrap(), &v).unwrap();
    let right = module_tensor(&v, &module_tensor(&v, &v).unwrap()).unwrap();
    assert_eq!(left, right);
}

#[test]
fn hecke_braid_quadratic_and_commuting() {
    let (n, m) = (2, 3);
    let s1 = hecke_op(n, m, 1).unwrap();
    let s2 = hecke_op(n, m, 2).unwrap();
    let lhs = s1.mul(&s2).unwrap().mul(&s1).unwrap();
    let rhs = s2.mul(&s1).unwrap().mul(&s2).unwrap();
    assert_eq!(lhs, rhs);

    let r = hecke_op(n, 2, 1).unwrap();
    let quad = r.mul(&r).unwrap().add(&r.scale(&(QScalar::q() - QScalar::q_pow(-1)))).unwrap().sub(&SparseMatrix::identity(4)).unwrap();
    assert!(quad.is_zero());

    for n in [2, 3] {
        let amb = tensor_power(n, 3).unwrap();
        let u = uq(n);
        let letters = amb.uq_letters(&u).unwrap();
        for i in 1..3 {
            let h = hecke_op(n, 3, i).unwrap();
            for a in &letters {
                assert_eq!(h.mul(a).unwrap(), a.mul(&h).unwrap(), "N={n} i={i}");
            }
        }
    }
}

#[test]
fn small_irreps() {
    assert_eq!(irrep(&w(&[1, 0])).unwrap().module, vector_rep(2));
    assert_eq!(irrep(&w(&[2, 0])).unwrap().dim(), 3);
    assert_eq!(irrep(&w(&[1, 1])).unwrap().dim(), 1);
    assert_eq!(irrep(&w(&[1, 1, 0])).unwrap().dim(), 3);
    assert_eq!(irrep(&w(&[1, 1, 1])).unwrap().dim(), 1);
    let m = irrep(&w(&[2, 0])).unwrap();
    let want: BTreeMap<Vec<i32>, usize> = [(vec![2, 0], 1), (vec![1, 1], 1), (vec![0, 2], 1)].into();
    assert_eq!(weight_mults(&m.module), want);
}

#[test]
fn irrep_dims_match_weyl_and_relations_hold() {
    for (n, spread) in [(2usize, 3), (3, 2)] {
        let u = uq(n);
        for l in Weight::dominant_window(n, spread, 1) {
            let m = irrep(&l).unwrap();
            assert_eq!(m.dim() as i64, weyl_dim(&l.0), "{l}");
            let rep = m.module.check_relations(&u).unwrap();
            assert!(rep.pass, "{l}: {:?}", rep.witness);
            for i in 1..n {
                assert!(m.module.e(i).apply(&[(0, QScalar::one())].into()).is_empty(), "{l}: E_{i} kills the highest weight vector");
            }
            let total: usize = weight_mults(&m.module).values().sum();
            assert_eq!(total, m.dim());
        }
    }
}

#[test]
fn qdim_values() {
    let v = irrep(&w(&[1, 0])).unwrap();
    assert_eq!(qdim(&v.module), QScalar::q_pow(-4) + QScalar::q_pow(-2));
    assert_eq!(qdim(&irrep(&w(&[0, 0])).unwrap().module), QScalar::one());
    let one = BigRational::from_integer(1.into());
    for l in [w(&[2, 0]), w(&[3, 1]), w(&[2, 1, 0]), w(&[1, 0, -1])] {
        let m = irrep(&l).unwrap();
        assert_eq!(qdim(&m.module).specialize(&one).unwrap(), BigRational::from_integer((m.dim() as i64).into()));
    }
}

/// The `O_T` action built from `R` agrees with the `U_q` action through the isomorphism.
#[test]
fn ot_action_matches_uq_action() {
    for (n, ls) in [(2usize, vec![w(&[1, 0]), w(&[2, 0]), w(&[3, 1]), w(&[0, -2])]), (3, vec![w(&[1, 0, 0]), w(&[2, 1, 0]), w(&[1, 1, -1])])] {
        let u = uq(n);
        let ot = build(AlgebraKind::OT, n).unwrap();
        let iso = uq_iso_map(&u, &ot).unwrap();
        for l in ls {
            let rep = Rep::new(&ot, &l).unwrap();
            let direct = rep.irrep.module.uq_letters(&u).unwrap();
            for (k, img) in iso.images.iter().enumerate() {
                assert_eq!(rep.act(img).unwrap(), direct[k], "N={n} {l} letter {}", u.alphabet().gens()[k].name);
            }
        }
    }
}

#[test]
fn ot_relations_hold_on_modules() {
    for n in [2, 3] {
        let ot = build(AlgebraKind::OT, n).unwrap();
        let l = if n == 2 { w(&[2, -1]) } else { w(&[2, 1, 0]) };
        let rep = Rep::new(&ot, &l).unwrap();
        for (lead, rhs) in ot.pres.rules() {
            let rel = &qgl_core::ncalg::NcElement::word(lead.clone()) - rhs;
            assert!(rep.act(&rel).unwrap().is_zero(), "{}", ot.alphabet().word_name(lead));
        }
    }
}

#[test]
fn central_characters_agree_with_module_action() {
    for n in [2, 3] {
        let oh = build(AlgebraKind::OH, n).unwrap();
        let ot = build(AlgebraKind::OT, n).unwrap();
        let chol = cholesky_map(&oh, &ot).unwrap();
        let mut zs = Vec::new();
        for k in 1..=n {
            zs.push(derive_c(&oh, &ot, k).unwrap());
        }
        zs.push(b_central(&oh, &ot, n).unwrap());
        for l in Weight::dominant_window(n, 2, 1).into_iter().take(8) {
            let rep = Rep::new(&ot, &l).unwrap();
            for z in &zs {
                central_character(&chol, z, &rep).unwrap();
            }
        }
        let rep = Rep::new(&ot, &Weight::zero(n)).unwrap();
        let bn = b_central(&oh, &ot, n).unwrap();
        assert_eq!(central_character(&chol, &bn, &rep).unwrap(), QScalar::one());
        let rep = Rep::new(&ot, &w(&vec![1; n])).unwrap();
        assert_eq!(central_character(&chol, &bn, &rep).unwrap(), QScalar::q_pow(-2 * n as i32));
    }
}

#[test]
fn c1_character_n2() {
    let (oh, ot) = (build(AlgebraKind::OH, 2).unwrap(), build(AlgebraKind::OT, 2).unwrap());
    let chol = cholesky_map(&oh, &ot).unwrap();
    let c1 = derive_c(&oh, &ot, 1).unwrap();
    for l in [w(&[0, 0]), w(&[3, 1]), w(&[1, -2])] {
        let rep = Rep::new(&ot, &l).unwrap();
        let want = QScalar::q_pow(-2 * l.0[0]) + QScalar::q_pow(2 - 2 * l.0[1]);
        assert_eq!(central_character(&chol, &c1, &rep).unwrap(), want);
    }
}

#[test]
fn omega_normalized_and_b_trace_is_qdim() {
    let ot = build(AlgebraKind::OT, 2).unwrap();
    for l in [w(&[0, 0]), w(&[2, 0]), w(&[1, -1])] {
        let rep = Rep::new(&ot, &l).unwrap();
        assert_eq!(rep.omega(&qgl_core::ncalg::NcElement::one()).unwrap(), QScalar::one());
        assert_eq!(rep.b_weight().trace(), qdim(&rep.irrep.module));
    }
}

#[test]
fn ehc_trivial_weight_n2() {
    let want = &(&QScalar::q_pow(-3) * &qgl_core::qfield::q_int(2).unwrap().inv().unwrap()) * &(QScalar::q_pow(2) + QScalar::q_pow(4));
    assert_eq!(ehc_closed_form(&w(&[0, 0]), 1).unwrap(), want);
    assert_eq!(want, QScalar::one());
}

#[test]
fn ehc_holds_n2_n3() {
    for n in [2usize, 3] {
        let oh = build(AlgebraKind::OH, n).unwrap();
        let ot = build(AlgebraKind::OT, n).unwrap();
        let ls: Vec<Weight> = Weight::dominant_window(n, 2, 1).into_iter().take(6).collect();
        for k in 1..=n {
            let rep = verify_ehc(&oh, &ot, k, &ls).unwrap();
            assert!(rep.pass, "N={n} k={k}: {:?}", rep.witness);
        }
    }
}

#[test]
fn tt_annihilated_by_characteristic_polynomial() {
    for (n, l) in [(2usize, w(&[1, 0])), (2, w(&[3, -1])), (3, w(&[2, 1, 0]))] {
        let oh = build(AlgebraKind::OH, n).unwrap();
        let ot = build(AlgebraKind::OT, n).unwrap();
        let chol = cholesky_map(&oh, &ot).unwrap();
        let rep = Rep::new(&ot, &l).unwrap();
        let m = tt_matrix(&chol, &oh, &rep).unwrap();
        let res = scalar_ch_residual(&m, &ch_coefficients(&l).unwrap()).unwrap();
        assert!(res.is_zero(), "{l}");
    }
}

#[test]
fn ch_roots_are_the_characteristic_roots() {
    let l = w(&[2, 0, -1]);
    let roots = ch_roots(&l);
    let coeffs = ch_coefficients(&l).unwrap();
    for (k, c) in coeffs.iter().enumerate() {
        assert_eq!(*c, elementary_symmetric(&roots, k + 1));
    }
}

#[test]
fn filtration_nested_and_finite_n2() {
    let q0 = BigRational::new(1.into(), 2.into());
    let ms: Vec<BigRational> = [5, 20, 100].iter().map(|&m| BigRational::from_integer(m.into())).collect();
    let rows = filtration_table(2, &q0, 10, &ms).unwrap();
    assert!(rows.iter().all(|r| r.control_value > BigRational::from_integer(0.into())));
    let rep = check_filtration(2, &q0, 10, &ms, &rows).unwrap();
    assert!(rep.pass, "{:?}", rep.witness);
    let trivial = rows.iter().find(|r| r.lambda == Weight::zero(2)).unwrap();
    assert_eq!(trivial.control_value, BigRational::new(5.into(), 2.into()));
}

#[test]
fn b_inverse_character_is_inverse() {
    let (oh, ot) = (build(AlgebraKind::OH, 2).unwrap(), build(AlgebraKind::OT, 2).unwrap());
    let loc = qgl_core::casimir::LocalizedHc::new(&oh, &ot).unwrap();
    let rep = Rep::new(&ot, &w(&[2, -1])).unwrap();
    assert_eq!(b_inverse_character(&loc, &ot, &rep).unwrap(), QScalar::q_pow(2));
}
