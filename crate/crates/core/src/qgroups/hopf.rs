//! Coproduct, counit and antipode on generators, and the Hopf axiom checks.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::build::{k_hat, triangular_inverse};
use super::det::{cofactor_inverse, det_of, DetForm};
use super::{into_slot, tensor_presentation, AlgebraHandle, AlgebraKind, Hom};
use crate::error::{Error, Result};
use crate::ncalg::{Letter, NcElement, Word};
use crate::qfield::QScalar;
use crate::rewrite::{Presentation, Reducer};

/// Hopf structure on generators. Coproduct images live in `tensor` (`A ⊗ A`, slots 1 and 2).
#[derive(Clone, Debug)]
pub struct HopfData {
    pub tensor: Presentation,
    pub coproduct: Vec<NcElement>,
    pub counit: Vec<QScalar>,
    pub antipode: Option<Vec<NcElement>>,
}

pub(super) fn hopf_data(h: &AlgebraHandle) -> Result<HopfData> {
    let alpha = h.alphabet();
    let n = h.n;
    let tensor = tensor_presentation(&[&h.pres, &h.pres])?;
    let sizes = [alpha.len(), alpha.len()];
    let left = |e: &NcElement| into_slot(e, &sizes, 1);
    let right = |e: &NcElement| into_slot(e, &sizes, 2);
    let grouplike = |l: Letter| -> NcElement {
        let g = NcElement::letter(l);
        &left(&g) * &right(&g)
    };
    let mut coproduct = Vec::with_capacity(alpha.len());
    let mut counit = Vec::with_capacity(alpha.len());
    let mut antipode: Option<Vec<NcElement>> = Some(Vec::new());

    match h.kind {
        AlgebraKind::Uqgl => {
            for l in 0..alpha.len() as Letter {
                let g = alpha.gen(l);
                let i = g.indices[0];
                let gl = NcElement::letter(l);
                let (d, e, s) = match g.name {
                    "K" => (grouplike(l), QScalar::one(), NcElement::letter(alpha.get("Ki", &[i])?)),
                    "Ki" => (grouplike(l), QScalar::one(), NcElement::letter(alpha.get("K", &[i])?)),
                    "E" => {
                        let kh = k_hat(alpha, i, false)?;
                        let d = &left(&gl) + &(&left(&kh) * &right(&gl));
                        let s = (&k_hat(alpha, i, true)? * &gl).scale(&QScalar::from_int(-1));
                        (d, QScalar::zero(), s)
                    }
                    _ => {
                        let khi = k_hat(alpha, i, true)?;
                        let d = &(&left(&gl) * &right(&khi)) + &right(&gl);
                        let s = (&gl * &k_hat(alpha, i, false)?).scale(&QScalar::from_int(-1));
                        (d, QScalar::zero(), s)
                    }
                };
                coproduct.push(d);
                counit.push(e);
                antipode.as_mut().expect("antipode").push(s);
            }
        }
        AlgebraKind::OT => {
            let tp = h.matrix("T+")?;
            let tm = h.matrix("T-")?;
            let ip = triangular_inverse(&h.pres, n, true)?;
            let im = triangular_inverse(&h.pres, n, false)?;
            for l in 0..alpha.len() as Letter {
                let g = alpha.gen(l);
                let (m, inv, i, j) = match g.name {
                    "T" => (&tp, &ip, g.indices[0], g.indices[0]),
                    "Ti" => (&tm, &im, g.indices[0], g.indices[0]),
                    "Tp" => (&tp, &ip, g.indices[0], g.indices[1]),
                    _ => (&tm, &im, g.indices[0], g.indices[1]),
                };
                let (i, j) = ((i - 1) as usize, (j - 1) as usize);
                let mut d = NcElement::zero();
                for k in 0..n {
                    d.add_scaled(&(&left(&m.get(i, k)) * &right(&m.get(k, j))), &QScalar::one());
                }
                coproduct.push(d);
                counit.push(if i == j { QScalar::one() } else { QScalar::zero() });
                antipode.as_mut().expect("antipode").push(inv.get(i, j));
            }
        }
        _ => {
            // FRT type: matrix letters plus central inverse determinants
            let mats: &[&str] = match h.kind {
                AlgebraKind::OM | AlgebraKind::OGL => &["X"],
                AlgebraKind::OGLR => &["X", "Y"],
                _ => &["U"],
            };
            let mut inverses = Vec::new();
            for m in mats {
                let mat = h.matrix(m)?;
                let dname = match (h.kind, *m) {
                    (AlgebraKind::OM, _) => None,
                    (AlgebraKind::OGLR, "X") => Some("Dx"),
                    (AlgebraKind::OGLR, _) => Some("Dy"),
                    _ => Some("D"),
                };
                let s = dname.map(|d| -> Result<_> { Ok(cofactor_inverse(&mat, &h.gen(d, &[])?)) }).transpose()?;
                inverses.push((*m, mat, dname, s));
            }
            if h.kind == AlgebraKind::OM {
                antipode = None;
            }
            for l in 0..alpha.len() as Letter {
                let g = alpha.gen(l);
                if g.indices.is_empty() {
                    let (_, mat, _, _) = inverses.iter().find(|(_, _, d, _)| *d == Some(g.name)).expect("determinant");
                    coproduct.push(grouplike(l));
                    counit.push(QScalar::one());
                    if let Some(a) = antipode.as_mut() {
                        a.push(det_of(mat, DetForm::One));
                    }
                    continue;
                }
                let (_, mat, _, s) = inverses.iter().find(|(m, ..)| *m == g.name).expect("matrix");
                let (i, j) = ((g.indices[0] - 1) as usize, (g.indices[1] - 1) as usize);
                let mut d = NcElement::zero();
                for k in 0..n {
                    d.add_scaled(&(&left(&mat.get(i, k)) * &right(&mat.get(k, j))), &QScalar::one());
                }
                coproduct.push(d);
                counit.push(if i == j { QScalar::one() } else { QScalar::zero() });
                if let (Some(a), Some(s)) = (antipode.as_mut(), s) {
                    a.push(s.get(i, j));
                }
            }
        }
    }
    let mut red = tensor.reducer();
    let coproduct = coproduct.iter().map(|e| red.normal_form(e)).collect::<Result<Vec<_>>>()?;
    let antipode = match antipode {
        Some(a) => {
            let mut r = h.pres.reducer();
            Some(a.iter().map(|e| r.normal_form(e)).collect::<Result<Vec<_>>>()?)
        }
        None => None,
    };
    drop(red);
    Ok(HopfData { tensor, coproduct, counit, antipode })
}

/// Failures of the Hopf axioms on generators, as human-readable strings.
pub fn check_hopf_axioms(h: &AlgebraHandle) -> Result<Vec<String>> {
    let hd = h.hopf.as_ref().ok_or_else(|| Error::Domain(format!("{} carries no coproduct", h.kind)))?;
    let alpha = h.alphabet();
    let na = alpha.len();
    let sizes = [na, na];
    let mut fails = Vec::new();

    // counit laws
    let mut red_a = h.pres.reducer();
    for l in 0..na as Letter {
        let d = &hd.coproduct[l as usize];
        for side in [1usize, 2] {
            let mut out = NcElement::zero();
            for (w, c) in d.terms() {
                let mut coeff = c.clone();
                let mut rest = Word::empty();
                for &x in w.letters() {
                    let (slot, base) = if (x as usize) < na { (1, x) } else { (2, x - na as Letter) };
                    if slot == side {
                        coeff = &coeff * &hd.counit[base as usize];
                    } else {
                        rest.0.push(base);
                    }
                }
                out.add_term(rest, &coeff);
            }
            let diff = &out - &NcElement::letter(l);
            if !red_a.is_zero(&diff)? {
                fails.push(format!("counit law (slot {side}) fails on {}", alpha.gen(l)));
            }
        }
    }

    // coassociativity in A ⊗ A ⊗ A
    let triple = tensor_presentation(&[&h.pres, &h.pres, &h.pres])?;
    let s3 = [na, na, na];
    let mut red3 = triple.reducer();
    let mut img_left = Vec::with_capacity(2 * na);
    let mut img_right = Vec::with_capacity(2 * na);
    for l in 0..na as Letter {
        // Δ ⊗ id: slot-1 letter ↦ Δ(l) in slots 1,2
        img_left.push(red3.normal_form(&into_slot(&hd.coproduct[l as usize], &s3, 1))?);
        img_right.push(red3.normal_form(&into_slot(&NcElement::letter(l), &s3, 1))?);
    }
    for l in 0..na as Letter {
        img_left.push(red3.normal_form(&into_slot(&NcElement::letter(l), &s3, 3))?);
        img_right.push(red3.normal_form(&into_slot(&hd.coproduct[l as usize], &s3, 2))?);
    }
    let mut hl = Hom::new(&img_left, false);
    let mut hr = Hom::new(&img_right, false);
    for l in 0..na as Letter {
        let d = &hd.coproduct[l as usize];
        let a = hl.apply(&mut red3, d)?;
        let b = hr.apply(&mut red3, d)?;
        if !red3.is_zero(&(&a - &b))? {
            fails.push(format!("coassociativity fails on {}", alpha.gen(l)));
        }
    }

    // antipode laws m(S⊗id)Δ = ε = m(id⊗S)Δ
    if let Some(s) = &hd.antipode {
        for l in 0..na as Letter {
            for side in [1usize, 2] {
                let v = antipode_contraction(&mut red_a, s, &hd.coproduct[l as usize], &sizes, side)?;
                let diff = &v - &NcElement::scalar(hd.counit[l as usize].clone());
                if !red_a.is_zero(&diff)? {
                    fails.push(format!("antipode law (S on slot {side}) fails on {}", alpha.gen(l)));
                }
            }
        }
    }
    Ok(fails)
}

/// `m(S ⊗ id)` (side 1) or `m(id ⊗ S)` (side 2) applied to a tensor element.
fn antipode_contraction(red: &mut Reducer<'_>, s: &[NcElement], d: &NcElement, sizes: &[usize; 2], side: usize) -> Result<NcElement> {
    let na = sizes[0] as Letter;
    let mut anti = Hom::new(s, true);
    let mut out = NcElement::zero();
    for (w, c) in d.terms() {
        let mut u = Word::empty();
        let mut v = Word::empty();
        for &x in w.letters() {
            if x < na {
                u.0.push(x);
            } else {
                v.0.push(x - na);
            }
        }
        let term = if side == 1 {
            let su = anti.apply(red, &NcElement::word(u))?;
            red.mul(&su, &NcElement::word(v))?
        } else {
            let sv = anti.apply(red, &NcElement::word(v))?;
            red.mul(&NcElement::word(u), &sv)?
        };
        out.add_scaled(&term, c);
    }
    Ok(out)
}

/// `Δ(a)` reduced in `A ⊗ A`.
pub fn coproduct_of(h: &AlgebraHandle, a: &NcElement) -> Result<NcElement> {
    let hd = h.hopf.as_ref().ok_or_else(|| Error::Domain(format!("{} carries no coproduct", h.kind)))?;
    let mut red = hd.tensor.reducer();
    let mut hom = Hom::new(&hd.coproduct, false);
    hom.apply(&mut red, a)
}

/// `a ⊗ b` in the carrier `A ⊗ A`.
pub fn tensor_square(h: &AlgebraHandle, a: &NcElement, b: &NcElement) -> NcElement {
    let na = h.alphabet().len();
    let sizes = [na, na];
    &into_slot(a, &sizes, 1) * &into_slot(b, &sizes, 2)
}
