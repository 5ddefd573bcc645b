//! Structure maps between catalog algebras.

use alloc::format;
use alloc::vec::Vec;

use super::build::triangular_inverse;
use super::{into_slot, re_residual, tensor_presentation, AlgebraHandle, AlgebraKind, Hom};
use crate::error::{Error, Result};
use crate::ncalg::{r_matrix, r_matrix_inv, LeggedMatrix, Letter, NcElement, Word};
use crate::qfield::QScalar;
use crate::rewrite::{Presentation, Reducer};

/// An algebra map given by normal-form images of the source letters.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    pub target: Presentation,
    pub images: Vec<NcElement>,
}

impl AlgebraMap {
    fn new(target: Presentation, images: Vec<NcElement>) -> Result<Self> {
        let mut red = target.reducer();
        let images = images.iter().map(|e| red.normal_form(e)).collect::<Result<Vec<_>>>()?;
        drop(red);
        Ok(AlgebraMap { target, images })
    }

    pub fn apply(&self, a: &NcElement) -> Result<NcElement> {
        let mut red = self.target.reducer();
        self.apply_with(&mut red, a)
    }

    /// Image reduced with a caller-held reducer over `self.target`.
    pub fn apply_with(&self, red: &mut Reducer<'_>, a: &NcElement) -> Result<NcElement> {
        Hom::new(&self.images, false).apply(red, a)
    }
}

fn expect(h: &AlgebraHandle, kind: AlgebraKind) -> Result<()> {
    if h.kind != kind {
        return Err(Error::Domain(format!("expected {kind}, got {}", h.kind)));
    }
    Ok(())
}

/// `M*` with `(M*)_ij = (M_ji)*`, entries reduced.
pub fn star_matrix(h: &AlgebraHandle, m: &LeggedMatrix) -> Result<LeggedMatrix> {
    let mut red = h.pres.reducer();
    let n = m.dim();
    let mut out = LeggedMatrix::zero(1, n);
    for i in 0..n {
        for j in 0..n {
            let e = m.get(j, i);
            if !e.is_zero() {
                out.set(i, j, red.normal_form(&h.star(&e)?)?);
            }
        }
    }
    Ok(out)
}

/// The quantum Cholesky map `Z ↦ T*T` from `O_H` into `O_T`.
pub fn cholesky_map(oh: &AlgebraHandle, ot: &AlgebraHandle) -> Result<AlgebraMap> {
    expect(oh, AlgebraKind::OH)?;
    expect(ot, AlgebraKind::OT)?;
    let t = ot.matrix("T+")?;
    let ts = star_matrix(ot, &t)?;
    let mut red = ot.pres.reducer();
    let tt = ts.mul_with(&t, |e| red.normal_form(&e))?;
    drop(red);
    let images = oh
        .alphabet()
        .gens()
        .iter()
        .map(|g| tt.get((g.indices[0] - 1) as usize, (g.indices[1] - 1) as usize))
        .collect();
    AlgebraMap::new(ot.pres.clone(), images)
}

/// `χ_T(z)` in normal form.
pub fn cholesky(oh: &AlgebraHandle, ot: &AlgebraHandle, z: &NcElement) -> Result<NcElement> {
    cholesky_map(oh, ot)?.apply(z)
}

/// Entries of `R12 T*23 T23 R12^{-1} − T13^{-1} T*23 T23 T13` in `O_T`, reduced.
pub fn cholesky_equivariance_residual(ot: &AlgebraHandle) -> Result<LeggedMatrix> {
    expect(ot, AlgebraKind::OT)?;
    let n = ot.n;
    let t = ot.matrix("T+")?;
    let ts = star_matrix(ot, &t)?;
    let tinv = triangular_inverse(&ot.pres, n, true)?;
    let mut red = ot.pres.reducer();
    let tt = ts.mul_with(&t, |e| red.normal_form(&e))?.leg_embed(2, 2)?;
    let lhs = r_matrix(n).mul(&tt)?.mul(&r_matrix_inv(n))?;
    let t13 = t.leg_embed(2, 1)?;
    let ti13 = tinv.leg_embed(2, 1)?;
    let rhs = ti13.mul_with(&tt, |e| red.normal_form(&e))?.mul_with(&t13, |e| red.normal_form(&e))?;
    lhs.sub(&rhs)?.try_map_entries(|e| red.normal_form(e))
}

/// RE residual of `X*X` in `O_GLR`, reduced.
pub fn xstar_x_re_residual(oglr: &AlgebraHandle) -> Result<LeggedMatrix> {
    expect(oglr, AlgebraKind::OGLR)?;
    let x = oglr.matrix("X")?;
    let xs = star_matrix(oglr, &x)?;
    let mut red = oglr.pres.reducer();
    let m = xs.mul_with(&x, |e| red.normal_form(&e))?;
    re_residual(oglr.n, &m, &mut red)
}

/// The quantum QR map `O_GLR → O_U ⊗ O_T`.
pub fn qr_map(oglr: &AlgebraHandle, ou: &AlgebraHandle, ot: &AlgebraHandle) -> Result<AlgebraMap> {
    expect(oglr, AlgebraKind::OGLR)?;
    expect(ou, AlgebraKind::OU)?;
    expect(ot, AlgebraKind::OT)?;
    let n = oglr.n;
    let target = tensor_presentation(&[&ou.pres, &ot.pres])?;
    let sizes = [ou.alphabet().len(), ot.alphabet().len()];
    let u = ou.matrix("U")?;
    let tp = ot.matrix("T+")?;
    let tm = ot.matrix("T-")?;
    let du = into_slot(&ou.gen("D", &[])?, &sizes, 1);
    let diag = |name: &str| -> Result<NcElement> {
        let mut w = Word::empty();
        for i in 1..=n as u8 {
            w.0.push(ot.letter(name, &[i])?);
        }
        Ok(into_slot(&NcElement::word(w), &sizes, 2))
    };
    let mut images = Vec::new();
    for g in oglr.alphabet().gens() {
        let img = match g.name {
            "Dx" => &du * &diag("Ti")?,
            "Dy" => &du * &diag("T")?,
            name => {
                let (i, j) = ((g.indices[0] - 1) as usize, (g.indices[1] - 1) as usize);
                let t = if name == "X" { &tp } else { &tm };
                let mut s = NcElement::zero();
                for k in 0..n {
                    let tk = t.get(k, j);
                    if !tk.is_zero() {
                        s.add_scaled(&(&into_slot(&u.get(i, k), &sizes, 1) * &into_slot(&tk, &sizes, 2)), &QScalar::one());
                    }
                }
                s
            }
        };
        images.push(img);
    }
    AlgebraMap::new(target, images)
}

/// `qr(x)` in the tensor presentation `O_U ⊗ O_T`.
pub fn qr(oglr: &AlgebraHandle, ou: &AlgebraHandle, ot: &AlgebraHandle, x: &NcElement) -> Result<NcElement> {
    qr_map(oglr, ou, ot)?.apply(x)
}

/// Irreducible words of length at most `d`, in degree-lex order.
pub fn irreducible_words(p: &Presentation, d: usize) -> Vec<Word> {
    let na = p.alphabet().len() as Letter;
    let mut layer = alloc::vec![Word::empty()];
    let mut out = layer.clone();
    for _ in 0..d {
        let mut next = Vec::new();
        for w in &layer {
            for l in 0..na {
                let mut v = w.clone();
                v.0.push(l);
                if p.is_irreducible(&v) {
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Kernel of `qr` on the span of normal-form words of length `≤ d`.
///
/// Returns `(span dimension, rank of the image)`; the map is injective there
/// exactly when the two agree.
pub fn qr_kernel(oglr: &AlgebraHandle, ou: &AlgebraHandle, ot: &AlgebraHandle, d: usize) -> Result<(usize, usize)> {
    let m = qr_map(oglr, ou, ot)?;
    let basis = irreducible_words(&oglr.pres, d);
    let mut red = m.target.reducer();
    let mut ech = crate::linalg::Echelon::<Word>::new();
    for w in &basis {
        let img = m.apply_with(&mut red, &NcElement::word(w.clone()))?;
        ech.insert(img.into_terms().collect());
    }
    Ok((basis.len(), ech.rank()))
}

/// The isomorphism `U_q(gl_N) → O_T`, checked on every defining relation.
pub fn uq_iso_map(uq: &AlgebraHandle, ot: &AlgebraHandle) -> Result<AlgebraMap> {
    expect(uq, AlgebraKind::Uqgl)?;
    expect(ot, AlgebraKind::OT)?;
    let inv_qmq = (&QScalar::q() - &QScalar::q_pow(-1)).inv()?;
    let l = |name: &str, idx: &[u8]| -> Result<NcElement> { ot.gen(name, idx) };
    let mut images = Vec::new();
    for g in uq.alphabet().gens() {
        let i = g.indices[0];
        let img = match g.name {
            "K" => l("Ti", &[i])?,
            "Ki" => l("T", &[i])?,
            "E" => (&l("T", &[i + 1])? * &l("Tm", &[i + 1, i])?).scale(&inv_qmq),
            _ => (&l("Tp", &[i, i + 1])? * &l("Ti", &[i + 1])?).scale(&(-&inv_qmq)),
        };
        images.push(img);
    }
    let map = AlgebraMap::new(ot.pres.clone(), images)?;
    let mut red = map.target.reducer();
    for (lead, rhs) in uq.pres.rules() {
        let rel = &NcElement::word(lead.clone()) - rhs;
        let img = map.apply_with(&mut red, &rel)?;
        if !red.is_zero(&img)? {
            return Err(Error::Convention(format!("relation {} = {} does not map to zero", uq.alphabet().word_name(lead), uq.display(rhs))));
        }
    }
    drop(red);
    Ok(map)
}

pub fn uq_iso(uq: &AlgebraHandle, ot: &AlgebraHandle, a: &NcElement) -> Result<NcElement> {
    uq_iso_map(uq, ot)?.apply(a)
}

/// The adjoint coaction `Z ↦ U*_13 Z_12 U_13` into `O_H ⊗ O_U`.
pub fn coact_ad_map(oh: &AlgebraHandle, ou: &AlgebraHandle) -> Result<AlgebraMap> {
    expect(oh, AlgebraKind::OH)?;
    expect(ou, AlgebraKind::OU)?;
    let n = oh.n;
    let target = tensor_presentation(&[&oh.pres, &ou.pres])?;
    let sizes = [oh.alphabet().len(), ou.alphabet().len()];
    let z = oh.matrix("Z")?;
    let u = ou.matrix("U")?;
    let us = star_matrix(ou, &u)?;
    let mut images = Vec::new();
    for g in oh.alphabet().gens() {
        let (i, j) = ((g.indices[0] - 1) as usize, (g.indices[1] - 1) as usize);
        let mut s = NcElement::zero();
        for k in 0..n {
            for l in 0..n {
                let right = &us.get(i, k) * &u.get(l, j);
                s.add_scaled(&(&into_slot(&z.get(k, l), &sizes, 1) * &into_slot(&right, &sizes, 2)), &QScalar::one());
            }
        }
        images.push(s);
    }
    AlgebraMap::new(target, images)
}

pub fn coact_ad(oh: &AlgebraHandle, ou: &AlgebraHandle, z: &NcElement) -> Result<NcElement> {
    coact_ad_map(oh, ou)?.apply(z)
}

/// `(id ⊗ ε)` on `O_H ⊗ O_U`, landing in `O_H`.
pub fn counit_right(oh: &AlgebraHandle, ou: &AlgebraHandle, a: &NcElement) -> Result<NcElement> {
    let counit = &ou.hopf.as_ref().ok_or_else(|| Error::Domain("O_U carries no counit".into()))?.counit;
    let na = oh.alphabet().len() as Letter;
    let mut out = NcElement::zero();
    for (w, c) in a.terms() {
        let mut coeff = c.clone();
        let mut rest = Word::empty();
        for &x in w.letters() {
            if x < na {
                rest.0.push(x);
            } else {
                coeff = &coeff * &counit[(x - na) as usize];
            }
        }
        out.add_term(rest, &coeff);
    }
    oh.normal_form(&out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qgroups::build as build_kind;

    #[test]
    fn cholesky_of_z11_is_t1_squared() {
        let oh = build_kind(AlgebraKind::OH, 2).unwrap();
        let ot = build_kind(AlgebraKind::OT, 2).unwrap();
        let t1 = ot.gen("T", &[1]).unwrap();
        let img = cholesky(&oh, &ot, &oh.gen("Z", &[1, 1]).unwrap()).unwrap();
        assert_eq!(img, &t1 * &t1);
    }

    #[test]
    fn uq_iso_respects_relations_n2() {
        let uq = build_kind(AlgebraKind::Uqgl, 2).unwrap();
        let ot = build_kind(AlgebraKind::OT, 2).unwrap();
        assert!(uq_iso_map(&uq, &ot).is_ok());
    }

    #[test]
    fn coaction_counit_law() {
        let oh = build_kind(AlgebraKind::OH, 2).unwrap();
        let ou = build_kind(AlgebraKind::OU, 2).unwrap();
        let m = coact_ad_map(&oh, &ou).unwrap();
        for l in 0..oh.alphabet().len() as Letter {
            let z = NcElement::letter(l);
            assert_eq!(counit_right(&oh, &ou, &m.apply(&z).unwrap()).unwrap(), z);
        }
    }
}
