//! Quantum determinants, quantum minors and the cofactor antipode.

use alloc::format;
use alloc::vec::Vec;

use super::{permutations, AlgebraHandle, AlgebraKind};
use crate::error::{Error, Result};
use crate::ncalg::{LeggedMatrix, NcElement};
use crate::qfield::QScalar;

/// The four product orders of the determinant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetForm {
    /// Rows ascending, weight `(-q)^{l(σ)}`.
    One,
    /// Columns ascending, weight `(-q)^{l(σ)}`.
    Two,
    /// Rows descending, weight `(-q)^{-l(σ)}`.
    Three,
    /// Columns descending, weight `(-q)^{-l(σ)}`.
    ThreeColumns,
}

impl DetForm {
    pub fn from_index(k: u8) -> Result<Self> {
        match k {
            1 => Ok(DetForm::One),
            2 => Ok(DetForm::Two),
            3 => Ok(DetForm::Three),
            4 => Ok(DetForm::ThreeColumns),
            _ => Err(Error::Domain(format!("determinant form {k} does not exist"))),
        }
    }
}

/// Determinant of the submatrix on `rows` × `cols` in the given form, unreduced.
pub fn minor(m: &LeggedMatrix, rows: &[usize], cols: &[usize], form: DetForm) -> NcElement {
    let k = rows.len();
    let mut out = NcElement::zero();
    for (sigma, len) in permutations(k) {
        let (sign_exp, mut factors): (i32, Vec<(usize, usize)>) = match form {
            DetForm::One => (len as i32, (0..k).map(|i| (rows[i], cols[sigma[i]])).collect()),
            DetForm::Two => (len as i32, (0..k).map(|i| (rows[sigma[i]], cols[i])).collect()),
            DetForm::Three => (-(len as i32), (0..k).map(|i| (rows[i], cols[sigma[i]])).collect()),
            DetForm::ThreeColumns => (-(len as i32), (0..k).map(|i| (rows[sigma[i]], cols[i])).collect()),
        };
        if matches!(form, DetForm::Three | DetForm::ThreeColumns) {
            factors.reverse();
        }
        let mut term = NcElement::scalar(QScalar::neg_q_pow(sign_exp));
        for (i, j) in factors {
            let e = m.get(i, j);
            if e.is_zero() {
                term = NcElement::zero();
                break;
            }
            term = &term * &e;
        }
        out.add_scaled(&term, &QScalar::one());
    }
    out
}

/// Full determinant of a one-leg matrix, unreduced.
pub fn det_of(m: &LeggedMatrix, form: DetForm) -> NcElement {
    let idx: Vec<usize> = (0..m.dim()).collect();
    minor(m, &idx, &idx, form)
}

/// `Det_q` of the generating matrix `matrix` of `h`, as the unreduced signed sum.
pub fn quantum_det(h: &AlgebraHandle, matrix: &str, form: DetForm) -> Result<NcElement> {
    match (h.kind, matrix) {
        (AlgebraKind::OM | AlgebraKind::OGL, "X") | (AlgebraKind::OGLR, "X" | "Y") | (AlgebraKind::OU, "U") => {}
        (AlgebraKind::OT, "T+" | "T-") | (AlgebraKind::OH, "Z") => {}
        _ => return Err(Error::Domain(format!("{} has no matrix {matrix}", h.kind))),
    }
    Ok(det_of(&h.matrix(matrix)?, form))
}

/// Cofactor candidate `S(X)_ij = (-q)^{i-j} minor(row j, col i deleted) · dinv`.
pub fn cofactor_inverse(m: &LeggedMatrix, dinv: &NcElement) -> LeggedMatrix {
    let n = m.dim();
    let mut out = LeggedMatrix::zero(1, n);
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let mi = if n == 1 { NcElement::one() } else { minor(m, &rows, &cols, DetForm::One) };
            let sign = QScalar::neg_q_pow(i as i32 - j as i32);
            out.set(i, j, (dinv * &mi).scale(&sign));
        }
    }
    out
}

/// Letter name of the inverse determinant belonging to `matrix` in `h`.
pub fn dinv_name(kind: AlgebraKind, matrix: &str) -> Result<&'static str> {
    match (kind, matrix) {
        (AlgebraKind::OGL, "X") | (AlgebraKind::OU, "U") => Ok("D"),
        (AlgebraKind::OGLR, "X") => Ok("Dx"),
        (AlgebraKind::OGLR, "Y") => Ok("Dy"),
        _ => Err(Error::Domain(format!("{kind} has no inverse determinant for {matrix}"))),
    }
}

/// The antipode matrix `S(X)` from quantum cofactors, verified by `X S(X) = S(X) X = I`.
pub fn antipode_matrix(h: &AlgebraHandle, matrix: &str) -> Result<LeggedMatrix> {
    let d = h.gen(dinv_name(h.kind, matrix)?, &[])?;
    let x = h.matrix(matrix)?;
    let s = cofactor_inverse(&x, &d);
    let mut red = h.pres.reducer();
    let id = LeggedMatrix::identity(1, h.n);
    for (a, b, side) in [(&x, &s, "X S(X)"), (&s, &x, "S(X) X")] {
        let p = a.mul(b)?.sub(&id)?;
        for (&(i, j), e) in p.nonzero() {
            if !red.is_zero(e)? {
                return Err(Error::Convention(format!("{side} differs from I at entry ({}, {})", i + 1, j + 1)));
            }
        }
    }
    s.try_map_entries(|e| red.normal_form(e))
}
