//! Skew pairing `r` on `O_q(M_N)` and the Hopf pairing `p` of `O_T` with `O_U`.
//!
//! Both are computed through representations: a first-argument word of length
//! `m` selects an `m`-fold tensor product of generator representations of the
//! second argument, and the pairing value is a matrix entry of the image.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::det::{det_of, DetForm};
use super::{AlgebraHandle, AlgebraKind};
use crate::error::{Error, Result};
use crate::linalg::dense_inverse;
use crate::ncalg::{r21, r_matrix, r_matrix_inv, LeggedMatrix, Letter, NcElement, Word};
use crate::qfield::QScalar;

/// Which argument receives `Δ` versus `Δ^op` in the product laws.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairingConvention {
    /// `(ab, c) = (a, c_(2)) (b, c_(1))` instead of `(a, c_(1)) (b, c_(2))`.
    pub first_cop: bool,
    /// `(a, cd) = (a_(1), d) (a_(2), c)` instead of `(a_(1), c) (a_(2), d)`.
    pub second_reversed: bool,
}

impl PairingConvention {
    pub const ALL: [PairingConvention; 4] = [
        PairingConvention { first_cop: false, second_reversed: false },
        PairingConvention { first_cop: false, second_reversed: true },
        PairingConvention { first_cop: true, second_reversed: false },
        PairingConvention { first_cop: true, second_reversed: true },
    ];
}

impl fmt::Display for PairingConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = if self.first_cop { "(ab,c)=(a,c2)(b,c1)" } else { "(ab,c)=(a,c1)(b,c2)" };
        let b = if self.second_reversed { "(a,cd)=(a1,d)(a2,c)" } else { "(a,cd)=(a1,c)(a2,d)" };
        write!(f, "{a}; {b}")
    }
}

type SparseRow = Vec<(usize, QScalar)>;
type Sparse = Vec<SparseRow>;

#[derive(Clone, Copy, Debug)]
enum SecondLetter {
    Entry(usize, usize),
    InvDet,
}

struct SeqRep {
    entries: Vec<Sparse>,
    inv_det: Option<Sparse>,
}

/// A bilinear form on words, determined by generator tables.
pub struct Pairing {
    n: usize,
    conv: PairingConvention,
    /// Two-leg scalar tables: `(A_ij, B_kl) = table[(i,k),(j,l)]`.
    tables: Vec<LeggedMatrix>,
    first: Vec<Option<(usize, usize, usize)>>,
    second: Vec<Option<SecondLetter>>,
    max_len: usize,
    cache: BTreeMap<Vec<usize>, Rc<SeqRep>>,
}

impl Pairing {
    /// The skew pairing `r` of `O_q(M_N)` with itself, `(id⊗id⊗r)(X13 X24) = R`.
    pub fn r(h: &AlgebraHandle, conv: PairingConvention) -> Result<Self> {
        if h.kind != AlgebraKind::OM {
            return Err(Error::Domain(format!("r is defined on O_M, not {}", h.kind)));
        }
        let alpha = h.alphabet();
        let mut first = Vec::new();
        let mut second = Vec::new();
        for g in alpha.gens() {
            let (i, j) = ((g.indices[0] - 1) as usize, (g.indices[1] - 1) as usize);
            first.push(Some((0, i, j)));
            second.push(Some(SecondLetter::Entry(i, j)));
        }
        Ok(Pairing::new(h.n, conv, vec![r_matrix(h.n)], first, second, h.pres.degree_cap()))
    }

    /// The pairing `p` of `O_T` with `O_U`: `T+ ↦ R`, `T- ↦ R21^{-1}`.
    pub fn p(ot: &AlgebraHandle, ou: &AlgebraHandle, conv: PairingConvention) -> Result<Self> {
        if ot.kind != AlgebraKind::OT || ou.kind != AlgebraKind::OU || ot.n != ou.n {
            return Err(Error::Domain("p pairs O_T with O_U of the same rank".into()));
        }
        let n = ot.n;
        let tables = vec![r_matrix(n), r21(&r_matrix_inv(n))];
        let first = ot
            .alphabet()
            .gens()
            .iter()
            .map(|g| {
                let i = (g.indices[0] - 1) as usize;
                Some(match g.name {
                    "T" => (0, i, i),
                    "Ti" => (1, i, i),
                    "Tp" => (0, i, (g.indices[1] - 1) as usize),
                    _ => (1, i, (g.indices[1] - 1) as usize),
                })
            })
            .collect();
        let second = ou
            .alphabet()
            .gens()
            .iter()
            .map(|g| {
                Some(if g.indices.is_empty() {
                    SecondLetter::InvDet
                } else {
                    SecondLetter::Entry((g.indices[0] - 1) as usize, (g.indices[1] - 1) as usize)
                })
            })
            .collect();
        let cap = ot.pres.degree_cap().max(ou.pres.degree_cap());
        Ok(Pairing::new(n, conv, tables, first, second, cap))
    }

    fn new(
        n: usize,
        conv: PairingConvention,
        tables: Vec<LeggedMatrix>,
        first: Vec<Option<(usize, usize, usize)>>,
        second: Vec<Option<SecondLetter>>,
        max_len: usize,
    ) -> Self {
        Pairing { n, conv, tables, first, second, max_len, cache: BTreeMap::new() }
    }

    pub fn convention(&self) -> PairingConvention {
        self.conv
    }

    /// Bilinear value on arbitrary word representatives.
    pub fn pair(&mut self, a: &NcElement, b: &NcElement) -> Result<QScalar> {
        let mut out = QScalar::zero();
        for (u, cu) in a.terms() {
            for (v, cv) in b.terms() {
                let val = self.pair_words(u, v)?;
                if !val.is_zero() {
                    out += &(&(cu * cv) * &val);
                }
            }
        }
        Ok(out)
    }

    fn pair_words(&mut self, u: &Word, v: &Word) -> Result<QScalar> {
        if u.len() > self.max_len {
            return Err(Error::Fuel(u.len() as u64));
        }
        let mut seq = Vec::with_capacity(u.len());
        let (mut row, mut col) = (0usize, 0usize);
        for &l in u.letters() {
            let (t, i, j) = self.first_info(l)?;
            seq.push(t);
            row = row * self.n + i;
            col = col * self.n + j;
        }
        if seq.is_empty() {
            // counit of the second argument
            for &l in v.letters() {
                if let SecondLetter::Entry(k, m) = self.second_info(l)? {
                    if k != m {
                        return Ok(QScalar::zero());
                    }
                }
            }
            return Ok(QScalar::one());
        }
        let rep = self.seq_rep(&seq)?;
        let mut vec_row: BTreeMap<usize, QScalar> = BTreeMap::new();
        vec_row.insert(row, QScalar::one());
        let letters: Vec<Letter> = if self.conv.second_reversed { v.letters().iter().rev().copied().collect() } else { v.letters().to_vec() };
        for l in letters {
            let m = match self.second_info(l)? {
                SecondLetter::Entry(k, j) => &rep.entries[k * self.n + j],
                SecondLetter::InvDet => rep.inv_det.as_ref().ok_or_else(|| Error::Domain("no inverse determinant".into()))?,
            };
            let mut next: BTreeMap<usize, QScalar> = BTreeMap::new();
            for (r, c) in &vec_row {
                for (j, e) in &m[*r] {
                    let t = c * e;
                    let slot = next.entry(*j).or_insert_with(QScalar::zero);
                    *slot += &t;
                }
            }
            next.retain(|_, c| !c.is_zero());
            vec_row = next;
            if vec_row.is_empty() {
                return Ok(QScalar::zero());
            }
        }
        Ok(vec_row.get(&col).cloned().unwrap_or_else(QScalar::zero))
    }

    fn first_info(&self, l: Letter) -> Result<(usize, usize, usize)> {
        self.first.get(l as usize).copied().flatten().ok_or_else(|| Error::Domain(format!("letter {l} has no pairing table")))
    }

    fn second_info(&self, l: Letter) -> Result<SecondLetter> {
        self.second.get(l as usize).copied().flatten().ok_or_else(|| Error::Domain(format!("letter {l} has no pairing table")))
    }

    fn single(&self, t: usize) -> Vec<Sparse> {
        let n = self.n;
        let tab = &self.tables[t];
        let mut out = Vec::with_capacity(n * n);
        for k in 0..n {
            for l in 0..n {
                let mut m: Sparse = vec![Vec::new(); n];
                for (i, row) in m.iter_mut().enumerate() {
                    for j in 0..n {
                        let c = tab.scalar_entry(i * n + k, j * n + l);
                        if !c.is_zero() {
                            row.push((j, c));
                        }
                    }
                }
                out.push(m);
            }
        }
        out
    }

    fn seq_rep(&mut self, seq: &[usize]) -> Result<Rc<SeqRep>> {
        if let Some(r) = self.cache.get(seq) {
            return Ok(r.clone());
        }
        let n = self.n;
        let base = self.single(*seq.last().expect("non-empty"));
        let entries = if seq.len() == 1 {
            base
        } else {
            let prev = self.seq_rep(&seq[..seq.len() - 1])?;
            let mut out = Vec::with_capacity(n * n);
            for k in 0..n {
                for l in 0..n {
                    let mut acc: Sparse = vec![Vec::new(); n.pow(seq.len() as u32)];
                    for p in 0..n {
                        let (a, b) = if self.conv.first_cop { (&prev.entries[p * n + l], &base[k * n + p]) } else { (&prev.entries[k * n + p], &base[p * n + l]) };
                        kron_add(&mut acc, a, b, n);
                    }
                    out.push(acc);
                }
            }
            out
        };
        let dim = n.pow(seq.len() as u32);
        let inv_det = if self.second.iter().any(|s| matches!(s, Some(SecondLetter::InvDet))) { Some(self.inverse_det(&entries, dim)?) } else { None };
        let rep = Rc::new(SeqRep { entries, inv_det });
        self.cache.insert(seq.to_vec(), rep.clone());
        Ok(rep)
    }

    /// Image of `Det_q` under the entry images, inverted.
    fn inverse_det(&self, entries: &[Sparse], dim: usize) -> Result<Sparse> {
        let n = self.n;
        let mut idx = LeggedMatrix::zero(1, n);
        for k in 0..n {
            for l in 0..n {
                idx.set(k, l, NcElement::letter((k * n + l) as Letter));
            }
        }
        let det = det_of(&idx, DetForm::One);
        let mut total: Sparse = vec![Vec::new(); dim];
        for (w, c) in det.terms() {
            let mut m = identity(dim);
            let letters: Vec<Letter> = if self.conv.second_reversed { w.letters().iter().rev().copied().collect() } else { w.letters().to_vec() };
            for l in letters {
                m = sparse_mul(&m, &entries[l as usize], dim);
            }
            add_scaled(&mut total, &m, c);
        }
        let diagonal = total.iter().enumerate().all(|(i, r)| r.len() == 1 && r[0].0 == i);
        if diagonal {
            return total.iter().map(|r| Ok(vec![(r[0].0, r[0].1.inv()?)])).collect();
        }
        let dense: Vec<Vec<QScalar>> = total
            .iter()
            .map(|r| {
                let mut d = vec![QScalar::zero(); dim];
                for (j, c) in r {
                    d[*j] = c.clone();
                }
                d
            })
            .collect();
        let inv = dense_inverse(&dense).map_err(|_| Error::Convention("image of the determinant is singular".into()))?;
        Ok(inv.into_iter().map(|r| r.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()).collect())
    }
}

fn identity(dim: usize) -> Sparse {
    (0..dim).map(|i| vec![(i, QScalar::one())]).collect()
}

fn kron_add(acc: &mut Sparse, a: &Sparse, b: &Sparse, nb: usize) {
    for (ra, row_a) in a.iter().enumerate() {
        for (ca, va) in row_a {
            for (rb, row_b) in b.iter().enumerate() {
                for (cb, vb) in row_b {
                    push_add(&mut acc[ra * nb + rb], ca * nb + cb, &(va * vb));
                }
            }
        }
    }
}

fn push_add(row: &mut SparseRow, j: usize, c: &QScalar) {
    if let Some(e) = row.iter_mut().find(|(k, _)| *k == j) {
        e.1 += c;
        if e.1.is_zero() {
            row.retain(|(k, _)| *k != j);
        }
    } else if !c.is_zero() {
        row.push((j, c.clone()));
    }
}

fn sparse_mul(a: &Sparse, b: &Sparse, dim: usize) -> Sparse {
    let mut out: Sparse = vec![Vec::new(); dim];
    for (i, row) in a.iter().enumerate() {
        for (k, c) in row {
            for (j, d) in &b[*k] {
                push_add(&mut out[i], *j, &(c * d));
            }
        }
    }
    out
}

fn add_scaled(acc: &mut Sparse, m: &Sparse, c: &QScalar) {
    for (i, row) in m.iter().enumerate() {
        for (j, d) in row {
            push_add(&mut acc[i], *j, &(c * d));
        }
    }
}

/// Outcome of trying every convention against a pinning test.
#[derive(Clone, Debug)]
pub struct PinReport {
    pub selected: PairingConvention,
    pub tried: Vec<(PairingConvention, bool)>,
}

fn select(tried: Vec<(PairingConvention, bool)>, what: &str) -> Result<PinReport> {
    let ok: Vec<_> = tried.iter().filter(|(_, b)| *b).map(|(c, _)| *c).collect();
    match ok.as_slice() {
        [c] => Ok(PinReport { selected: *c, tried }),
        [] => Err(Error::Convention(format!("no convention satisfies the {what} test"))),
        _ => Err(Error::Convention(format!("{} conventions satisfy the {what} test", ok.len()))),
    }
}

/// Pins `r` by `r(Det_q X, X_ij) = q^{-1} δ_ij` together with vanishing on the defining relations.
pub fn pin_r(om: &AlgebraHandle) -> Result<PinReport> {
    let x = om.matrix("X")?;
    let det = det_of(&x, DetForm::One);
    let rels: Vec<NcElement> = om.pres.rules().map(|(w, r)| &NcElement::word(w.clone()) - r).collect();
    let n = om.n;
    let mut tried = Vec::new();
    for conv in PairingConvention::ALL {
        let mut p = Pairing::r(om, conv)?;
        let mut ok = true;
        'outer: for i in 0..n {
            for j in 0..n {
                let want = if i == j { QScalar::q_pow(-1) } else { QScalar::zero() };
                if p.pair(&det, &x.get(i, j))? != want {
                    ok = false;
                    break 'outer;
                }
                for rel in &rels {
                    if !p.pair(rel, &x.get(i, j))?.is_zero() || !p.pair(&x.get(i, j), rel)?.is_zero() {
                        ok = false;
                        break 'outer;
                    }
                }
            }
        }
        tried.push((conv, ok));
    }
    select(tried, "determinant pairing")
}

/// `r(a, b)` under the pinned convention.
pub fn pairing_r(om: &AlgebraHandle, a: &NcElement, b: &NcElement) -> Result<QScalar> {
    let pin = pin_r(om)?;
    Pairing::r(om, pin.selected)?.pair(a, b)
}

/// `a ▷ Z_ij = Σ_kl Z_kl p(a, U*_ik U_lj)` for `a` in `O_T`, as an element of `O_H`.
pub fn act_on_z(p: &mut Pairing, ou: &AlgebraHandle, oh: &AlgebraHandle, a: &NcElement, i: usize, j: usize) -> Result<NcElement> {
    let n = oh.n;
    let u = ou.matrix("U")?;
    let z = oh.matrix("Z")?;
    let mut out = NcElement::zero();
    for k in 0..n {
        let ustar = ou.star(&u.get(k, i))?;
        for l in 0..n {
            let c = p.pair(a, &(&ustar * &u.get(l, j)))?;
            if !c.is_zero() {
                out.add_scaled(&z.get(k, l), &c);
            }
        }
    }
    Ok(out)
}

/// Difference `T13^{-1} ▷ Z23 − R12 Z23 R12^{-1}` as a two-leg matrix over `O_H`.
pub fn action_residual(p: &mut Pairing, ot: &AlgebraHandle, ou: &AlgebraHandle, oh: &AlgebraHandle) -> Result<LeggedMatrix> {
    let n = oh.n;
    let tinv = super::build::triangular_inverse(&ot.pres, n, true)?;
    let mut lhs = LeggedMatrix::zero(2, n);
    for a in 0..n {
        for b in 0..n {
            let t = tinv.get(a, b);
            if t.is_zero() {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    lhs.set(a * n + i, b * n + j, act_on_z(p, ou, oh, &t, i, j)?);
                }
            }
        }
    }
    let z23 = oh.matrix("Z")?.leg_embed(2, 2)?;
    let rhs = r_matrix(n).mul(&z23)?.mul(&r_matrix_inv(n))?;
    lhs.sub(&rhs)
}

/// Whether `p` vanishes on the quadratic defining relations of both arguments, paired with generators.
fn respects_relations(p: &mut Pairing, ot: &AlgebraHandle, ou: &AlgebraHandle) -> Result<bool> {
    let quad = |h: &AlgebraHandle| -> Vec<NcElement> {
        h.pres
            .rules()
            .filter(|(w, _)| w.len() == 2 && h.pres.inverses().iter().all(|inv| !w.letters().contains(&inv.letter)))
            .map(|(w, r)| &NcElement::word(w.clone()) - r)
            .collect()
    };
    let ut = ou.matrix("U")?;
    for rel in quad(ot) {
        for (_, u) in ut.nonzero() {
            if !p.pair(&rel, u)?.is_zero() {
                return Ok(false);
            }
        }
    }
    for rel in quad(ou) {
        for l in 0..ot.alphabet().len() as Letter {
            if !p.pair(&NcElement::letter(l), &rel)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Pins `p` by the action identity `T13^{-1} ▷ Z23 = R12 Z23 R12^{-1}`.
pub fn pin_p(ot: &AlgebraHandle, ou: &AlgebraHandle, oh: &AlgebraHandle) -> Result<PinReport> {
    let mut tried = Vec::new();
    for conv in PairingConvention::ALL {
        let mut p = Pairing::p(ot, ou, conv)?;
        let ok = respects_relations(&mut p, ot, ou)?
            && match action_residual(&mut p, ot, ou, oh) {
                Ok(res) => res.nnz() == 0,
                Err(Error::Convention(_)) => false,
                Err(e) => return Err(e),
            };
        tried.push((conv, ok));
    }
    select(tried, "action")
}

/// `p(a, b)` under the pinned convention.
pub fn pairing_p(ot: &AlgebraHandle, ou: &AlgebraHandle, oh: &AlgebraHandle, a: &NcElement, b: &NcElement) -> Result<QScalar> {
    let pin = pin_p(ot, ou, oh)?;
    Pairing::p(ot, ou, pin.selected)?.pair(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qgroups::build as build_kind;

    #[test]
    fn r_on_generators_reads_r_matrix() {
        let om = build_kind(AlgebraKind::OM, 2).unwrap();
        let mut p = Pairing::r(&om, PairingConvention::ALL[0]).unwrap();
        let x11 = om.gen("X", &[1, 1]).unwrap();
        assert_eq!(p.pair(&x11, &x11).unwrap(), QScalar::q_pow(-1));
        assert_eq!(p.pair(&NcElement::one(), &x11).unwrap(), QScalar::one());
        assert!(p.pair(&NcElement::one(), &om.gen("X", &[1, 2]).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn r_convention_is_unique() {
        let om = build_kind(AlgebraKind::OM, 2).unwrap();
        let pin = pin_r(&om).unwrap();
        assert_eq!(pin.tried.iter().filter(|(_, b)| *b).count(), 1);
    }

    #[test]
    fn p_convention_is_unique_and_reads_r() {
        let ot = build_kind(AlgebraKind::OT, 2).unwrap();
        let ou = build_kind(AlgebraKind::OU, 2).unwrap();
        let oh = build_kind(AlgebraKind::OH, 2).unwrap();
        let pin = pin_p(&ot, &ou, &oh).unwrap();
        let mut p = Pairing::p(&ot, &ou, pin.selected).unwrap();
        let u11 = ou.gen("U", &[1, 1]).unwrap();
        assert_eq!(p.pair(&ot.gen("T", &[1]).unwrap(), &u11).unwrap(), QScalar::q_pow(-1));
        assert_eq!(p.pair(&NcElement::one(), &u11).unwrap(), QScalar::one());
    }
}
