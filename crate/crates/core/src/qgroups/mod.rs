//! Catalog of quantized algebras of `GL(N)` and their Hopf data.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::ncalg::{r21, r_matrix, Alphabet, GenId, LeggedMatrix, Letter, NcElement, StarRule, Word};
use crate::qfield::QScalar;
use crate::rewrite::{complete_from, CompletionReport, Presentation, Reducer};

pub(crate) mod build;
pub use build::{om_from_relations, om_relations};
pub mod det;
pub mod hopf;
pub mod maps;
pub mod pairing;

pub use det::{antipode_matrix, quantum_det, DetForm};
pub use hopf::HopfData;
pub use maps::{cholesky, cholesky_map, coact_ad, coact_ad_map, qr, qr_kernel, qr_map, uq_iso, uq_iso_map, AlgebraMap};
pub use pairing::{pairing_p, pairing_r, pin_p, pin_r, Pairing, PairingConvention, PinReport};

/// The algebras of the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraKind {
    /// `O_q(M_N)`, the FRT bialgebra.
    OM,
    /// `O_q(GL_N)`, localised at the quantum determinant.
    OGL,
    /// Realified `O_q(GL(N,C))` with generators `X`, `Y`.
    OGLR,
    /// `O_q(U(N))`.
    OU,
    /// `O_q(T(N))`, upper triangular with self-adjoint diagonal.
    OT,
    /// Reflection equation algebra `O_q(H(N))`.
    OH,
    /// `U_q(gl_N)`.
    Uqgl,
}

impl AlgebraKind {
    pub const ALL: [AlgebraKind; 7] =
        [AlgebraKind::OM, AlgebraKind::OGL, AlgebraKind::OGLR, AlgebraKind::OU, AlgebraKind::OT, AlgebraKind::OH, AlgebraKind::Uqgl];

    pub fn name(self) -> &'static str {
        match self {
            AlgebraKind::OM => "O_M",
            AlgebraKind::OGL => "O_GL",
            AlgebraKind::OGLR => "O_GLR",
            AlgebraKind::OU => "O_U",
            AlgebraKind::OT => "O_T",
            AlgebraKind::OH => "O_H",
            AlgebraKind::Uqgl => "U_qgl",
        }
    }

    pub fn is_star(self) -> bool {
        !matches!(self, AlgebraKind::OM | AlgebraKind::OGL)
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgebraKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm: String = s.chars().filter(|c| *c != '_' && *c != '-').flat_map(char::to_lowercase).collect();
        Ok(match norm.as_str() {
            "om" => AlgebraKind::OM,
            "ogl" => AlgebraKind::OGL,
            "oglr" => AlgebraKind::OGLR,
            "ou" => AlgebraKind::OU,
            "ot" => AlgebraKind::OT,
            "oh" => AlgebraKind::OH,
            "uqgl" => AlgebraKind::Uqgl,
            _ => return Err(Error::Domain(format!("unknown algebra kind '{s}'"))),
        })
    }
}

/// A completed presentation with its optional Hopf structure.
#[derive(Clone, Debug)]
pub struct AlgebraHandle {
    pub kind: AlgebraKind,
    pub n: usize,
    pub pres: Presentation,
    pub completion: CompletionReport,
    pub hopf: Option<HopfData>,
}

/// Default degree cap `2N + 2`.
pub fn default_degree_cap(n: usize) -> usize {
    2 * n + 2
}

/// Builds `kind` at rank `n` with the default degree cap.
pub fn build(kind: AlgebraKind, n: usize) -> Result<AlgebraHandle> {
    build_with_cap(kind, n, default_degree_cap(n))
}

pub fn build_with_cap(kind: AlgebraKind, n: usize, degree_cap: usize) -> Result<AlgebraHandle> {
    if n == 0 {
        return Err(Error::Domain("N must be at least 1".into()));
    }
    if n > 4 {
        return Err(Error::Resource(format!("N = {n} is beyond the supported range")));
    }
    build::build(kind, n, degree_cap)
}

impl AlgebraHandle {
    pub fn alphabet(&self) -> &Alphabet {
        self.pres.alphabet()
    }

    pub fn letter(&self, name: &str, indices: &[u8]) -> Result<Letter> {
        self.pres.letter(name, indices)
    }

    /// Generator as an element.
    pub fn gen(&self, name: &str, indices: &[u8]) -> Result<NcElement> {
        self.pres.gen(name, indices)
    }

    pub fn normal_form(&self, a: &NcElement) -> Result<NcElement> {
        self.pres.reducer().normal_form(a)
    }

    pub fn is_zero(&self, a: &NcElement) -> Result<bool> {
        self.pres.reducer().is_zero(a)
    }

    pub fn star(&self, a: &NcElement) -> Result<NcElement> {
        self.pres.star_apply(a)
    }

    pub fn display(&self, a: &NcElement) -> String {
        format!("{}", a.display(self.alphabet()))
    }

    /// The generating matrix called `name`: `X`, `Y`, `U`, `Z`, `T+` (upper, diagonal `T_i`)
    /// or `T-` (lower, diagonal `T_i^{-1}`).
    pub fn matrix(&self, name: &str) -> Result<LeggedMatrix> {
        generator_matrix(self.alphabet(), name, self.n)
    }

    /// Elements commuting test: `[a, g]` is zero for every generator `g`.
    pub fn is_central(&self, a: &NcElement) -> Result<bool> {
        let mut red = self.pres.reducer();
        let an = red.normal_form(a)?;
        for l in 0..self.alphabet().len() as Letter {
            let g = NcElement::letter(l);
            let c = &red.mul_normal(&an, &g)? - &red.mul(&g, &an)?;
            if !red.is_zero(&c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Generator matrix over `alpha`, with missing entries zero.
pub fn generator_matrix(alpha: &Alphabet, name: &str, n: usize) -> Result<LeggedMatrix> {
    let mut m = LeggedMatrix::zero(1, n);
    for i in 0..n {
        for j in 0..n {
            let (a, b) = ((i + 1) as u8, (j + 1) as u8);
            let g = match name {
                "T+" if i == j => alpha.get("T", &[a]).ok(),
                "T+" if i < j => alpha.get("Tp", &[a, b]).ok(),
                "T-" if i == j => alpha.get("Ti", &[a]).ok(),
                "T-" if i > j => alpha.get("Tm", &[a, b]).ok(),
                "T+" | "T-" => None,
                _ => Some(alpha.get(leak_name(name)?, &[a, b])?),
            };
            if let Some(l) = g {
                m.set(i, j, NcElement::letter(l));
            }
        }
    }
    if m.nnz() == 0 {
        return Err(Error::Domain(format!("no generator matrix '{name}'")));
    }
    Ok(m)
}

fn leak_name(name: &str) -> Result<&'static str> {
    Ok(match name {
        "X" => "X",
        "Y" => "Y",
        "U" => "U",
        "Z" => "Z",
        _ => return Err(Error::Domain(format!("no generator matrix '{name}'"))),
    })
}

/// Relations of `R12 A13 B23 = B23 A13 R12`, with `A`, `B` one-leg matrices over the same alphabet.
pub fn rtt_relations(r: &LeggedMatrix, a: &LeggedMatrix, b: &LeggedMatrix) -> Result<Vec<NcElement>> {
    let a13 = a.leg_embed(2, 1)?;
    let b23 = b.leg_embed(2, 2)?;
    let lhs = r.mul(&a13)?.mul(&b23)?;
    let rhs = b23.mul(&a13)?.mul(r)?;
    crate::rewrite::relations_from_matrix_eq(&lhs, &rhs)
}

/// Relations of `R21 Z13 R12 Z23 = Z23 R21 Z13 R12`.
pub fn re_relations(n: usize, z: &LeggedMatrix) -> Result<Vec<NcElement>> {
    let r = r_matrix(n);
    let r21m = r21(&r);
    let z13 = z.leg_embed(2, 1)?;
    let z23 = z.leg_embed(2, 2)?;
    let lhs = r21m.mul(&z13)?.mul(&r)?.mul(&z23)?;
    let rhs = z23.mul(&r21m)?.mul(&z13)?.mul(&r)?;
    crate::rewrite::relations_from_matrix_eq(&lhs, &rhs)
}

/// Entrywise differences of the reflection equation for an arbitrary one-leg matrix, unreduced.
pub fn re_residual(n: usize, z: &LeggedMatrix, red: &mut Reducer<'_>) -> Result<LeggedMatrix> {
    let r = r_matrix(n);
    let r21m = r21(&r);
    let z13 = z.leg_embed(2, 1)?;
    let z23 = z.leg_embed(2, 2)?;
    let lhs = r21m.mul(&z13)?.mul(&r)?.mul(&z23)?;
    let rhs = z23.mul(&r21m)?.mul(&z13)?.mul(&r)?;
    let d = lhs.sub(&rhs)?;
    d.try_map_entries(|e| red.normal_form(e))
}

// ---------------------------------------------------------------------------
// Tensor products of presentations.

/// `A_1 ⊗ ... ⊗ A_k` with slot tags `1..=k`. Letters of earlier slots come
/// first in the order, and letters of different slots commute.
pub fn tensor_presentation(parts: &[&Presentation]) -> Result<Presentation> {
    let mut gens = Vec::new();
    let mut offsets = Vec::new();
    for (k, p) in parts.iter().enumerate() {
        offsets.push(gens.len() as Letter);
        for g in p.alphabet().gens() {
            gens.push(g.with_slot((k + 1) as u8));
        }
    }
    let alpha = Alphabet::new(gens)?;
    let cap = parts.iter().map(|p| p.degree_cap()).max().unwrap_or(4) * 2;
    let mut rules = Vec::new();
    for (k, p) in parts.iter().enumerate() {
        let off = offsets[k];
        for (lead, rhs) in p.rules() {
            rules.push((shift_word(lead, off), rhs.map_letters(|l| l + off)));
        }
    }
    for a in 0..parts.len() {
        for b in (a + 1)..parts.len() {
            for x in 0..parts[a].alphabet().len() as Letter {
                for y in 0..parts[b].alphabet().len() as Letter {
                    let (lx, ly) = (x + offsets[a], y + offsets[b]);
                    rules.push((Word::from_slice(&[ly, lx]), NcElement::word(Word::from_slice(&[lx, ly]))));
                }
            }
        }
    }
    let mut p = Presentation::free(alpha, cap).with_rules(rules)?;
    for (k, part) in parts.iter().enumerate() {
        let off = offsets[k];
        for inv in part.inverses() {
            p.add_central_inverse(inv.letter + off, inv.base.map_letters(|l| l + off));
        }
    }
    Ok(p)
}

fn shift_word(w: &Word, off: Letter) -> Word {
    Word(w.letters().iter().map(|&l| l + off).collect())
}

/// Offset of slot `slot` (1-based) inside a tensor presentation built from parts of the given sizes.
pub fn slot_offset(sizes: &[usize], slot: usize) -> Letter {
    sizes[..slot - 1].iter().sum::<usize>() as Letter
}

/// Moves an element of a factor into slot `slot` of a tensor presentation.
pub fn into_slot(e: &NcElement, sizes: &[usize], slot: usize) -> NcElement {
    let off = slot_offset(sizes, slot);
    e.map_letters(|l| l + off)
}

// ---------------------------------------------------------------------------
// Substitution homomorphisms.

/// Algebra map defined on letters; anti-multiplicative when `anti` is set.
pub struct Hom<'a> {
    pub images: &'a [NcElement],
    pub anti: bool,
    memo: HashMap<Word, NcElement>,
}

impl<'a> Hom<'a> {
    pub fn new(images: &'a [NcElement], anti: bool) -> Self {
        Hom { images, anti, memo: HashMap::new() }
    }

    /// Image of `a`, reduced in the target by `red`. Letter images must be normal.
    pub fn apply(&mut self, red: &mut Reducer<'_>, a: &NcElement) -> Result<NcElement> {
        let mut out = NcElement::zero();
        for (w, c) in a.terms() {
            let img = self.word_image(red, w)?;
            out.add_scaled(&img, c);
        }
        Ok(out)
    }

    fn word_image(&mut self, red: &mut Reducer<'_>, w: &Word) -> Result<NcElement> {
        if w.is_empty() {
            return Ok(NcElement::one());
        }
        if let Some(e) = self.memo.get(w) {
            return Ok(e.clone());
        }
        let l = w.letters();
        let prefix = Word::from_slice(&l[..l.len() - 1]);
        let last = *l.last().expect("non-empty");
        let pre = self.word_image(red, &prefix)?;
        let li = self
            .images
            .get(last as usize)
            .ok_or_else(|| Error::Domain(format!("no image for letter {last}")))?;
        let img = if self.anti { red.mul_normal(li, &pre)? } else { red.mul_normal(&pre, li)? };
        if self.memo.len() < 200_000 {
            self.memo.insert(w.clone(), img.clone());
        }
        Ok(img)
    }
}

/// Applies a letter substitution into `target` and reduces.
pub fn substitute(target: &Presentation, images: &[NcElement], a: &NcElement) -> Result<NcElement> {
    let mut red = target.reducer();
    let imgs: Vec<NcElement> = images.iter().map(|e| red.normal_form(e)).collect::<Result<_>>()?;
    let mut h = Hom::new(&imgs, false);
    h.apply(&mut red, a)
}

/// Star rule helper: builds a [`StarRule`] from a letter map.
pub fn star_rule_from(n_letters: usize, f: impl Fn(Letter) -> Result<NcElement>) -> Result<StarRule> {
    let mut s = StarRule::new(n_letters);
    for l in 0..n_letters as Letter {
        s.set(l, f(l)?);
    }
    Ok(s)
}

/// All permutations of `0..n` with their inversion counts, in lexicographic order.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, usize)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    let mut used = alloc::vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, usize)>) {
        if cur.len() == n {
            let inv = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).filter(|&(i, j)| cur[i] > cur[j]).count();
            out.push((cur.clone(), inv));
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

/// Completes extra relations on top of a handle's presentation (used for quotients).
pub fn extend_presentation(p: &Presentation, rels: Vec<NcElement>) -> Result<(Presentation, CompletionReport)> {
    complete_from(p.clone(), rels)
}

pub(crate) fn gid(name: &'static str, idx: &[u8]) -> GenId {
    GenId::new(name, idx)
}

pub(crate) fn qs(c: i64) -> QScalar {
    QScalar::from_int(c)
}

/// Expected count of PBW monomials of degree `d` in the O_M, O_H or O_T
/// presentation at rank `n`.
///
/// O_M and O_H have `n²` commuting-up-to-order letters. O_T has `n² − n`
/// off-diagonal letters plus a Laurent variable for each diagonal entry,
/// where `T_i^e` has length `|e|`.
pub fn pbw_oracle(kind: AlgebraKind, n: usize, d: usize) -> Result<u64> {
    match kind {
        AlgebraKind::OM | AlgebraKind::OH => Ok(crate::rewrite::commutative_monomials((n * n) as u64, d as u64)),
        AlgebraKind::OT => {
            // laurent[b] = number of e ∈ Z^n with Σ|e_i| = b
            let mut laurent = alloc::vec![0u64; d + 1];
            laurent[0] = 1;
            for _ in 0..n {
                let mut next = alloc::vec![0u64; d + 1];
                for (b, &c) in laurent.iter().enumerate() {
                    for (e, slot) in next.iter_mut().enumerate().skip(b) {
                        *slot += c * if e == b { 1 } else { 2 };
                    }
                }
                laurent = next;
            }
            let off = (n * n - n) as u64;
            Ok((0..=d).map(|a| crate::rewrite::commutative_monomials(off, a as u64) * laurent[d - a]).sum())
        }
        other => Err(Error::Domain(format!("no PBW oracle for {other}"))),
    }
}

/// Overlap resolution up to degree 3 and irreducible-word counts against
/// [`pbw_oracle`] up to `dmax`.
pub fn check_pbw(h: &AlgebraHandle, dmax: usize) -> Result<crate::Report> {
    let mut rep = crate::Report::new();
    let mut p = h.pres.clone();
    p.set_degree_cap(3);
    let (_, c) = complete_from(p, Vec::new())?;
    rep.check("overlaps", c.added_rules == 0, format!("{} checked, {} added", c.overlaps_checked, c.added_rules));
    let counts = h.pres.irreducible_counts(dmax);
    for (d, &got) in counts.iter().enumerate() {
        let want = pbw_oracle(h.kind, h.n, d)?;
        rep.check(format!("degree {d}"), got == want, format!("{got} words, oracle {want}"));
    }
    Ok(rep)
}
