//! Free algebra arithmetic over [`QScalar`]: words, linear combinations,
//! generator metadata, and matrices in leg notation.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::qfield::QScalar;

/// Index of a generator in its alphabet. The alphabet order is the letter order.
pub type Letter = u16;

/// A finite sequence of letters. Ordered degree-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub SmallVec<[Letter; 8]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn single(l: Letter) -> Self {
        let mut v = SmallVec::new();
        v.push(l);
        Word(v)
    }

    pub fn from_slice(s: &[Letter]) -> Self {
        Word(SmallVec::from_slice(s))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Finite linear combination of words with non-zero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NcElement {
    terms: BTreeMap<Word, QScalar>,
}

impl NcElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(QScalar::one())
    }

    pub fn scalar(c: QScalar) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn letter(l: Letter) -> Self {
        Self::term(Word::single(l), QScalar::one())
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, QScalar::one())
    }

    pub fn term(w: Word, c: QScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        NcElement { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, QScalar)>>(it: I) -> Self {
        let mut e = Self::zero();
        for (w, c) in it {
            e.add_term(w, &c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending word order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &QScalar)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, QScalar)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, w: &Word) -> QScalar {
        self.terms.get(w).cloned().unwrap_or_else(QScalar::zero)
    }

    /// Coefficient of the empty word.
    pub fn constant(&self) -> QScalar {
        self.coeff(&Word::empty())
    }

    /// Largest word and its coefficient.
    pub fn leading(&self) -> Option<(&Word, &QScalar)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// The scalar value when the element is a multiple of the unit.
    pub fn as_scalar(&self) -> Option<QScalar> {
        match self.terms.len() {
            0 => Some(QScalar::zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, w: Word, c: &QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &NcElement, c: &QScalar) {
        if c.is_zero() {
            return;
        }
        let unit = c.is_one();
        for (w, a) in &other.terms {
            if unit {
                self.add_term(w.clone(), a);
            } else {
                self.add_term(w.clone(), &(a * c));
            }
        }
    }

    pub fn scale(&self, c: &QScalar) -> NcElement {
        if c.is_zero() {
            return NcElement::zero();
        }
        NcElement { terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect() }
    }

    /// Free-algebra product (concatenation).
    pub fn mul(&self, other: &NcElement) -> NcElement {
        let mut out = NcElement::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), &(a * b));
            }
        }
        out
    }

    /// Applies a letter map that keeps words as words.
    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> NcElement {
        NcElement::from_terms(
            self.terms.iter().map(|(w, c)| (Word(w.0.iter().map(|&l| f(l)).collect()), c.clone())),
        )
    }

    /// Renders with generator names from `alpha`, e.g. `q^2*X11.X21 - X12.X22`.
    pub fn display<'a>(&'a self, alpha: &'a Alphabet) -> ElementDisplay<'a> {
        ElementDisplay { e: self, alpha }
    }
}

impl core::ops::Add for &NcElement {
    type Output = NcElement;
    fn add(self, rhs: &NcElement) -> NcElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &QScalar::one());
        out
    }
}

impl core::ops::Sub for &NcElement {
    type Output = NcElement;
    fn sub(self, rhs: &NcElement) -> NcElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &QScalar::from_int(-1));
        out
    }
}

impl core::ops::Neg for &NcElement {
    type Output = NcElement;
    fn neg(self) -> NcElement {
        self.scale(&QScalar::from_int(-1))
    }
}

impl core::ops::Mul for &NcElement {
    type Output = NcElement;
    fn mul(self, rhs: &NcElement) -> NcElement {
        NcElement::mul(self, rhs)
    }
}

impl fmt::Debug for NcElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

pub struct ElementDisplay<'a> {
    e: &'a NcElement,
    alpha: &'a Alphabet,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (w, c) in self.e.terms.iter().rev() {
            let mut coeff = c.clone();
            let negative = coeff.numerator().terms().last().is_some_and(|(_, k)| k.sign() == num_bigint::Sign::Minus);
            if negative {
                coeff = -coeff;
            }
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let word = self.alpha.word_name(w);
            if w.is_empty() {
                write!(f, "{coeff}")?;
            } else if coeff.is_one() {
                f.write_str(&word)?;
            } else if coeff.is_laurent() && coeff.numerator().terms().count() == 1 {
                write!(f, "{coeff}*{word}")?;
            } else {
                write!(f, "({coeff})*{word}")?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------

/// Generator label: a name, small indices, and a tensor-slot tag (0 = none).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenId {
    pub name: &'static str,
    pub indices: SmallVec<[u8; 2]>,
    pub slot: u8,
}

impl GenId {
    pub fn new(name: &'static str, indices: &[u8]) -> Self {
        GenId { name, indices: SmallVec::from_slice(indices), slot: 0 }
    }

    pub fn with_slot(&self, slot: u8) -> Self {
        GenId { slot, ..self.clone() }
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slot != 0 {
            write!(f, "{}:", self.slot)?;
        }
        f.write_str(self.name)?;
        for i in &self.indices {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Ordered list of generators; position is the letter and its rank.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    gens: Vec<GenId>,
}

impl Alphabet {
    pub fn new(gens: Vec<GenId>) -> Result<Self> {
        for (k, g) in gens.iter().enumerate() {
            if gens[..k].contains(g) {
                return Err(Error::Domain(format!("duplicate generator {g}")));
            }
        }
        if gens.len() > Letter::MAX as usize {
            return Err(Error::Resource(String::from("alphabet too large")));
        }
        Ok(Alphabet { gens })
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gens(&self) -> &[GenId] {
        &self.gens
    }

    pub fn gen(&self, l: Letter) -> &GenId {
        &self.gens[l as usize]
    }

    pub fn find(&self, g: &GenId) -> Option<Letter> {
        self.gens.iter().position(|x| x == g).map(|p| p as Letter)
    }

    /// Letter for `name` with `indices` in slot 0.
    pub fn get(&self, name: &str, indices: &[u8]) -> Result<Letter> {
        self.gens
            .iter()
            .position(|g| g.name == name && g.indices.as_slice() == indices && g.slot == 0)
            .map(|p| p as Letter)
            .ok_or_else(|| Error::Domain(format!("no generator {name}{indices:?}")))
    }

    pub fn get_in_slot(&self, name: &str, indices: &[u8], slot: u8) -> Result<Letter> {
        self.gens
            .iter()
            .position(|g| g.name == name && g.indices.as_slice() == indices && g.slot == slot)
            .map(|p| p as Letter)
            .ok_or_else(|| Error::Domain(format!("no generator {slot}:{name}{indices:?}")))
    }

    pub fn word_name(&self, w: &Word) -> String {
        if w.is_empty() {
            return String::from("1");
        }
        let parts: Vec<String> = w.0.iter().map(|&l| format!("{}", self.gens[l as usize])).collect();
        parts.join(".")
    }

    /// Checks that every letter of `e` belongs to this alphabet.
    pub fn check(&self, e: &NcElement) -> Result<()> {
        for (w, _) in e.terms() {
            if let Some(&l) = w.0.iter().find(|&&l| l as usize >= self.gens.len()) {
                return Err(Error::Domain(format!("letter {l} outside an alphabet of size {}", self.gens.len())));
            }
        }
        Ok(())
    }
}

/// Product of two elements after checking both against `alpha`.
pub fn nc_mul_checked(alpha: &Alphabet, a: &NcElement, b: &NcElement) -> Result<NcElement> {
    alpha.check(a)?;
    alpha.check(b)?;
    Ok(a * b)
}

/// Star images per letter; extended antimultiplicatively and `QScalar`-linearly.
#[derive(Clone, Debug, Default)]
pub struct StarRule {
    pub images: Vec<Option<NcElement>>,
}

impl StarRule {
    pub fn new(n_letters: usize) -> Self {
        StarRule { images: alloc::vec![None; n_letters] }
    }

    pub fn set(&mut self, l: Letter, img: NcElement) {
        self.images[l as usize] = Some(img);
    }

    pub fn image(&self, l: Letter) -> Result<&NcElement> {
        self.images
            .get(l as usize)
            .and_then(Option::as_ref)
            .ok_or_else(|| Error::Domain(format!("letter {l} has no star image")))
    }
}

// ---------------------------------------------------------------------------

/// Square matrix on `(k^dim)^{⊗legs}` with [`NcElement`] entries. Row and
/// column multi-indices are packed in base `dim`, leg 1 most significant,
/// with 0-based digits.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LeggedMatrix {
    legs: usize,
    dim: usize,
    entries: BTreeMap<(usize, usize), NcElement>,
}

impl LeggedMatrix {
    pub fn zero(legs: usize, dim: usize) -> Self {
        LeggedMatrix { legs, dim, entries: BTreeMap::new() }
    }

    pub fn identity(legs: usize, dim: usize) -> Self {
        let mut m = Self::zero(legs, dim);
        for i in 0..m.size() {
            m.set(i, i, NcElement::one());
        }
        m
    }

    /// Builds a one-leg matrix from an entry function (0-based indices).
    pub fn from_fn(legs: usize, dim: usize, f: impl Fn(usize, usize) -> NcElement) -> Self {
        let mut m = Self::zero(legs, dim);
        let s = m.size();
        for i in 0..s {
            for j in 0..s {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Side length `dim^legs`.
    pub fn size(&self) -> usize {
        self.dim.pow(self.legs as u32)
    }

    pub fn get(&self, i: usize, j: usize) -> NcElement {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&NcElement> {
        self.entries.get(&(i, j))
    }

    pub fn set(&mut self, i: usize, j: usize, e: NcElement) {
        if e.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), e);
        }
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&(usize, usize), &NcElement)> + '_ {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Packs 0-based leg digits into a flat index.
    pub fn pack(&self, digits: &[usize]) -> usize {
        digits.iter().fold(0, |acc, &d| acc * self.dim + d)
    }

    /// Unpacks a flat index into `legs` digits.
    pub fn unpack(&self, mut idx: usize) -> SmallVec<[usize; 4]> {
        let mut out: SmallVec<[usize; 4]> = smallvec::smallvec![0; self.legs];
        for k in (0..self.legs).rev() {
            out[k] = idx % self.dim;
            idx /= self.dim;
        }
        out
    }

    /// Tensors `self` (on `positions.len()` legs) with identities so that its
    /// legs sit at `positions` (1-based) of a `total`-leg matrix.
    pub fn embed(&self, total: usize, positions: &[usize]) -> Result<LeggedMatrix> {
        if positions.len() != self.legs {
            return Err(Error::Domain(format!("{} positions for a {}-leg matrix", positions.len(), self.legs)));
        }
        for (k, &p) in positions.iter().enumerate() {
            if p == 0 || p > total || positions[..k].contains(&p) {
                return Err(Error::Domain(format!("leg position {p} out of range 1..={total}")));
            }
        }
        let mut out = LeggedMatrix::zero(total, self.dim);
        let rest: Vec<usize> = (1..=total).filter(|p| !positions.contains(p)).collect();
        let n_rest = self.dim.pow(rest.len() as u32);
        for (&(i, j), e) in &self.entries {
            let di = self.unpack(i);
            let dj = self.unpack(j);
            for r in 0..n_rest {
                let mut rd: SmallVec<[usize; 4]> = smallvec::smallvec![0; rest.len()];
                let mut x = r;
                for k in (0..rest.len()).rev() {
                    rd[k] = x % self.dim;
                    x /= self.dim;
                }
                let mut row: SmallVec<[usize; 4]> = smallvec::smallvec![0; total];
                let mut col: SmallVec<[usize; 4]> = smallvec::smallvec![0; total];
                for (k, &p) in positions.iter().enumerate() {
                    row[p - 1] = di[k];
                    col[p - 1] = dj[k];
                }
                for (k, &p) in rest.iter().enumerate() {
                    row[p - 1] = rd[k];
                    col[p - 1] = rd[k];
                }
                out.set(out.pack(&row), out.pack(&col), e.clone());
            }
        }
        Ok(out)
    }

    /// Single-leg embedding, the common case.
    pub fn leg_embed(&self, total: usize, position: usize) -> Result<LeggedMatrix> {
        if self.legs != 1 {
            return Err(Error::Domain(String::from("leg_embed expects a one-leg matrix")));
        }
        self.embed(total, &[position])
    }

    /// Matrix product; in each entry the left factor's element comes first.
    pub fn mul(&self, other: &LeggedMatrix) -> Result<LeggedMatrix> {
        self.mul_with(other, Ok)
    }

    /// Matrix product with `reduce` applied to every finished entry.
    pub fn mul_with(&self, other: &LeggedMatrix, mut reduce: impl FnMut(NcElement) -> Result<NcElement>) -> Result<LeggedMatrix> {
        if self.legs != other.legs || self.dim != other.dim {
            return Err(Error::Domain(String::from("legged matrix shape mismatch")));
        }
        let mut by_row: BTreeMap<usize, Vec<(usize, &NcElement)>> = BTreeMap::new();
        for (&(k, j), e) in &other.entries {
            by_row.entry(k).or_default().push((j, e));
        }
        let mut acc: BTreeMap<(usize, usize), NcElement> = BTreeMap::new();
        for (&(i, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(j, b) in row {
                    let prod = a * b;
                    let slot = acc.entry((i, j)).or_default();
                    slot.add_scaled(&prod, &QScalar::one());
                }
            }
        }
        let mut out = LeggedMatrix::zero(self.legs, self.dim);
        for ((i, j), e) in acc {
            out.set(i, j, reduce(e)?);
        }
        Ok(out)
    }

    pub fn add(&self, other: &LeggedMatrix) -> Result<LeggedMatrix> {
        self.combine(other, &QScalar::one())
    }

    pub fn sub(&self, other: &LeggedMatrix) -> Result<LeggedMatrix> {
        self.combine(other, &QScalar::from_int(-1))
    }

    fn combine(&self, other: &LeggedMatrix, c: &QScalar) -> Result<LeggedMatrix> {
        if self.legs != other.legs || self.dim != other.dim {
            return Err(Error::Domain(String::from("legged matrix shape mismatch")));
        }
        let mut out = self.clone();
        for (&(i, j), e) in &other.entries {
            let mut x = out.get(i, j);
            x.add_scaled(e, c);
            out.set(i, j, x);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &QScalar) -> LeggedMatrix {
        let mut out = LeggedMatrix::zero(self.legs, self.dim);
        for (&(i, j), e) in &self.entries {
            out.set(i, j, e.scale(c));
        }
        out
    }

    pub fn map_entries(&self, f: impl Fn(&NcElement) -> NcElement) -> LeggedMatrix {
        let mut out = LeggedMatrix::zero(self.legs, self.dim);
        for (&(i, j), e) in &self.entries {
            out.set(i, j, f(e));
        }
        out
    }

    pub fn try_map_entries(&self, mut f: impl FnMut(&NcElement) -> Result<NcElement>) -> Result<LeggedMatrix> {
        let mut out = LeggedMatrix::zero(self.legs, self.dim);
        for (&(i, j), e) in &self.entries {
            out.set(i, j, f(e)?);
        }
        Ok(out)
    }

    /// Swaps the order of the legs by `perm` (new leg k is old leg perm[k], 0-based).
    pub fn permute_legs(&self, perm: &[usize]) -> LeggedMatrix {
        let mut out = LeggedMatrix::zero(self.legs, self.dim);
        for (&(i, j), e) in &self.entries {
            let di = self.unpack(i);
            let dj = self.unpack(j);
            let ni: SmallVec<[usize; 4]> = perm.iter().map(|&p| di[p]).collect();
            let nj: SmallVec<[usize; 4]> = perm.iter().map(|&p| dj[p]).collect();
            out.set(out.pack(&ni), out.pack(&nj), e.clone());
        }
        out
    }

    /// True when every entry is a scalar.
    pub fn is_scalar(&self) -> bool {
        self.entries.values().all(|e| e.as_scalar().is_some())
    }

    pub fn scalar_entry(&self, i: usize, j: usize) -> QScalar {
        self.get(i, j).as_scalar().unwrap_or_else(QScalar::zero)
    }
}

// ---------------------------------------------------------------------------
// R-matrices of GL(N).

fn q_inv() -> QScalar {
    QScalar::q_pow(-1)
}

/// `R = q^{-1} Σ e_ii⊗e_ii + Σ_{i≠j} e_ii⊗e_jj + (q^{-1}-q) Σ_{i<j} e_ij⊗e_ji`.
/// Entry `[(a,b),(c,d)]` is the coefficient of `e_ac ⊗ e_bd`.
pub fn r_matrix(n: usize) -> LeggedMatrix {
    r_family(n, q_inv(), &q_inv() - &QScalar::q())
}

/// Inverse of [`r_matrix`]: `q ↔ q^{-1}` throughout.
pub fn r_matrix_inv(n: usize) -> LeggedMatrix {
    r_family(n, QScalar::q(), &QScalar::q() - &q_inv())
}

fn r_family(n: usize, diag: QScalar, off: QScalar) -> LeggedMatrix {
    let mut m = LeggedMatrix::zero(2, n);
    for a in 0..n {
        for b in 0..n {
            let i = m.pack(&[a, b]);
            let d = if a == b { diag.clone() } else { QScalar::one() };
            m.set(i, i, NcElement::scalar(d));
            if a < b {
                m.set(i, m.pack(&[b, a]), NcElement::scalar(off.clone()));
            }
        }
    }
    m
}

/// `R_21`, the leg-swapped matrix.
pub fn r21(m: &LeggedMatrix) -> LeggedMatrix {
    m.permute_legs(&[1, 0])
}

/// `R̂ = Σ R` with `Σ` the flip: `R̂[(a,b),(c,d)] = R[(b,a),(c,d)]`.
pub fn r_hat(n: usize) -> LeggedMatrix {
    flip_rows(&r_matrix(n))
}

pub fn r_hat_inv(n: usize) -> LeggedMatrix {
    // (ΣR)^{-1} = R^{-1} Σ
    let ri = r_matrix_inv(n);
    let mut out = LeggedMatrix::zero(2, n);
    for (&(i, j), e) in ri.nonzero() {
        let dj = ri.unpack(j);
        out.set(i, ri.pack(&[dj[1], dj[0]]), e.clone());
    }
    out
}

fn flip_rows(m: &LeggedMatrix) -> LeggedMatrix {
    let mut out = LeggedMatrix::zero(2, m.dim());
    for (&(i, j), e) in m.nonzero() {
        let di = m.unpack(i);
        out.set(m.pack(&[di[1], di[0]]), j, e.clone());
    }
    out
}

/// Residual `R12 R13 R23 - R23 R13 R12` of the Yang-Baxter equation.
pub fn ybe_residual(r: &LeggedMatrix) -> Result<LeggedMatrix> {
    let r12 = r.embed(3, &[1, 2])?;
    let r13 = r.embed(3, &[1, 3])?;
    let r23 = r.embed(3, &[2, 3])?;
    let lhs = r12.mul(&r13)?.mul(&r23)?;
    let rhs = r23.mul(&r13)?.mul(&r12)?;
    lhs.sub(&rhs)
}

/// Residual of `R̂² + (q - q^{-1}) R̂ - 1`.
pub fn hecke_residual(n: usize) -> Result<LeggedMatrix> {
    hecke_residual_of(&r_matrix(n))
}

/// As [`hecke_residual`] for an arbitrary two-leg `r`.
pub fn hecke_residual_of(r: &LeggedMatrix) -> Result<LeggedMatrix> {
    let n = r.dim();
    let rh = flip_rows(r);
    let sq = rh.mul(&rh)?;
    sq.add(&rh.scale(&(&QScalar::q() - &q_inv())))?.sub(&LeggedMatrix::identity(2, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn gens2() -> Alphabet {
        Alphabet::new(alloc::vec![
            GenId::new("X", &[1, 1]),
            GenId::new("X", &[1, 2]),
            GenId::new("X", &[2, 1]),
            GenId::new("X", &[2, 2]),
        ])
        .unwrap()
    }

    #[test]
    fn unit_and_distributivity() {
        let a = gens2();
        let x11 = NcElement::letter(0);
        assert_eq!(&x11 * &NcElement::one(), x11);
        let s = &(&NcElement::letter(0) + &NcElement::letter(1)) * &NcElement::letter(2);
        assert_eq!(s.display(&a).to_string(), "X12.X21 + X11.X21");
        let t = (&x11 * &x11).scale(&QScalar::q());
        assert_eq!(t.display(&a).to_string(), "q*X11.X11");
    }

    #[test]
    fn mismatched_alphabet_is_domain_error() {
        let a = gens2();
        let bad = NcElement::letter(9);
        assert!(matches!(nc_mul_checked(&a, &bad, &NcElement::one()), Err(Error::Domain(_))));
    }

    #[test]
    fn word_order_is_degree_lex() {
        let a = Word::from_slice(&[3]);
        let b = Word::from_slice(&[0, 0]);
        let c = Word::from_slice(&[0, 1]);
        assert!(a < b && b < c);
    }

    #[test]
    fn leg_embedding_delta_structure() {
        // X in legs (1,2,alg): entry ((1,k),(2,k)) of X_13 is X12
        let x = LeggedMatrix::from_fn(1, 2, |i, j| NcElement::letter((2 * i + j) as Letter));
        let x13 = x.leg_embed(2, 1).unwrap();
        for k in 0..2 {
            assert_eq!(x13.get(x13.pack(&[0, k]), x13.pack(&[1, k])), NcElement::letter(1));
            assert!(x13.get(x13.pack(&[0, k]), x13.pack(&[1, 1 - k])).is_zero());
        }
        let id = LeggedMatrix::identity(1, 2).leg_embed(2, 1).unwrap();
        assert_eq!(id, LeggedMatrix::identity(2, 2));
        assert_eq!(LeggedMatrix::identity(2, 2).mul(&x13).unwrap(), x13);
    }

    #[test]
    fn embeddings_at_disjoint_legs_commute() {
        let m = LeggedMatrix::from_fn(1, 2, |i, j| NcElement::scalar(QScalar::from_int((2 * i + j + 1) as i64)));
        let n = LeggedMatrix::from_fn(1, 2, |i, j| NcElement::scalar(QScalar::q_pow((3 * i + j) as i32)));
        let a = m.leg_embed(3, 1).unwrap().mul(&n.leg_embed(3, 3).unwrap()).unwrap();
        let b = n.leg_embed(3, 3).unwrap().mul(&m.leg_embed(3, 1).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn r_matrix_identities() {
        for n in 2..=4 {
            let r = r_matrix(n);
            assert_eq!(r.mul(&r_matrix_inv(n)).unwrap(), LeggedMatrix::identity(2, n));
            assert_eq!(r.nnz(), n * n + n * (n - 1) / 2);
            assert_eq!(ybe_residual(&r).unwrap().nnz(), 0, "YBE at N={n}");
            assert_eq!(hecke_residual(n).unwrap().nnz(), 0);
            assert_eq!(r_hat(n).mul(&r_hat_inv(n)).unwrap(), LeggedMatrix::identity(2, n));
        }
    }

    #[test]
    fn r_hat_minus_q_eigenvector() {
        // v = e1⊗e2 - q e2⊗e1 satisfies R̂ v = -q v
        let rh = r_hat(2);
        let v = [(rh.pack(&[0, 1]), QScalar::one()), (rh.pack(&[1, 0]), -QScalar::q())];
        for row in 0..4 {
            let mut s = QScalar::zero();
            for (col, c) in &v {
                s += &(&rh.scalar_entry(row, *col) * c);
            }
            let expect = v.iter().find(|(c, _)| *c == row).map(|(_, x)| -(&QScalar::q() * x)).unwrap_or_default();
            assert_eq!(s, expect);
        }
    }
}
