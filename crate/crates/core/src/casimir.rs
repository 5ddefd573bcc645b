//! Quantum traces, the `B_k` family, Harish-Chandra images and the
//! Cayley-Hamilton identity of the reflection equation algebra.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{dense_kernel, dense_rank, dense_solve, dense_zero, DenseMatrix};
use crate::ncalg::{r_hat, LeggedMatrix, Letter, NcElement};
use crate::qfield::QScalar;
use crate::qgroups::build::localize_oh;
use crate::qgroups::maps::star_matrix;
use crate::qgroups::{cholesky_map, permutations, AlgebraHandle, AlgebraMap};
use crate::report::Report;
use crate::rewrite::{Presentation, Reducer};

/// Diagonal weight of a quantum trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    /// `Q² = Diag(q^{2(N-i)})`.
    Q2,
    /// `Q^{-2}`.
    QInv2,
}

/// `Q = Diag(q^{N-i})`.
pub fn q_matrix(n: usize) -> LeggedMatrix {
    let mut m = LeggedMatrix::zero(1, n);
    for i in 0..n {
        m.set(i, i, NcElement::scalar(QScalar::q_pow((n - 1 - i) as i32)));
    }
    m
}

fn weight_entry(n: usize, i: usize, w: Weight) -> QScalar {
    let e = 2 * (n - 1 - i) as i32;
    QScalar::q_pow(if w == Weight::Q2 { e } else { -e })
}

/// `Σ_i weight_ii W_ii`.
pub fn tr_weighted(w: &LeggedMatrix, weight: Weight) -> NcElement {
    let n = w.dim();
    let mut out = NcElement::zero();
    for i in 0..n {
        out.add_scaled(&w.get(i, i), &weight_entry(n, i, weight));
    }
    out
}

/// `M^k` with entries reduced.
pub fn matrix_power(red: &mut Reducer<'_>, m: &LeggedMatrix, k: usize) -> Result<LeggedMatrix> {
    let mut p = LeggedMatrix::identity(1, m.dim());
    for _ in 0..k {
        p = p.mul_with(m, |e| red.normal_form(&e))?;
    }
    Ok(p)
}

/// Power trace `p_j = Tr_{Q²}(Z^j)` in `O_H`.
pub fn power_trace(oh: &AlgebraHandle, j: usize) -> Result<NcElement> {
    let z = oh.matrix("Z")?;
    let mut red = oh.pres.reducer();
    Ok(tr_weighted(&matrix_power(&mut red, &z, j)?, Weight::Q2))
}

/// `B_k = Σ_σ (-q)^{-l(σ)} q^{-e(σ)} Z_{k,σ(k)} ⋯ Z_{1,σ(1)}`.
pub fn b_element(oh: &AlgebraHandle, k: usize) -> Result<NcElement> {
    if k == 0 || k > oh.n {
        return Err(Error::Domain(format!("B_{k} needs 1 <= k <= {}", oh.n)));
    }
    b_from_matrix(&oh.matrix("Z")?, k)
}

/// `B_k` built on an arbitrary one-leg matrix.
pub fn b_from_matrix(z: &LeggedMatrix, k: usize) -> Result<NcElement> {
    let mut out = NcElement::zero();
    for (sigma, len) in permutations(k) {
        let e = (0..k).filter(|&i| sigma[i] < i).count() as i32;
        let coeff = &QScalar::neg_q_pow(-(len as i32)) * &QScalar::q_pow(-e);
        let mut term = NcElement::scalar(coeff);
        for i in (0..k).rev() {
            term = &term * &z.get(i, sigma[i]);
        }
        out.add_scaled(&term, &QScalar::one());
    }
    Ok(out)
}

/// Commutative Laurent polynomial in `T_1², …, T_N²`; keys are exponent vectors of the `T_i²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HcImage {
    n: usize,
    terms: BTreeMap<Vec<i32>, QScalar>,
}

impl HcImage {
    pub fn zero(n: usize) -> Self {
        HcImage { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, vec![0; n], QScalar::one())
    }

    pub fn constant(n: usize, c: QScalar) -> Self {
        Self::monomial(n, vec![0; n], c)
    }

    pub fn monomial(n: usize, exps: Vec<i32>, c: QScalar) -> Self {
        let mut h = HcImage::zero(n);
        h.add_term(exps, &c);
        h
    }

    /// `c · T_i²` (0-based `i`).
    pub fn t_squared(n: usize, i: usize, c: QScalar) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::monomial(n, e, c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &QScalar)> + '_ {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[i32]) -> QScalar {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exps: Vec<i32>, c: &QScalar) {
        let slot = self.terms.entry(exps).or_insert_with(QScalar::zero);
        *slot += c;
        self.terms.retain(|_, v| !v.is_zero());
    }

    pub fn add(&self, other: &HcImage) -> HcImage {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &QScalar) -> HcImage {
        let mut out = HcImage::zero(self.n);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), &(v * c));
        }
        out
    }

    pub fn mul(&self, other: &HcImage) -> HcImage {
        let mut out = HcImage::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e = a.iter().zip(b).map(|(s, t)| s + t).collect();
                out.add_term(e, &(x * y));
            }
        }
        out
    }

    /// Value under `T_i² ↦ values[i]`.
    pub fn evaluate(&self, values: &[QScalar]) -> Result<QScalar> {
        let mut out = QScalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in values.iter().zip(e) {
                t = &t * &v.pow(k)?;
            }
            out += &t;
        }
        Ok(out)
    }

    /// `q^{prefactor} e_k(q² T_1², q⁴ T_2², …, q^{2N} T_N²)`.
    pub fn elementary(n: usize, k: usize, prefactor: i32) -> HcImage {
        let mut out = HcImage::zero(n);
        for subset in subsets(n, k) {
            let mut e = vec![0; n];
            let mut pow = prefactor;
            for &i in &subset {
                e[i] = 1;
                pow += 2 * (i as i32 + 1);
            }
            out.add_term(e, &QScalar::q_pow(pow));
        }
        out
    }

    /// Image of `C_k` forced by `hc(B_k) = T_1²⋯T_k²` and `C_N = q^{N(N-1)} B_N`:
    /// prefactor `q^{-2k}`.
    pub fn ch_coefficient(n: usize, k: usize) -> HcImage {
        Self::elementary(n, k, -2 * k as i32)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == k {
            out.push((0..n).filter(|i| mask & (1 << i) != 0).collect());
        }
    }
    out
}

impl fmt::Display for HcImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| if k == 1 { format!("T{}^2", i + 1) } else { format!("T{}^{}", i + 1, 2 * k) })
                .collect();
            if mono.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// The Harish-Chandra map `P ∘ χ_T` from `O_H` into the diagonal Laurent subalgebra.
pub struct HarishChandra {
    pub chol: AlgebraMap,
    n: usize,
    /// Diagonal letters of `O_T`: `(index, +1 for T_i / -1 for T_i^{-1})`.
    diag: Vec<Option<(usize, i32)>>,
}

impl HarishChandra {
    pub fn new(oh: &AlgebraHandle, ot: &AlgebraHandle) -> Result<Self> {
        let chol = cholesky_map(oh, ot)?;
        let diag = ot
            .alphabet()
            .gens()
            .iter()
            .map(|g| match g.name {
                "T" => Some(((g.indices[0] - 1) as usize, 1)),
                "Ti" => Some(((g.indices[0] - 1) as usize, -1)),
                _ => None,
            })
            .collect();
        Ok(HarishChandra { chol, n: oh.n, diag })
    }

    /// Projection of an `O_T` normal form onto its diagonal monomials.
    pub fn project(&self, t: &NcElement) -> Result<HcImage> {
        let mut out = HcImage::zero(self.n);
        for (w, c) in t.terms() {
            let mut e = vec![0i32; self.n];
            let mut diagonal = true;
            for &l in w.letters() {
                match self.diag[l as usize] {
                    Some((i, s)) => e[i] += s,
                    None => {
                        diagonal = false;
                        break;
                    }
                }
            }
            if !diagonal {
                continue;
            }
            if e.iter().any(|k| k % 2 != 0) {
                return Err(Error::Convention("odd power of a diagonal generator in a Harish-Chandra image".into()));
            }
            out.add_term(e.iter().map(|k| k / 2).collect(), c);
        }
        Ok(out)
    }

    /// `hc(z)` without the centrality check.
    pub fn image(&self, red: &mut Reducer<'_>, z: &NcElement) -> Result<HcImage> {
        let t = self.chol.apply_with(red, z)?;
        self.project(&t)
    }

    pub fn image_alone(&self, z: &NcElement) -> Result<HcImage> {
        let mut red = self.chol.target.reducer();
        self.image(&mut red, z)
    }
}

/// `hc(z)` for central `z`.
pub fn hc(oh: &AlgebraHandle, ot: &AlgebraHandle, z: &NcElement) -> Result<HcImage> {
    if !oh.is_central(z)? {
        return Err(Error::Domain("Harish-Chandra image of a non-central element".into()));
    }
    HarishChandra::new(oh, ot)?.image_alone(z)
}

/// `O_H[B_N^{-1}]` with its Harish-Chandra map. Letter 0 is `B_N^{-1}`; the letters of
/// `O_H` follow, shifted by one.
pub struct LocalizedHc {
    pub pres: Presentation,
    hc: HarishChandra,
}

impl LocalizedHc {
    pub fn new(oh: &AlgebraHandle, ot: &AlgebraHandle) -> Result<Self> {
        let bn = oh.normal_form(&b_element(oh, oh.n)?)?;
        let pres = localize_oh(oh, &bn)?;
        let base = HarishChandra::new(oh, ot)?;
        let mut red = base.chol.target.reducer();
        let mut inv = NcElement::one();
        for i in 1..=oh.n as u8 {
            let t = ot.gen("Ti", &[i])?;
            inv = &(&inv * &t) * &t;
        }
        let mut images = vec![red.normal_form(&inv)?];
        images.extend(base.chol.images.iter().cloned());
        drop(red);
        let chol = AlgebraMap { target: base.chol.target.clone(), images };
        Ok(LocalizedHc { pres, hc: HarishChandra { chol, n: base.n, diag: base.diag } })
    }

    /// Embeds an element of `O_H`.
    pub fn lift(&self, z: &NcElement) -> NcElement {
        z.map_letters(|l| l + 1)
    }

    pub fn b_inverse(&self) -> NcElement {
        NcElement::letter(0)
    }

    pub fn is_central(&self, z: &NcElement) -> Result<bool> {
        let mut red = self.pres.reducer();
        let zn = red.normal_form(z)?;
        for l in 0..self.pres.alphabet().len() as Letter {
            let g = NcElement::letter(l);
            let c = &red.mul_normal(&zn, &g)? - &red.mul(&g, &zn)?;
            if !red.is_zero(&c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `hc(z)` for central `z` of the localization.
    pub fn hc(&self, z: &NcElement) -> Result<HcImage> {
        if !self.is_central(z)? {
            return Err(Error::Domain("Harish-Chandra image of a non-central element".into()));
        }
        self.hc.image_alone(z)
    }
}

/// Partitions of `k`, reverse-lexicographic (`[k]` first, `[1, …, 1]` last).
pub fn partitions(k: usize) -> Vec<Vec<usize>> {
    fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            go(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, &mut Vec::new(), &mut out);
    out
}

/// A central element of `O_H` together with its Harish-Chandra image.
#[derive(Clone, Debug)]
pub struct CentralElement {
    pub label: String,
    pub body: NcElement,
    pub hc: HcImage,
    /// `body = Σ c_μ p_μ` over partitions `μ`, when derived from power traces.
    pub expansion: Vec<(Vec<usize>, QScalar)>,
    /// Dimension of the solution space left after matching; 0 means unique.
    pub kernel_dim: usize,
}

impl CentralElement {
    /// Re-runs the centrality check against every generator.
    pub fn recheck(&self, oh: &AlgebraHandle) -> Result<bool> {
        oh.is_central(&self.body)
    }
}

/// `C_k` matched against [`HcImage::ch_coefficient`].
pub fn derive_c(oh: &AlgebraHandle, ot: &AlgebraHandle, k: usize) -> Result<CentralElement> {
    derive_c_against(oh, ot, k, &HcImage::ch_coefficient(oh.n, k))
}

/// Solves `Σ_μ c_μ hc(p_μ) = target` over partitions `μ ⊢ k` and returns `Σ_μ c_μ p_μ`.
///
/// Free unknowns are set to zero when the match is not unique; `kernel_dim` records it.
pub fn derive_c_against(oh: &AlgebraHandle, ot: &AlgebraHandle, k: usize, target: &HcImage) -> Result<CentralElement> {
    if k == 0 || k > oh.n {
        return Err(Error::Domain(format!("C_{k} needs 1 <= k <= {}", oh.n)));
    }
    let hcm = HarishChandra::new(oh, ot)?;
    let mut red_h = oh.pres.reducer();
    let mut red_t = hcm.chol.target.reducer();
    let z = oh.matrix("Z")?;
    let mut traces = Vec::with_capacity(k);
    let mut pow = LeggedMatrix::identity(1, oh.n);
    for j in 1..=k {
        pow = pow.mul_with(&z, |e| red_h.normal_form(&e))?;
        let p = tr_weighted(&pow, Weight::Q2);
        if !oh.is_central(&p)? {
            return Err(Error::Inconsistency(format!("power trace p_{j} is not central")));
        }
        traces.push(p);
    }
    let parts = partitions(k);
    let mut bodies = Vec::with_capacity(parts.len());
    let mut images = Vec::with_capacity(parts.len());
    for mu in &parts {
        let mut b = NcElement::one();
        for &j in mu {
            b = red_h.normal_form(&(&b * &traces[j - 1]))?;
        }
        images.push(hcm.image(&mut red_t, &b)?);
        bodies.push(b);
    }
    let keys: BTreeSet<Vec<i32>> =
        images.iter().chain(core::iter::once(target)).flat_map(|h| h.terms().map(|(e, _)| e.clone())).collect();
    let a: DenseMatrix = keys.iter().map(|key| images.iter().map(|h| h.coeff(key)).collect()).collect();
    let rhs: Vec<QScalar> = keys.iter().map(|key| target.coeff(key)).collect();
    let x = dense_solve(&a, &rhs)
        .ok_or_else(|| Error::Inconsistency(format!("no combination of power traces has image {target}")))?;
    let kernel_dim = parts.len() - dense_rank(&a);
    let mut body = NcElement::zero();
    for (b, c) in bodies.iter().zip(&x) {
        body.add_scaled(b, c);
    }
    let body = red_h.normal_form(&body)?;
    let hc = hcm.image(&mut red_t, &body)?;
    Ok(CentralElement { label: format!("C_{k}"), body, hc, expansion: parts.into_iter().zip(x).collect(), kernel_dim })
}

/// `B_k` with its certificate and image.
pub fn b_central(oh: &AlgebraHandle, ot: &AlgebraHandle, k: usize) -> Result<CentralElement> {
    let body = oh.normal_form(&b_element(oh, k)?)?;
    let hc = HarishChandra::new(oh, ot)?.image_alone(&body)?;
    Ok(CentralElement { label: format!("B_{k}"), body, hc, expansion: Vec::new(), kernel_dim: 0 })
}

/// Entries of `M^N - c_1 M^{N-1} + … + (-1)^N c_N` after normal form.
pub fn ch_polynomial(m: &LeggedMatrix, coeffs: &[NcElement], red: &mut Reducer<'_>) -> Result<LeggedMatrix> {
    let n = m.dim();
    if coeffs.len() != n {
        return Err(Error::Domain(format!("need {n} coefficients, got {}", coeffs.len())));
    }
    let mut powers = vec![LeggedMatrix::identity(1, n)];
    for _ in 0..n {
        let next = powers.last().expect("identity").mul_with(m, |e| red.normal_form(&e))?;
        powers.push(next);
    }
    let mut out = powers[n].clone();
    for (k, c) in coeffs.iter().enumerate() {
        let sign = if k % 2 == 0 { -QScalar::one() } else { QScalar::one() };
        let mk = &powers[n - k - 1];
        for i in 0..n {
            for j in 0..n {
                let e = mk.get(i, j);
                if !e.is_zero() {
                    let mut acc = out.get(i, j);
                    acc.add_scaled(&(c * &e), &sign);
                    out.set(i, j, acc);
                }
            }
        }
    }
    out.try_map_entries(|e| red.normal_form(e))
}

fn nonzero_entries(res: &LeggedMatrix, red: &mut Reducer<'_>, show: impl Fn(&NcElement) -> String) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    for ((i, j), e) in res.nonzero() {
        if !red.is_zero(e)? {
            bad.push(format!("[{}{}] {}", i + 1, j + 1, show(e)));
        }
    }
    Ok(bad)
}

/// The Cayley-Hamilton identity with derived coefficients, plus the pushforward through
/// Cholesky when `pushforward` is set.
pub fn verify_ch(oh: &AlgebraHandle, ot: &AlgebraHandle, pushforward: bool) -> Result<Report> {
    let n = oh.n;
    let mut rep = Report::new();
    let mut cs = Vec::with_capacity(n);
    for k in 1..=n {
        let c = derive_c(oh, ot, k)?;
        rep.record(format!("C_{k}"), oh.display(&c.body));
        rep.check(format!("C_{k}.central"), c.recheck(oh)?, "re-checked against all generators");
        if c.kernel_dim > 0 {
            rep.note(format!("C_{k}: match not unique, kernel dimension {}", c.kernel_dim));
        }
        cs.push(c);
    }
    let first = tr_weighted(&oh.matrix("Z")?, Weight::Q2);
    rep.check("C_1 = Tr_Q2(Z)", oh.is_zero(&(&cs[0].body - &first))?, oh.display(&cs[0].body));
    let bn = b_element(oh, n)?.scale(&QScalar::q_pow((n * (n - 1)) as i32));
    let diff = &cs[n - 1].body - &bn;
    rep.check(format!("C_{n} = q^{} B_{n}", n * (n - 1)), oh.is_zero(&diff)?, oh.display(&oh.normal_form(&diff)?));
    let bodies: Vec<NcElement> = cs.iter().map(|c| c.body.clone()).collect();
    let mut red = oh.pres.reducer();
    let res = ch_polynomial(&oh.matrix("Z")?, &bodies, &mut red)?;
    let bad = nonzero_entries(&res, &mut red, |e| oh.display(e))?;
    drop(red);
    rep.check("CH residual", bad.is_empty(), if bad.is_empty() { "0".into() } else { bad.join("; ") });
    if pushforward {
        let chol = cholesky_map(oh, ot)?;
        let mut red = chol.target.reducer();
        let z = oh.matrix("Z")?;
        let tt = z.try_map_entries(|e| chol.apply_with(&mut red, e))?;
        let images = bodies.iter().map(|b| chol.apply_with(&mut red, b)).collect::<Result<Vec<_>>>()?;
        let res = ch_polynomial(&tt, &images, &mut red)?;
        let bad = nonzero_entries(&res, &mut red, |e| ot.display(e))?;
        rep.check("CH residual of T*T", bad.is_empty(), if bad.is_empty() { "0".into() } else { bad.join("; ") });
    }
    Ok(rep)
}

/// Centrality of `Tr_{Q²}((X*X)^k)` and `Tr_{Q⁻²}((XX*)^k)` in `O_GLR` for `k ≤ kmax`, and the
/// proportionality `q^{1-N} Tr_{Q²}((XX*)^k) = q^{N-1} Tr_{Q⁻²}((X*X)^k)`.
///
/// The proportionality is also evaluated with `X*X` and `XX*` exchanged,
/// `q^{1-N} Tr_{Q²}((X*X)^k) = q^{N-1} Tr_{Q⁻²}((XX*)^k)`, which relates the two central
/// families. Only centrality and this exchanged form enter `pass`; the form above is recorded.
pub fn verify_newton_centrality(oglr: &AlgebraHandle, kmax: usize) -> Result<Report> {
    let n = oglr.n as i32;
    let x = oglr.matrix("X")?;
    let xs = star_matrix(oglr, &x)?;
    let mut red = oglr.pres.reducer();
    let sx = xs.mul_with(&x, |e| red.normal_form(&e))?;
    let xsx = x.mul_with(&xs, |e| red.normal_form(&e))?;
    drop(red);
    let mut rep = Report::new();
    let (mut p1, mut p2) = (LeggedMatrix::identity(1, oglr.n), LeggedMatrix::identity(1, oglr.n));
    let mut red = oglr.pres.reducer();
    for k in 0..=kmax {
        if k > 0 {
            p1 = p1.mul_with(&sx, |e| red.normal_form(&e))?;
            p2 = p2.mul_with(&xsx, |e| red.normal_form(&e))?;
        }
        let a = tr_weighted(&p1, Weight::Q2);
        let b = tr_weighted(&p2, Weight::QInv2);
        rep.check(format!("k={k} Tr_Q2((X*X)^k) central"), oglr.is_central(&a)?, "commutes with all generators");
        rep.check(format!("k={k} Tr_Q-2((XX*)^k) central"), oglr.is_central(&b)?, "commutes with all generators");
        if k == 0 {
            continue;
        }
        let lo = QScalar::q_pow(1 - n);
        let hi = QScalar::q_pow(n - 1);
        let stated = &tr_weighted(&p2, Weight::Q2).scale(&lo) - &tr_weighted(&p1, Weight::QInv2).scale(&hi);
        let ok = red.is_zero(&stated)?;
        rep.record(format!("k={k} q^(1-N)Tr_Q2((XX*)^k) = q^(N-1)Tr_Q-2((X*X)^k)"), if ok { "holds".into() } else { format!("fails, residual {}", oglr.display(&red.normal_form(&stated)?)) });
        let swapped = &a.scale(&lo) - &b.scale(&hi);
        let ok = red.is_zero(&swapped)?;
        rep.check(format!("k={k} q^(1-N)Tr_Q2((X*X)^k) = q^(N-1)Tr_Q-2((XX*)^k)"), ok, if ok { "0".into() } else { oglr.display(&red.normal_form(&swapped)?) });
    }
    Ok(rep)
}

/// `R̂_{i,i+1}` on `V^{⊗legs}` (1-based `i`).
pub fn r_hat_at(n: usize, legs: usize, i: usize) -> Result<LeggedMatrix> {
    r_hat(n).embed(legs, &[i, i + 1])
}

/// `F_k = R̂_{N-1,N} ⋯ R̂_{k,k+1}` on `V^{⊗N}`, and its adjoint `R̂_{k,k+1} ⋯ R̂_{N-1,N}`.
fn f_chain(n: usize, k: usize) -> Result<(LeggedMatrix, LeggedMatrix)> {
    let mut f = LeggedMatrix::identity(n, n);
    let mut fs = LeggedMatrix::identity(n, n);
    for i in (k..n).rev() {
        f = f.mul(&r_hat_at(n, n, i)?)?;
    }
    for i in k..n {
        fs = fs.mul(&r_hat_at(n, n, i)?)?;
    }
    Ok((f, fs))
}

fn residual_entries(m: &LeggedMatrix, red: &mut Reducer<'_>, h: &AlgebraHandle) -> Result<Option<String>> {
    for ((i, j), e) in m.nonzero() {
        if !red.is_zero(e)? {
            return Ok(Some(format!("entry ({i},{j}): {}", h.display(&red.normal_form(e)?))));
        }
    }
    Ok(None)
}

/// `L_k = F_k* Z_{N,N+1} F_k`: pairwise commutation and `L_N ⋯ L_k = (Z_{N,N+1} F_k)^{N-k+1}`.
pub fn verify_l_family(oh: &AlgebraHandle) -> Result<Report> {
    let n = oh.n;
    let zn = oh.matrix("Z")?.leg_embed(n, n)?;
    let mut red = oh.pres.reducer();
    let mut ls = Vec::with_capacity(n);
    let mut ms = Vec::with_capacity(n);
    for k in 1..=n {
        let (f, fs) = f_chain(n, k)?;
        ls.push(fs.mul(&zn)?.mul(&f)?);
        ms.push(zn.mul(&f)?);
    }
    let mut rep = Report::new();
    for a in 0..n {
        for b in a + 1..n {
            let ab = ls[a].mul_with(&ls[b], |e| red.normal_form(&e))?;
            let ba = ls[b].mul_with(&ls[a], |e| red.normal_form(&e))?;
            let bad = residual_entries(&ab.sub(&ba)?, &mut red, oh)?;
            rep.check(format!("[L_{}, L_{}] = 0", a + 1, b + 1), bad.is_none(), bad.unwrap_or_else(|| "0".into()));
        }
    }
    for k in 1..=n {
        let mut lhs = ls[n - 1].clone();
        for j in (k..n).rev() {
            lhs = lhs.mul_with(&ls[j - 1], |e| red.normal_form(&e))?;
        }
        let mut rhs = ms[k - 1].clone();
        for _ in 1..(n - k + 1) {
            rhs = rhs.mul_with(&ms[k - 1], |e| red.normal_form(&e))?;
        }
        let bad = residual_entries(&lhs.sub(&rhs)?, &mut red, oh)?;
        rep.check(format!("L_N..L_{k} = (Z F_{k})^{}", n - k + 1), bad.is_none(), bad.unwrap_or_else(|| "0".into()));
    }
    Ok(rep)
}

fn to_dense(m: &LeggedMatrix) -> DenseMatrix {
    let mut d = dense_zero(m.size(), m.size());
    for ((i, j), _) in m.nonzero() {
        d[*i][*j] = m.scalar_entry(*i, *j);
    }
    d
}

/// Joint `-q` eigenvectors of the `R̂_{i,i+1}` on `V^{⊗n}` (n ≥ 2 legs).
pub fn joint_minus_q_eigenspace(n: usize) -> Result<Vec<Vec<QScalar>>> {
    let size = n.pow(n as u32);
    let mut rows = DenseMatrix::new();
    let shift = LeggedMatrix::identity(n, n).scale(&QScalar::q());
    for i in 1..n {
        rows.extend(to_dense(&r_hat_at(n, n, i)?.add(&shift)?));
    }
    Ok(dense_kernel(&rows, size))
}

/// The vector-state slice of `(Z_{N,N+1} R̂_{N-1,N} ⋯ R̂_{12})^N` is `λ B_N` with `λ > 0` at `q0`.
pub fn verify_bn_slice(oh: &AlgebraHandle, q0: &BigRational) -> Result<Report> {
    let n = oh.n;
    if n < 2 {
        return Err(Error::Domain("the slice needs N >= 2".into()));
    }
    let mut rep = Report::new();
    let space = joint_minus_q_eigenspace(n)?;
    if space.len() != 1 {
        return Err(Error::Convention(format!("joint -q eigenspace has dimension {}", space.len())));
    }
    let v = &space[0];
    rep.record("eigenvector", v.iter().map(|c| format!("{c}")).collect::<Vec<_>>().join(", "));
    let zn = oh.matrix("Z")?.leg_embed(n, n)?;
    let (f, _) = f_chain(n, 1)?;
    let m = zn.mul(&f)?;
    let mut red = oh.pres.reducer();
    let mut p = m.clone();
    for _ in 1..n {
        p = p.mul_with(&m, |e| red.normal_form(&e))?;
    }
    let mut norm = QScalar::zero();
    for c in v {
        norm += &(c * c);
    }
    let mut slice = NcElement::zero();
    for ((a, b), e) in p.nonzero() {
        let c = &v[*a] * &v[*b];
        if !c.is_zero() {
            slice.add_scaled(e, &c);
        }
    }
    let slice = red.normal_form(&slice.scale(&norm.inv()?))?;
    let bn = red.normal_form(&b_element(oh, n)?)?;
    let (w, cb) = bn.terms().next().ok_or_else(|| Error::Internal("B_N reduced to zero".into()))?;
    let lambda = slice.coeff(w).checked_div(cb)?;
    let diff = &slice - &bn.scale(&lambda);
    let prop = red.is_zero(&diff)?;
    rep.check("slice = lambda B_N", prop, if prop { "0".into() } else { oh.display(&red.normal_form(&diff)?) });
    rep.record("lambda", &lambda);
    let val = lambda.specialize(q0)?;
    rep.check("lambda > 0", val > BigRational::zero(), format!("{val} at q = {q0}"));
    Ok(rep)
}

/// `B_i Z_kl = q^{2s} Z_kl B_i` with `s = 1` for `k ≤ i < l`, `-1` for `l ≤ i < k`, else 0.
pub fn verify_bi_commutation(oh: &AlgebraHandle) -> Result<Report> {
    let n = oh.n;
    let mut rep = Report::new();
    let mut red = oh.pres.reducer();
    for i in 1..=n {
        let b = red.normal_form(&b_element(oh, i)?)?;
        for k in 1..=n {
            for l in 1..=n {
                let s = if k <= i && i < l {
                    2
                } else if l <= i && i < k {
                    -2
                } else {
                    0
                };
                let z = oh.gen("Z", &[k as u8, l as u8])?;
                let d = &red.mul_normal(&b, &z)? - &red.mul(&z, &b)?.scale(&QScalar::q_pow(s));
                let ok = red.is_zero(&d)?;
                rep.check(format!("B_{i} Z_{k}{l} = q^{s} Z_{k}{l} B_{i}"), ok, if ok { "0".into() } else { oh.display(&red.normal_form(&d)?) });
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qgroups::{build, AlgebraKind};

    #[test]
    fn weighted_trace_of_identity() {
        let t = tr_weighted(&LeggedMatrix::identity(1, 2), Weight::Q2);
        assert_eq!(t.as_scalar().unwrap(), &QScalar::q_pow(2) + &QScalar::one());
    }

    #[test]
    fn b2_expansion() {
        let oh = build(AlgebraKind::OH, 2).unwrap();
        let z = |i, j| oh.gen("Z", &[i, j]).unwrap();
        let want = &(&z(2, 2) * &z(1, 1)) - &(&z(2, 1) * &z(1, 2)).scale(&QScalar::q_pow(-2));
        assert_eq!(b_element(&oh, 2).unwrap(), want);
    }
}
