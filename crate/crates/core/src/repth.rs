//! Finite-dimensional highest-weight modules of `U_q(gl_N)`, built inside tensor powers of
//! the vector representation, and the `O_T` action on them.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::casimir::{HcImage, LocalizedHc};
use crate::error::{Error, Result};
use crate::linalg::{dense_kernel, dense_zero, Echelon, SparseMatrix, SparseRow};
use crate::ncalg::{r21, r_hat, r_matrix, r_matrix_inv, LeggedMatrix, NcElement, Word};
use crate::qfield::{q_binom, q_int, QScalar};
use crate::qgroups::{cholesky_map, AlgebraHandle, AlgebraKind, AlgebraMap};
use crate::report::Report;

/// Largest ambient tensor power dimension `irrep` will build.
pub const MAX_AMBIENT_DIM: usize = 20_000;

/// An integral `gl_N` weight.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub Vec<i32>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn total(&self) -> i64 {
        self.0.iter().map(|&x| x as i64).sum()
    }

    /// All dominant weights with `λ_1 - λ_N ≤ spread` and `|λ_N| ≤ bound`.
    pub fn dominant_window(n: usize, spread: i32, bound: i32) -> Vec<Weight> {
        fn go(n: usize, lo: i32, hi: i32, cur: &mut Vec<i32>, out: &mut Vec<Weight>) {
            if cur.len() == n {
                let mut w = cur.clone();
                w.reverse();
                out.push(Weight(w));
                return;
            }
            let from = cur.last().copied().unwrap_or(lo);
            for x in from..=hi {
                cur.push(x);
                go(n, lo, hi, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        for last in -bound..=bound {
            let mut cur = vec![last];
            go(n, last, last + spread, &mut cur, &mut out);
        }
        out.sort();
        out
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// A `U_q(gl_N)` module on a basis of weight vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    n: usize,
    weights: Vec<Vec<i32>>,
    e: Vec<SparseMatrix>,
    f: Vec<SparseMatrix>,
}

impl Module {
    pub fn trivial(n: usize) -> Self {
        Module { n, weights: vec![vec![0; n]], e: vec![SparseMatrix::zero(1, 1); n.saturating_sub(1)], f: vec![SparseMatrix::zero(1, 1); n.saturating_sub(1)] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// `K`-weight of each basis vector: `K_i b = q^{w_i} b`.
    pub fn weights(&self) -> &[Vec<i32>] {
        &self.weights
    }

    /// `E_i`, 1-based.
    pub fn e(&self, i: usize) -> &SparseMatrix {
        &self.e[i - 1]
    }

    pub fn f(&self, i: usize) -> &SparseMatrix {
        &self.f[i - 1]
    }

    fn diag(&self, g: impl Fn(&[i32]) -> i32) -> SparseMatrix {
        SparseMatrix::diagonal(self.weights.iter().map(|w| QScalar::q_pow(g(w))).collect())
    }

    /// `K_i^{±1}`, 1-based.
    pub fn k(&self, i: usize, sign: i32) -> SparseMatrix {
        self.diag(|w| sign * w[i - 1])
    }

    /// `K̂_i^{±1} = (K_i K_{i+1}^{-1})^{±1}`.
    pub fn k_hat(&self, i: usize, sign: i32) -> SparseMatrix {
        self.diag(|w| sign * (w[i - 1] - w[i]))
    }

    /// Shifts every weight by `s·(1, …, 1)`; `E`, `F` are unchanged.
    pub fn twist(&self, s: i32) -> Module {
        let mut m = self.clone();
        for w in &mut m.weights {
            for x in w.iter_mut() {
                *x += s;
            }
        }
        m
    }

    /// Matrices of the `U_q(gl_N)` letters, in the alphabet order of `uq`.
    pub fn uq_letters(&self, uq: &AlgebraHandle) -> Result<Vec<SparseMatrix>> {
        uq.alphabet()
            .gens()
            .iter()
            .map(|g| {
                let i = g.indices[0] as usize;
                Ok(match g.name {
                    "K" => self.k(i, 1),
                    "Ki" => self.k(i, -1),
                    "E" => self.e(i).clone(),
                    "F" => self.f(i).clone(),
                    other => return Err(Error::Domain(format!("unknown U_q letter {other}"))),
                })
            })
            .collect()
    }

    /// Every defining relation of `U_q(gl_N)`, evaluated on the module.
    pub fn check_relations(&self, uq: &AlgebraHandle) -> Result<Report> {
        let letters = self.uq_letters(uq)?;
        let mut rep = Report::new();
        let mut bad = 0usize;
        for (lead, rhs) in uq.pres.rules() {
            let d = eval_element(&(&NcElement::word(lead.clone()) - rhs), &letters, self.dim())?;
            if !d.is_zero() {
                bad += 1;
                rep.check(format!("{} = {}", uq.alphabet().word_name(lead), uq.display(rhs)), false, format!("{} nonzero entries", d.nnz()));
            }
        }
        rep.check("relations", bad == 0, format!("{} rules, {bad} violated", uq.pres.rules().count()));
        Ok(rep)
    }
}

/// `π(x) = Σ c_w π(w)` for letter matrices `letters`.
pub fn eval_element(x: &NcElement, letters: &[SparseMatrix], dim: usize) -> Result<SparseMatrix> {
    let mut out = SparseMatrix::zero(dim, dim);
    for (w, c) in x.terms() {
        let mut m = SparseMatrix::identity(dim);
        for &l in w.letters() {
            m = m.mul(&letters[l as usize])?;
        }
        out = out.add(&m.scale(c))?;
    }
    Ok(out)
}

/// `E_i ↦ e_{i,i+1}`, `F_i ↦ e_{i+1,i}`, `K_i e_n = q^{δ_in} e_n`.
pub fn vector_rep(n: usize) -> Module {
    let weights = (0..n).map(|b| (0..n).map(|i| (i == b) as i32).collect()).collect();
    let mut e = Vec::new();
    let mut f = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut a = SparseMatrix::zero(n, n);
        a.set(i, i + 1, QScalar::one());
        e.push(a);
        let mut b = SparseMatrix::zero(n, n);
        b.set(i + 1, i, QScalar::one());
        f.push(b);
    }
    Module { n, weights, e, f }
}

/// `a ⊗ b` through `Δ(E_i) = E_i ⊗ 1 + K̂_i ⊗ E_i`, `Δ(F_i) = F_i ⊗ K̂_i^{-1} + 1 ⊗ F_i`.
pub fn module_tensor(a: &Module, b: &Module) -> Result<Module> {
    if a.n != b.n {
        return Err(Error::Domain(format!("tensoring gl_{} with gl_{} modules", a.n, b.n)));
    }
    let mut weights = Vec::with_capacity(a.dim() * b.dim());
    for wa in &a.weights {
        for wb in &b.weights {
            weights.push(wa.iter().zip(wb).map(|(x, y)| x + y).collect());
        }
    }
    let (ia, ib) = (SparseMatrix::identity(a.dim()), SparseMatrix::identity(b.dim()));
    let mut e = Vec::new();
    let mut f = Vec::new();
    for i in 1..a.n {
        e.push(a.e(i).kron(&ib).add(&a.k_hat(i, 1).kron(b.e(i)))?);
        f.push(a.f(i).kron(&b.k_hat(i, -1)).add(&ia.kron(b.f(i)))?);
    }
    Ok(Module { n: a.n, weights, e, f })
}

/// `V^{⊗m}`; `m = 0` is the trivial module.
pub fn tensor_power(n: usize, m: usize) -> Result<Module> {
    let v = vector_rep(n);
    let mut out = Module::trivial(n);
    for k in 0..m {
        out = if k == 0 { v.clone() } else { module_tensor(&out, &v)? };
    }
    Ok(out)
}

fn scalar_matrix(m: &LeggedMatrix) -> SparseMatrix {
    let mut out = SparseMatrix::zero(m.size(), m.size());
    for (&(i, j), _) in m.nonzero() {
        out.set(i, j, m.scalar_entry(i, j));
    }
    out
}

/// `R̂` acting in legs `(i, i+1)` of `V^{⊗m}` (1-based `i`).
pub fn hecke_op(n: usize, m: usize, i: usize) -> Result<SparseMatrix> {
    if i == 0 || i >= m {
        return Err(Error::Domain(format!("hecke_op needs 1 <= i < {m}, got {i}")));
    }
    Ok(scalar_matrix(&r_hat(n).embed(m, &[i, i + 1])?))
}

/// An irreducible module with its embedding into `V^{⊗degree}`.
#[derive(Clone, Debug)]
pub struct IrrepModule {
    pub module: Module,
    pub highest_weight: Weight,
    pub degree: usize,
    /// Determinant twist `λ_N`.
    pub twist: i32,
    /// Basis vectors as coordinates in the untwisted ambient power.
    pub basis: Vec<SparseRow<usize>>,
}

impl IrrepModule {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// Coordinates of an ambient vector lying in the span of `basis`.
    fn coords(&self, pivots: &[usize], u: &SparseRow<usize>) -> Result<SparseRow<usize>> {
        let mut c = SparseRow::new();
        let mut rest = u.clone();
        for (g, &p) in pivots.iter().enumerate() {
            if let Some(x) = u.get(&p) {
                c.insert(g, x.clone());
                for (k, v) in &self.basis[g] {
                    let y = &rest.get(k).cloned().unwrap_or_default() - &(v * x);
                    if y.is_zero() {
                        rest.remove(k);
                    } else {
                        rest.insert(*k, y);
                    }
                }
            }
        }
        if !rest.is_empty() {
            return Err(Error::Verification("ambient vector leaves the submodule".into()));
        }
        Ok(c)
    }

    fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|b| *b.keys().next_back().expect("non-empty basis vector")).collect()
    }

    /// Restriction of an ambient operator that preserves the submodule.
    pub fn restrict(&self, a: &SparseMatrix) -> Result<SparseMatrix> {
        let pivots = self.pivots();
        let d = self.dim();
        let mut out = SparseMatrix::zero(d, d);
        for (j, b) in self.basis.iter().enumerate() {
            for (i, c) in self.coords(&pivots, &a.apply(b))? {
                out.set(i, j, c);
            }
        }
        Ok(out)
    }
}

/// The irreducible module of highest weight `λ`: a highest weight vector of weight
/// `λ - λ_N` in `V^{⊗|λ - λ_N|}`, closed under the `F_i`, then twisted by `λ_N`.
pub fn irrep(lambda: &Weight) -> Result<IrrepModule> {
    let n = lambda.n();
    if n == 0 || !lambda.is_dominant() {
        return Err(Error::Domain(format!("{lambda} is not a dominant gl_N weight")));
    }
    let s = lambda.0[n - 1];
    let shifted: Vec<i32> = lambda.0.iter().map(|x| x - s).collect();
    let m: usize = shifted.iter().map(|&x| x as usize).sum();
    if n.checked_pow(m as u32).is_none_or(|d| d > MAX_AMBIENT_DIM) {
        return Err(Error::Resource(format!("V^(x){m} for gl_{n} exceeds {MAX_AMBIENT_DIM} dimensions")));
    }
    let amb = tensor_power(n, m)?;
    let space: Vec<usize> = (0..amb.dim()).filter(|&b| amb.weights[b] == shifted).collect();
    let mut row_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for i in 1..n {
        for (&(r, c), _) in amb.e(i).entries() {
            if amb.weights[c] == shifted {
                let len = row_of.len();
                row_of.entry((i, r)).or_insert(len);
            }
        }
    }
    let col_of: BTreeMap<usize, usize> = space.iter().enumerate().map(|(k, &b)| (b, k)).collect();
    let mut a = dense_zero(row_of.len(), space.len());
    for i in 1..n {
        for (&(r, c), v) in amb.e(i).entries() {
            if let (Some(&row), Some(&col)) = (row_of.get(&(i, r)), col_of.get(&c)) {
                a[row][col] = v.clone();
            }
        }
    }
    let kernel = dense_kernel(&a, space.len());
    let Some(hw) = kernel.first() else {
        return Err(Error::Internal(format!("no highest weight vector of weight {lambda}")));
    };
    let hw: SparseRow<usize> = space.iter().zip(hw).filter(|(_, v)| !v.is_zero()).map(|(&b, v)| (b, v.clone())).collect();

    let mut spaces: BTreeMap<Vec<i32>, Echelon<usize>> = BTreeMap::new();
    spaces.entry(shifted.clone()).or_default().insert(hw.clone());
    let mut queue = VecDeque::from([hw]);
    while let Some(w) = queue.pop_front() {
        for i in 1..n {
            let u = amb.f(i).apply(&w);
            let Some(&k) = u.keys().next() else { continue };
            if spaces.entry(amb.weights[k].clone()).or_default().insert(u.clone()) {
                queue.push_back(u);
            }
        }
    }
    let mut basis = Vec::new();
    let mut weights = Vec::new();
    for (wt, ech) in spaces.into_iter().rev() {
        for row in ech.into_reduced() {
            weights.push(wt.iter().map(|x| x + s).collect());
            basis.push(row);
        }
    }
    let mut out = IrrepModule {
        module: Module { n, weights, e: Vec::new(), f: Vec::new() },
        highest_weight: lambda.clone(),
        degree: m,
        twist: s,
        basis,
    };
    for i in 1..n {
        let e = out.restrict(amb.e(i))?;
        let f = out.restrict(amb.f(i))?;
        out.module.e.push(e);
        out.module.f.push(f);
    }
    Ok(out)
}

/// Multiplicity of each weight.
pub fn weight_mults(m: &Module) -> BTreeMap<Vec<i32>, usize> {
    let mut out = BTreeMap::new();
    for w in m.weights() {
        *out.entry(w.clone()).or_insert(0) += 1;
    }
    out
}

/// `Σ_ν q^{-2Σ_i (N-i+1) ν_i} d_ν`.
pub fn qdim(m: &Module) -> QScalar {
    let n = m.n() as i32;
    let mut out = QScalar::zero();
    for w in m.weights() {
        let e: i32 = w.iter().enumerate().map(|(i, &x)| (n - i as i32) * x).sum();
        out += &QScalar::q_pow(-2 * e);
    }
    out
}

/// `π(T⁺)` and `π(T⁻)` entries on `V^{⊗m}` via `Δ^cop`, as `[i][j]` tables.
fn ot_tables(n: usize, m: usize) -> Result<[Vec<Vec<SparseMatrix>>; 2]> {
    let r = r_matrix(n);
    let rm = r21(&r_matrix_inv(n));
    let base = |t: &LeggedMatrix| -> Vec<Vec<SparseMatrix>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut a = SparseMatrix::zero(n, n);
                        for b in 0..n {
                            for d in 0..n {
                                a.set(b, d, t.scalar_entry(i * n + b, j * n + d));
                            }
                        }
                        a
                    })
                    .collect()
            })
            .collect()
    };
    let mut out = [Vec::new(), Vec::new()];
    for (slot, one) in [base(&r), base(&rm)].into_iter().enumerate() {
        let mut cur: Vec<Vec<SparseMatrix>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { SparseMatrix::identity(1) } else { SparseMatrix::zero(1, 1) }).collect()).collect();
        for _ in 0..m {
            let mut next = Vec::with_capacity(n);
            for one_i in &one {
                let mut row = Vec::with_capacity(n);
                for j in 0..n {
                    let d = cur[0][0].rows() * n;
                    let mut acc = SparseMatrix::zero(d, d);
                    for k in 0..n {
                        acc = acc.add(&cur[k][j].kron(&one_i[k]))?;
                    }
                    row.push(acc);
                }
                next.push(row);
            }
            cur = next;
        }
        out[slot] = cur;
    }
    Ok(out)
}

/// Matrices of the `O_T` letters on `V^{⊗m}` twisted by `q^s`, in the alphabet order of `ot`.
pub fn ot_letters_ambient(ot: &AlgebraHandle, m: usize, s: i32) -> Result<Vec<SparseMatrix>> {
    let [plus, minus] = ot_tables(ot.n, m)?;
    let (up, down) = (QScalar::q_pow(-s), QScalar::q_pow(s));
    ot.alphabet()
        .gens()
        .iter()
        .map(|g| {
            let i = g.indices[0] as usize - 1;
            Ok(match g.name {
                "T" => plus[i][i].scale(&up),
                "Ti" => minus[i][i].scale(&down),
                "Tp" => plus[i][g.indices[1] as usize - 1].scale(&up),
                "Tm" => minus[i][g.indices[1] as usize - 1].scale(&down),
                other => return Err(Error::Domain(format!("unknown O_T letter {other}"))),
            })
        })
        .collect()
}

/// An irreducible module together with the action of `O_T` on it.
#[derive(Clone, Debug)]
pub struct Rep {
    pub irrep: IrrepModule,
    letters: Vec<SparseMatrix>,
    b_weight: SparseMatrix,
}

impl Rep {
    pub fn new(ot: &AlgebraHandle, lambda: &Weight) -> Result<Self> {
        if ot.kind != AlgebraKind::OT || ot.n != lambda.n() {
            return Err(Error::Domain(format!("expected O_T of rank {}", lambda.n())));
        }
        let irrep = irrep(lambda)?;
        let amb = ot_letters_ambient(ot, irrep.degree, irrep.twist)?;
        let letters = amb.iter().map(|a| irrep.restrict(a)).collect::<Result<Vec<_>>>()?;
        let mut word = Word::empty();
        for i in 1..=ot.n as u8 {
            let t = ot.letter("T", &[i])?;
            for _ in 0..2 * (ot.n + 1 - i as usize) {
                word.0.push(t);
            }
        }
        let b_weight = eval_element(&NcElement::word(word), &letters, irrep.dim())?;
        Ok(Rep { irrep, letters, b_weight })
    }

    pub fn dim(&self) -> usize {
        self.irrep.dim()
    }

    pub fn letters(&self) -> &[SparseMatrix] {
        &self.letters
    }

    /// `π(x)` for `x ∈ O_T`.
    pub fn act(&self, x: &NcElement) -> Result<SparseMatrix> {
        eval_element(x, &self.letters, self.dim())
    }

    /// `π(B)` with `B = χ_T(B_1 ⋯ B_N) = Π_i T_i^{2(N-i+1)}`.
    pub fn b_weight(&self) -> &SparseMatrix {
        &self.b_weight
    }

    /// `Tr(π(B) π(x)) / Tr(π(B))`.
    pub fn omega(&self, x: &NcElement) -> Result<QScalar> {
        let den = self.b_weight.trace();
        if den.is_zero() {
            return Err(Error::Pole("Tr(pi(B)) vanishes".into()));
        }
        self.b_weight.mul(&self.act(x)?)?.trace().checked_div(&den)
    }
}

/// `ω_λ(x)` on the irreducible module of highest weight `λ`.
pub fn omega_state(ot: &AlgebraHandle, x: &NcElement, lambda: &Weight) -> Result<QScalar> {
    Rep::new(ot, lambda)?.omega(x)
}

/// `h` at `T_i² ↦ q^{-2λ_i}`.
pub fn hc_character(h: &HcImage, lambda: &Weight) -> Result<QScalar> {
    let vals: Vec<QScalar> = lambda.0.iter().map(|&l| QScalar::q_pow(-2 * l)).collect();
    h.evaluate(&vals)
}

/// Scalar of a central element on `V(λ)`, from its Harish-Chandra image, checked against the
/// action of its Cholesky image.
pub fn central_character(chol: &AlgebraMap, z: &crate::casimir::CentralElement, rep: &Rep) -> Result<QScalar> {
    let c = hc_character(&z.hc, &rep.irrep.highest_weight)?;
    let act = rep.act(&chol.apply(&z.body)?)?;
    match act.as_scalar() {
        Some(v) if v == c => Ok(c),
        Some(v) => Err(Error::Verification(format!("{} acts on {} by {v}, Harish-Chandra gives {c}", z.label, rep.irrep.highest_weight))),
        None => Err(Error::Verification(format!("{} does not act by a scalar on {}", z.label, rep.irrep.highest_weight))),
    }
}

/// `e_k(x_1, …, x_n)`.
pub fn elementary_symmetric(xs: &[QScalar], k: usize) -> QScalar {
    let mut e = vec![QScalar::zero(); k + 1];
    e[0] = QScalar::one();
    for x in xs {
        for j in (1..=k).rev() {
            let t = &e[j - 1] * x;
            e[j] += &t;
        }
    }
    e[k].clone()
}

/// `q^{-(N+1)k} binom(N,k)_q^{-1} e_k(q^{2-2λ_1}, …, q^{2N-2λ_N})`.
pub fn ehc_closed_form(lambda: &Weight, k: usize) -> Result<QScalar> {
    let n = lambda.n();
    let xs: Vec<QScalar> = lambda.0.iter().enumerate().map(|(i, &l)| QScalar::q_pow(2 * (i as i32 + 1) - 2 * l)).collect();
    let pre = QScalar::q_pow(-((n as i32 + 1) * k as i32));
    Ok(&(&pre * &q_binom(n as i64, k as i64)?.inv()?) * &elementary_symmetric(&xs, k))
}

/// `ω_λ(χ_T(B_k))` against [`ehc_closed_form`] for each `λ`, exactly.
pub fn verify_ehc(oh: &AlgebraHandle, ot: &AlgebraHandle, k: usize, lambdas: &[Weight]) -> Result<Report> {
    let chol = cholesky_map(oh, ot)?;
    let bk = chol.apply(&crate::casimir::b_element(oh, k)?)?;
    let mut rep = Report::new();
    for l in lambdas {
        let lhs = omega_state(ot, &bk, l)?;
        let rhs = ehc_closed_form(l, k)?;
        let ok = lhs == rhs;
        let detail = if ok { format!("{lhs}") } else { format!("omega = {lhs}, closed form = {rhs}, ratio = {}", lhs.checked_div(&rhs)?) };
        rep.check(format!("k={k} lambda={l}"), ok, detail);
    }
    Ok(rep)
}

/// The `(N·d) × (N·d)` matrix `π(T*T)`, block `(i, j)` being `π((T*T)_ij)`.
pub fn tt_matrix(chol: &AlgebraMap, oh: &AlgebraHandle, rep: &Rep) -> Result<SparseMatrix> {
    let n = oh.n;
    let d = rep.dim();
    let mut out = SparseMatrix::zero(n * d, n * d);
    for g in oh.alphabet().gens() {
        let (i, j) = (g.indices[0] as usize - 1, g.indices[1] as usize - 1);
        let img = &chol.images[oh.letter("Z", &g.indices)? as usize];
        for (&(a, b), v) in rep.act(img)?.entries() {
            out.set(i * d + a, j * d + b, v.clone());
        }
    }
    Ok(out)
}

/// `M^N - c_1 M^{N-1} + … + (-1)^N c_N` for a square matrix `M`.
pub fn scalar_ch_residual(m: &SparseMatrix, coeffs: &[QScalar]) -> Result<SparseMatrix> {
    let dim = m.rows();
    let n = coeffs.len();
    let mut powers = vec![SparseMatrix::identity(dim)];
    for k in 0..n {
        powers.push(powers[k].mul(m)?);
    }
    let mut out = powers[n].clone();
    for (k, c) in coeffs.iter().enumerate() {
        let sign = if k % 2 == 0 { -c.clone() } else { c.clone() };
        out = out.add(&powers[n - k - 1].scale(&sign))?;
    }
    Ok(out)
}

/// `χ_λ(C_k)` for `k = 1..N`.
pub fn ch_coefficients(lambda: &Weight) -> Result<Vec<QScalar>> {
    (1..=lambda.n()).map(|k| hc_character(&HcImage::ch_coefficient(lambda.n(), k), lambda)).collect()
}

/// Roots of the characteristic polynomial on `V(λ)`: `q^{-2(λ_k - k + 1)}`.
pub fn ch_roots(lambda: &Weight) -> Vec<QScalar> {
    lambda.0.iter().enumerate().map(|(i, &l)| QScalar::q_pow(-2 * (l - i as i32))).collect()
}

/// The eigenvalues `q^{-2(λ_k - k - 1)}` as stated alongside the closed form of `hc(C_k)`.
pub fn stated_roots(lambda: &Weight) -> Vec<QScalar> {
    lambda.0.iter().enumerate().map(|(i, &l)| QScalar::q_pow(-2 * (l - i as i32 - 2))).collect()
}

/// A row of the filtration table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationRow {
    pub lambda: Weight,
    /// `max([2]_{q0}, χ_λ(Tr_{Q²}(Z)), χ_λ(B_N^{-2}))` at `q0`.
    pub control_value: BigRational,
    /// Membership in `P_{≤M}` per threshold.
    pub in_p_leq_m: Vec<bool>,
}

/// Exact control values over the dominant weights with `λ_1 - λ_N ≤ window`, `|λ_N| ≤ window`.
pub fn filtration_table(n: usize, q0: &BigRational, window: i32, thresholds: &[BigRational]) -> Result<Vec<FiltrationRow>> {
    check_q0(q0)?;
    let two = q_int(2)?.specialize(q0)?;
    let c1 = HcImage::ch_coefficient(n, 1);
    let bn_inv2 = HcImage::monomial(n, vec![-2; n], QScalar::one());
    let mut rows = Vec::new();
    for lambda in Weight::dominant_window(n, window, window) {
        let a = hc_character(&c1, &lambda)?.specialize(q0)?;
        let b = hc_character(&bn_inv2, &lambda)?.specialize(q0)?;
        let control = [two.clone(), a, b].into_iter().max().expect("three values");
        let in_p_leq_m = thresholds.iter().map(|m| &control <= m).collect();
        rows.push(FiltrationRow { lambda, control_value: control, in_p_leq_m });
    }
    Ok(rows)
}

fn check_q0(q0: &BigRational) -> Result<()> {
    if *q0 <= BigRational::zero() || *q0 >= BigRational::one() {
        return Err(Error::Domain(format!("q0 = {q0} is not in (0, 1)")));
    }
    Ok(())
}

/// Box containing every member of `P_{≤M}`: `(max λ_1, min λ_N)`.
///
/// From `q0^{-2λ_1} ≤ χ(C_1) ≤ M` and `q0^{4Σλ} = χ(B_N^{-2}) ≤ M`, with
/// `λ_N ≥ Σλ - (N-1)λ_1`.
pub fn filtration_bounds(n: usize, q0: &BigRational, m: &BigRational) -> Result<(i64, i64)> {
    check_q0(q0)?;
    let inv = q0.recip();
    let largest = |step: i32| -> i64 {
        let mut u = 0i64;
        let mut p = BigRational::one();
        loop {
            let next = &p * num_traits::pow(inv.clone(), step as usize);
            if &next > m {
                return u;
            }
            p = next;
            u += 1;
        }
    };
    if *m < BigRational::one() {
        return Err(Error::Domain("thresholds below 1 admit no weights".into()));
    }
    let a = largest(2);
    let sum_min = -largest(4);
    Ok((a, sum_min - (n as i64 - 1) * a))
}

/// Checks nesting of the member sets in `M` and that the window covers the finiteness box.
pub fn check_filtration(n: usize, q0: &BigRational, window: i32, thresholds: &[BigRational], rows: &[FiltrationRow]) -> Result<Report> {
    let mut rep = Report::new();
    let mut order: Vec<usize> = (0..thresholds.len()).collect();
    order.sort_by(|&a, &b| thresholds[a].cmp(&thresholds[b]));
    for w in order.windows(2) {
        let nested = rows.iter().all(|r| !r.in_p_leq_m[w[0]] || r.in_p_leq_m[w[1]]);
        rep.check(format!("P<={} within P<={}", thresholds[w[0]], thresholds[w[1]]), nested, nested);
    }
    for (t, m) in thresholds.iter().enumerate() {
        let (hi, lo) = filtration_bounds(n, q0, m)?;
        let members: Vec<&FiltrationRow> = rows.iter().filter(|r| r.in_p_leq_m[t]).collect();
        let inside = members.iter().all(|r| r.lambda.0[0] as i64 <= hi && *r.lambda.0.last().expect("rank") as i64 >= lo);
        let covered = hi - lo <= window as i64 && lo.abs() <= window as i64 && hi.abs() <= window as i64;
        rep.check(format!("P<={m} inside lambda_1 <= {hi}, lambda_N >= {lo}"), inside, format!("{} members", members.len()));
        rep.check(format!("P<={m} finite and complete in window {window}"), covered, format!("box spread {}", hi - lo));
    }
    Ok(rep)
}

/// `χ_λ(B_N^{-1})` via the localization, checked against `π(T_1^{-2} ⋯ T_N^{-2})`.
pub fn b_inverse_character(loc: &LocalizedHc, ot: &AlgebraHandle, rep: &Rep) -> Result<QScalar> {
    let c = hc_character(&loc.hc(&loc.b_inverse())?, &rep.irrep.highest_weight)?;
    let mut w = Word::empty();
    for i in 1..=ot.n as u8 {
        let t = ot.letter("Ti", &[i])?;
        w.0.push(t);
        w.0.push(t);
    }
    match rep.act(&NcElement::word(w))?.as_scalar() {
        Some(v) if v == c => Ok(c),
        _ => Err(Error::Verification(format!("B_N^-1 character mismatch on {}", rep.irrep.highest_weight))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_rep_weights() {
        let v = vector_rep(2);
        assert_eq!(v.weights(), &[vec![1, 0], vec![0, 1]]);
        assert_eq!(v.e(1).get(0, 1), QScalar::one());
    }

    #[test]
    fn dominant_window_n2() {
        let ws = Weight::dominant_window(2, 1, 0);
        assert_eq!(ws, vec![Weight(vec![0, 0]), Weight(vec![1, 0])]);
    }

    #[test]
    fn elementary_symmetric_small() {
        let xs = [QScalar::from_int(1), QScalar::from_int(2), QScalar::from_int(3)];
        assert_eq!(elementary_symmetric(&xs, 2), QScalar::from_int(11));
    }
}
