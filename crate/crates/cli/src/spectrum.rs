//! Floating point view of the characteristic polynomial on irreducible modules.

use nalgebra::{Complex, DMatrix, Schur};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use qgl_core::linalg::SparseMatrix;
use qgl_core::qgroups::{cholesky_map, AlgebraHandle};
use qgl_core::repth::{ch_coefficients, ch_roots, stated_roots, tt_matrix, Rep, Weight};
use qgl_core::{Error, QScalar, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Relative annihilation residual allowed for `p(π(Z))`.
pub const RESIDUAL_TOL: f64 = 1e-9;
/// Distance allowed between a computed eigenvalue and a predicted root, relative to the root.
pub const ROOT_TOL: f64 = 1e-6;
const SCHUR_EPS: f64 = 1e-13;
const SCHUR_MAX_ITER: usize = 100_000;

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn at(x: &QScalar, q0: &BigRational) -> Result<f64> {
    Ok(to_f64(&x.specialize(q0)?))
}

pub fn specialize_matrix(m: &SparseMatrix, q0: &BigRational) -> Result<DMatrix<f64>> {
    let mut out = DMatrix::zeros(m.rows(), m.cols());
    for (&(i, j), v) in m.entries() {
        out[(i, j)] = at(v, q0)?;
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct SpectrumRow {
    pub lambda: Weight,
    /// `max |p(M)_ij| / max(1, max |(M^N)_ij|)` in floating point.
    pub residual: f64,
    pub eigenvalues: Vec<Complex<f64>>,
    pub predicted: Vec<f64>,
    pub stated: Vec<f64>,
    /// Every eigenvalue lies within [`ROOT_TOL`] of a predicted root.
    pub matches_predicted: bool,
    pub matches_stated: bool,
}

impl SpectrumRow {
    pub fn pass(&self) -> bool {
        self.residual < RESIDUAL_TOL && self.matches_predicted
    }
}

fn near_some(z: &Complex<f64>, roots: &[f64]) -> bool {
    roots.iter().any(|&r| (z - Complex::new(r, 0.0)).norm() <= ROOT_TOL * r.abs().max(1.0))
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |a, x| a.max(x.abs()))
}

pub fn spectrum_row(oh: &AlgebraHandle, ot: &AlgebraHandle, q0: &BigRational, lambda: &Weight) -> Result<SpectrumRow> {
    let chol = cholesky_map(oh, ot)?;
    let rep = Rep::new(ot, lambda)?;
    let m = specialize_matrix(&tt_matrix(&chol, oh, &rep)?, q0)?;
    let coeffs = ch_coefficients(lambda)?.iter().map(|c| at(c, q0)).collect::<Result<Vec<_>>>()?;
    let n = coeffs.len();
    let dim = m.nrows();
    let mut powers = vec![DMatrix::<f64>::identity(dim, dim)];
    for k in 0..n {
        let next = &powers[k] * &m;
        powers.push(next);
    }
    let mut p = powers[n].clone();
    for (k, c) in coeffs.iter().enumerate() {
        let sign = if k % 2 == 0 { -c } else { *c };
        p += &powers[n - k - 1] * sign;
    }
    let residual = max_abs(&p) / max_abs(&powers[n]).max(1.0);
    let eigenvalues: Vec<Complex<f64>> = Schur::try_new(m, SCHUR_EPS, SCHUR_MAX_ITER)
        .ok_or_else(|| Error::Resource(format!("Schur iteration did not converge for {lambda}")))?
        .complex_eigenvalues()
        .iter()
        .copied()
        .collect();
    let predicted = ch_roots(lambda).iter().map(|r| at(r, q0)).collect::<Result<Vec<_>>>()?;
    let stated = stated_roots(lambda).iter().map(|r| at(r, q0)).collect::<Result<Vec<_>>>()?;
    Ok(SpectrumRow {
        lambda: lambda.clone(),
        residual,
        matches_predicted: eigenvalues.iter().all(|z| near_some(z, &predicted)),
        matches_stated: eigenvalues.iter().all(|z| near_some(z, &stated)),
        eigenvalues,
        predicted,
        stated,
    })
}

/// `count` dominant weights drawn from the window `λ_1 - λ_N ≤ spread`, `|λ_N| ≤ bound`, in window order.
pub fn sample_weights(n: usize, spread: i32, bound: i32, count: usize, seed: u64) -> Vec<Weight> {
    let all = Weight::dominant_window(n, spread, bound);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx: Vec<usize> = (0..all.len()).collect::<Vec<_>>().choose_multiple(&mut rng, count.min(all.len())).copied().collect();
    idx.sort_unstable();
    idx.into_iter().map(|i| all[i].clone()).collect()
}
