//! Random inputs with independently known answers.
#![allow(dead_code)]

use isospec::frames::Frame;
use isospec::numerics::{CVector, ComplexMatrix, C64};
use nalgebra::DMatrix;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn normal(rng: &mut StdRng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn gaussian_dmatrix(rng: &mut StdRng, rows: usize, cols: usize) -> DMatrix<C64> {
    DMatrix::from_fn(rows, cols, |_, _| C64::new(normal(rng), normal(rng)))
}

pub fn gaussian_matrix(rng: &mut StdRng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_dmatrix(gaussian_dmatrix(rng, rows, cols)).unwrap()
}

pub fn gaussian_vector(rng: &mut StdRng, n: usize) -> CVector {
    CVector::from_fn(n, |_, _| C64::new(normal(rng), normal(rng)))
}

/// Haar-ish unitary: Q of a complex Gaussian matrix.
pub fn random_unitary(rng: &mut StdRng, n: usize) -> DMatrix<C64> {
    gaussian_dmatrix(rng, n, n).qr().q()
}

pub fn random_hermitian(rng: &mut StdRng, n: usize) -> ComplexMatrix {
    let g = gaussian_dmatrix(rng, n, n);
    let h = (&g + g.adjoint()) * C64::new(0.5, 0.0);
    ComplexMatrix::from_dmatrix(h).unwrap()
}

pub fn uniform(rng: &mut StdRng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}

/// `h₁`, `X` and the partner they must produce.
///
/// `X = U [Σ; 0] W†` with singular values in `[0.5, 2]`, and
/// `h₁ = U (diag(μ) ⊕ K) U†` with `K` Hermitian on `ker X†`. Then
/// `[h₁, XX†] = 0` and `h₂ = W diag(μ) W†` by hand, so `σ(h₂) = μ`.
pub struct PartnerCase {
    pub h1: ComplexMatrix,
    pub x: ComplexMatrix,
    pub h2: ComplexMatrix,
    pub mu: Vec<f64>,
}

pub fn partner_case(rng: &mut StdRng, d1: usize, d2: usize) -> PartnerCase {
    assert!(d2 >= 1 && d2 <= d1);
    let u = random_unitary(rng, d1);
    let w = random_unitary(rng, d2);
    let sigma: Vec<f64> = (0..d2).map(|_| uniform(rng, 0.5, 2.0)).collect();
    let mu: Vec<f64> = (0..d2).map(|_| uniform(rng, -5.0, 5.0)).collect();

    let mut s = DMatrix::<C64>::zeros(d1, d2);
    for (i, &v) in sigma.iter().enumerate() {
        s[(i, i)] = C64::new(v, 0.0);
    }
    let x = &u * s * w.adjoint();

    let mut core = DMatrix::<C64>::zeros(d1, d1);
    for (i, &m) in mu.iter().enumerate() {
        core[(i, i)] = C64::new(m, 0.0);
    }
    if d1 > d2 {
        let k = random_hermitian(rng, d1 - d2).into_dmatrix();
        core.view_mut((d2, d2), (d1 - d2, d1 - d2)).copy_from(&k);
    }
    let h1 = &u * core * u.adjoint();
    let h2 =
        &w * DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            d2,
            mu.iter().map(|&m| C64::new(m, 0.0)),
        )) * w.adjoint();

    PartnerCase {
        h1: hermitize(h1),
        x: ComplexMatrix::from_dmatrix(x).unwrap(),
        h2: hermitize(h2),
        mu,
    }
}

fn hermitize(m: DMatrix<C64>) -> ComplexMatrix {
    let h = (&m + m.adjoint()) * C64::new(0.5, 0.0);
    ComplexMatrix::from_dmatrix(h).unwrap()
}

/// `m ≥ n + 2` Gaussian vectors in ℂⁿ: spanning with probability one and
/// comfortably conditioned.
pub fn random_frame(rng: &mut StdRng, n: usize, m: usize) -> Frame {
    let vectors = (0..m).map(|_| gaussian_vector(rng, n)).collect();
    Frame::new(n, vectors).unwrap()
}

/// Sorted descending copy.
pub fn descending(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// `‖a − (b·a / b·b) b‖ / ‖a‖`, independent of the library's version.
pub fn parallel_residual(a: &CVector, b: &CVector) -> f64 {
    let coeff = b.dotc(a) / b.dotc(b);
    (a - b * coeff).norm() / a.norm()
}
