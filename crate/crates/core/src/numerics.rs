//! Dense complex linear algebra used by every construction in the crate.
//!
//! Operators are stored as [`ComplexMatrix`] values, vectors as
//! [`CVector`] columns. Inner products are conjugate-linear in the first
//! argument: `⟨a, b⟩ = Σ conj(aᵢ) bᵢ`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector, SymmetricEigen, SVD};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CVector = DVector<C64>;

/// Shorthand for a real number as a complex scalar.
#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// `⟨a, b⟩`, conjugate-linear in `a`.
#[inline]
pub fn inner(a: &CVector, b: &CVector) -> C64 {
    a.dotc(b)
}

/// Builds a column vector from real components.
pub fn real_vector(values: &[f64]) -> CVector {
    CVector::from_iterator(values.len(), values.iter().map(|&x| re(x)))
}

/// `num / den`, or `num` itself when the scale is zero.
pub(crate) fn relative(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else {
        num
    }
}

/// Dense complex matrix with finite entries and positive dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix(DMatrix<C64>);

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn from_row_major(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Self::from_dmatrix(DMatrix::from_row_slice(rows, cols, &entries))
    }

    /// Builds a real-valued matrix from row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::from_row_major(rows, cols, entries.iter().map(|&x| re(x)).collect())
    }

    pub fn from_dmatrix(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() == 0 || m.ncols() == 0 {
            return Err(Error::InvalidInput(
                "matrix dimensions must be positive".into(),
            ));
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("matrix has non-finite entries".into()));
        }
        Ok(Self(m))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self(DMatrix::zeros(rows, cols))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d = real_vector(diag);
        Self(DMatrix::from_diagonal(&d))
    }

    /// Single-column matrix holding `v`.
    pub fn column(v: &CVector) -> Self {
        Self(DMatrix::from_column_slice(v.len(), 1, v.as_slice()))
    }

    /// Matrix whose columns are the given vectors, in order.
    pub fn from_columns(columns: &[CVector]) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::InvalidInput("no columns given".into()));
        }
        let n = columns[0].len();
        if columns.iter().any(|c| c.len() != n) {
            return Err(Error::DimensionMismatch(
                "columns have different lengths".into(),
            ));
        }
        Self::from_dmatrix(DMatrix::from_columns(columns))
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.0.shape()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0[(row, col)]
    }

    pub fn as_dmatrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<C64> {
        self.0
    }

    /// Entries in row-major order.
    pub fn row_major_entries(&self) -> Vec<C64> {
        let mut out = Vec::with_capacity(self.rows() * self.cols());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.push(self.0[(i, j)]);
            }
        }
        out
    }

    pub fn column_vector(&self, j: usize) -> CVector {
        self.0.column(j).into_owned()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self(&self.0 * re(factor))
    }

    pub fn apply(&self, v: &CVector) -> CVector {
        &self.0 * v
    }

    /// Largest entry-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(
            self.shape(),
            other.shape(),
            "shape mismatch in max_abs_diff"
        );
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `‖M − M†‖ / ‖M‖` (absolute when `M = 0`). Requires a square matrix.
    pub fn hermiticity_residual(&self) -> f64 {
        let diff = (&self.0 - self.0.adjoint()).norm();
        relative(diff, self.norm())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols() != rhs.rows() {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows(),
                self.cols(),
                rhs.rows(),
                rhs.cols()
            )));
        }
        Ok(self * rhs)
    }

    /// Block-diagonal matrix with the given square blocks along the diagonal.
    pub fn block_diagonal(blocks: &[ComplexMatrix]) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidInput("no blocks given".into()));
        }
        let n: usize = blocks.iter().map(|b| b.rows()).sum();
        let m: usize = blocks.iter().map(|b| b.cols()).sum();
        let mut out = DMatrix::zeros(n, m);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.view_mut((r, c), b.shape()).copy_from(&b.0);
            r += b.rows();
            c += b.cols();
        }
        Ok(Self(out))
    }

    /// Vertical concatenation of matrices sharing a column count.
    pub fn vstack(parts: &[ComplexMatrix]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidInput("nothing to stack".into()));
        }
        let cols = parts[0].cols();
        if parts.iter().any(|p| p.cols() != cols) {
            return Err(Error::DimensionMismatch(
                "stacked parts differ in column count".into(),
            ));
        }
        let rows: usize = parts.iter().map(|p| p.rows()).sum();
        let mut out = DMatrix::zeros(rows, cols);
        let mut r = 0;
        for p in parts {
            out.view_mut((r, 0), p.shape()).copy_from(&p.0);
            r += p.rows();
        }
        Ok(Self(out))
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                let z = self.0[(i, j)];
                if j > 0 {
                    write!(f, "  ")?;
                }
                if z.im == 0.0 {
                    write!(f, "{:>12.6}", z.re)?;
                } else {
                    write!(f, "{:>12.6}{:+.6}i", z.re, z.im)?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&ComplexMatrix> for &ComplexMatrix {
            type Output = ComplexMatrix;
            fn $method(self, rhs: &ComplexMatrix) -> ComplexMatrix {
                ComplexMatrix(&self.0 $op &rhs.0)
            }
        }
        impl $tr<ComplexMatrix> for ComplexMatrix {
            type Output = ComplexMatrix;
            fn $method(self, rhs: ComplexMatrix) -> ComplexMatrix {
                ComplexMatrix(self.0 $op rhs.0)
            }
        }
        impl $tr<&ComplexMatrix> for ComplexMatrix {
            type Output = ComplexMatrix;
            fn $method(self, rhs: &ComplexMatrix) -> ComplexMatrix {
                ComplexMatrix(self.0 $op &rhs.0)
            }
        }
        impl $tr<ComplexMatrix> for &ComplexMatrix {
            type Output = ComplexMatrix;
            fn $method(self, rhs: ComplexMatrix) -> ComplexMatrix {
                ComplexMatrix(&self.0 $op rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Neg for ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix(-self.0)
    }
}

/// Numerical thresholds shared by every check in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    /// Relative bound on `‖M − M†‖ / ‖M‖`.
    pub hermiticity_tol: f64,
    /// Relative bound on commutator norms.
    pub commutator_tol: f64,
    /// Minimum `λ_min / λ_max` for a positive operator to count as invertible.
    pub invertibility_tol: f64,
    /// Absolute gap used when matching eigenvalues.
    pub eigen_match_tol: f64,
    /// Relative norm below which an image vector counts as zero.
    pub zero_vector_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermiticity_tol: 1e-10,
            commutator_tol: 1e-10,
            invertibility_tol: 1e-10,
            eigen_match_tol: 1e-8,
            zero_vector_tol: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("hermiticity_tol", self.hermiticity_tol),
            ("commutator_tol", self.commutator_tol),
            ("invertibility_tol", self.invertibility_tol),
            ("eigen_match_tol", self.eigen_match_tol),
            ("zero_vector_tol", self.zero_vector_tol),
        ];
        for (name, value) in fields {
            if !(value > 0.0 && value < 1.0) {
                return Err(Error::InvalidInput(format!(
                    "tolerance {name} must lie in (0, 1), got {value}"
                )));
            }
        }
        Ok(())
    }
}

/// Spectral decomposition `M = U Λ U†` of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    /// Sorted descending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal columns; column `k` belongs to `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvector(&self, k: usize) -> CVector {
        self.eigenvectors.column_vector(k)
    }

    /// `U Λ U†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let lambda = ComplexMatrix::from_real_diagonal(&self.eigenvalues);
        &(&self.eigenvectors * &lambda) * &self.eigenvectors.adjoint()
    }
}

pub fn adjoint(m: &ComplexMatrix) -> ComplexMatrix {
    m.adjoint()
}

fn ensure_square(m: &ComplexMatrix, what: &str) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "{what} must be square, got {}x{}",
            m.rows(),
            m.cols()
        )))
    }
}

pub(crate) fn ensure_hermitian(m: &ComplexMatrix, tol: &Tolerances) -> Result<()> {
    ensure_square(m, "Hermitian operator")?;
    let residual = m.hermiticity_residual();
    if residual <= tol.hermiticity_tol {
        Ok(())
    } else {
        Err(Error::NotHermitian {
            residual,
            bound: tol.hermiticity_tol,
        })
    }
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
///
/// The input is symmetrized as `(M + M†)/2` after the hermiticity gate so
/// that round-off in upstream products does not leak into the spectrum.
/// Eigenvectors of a degenerate eigenvalue span its eigenspace in no
/// particular basis.
pub fn hermitian_eig(m: &ComplexMatrix, tol: &Tolerances) -> Result<EigenDecomposition> {
    ensure_hermitian(m, tol)?;
    let sym = (&m.0 + m.0.adjoint()) * re(0.5);
    let n = sym.nrows();
    let eig = SymmetricEigen::new(sym);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let columns: Vec<CVector> = order
        .iter()
        .map(|&k| eig.eigenvectors.column(k).into_owned())
        .collect();
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors: ComplexMatrix(DMatrix::from_columns(&columns)),
    })
}

/// Inverse of a Hermitian positive semi-definite matrix.
///
/// Fails with [`Error::NotInvertible`] unless
/// `λ_min > invertibility_tol · λ_max`.
pub fn strict_inverse(m: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(m, tol)?;
    let max = eig.eigenvalues[0];
    let min = *eig.eigenvalues.last().unwrap();
    let bound = tol.invertibility_tol * max;
    if !(max > 0.0 && min > bound) {
        return Err(Error::NotInvertible {
            min_eigenvalue: min,
            max_eigenvalue: max,
            bound,
        });
    }
    let inv_diag: Vec<f64> = eig.eigenvalues.iter().map(|l| 1.0 / l).collect();
    let u = &eig.eigenvectors;
    let inv = &(u * &ComplexMatrix::from_real_diagonal(&inv_diag)) * &u.adjoint();
    Ok(ComplexMatrix((&inv.0 + inv.0.adjoint()) * re(0.5)))
}

/// `AB − BA`.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    ensure_square(a, "commutator argument")?;
    ensure_square(b, "commutator argument")?;
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "commutator of {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(&(a * b) - &(b * a))
}

/// Singular values, descending. There are `min(rows, cols)` of them.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    let svd = SVD::new(m.0.clone(), false, false);
    let mut values: Vec<f64> = svd.singular_values.iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    values
}
