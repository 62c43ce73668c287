//! Finite frames in ℂⁿ: analysis and synthesis operators, frame bounds,
//! tightness, canonical duals and reconstruction.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{
    hermitian_eig, inner, strict_inverse, CVector, ComplexMatrix, Tolerances, C64,
};

/// An ordered list of vectors in ℂⁿ.
///
/// Order matters: row `j` of the analysis operator belongs to vector `j`.
/// Fewer than `dim` vectors is accepted here; such a list is rejected by
/// [`frame_bounds`] because it cannot span.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    dim: usize,
    vectors: Vec<CVector>,
}

impl Frame {
    pub fn new(dim: usize, vectors: Vec<CVector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput(
                "frame dimension must be positive".into(),
            ));
        }
        if vectors.is_empty() {
            return Err(Error::InvalidInput("frame has no vectors".into()));
        }
        if let Some((i, v)) = vectors.iter().enumerate().find(|(_, v)| v.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "frame vector {i} has length {}, expected {dim}",
                v.len()
            )));
        }
        if vectors
            .iter()
            .flat_map(|v| v.iter())
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidInput(
                "frame vector has non-finite entries".into(),
            ));
        }
        if vectors
            .iter()
            .all(|v| v.iter().all(|z| *z == C64::new(0.0, 0.0)))
        {
            return Err(Error::InvalidInput("every frame vector is zero".into()));
        }
        Ok(Self { dim, vectors })
    }

    /// The frame whose vectors are the rows' conjugates of `analysis`,
    /// i.e. the inverse of [`analysis_operator`].
    pub fn from_analysis(analysis: &ComplexMatrix) -> Result<Self> {
        let vectors = (0..analysis.rows())
            .map(|j| {
                CVector::from_iterator(
                    analysis.cols(),
                    (0..analysis.cols()).map(|k| analysis.get(j, k).conj()),
                )
            })
            .collect();
        Self::new(analysis.cols(), vectors)
    }

    /// The canonical basis e₁, …, eₙ.
    pub fn canonical_basis(n: usize) -> Result<Self> {
        let vectors = (0..n)
            .map(|k| {
                let mut v = CVector::zeros(n);
                v[k] = C64::new(1.0, 0.0);
                v
            })
            .collect();
        Self::new(n, vectors)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[CVector] {
        &self.vectors
    }
}

/// Optimal frame bounds `0 < lower ≤ upper`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
}

impl FrameBounds {
    pub fn is_tight(&self, tol: &Tolerances) -> bool {
        self.upper - self.lower <= tol.eigen_match_tol * self.upper
    }
}

/// `F`, the m×n matrix with `(Ff)ⱼ = ⟨φⱼ, f⟩`.
pub fn analysis_operator(frame: &Frame) -> ComplexMatrix {
    let m = frame.len();
    let n = frame.dim();
    let mut entries = Vec::with_capacity(m * n);
    for v in frame.vectors() {
        entries.extend(v.iter().map(|z| z.conj()));
    }
    ComplexMatrix::from_row_major(m, n, entries).expect("frame vectors are validated")
}

/// `F†`, mapping coefficients `c` to `Σ cᵢφᵢ`.
pub fn synthesis_operator(frame: &Frame) -> ComplexMatrix {
    ComplexMatrix::from_columns(frame.vectors()).expect("frame vectors are validated")
}

/// `F†F`.
pub fn frame_operator(frame: &Frame) -> ComplexMatrix {
    let f = analysis_operator(frame);
    &f.adjoint() * &f
}

/// `FF†`, the Gram matrix with entry `(j, k) = ⟨φⱼ, φₖ⟩`.
pub fn cross_gram(frame: &Frame) -> ComplexMatrix {
    let f = analysis_operator(frame);
    &f * &f.adjoint()
}

/// Extreme eigenvalues of a positive operator, gated on invertibility.
pub(crate) fn positive_bounds(op: &ComplexMatrix, tol: &Tolerances) -> Result<FrameBounds> {
    let eig = hermitian_eig(op, tol)?;
    let upper = eig.eigenvalues[0];
    let lower = *eig.eigenvalues.last().unwrap();
    let bound = tol.invertibility_tol * upper;
    if !(upper > 0.0 && lower > bound) {
        return Err(Error::NotAFrame {
            lower,
            upper,
            bound,
        });
    }
    Ok(FrameBounds { lower, upper })
}

/// Optimal bounds: the smallest and largest eigenvalue of `F†F`.
pub fn frame_bounds(frame: &Frame, tol: &Tolerances) -> Result<FrameBounds> {
    positive_bounds(&frame_operator(frame), tol)
}

/// The tight bound `A` when `F†F = A𝟙` up to `eigen_match_tol` relative
/// spread, `None` otherwise (including when the vectors do not span).
pub fn is_tight(frame: &Frame, tol: &Tolerances) -> Option<f64> {
    let bounds = frame_bounds(frame, tol).ok()?;
    bounds.is_tight(tol).then_some(bounds.upper)
}

/// Canonical dual frame `φ̃ᵢ = (F†F)⁻¹φᵢ`.
pub fn dual_frame(frame: &Frame, tol: &Tolerances) -> Result<Frame> {
    frame_bounds(frame, tol)?;
    let inv = strict_inverse(&frame_operator(frame), tol)?;
    let vectors = frame.vectors().iter().map(|v| inv.apply(v)).collect();
    Frame::new(frame.dim(), vectors)
}

/// Both reconstructions of `f`: `Σ⟨φᵢ,f⟩φ̃ᵢ` and `Σ⟨φ̃ᵢ,f⟩φᵢ`.
pub fn reconstruct(frame: &Frame, f: &CVector, tol: &Tolerances) -> Result<(CVector, CVector)> {
    if f.len() != frame.dim() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for a frame in dimension {}",
            f.len(),
            frame.dim()
        )));
    }
    let dual = dual_frame(frame, tol)?;
    let mut via_dual_vectors = CVector::zeros(frame.dim());
    let mut via_dual_coefficients = CVector::zeros(frame.dim());
    for (phi, phi_dual) in frame.vectors().iter().zip(dual.vectors()) {
        via_dual_vectors += phi_dual * inner(phi, f);
        via_dual_coefficients += phi * inner(phi_dual, f);
    }
    Ok((via_dual_vectors, via_dual_coefficients))
}
