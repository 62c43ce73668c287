//! Partner construction between two finite-dimensional Hilbert spaces.
//!
//! Given a Hermitian `h₁` on H₁ and `X: H₂ → H₁` with `N₁ = XX†`,
//! `N₂ = X†X`, the partner is `h₂ = N₂⁻¹ X† h₁ X`. It exists when
//! `[N₁, h₁] = 0` and `N₂` is invertible, and then
//!
//! * `h₂` is Hermitian,
//! * `X†(X h₂ − h₁ X) = 0`,
//! * `[h₂, N₂] = 0`,
//! * every eigenvector `φ` of `h₁` with `X†φ ≠ 0` maps to an eigenvector
//!   `X†φ` of `h₂` with the same eigenvalue,
//!
//! so `σ(h₂) ⊆ σ(h₁)`. The reverse construction `h₁ = N₁⁻¹ X h₂ X†` needs
//! `N₁` invertible instead.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frames::{analysis_operator, frame_bounds, Frame};
use crate::numerics::{
    commutator, ensure_hermitian, hermitian_eig, inner, re, relative, strict_inverse, CVector,
    ComplexMatrix, Tolerances,
};

/// `h₁` on H₁ together with the intertwiner `X: H₂ → H₁`.
#[derive(Clone, Debug)]
pub struct PartnerInput {
    h1: ComplexMatrix,
    x: ComplexMatrix,
}

impl PartnerInput {
    /// Checks shapes only; hermiticity of `h₁` is gated by
    /// [`validate_compatibility`].
    pub fn new(h1: ComplexMatrix, x: ComplexMatrix) -> Result<Self> {
        if !h1.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "h1 must be square, got {}x{}",
                h1.rows(),
                h1.cols()
            )));
        }
        if x.rows() != h1.rows() {
            return Err(Error::DimensionMismatch(format!(
                "X has {} rows but h1 acts on dimension {}",
                x.rows(),
                h1.rows()
            )));
        }
        Ok(Self { h1, x })
    }

    pub fn h1(&self) -> &ComplexMatrix {
        &self.h1
    }

    pub fn x(&self) -> &ComplexMatrix {
        &self.x
    }

    /// dim H₁.
    pub fn dim1(&self) -> usize {
        self.x.rows()
    }

    /// dim H₂.
    pub fn dim2(&self) -> usize {
        self.x.cols()
    }
}

/// The constructed partner and the residuals of every condition it must
/// satisfy. Residuals are relative, in Frobenius norm:
///
/// * `residual_alpha = ‖h₂ − h₂†‖ / ‖h₂‖`
/// * `residual_beta = ‖X†(X h₂ − h₁ X)‖ / (‖X‖² ‖h₁‖)`
/// * `residual_beta_strong = ‖X h₂ − h₁ X‖ / (‖X‖ ‖h₁‖)`, only expected
///   to be small when `N₁` is invertible
/// * `residual_h2n2 = ‖[h₂, N₂]‖ / (‖h₂‖ ‖N₂‖)`
#[derive(Clone, Debug)]
pub struct PartnerResult {
    pub h2: ComplexMatrix,
    pub n1: ComplexMatrix,
    pub n2: ComplexMatrix,
    pub residual_alpha: f64,
    pub residual_beta: f64,
    pub residual_beta_strong: f64,
    pub residual_h2n2: f64,
}

/// One eigenvalue shared by both spectra.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatchedEigenvalue {
    pub eigenvalue: f64,
    pub multiplicity_h1: usize,
    pub multiplicity_h2: usize,
}

/// Result of matching `σ(h₂)` against `σ(h₁)` as multisets.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralInclusion {
    pub spectrum_h1: Vec<f64>,
    pub spectrum_h2: Vec<f64>,
    pub matched: Vec<MatchedEigenvalue>,
    pub unmatched_h2: Vec<f64>,
    pub included: bool,
}

/// An eigenvector of `h₁` whose image `X†φ` survived.
#[derive(Clone, Debug)]
pub struct KeptEigenvector {
    pub eigenvalue: f64,
    /// Position in the descending eigenvalue order of `h₁`, from 0.
    pub index: usize,
    pub image_norm: f64,
    pub image: CVector,
    /// `‖h₂ X†φ − ε X†φ‖`.
    pub residual: f64,
}

/// An eigenvector of `h₁` in the kernel of `X†`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DroppedEigenvector {
    pub eigenvalue: f64,
    pub index: usize,
    pub image_norm: f64,
}

#[derive(Clone, Debug)]
pub struct SpectralReport {
    pub inclusion: SpectralInclusion,
    pub kept_eigenvectors: Vec<KeptEigenvector>,
    pub dropped_eigenvectors: Vec<DroppedEigenvector>,
}

struct Compatibility {
    n1: ComplexMatrix,
    n2: ComplexMatrix,
    n2_inverse: ComplexMatrix,
}

fn check_commutes(a: &ComplexMatrix, b: &ComplexMatrix, tol: &Tolerances) -> Result<()> {
    let residual = commutator(a, b)?.norm();
    let bound = tol.commutator_tol * a.norm() * b.norm();
    if residual <= bound {
        Ok(())
    } else {
        Err(Error::CommutatorViolation { residual, bound })
    }
}

fn compatibility(input: &PartnerInput, tol: &Tolerances) -> Result<Compatibility> {
    ensure_hermitian(input.h1(), tol)?;
    let x = input.x();
    let n1 = x * &x.adjoint();
    let n2 = &x.adjoint() * x;
    check_commutes(&n1, input.h1(), tol)?;
    let n2_inverse = strict_inverse(&n2, tol)?;
    Ok(Compatibility { n1, n2, n2_inverse })
}

/// Checks `h₁ = h₁†`, `‖[N₁, h₁]‖ ≤ commutator_tol·‖N₁‖·‖h₁‖` and that
/// `N₂` is invertible. Returns `(N₁, N₂)`.
pub fn validate_compatibility(
    input: &PartnerInput,
    tol: &Tolerances,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let c = compatibility(input, tol)?;
    Ok((c.n1, c.n2))
}

fn gate(condition: &'static str, residual: f64, bound: f64) -> Result<()> {
    if residual <= bound {
        Ok(())
    } else {
        Err(Error::ConditionViolation {
            condition,
            residual,
            bound,
        })
    }
}

/// `h₂ = N₂⁻¹ X† h₁ X`, with its defining conditions verified.
pub fn build_partner(input: &PartnerInput, tol: &Tolerances) -> Result<PartnerResult> {
    let Compatibility { n1, n2, n2_inverse } = compatibility(input, tol)?;
    let x = input.x();
    let xd = x.adjoint();
    let h1 = input.h1();
    let h2 = &(&(&n2_inverse * &xd) * h1) * x;

    let x_norm = x.norm();
    let h1_norm = h1.norm();
    let strong = &(x * &h2) - &(h1 * x);
    let residual_alpha = h2.hermiticity_residual();
    let residual_beta = relative((&xd * &strong).norm(), x_norm * x_norm * h1_norm);
    let residual_beta_strong = relative(strong.norm(), x_norm * h1_norm);
    let residual_h2n2 = relative(commutator(&h2, &n2)?.norm(), h2.norm() * n2.norm());

    gate(
        "alpha (h2 self-adjoint)",
        residual_alpha,
        tol.hermiticity_tol,
    )?;
    gate(
        "beta (weak intertwining)",
        residual_beta,
        tol.commutator_tol,
    )?;
    gate("[h2, N2] = 0", residual_h2n2, tol.commutator_tol)?;

    Ok(PartnerResult {
        h2,
        n1,
        n2,
        residual_alpha,
        residual_beta,
        residual_beta_strong,
        residual_h2n2,
    })
}

/// Groups consecutive descending eigenvalues closer than `tol`.
fn clusters(values: &[f64], tol: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for k in 1..=values.len() {
        if k == values.len() || values[k - 1] - values[k] > tol {
            out.push(start..k);
            start = k;
        }
    }
    out
}

/// Maps every eigenvector `φₙ` of `h₁` to `X†φₙ` and sorts it into kept or
/// dropped, then matches the spectra.
///
/// Inside a degenerate eigenvalue the eigenbasis is rotated to diagonalize
/// `N₁` restricted to the eigenspace, so images are mutually orthogonal
/// and kernel directions separate cleanly from surviving ones. An image
/// is zero when `‖X†φ‖ ≤ zero_vector_tol·‖X‖·‖φ‖`; a kept image must
/// satisfy `‖h₂X†φ − εX†φ‖ ≤ eigen_match_tol·‖X†φ‖`.
pub fn map_eigenpairs(
    input: &PartnerInput,
    result: &PartnerResult,
    tol: &Tolerances,
) -> Result<SpectralReport> {
    let eig = hermitian_eig(input.h1(), tol)?;
    let x = input.x();
    let xd = x.adjoint();
    let zero_bound = tol.zero_vector_tol * x.norm();

    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for range in clusters(&eig.eigenvalues, tol.eigen_match_tol) {
        let basis: Vec<CVector> = range.clone().map(|k| eig.eigenvector(k)).collect();
        let basis = if basis.len() > 1 {
            let phi = ComplexMatrix::from_columns(&basis)?;
            // Hermitian by construction; near-zero on kernel clusters, where
            // a relative hermiticity test would only see roundoff.
            let restricted = &(&phi.adjoint() * &result.n1) * &phi;
            let restricted = (&restricted + &restricted.adjoint()).scale(0.5);
            let rot = hermitian_eig(&restricted, tol)?;
            let rotated = &phi * &rot.eigenvectors;
            (0..rotated.cols())
                .map(|k| rotated.column_vector(k))
                .collect()
        } else {
            basis
        };

        for (offset, phi) in basis.into_iter().enumerate() {
            let index = range.start + offset;
            let eigenvalue = if range.len() > 1 {
                inner(&phi, &input.h1().apply(&phi)).re
            } else {
                eig.eigenvalues[index]
            };
            let image = xd.apply(&phi);
            let image_norm = image.norm();
            if image_norm <= zero_bound * phi.norm() {
                dropped.push(DroppedEigenvector {
                    eigenvalue,
                    index,
                    image_norm,
                });
                continue;
            }
            let residual = (result.h2.apply(&image) - &image * re(eigenvalue)).norm();
            let bound = tol.eigen_match_tol * image_norm;
            if residual > bound {
                return Err(Error::EigenResidualViolation {
                    eigenvalue,
                    residual,
                    bound,
                });
            }
            kept.push(KeptEigenvector {
                eigenvalue,
                index,
                image_norm,
                image,
                residual,
            });
        }
    }

    let inclusion = spectral_inclusion(input.h1(), &result.h2, tol)?;
    Ok(SpectralReport {
        inclusion,
        kept_eigenvectors: kept,
        dropped_eigenvectors: dropped,
    })
}

/// Greedy multiset matching of two descending spectra with absolute gap
/// `gap`.
pub fn match_spectra(spectrum_h1: &[f64], spectrum_h2: &[f64], gap: f64) -> SpectralInclusion {
    let mut a = spectrum_h1.to_vec();
    let mut b = spectrum_h2.to_vec();
    a.sort_by(|x, y| y.total_cmp(x));
    b.sort_by(|x, y| y.total_cmp(x));

    let mut paired = Vec::new();
    let mut unmatched_h2 = Vec::new();
    let (mut i, mut j) = (0, 0);
    while j < b.len() {
        if i >= a.len() || b[j] > a[i] + gap {
            unmatched_h2.push(b[j]);
            j += 1;
        } else if (a[i] - b[j]).abs() <= gap {
            paired.push(b[j]);
            i += 1;
            j += 1;
        } else {
            i += 1;
        }
    }

    let count = |values: &[f64], at: f64| values.iter().filter(|v| (*v - at).abs() <= gap).count();
    let mut matched: Vec<MatchedEigenvalue> = Vec::new();
    for value in paired {
        if matched
            .last()
            .is_some_and(|m| (m.eigenvalue - value).abs() <= gap)
        {
            continue;
        }
        matched.push(MatchedEigenvalue {
            eigenvalue: value,
            multiplicity_h1: count(&a, value),
            multiplicity_h2: count(&b, value),
        });
    }

    SpectralInclusion {
        included: unmatched_h2.is_empty(),
        spectrum_h1: a,
        spectrum_h2: b,
        matched,
        unmatched_h2,
    }
}

/// Checks `σ(h₂) ⊆ σ(h₁)` as multisets within `eigen_match_tol`.
pub fn spectral_inclusion(
    h1: &ComplexMatrix,
    h2: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<SpectralInclusion> {
    let s1 = hermitian_eig(h1, tol)?.eigenvalues;
    let s2 = hermitian_eig(h2, tol)?.eigenvalues;
    Ok(match_spectra(&s1, &s2, tol.eigen_match_tol))
}

/// `h₁ = N₁⁻¹ X h₂ X†`, requiring `h₂ = h₂†`, `[h₂, N₂] = 0` and `N₁`
/// invertible.
pub fn build_reverse_partner(
    h2: &ComplexMatrix,
    x: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<ComplexMatrix> {
    ensure_hermitian(h2, tol)?;
    if x.cols() != h2.rows() {
        return Err(Error::DimensionMismatch(format!(
            "X has {} columns but h2 acts on dimension {}",
            x.cols(),
            h2.rows()
        )));
    }
    let xd = x.adjoint();
    let n1 = x * &xd;
    let n2 = &xd * x;
    check_commutes(h2, &n2, tol)?;
    let n1_inverse = strict_inverse(&n1, tol)?;
    Ok(&(&(&n1_inverse * x) * h2) * &xd)
}

/// Which space plays H₁ when a tight frame supplies the intertwiner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FrameOption {
    /// H₁ = ℂⁿ, H₂ = coefficient space, `X = F†`; needs `FF†` invertible.
    I,
    /// H₁ = coefficient space, H₂ = ℂⁿ, `X = F`; `X†X = A𝟙` always invertible.
    II,
}

impl fmt::Display for FrameOption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameOption::I => write!(f, "I"),
            FrameOption::II => write!(f, "II"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct OptionChoice {
    pub option: FrameOption,
    pub x: ComplexMatrix,
    /// The tight bound `A`.
    pub bound: f64,
}

impl OptionChoice {
    /// Dimension of the space `h₁` must act on.
    pub fn h1_dim(&self) -> usize {
        self.x.rows()
    }
}

/// Picks Option I (`X = F†`) when `FF†` is invertible, Option II (`X = F`)
/// otherwise.
pub fn option_select(frame: &Frame, tol: &Tolerances) -> Result<OptionChoice> {
    let bounds = frame_bounds(frame, tol)?;
    if !bounds.is_tight(tol) {
        return Err(Error::NotTight {
            lower: bounds.lower,
            upper: bounds.upper,
        });
    }
    let f = analysis_operator(frame);
    let gram = &f * &f.adjoint();
    let (option, x) = match strict_inverse(&gram, tol) {
        Ok(_) => (FrameOption::I, f.adjoint()),
        Err(Error::NotInvertible { .. }) => (FrameOption::II, f),
        Err(e) => return Err(e),
    };
    Ok(OptionChoice {
        option,
        x,
        bound: bounds.upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::numerics::{real_vector, C64};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn c3_input() -> PartnerInput {
        PartnerInput::new(catalog::c3_h1(), catalog::c3_analysis_matrix()).unwrap()
    }

    fn parallel(a: &CVector, b: &CVector) -> f64 {
        // ‖a − (⟨b,a⟩/⟨b,b⟩) b‖ / ‖a‖
        let coef = inner(b, a) / inner(b, b);
        (a - b * coef).norm() / a.norm()
    }

    #[test]
    fn c3_option_two_passes_compatibility() {
        let (n1, n2) = validate_compatibility(&c3_input(), &tol()).unwrap();
        assert_eq!(n1.shape(), (5, 5));
        assert!(n2.max_abs_diff(&ComplexMatrix::identity(3).scale(5.0 / 3.0)) < 1e-14);
    }

    #[test]
    fn non_hermitian_h1_is_rejected() {
        let h1 = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        let input = PartnerInput::new(h1, ComplexMatrix::identity(2)).unwrap();
        assert!(matches!(
            validate_compatibility(&input, &tol()),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn c3_option_one_attempt_is_not_invertible() {
        // Option I on the same frame: h1 on C^3, X = F†, N2 = FF†.
        let h1 = ComplexMatrix::from_real_diagonal(&[1.0, 2.0, 3.0]);
        let x = catalog::c3_analysis_matrix().adjoint();
        let input = PartnerInput::new(h1, x).unwrap();
        assert!(matches!(
            validate_compatibility(&input, &tol()),
            Err(Error::NotInvertible { .. })
        ));
    }

    #[test]
    fn non_commuting_pair_is_rejected() {
        let h1 = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 1.0, 2.0]).unwrap();
        let x = ComplexMatrix::from_real_diagonal(&[1.0, 2.0]);
        let input = PartnerInput::new(h1, x).unwrap();
        assert!(matches!(
            build_partner(&input, &tol()),
            Err(Error::CommutatorViolation { .. })
        ));
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let h1 = ComplexMatrix::identity(3);
        assert!(PartnerInput::new(h1.clone(), ComplexMatrix::identity(2)).is_err());
        assert!(PartnerInput::new(ComplexMatrix::zeros(2, 3), ComplexMatrix::identity(2)).is_err());
    }

    #[test]
    fn c3_partner_matches_printed_h2() {
        let result = build_partner(&c3_input(), &tol()).unwrap();
        let s5 = 5f64.sqrt();
        let expected = ComplexMatrix::from_real(
            3,
            3,
            &[
                17.0 / 6.0,
                0.0,
                s5 / 6.0,
                0.0,
                5.0,
                0.0,
                s5 / 6.0,
                0.0,
                13.0 / 6.0,
            ],
        )
        .unwrap();
        assert!(result.h2.max_abs_diff(&expected) < 1e-10);
        assert!(result.residual_alpha <= 1e-10);
        assert!(result.residual_beta <= 1e-10);
        assert!(result.residual_h2n2 <= 1e-10);
        // N1 = FF† is singular, so only the weak form holds; still the
        // strong residual is small here because h1 preserves ker F†.
        assert!(result.residual_beta_strong.is_finite());
    }

    #[test]
    fn unitary_intertwiner_preserves_spectrum() {
        let c = 0.6;
        let s = 0.8;
        let v = ComplexMatrix::from_row_major(
            2,
            2,
            vec![re(c), C64::new(0.0, s), C64::new(0.0, s), re(c)],
        )
        .unwrap();
        let h1 = ComplexMatrix::from_real(2, 2, &[2.0, 0.5, 0.5, -1.0]).unwrap();
        let input = PartnerInput::new(h1.clone(), v.clone()).unwrap();
        let result = build_partner(&input, &tol()).unwrap();
        assert!(result.h2.max_abs_diff(&(&(&v.adjoint() * &h1) * &v)) < 1e-14);

        let report = map_eigenpairs(&input, &result, &tol()).unwrap();
        assert_eq!(report.kept_eigenvectors.len(), 2);
        assert!(report.dropped_eigenvectors.is_empty());
        assert!(report.inclusion.included);
        assert_eq!(report.inclusion.matched.len(), 2);

        let back = build_reverse_partner(&result.h2, &v, &tol()).unwrap();
        assert!(back.max_abs_diff(&h1) < 1e-10);
    }

    #[test]
    fn duplicated_basis_partner_is_scalar() {
        let (alpha, beta) = (1.25, -0.5);
        let entry = catalog::example_duplicated_basis(4, alpha, beta).unwrap();
        let input = PartnerInput::new(entry.h1.clone(), entry.x.clone()).unwrap();
        let result = build_partner(&input, &tol()).unwrap();
        let expected = ComplexMatrix::identity(4).scale(alpha + beta);
        assert!(result.h2.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn c3_eigenpair_images() {
        let input = c3_input();
        let result = build_partner(&input, &tol()).unwrap();
        let report = map_eigenpairs(&input, &result, &tol()).unwrap();

        let kept: Vec<f64> = report
            .kept_eigenvectors
            .iter()
            .map(|k| k.eigenvalue)
            .collect();
        assert_eq!(kept.len(), 3);
        for (got, want) in kept.iter().zip([5.0, 3.0, 2.0]) {
            assert!((got - want).abs() < 1e-10);
        }
        let dropped: Vec<usize> = report
            .dropped_eigenvectors
            .iter()
            .map(|d| d.index)
            .collect();
        assert_eq!(dropped, vec![1, 4]);

        let first = &report.kept_eigenvectors[0];
        assert!(parallel(&first.image, &real_vector(&[0.0, 5.0 / 3.0, 0.0])) < 1e-10);
        assert!(report.inclusion.included);
    }

    #[test]
    fn c3_reverse_is_not_invertible() {
        let result = build_partner(&c3_input(), &tol()).unwrap();
        assert!(matches!(
            build_reverse_partner(&result.h2, &catalog::c3_analysis_matrix(), &tol()),
            Err(Error::NotInvertible { .. })
        ));
    }

    #[test]
    fn reverse_rejects_non_commuting_h2() {
        let x = ComplexMatrix::from_real_diagonal(&[1.0, 2.0]);
        let h2 = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        assert!(matches!(
            build_reverse_partner(&h2, &x, &tol()),
            Err(Error::CommutatorViolation { .. })
        ));
    }

    #[test]
    fn inclusion_examples() {
        let s5 = 5f64.sqrt();
        let h1 = [5.0, 2.0 + s5, 3.0, 2.0, 2.0 - s5];
        let inc = match_spectra(&h1, &[5.0, 3.0, 2.0], 1e-8);
        assert!(inc.included);
        assert_eq!(inc.matched.len(), 3);

        let full = match_spectra(&h1, &h1, 1e-8);
        assert!(full.included);
        assert_eq!(full.matched.len(), 5);

        let off = match_spectra(&h1, &[5.0, 3.0 + 1e-7, 2.0], 1e-8);
        assert!(!off.included);
        assert_eq!(off.unmatched_h2.len(), 1);
    }

    #[test]
    fn inclusion_respects_multiplicity() {
        let inc = match_spectra(&[2.0, 1.0], &[2.0, 2.0], 1e-8);
        assert!(!inc.included);
        assert_eq!(inc.unmatched_h2, vec![2.0]);
        assert_eq!(inc.matched[0].multiplicity_h1, 1);
        assert_eq!(inc.matched[0].multiplicity_h2, 2);

        let inc = match_spectra(&[2.0, 2.0, 1.0], &[2.0, 2.0], 1e-8);
        assert!(inc.included);
    }

    #[test]
    fn option_selection() {
        let c3 = option_select(&catalog::c3_frame(), &tol()).unwrap();
        assert_eq!(c3.option, FrameOption::II);
        assert_eq!(c3.h1_dim(), 5);
        assert!((c3.bound - 5.0 / 3.0).abs() < 1e-12);

        let onb = option_select(&Frame::canonical_basis(3).unwrap(), &tol()).unwrap();
        assert_eq!(onb.option, FrameOption::I);

        let dup = option_select(&catalog::duplicated_basis_frame(4).unwrap(), &tol()).unwrap();
        assert_eq!(dup.option, FrameOption::II);

        let loose = Frame::new(
            2,
            vec![
                real_vector(&[1.0, 0.0]),
                real_vector(&[1.0, 0.0]),
                real_vector(&[0.0, 1.0]),
            ],
        )
        .unwrap();
        assert!(matches!(
            option_select(&loose, &tol()),
            Err(Error::NotTight { .. })
        ));
    }

    #[test]
    fn degenerate_cluster_splits_kernel_from_image() {
        // h1 = 𝟙 on C^2, X = (1, 1)ᵀ/√2: one eigenvector survives, one is dropped.
        let h1 = ComplexMatrix::identity(2);
        let x = ComplexMatrix::from_real(2, 1, &[1.0, 1.0])
            .unwrap()
            .scale(0.5f64.sqrt());
        let input = PartnerInput::new(h1, x).unwrap();
        let result = build_partner(&input, &tol()).unwrap();
        let report = map_eigenpairs(&input, &result, &tol()).unwrap();
        assert_eq!(report.kept_eigenvectors.len(), 1);
        assert_eq!(report.dropped_eigenvectors.len(), 1);
        assert!(report.dropped_eigenvectors[0].image_norm < 1e-15);
    }
}
