//! Named, reproducible scenarios built from exact closed-form inputs.
//!
//! Each [`CatalogEntry`] bundles a frame or g-frame, the intertwiner it
//! induces, a Hermitian `h₁`, and the artifacts the construction is known
//! to produce. [`run`] pushes an entry through the pipeline and turns every
//! expected artifact into a [`Check`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frames::{cross_gram, frame_bounds, Frame, FrameBounds};
use crate::gframes::{
    composed_gframe, g_frame_bounds, gframe_partner_input, projection_gframe, GFrame,
};
use crate::intertwining::{
    build_partner, build_reverse_partner, map_eigenpairs, match_spectra, option_select,
    FrameOption, PartnerInput, PartnerResult, SpectralReport,
};
use crate::numerics::{hermitian_eig, inner, real_vector, CVector, ComplexMatrix, Tolerances};

/// Stable scenario identifiers.
pub const NAMES: [&str; 6] = [
    "c3-tight",
    "dup-basis",
    "multiplicity",
    "orthonormal",
    "proj-partition",
    "composed",
];

pub const DEFAULT_PAIRS: usize = 8;
pub const DEFAULT_LEVELS: usize = 6;

#[derive(Clone, Debug)]
pub enum Construction {
    Frame(Frame),
    GFrame(GFrame),
}

#[derive(Clone, Debug)]
pub enum ExpectedKind {
    Bounds {
        lower: f64,
        upper: f64,
    },
    Option(FrameOption),
    CrossGram(ComplexMatrix),
    PartnerMatrix(ComplexMatrix),
    PartnerSpectrum(Vec<f64>),
    /// The kept image for `eigenvalue` is parallel to `direction`.
    ImageDirection {
        eigenvalue: f64,
        direction: CVector,
    },
    ImageCounts {
        kept: usize,
        dropped: usize,
    },
    /// `σ(h₁)` must contain these values as a sub-multiset.
    H1Contains(Vec<f64>),
    /// A published list for `σ(h₁)`, compared but never gating.
    H1Audit(Vec<f64>),
    /// The reverse construction recovers `h₁`.
    ReverseRoundTrip,
}

#[derive(Clone, Debug)]
pub struct Expected {
    /// Where the value comes from, e.g. `"c3-tight: partner matrix"`.
    pub locator: String,
    pub tolerance: f64,
    pub kind: ExpectedKind,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub construction: Construction,
    pub x: ComplexMatrix,
    pub h1: ComplexMatrix,
    pub expected: Vec<Expected>,
}

impl CatalogEntry {
    pub fn input(&self) -> Result<PartnerInput> {
        PartnerInput::new(self.h1.clone(), self.x.clone())
    }
}

/// How a check compares `measured` against `threshold`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">")]
    Above,
}

impl Relation {
    pub fn holds(self, measured: f64, threshold: f64) -> bool {
        match self {
            Relation::AtMost => measured <= threshold,
            Relation::Above => measured > threshold,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::AtMost => "<=",
            Relation::Above => ">",
        }
    }
}

/// One verdict, derivable from its own fields: `pass` iff `relation`
/// holds between `measured` and `threshold`. Non-gating checks are
/// reported but never fail a run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub locator: String,
    pub measured: f64,
    pub relation: Relation,
    pub threshold: f64,
    pub pass: bool,
    pub gating: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    /// Passes iff `measured ≤ threshold`.
    pub fn new(
        name: impl Into<String>,
        locator: impl Into<String>,
        measured: f64,
        threshold: f64,
    ) -> Self {
        Self::with_relation(name, locator, measured, Relation::AtMost, threshold)
    }

    /// Passes iff `measured > threshold`.
    pub fn above(
        name: impl Into<String>,
        locator: impl Into<String>,
        measured: f64,
        threshold: f64,
    ) -> Self {
        Self::with_relation(name, locator, measured, Relation::Above, threshold)
    }

    fn with_relation(
        name: impl Into<String>,
        locator: impl Into<String>,
        measured: f64,
        relation: Relation,
        threshold: f64,
    ) -> Self {
        Self {
            name: name.into(),
            locator: locator.into(),
            measured,
            relation,
            threshold,
            pass: relation.holds(measured, threshold),
            gating: true,
            note: None,
        }
    }

    /// The failed verdict a numerical error stands for, if it carries one.
    pub fn from_error(err: &Error, locator: &str, tol: &Tolerances) -> Option<Self> {
        let c = match err {
            Error::NotHermitian { residual, bound } => {
                Check::new("hermiticity", locator, *residual, *bound)
            }
            Error::CommutatorViolation { residual, bound } => {
                Check::new("commutator [h1, N1]", locator, *residual, *bound)
            }
            Error::ConditionViolation {
                condition,
                residual,
                bound,
            } => Check::new(
                format!("partner condition {condition}"),
                locator,
                *residual,
                *bound,
            ),
            Error::EigenResidualViolation {
                eigenvalue,
                residual,
                bound,
            } => Check::new(
                format!("eigen-equation of the image for {eigenvalue}"),
                locator,
                *residual,
                *bound,
            ),
            Error::NotInvertible {
                min_eigenvalue,
                bound,
                ..
            } => Check::above(
                "invertibility: smallest eigenvalue",
                locator,
                *min_eigenvalue,
                *bound,
            ),
            Error::NotAFrame { lower, bound, .. } => {
                Check::above("frame: lower bound", locator, *lower, *bound)
            }
            Error::NotTight { lower, upper } => Check::new(
                "tightness: B - A",
                locator,
                upper - lower,
                tol.eigen_match_tol * upper,
            ),
            Error::NotIsometryLike {
                residual, bound, ..
            } => Check::new("isometry: |V†V - A1|", locator, *residual, *bound),
            _ => return None,
        };
        Some(c)
    }

    pub fn informational(mut self) -> Self {
        self.gating = false;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

fn expect(locator: &str, tolerance: f64, kind: ExpectedKind) -> Expected {
    Expected {
        locator: locator.to_string(),
        tolerance,
        kind,
    }
}

// ---------------------------------------------------------------------------
// Five vectors in ℂ³

fn s(x: f64) -> f64 {
    x.sqrt()
}

/// The tight frame of five vectors in ℂ³ with bound 5/3.
pub fn c3_frame() -> Frame {
    let a = 1.0 / s(3.0);
    let b = 1.0 / s(6.0);
    Frame::new(
        3,
        vec![
            real_vector(&[0.0, a, a * s(2.0)]),
            real_vector(&[0.0, -a, a * s(2.0)]),
            real_vector(&[0.0, 1.0, 0.0]),
            real_vector(&[b * s(5.0), 0.0, b]),
            real_vector(&[-b * s(5.0), 0.0, b]),
        ],
    )
    .expect("constant frame")
}

/// Its analysis operator, entered directly in closed form.
pub fn c3_analysis_matrix() -> ComplexMatrix {
    let a = 1.0 / s(3.0);
    let b = s(2.0 / 3.0);
    let c = s(5.0 / 6.0);
    let d = 1.0 / s(6.0);
    ComplexMatrix::from_real(
        5,
        3,
        &[
            0.0, a, b, //
            0.0, -a, b, //
            0.0, 1.0, 0.0, //
            c, 0.0, d, //
            -c, 0.0, d,
        ],
    )
    .expect("constant matrix")
}

/// A 5×5 Hermitian matrix commuting with the Gram matrix of [`c3_frame`].
pub fn c3_h1() -> ComplexMatrix {
    let r = s(3.0);
    let m = -2.0 / 5.0 * (-1.0 + r);
    let p = -2.0 / 5.0 * (1.0 + r);
    ComplexMatrix::from_real(
        5,
        5,
        &[
            (43.0 + 6.0 * r) / 15.0,
            -14.0 / 15.0,
            -m,
            m,
            (1.0 - 6.0 * r) / 15.0,
            -14.0 / 15.0,
            (43.0 - 6.0 * r) / 15.0,
            p,
            -p,
            (1.0 + 6.0 * r) / 15.0,
            -m,
            p,
            21.0 / 5.0,
            4.0 / 5.0,
            4.0 / 5.0,
            m,
            -p,
            4.0 / 5.0,
            11.0 / 5.0,
            -4.0 / 5.0,
            (1.0 - 6.0 * r) / 15.0,
            (1.0 + 6.0 * r) / 15.0,
            4.0 / 5.0,
            -4.0 / 5.0,
            28.0 / 15.0,
        ],
    )
    .expect("constant matrix")
}

/// `(3/5) F† h₁ F` in closed form.
pub fn c3_expected_h2() -> ComplexMatrix {
    let r = s(5.0) / 6.0;
    ComplexMatrix::from_real(
        3,
        3,
        &[17.0 / 6.0, 0.0, r, 0.0, 5.0, 0.0, r, 0.0, 13.0 / 6.0],
    )
    .expect("constant matrix")
}

/// The published list for `σ(h₁)`. Its last entry, `2 − √2`, does not
/// match the matrix, whose spectrum is `{5, 2+√5, 3, 2, 2−√5}`.
pub fn c3_published_h1_spectrum() -> Vec<f64> {
    vec![5.0, 2.0 + s(5.0), 3.0, 2.0, 2.0 - s(2.0)]
}

pub fn example_c3_tight() -> CatalogEntry {
    let third = 1.0 / 3.0;
    let r = 1.0 / s(3.0);
    let gram = ComplexMatrix::from_real(
        5,
        5,
        &[
            1.0,
            third,
            r,
            third,
            third,
            third,
            1.0,
            -r,
            third,
            third,
            r,
            -r,
            1.0,
            0.0,
            0.0,
            third,
            third,
            0.0,
            1.0,
            -2.0 * third,
            third,
            third,
            0.0,
            -2.0 * third,
            1.0,
        ],
    )
    .expect("constant matrix");
    CatalogEntry {
        name: "c3-tight".into(),
        construction: Construction::Frame(c3_frame()),
        x: c3_analysis_matrix(),
        h1: c3_h1(),
        expected: vec![
            expect(
                "c3-tight: frame bound A = 5/3",
                1e-12,
                ExpectedKind::Bounds {
                    lower: 5.0 / 3.0,
                    upper: 5.0 / 3.0,
                },
            ),
            expect(
                "c3-tight: FF† is singular, Option II",
                0.0,
                ExpectedKind::Option(FrameOption::II),
            ),
            expect(
                "c3-tight: Gram matrix FF†",
                1e-12,
                ExpectedKind::CrossGram(gram),
            ),
            expect(
                "c3-tight: partner matrix h2",
                1e-10,
                ExpectedKind::PartnerMatrix(c3_expected_h2()),
            ),
            expect(
                "c3-tight: spectrum of h2",
                1e-9,
                ExpectedKind::PartnerSpectrum(vec![5.0, 3.0, 2.0]),
            ),
            expect(
                "c3-tight: image of the eigenvector for 5",
                1e-9,
                ExpectedKind::ImageDirection {
                    eigenvalue: 5.0,
                    direction: real_vector(&[0.0, 5.0 / 3.0, 0.0]),
                },
            ),
            expect(
                "c3-tight: image of the eigenvector for 3",
                1e-9,
                ExpectedKind::ImageDirection {
                    eigenvalue: 3.0,
                    direction: real_vector(&[s(5.0), 0.0, 1.0]),
                },
            ),
            expect(
                "c3-tight: image of the eigenvector for 2",
                1e-9,
                ExpectedKind::ImageDirection {
                    eigenvalue: 2.0,
                    direction: real_vector(&[-1.0, 0.0, s(5.0)]),
                },
            ),
            expect(
                "c3-tight: two eigenvectors in ker F†",
                0.0,
                ExpectedKind::ImageCounts {
                    kept: 3,
                    dropped: 2,
                },
            ),
            expect(
                "c3-tight: sigma(h1) contains {5, 3, 2}",
                1e-9,
                ExpectedKind::H1Contains(vec![5.0, 3.0, 2.0]),
            ),
            expect(
                "c3-tight: published sigma(h1) list",
                1e-9,
                ExpectedKind::H1Audit(c3_published_h1_spectrum()),
            ),
        ],
    }
}

// ---------------------------------------------------------------------------
// Every basis vector twice

/// `e₁/√2, e₁/√2, e₂/√2, e₂/√2, …` in ℂᴺ: a Parseval frame of 2N vectors.
pub fn duplicated_basis_frame(pairs: usize) -> Result<Frame> {
    if pairs == 0 {
        return Err(Error::InvalidInput("need at least one pair".into()));
    }
    let scale = 1.0 / s(2.0);
    let vectors = (0..2 * pairs)
        .map(|k| {
            let mut v = vec![0.0; pairs];
            v[k / 2] = scale;
            real_vector(&v)
        })
        .collect();
    Frame::new(pairs, vectors)
}

/// The permutation swapping coordinates `2k` and `2k+1` on ℂ^{2N}.
pub fn pair_swap(pairs: usize) -> ComplexMatrix {
    let n = 2 * pairs;
    let mut entries = vec![0.0; n * n];
    for k in 0..pairs {
        entries[(2 * k) * n + 2 * k + 1] = 1.0;
        entries[(2 * k + 1) * n + 2 * k] = 1.0;
    }
    ComplexMatrix::from_real(n, n, &entries).expect("positive dimension")
}

/// Duplicated basis with `h₁ = α𝟙 + βP₂`; the partner is `(α+β)𝟙`.
pub fn example_duplicated_basis(pairs: usize, alpha: f64, beta: f64) -> Result<CatalogEntry> {
    let frame = duplicated_basis_frame(pairs)?;
    let swap = pair_swap(pairs);
    let id = ComplexMatrix::identity(2 * pairs);
    let h1 = &id.scale(alpha) + &swap.scale(beta);
    let gram = (&id + &swap).scale(0.5);
    let x = crate::frames::analysis_operator(&frame);
    Ok(CatalogEntry {
        name: "dup-basis".into(),
        x,
        h1,
        expected: vec![
            expect(
                "dup-basis: Parseval frame",
                1e-12,
                ExpectedKind::Bounds {
                    lower: 1.0,
                    upper: 1.0,
                },
            ),
            expect(
                "dup-basis: Option I unavailable",
                0.0,
                ExpectedKind::Option(FrameOption::II),
            ),
            expect(
                "dup-basis: FF† = (1 + P2)/2",
                1e-15,
                ExpectedKind::CrossGram(gram),
            ),
            expect(
                "dup-basis: h2 = (alpha + beta) 1",
                1e-12,
                ExpectedKind::PartnerMatrix(ComplexMatrix::identity(pairs).scale(alpha + beta)),
            ),
            expect(
                "dup-basis: antisymmetric pair vectors are dropped",
                0.0,
                ExpectedKind::ImageCounts {
                    kept: pairs,
                    dropped: pairs,
                },
            ),
        ],
        construction: Construction::Frame(frame),
    })
}

// ---------------------------------------------------------------------------
// Level j repeated j times

/// `e₁, e₂/√2, e₂/√2, e₃/√3, e₃/√3, e₃/√3, …` up to level `levels`: a
/// Parseval frame of `levels(levels+1)/2` vectors in ℂ^levels.
pub fn multiplicity_frame(levels: usize) -> Result<Frame> {
    if levels == 0 {
        return Err(Error::InvalidInput("need at least one level".into()));
    }
    let mut vectors = Vec::new();
    for j in 1..=levels {
        for _ in 0..j {
            let mut v = vec![0.0; levels];
            v[j - 1] = 1.0 / s(j as f64);
            vectors.push(real_vector(&v));
        }
    }
    Frame::new(levels, vectors)
}

/// Block-diagonal `h₁` on the coefficient space: level `j` gets a `j × j`
/// block with `alphas[j-1]` on the diagonal and `betas[j-1]` elsewhere.
/// `betas[0]` is unused; all-zero betas give the diagonal variant.
pub fn multiplicity_h1(alphas: &[f64], betas: &[f64]) -> Result<ComplexMatrix> {
    if alphas.is_empty() || alphas.len() != betas.len() {
        return Err(Error::InvalidInput(
            "need one alpha and one beta per level".into(),
        ));
    }
    let blocks: Vec<ComplexMatrix> = alphas
        .iter()
        .zip(betas)
        .enumerate()
        .map(|(i, (&a, &b))| {
            let j = i + 1;
            let entries: Vec<f64> = (0..j * j)
                .map(|k| if k / j == k % j { a } else { b })
                .collect();
            ComplexMatrix::from_real(j, j, &entries).expect("positive dimension")
        })
        .collect();
    ComplexMatrix::block_diagonal(&blocks)
}

/// Partner eigenvalues `αⱼ + (j−1)βⱼ`.
pub fn multiplicity_partner_eigenvalues(alphas: &[f64], betas: &[f64]) -> Vec<f64> {
    alphas
        .iter()
        .zip(betas)
        .enumerate()
        .map(|(i, (a, b))| a + i as f64 * b)
        .collect()
}

pub fn example_multiplicity(alphas: &[f64], betas: &[f64]) -> Result<CatalogEntry> {
    let levels = alphas.len();
    let frame = multiplicity_frame(levels)?;
    let h1 = multiplicity_h1(alphas, betas)?;
    let tilde = multiplicity_partner_eigenvalues(alphas, betas);
    let mut expected = vec![
        expect(
            "multiplicity: Parseval frame",
            1e-12,
            ExpectedKind::Bounds {
                lower: 1.0,
                upper: 1.0,
            },
        ),
        expect(
            "multiplicity: Option I unavailable",
            0.0,
            ExpectedKind::Option(FrameOption::II),
        ),
        expect(
            "multiplicity: h2 = sum of alpha~_j |e_j><e_j|",
            1e-12,
            ExpectedKind::PartnerMatrix(ComplexMatrix::from_real_diagonal(&tilde)),
        ),
        expect(
            "multiplicity: one surviving image per level",
            0.0,
            ExpectedKind::ImageCounts {
                kept: levels,
                dropped: levels * (levels - 1) / 2,
            },
        ),
    ];
    for (j, &t) in tilde.iter().enumerate() {
        let mut e = vec![0.0; levels];
        e[j] = 1.0;
        expected.push(expect(
            &format!(
                "multiplicity: image for level {} is along e{}",
                j + 1,
                j + 1
            ),
            1e-9,
            ExpectedKind::ImageDirection {
                eigenvalue: t,
                direction: real_vector(&e),
            },
        ));
    }
    Ok(CatalogEntry {
        name: "multiplicity".into(),
        x: crate::frames::analysis_operator(&frame),
        construction: Construction::Frame(frame),
        h1,
        expected,
    })
}

// ---------------------------------------------------------------------------
// Orthonormal basis

/// Canonical basis of ℂᴺ under Option I with `h₁ = diag(ε)`, so that the
/// partner acts as `(h₂c)ⱼ = εⱼcⱼ`.
pub fn example_orthonormal(eigenvalues: &[f64]) -> Result<CatalogEntry> {
    let n = eigenvalues.len();
    let frame = Frame::canonical_basis(n)?;
    let f = crate::frames::analysis_operator(&frame);
    let h1 = ComplexMatrix::from_real_diagonal(eigenvalues);
    let mut expected = vec![
        expect(
            "orthonormal: Parseval frame",
            1e-12,
            ExpectedKind::Bounds {
                lower: 1.0,
                upper: 1.0,
            },
        ),
        expect(
            "orthonormal: both options available, Option I chosen",
            0.0,
            ExpectedKind::Option(FrameOption::I),
        ),
        expect(
            "orthonormal: FF† = 1",
            1e-12,
            ExpectedKind::CrossGram(ComplexMatrix::identity(n)),
        ),
        expect(
            "orthonormal: h2 multiplies coordinates by eps_j",
            1e-12,
            ExpectedKind::PartnerMatrix(ComplexMatrix::from_real_diagonal(eigenvalues)),
        ),
        expect(
            "orthonormal: no image vanishes",
            0.0,
            ExpectedKind::ImageCounts {
                kept: n,
                dropped: 0,
            },
        ),
        expect(
            "orthonormal: reverse construction recovers h1",
            1e-10,
            ExpectedKind::ReverseRoundTrip,
        ),
    ];
    for (k, &eps) in eigenvalues.iter().enumerate() {
        let mut e = vec![0.0; n];
        e[k] = 1.0;
        expected.push(expect(
            &format!(
                "orthonormal: image of e{} is the canonical coefficient vector",
                k + 1
            ),
            1e-12,
            ExpectedKind::ImageDirection {
                eigenvalue: eps,
                direction: real_vector(&e),
            },
        ));
    }
    Ok(CatalogEntry {
        name: "orthonormal".into(),
        construction: Construction::Frame(frame),
        x: f.adjoint(),
        h1,
        expected,
    })
}

// ---------------------------------------------------------------------------
// Projection g-frames

fn check_alpha_table(partition: &[Vec<usize>], alphas: &[Vec<f64>]) -> Result<()> {
    let j = partition.len();
    if alphas.len() != j || alphas.iter().any(|row| row.len() != j) {
        return Err(Error::InvalidInput(format!(
            "alpha table must be {j}x{j} for {j} cells"
        )));
    }
    Ok(())
}

/// `Σⱼ row[j] Pⱼ` for the projections of `g`.
fn projection_combination(g: &GFrame, row: &[f64]) -> ComplexMatrix {
    g.members()
        .iter()
        .zip(row)
        .map(|(p, &a)| p.scale(a))
        .fold(ComplexMatrix::zeros(g.dim_h(), g.dim_h()), |acc, t| acc + t)
}

/// `Σⱼ αⱼ⁽ʲ⁾ Pⱼ`: the partner of both projection-based scenarios.
pub fn partition_partner(
    dim: usize,
    partition: &[Vec<usize>],
    alphas: &[Vec<f64>],
) -> Result<ComplexMatrix> {
    check_alpha_table(partition, alphas)?;
    let g = projection_gframe(dim, partition)?;
    let diag: Vec<f64> = (0..alphas.len()).map(|j| alphas[j][j]).collect();
    Ok(projection_combination(&g, &diag))
}

/// Blocks `h₁⁽ᵏ⁾ = Σⱼ alphas[k][j] Pⱼ`.
pub fn partition_h1_blocks(g: &GFrame, alphas: &[Vec<f64>]) -> Vec<ComplexMatrix> {
    alphas
        .iter()
        .map(|row| projection_combination(g, row))
        .collect()
}

pub fn default_partition() -> Vec<Vec<usize>> {
    vec![vec![0], vec![1, 2], vec![3, 4, 5]]
}

pub fn default_alphas() -> Vec<Vec<f64>> {
    vec![
        vec![1.0, -0.5, 2.0],
        vec![0.3, 2.5, -1.5],
        vec![0.7, 1.1, -3.0],
    ]
}

fn partition_expectations(
    name: &str,
    dim: usize,
    partition: &[Vec<usize>],
    alphas: &[Vec<f64>],
    bound: f64,
    h1_dim: usize,
) -> Result<Vec<Expected>> {
    let h2 = partition_partner(dim, partition, alphas)?;
    let mut expected = vec![
        expect(
            &format!("{name}: tight g-frame"),
            1e-12,
            ExpectedKind::Bounds {
                lower: bound,
                upper: bound,
            },
        ),
        expect(
            &format!("{name}: h2 = sum of alpha_j^(j) P_j"),
            1e-12,
            ExpectedKind::PartnerMatrix(h2),
        ),
        expect(
            &format!("{name}: only diagonal-block eigenvectors survive"),
            0.0,
            ExpectedKind::ImageCounts {
                kept: dim,
                dropped: h1_dim - dim,
            },
        ),
    ];
    for (j, cell) in partition.iter().enumerate() {
        if let [i] = cell.as_slice() {
            let mut e = vec![0.0; dim];
            e[*i] = 1.0;
            expected.push(expect(
                &format!("{name}: image for block {j} lies in cell {j}"),
                1e-9,
                ExpectedKind::ImageDirection {
                    eigenvalue: alphas[j][j],
                    direction: real_vector(&e),
                },
            ));
        }
    }
    Ok(expected)
}

/// Parseval g-frame of coordinate projections with block-diagonal
/// `h₁ = (Σⱼ αⱼ⁽¹⁾Pⱼ, Σⱼ αⱼ⁽²⁾Pⱼ, …)`; `alphas[k][j] = αⱼ⁽ᵏ⁾`.
pub fn example_projection_partition(
    dim: usize,
    partition: &[Vec<usize>],
    alphas: &[Vec<f64>],
) -> Result<CatalogEntry> {
    check_alpha_table(partition, alphas)?;
    let g = projection_gframe(dim, partition)?;
    let input = gframe_partner_input(&g, &partition_h1_blocks(&g, alphas))?;
    let h1_dim = input.dim1();
    Ok(CatalogEntry {
        name: "proj-partition".into(),
        expected: partition_expectations("proj-partition", dim, partition, alphas, 1.0, h1_dim)?,
        construction: Construction::GFrame(g),
        x: input.x().clone(),
        h1: input.h1().clone(),
    })
}

/// Members `V Pⱼ` with `V` the analysis operator of
/// [`multiplicity_frame`]`(dim)`, and blocks `V (Σⱼ αⱼ⁽ᵏ⁾Pⱼ) V†`. The
/// partner coincides with [`example_projection_partition`]'s.
pub fn example_composed(
    dim: usize,
    partition: &[Vec<usize>],
    alphas: &[Vec<f64>],
) -> Result<CatalogEntry> {
    check_alpha_table(partition, alphas)?;
    let tol = Tolerances::default();
    let v = crate::frames::analysis_operator(&multiplicity_frame(dim)?);
    let base = projection_gframe(dim, partition)?;
    let g = composed_gframe(&v, &base, &tol)?;
    let vd = v.adjoint();
    let blocks: Vec<ComplexMatrix> = partition_h1_blocks(&base, alphas)
        .iter()
        .map(|b| &(&v * b) * &vd)
        .collect();
    let input = gframe_partner_input(&g, &blocks)?;
    let h1_dim = input.dim1();
    Ok(CatalogEntry {
        name: "composed".into(),
        expected: partition_expectations("composed", dim, partition, alphas, 1.0, h1_dim)?,
        construction: Construction::GFrame(g),
        x: input.x().clone(),
        h1: input.h1().clone(),
    })
}

// ---------------------------------------------------------------------------

pub fn default_multiplicity_coefficients(levels: usize) -> (Vec<f64>, Vec<f64>) {
    let alphas = (1..=levels).map(|j| j as f64).collect();
    let betas = (1..=levels).map(|j| 0.25 / j as f64).collect();
    (alphas, betas)
}

/// The entry registered under `name`, with default parameters.
pub fn by_name(name: &str) -> Result<CatalogEntry> {
    match name {
        "c3-tight" => Ok(example_c3_tight()),
        "dup-basis" => example_duplicated_basis(DEFAULT_PAIRS, 1.5, 0.5),
        "multiplicity" => {
            let (a, b) = default_multiplicity_coefficients(DEFAULT_LEVELS);
            example_multiplicity(&a, &b)
        }
        "orthonormal" => example_orthonormal(&[3.5, -1.0, 0.25, 2.0]),
        "proj-partition" => {
            example_projection_partition(6, &default_partition(), &default_alphas())
        }
        "composed" => example_composed(6, &default_partition(), &default_alphas()),
        other => Err(Error::InvalidInput(format!(
            "unknown scenario '{other}', expected one of {}",
            NAMES.join(", ")
        ))),
    }
}

/// Everything a run produced.
#[derive(Clone, Debug)]
pub struct ScenarioOutcome {
    pub bounds: FrameBounds,
    pub option: Option<FrameOption>,
    pub partner: PartnerResult,
    pub report: SpectralReport,
    pub checks: Vec<Check>,
}

impl ScenarioOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass || !c.gating)
    }
}

/// `‖a − proj_b a‖ / ‖a‖`: zero iff `a` is a multiple of `b`.
pub fn parallel_residual(a: &CVector, b: &CVector) -> f64 {
    let bb = inner(b, b);
    if a.norm() == 0.0 || bb.norm() == 0.0 {
        return f64::INFINITY;
    }
    (a - b * (inner(b, a) / bb)).norm() / a.norm()
}

/// Runs an entry through bounds, option selection, partner construction
/// and eigenpair mapping, then evaluates every expected artifact.
pub fn run(entry: &CatalogEntry, tol: &Tolerances) -> Result<ScenarioOutcome> {
    let (bounds, option) = match &entry.construction {
        Construction::Frame(frame) => (
            frame_bounds(frame, tol)?,
            Some(option_select(frame, tol)?.option),
        ),
        Construction::GFrame(g) => (g_frame_bounds(g, tol)?, None),
    };
    let input = entry.input()?;
    let partner = build_partner(&input, tol)?;
    let report = map_eigenpairs(&input, &partner, tol)?;

    let name = &entry.name;
    let mut checks = vec![
        Check::new(
            "condition alpha: h2 self-adjoint",
            name.as_str(),
            partner.residual_alpha,
            tol.hermiticity_tol,
        ),
        Check::new(
            "condition beta: weak intertwining",
            name.as_str(),
            partner.residual_beta,
            tol.commutator_tol,
        ),
        Check::new(
            "[h2, N2] = 0",
            name.as_str(),
            partner.residual_h2n2,
            tol.commutator_tol,
        ),
        Check::new(
            "spectral inclusion sigma(h2) in sigma(h1)",
            name.as_str(),
            report.inclusion.unmatched_h2.len() as f64,
            0.0,
        ),
    ];

    for e in &entry.expected {
        let loc = e.locator.as_str();
        match &e.kind {
            ExpectedKind::Bounds { lower, upper } => {
                let dev = (bounds.lower - lower)
                    .abs()
                    .max((bounds.upper - upper).abs());
                checks.push(Check::new("frame bounds", loc, dev, e.tolerance));
            }
            ExpectedKind::Option(want) => {
                let ok = option == Some(*want);
                checks.push(
                    Check::new("option selection", loc, if ok { 0.0 } else { 1.0 }, 0.0).with_note(
                        format!(
                            "selected {}",
                            option.map_or("none".into(), |o| o.to_string())
                        ),
                    ),
                );
            }
            ExpectedKind::CrossGram(gram) => {
                let Construction::Frame(frame) = &entry.construction else {
                    return Err(Error::InvalidInput(
                        "Gram expectation on a g-frame entry".into(),
                    ));
                };
                checks.push(Check::new(
                    "Gram matrix FF†",
                    loc,
                    cross_gram(frame).max_abs_diff(gram),
                    e.tolerance,
                ));
            }
            ExpectedKind::PartnerMatrix(h2) => {
                checks.push(Check::new(
                    "partner matrix h2",
                    loc,
                    partner.h2.max_abs_diff(h2),
                    e.tolerance,
                ));
            }
            ExpectedKind::PartnerSpectrum(values) => {
                let got = &report.inclusion.spectrum_h2;
                let mut want = values.clone();
                want.sort_by(|a, b| b.total_cmp(a));
                let dev = if got.len() == want.len() {
                    got.iter()
                        .zip(&want)
                        .map(|(a, b)| (a - b).abs())
                        .fold(0.0, f64::max)
                } else {
                    f64::INFINITY
                };
                checks.push(Check::new("spectrum of h2", loc, dev, e.tolerance));
            }
            ExpectedKind::ImageDirection {
                eigenvalue,
                direction,
            } => {
                let dev = report
                    .kept_eigenvectors
                    .iter()
                    .filter(|k| {
                        (k.eigenvalue - eigenvalue).abs() <= tol.eigen_match_tol.max(e.tolerance)
                    })
                    .map(|k| parallel_residual(&k.image, direction))
                    .fold(f64::INFINITY, f64::min);
                checks.push(Check::new(
                    format!("image direction for eigenvalue {eigenvalue}"),
                    loc,
                    dev,
                    e.tolerance,
                ));
            }
            ExpectedKind::ImageCounts { kept, dropped } => {
                let got = (
                    report.kept_eigenvectors.len(),
                    report.dropped_eigenvectors.len(),
                );
                let off = got.0.abs_diff(*kept) + got.1.abs_diff(*dropped);
                checks.push(
                    Check::new("kept / dropped eigenvector images", loc, off as f64, 0.0)
                        .with_note(format!("kept {}, dropped {}", got.0, got.1)),
                );
            }
            ExpectedKind::H1Contains(values) => {
                let inc = match_spectra(&report.inclusion.spectrum_h1, values, e.tolerance);
                checks.push(Check::new(
                    "sigma(h1) contains listed values",
                    loc,
                    inc.unmatched_h2.len() as f64,
                    0.0,
                ));
            }
            ExpectedKind::H1Audit(published) => {
                let computed = &report.inclusion.spectrum_h1;
                let inc = match_spectra(computed, published, e.tolerance);
                let mut note = format!("computed sigma(h1) = {computed:?}");
                if !inc.unmatched_h2.is_empty() {
                    note.push_str(&format!(
                        "; published values without a match: {:?}",
                        inc.unmatched_h2
                    ));
                }
                checks.push(
                    Check::new(
                        "published sigma(h1) audit",
                        loc,
                        inc.unmatched_h2.len() as f64,
                        0.0,
                    )
                    .informational()
                    .with_note(note),
                );
            }
            ExpectedKind::ReverseRoundTrip => {
                let back = build_reverse_partner(&partner.h2, &entry.x, tol)?;
                checks.push(Check::new(
                    "reverse construction recovers h1",
                    loc,
                    back.max_abs_diff(&entry.h1),
                    e.tolerance,
                ));
            }
        }
    }

    Ok(ScenarioOutcome {
        bounds,
        option,
        partner,
        report,
        checks,
    })
}

/// `σ(h₁)` of an entry, descending.
pub fn h1_spectrum(entry: &CatalogEntry, tol: &Tolerances) -> Result<Vec<f64>> {
    Ok(hermitian_eig(&entry.h1, tol)?.eigenvalues)
}
