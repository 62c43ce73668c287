//! g-frames: families of operators `Λⱼ: ℂⁿ → ℂᵐ` with
//! `A𝟙 ≤ Σ Λⱼ†Λⱼ ≤ B𝟙`.
//!
//! The analysis operator sends `f` to the block vector `(Λⱼ f)ⱼ` in the
//! block space Ĥ = (ℂᵐ)ᴶ with `⟨f̲, g̲⟩ = Σ ⟨fⱼ, gⱼ⟩`. Stacking the members
//! vertically gives the same map as a single `Jm × n` matrix, which is what
//! the partner construction consumes.

use crate::error::{Error, Result};
use crate::frames::{positive_bounds, FrameBounds};
use crate::intertwining::{build_partner, PartnerInput, PartnerResult};
use crate::numerics::{inner, strict_inverse, CVector, ComplexMatrix, Tolerances, C64};

#[derive(Clone, Debug, PartialEq)]
pub struct GFrame {
    dim_h: usize,
    dim_ht: usize,
    members: Vec<ComplexMatrix>,
}

impl GFrame {
    /// Members must share one `m × n` shape and not all vanish.
    pub fn new(members: Vec<ComplexMatrix>) -> Result<Self> {
        let first = members
            .first()
            .ok_or_else(|| Error::InvalidInput("g-frame has no members".into()))?;
        let (dim_ht, dim_h) = first.shape();
        if let Some((j, m)) = members
            .iter()
            .enumerate()
            .find(|(_, m)| m.shape() != (dim_ht, dim_h))
        {
            return Err(Error::DimensionMismatch(format!(
                "member {j} is {}x{}, expected {dim_ht}x{dim_h}",
                m.rows(),
                m.cols()
            )));
        }
        if members.iter().all(|m| m.norm() == 0.0) {
            return Err(Error::InvalidInput("every g-frame member is zero".into()));
        }
        Ok(Self {
            dim_h,
            dim_ht,
            members,
        })
    }

    /// Domain dimension n.
    pub fn dim_h(&self) -> usize {
        self.dim_h
    }

    /// Codomain dimension m of each member.
    pub fn dim_ht(&self) -> usize {
        self.dim_ht
    }

    pub fn members(&self) -> &[ComplexMatrix] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// An element of the block space Ĥ.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockVector {
    blocks: Vec<CVector>,
}

impl BlockVector {
    pub fn new(blocks: Vec<CVector>) -> Result<Self> {
        let first = blocks
            .first()
            .ok_or_else(|| Error::InvalidInput("block vector has no blocks".into()))?;
        if blocks.iter().any(|b| b.len() != first.len()) {
            return Err(Error::DimensionMismatch("blocks differ in length".into()));
        }
        Ok(Self { blocks })
    }

    /// Splits a flat vector of length `J·m` into `J` blocks of length `m`.
    pub fn from_flat(flat: &CVector, block_len: usize) -> Result<Self> {
        if block_len == 0 || !flat.len().is_multiple_of(block_len) {
            return Err(Error::DimensionMismatch(format!(
                "cannot split length {} into blocks of {block_len}",
                flat.len()
            )));
        }
        Self::new(
            flat.as_slice()
                .chunks(block_len)
                .map(CVector::from_column_slice)
                .collect(),
        )
    }

    pub fn blocks(&self) -> &[CVector] {
        &self.blocks
    }

    pub fn flatten(&self) -> CVector {
        CVector::from_iterator(
            self.blocks.iter().map(|b| b.len()).sum(),
            self.blocks.iter().flat_map(|b| b.iter().copied()),
        )
    }

    /// `Σⱼ ‖fⱼ‖²`.
    pub fn norm_squared(&self) -> f64 {
        self.blocks.iter().map(|b| b.norm_squared()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// `Σⱼ ⟨fⱼ, gⱼ⟩`.
    pub fn inner(&self, other: &BlockVector) -> Result<C64> {
        if self.blocks.len() != other.blocks.len() || self.blocks[0].len() != other.blocks[0].len()
        {
            return Err(Error::DimensionMismatch(
                "block vectors differ in shape".into(),
            ));
        }
        Ok(self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| inner(a, b))
            .sum())
    }
}

/// `(F_g f)ⱼ = Λⱼ f`.
pub fn g_analysis(g: &GFrame, f: &CVector) -> Result<BlockVector> {
    if f.len() != g.dim_h() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for a g-frame on dimension {}",
            f.len(),
            g.dim_h()
        )));
    }
    BlockVector::new(g.members().iter().map(|m| m.apply(f)).collect())
}

/// `F_g† f̲ = Σⱼ Λⱼ† fⱼ`.
pub fn g_synthesis(g: &GFrame, bv: &BlockVector) -> Result<CVector> {
    if bv.blocks().len() != g.len() || bv.blocks()[0].len() != g.dim_ht() {
        return Err(Error::DimensionMismatch(format!(
            "block vector with {} blocks of length {} for {} members mapping into dimension {}",
            bv.blocks().len(),
            bv.blocks()[0].len(),
            g.len(),
            g.dim_ht()
        )));
    }
    let mut out = CVector::zeros(g.dim_h());
    for (m, b) in g.members().iter().zip(bv.blocks()) {
        out += m.adjoint().apply(b);
    }
    Ok(out)
}

/// `S_g = Σⱼ Λⱼ†Λⱼ`.
pub fn g_frame_operator(g: &GFrame) -> ComplexMatrix {
    g.members()
        .iter()
        .map(|m| &m.adjoint() * m)
        .fold(ComplexMatrix::zeros(g.dim_h(), g.dim_h()), |acc, t| acc + t)
}

pub fn g_frame_bounds(g: &GFrame, tol: &Tolerances) -> Result<FrameBounds> {
    positive_bounds(&g_frame_operator(g), tol)
}

/// Canonical dual `Λ̃ⱼ = Λⱼ S_g⁻¹`.
pub fn g_dual(g: &GFrame, tol: &Tolerances) -> Result<GFrame> {
    g_frame_bounds(g, tol)?;
    let inv = strict_inverse(&g_frame_operator(g), tol)?;
    GFrame::new(g.members().iter().map(|m| m * &inv).collect())
}

/// Both resolutions of the identity applied to `f`:
/// `Σ Λⱼ†Λ̃ⱼ f` and `Σ Λ̃ⱼ†Λⱼ f`.
pub fn g_reconstruct(g: &GFrame, f: &CVector, tol: &Tolerances) -> Result<(CVector, CVector)> {
    let dual = g_dual(g, tol)?;
    let coefficients = g_analysis(g, f)?;
    let dual_coefficients = g_analysis(&dual, f)?;
    Ok((
        g_synthesis(g, &dual_coefficients)?,
        g_synthesis(&dual, &coefficients)?,
    ))
}

/// The members stacked vertically: `F_g` as a `Jm × n` matrix.
pub fn stacked_analysis_matrix(g: &GFrame) -> ComplexMatrix {
    ComplexMatrix::vstack(g.members()).expect("members share a shape")
}

/// Orthogonal projections onto coordinate subspaces, one per cell.
///
/// Cells hold 0-based coordinate indices; they must be non-empty, pairwise
/// disjoint and cover `0..dim`.
pub fn projection_gframe(dim: usize, partition: &[Vec<usize>]) -> Result<GFrame> {
    if dim == 0 {
        return Err(Error::InvalidPartition("dimension must be positive".into()));
    }
    if partition.is_empty() {
        return Err(Error::InvalidPartition("no cells".into()));
    }
    let mut seen = vec![false; dim];
    for (j, cell) in partition.iter().enumerate() {
        if cell.is_empty() {
            return Err(Error::InvalidPartition(format!("cell {j} is empty")));
        }
        for &i in cell {
            if i >= dim {
                return Err(Error::InvalidPartition(format!(
                    "cell {j} contains index {i} outside 0..{dim}"
                )));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPartition(format!("index {i} appears twice")));
            }
        }
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(Error::InvalidPartition(format!("index {i} is not covered")));
    }

    let members = partition
        .iter()
        .map(|cell| {
            let mut diag = vec![0.0; dim];
            for &i in cell {
                diag[i] = 1.0;
            }
            ComplexMatrix::from_real_diagonal(&diag)
        })
        .collect();
    GFrame::new(members)
}

/// The scalar `A` with `V†V = A𝟙`, up to `hermiticity_tol` relative error.
pub fn isometry_scale(v: &ComplexMatrix, tol: &Tolerances) -> Result<f64> {
    let gram = &v.adjoint() * v;
    let n = gram.rows();
    let scale = (0..n).map(|i| gram.get(i, i).re).sum::<f64>() / n as f64;
    let target = ComplexMatrix::identity(n).scale(scale);
    let residual = (&gram - &target).norm();
    let bound = tol.hermiticity_tol * target.norm();
    if scale > 0.0 && residual <= bound {
        Ok(scale)
    } else {
        Err(Error::NotIsometryLike {
            residual,
            scale,
            bound,
        })
    }
}

fn is_orthogonal_projection(p: &ComplexMatrix, tol: &Tolerances) -> bool {
    p.is_square()
        && p.hermiticity_residual() <= tol.hermiticity_tol
        && (&(p * p) - p).norm() <= tol.hermiticity_tol * p.norm().max(1.0)
}

/// Members `Λⱼ = V Pⱼ` for a projection g-frame `{Pⱼ}` and `V†V = A𝟙`.
/// The result is tight with `S_g = A𝟙`.
pub fn composed_gframe(v: &ComplexMatrix, base: &GFrame, tol: &Tolerances) -> Result<GFrame> {
    if v.cols() != base.dim_h() {
        return Err(Error::DimensionMismatch(format!(
            "V has {} columns but the base g-frame acts on dimension {}",
            v.cols(),
            base.dim_h()
        )));
    }
    if base
        .members()
        .iter()
        .any(|p| !is_orthogonal_projection(p, tol))
    {
        return Err(Error::InvalidInput(
            "base g-frame members must be orthogonal projections".into(),
        ));
    }
    isometry_scale(v, tol)?;
    GFrame::new(base.members().iter().map(|p| v * p).collect())
}

/// Grid analog of multiplication by characteristic functions of unit
/// intervals: `num_cells` cells of `points_per_cell` grid points each,
/// member `j` is the 0/1 diagonal projection onto cell `j`.
pub fn grid_characteristic_gframe(num_cells: usize, points_per_cell: usize) -> Result<GFrame> {
    if num_cells == 0 || points_per_cell == 0 {
        return Err(Error::InvalidInput(
            "grid needs at least one cell and one point per cell".into(),
        ));
    }
    let partition: Vec<Vec<usize>> = (0..num_cells)
        .map(|j| (j * points_per_cell..(j + 1) * points_per_cell).collect())
        .collect();
    projection_gframe(num_cells * points_per_cell, &partition)
}

/// Block-diagonal `h₁` on Ĥ paired with `X = F_g`.
pub fn gframe_partner_input(g: &GFrame, h1_blocks: &[ComplexMatrix]) -> Result<PartnerInput> {
    if h1_blocks.len() != g.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} blocks for {} members",
            h1_blocks.len(),
            g.len()
        )));
    }
    if let Some(b) = h1_blocks
        .iter()
        .find(|b| b.shape() != (g.dim_ht(), g.dim_ht()))
    {
        return Err(Error::DimensionMismatch(format!(
            "h1 block is {}x{}, expected {}x{}",
            b.rows(),
            b.cols(),
            g.dim_ht(),
            g.dim_ht()
        )));
    }
    PartnerInput::new(
        ComplexMatrix::block_diagonal(h1_blocks)?,
        stacked_analysis_matrix(g),
    )
}

/// Partner `h₂ = S_g⁻¹ F_g† h₁ F_g` on ℂⁿ for a tight g-frame and a
/// block-diagonal `h₁`.
pub fn gframe_partner(
    g: &GFrame,
    h1_blocks: &[ComplexMatrix],
    tol: &Tolerances,
) -> Result<PartnerResult> {
    let bounds = g_frame_bounds(g, tol)?;
    if !bounds.is_tight(tol) {
        return Err(Error::NotTight {
            lower: bounds.lower,
            upper: bounds.upper,
        });
    }
    build_partner(&gframe_partner_input(g, h1_blocks)?, tol)
}
