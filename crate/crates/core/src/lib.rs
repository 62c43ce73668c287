//! Partner Hamiltonians from frames and g-frames.
//!
//! Given a Hermitian `h₁` and an intertwiner `X`, [`intertwining`] builds
//! `h₂ = N₂⁻¹X†h₁X` and maps eigenpairs of `h₁` into eigenpairs of `h₂`.
//! [`frames`] and [`gframes`] supply the intertwiners; [`catalog`] holds
//! reproducible worked scenarios.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod frames;
pub mod gframes;
pub mod intertwining;
pub mod numerics;

pub use error::{Error, Result};
pub use frames::{Frame, FrameBounds};
pub use gframes::{BlockVector, GFrame};
pub use intertwining::{FrameOption, PartnerInput, PartnerResult, SpectralReport};
pub use numerics::{CVector, ComplexMatrix, Tolerances, C64};
