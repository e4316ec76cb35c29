//! QR and singular value decompositions of matrices over real *-algebras
//! with a signed-monomial basis.
//!
//! Two engines are provided. [`jacobi`] works directly on algebra-valued
//! matrices with A-Givens rotations. [`wedderburn`] maps a matrix through a
//! verified block representation onto real, complex or quaternion matrices,
//! decomposes the blocks and maps the factors back.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod jacobi;
pub mod random;
pub mod wedderburn;

pub use algebra::{AlgMatrix, AlgebraSpec, BasisLabel, Element, Field, NormChoice, SpecKind};
pub use error::{Error, Result};
pub use jacobi::{aqr, asvd, Beta, DecompReport, QrOptions, SvdOptions};
