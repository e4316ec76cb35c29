use std::time::Duration;

use crate::algebra::{AlgMatrix, NormChoice};
use crate::error::Result;

#[derive(Clone, Debug)]
pub enum Factors {
    Qr {
        q: AlgMatrix,
        r: AlgMatrix,
    },
    Svd {
        u: AlgMatrix,
        d: AlgMatrix,
        v: AlgMatrix,
    },
}

/// `Re(r₁₁)²` and `‖R‖²_F` after one step of the QR iteration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TracePoint {
    pub re_r11_sq: f64,
    pub frob_sq: f64,
}

/// Per-block counters of a representation-route decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockStats {
    pub field: &'static str,
    pub size: usize,
    pub rotations: usize,
    pub sweeps: usize,
    pub qrd_calls: usize,
    pub residual: f64,
}

/// Factors of a decomposition together with iteration counters.
#[derive(Clone, Debug)]
pub struct DecompReport {
    pub factors: Factors,
    pub rotations: usize,
    pub sweeps: usize,
    /// QR decompositions run by the SVD iteration (0 for QR).
    pub qrd_calls: usize,
    /// Largest below-diagonal (QR) or off-diagonal (SVD) entry norm of the
    /// middle factor, in `residual_norm`.
    pub residual: f64,
    pub residual_norm: NormChoice,
    pub elapsed: Duration,
    /// Inner iterations abandoned because a rotation would make no progress.
    pub stalls: usize,
    /// Coefficients dropped by trimming.
    pub trimmed: usize,
    pub warnings: Vec<String>,
    /// Informational diagnostics.
    pub notes: Vec<String>,
    pub trace: Vec<TracePoint>,
    pub blocks: Vec<BlockStats>,
}

impl DecompReport {
    pub fn q(&self) -> Option<&AlgMatrix> {
        match &self.factors {
            Factors::Qr { q, .. } => Some(q),
            _ => None,
        }
    }

    pub fn r(&self) -> Option<&AlgMatrix> {
        match &self.factors {
            Factors::Qr { r, .. } => Some(r),
            _ => None,
        }
    }

    pub fn u(&self) -> Option<&AlgMatrix> {
        match &self.factors {
            Factors::Svd { u, .. } => Some(u),
            _ => None,
        }
    }

    pub fn d(&self) -> Option<&AlgMatrix> {
        match &self.factors {
            Factors::Svd { d, .. } => Some(d),
            _ => None,
        }
    }

    pub fn v(&self) -> Option<&AlgMatrix> {
        match &self.factors {
            Factors::Svd { v, .. } => Some(v),
            _ => None,
        }
    }

    /// Product of the factors, `Q·R` or `U·D·V^H`.
    pub fn reconstruct(&self) -> Result<AlgMatrix> {
        match &self.factors {
            Factors::Qr { q, r } => q.matmul(r),
            Factors::Svd { u, d, v } => u.matmul(d)?.matmul(&v.herm()),
        }
    }

    /// Product with the middle factor truncated to upper-triangular /
    /// diagonal form first.
    pub fn reconstruct_truncated(&self) -> Result<AlgMatrix> {
        match &self.factors {
            Factors::Qr { q, r } => q.matmul(&r.upper_part()),
            Factors::Svd { u, d, v } => u.matmul(&d.diagonal_part())?.matmul(&v.herm()),
        }
    }

    /// `‖A − Q R‖_F` (or `‖A − U D V^H‖_F`).
    pub fn reconstruction_error(&self, a: &AlgMatrix) -> Result<f64> {
        Ok(a.sub(&self.reconstruct()?)?.frob())
    }

    pub fn truncated_reconstruction_error(&self, a: &AlgMatrix) -> Result<f64> {
        Ok(a.sub(&self.reconstruct_truncated()?)?.frob())
    }

    /// Largest `‖X^H X − I‖_F` over the unitary factors.
    pub fn unitarity_error(&self) -> Result<f64> {
        match &self.factors {
            Factors::Qr { q, .. } => q.unitarity_error(),
            Factors::Svd { u, v, .. } => Ok(u.unitarity_error()?.max(v.unitarity_error()?)),
        }
    }
}
