//! Jacobi-type QR and SVD over a *-algebra.

mod beta;
mod decency;
mod givens;
mod qr;
mod report;
mod svd;

pub use beta::{beta_basis, beta_division, beta_prime, Beta};
pub use decency::{decency_check, DecencyReport};
pub use givens::{
    apply_givens_left, apply_givens_right, apply_shift_left, apply_shift_right, givens_matrix,
    shift_matrix, GivensParams,
};
pub use qr::{aqr, QrOptions, DEFAULT_MAX_SWEEPS};
pub use report::{BlockStats, DecompReport, Factors, TracePoint};
pub use svd::{asvd, SvdOptions, DEFAULT_MAX_QRD_CALLS};

#[cfg(test)]
mod tests;
