//! Seeded inputs shared by the benchmarks.

use algdecomp::algebra::AlgMatrix;
use algdecomp::catalog;
use algdecomp::random::{gaussian_matrix, rng_from_seed};

/// Gaussian `Cl(4,1)^{m×n}` matrix.
pub fn cl41(m: usize, n: usize, seed: u64) -> AlgMatrix {
    let spec = catalog::clifford(4, 1).expect("valid signature");
    gaussian_matrix(&spec, m, n, &mut rng_from_seed(seed), 0).expect("positive shape")
}

/// Gaussian Laurent matrix in one variable, exponents in `[-window, window]`.
pub fn laurent(m: usize, n: usize, window: i32, seed: u64) -> AlgMatrix {
    let spec = catalog::laurent(1).expect("one variable");
    gaussian_matrix(&spec, m, n, &mut rng_from_seed(seed), window).expect("positive shape")
}
