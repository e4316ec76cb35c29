//! Seeded Gaussian test data.
//!
//! All randomness goes through [`Rng`], ChaCha8 seeded with `seed_from_u64`,
//! and [`rand_distr::StandardNormal`], so a given seed produces the same
//! matrices on every platform.

use rand::{Rng as _, SeedableRng};
use rand_distr::StandardNormal;

use crate::algebra::{AlgMatrix, AlgebraSpec, BasisLabel, Element, SpecKind};
use crate::error::Result;

pub type Rng = rand_chacha::ChaCha8Rng;

/// Default exponent window for random Laurent entries.
pub const DEFAULT_LAURENT_WINDOW: i32 = 2;

pub fn rng_from_seed(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}

/// Basis labels a random element is drawn over: the whole basis for finite
/// algebras, exponents in `[-window, window]` per variable for Laurent.
pub fn window_labels(spec: &AlgebraSpec, window: i32) -> Vec<BasisLabel> {
    match spec.kind() {
        SpecKind::Laurent { vars } => {
            let side = (2 * window + 1) as usize;
            let total = side.pow(*vars as u32);
            (0..total)
                .map(|mut n| {
                    let mut e = vec![0i32; *vars];
                    for slot in e.iter_mut().rev() {
                        *slot = (n % side) as i32 - window;
                        n /= side;
                    }
                    BasisLabel::exponents(&e)
                })
                .collect()
        }
        _ => spec.basis(),
    }
}

pub fn gaussian_element(spec: &AlgebraSpec, rng: &mut Rng, window: i32) -> Element {
    let terms = window_labels(spec, window)
        .into_iter()
        .map(|l| (l, rng.sample::<f64, _>(StandardNormal)))
        .collect::<Vec<_>>();
    Element::from_terms(spec, terms).expect("window labels belong to the algebra")
}

pub fn gaussian_matrix(
    spec: &AlgebraSpec,
    rows: usize,
    cols: usize,
    rng: &mut Rng,
    window: i32,
) -> Result<AlgMatrix> {
    AlgMatrix::from_fn(spec, rows, cols, |_, _| gaussian_element(spec, rng, window))
}

/// Uniformly chosen basis element from the sampling window.
pub fn random_basis_element(spec: &AlgebraSpec, rng: &mut Rng, window: i32) -> Element {
    let labels = window_labels(spec, window);
    let k = rng.random_range(0..labels.len());
    Element::basis(spec, labels[k].clone())
}
