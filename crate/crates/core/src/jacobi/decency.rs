use rand::Rng as _;

use super::beta::Beta;
use crate::algebra::{AlgebraSpec, Element, NormChoice};
use crate::error::Result;
use crate::random;

/// Empirical check of the two decency conditions
/// `|Re(conj(β(a)) a)| ≥ ρ‖a‖` and `|Re(conj(β(a)) a)| ≥ |Re(a)|`.
#[derive(Clone, Debug)]
pub struct DecencyReport {
    /// Smallest observed `|Re(conj(β(a)) a)| / ‖a‖`.
    pub rho_empirical: f64,
    /// ρ the (β, norm) pair is known to achieve, when known.
    pub declared_rho: Option<f64>,
    pub pass: bool,
    /// First element violating a condition (or the unitarity of β).
    pub witness: Option<Element>,
    pub samples: usize,
}

const SLACK: f64 = 1e-12;

/// Runs β over every basis element (within the sampling window), then over
/// `samples` Gaussian elements with random sparse supports.
pub fn decency_check(
    beta: &Beta,
    norm: NormChoice,
    spec: &AlgebraSpec,
    samples: usize,
    seed: u64,
) -> Result<DecencyReport> {
    beta.validate(spec)?;
    let declared = beta.declared_rho(norm, spec);
    let threshold = declared.unwrap_or(0.0);
    let mut rng = random::rng_from_seed(seed);

    let basis = random::window_labels(spec, 2);
    let mut candidates: Vec<Element> = basis
        .iter()
        .map(|l| Element::basis(spec, l.clone()))
        .collect();
    let mut produced = 0;
    let mut next_random = |rng: &mut random::Rng| {
        let a = random::gaussian_element(spec, rng, 2);
        // Every other sample keeps a random subset of coefficients.
        if produced % 2 == 1 {
            let keep = a
                .terms()
                .iter()
                .filter(|_| rng.random_bool(0.3))
                .cloned()
                .collect::<Vec<_>>();
            produced += 1;
            Element::from_terms(spec, keep).expect("labels from the algebra")
        } else {
            produced += 1;
            a
        }
    };

    let mut rho = f64::INFINITY;
    let mut witness = None;
    let mut pass = true;
    let total = candidates.len() + samples;
    for n in 0..total {
        let a = if n < candidates.len() {
            std::mem::replace(&mut candidates[n], Element::zero(spec))
        } else {
            next_random(&mut rng)
        };
        if a.is_zero() {
            continue;
        }
        let b = beta.eval_unchecked(&a);
        let aligned = b.conj().mul_unchecked(&a).re().abs();
        let size = a.norm(norm);
        let ratio = aligned / size;
        rho = rho.min(ratio);
        let cond1 = if declared.is_some() {
            ratio >= threshold * (1.0 - SLACK)
        } else {
            ratio > 0.0
        };
        let cond2 = aligned >= a.re().abs() * (1.0 - SLACK);
        let unitary = b.is_unitary(1e-12);
        if !(cond1 && cond2 && unitary) && witness.is_none() {
            pass = false;
            witness = Some(a);
        }
    }
    Ok(DecencyReport {
        rho_empirical: rho,
        declared_rho: declared,
        pass,
        witness,
        samples: total,
    })
}
