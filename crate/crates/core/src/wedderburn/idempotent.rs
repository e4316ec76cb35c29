use crate::algebra::{AlgMatrix, AlgebraSpec, Element, NormChoice};
use crate::error::{Error, Result};

const TOL: f64 = 1e-12;

/// Orthogonal self-adjoint idempotents `1_k` summing to 1.
#[derive(Clone, Debug)]
pub struct IdempotentSet {
    spec: AlgebraSpec,
    elements: Vec<Element>,
}

impl IdempotentSet {
    /// Checks `1_k² = 1_k = conj(1_k)`, `1_k·1_ℓ = 0` and `Σ 1_k = 1` to 1e-12.
    pub fn new(spec: &AlgebraSpec, elements: Vec<Element>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::usage("an idempotent set needs at least one element"));
        }
        if let Some(e) = elements.iter().find(|e| e.spec() != spec) {
            return Err(Error::SpecMismatch {
                left: spec.descriptor().to_string(),
                right: e.spec().descriptor().to_string(),
            });
        }
        let zero = Element::zero(spec);
        let mut sum = Element::zero(spec);
        for (k, a) in elements.iter().enumerate() {
            if !a.approx_eq(&a.conj(), TOL, NormChoice::Inf) {
                return Err(Error::usage(format!("idempotent {k} is not self-adjoint")));
            }
            for (l, b) in elements.iter().enumerate() {
                let p = a * b;
                let target = if k == l { a } else { &zero };
                if !p.approx_eq(target, TOL, NormChoice::Inf) {
                    return Err(Error::usage(format!(
                        "idempotents {k} and {l} violate 1_k·1_l = δ_kl·1_k"
                    )));
                }
            }
            sum = &sum + a;
        }
        if !sum.approx_eq(&Element::one(spec), TOL, NormChoice::Inf) {
            return Err(Error::usage("idempotents do not sum to 1"));
        }
        Ok(IdempotentSet {
            spec: spec.clone(),
            elements,
        })
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// `parts_k = A·1_k`.
pub fn idempotent_split(a: &AlgMatrix, idem: &IdempotentSet) -> Result<Vec<AlgMatrix>> {
    if a.spec() != idem.spec() {
        return Err(Error::SpecMismatch {
            left: a.spec().descriptor().to_string(),
            right: idem.spec().descriptor().to_string(),
        });
    }
    idem.elements()
        .iter()
        .map(|e| a.mul_right_elem(e))
        .collect()
}

/// `Σ parts_k`.
pub fn idempotent_join(parts: &[AlgMatrix], idem: &IdempotentSet) -> Result<AlgMatrix> {
    if parts.len() != idem.len() {
        return Err(Error::usage(format!(
            "{} parts for {} idempotents",
            parts.len(),
            idem.len()
        )));
    }
    let mut acc = parts[0].clone();
    for p in &parts[1..] {
        acc = acc.add(p)?;
    }
    Ok(acc)
}
