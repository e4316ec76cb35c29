//! Signed-monomial basis *-algebras, their elements, and matrices over them.

mod checks;
mod element;
mod matrix;
mod spec;

pub use checks::{run_invariant_suite, CheckOutcome};
pub use element::{conj, mul, re, rmr, Element, NormChoice};
pub use matrix::{frob, herm, is_unitary, matmul, supnorm, AlgMatrix};
pub use spec::{AlgebraSpec, BasisLabel, Field, MonomialRule, Sign, SpecKind};

/// Trace-based real part, `tr(rmr(a)) / d`. Agrees with [`Element::re`] on
/// every unitary basis; kept as an independent route for testing.
pub fn re_by_trace(a: &Element) -> crate::Result<f64> {
    let m = a.rmr()?;
    Ok(m.trace() / m.nrows() as f64)
}

#[cfg(test)]
mod tests;
