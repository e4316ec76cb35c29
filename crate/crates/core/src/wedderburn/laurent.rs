use crate::algebra::{AlgMatrix, AlgebraSpec, BasisLabel, Element, SpecKind};
use crate::catalog;
use crate::error::{Error, Result};

/// Largest absolute exponent present in `a`.
pub fn max_abs_exponent(a: &AlgMatrix) -> i32 {
    a.entries()
        .iter()
        .flat_map(|e| e.terms().iter())
        .flat_map(|(l, _)| l.as_slice().iter().map(|x| x.abs()))
        .max()
        .unwrap_or(0)
}

/// Reduces the exponents of a Laurent matrix modulo `delta`, landing in
/// `cyclic(κ, δ)`. Requires `δ` even and `δ > 2·max |exponent|`.
pub fn laurent_embed(a: &AlgMatrix, delta: usize) -> Result<AlgMatrix> {
    let vars = match a.spec().kind() {
        SpecKind::Laurent { vars } => *vars,
        _ => {
            return Err(Error::usage(format!(
                "laurent_embed needs a Laurent matrix, got {}",
                a.spec().descriptor()
            )))
        }
    };
    let need = 2 * max_abs_exponent(a) as usize + 1;
    let min_even = need + need % 2;
    if delta < need || !delta.is_multiple_of(2) {
        return Err(Error::usage(format!(
            "modulus {delta} is too small or odd: the data needs an even modulus of at least {min_even}"
        )));
    }
    let target = catalog::cyclic(vars, delta)?;
    let d = delta as i32;
    convert(a, &target, |e| e.rem_euclid(d))
}

/// Maps a `cyclic(κ, δ)` matrix back to Laurent polynomials with exponents
/// in `(−δ/2, δ/2]`.
pub fn laurent_unembed(a: &AlgMatrix) -> Result<AlgMatrix> {
    let (vars, modulus) = match a.spec().kind() {
        SpecKind::Cyclic { vars, modulus } => (*vars, *modulus as i32),
        _ => {
            return Err(Error::usage(format!(
                "laurent_unembed needs a cyclic matrix, got {}",
                a.spec().descriptor()
            )))
        }
    };
    let target = catalog::laurent(vars)?;
    convert(
        a,
        &target,
        |e| if e > modulus / 2 { e - modulus } else { e },
    )
}

fn convert(a: &AlgMatrix, target: &AlgebraSpec, map: impl Fn(i32) -> i32) -> Result<AlgMatrix> {
    let entries = a
        .entries()
        .iter()
        .map(|e| {
            Element::from_terms(
                target,
                e.terms().iter().map(|(l, c)| {
                    let ex: Vec<i32> = l.as_slice().iter().map(|&x| map(x)).collect();
                    (BasisLabel::exponents(&ex), *c)
                }),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    AlgMatrix::from_rows(target, a.rows(), a.cols(), entries)
}
