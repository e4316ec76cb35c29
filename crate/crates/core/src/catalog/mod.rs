//! Concrete algebras: Clifford algebras, Laurent and cyclic group algebras,
//! twisted group algebras, and the tensor / direct-sum combinators.

mod clifford;
mod combinators;
mod group;
mod laurent;

pub use clifford::{blade_masks, blade_sign, clifford, complex, quat, real, MAX_GENERATORS};
pub use combinators::{direct_sum_pm, tensor};
pub use group::{find_cocycle_violation, twisted_group, FiniteGroup};
pub use laurent::{cyclic, laurent};

use crate::algebra::{AlgebraSpec, SpecKind};
use crate::error::{Error, Result};

/// Quad-quaternions `H ⊗ H` (d = 16).
pub fn quadquat() -> AlgebraSpec {
    tensor(&quat(), &quat())
        .expect("H⊗H")
        .renamed("quadquat", SpecKind::Tensor)
}

/// Biquaternions `H ⊗ C` (d = 8).
pub fn biquat() -> AlgebraSpec {
    tensor(&quat(), &complex())
        .expect("H⊗C")
        .renamed("biquat", SpecKind::Tensor)
}

/// Cl(p,q) rebuilt as the twisted group algebra over `(Z/2Z)^{p+q}`, with
/// group elements indexed by generator bitset.
pub fn clifford_as_twisted_group(p: usize, q: usize) -> Result<AlgebraSpec> {
    let n = p + q;
    let neg = ((1u32 << q) - 1) << p;
    let group = FiniteGroup::elementary_abelian_2(n);
    twisted_group(&format!("twisted-cl({p},{q})"), &group, move |a, b| {
        blade_sign(a as u32, b as u32, neg)
    })
}

fn parse_args(s: &str, name: &str) -> Option<Vec<usize>> {
    let inner = s
        .strip_prefix(name)?
        .trim()
        .strip_prefix('(')?
        .strip_suffix(')')?;
    inner
        .split(',')
        .map(|t| t.trim().parse::<usize>().ok())
        .collect()
}

/// Parses an algebra descriptor: `cl(p,q)`, `laurent(k)`, `cyclic(k,delta)`,
/// `quat`, `complex`, `real`, `quadquat`, `biquat`.
pub fn parse_descriptor(s: &str) -> Result<AlgebraSpec> {
    let t = s.trim().to_ascii_lowercase();
    let bad = || Error::Parse {
        what: "algebra descriptor",
        input: s.to_string(),
    };
    match t.as_str() {
        "real" => return Ok(real()),
        "complex" => return Ok(complex()),
        "quat" => return Ok(quat()),
        "quadquat" => return Ok(quadquat()),
        "biquat" => return Ok(biquat()),
        _ => {}
    }
    if let Some(args) = parse_args(&t, "cl") {
        return match args.as_slice() {
            [p, q] => clifford(*p, *q),
            _ => Err(bad()),
        };
    }
    if let Some(args) = parse_args(&t, "laurent") {
        return match args.as_slice() {
            [k] => laurent(*k),
            _ => Err(bad()),
        };
    }
    if let Some(args) = parse_args(&t, "cyclic") {
        return match args.as_slice() {
            [k, delta] => cyclic(*k, *delta),
            _ => Err(bad()),
        };
    }
    Err(bad())
}

#[cfg(test)]
mod tests;
