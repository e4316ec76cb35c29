use crate::algebra::{AlgebraSpec, BasisLabel, Element, Field, NormChoice};
use crate::error::{Error, Result};

/// Map from an element to a unitary element used to align it with the real
/// axis before a rotation. Every variant maps 0 to 1.
#[derive(Clone, Debug, PartialEq)]
pub enum Beta {
    /// Basis element carrying the largest-magnitude coefficient.
    Basis,
    /// `a / ‖a‖₂`; only for R, C and H.
    Division,
    /// Constant 1. Decent only on R.
    Unit,
    /// `inner(a)` when it does not shrink `|Re(a)|`, else 1.
    Prime(Box<Beta>),
}

impl Beta {
    /// Recommended (β, norm) pair: division normalisation under the two-norm
    /// for R/C/H, basis argmax under the sup-norm otherwise.
    pub fn recommended(spec: &AlgebraSpec) -> (Beta, NormChoice) {
        if spec.division_field().is_some() {
            (Beta::Division, NormChoice::Two)
        } else {
            (Beta::Basis, NormChoice::Inf)
        }
    }

    pub fn validate(&self, spec: &AlgebraSpec) -> Result<()> {
        match self {
            Beta::Division if spec.division_field().is_none() => Err(Error::usage(format!(
                "division β needs R, C or H, not {}",
                spec.descriptor()
            ))),
            Beta::Prime(inner) => inner.validate(spec),
            _ => Ok(()),
        }
    }

    pub fn eval(&self, a: &Element) -> Result<Element> {
        self.validate(a.spec())?;
        Ok(self.eval_unchecked(a))
    }

    pub(crate) fn eval_unchecked(&self, a: &Element) -> Element {
        match self {
            Beta::Basis => beta_basis(a),
            Beta::Division => normalize(a),
            Beta::Unit => Element::one(a.spec()),
            Beta::Prime(inner) => {
                let b = inner.eval_unchecked(a);
                if b.conj().re_mul(a).abs() >= a.re().abs() {
                    b
                } else {
                    Element::one(a.spec())
                }
            }
        }
    }

    /// The ρ for which this β is known to be (norm, ρ)-decent on `spec`, if any.
    pub fn declared_rho(&self, norm: NormChoice, spec: &AlgebraSpec) -> Option<f64> {
        match (self, norm) {
            (Beta::Basis, NormChoice::Inf) => Some(1.0),
            (Beta::Basis, NormChoice::Two) => spec.dim().map(|d| (d as f64).powf(-0.5)),
            (Beta::Division, _) if spec.division_field().is_some() => Some(1.0),
            (Beta::Unit, _) if spec.division_field() == Some(Field::Real) => Some(1.0),
            (Beta::Prime(inner), _) => inner.declared_rho(norm, spec),
            _ => None,
        }
    }

    /// True when a rotation built from this β zeroes its target entry
    /// analytically, so the entry can be set to exactly zero.
    pub(crate) fn annihilates_exactly(&self, spec: &AlgebraSpec) -> bool {
        match spec.division_field() {
            Some(Field::Real) => true,
            Some(_) => matches!(self, Beta::Division),
            None => false,
        }
    }
}

/// `e_J` where `J` indexes the largest `|a_j|`; ties go to the lowest label.
pub fn beta_basis(a: &Element) -> Element {
    let mut best: Option<(&BasisLabel, f64)> = None;
    for (l, c) in a.terms() {
        if best.is_none_or(|(_, m)| c.abs() > m) {
            best = Some((l, c.abs()));
        }
    }
    match best {
        Some((l, _)) => Element::basis(a.spec(), l.clone()),
        None => Element::one(a.spec()),
    }
}

fn normalize(a: &Element) -> Element {
    let n = a.norm2();
    if n == 0.0 {
        Element::one(a.spec())
    } else {
        a.scale(1.0 / n)
    }
}

/// `a / ‖a‖₂` on R, C or H.
pub fn beta_division(a: &Element) -> Result<Element> {
    Beta::Division.eval(a)
}

pub fn beta_prime(inner: Beta) -> Beta {
    Beta::Prime(Box::new(inner))
}
