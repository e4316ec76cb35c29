use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Canonical identifier of a basis element.
///
/// Finite algebras use a single component holding the position of the basis
/// element in canonical order. Laurent-type algebras use the exponent vector.
/// Labels compare lexicographically, which is the canonical order used for
/// tie-breaking.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisLabel(SmallVec<[i32; 4]>);

impl BasisLabel {
    pub fn index(i: usize) -> Self {
        BasisLabel(SmallVec::from_slice(&[i as i32]))
    }

    pub fn exponents(e: &[i32]) -> Self {
        BasisLabel(SmallVec::from_slice(e))
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }

    /// Position in a finite algebra's basis.
    pub fn as_index(&self) -> usize {
        debug_assert_eq!(self.0.len(), 1);
        self.0[0] as usize
    }
}

impl fmt::Debug for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Sign of a signed-monomial product.
pub type Sign = i8;

/// Product rule of a signed-monomial basis algebra: the product of two basis
/// elements is always plus or minus a single basis element.
///
/// Implementors provide the group-like inverse of every basis element; the
/// involution of the algebra is always `b̄ = b⁻¹`.
pub trait MonomialRule: Send + Sync + fmt::Debug {
    /// `None` for a countably infinite basis.
    fn dim(&self) -> Option<usize>;
    fn unit(&self) -> BasisLabel;
    fn mul(&self, a: &BasisLabel, b: &BasisLabel) -> (Sign, BasisLabel);
    /// Returns `(s, c)` such that `a · (s c) = 1`.
    fn inverse(&self, a: &BasisLabel) -> (Sign, BasisLabel);
    fn contains(&self, a: &BasisLabel) -> bool;
    fn render(&self, a: &BasisLabel) -> String;
    fn parse(&self, s: &str) -> Option<BasisLabel>;
    /// Basis element at a canonical position (finite algebras only).
    fn label_at(&self, index: usize) -> Option<BasisLabel> {
        match self.dim() {
            Some(d) if index < d => Some(BasisLabel::index(index)),
            _ => None,
        }
    }
    fn index_of(&self, a: &BasisLabel) -> Option<usize> {
        match self.dim() {
            Some(_) if self.contains(a) => Some(a.as_index()),
            _ => None,
        }
    }
}

/// The three real division algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Real,
    Complex,
    Quaternion,
}

impl Field {
    pub fn real_dim(self) -> usize {
        match self {
            Field::Real => 1,
            Field::Complex => 2,
            Field::Quaternion => 4,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Field::Real => "R",
            Field::Complex => "C",
            Field::Quaternion => "H",
        }
    }
}

/// Structural family an algebra was built from. Used to pick β defaults and
/// to look up shipped representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecKind {
    Clifford { p: usize, q: usize },
    Laurent { vars: usize },
    Cyclic { vars: usize, modulus: usize },
    TwistedGroup,
    Tensor,
    DirectSum,
}

struct SpecInner {
    descriptor: String,
    kind: SpecKind,
    rule: Box<dyn MonomialRule>,
}

/// Immutable, shareable description of a signed-monomial basis *-algebra.
#[derive(Clone)]
pub struct AlgebraSpec(Arc<SpecInner>);

impl fmt::Debug for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraSpec")
            .field("descriptor", &self.0.descriptor)
            .field("dim", &self.dim())
            .finish()
    }
}

impl PartialEq for AlgebraSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.descriptor == other.0.descriptor
    }
}

impl AlgebraSpec {
    /// Wraps a product rule. The unit must act as identity and every basis
    /// element must be invertible through the rule's `inverse`; for finite
    /// algebras up to 4096 elements this is checked exhaustively.
    pub fn new(
        descriptor: impl Into<String>,
        kind: SpecKind,
        rule: Box<dyn MonomialRule>,
    ) -> Result<Self> {
        let spec = AlgebraSpec(Arc::new(SpecInner {
            descriptor: descriptor.into(),
            kind,
            rule,
        }));
        if let Some(d) = spec.dim() {
            if d == 0 {
                return Err(Error::Construction("empty basis".into()));
            }
            if d <= 4096 {
                let unit = spec.unit();
                for label in spec.basis() {
                    if spec.mul_labels(&unit, &label) != (1, label.clone())
                        || spec.mul_labels(&label, &unit) != (1, label.clone())
                    {
                        return Err(Error::Construction(format!(
                            "unit does not act as identity on {}",
                            spec.render(&label)
                        )));
                    }
                    let (s, inv) = spec.rule().inverse(&label);
                    let (t, prod) = spec.mul_labels(&label, &inv);
                    if prod != unit || s * t != 1 {
                        return Err(Error::Construction(format!(
                            "{} has no signed-monomial inverse",
                            spec.render(&label)
                        )));
                    }
                }
            }
        }
        Ok(spec)
    }

    pub fn descriptor(&self) -> &str {
        &self.0.descriptor
    }

    pub fn kind(&self) -> &SpecKind {
        &self.0.kind
    }

    pub(crate) fn rule(&self) -> &dyn MonomialRule {
        self.0.rule.as_ref()
    }

    /// Same algebra under a different descriptor.
    pub(crate) fn renamed(self, descriptor: &str, kind: SpecKind) -> Self {
        match Arc::try_unwrap(self.0) {
            Ok(inner) => AlgebraSpec(Arc::new(SpecInner {
                descriptor: descriptor.to_string(),
                kind,
                rule: inner.rule,
            })),
            Err(arc) => {
                // Shared: wrap.
                AlgebraSpec(Arc::new(SpecInner {
                    descriptor: descriptor.to_string(),
                    kind,
                    rule: Box::new(Shared(AlgebraSpec(arc))),
                }))
            }
        }
    }

    pub fn dim(&self) -> Option<usize> {
        self.0.rule.dim()
    }

    pub fn finite_dim(&self) -> Result<usize> {
        self.dim().ok_or_else(|| {
            Error::Unsupported(format!("{} is infinite-dimensional", self.descriptor()))
        })
    }

    pub fn unit(&self) -> BasisLabel {
        self.0.rule.unit()
    }

    pub fn mul_labels(&self, a: &BasisLabel, b: &BasisLabel) -> (Sign, BasisLabel) {
        self.0.rule.mul(a, b)
    }

    /// Involution on a basis element: `b̄ = b⁻¹`.
    pub fn conj_label(&self, a: &BasisLabel) -> (Sign, BasisLabel) {
        self.0.rule.inverse(a)
    }

    pub fn contains(&self, a: &BasisLabel) -> bool {
        self.0.rule.contains(a)
    }

    pub fn render(&self, a: &BasisLabel) -> String {
        self.0.rule.render(a)
    }

    pub fn parse_label(&self, s: &str) -> Result<BasisLabel> {
        self.0
            .rule
            .parse(s.trim())
            .filter(|l| self.contains(l))
            .ok_or_else(|| Error::Parse {
                what: "basis label",
                input: s.to_string(),
            })
    }

    pub fn label_at(&self, index: usize) -> Option<BasisLabel> {
        self.0.rule.label_at(index)
    }

    pub fn index_of(&self, a: &BasisLabel) -> Option<usize> {
        self.0.rule.index_of(a)
    }

    /// Basis labels in canonical order. Empty for infinite algebras.
    pub fn basis(&self) -> Vec<BasisLabel> {
        match self.dim() {
            Some(d) => (0..d).filter_map(|i| self.label_at(i)).collect(),
            None => Vec::new(),
        }
    }

    /// `Some` when the algebra is R, C or H in its standard basis.
    pub fn division_field(&self) -> Option<Field> {
        match self.kind() {
            SpecKind::Clifford { p: 0, q: 0 } => Some(Field::Real),
            SpecKind::Clifford { p: 0, q: 1 } => Some(Field::Complex),
            SpecKind::Clifford { p: 0, q: 2 } => Some(Field::Quaternion),
            _ => None,
        }
    }
}

#[derive(Debug)]
struct Shared(AlgebraSpec);

impl MonomialRule for Shared {
    fn dim(&self) -> Option<usize> {
        self.0.dim()
    }
    fn unit(&self) -> BasisLabel {
        self.0.unit()
    }
    fn mul(&self, a: &BasisLabel, b: &BasisLabel) -> (Sign, BasisLabel) {
        self.0.mul_labels(a, b)
    }
    fn inverse(&self, a: &BasisLabel) -> (Sign, BasisLabel) {
        self.0.conj_label(a)
    }
    fn contains(&self, a: &BasisLabel) -> bool {
        self.0.contains(a)
    }
    fn render(&self, a: &BasisLabel) -> String {
        self.0.render(a)
    }
    fn parse(&self, s: &str) -> Option<BasisLabel> {
        self.0.rule().parse(s)
    }
    fn label_at(&self, index: usize) -> Option<BasisLabel> {
        self.0.label_at(index)
    }
    fn index_of(&self, a: &BasisLabel) -> Option<usize> {
        self.0.index_of(a)
    }
}
