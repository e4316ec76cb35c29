use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;

use super::spec::{AlgebraSpec, BasisLabel, SpecKind};
use crate::error::{Error, Result};

/// Norm on algebra elements, taken over the coefficient vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum NormChoice {
    #[default]
    Inf,
    Two,
}

impl NormChoice {
    pub fn of(self, a: &Element) -> f64 {
        match self {
            NormChoice::Inf => a.norm_inf(),
            NormChoice::Two => a.norm2(),
        }
    }
}

/// One algebra entry: a finitely supported map from basis label to real
/// coefficient, stored sorted by label with zero coefficients dropped.
#[derive(Clone)]
pub struct Element {
    spec: AlgebraSpec,
    terms: Vec<(BasisLabel, f64)>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.terms == other.terms
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (label, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " {} ", if *c < 0.0 { '-' } else { '+' })?;
            } else if *c < 0.0 {
                write!(f, "-")?;
            }
            write!(f, "{}*{}", c.abs(), self.spec.render(label))?;
        }
        Ok(())
    }
}

fn canonicalize(mut terms: Vec<(BasisLabel, f64)>) -> Vec<(BasisLabel, f64)> {
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<(BasisLabel, f64)> = Vec::with_capacity(terms.len());
    for (label, c) in terms {
        match out.last_mut() {
            Some(last) if last.0 == label => last.1 += c,
            _ => out.push((label, c)),
        }
    }
    out.retain(|(_, c)| *c != 0.0);
    out
}

/// Laurent product accumulated on the dense exponent box of the result.
/// `None` when the box is much larger than the number of term pairs.
fn laurent_dense_product(
    a: &[(BasisLabel, f64)],
    b: &[(BasisLabel, f64)],
) -> Option<Vec<(BasisLabel, f64)>> {
    let vars = a.first()?.0.as_slice().len();
    let bounds = |t: &[(BasisLabel, f64)]| {
        let mut lo = vec![i32::MAX; vars];
        let mut hi = vec![i32::MIN; vars];
        for (l, _) in t {
            for (v, e) in l.as_slice().iter().enumerate() {
                lo[v] = lo[v].min(*e);
                hi[v] = hi[v].max(*e);
            }
        }
        (lo, hi)
    };
    let (alo, ahi) = bounds(a);
    let (blo, bhi) = bounds(b);
    let lo: Vec<i64> = alo
        .iter()
        .zip(&blo)
        .map(|(x, y)| i64::from(*x) + i64::from(*y))
        .collect();
    let extent: Vec<usize> = (0..vars)
        .map(|v| (i64::from(ahi[v]) + i64::from(bhi[v]) - lo[v] + 1) as usize)
        .collect();
    // Last variable varies fastest, so the box order is the label order.
    let mut strides = vec![1usize; vars];
    let mut total = 1usize;
    for v in (0..vars).rev() {
        strides[v] = total;
        total = total.checked_mul(extent[v])?;
    }
    if total > 4 * a.len() * b.len() + 1024 {
        return None;
    }
    let offsets = |t: &[(BasisLabel, f64)], own_lo: &[i32]| -> Vec<usize> {
        t.iter()
            .map(|(l, _)| {
                l.as_slice()
                    .iter()
                    .enumerate()
                    .map(|(v, e)| (e - own_lo[v]) as usize * strides[v])
                    .sum()
            })
            .collect()
    };
    let (oa, ob) = (offsets(a, &alo), offsets(b, &blo));
    let mut acc = vec![0.0; total];
    for ((_, ca), ia) in a.iter().zip(&oa) {
        for ((_, cb), ib) in b.iter().zip(&ob) {
            acc[ia + ib] += ca * cb;
        }
    }
    let mut exps = vec![0i32; vars];
    Some(
        acc.iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(idx, c)| {
                let mut rest = idx;
                for v in 0..vars {
                    exps[v] = (lo[v] + (rest / strides[v]) as i64) as i32;
                    rest %= strides[v];
                }
                (BasisLabel::exponents(&exps), *c)
            })
            .collect(),
    )
}

impl Element {
    pub fn zero(spec: &AlgebraSpec) -> Self {
        Element {
            spec: spec.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(spec: &AlgebraSpec) -> Self {
        Self::scalar(spec, 1.0)
    }

    pub fn scalar(spec: &AlgebraSpec, r: f64) -> Self {
        Self::basis_scaled(spec, spec.unit(), r)
    }

    pub fn basis(spec: &AlgebraSpec, label: BasisLabel) -> Self {
        Self::basis_scaled(spec, label, 1.0)
    }

    fn basis_scaled(spec: &AlgebraSpec, label: BasisLabel, c: f64) -> Self {
        let terms = if c == 0.0 {
            Vec::new()
        } else {
            vec![(label, c)]
        };
        Element {
            spec: spec.clone(),
            terms,
        }
    }

    /// Sums repeated labels. Labels outside the algebra are rejected.
    pub fn from_terms(
        spec: &AlgebraSpec,
        terms: impl IntoIterator<Item = (BasisLabel, f64)>,
    ) -> Result<Self> {
        let terms: Vec<_> = terms.into_iter().collect();
        if let Some((bad, _)) = terms.iter().find(|(l, _)| !spec.contains(l)) {
            return Err(Error::usage(format!(
                "label {bad:?} is not a basis element of {}",
                spec.descriptor()
            )));
        }
        Ok(Element {
            spec: spec.clone(),
            terms: canonicalize(terms),
        })
    }

    /// Element from a dense coefficient vector in canonical basis order.
    pub fn from_dense(spec: &AlgebraSpec, coeffs: &[f64]) -> Result<Self> {
        let d = spec.finite_dim()?;
        if coeffs.len() != d {
            return Err(Error::dimension(format!(
                "expected {d} coefficients, got {}",
                coeffs.len()
            )));
        }
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(i, c)| (spec.label_at(i).expect("index below dim"), *c))
            .collect();
        Ok(Element {
            spec: spec.clone(),
            terms,
        })
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn terms(&self) -> &[(BasisLabel, f64)] {
        &self.terms
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, label: &BasisLabel) -> f64 {
        self.terms
            .binary_search_by(|(l, _)| l.cmp(label))
            .map(|i| self.terms[i].1)
            .unwrap_or(0.0)
    }

    /// Dense coefficient vector in canonical basis order.
    pub fn to_dense(&self) -> Result<Vec<f64>> {
        let d = self.spec.finite_dim()?;
        let mut v = vec![0.0; d];
        for (l, c) in &self.terms {
            v[self.spec.index_of(l).expect("label in algebra")] = *c;
        }
        Ok(v)
    }

    /// Coefficient of the unit.
    pub fn re(&self) -> f64 {
        self.coeff(&self.spec.unit())
    }

    pub fn norm2(&self) -> f64 {
        self.terms.iter().fold(0.0, |s, (_, c)| s + c * c).sqrt()
    }

    pub fn norm_inf(&self) -> f64 {
        self.terms.iter().fold(0.0, |m, (_, c)| m.max(c.abs()))
    }

    pub fn norm(&self, norm: NormChoice) -> f64 {
        norm.of(self)
    }

    pub fn conj(&self) -> Element {
        let terms = self
            .terms
            .iter()
            .map(|(l, c)| {
                let (s, k) = self.spec.conj_label(l);
                (k, f64::from(s) * c)
            })
            .collect();
        Element {
            spec: self.spec.clone(),
            terms: canonicalize(terms),
        }
    }

    fn check_spec(&self, other: &Element) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch {
                left: self.spec.descriptor().to_string(),
                right: other.spec.descriptor().to_string(),
            })
        }
    }

    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        self.check_spec(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Element) -> Element {
        if matches!(self.spec.kind(), SpecKind::Laurent { .. })
            && self.terms.len() * other.terms.len() > 64
        {
            if let Some(terms) = laurent_dense_product(&self.terms, &other.terms) {
                return Element {
                    spec: self.spec.clone(),
                    terms,
                };
            }
        }
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (la, ca) in &self.terms {
            for (lb, cb) in &other.terms {
                let (s, k) = self.spec.mul_labels(la, lb);
                out.push((k, f64::from(s) * ca * cb));
            }
        }
        Element {
            spec: self.spec.clone(),
            terms: canonicalize(out),
        }
    }

    /// `Re(self · other)` without forming the product.
    pub(crate) fn re_mul(&self, other: &Element) -> f64 {
        let unit = self.spec.unit();
        let (small, large, small_left) = if self.terms.len() <= other.terms.len() {
            (self, other, true)
        } else {
            (other, self, false)
        };
        small
            .terms
            .iter()
            .map(|(l, c)| {
                // Only the inverse label can pair with `l` to give the unit.
                let (_, inv) = self.spec.conj_label(l);
                let partner = large.coeff(&inv);
                if partner == 0.0 {
                    return 0.0;
                }
                let (s, k) = if small_left {
                    self.spec.mul_labels(l, &inv)
                } else {
                    self.spec.mul_labels(&inv, l)
                };
                debug_assert_eq!(k, unit);
                f64::from(s) * c * partner
            })
            .sum()
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.check_spec(other)?;
        Ok(self.axpy_unchecked(1.0, other))
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.check_spec(other)?;
        Ok(self.axpy_unchecked(-1.0, other))
    }

    /// `self + alpha * other` by merging the two sorted supports.
    pub(crate) fn axpy_unchecked(&self, alpha: f64, other: &Element) -> Element {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[j].0.clone(), alpha * b[j].1));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = a[i].1 + alpha * b[j].1;
                    if c != 0.0 {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(l, c)| (l.clone(), alpha * c)));
        out.retain(|(_, c)| *c != 0.0);
        Element {
            spec: self.spec.clone(),
            terms: out,
        }
    }

    /// `alpha * self + beta * other`.
    pub(crate) fn lincomb(alpha: f64, x: &Element, beta: f64, y: &Element) -> Element {
        x.scale(alpha).axpy_unchecked(beta, y)
    }

    /// `alpha * x + beta * (b·y)` (or `y·b` when `right`), in one merge when
    /// `b` is a single signed basis element.
    pub(crate) fn lincomb_mono(
        alpha: f64,
        x: &Element,
        beta: f64,
        b: &Element,
        y: &Element,
        right: bool,
    ) -> Element {
        let mono = match b.terms.as_slice() {
            [(label, coef)] => (label, *coef),
            _ => {
                let by = if right {
                    y.mul_unchecked(b)
                } else {
                    b.mul_unchecked(y)
                };
                return Element::lincomb(alpha, x, beta, &by);
            }
        };
        let spec = &x.spec;
        let scale = beta * mono.1;
        let mut prod: Vec<(BasisLabel, f64)> = y
            .terms
            .iter()
            .map(|(l, c)| {
                let (s, k) = if right {
                    spec.mul_labels(l, mono.0)
                } else {
                    spec.mul_labels(mono.0, l)
                };
                (k, f64::from(s) * scale * c)
            })
            .collect();
        // Laurent shifts keep the order, so the sort is usually skipped.
        if !prod.windows(2).all(|w| w[0].0 < w[1].0) {
            prod = canonicalize(prod);
        }
        let a = &x.terms;
        let mut out = Vec::with_capacity(a.len() + prod.len());
        let mut i = 0;
        let mut prod = prod.into_iter().peekable();
        while i < a.len() {
            let Some(next) = prod.peek() else { break };
            match a[i].0.cmp(&next.0) {
                std::cmp::Ordering::Less => {
                    out.push((a[i].0.clone(), alpha * a[i].1));
                    i += 1;
                }
                std::cmp::Ordering::Greater => out.extend(prod.next()),
                std::cmp::Ordering::Equal => {
                    let (l, c) = prod.next().expect("peeked");
                    out.push((l, alpha * a[i].1 + c));
                    i += 1;
                }
            }
        }
        out.extend(a[i..].iter().map(|(l, c)| (l.clone(), alpha * c)));
        out.extend(prod);
        out.retain(|(_, c)| *c != 0.0);
        Element {
            spec: spec.clone(),
            terms: out,
        }
    }

    pub fn scale(&self, r: f64) -> Element {
        if r == 0.0 {
            return Element::zero(&self.spec);
        }
        let terms = self
            .terms
            .iter()
            .map(|(l, c)| (l.clone(), c * r))
            .filter(|(_, c)| *c != 0.0)
            .collect();
        Element {
            spec: self.spec.clone(),
            terms,
        }
    }

    /// Drops coefficients with `|c| <= tau * ‖self‖∞`. Returns how many were dropped.
    pub fn trim(&mut self, tau: f64) -> usize {
        if tau <= 0.0 || self.terms.is_empty() {
            return 0;
        }
        let cut = tau * self.norm_inf();
        let before = self.terms.len();
        self.terms.retain(|(_, c)| c.abs() > cut);
        before - self.terms.len()
    }

    /// `‖self - other‖ <= tol` in the chosen norm.
    pub fn approx_eq(&self, other: &Element, tol: f64, norm: NormChoice) -> bool {
        self.spec == other.spec && self.axpy_unchecked(-1.0, other).norm(norm) <= tol
    }

    /// Whether `conj(self) · self = 1` within `tol` (two-norm).
    pub fn is_unitary(&self, tol: f64) -> bool {
        let p = self.conj().mul_unchecked(self);
        p.axpy_unchecked(-1.0, &Element::one(&self.spec)).norm2() <= tol
    }

    /// Real matrix of left multiplication in the canonical basis.
    pub fn rmr(&self) -> Result<DMatrix<f64>> {
        let d = self.spec.finite_dim()?;
        let mut m = DMatrix::zeros(d, d);
        for j in 0..d {
            let ej = self.spec.label_at(j).expect("index below dim");
            for (la, ca) in &self.terms {
                let (s, k) = self.spec.mul_labels(la, &ej);
                let row = self.spec.index_of(&k).expect("product in algebra");
                m[(row, j)] += f64::from(s) * ca;
            }
        }
        Ok(m)
    }
}

impl Add for &Element {
    type Output = Element;
    /// Panics when the operands belong to different algebras.
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("element addition")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.try_sub(rhs).expect("element subtraction")
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.try_mul(rhs).expect("element multiplication")
    }
}

impl Mul<f64> for &Element {
    type Output = Element;
    fn mul(self, rhs: f64) -> Element {
        self.scale(rhs)
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(-1.0)
    }
}

/// Free-function form of [`Element::try_mul`].
pub fn mul(a: &Element, b: &Element) -> Result<Element> {
    a.try_mul(b)
}

pub fn conj(a: &Element) -> Element {
    a.conj()
}

pub fn re(a: &Element) -> f64 {
    a.re()
}

pub fn rmr(a: &Element) -> Result<DMatrix<f64>> {
    a.rmr()
}
