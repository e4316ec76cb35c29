//! Shift matrices `B(b,i)` and A-Givens rotations
//! `G(θ,b,i,j) = B(b,i) G(θ,1,i,j) B(b,i)^H`.
//!
//! The non-trivial entries of `G(θ,b,i,j)` are
//! `G_jj = G_ii = cos θ`, `G_ji = −sin θ · b̄`, `G_ij = sin θ · b`.

use crate::algebra::{AlgMatrix, AlgebraSpec, Element};
use crate::error::{Error, Result};

const UNITARY_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct GivensParams {
    pub theta: f64,
    pub b: Element,
    /// Rotated rows/columns, `i > j`.
    pub i: usize,
    pub j: usize,
}

impl GivensParams {
    pub fn new(theta: f64, b: Element, i: usize, j: usize) -> Self {
        GivensParams { theta, b, i, j }
    }

    /// Parameters of the conjugate transpose, `G(−θ,b,i,j)`.
    pub fn inverse(&self) -> Self {
        GivensParams {
            theta: -self.theta,
            ..self.clone()
        }
    }

    fn validate(&self, spec: &AlgebraSpec, n: usize) -> Result<()> {
        if self.i <= self.j || self.i >= n {
            return Err(Error::usage(format!(
                "rotation indices need j < i < {n}, got i={} j={}",
                self.i, self.j
            )));
        }
        check_unitary(spec, &self.b)
    }
}

fn check_unitary(spec: &AlgebraSpec, b: &Element) -> Result<()> {
    if b.spec() != spec {
        return Err(Error::SpecMismatch {
            left: spec.descriptor().to_string(),
            right: b.spec().descriptor().to_string(),
        });
    }
    if !b.is_unitary(UNITARY_TOL) {
        return Err(Error::usage(format!("{b} is not unitary")));
    }
    Ok(())
}

/// `X ← G(θ,b,i,j) X` in place: only rows `i` and `j` change.
pub(crate) fn rotate_rows(
    x: &mut AlgMatrix,
    theta: f64,
    b: &Element,
    bc: &Element,
    i: usize,
    j: usize,
) {
    let (s, c) = theta.sin_cos();
    let n = x.cols();
    for col in 0..n {
        let xj = &x[(j, col)];
        let xi = &x[(i, col)];
        if xj.is_zero() && xi.is_zero() {
            continue;
        }
        let new_j = Element::lincomb_mono(c, xj, -s, bc, xi, false);
        let new_i = Element::lincomb_mono(c, xi, s, b, xj, false);
        x[(j, col)] = new_j;
        x[(i, col)] = new_i;
    }
}

/// `X ← X G(θ,b,i,j)` in place: only columns `i` and `j` change.
pub(crate) fn rotate_cols(
    x: &mut AlgMatrix,
    theta: f64,
    b: &Element,
    bc: &Element,
    i: usize,
    j: usize,
) {
    let (s, c) = theta.sin_cos();
    for row in 0..x.rows() {
        let xj = &x[(row, j)];
        let xi = &x[(row, i)];
        if xj.is_zero() && xi.is_zero() {
            continue;
        }
        let new_j = Element::lincomb_mono(c, xj, s, b, xi, true);
        let new_i = Element::lincomb_mono(c, xi, -s, bc, xj, true);
        x[(row, j)] = new_j;
        x[(row, i)] = new_i;
    }
}

/// Row `i` ← `b · row i`.
pub(crate) fn shift_row(x: &mut AlgMatrix, b: &Element, i: usize) {
    for col in 0..x.cols() {
        if !x[(i, col)].is_zero() {
            x[(i, col)] = b.mul_unchecked(&x[(i, col)]);
        }
    }
}

/// Column `i` ← `column i · b`.
pub(crate) fn shift_col(x: &mut AlgMatrix, b: &Element, i: usize) {
    for row in 0..x.rows() {
        if !x[(row, i)].is_zero() {
            x[(row, i)] = x[(row, i)].mul_unchecked(b);
        }
    }
}

pub fn apply_givens_left(x: &AlgMatrix, g: &GivensParams) -> Result<AlgMatrix> {
    g.validate(x.spec(), x.rows())?;
    let mut out = x.clone();
    rotate_rows(&mut out, g.theta, &g.b, &g.b.conj(), g.i, g.j);
    Ok(out)
}

pub fn apply_givens_right(x: &AlgMatrix, g: &GivensParams) -> Result<AlgMatrix> {
    g.validate(x.spec(), x.cols())?;
    let mut out = x.clone();
    rotate_cols(&mut out, g.theta, &g.b, &g.b.conj(), g.i, g.j);
    Ok(out)
}

/// `B(b,i) X`.
pub fn apply_shift_left(x: &AlgMatrix, b: &Element, i: usize) -> Result<AlgMatrix> {
    check_unitary(x.spec(), b)?;
    if i >= x.rows() {
        return Err(Error::usage(format!(
            "shift row {i} outside {} rows",
            x.rows()
        )));
    }
    let mut out = x.clone();
    shift_row(&mut out, b, i);
    Ok(out)
}

/// `X B(b,i)`.
pub fn apply_shift_right(x: &AlgMatrix, b: &Element, i: usize) -> Result<AlgMatrix> {
    check_unitary(x.spec(), b)?;
    if i >= x.cols() {
        return Err(Error::usage(format!(
            "shift column {i} outside {} columns",
            x.cols()
        )));
    }
    let mut out = x.clone();
    shift_col(&mut out, b, i);
    Ok(out)
}

/// Explicit `m × m` shift matrix `B(b,i)`.
pub fn shift_matrix(spec: &AlgebraSpec, m: usize, b: &Element, i: usize) -> Result<AlgMatrix> {
    apply_shift_left(&AlgMatrix::identity(spec, m)?, b, i)
}

/// Explicit `m × m` rotation `G(θ,b,i,j)`.
pub fn givens_matrix(spec: &AlgebraSpec, m: usize, g: &GivensParams) -> Result<AlgMatrix> {
    apply_givens_left(&AlgMatrix::identity(spec, m)?, g)
}
