use nalgebra::{Complex, DMatrix};

use crate::algebra::{AlgMatrix, AlgebraSpec, Element, Field};
use crate::catalog;
use crate::error::{Error, Result};

/// Dense matrix over R, C or H. Each entry is stored as `real_dim`
/// consecutive reals: `[re]`, `[re, im]` or `[1, i, j, k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

pub(crate) fn field_mul(field: Field, a: &[f64], b: &[f64], out: &mut [f64]) {
    match field {
        Field::Real => out[0] = a[0] * b[0],
        Field::Complex => {
            out[0] = a[0] * b[0] - a[1] * b[1];
            out[1] = a[0] * b[1] + a[1] * b[0];
        }
        Field::Quaternion => {
            out[0] = a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
            out[1] = a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2];
            out[2] = a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1];
            out[3] = a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0];
        }
    }
}

/// The algebra used to decompose a block over `field`.
pub fn field_spec(field: Field) -> AlgebraSpec {
    match field {
        Field::Real => catalog::real(),
        Field::Complex => catalog::complex(),
        Field::Quaternion => catalog::quat(),
    }
}

impl FieldMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field,
            rows,
            cols,
            data: vec![0.0; rows * cols * field.real_dim()],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entry_mut(i, i)[0] = 1.0;
        }
        m
    }

    /// Builds a matrix from entries given as real component slices.
    pub fn from_entries(
        field: Field,
        rows: usize,
        cols: usize,
        entries: &[&[f64]],
    ) -> Result<Self> {
        let k = field.real_dim();
        if entries.len() != rows * cols || entries.iter().any(|e| e.len() != k) {
            return Err(Error::dimension(format!(
                "{rows}x{cols} {} matrix needs {} entries of {k} reals",
                field.tag(),
                rows * cols
            )));
        }
        Ok(FieldMatrix {
            field,
            rows,
            cols,
            data: entries.concat(),
        })
    }

    pub fn from_real(m: &DMatrix<f64>) -> Self {
        let mut out = Self::zeros(Field::Real, m.nrows(), m.ncols());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                out.entry_mut(i, j)[0] = m[(i, j)];
            }
        }
        out
    }

    pub fn from_complex(m: &DMatrix<Complex<f64>>) -> Self {
        let mut out = Self::zeros(Field::Complex, m.nrows(), m.ncols());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                let e = out.entry_mut(i, j);
                e[0] = m[(i, j)].re;
                e[1] = m[(i, j)].im;
            }
        }
        out
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn entry(&self, i: usize, j: usize) -> &[f64] {
        let k = self.field.real_dim();
        let at = (i * self.cols + j) * k;
        &self.data[at..at + k]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut [f64] {
        let k = self.field.real_dim();
        let at = (i * self.cols + j) * k;
        &mut self.data[at..at + k]
    }

    pub fn matmul(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.field != other.field || self.cols != other.rows {
            return Err(Error::dimension(format!(
                "cannot multiply {}x{} {} by {}x{} {}",
                self.rows,
                self.cols,
                self.field.tag(),
                other.rows,
                other.cols,
                other.field.tag()
            )));
        }
        let k = self.field.real_dim();
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        let mut prod = [0.0; 4];
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.entry(i, l);
                if a.iter().all(|&x| x == 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    field_mul(self.field, a, other.entry(l, j), &mut prod);
                    let dst = out.entry_mut(i, j);
                    for c in 0..k {
                        dst[c] += prod[c];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn herm(&self) -> FieldMatrix {
        let mut out = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let src = self.entry(i, j);
                let dst = out.entry_mut(j, i);
                dst[0] = src[0];
                for c in 1..src.len() {
                    dst[c] = -src[c];
                }
            }
        }
        out
    }

    pub fn scale(&self, r: f64) -> FieldMatrix {
        let mut out = self.clone();
        out.data.iter_mut().for_each(|x| *x *= r);
        out
    }

    /// Largest absolute real component of `self − other`.
    pub fn max_abs_diff(&self, other: &FieldMatrix) -> f64 {
        if self.field != other.field || self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn frob(&self) -> f64 {
        self.data.iter().fold(0.0, |s, x| s + x * x).sqrt()
    }

    /// Complex matrix with the same singular values. Quaternion matrices use
    /// the `2n × 2n` complex adjoint, which repeats every singular value.
    pub fn to_complex(&self) -> DMatrix<Complex<f64>> {
        match self.field {
            Field::Real => DMatrix::from_fn(self.rows, self.cols, |i, j| {
                Complex::new(self.entry(i, j)[0], 0.0)
            }),
            Field::Complex => DMatrix::from_fn(self.rows, self.cols, |i, j| {
                let e = self.entry(i, j);
                Complex::new(e[0], e[1])
            }),
            Field::Quaternion => {
                let (m, n) = (self.rows, self.cols);
                DMatrix::from_fn(2 * m, 2 * n, |i, j| {
                    let e = self.entry(i % m, j % n);
                    let a = Complex::new(e[0], e[1]);
                    let b = Complex::new(e[2], e[3]);
                    match (i < m, j < n) {
                        (true, true) => a,
                        (true, false) => b,
                        (false, true) => -b.conj(),
                        (false, false) => a.conj(),
                    }
                })
            }
        }
    }

    /// Singular values in descending order.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self
            .to_complex()
            .singular_values()
            .iter()
            .copied()
            .collect();
        s.sort_by(|a, b| b.total_cmp(a));
        if self.field == Field::Quaternion {
            s = s.into_iter().step_by(2).collect();
        }
        s
    }

    /// The same matrix with entries in R, C or H as a Clifford algebra.
    pub fn to_alg(&self) -> AlgMatrix {
        let spec = field_spec(self.field);
        AlgMatrix::from_fn(&spec, self.rows, self.cols, |i, j| {
            Element::from_dense(&spec, self.entry(i, j)).expect("field entry width")
        })
        .expect("non-empty block")
    }

    pub fn from_alg(field: Field, a: &AlgMatrix) -> Result<FieldMatrix> {
        let spec = field_spec(field);
        if a.spec() != &spec {
            return Err(Error::SpecMismatch {
                left: spec.descriptor().to_string(),
                right: a.spec().descriptor().to_string(),
            });
        }
        let mut out = Self::zeros(field, a.rows(), a.cols());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                out.entry_mut(i, j).copy_from_slice(&a[(i, j)].to_dense()?);
            }
        }
        Ok(out)
    }
}
