use std::fmt;

use super::element::{Element, NormChoice};
use super::spec::AlgebraSpec;
use crate::error::{Error, Result};

/// Dense `m × n` matrix of algebra elements, row-major.
#[derive(Clone, PartialEq)]
pub struct AlgMatrix {
    spec: AlgebraSpec,
    rows: usize,
    cols: usize,
    data: Vec<Element>,
}

impl fmt::Debug for AlgMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "AlgMatrix {}x{} over {}",
            self.rows,
            self.cols,
            self.spec.descriptor()
        )?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for AlgMatrix {
    type Output = Element;
    fn index(&self, (i, j): (usize, usize)) -> &Element {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for AlgMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Element {
        &mut self.data[i * self.cols + j]
    }
}

impl AlgMatrix {
    pub fn zeros(spec: &AlgebraSpec, rows: usize, cols: usize) -> Result<Self> {
        Self::from_fn(spec, rows, cols, |_, _| Element::zero(spec))
    }

    pub fn identity(spec: &AlgebraSpec, n: usize) -> Result<Self> {
        Self::from_fn(spec, n, n, |i, j| {
            if i == j {
                Element::one(spec)
            } else {
                Element::zero(spec)
            }
        })
    }

    pub fn from_fn(
        spec: &AlgebraSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Element,
    ) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::dimension("matrices must have positive dimensions"));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                if e.spec() != spec {
                    return Err(Error::SpecMismatch {
                        left: spec.descriptor().to_string(),
                        right: e.spec().descriptor().to_string(),
                    });
                }
                data.push(e);
            }
        }
        Ok(AlgMatrix {
            spec: spec.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Row-major entries.
    pub fn from_rows(
        spec: &AlgebraSpec,
        rows: usize,
        cols: usize,
        data: Vec<Element>,
    ) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let mut it = data.into_iter();
        Self::from_fn(spec, rows, cols, |_, _| it.next().expect("length checked"))
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Element] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Element {
        &self[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, e: Element) -> Result<()> {
        if e.spec() != &self.spec {
            return Err(Error::SpecMismatch {
                left: self.spec.descriptor().to_string(),
                right: e.spec().descriptor().to_string(),
            });
        }
        if i >= self.rows || j >= self.cols {
            return Err(Error::dimension(format!(
                "({i},{j}) outside {}x{}",
                self.rows, self.cols
            )));
        }
        self[(i, j)] = e;
        Ok(())
    }

    /// Conjugate transpose.
    pub fn herm(&self) -> AlgMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].conj());
            }
        }
        AlgMatrix {
            spec: self.spec.clone(),
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn transpose(&self) -> AlgMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        AlgMatrix {
            spec: self.spec.clone(),
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn matmul(&self, other: &AlgMatrix) -> Result<AlgMatrix> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch {
                left: self.spec.descriptor().to_string(),
                right: other.spec.descriptor().to_string(),
            });
        }
        if self.cols != other.rows {
            return Err(Error::dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Element::zero(&self.spec);
                for k in 0..self.cols {
                    let (a, b) = (&self[(i, k)], &other[(k, j)]);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.axpy_unchecked(1.0, &a.mul_unchecked(b));
                }
                data.push(acc);
            }
        }
        Ok(AlgMatrix {
            spec: self.spec.clone(),
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    fn zip(&self, other: &AlgMatrix, alpha: f64) -> Result<AlgMatrix> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch {
                left: self.spec.descriptor().to_string(),
                right: other.spec.descriptor().to_string(),
            });
        }
        if self.shape() != other.shape() {
            return Err(Error::dimension(format!(
                "{:?} vs {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.axpy_unchecked(alpha, b))
            .collect();
        Ok(AlgMatrix {
            spec: self.spec.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn add(&self, other: &AlgMatrix) -> Result<AlgMatrix> {
        self.zip(other, 1.0)
    }

    pub fn sub(&self, other: &AlgMatrix) -> Result<AlgMatrix> {
        self.zip(other, -1.0)
    }

    /// Entry-wise right multiplication by an element.
    pub fn mul_right_elem(&self, e: &Element) -> Result<AlgMatrix> {
        let data = self
            .data
            .iter()
            .map(|x| x.try_mul(e))
            .collect::<Result<_>>()?;
        Ok(AlgMatrix {
            spec: self.spec.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Frobenius norm: square root of the sum of squared entry two-norms.
    /// Trims every entry, see [`Element::trim`]. Returns how many coefficients were dropped.
    pub fn trim(&mut self, tau: f64) -> usize {
        self.data.iter_mut().map(|e| e.trim(tau)).sum()
    }

    pub fn frob(&self) -> f64 {
        self.data
            .iter()
            .flat_map(|e| e.terms())
            .fold(0.0, |s, (_, c)| s + c * c)
            .sqrt()
    }

    /// Largest coefficient magnitude over all entries.
    pub fn supnorm(&self) -> f64 {
        self.data.iter().fold(0.0, |m, e| m.max(e.norm_inf()))
    }

    /// Largest entry norm strictly below the diagonal.
    pub fn max_below_diag(&self, norm: NormChoice) -> f64 {
        let mut g: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols.min(i) {
                g = g.max(self[(i, j)].norm(norm));
            }
        }
        g
    }

    pub fn max_off_diag(&self, norm: NormChoice) -> f64 {
        let mut g: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    g = g.max(self[(i, j)].norm(norm));
                }
            }
        }
        g
    }

    /// Copy with every below-diagonal entry set to zero.
    pub fn upper_part(&self) -> AlgMatrix {
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols.min(i) {
                out[(i, j)] = Element::zero(&self.spec);
            }
        }
        out
    }

    /// Copy with every off-diagonal entry set to zero.
    pub fn diagonal_part(&self) -> AlgMatrix {
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    out[(i, j)] = Element::zero(&self.spec);
                }
            }
        }
        out
    }

    /// `frob(herm(X)·X − I)`.
    pub fn unitarity_error(&self) -> Result<f64> {
        if self.rows != self.cols {
            return Err(Error::dimension(format!(
                "unitarity needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let p = self.herm().matmul(self)?;
        Ok(p.sub(&AlgMatrix::identity(&self.spec, self.rows)?)?.frob())
    }

    pub fn is_unitary(&self, tol: f64) -> Result<bool> {
        Ok(self.unitarity_error()? <= tol)
    }
}

pub fn herm(x: &AlgMatrix) -> AlgMatrix {
    x.herm()
}

pub fn matmul(x: &AlgMatrix, y: &AlgMatrix) -> Result<AlgMatrix> {
    x.matmul(y)
}

pub fn frob(x: &AlgMatrix) -> f64 {
    x.frob()
}

pub fn supnorm(x: &AlgMatrix) -> f64 {
    x.supnorm()
}

pub fn is_unitary(x: &AlgMatrix, tol: f64) -> Result<bool> {
    x.is_unitary(tol)
}
