use std::fmt;

use nalgebra::DMatrix;

use super::field::FieldMatrix;
use super::idempotent::IdempotentSet;
use crate::algebra::{AlgMatrix, AlgebraSpec, BasisLabel, Element, Field, NormChoice};
use crate::error::{Error, Result};

pub(crate) const VERIFY_TOL: f64 = 1e-12;
const INVERSE_TOL: f64 = 1e-13;
/// Above this many block products, multiplicativity is checked on
/// generators times basis elements only.
const ALL_PAIRS_BUDGET: usize = 4_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub field: Field,
    pub size: usize,
}

impl Block {
    pub fn new(field: Field, size: usize) -> Self {
        Block { field, size }
    }

    /// Reals needed for one image of an algebra element.
    pub fn flat_len(&self) -> usize {
        self.size * self.size * self.field.real_dim()
    }
}

/// Worst residuals found while verifying a representation.
#[derive(Clone, Debug, PartialEq)]
pub struct RepVerification {
    /// Basis pairs checked for multiplicativity.
    pub pairs: usize,
    pub multiplicativity: f64,
    pub star: f64,
    pub inverse: f64,
}

impl fmt::Display for RepVerification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pairs={} multiplicativity={:.3e} star={:.3e} inverse={:.3e}",
            self.pairs, self.multiplicativity, self.star, self.inverse
        )
    }
}

/// A verified *-isomorphism from a finite-dimensional algebra onto a direct
/// sum of matrix algebras over R, C and H.
#[derive(Clone, Debug)]
pub struct Representation {
    name: String,
    source: AlgebraSpec,
    blocks: Vec<Block>,
    offsets: Vec<usize>,
    /// Column `i` is the flattened image of basis element `i`.
    forward: DMatrix<f64>,
    inverse: DMatrix<f64>,
    verification: RepVerification,
}

fn block_mismatch(what: &str) -> Error {
    Error::Construction(format!("representation: {what}"))
}

impl Representation {
    /// Builds and verifies a representation from the images of every basis
    /// element (canonical order), one matrix per block.
    ///
    /// `generators`, when given, must generate the basis up to sign; large
    /// algebras are then checked on generator × basis products only.
    pub fn from_basis_images(
        name: &str,
        source: &AlgebraSpec,
        blocks: Vec<Block>,
        images: Vec<Vec<FieldMatrix>>,
        generators: Option<&[BasisLabel]>,
    ) -> Result<Self> {
        let d = source.finite_dim()?;
        let total: usize = blocks.iter().map(Block::flat_len).sum();
        if total != d {
            return Err(block_mismatch(&format!(
                "blocks of total real dimension {total} cannot represent an algebra of dimension {d}"
            )));
        }
        if images.len() != d {
            return Err(block_mismatch(&format!(
                "{} images for {d} basis elements",
                images.len()
            )));
        }
        for im in &images {
            if im.len() != blocks.len()
                || im
                    .iter()
                    .zip(&blocks)
                    .any(|(m, b)| m.field() != b.field || m.rows() != b.size || m.cols() != b.size)
            {
                return Err(block_mismatch("image does not match the block structure"));
            }
        }
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut at = 0;
        for b in &blocks {
            offsets.push(at);
            at += b.flat_len();
        }
        let mut forward = DMatrix::zeros(d, d);
        for (i, im) in images.iter().enumerate() {
            for (l, m) in im.iter().enumerate() {
                for (c, x) in m.as_slice().iter().enumerate() {
                    forward[(offsets[l] + c, i)] = *x;
                }
            }
        }

        let basis = source.basis();
        let render = |l: &BasisLabel| source.render(l);
        let image_of = |c: &BasisLabel| &images[source.index_of(c).expect("product in basis")];

        // Unit.
        let unit = &images[source.index_of(&source.unit()).expect("unit in basis")];
        for (m, b) in unit.iter().zip(&blocks) {
            let err = m.max_abs_diff(&FieldMatrix::identity(b.field, b.size));
            if err > VERIFY_TOL {
                return Err(block_mismatch(&format!(
                    "image of 1 is not the identity (residual {err:.3e})"
                )));
            }
        }

        // Multiplicativity.
        let use_all = d * d * blocks.len() <= ALL_PAIRS_BUDGET || generators.is_none();
        let left: Vec<BasisLabel> = if use_all {
            basis.clone()
        } else {
            generators.expect("checked").to_vec()
        };
        let mut worst_mult: f64 = 0.0;
        let mut pairs = 0;
        for a in &left {
            let ia = &images[source
                .index_of(a)
                .ok_or_else(|| block_mismatch("generator outside the algebra"))?];
            for b in &basis {
                let ib = &images[source.index_of(b).expect("basis label")];
                let (s, c) = source.mul_labels(a, b);
                let ic = image_of(&c);
                for l in 0..blocks.len() {
                    let prod = ia[l].matmul(&ib[l])?;
                    let err = prod.max_abs_diff(&ic[l].scale(f64::from(s)));
                    worst_mult = worst_mult.max(err);
                    if err > VERIFY_TOL {
                        return Err(block_mismatch(&format!(
                            "image({}·{}) differs from image({})·image({}) in block {l} (residual {err:.3e})",
                            render(a),
                            render(b),
                            render(a),
                            render(b)
                        )));
                    }
                }
                pairs += 1;
            }
        }

        // *-compatibility.
        let mut worst_star: f64 = 0.0;
        for (i, b) in basis.iter().enumerate() {
            let (s, c) = source.conj_label(b);
            let ic = image_of(&c);
            for l in 0..blocks.len() {
                let err = images[i][l].herm().max_abs_diff(&ic[l].scale(f64::from(s)));
                worst_star = worst_star.max(err);
                if err > VERIFY_TOL {
                    return Err(block_mismatch(&format!(
                        "image(conj({})) is not the conjugate transpose of image({}) in block {l} (residual {err:.3e})",
                        render(b),
                        render(b)
                    )));
                }
            }
        }

        let inverse = forward
            .clone()
            .try_inverse()
            .ok_or_else(|| block_mismatch("the forward map is singular"))?;
        let worst_inv = (&forward * &inverse - DMatrix::<f64>::identity(d, d))
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs()));
        if worst_inv > INVERSE_TOL {
            return Err(block_mismatch(&format!(
                "forward ∘ inverse differs from the identity by {worst_inv:.3e}"
            )));
        }

        Ok(Representation {
            name: name.to_string(),
            source: source.clone(),
            blocks,
            offsets,
            forward,
            inverse,
            verification: RepVerification {
                pairs,
                multiplicativity: worst_mult,
                star: worst_star,
                inverse: worst_inv,
            },
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &AlgebraSpec {
        &self.source
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn verification(&self) -> &RepVerification {
        &self.verification
    }

    /// Linear map from coefficients to concatenated block entries.
    pub fn forward_matrix(&self) -> &DMatrix<f64> {
        &self.forward
    }

    pub fn inverse_matrix(&self) -> &DMatrix<f64> {
        &self.inverse
    }

    fn check_source(&self, spec: &AlgebraSpec) -> Result<()> {
        if spec != &self.source {
            return Err(Error::SpecMismatch {
                left: self.source.descriptor().to_string(),
                right: spec.descriptor().to_string(),
            });
        }
        Ok(())
    }

    fn flat_image(&self, a: &Element) -> Result<Vec<f64>> {
        self.check_source(a.spec())?;
        let mut flat = vec![0.0; self.forward.nrows()];
        for (l, c) in a.terms() {
            let i = self.source.index_of(l).expect("label in algebra");
            for (dst, x) in flat.iter_mut().zip(self.forward.column(i).iter()) {
                *dst += c * x;
            }
        }
        Ok(flat)
    }

    /// Block images of `a`.
    pub fn image(&self, a: &Element) -> Result<Vec<FieldMatrix>> {
        let flat = self.flat_image(a)?;
        Ok(self
            .blocks
            .iter()
            .zip(&self.offsets)
            .map(|(b, &o)| {
                let k = b.field.real_dim();
                let mut m = FieldMatrix::zeros(b.field, b.size, b.size);
                for r in 0..b.size {
                    for c in 0..b.size {
                        let at = o + (r * b.size + c) * k;
                        m.entry_mut(r, c).copy_from_slice(&flat[at..at + k]);
                    }
                }
                m
            })
            .collect())
    }

    /// The element whose block images are `parts`.
    pub fn preimage(&self, parts: &[FieldMatrix]) -> Result<Element> {
        if parts.len() != self.blocks.len() {
            return Err(Error::dimension(format!(
                "{} blocks given, representation has {}",
                parts.len(),
                self.blocks.len()
            )));
        }
        let mut flat = Vec::with_capacity(self.forward.nrows());
        for (m, b) in parts.iter().zip(&self.blocks) {
            if m.field() != b.field || m.rows() != b.size || m.cols() != b.size {
                return Err(Error::dimension(
                    "block image has the wrong shape".to_string(),
                ));
            }
            flat.extend_from_slice(m.as_slice());
        }
        Ok(self.preimage_flat(&flat))
    }

    fn preimage_flat(&self, flat: &[f64]) -> Element {
        if flat.iter().all(|&x| x == 0.0) {
            return Element::zero(&self.source);
        }
        let v = &self.inverse * nalgebra::DVector::from_column_slice(flat);
        Element::from_dense(&self.source, v.as_slice()).expect("square forward map")
    }

    /// Bound `κ` with `‖a‖ ≤ κ·max |flattened image component|`.
    pub fn tolerance_factor(&self, norm: NormChoice) -> f64 {
        match norm {
            NormChoice::Inf => self
                .inverse
                .row_iter()
                .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
                .fold(0.0, f64::max),
            NormChoice::Two => {
                let s = self.inverse.singular_values().max();
                s * (self.forward.nrows() as f64).sqrt()
            }
        }
    }

    /// Ratio of real operations in the source algebra to those in the block
    /// field, `d / dim_R(field)` for the widest-field block.
    pub fn cost_ratio(&self) -> f64 {
        let k = self
            .blocks
            .iter()
            .map(|b| b.field.real_dim())
            .max()
            .unwrap_or(1);
        self.forward.nrows() as f64 / k as f64
    }

    /// One `n_ℓ m × n_ℓ n` field matrix per block; entry `(i,j)` of `a`
    /// becomes block `(i,j)`.
    pub fn lift(&self, a: &AlgMatrix) -> Result<Vec<FieldMatrix>> {
        self.check_source(a.spec())?;
        let (m, n) = a.shape();
        let mut out: Vec<FieldMatrix> = self
            .blocks
            .iter()
            .map(|b| FieldMatrix::zeros(b.field, b.size * m, b.size * n))
            .collect();
        for i in 0..m {
            for j in 0..n {
                if a[(i, j)].is_zero() {
                    continue;
                }
                let im = self.image(&a[(i, j)])?;
                for ((dst, src), b) in out.iter_mut().zip(&im).zip(&self.blocks) {
                    let s = b.size;
                    for r in 0..s {
                        for c in 0..s {
                            dst.entry_mut(i * s + r, j * s + c)
                                .copy_from_slice(src.entry(r, c));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Inverse of [`Representation::lift`] for an `m × n` algebra matrix.
    pub fn unlift(&self, parts: &[FieldMatrix], m: usize, n: usize) -> Result<AlgMatrix> {
        if parts.len() != self.blocks.len() {
            return Err(Error::dimension(format!(
                "{} blocks given, representation has {}",
                parts.len(),
                self.blocks.len()
            )));
        }
        for (p, b) in parts.iter().zip(&self.blocks) {
            if p.field() != b.field || p.rows() != b.size * m || p.cols() != b.size * n {
                return Err(Error::dimension(format!(
                    "block of shape {}x{} {} does not unlift to {m}x{n}",
                    p.rows(),
                    p.cols(),
                    p.field().tag()
                )));
            }
        }
        let mut flat = vec![0.0; self.forward.nrows()];
        AlgMatrix::from_fn(&self.source, m, n, |i, j| {
            for ((p, b), &o) in parts.iter().zip(&self.blocks).zip(&self.offsets) {
                let (s, k) = (b.size, b.field.real_dim());
                for r in 0..s {
                    for c in 0..s {
                        let at = o + (r * s + c) * k;
                        flat[at..at + k].copy_from_slice(p.entry(i * s + r, j * s + c));
                    }
                }
            }
            self.preimage_flat(&flat)
        })
    }

    /// Central idempotents: preimages of the identity of each block.
    pub fn idempotents(&self) -> Result<IdempotentSet> {
        let elements = (0..self.blocks.len())
            .map(|l| {
                let parts: Vec<FieldMatrix> = self
                    .blocks
                    .iter()
                    .enumerate()
                    .map(|(k, b)| {
                        if k == l {
                            FieldMatrix::identity(b.field, b.size)
                        } else {
                            FieldMatrix::zeros(b.field, b.size, b.size)
                        }
                    })
                    .collect();
                self.preimage(&parts)
            })
            .collect::<Result<Vec<_>>>()?;
        IdempotentSet::new(&self.source, elements)
    }
}
