use std::f64::consts::PI;

use super::field::{field_spec, FieldMatrix};
use super::rep::{Block, Representation};
use crate::algebra::{AlgebraSpec, BasisLabel, Field, SpecKind};
use crate::catalog;
use crate::error::{Error, Result};

fn real4(rows: [[f64; 4]; 4]) -> FieldMatrix {
    let mut m = FieldMatrix::zeros(Field::Real, 4, 4);
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            m.entry_mut(i, j)[0] = *x;
        }
    }
    m
}

/// Complex matrix from `(re, im)` pairs.
fn complex_rows<const N: usize>(rows: [[(f64, f64); N]; N]) -> FieldMatrix {
    let mut m = FieldMatrix::zeros(Field::Complex, N, N);
    for (i, row) in rows.iter().enumerate() {
        for (j, (re, im)) in row.iter().enumerate() {
            let e = m.entry_mut(i, j);
            e[0] = *re;
            e[1] = *im;
        }
    }
    m
}

fn mul(a: &FieldMatrix, b: &FieldMatrix) -> FieldMatrix {
    a.matmul(b).expect("square images of one size")
}

/// Identity representation of R, C or H on itself.
pub fn rep_field(field: Field) -> Result<Representation> {
    let spec = field_spec(field);
    let k = field.real_dim();
    let images = (0..k)
        .map(|i| {
            let mut m = FieldMatrix::zeros(field, 1, 1);
            m.entry_mut(0, 0)[i] = 1.0;
            vec![m]
        })
        .collect();
    Representation::from_basis_images(field.tag(), &spec, vec![Block::new(field, 1)], images, None)
}

/// Extends generator images of Cl(p,q) to every blade by ordered products.
fn clifford_images(p: usize, q: usize, gens: &[FieldMatrix]) -> Vec<Vec<FieldMatrix>> {
    let n = gens[0].rows();
    let field = gens[0].field();
    catalog::blade_masks(p, q)
        .into_iter()
        .map(|mask| {
            let mut m = FieldMatrix::identity(field, n);
            for (g, img) in gens.iter().enumerate() {
                if mask & (1 << g) != 0 {
                    m = mul(&m, img);
                }
            }
            vec![m]
        })
        .collect()
}

/// Quaternion basis images `[1, i, j, k]` from images of `i` and `j`.
fn quaternion_images(i: FieldMatrix, j: FieldMatrix) -> [FieldMatrix; 4] {
    let k = mul(&i, &j);
    let one = FieldMatrix::identity(i.field(), i.rows());
    [one, i, j, k]
}

/// `H ⊗ H ≅ R^{4×4}`, one real block of size 4.
pub fn rep_quadquat() -> Result<Representation> {
    let left = quaternion_images(
        real4([
            [0., -1., 0., 0.],
            [1., 0., 0., 0.],
            [0., 0., 0., -1.],
            [0., 0., 1., 0.],
        ]),
        real4([
            [0., 0., -1., 0.],
            [0., 0., 0., 1.],
            [1., 0., 0., 0.],
            [0., -1., 0., 0.],
        ]),
    );
    let right = quaternion_images(
        real4([
            [0., -1., 0., 0.],
            [1., 0., 0., 0.],
            [0., 0., 0., 1.],
            [0., 0., -1., 0.],
        ]),
        real4([
            [0., 0., -1., 0.],
            [0., 0., 0., -1.],
            [1., 0., 0., 0.],
            [0., 1., 0., 0.],
        ]),
    );
    let mut images = Vec::with_capacity(16);
    for l in &left {
        for r in &right {
            images.push(vec![mul(l, r)]);
        }
    }
    Representation::from_basis_images(
        "quadquat",
        &catalog::quadquat(),
        vec![Block::new(Field::Real, 4)],
        images,
        None,
    )
}

/// `H ⊗ C ≅ C^{2×2}` with `i ↦ diag(i, −i)`, `j ↦ [[0, 1], [−1, 0]]` and the
/// complex unit acting as `i·I`.
pub fn rep_biquat() -> Result<Representation> {
    let o = (0.0, 0.0);
    let quat = quaternion_images(
        complex_rows([[(0., 1.), o], [o, (0., -1.)]]),
        complex_rows([[o, (1., 0.)], [(-1., 0.), o]]),
    );
    let cplx = [
        FieldMatrix::identity(Field::Complex, 2),
        complex_rows([[(0., 1.), o], [o, (0., 1.)]]),
    ];
    let mut images = Vec::with_capacity(8);
    for a in &quat {
        for c in &cplx {
            images.push(vec![mul(a, c)]);
        }
    }
    Representation::from_basis_images(
        "biquat",
        &catalog::biquat(),
        vec![Block::new(Field::Complex, 2)],
        images,
        None,
    )
}

/// `Cl(4,1) ≅ C^{4×4}`; generators `g1..g5 = γ₁, γ₂, γ₃, γ₊, γ₋`.
pub fn rep_cl41() -> Result<Representation> {
    let o = (0.0, 0.0);
    let p = (1.0, 0.0);
    let n = (-1.0, 0.0);
    let pi = (0.0, 1.0);
    let ni = (0.0, -1.0);
    let gens = [
        complex_rows([[p, o, o, o], [o, n, o, o], [o, o, p, o], [o, o, o, n]]),
        complex_rows([[o, p, o, o], [p, o, o, o], [o, o, o, p], [o, o, p, o]]),
        complex_rows([[o, o, o, p], [o, o, n, o], [o, n, o, o], [p, o, o, o]]),
        complex_rows([[o, o, o, ni], [o, o, pi, o], [o, ni, o, o], [pi, o, o, o]]),
        complex_rows([[o, n, o, o], [p, o, o, o], [o, o, o, p], [o, o, n, o]]),
    ];
    Representation::from_basis_images(
        "cl(4,1)",
        &catalog::clifford(4, 1)?,
        vec![Block::new(Field::Complex, 4)],
        clifford_images(4, 1, &gens),
        None,
    )
}

fn digits(mut index: usize, vars: usize, modulus: usize) -> Vec<usize> {
    let mut e = vec![0; vars];
    for slot in e.iter_mut().rev() {
        *slot = index % modulus;
        index /= modulus;
    }
    e
}

fn undigits(e: &[usize], modulus: usize) -> usize {
    e.iter().fold(0, |acc, &x| acc * modulus + x)
}

/// DFT of `cyclic(κ, δ)`: one block per frequency orbit `{f, −f}`, real for
/// self-paired frequencies and complex otherwise. Block order follows the
/// lowest frequency index of each orbit.
pub fn rep_cyclic_dft(vars: usize, modulus: usize) -> Result<Representation> {
    if !modulus.is_multiple_of(2) {
        return Err(Error::Unsupported(format!(
            "DFT representation needs an even δ, got {modulus}"
        )));
    }
    let spec = catalog::cyclic(vars, modulus)?;
    let d = spec.finite_dim()?;
    let mut reps = Vec::new();
    for f in 0..d {
        let neg: Vec<usize> = digits(f, vars, modulus)
            .into_iter()
            .map(|x| (modulus - x) % modulus)
            .collect();
        let g = undigits(&neg, modulus);
        if f <= g {
            reps.push((f, f == g));
        }
    }
    let blocks: Vec<Block> = reps
        .iter()
        .map(|&(_, real)| Block::new(if real { Field::Real } else { Field::Complex }, 1))
        .collect();
    let images = (0..d)
        .map(|e| {
            let ed = digits(e, vars, modulus);
            reps.iter()
                .map(|&(f, real)| {
                    let fd = digits(f, vars, modulus);
                    let k = fd.iter().zip(&ed).map(|(a, b)| a * b).sum::<usize>() % modulus;
                    if real {
                        let mut m = FieldMatrix::zeros(Field::Real, 1, 1);
                        m.entry_mut(0, 0)[0] = if k == 0 { 1.0 } else { -1.0 };
                        m
                    } else {
                        let mut m = FieldMatrix::zeros(Field::Complex, 1, 1);
                        let angle = 2.0 * PI * k as f64 / modulus as f64;
                        let z = m.entry_mut(0, 0);
                        z[0] = angle.cos();
                        z[1] = -angle.sin();
                        m
                    }
                })
                .collect()
        })
        .collect();
    let generators: Vec<BasisLabel> = (0..vars)
        .map(|v| {
            let mut e = vec![0i32; vars];
            e[v] = 1;
            BasisLabel::exponents(&e)
        })
        .collect();
    Representation::from_basis_images(spec.descriptor(), &spec, blocks, images, Some(&generators))
}

/// The shipped representation for `spec`, if there is one.
pub fn rep_for_spec(spec: &AlgebraSpec) -> Result<Representation> {
    let rep = match spec.kind() {
        SpecKind::Clifford { p: 0, q: 0 } => rep_field(Field::Real),
        SpecKind::Clifford { p: 0, q: 1 } => rep_field(Field::Complex),
        SpecKind::Clifford { p: 0, q: 2 } => rep_field(Field::Quaternion),
        SpecKind::Clifford { p: 4, q: 1 } => rep_cl41(),
        SpecKind::Cyclic { vars, modulus } => rep_cyclic_dft(*vars, *modulus),
        SpecKind::Tensor if spec.descriptor() == "quadquat" => rep_quadquat(),
        SpecKind::Tensor if spec.descriptor() == "biquat" => rep_biquat(),
        _ => {
            return Err(Error::Unsupported(format!(
                "no block representation is cataloged for {}",
                spec.descriptor()
            )))
        }
    }?;
    if rep.source() != spec {
        return Err(Error::Unsupported(format!(
            "no block representation is cataloged for {}",
            spec.descriptor()
        )));
    }
    Ok(rep)
}
