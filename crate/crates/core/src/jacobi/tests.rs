use nalgebra::DMatrix;
use proptest::prelude::*;

use super::*;
use crate::algebra::{AlgMatrix, AlgebraSpec, Element, NormChoice};
use crate::catalog;
use crate::random;
use crate::Error;

fn gaussian(spec: &AlgebraSpec, m: usize, n: usize, seed: u64) -> AlgMatrix {
    random::gaussian_matrix(spec, m, n, &mut random::rng_from_seed(seed), 1).unwrap()
}

/// Real block matrix `[rmr(a_ij)]`.
fn real_lift(a: &AlgMatrix) -> DMatrix<f64> {
    let d = a.spec().dim().unwrap();
    let mut out = DMatrix::zeros(a.rows() * d, a.cols() * d);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out.view_mut((i * d, j * d), (d, d))
                .copy_from(&a[(i, j)].rmr().unwrap());
        }
    }
    out
}

fn sorted_singular_values(m: &DMatrix<f64>) -> Vec<f64> {
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

fn below_diag_count(m: usize, n: usize) -> usize {
    (0..n.min(m)).map(|k| m - 1 - k).sum()
}

#[test]
fn givens_matrix_entries_and_unitarity() {
    let h = catalog::quat();
    let b = Element::from_dense(&h, &[0.5, 0.5, -0.5, 0.5]).unwrap();
    let g = GivensParams::new(0.3, b.clone(), 2, 0);
    let m = givens_matrix(&h, 3, &g).unwrap();
    let (s, c) = 0.3f64.sin_cos();
    let tol = 1e-15;
    assert!(m[(0, 0)].approx_eq(&Element::scalar(&h, c), tol, NormChoice::Inf));
    assert!(m[(2, 2)].approx_eq(&Element::scalar(&h, c), tol, NormChoice::Inf));
    assert!(m[(2, 0)].approx_eq(&b.scale(s), tol, NormChoice::Inf));
    assert!(m[(0, 2)].approx_eq(&b.conj().scale(-s), tol, NormChoice::Inf));
    assert_eq!(m[(1, 1)], Element::one(&h));
    assert!(m.unitarity_error().unwrap() < 1e-15);

    let x = gaussian(&h, 3, 2, 1);
    let left = apply_givens_left(&x, &g).unwrap();
    assert!(left.sub(&m.matmul(&x).unwrap()).unwrap().frob() < 1e-14);
    let y = gaussian(&h, 2, 3, 2);
    let right = apply_givens_right(&y, &g).unwrap();
    assert!(right.sub(&y.matmul(&m).unwrap()).unwrap().frob() < 1e-14);
    // G(−θ) undoes G(θ).
    let back = apply_givens_left(&left, &g.inverse()).unwrap();
    assert!(back.sub(&x).unwrap().frob() < 1e-14);
}

#[test]
fn givens_rejects_bad_parameters() {
    let h = catalog::quat();
    let x = gaussian(&h, 3, 2, 1);
    let not_unitary = Element::scalar(&h, 2.0);
    assert!(apply_givens_left(&x, &GivensParams::new(0.1, not_unitary, 1, 0)).is_err());
    assert!(apply_givens_left(&x, &GivensParams::new(0.1, Element::one(&h), 0, 1)).is_err());
    assert!(apply_givens_left(&x, &GivensParams::new(0.1, Element::one(&h), 3, 1)).is_err());
    assert!(apply_shift_left(&x, &Element::one(&h), 3).is_err());
}

#[test]
fn shift_moves_a_row() {
    let c = catalog::complex();
    let i = Element::basis(&c, c.parse_label("g1").unwrap());
    let x = gaussian(&c, 2, 2, 4);
    let y = apply_shift_left(&x, &i, 1).unwrap();
    assert_eq!(y[(0, 1)], x[(0, 1)]);
    assert_eq!(y[(1, 0)], &i * &x[(1, 0)]);
    let z = apply_shift_right(&x, &i, 0).unwrap();
    assert_eq!(z[(1, 0)], &x[(1, 0)] * &i);
    let b = shift_matrix(&c, 2, &i, 1).unwrap();
    assert!(b.unitarity_error().unwrap() == 0.0);
}

#[test]
fn beta_basis_picks_largest_coefficient_lowest_on_ties() {
    let spec = catalog::clifford(2, 1).unwrap();
    let a = Element::from_dense(&spec, &[0.1, -3.0, 3.0, 0.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
    assert_eq!(
        beta_basis(&a),
        Element::basis(&spec, spec.label_at(1).unwrap())
    );
    assert_eq!(beta_basis(&Element::zero(&spec)), Element::one(&spec));
    assert_eq!(Beta::Unit.eval(&a).unwrap(), Element::one(&spec));
}

#[test]
fn beta_division_normalises() {
    let h = catalog::quat();
    let a = Element::from_dense(&h, &[1.0, 2.0, 2.0, 4.0]).unwrap();
    let b = beta_division(&a).unwrap();
    assert!(b.approx_eq(&a.scale(0.2), 1e-15, NormChoice::Inf));
    assert_eq!(beta_division(&Element::zero(&h)).unwrap(), Element::one(&h));
    let cl = catalog::clifford(1, 1).unwrap();
    assert!(matches!(
        beta_division(&Element::one(&cl)),
        Err(Error::Usage(_))
    ));
}

#[test]
fn beta_prime_agrees_with_an_already_decent_inner() {
    // β_B already satisfies |Re(conj(β(a)) a)| ≥ |Re(a)|, so the prime
    // variant never falls back to 1.
    let spec = catalog::clifford(2, 0).unwrap();
    let prime = beta_prime(Beta::Basis);
    let mut rng = random::rng_from_seed(17);
    for _ in 0..50 {
        let a = random::gaussian_element(&spec, &mut rng, 0);
        assert_eq!(prime.eval(&a).unwrap(), beta_basis(&a));
    }
    let a = Element::from_dense(&spec, &[0.95, 1.0, 0.0, 0.0]).unwrap();
    assert_eq!(
        prime.eval(&a).unwrap(),
        Element::basis(&spec, spec.label_at(1).unwrap())
    );
}

#[test]
fn recommended_choices() {
    assert_eq!(
        Beta::recommended(&catalog::quat()),
        (Beta::Division, NormChoice::Two)
    );
    assert_eq!(
        Beta::recommended(&catalog::clifford(4, 1).unwrap()),
        (Beta::Basis, NormChoice::Inf)
    );
    assert_eq!(
        Beta::recommended(&catalog::laurent(2).unwrap()).0,
        Beta::Basis
    );
}

#[test]
fn decency_of_shipped_choices() {
    for spec in [
        catalog::real(),
        catalog::quat(),
        catalog::clifford(3, 1).unwrap(),
        catalog::quadquat(),
        catalog::laurent(2).unwrap(),
    ] {
        let (beta, norm) = Beta::recommended(&spec);
        let r = decency_check(&beta, norm, &spec, 400, 9).unwrap();
        assert!(r.pass, "{}: {:?}", spec.descriptor(), r.witness);
        assert!(r.rho_empirical >= r.declared_rho.unwrap() * (1.0 - 1e-12));
    }
    // β_B with the 2-norm achieves at least 1/√d.
    let spec = catalog::clifford(2, 2).unwrap();
    let r = decency_check(&Beta::Basis, NormChoice::Two, &spec, 400, 1).unwrap();
    assert!(r.pass);
    assert_eq!(r.declared_rho, Some(0.25));
}

#[test]
fn unit_beta_is_not_decent_on_split_algebras() {
    let spec = catalog::clifford(1, 0).unwrap();
    let r = decency_check(&Beta::Unit, NormChoice::Inf, &spec, 50, 2).unwrap();
    assert!(!r.pass);
    assert!(r.witness.is_some());
}

#[test]
fn identity_needs_no_rotations() {
    let spec = catalog::clifford(4, 1).unwrap();
    let eye = AlgMatrix::identity(&spec, 3).unwrap();
    let r = aqr(&eye, &QrOptions::new(Beta::Basis, NormChoice::Inf, 1e-10)).unwrap();
    assert_eq!(r.rotations, 0);
    assert_eq!(r.residual, 0.0);
    assert_eq!(r.q().unwrap(), &eye);
    assert_eq!(r.r().unwrap(), &eye);
}

#[test]
fn real_qr_matches_householder_oracle() {
    let spec = catalog::real();
    let a = gaussian(&spec, 5, 3, 21);
    let rep = aqr(&a, &QrOptions::new(Beta::Division, NormChoice::Two, 0.0)).unwrap();
    let dense = real_lift(&a);
    let oracle = dense.qr().r();
    let r = rep.r().unwrap();
    for k in 0..3 {
        assert!((r[(k, k)].re() - oracle[(k, k)].abs()).abs() < 1e-12);
        for j in k..3 {
            assert!((r[(k, j)].re().abs() - oracle[(k, j)].abs()).abs() < 1e-12);
        }
    }
}

#[test]
fn division_algebras_terminate_exactly_in_one_sweep() {
    for spec in [catalog::real(), catalog::complex(), catalog::quat()] {
        for (m, n) in [(6, 4), (4, 6), (5, 5), (12, 8)] {
            let a = gaussian(&spec, m, n, (m * n) as u64);
            let rep = aqr(&a, &QrOptions::new(Beta::Division, NormChoice::Two, 0.0)).unwrap();
            assert_eq!(rep.sweeps, 1);
            assert_eq!(
                rep.rotations,
                below_diag_count(m, n),
                "{} {m}x{n}",
                spec.descriptor()
            );
            let r = rep.r().unwrap();
            for i in 0..m {
                for j in 0..i.min(n) {
                    assert!(r[(i, j)].is_zero());
                }
            }
            for k in 0..m.min(n) {
                assert!(r[(k, k)].re() >= 0.0);
            }
            assert!(rep.reconstruction_error(&a).unwrap() < 1e-13 * a.frob());
            assert!(rep.unitarity_error().unwrap() < 1e-13);
        }
    }
}

#[test]
fn trace_shows_growing_pivot_and_constant_frobenius() {
    let spec = catalog::clifford(3, 1).unwrap();
    let a = gaussian(&spec, 4, 3, 5);
    let opts = QrOptions::new(Beta::Basis, NormChoice::Inf, 1e-10).with_trace(true);
    let rep = aqr(&a, &opts).unwrap();
    let f0 = a.frob().powi(2);
    assert!(rep
        .trace
        .iter()
        .all(|t| (t.frob_sq - f0).abs() < 1e-10 * f0));
    // Re(r₁₁)² never decreases while column 1 is processed.
    let first: Vec<f64> = rep.trace.iter().take(4).map(|t| t.re_r11_sq).collect();
    assert!(first.windows(2).all(|w| w[1] >= w[0] * (1.0 - 1e-12)));
}

#[test]
fn sweep_limit_is_an_error_with_partial_factors() {
    let spec = catalog::clifford(4, 1).unwrap();
    let a = gaussian(&spec, 3, 2, 7);
    let opts = QrOptions::new(Beta::Basis, NormChoice::Inf, 1e-200).with_max_sweeps(1);
    match aqr(&a, &opts) {
        Err(Error::NotConverged { stage, partial, .. }) => {
            assert_eq!(stage, "QR");
            assert!(partial.reconstruction_error(&a).unwrap() < 1e-12 * a.frob());
        }
        other => panic!("expected NotConverged, got {other:?}"),
    }
    let svd =
        SvdOptions::new(QrOptions::new(Beta::Basis, NormChoice::Inf, 1e-12)).with_max_iters(2);
    assert!(matches!(
        asvd(&a, &svd),
        Err(Error::NotConverged { stage: "SVD", .. })
    ));
}

#[test]
fn invalid_options_are_usage_errors() {
    let spec = catalog::clifford(3, 1).unwrap();
    let a = gaussian(&spec, 2, 2, 3);
    let usage = |r: crate::Result<DecompReport>| matches!(r, Err(Error::Usage(_)));
    assert!(usage(aqr(
        &a,
        &QrOptions::new(Beta::Basis, NormChoice::Inf, 0.0)
    )));
    assert!(usage(aqr(
        &a,
        &QrOptions::new(Beta::Basis, NormChoice::Inf, -1.0)
    )));
    assert!(usage(aqr(
        &a,
        &QrOptions::new(Beta::Division, NormChoice::Two, 1e-10)
    )));
    assert!(usage(aqr(
        &a,
        &QrOptions::new(Beta::Basis, NormChoice::Inf, 1e-10).with_max_sweeps(0)
    )));
    let h = catalog::quat();
    let b = gaussian(&h, 2, 2, 3);
    assert!(usage(asvd(
        &b,
        &SvdOptions::new(QrOptions::new(Beta::Division, NormChoice::Two, 0.0))
    )));
}

#[test]
fn laurent_qr_with_trimming() {
    let spec = catalog::laurent(1).unwrap();
    let a = gaussian(&spec, 3, 2, 8);
    let opts = QrOptions::new(Beta::Basis, NormChoice::Inf, 1e-6).with_trim(1e-12);
    let rep = aqr(&a, &opts).unwrap();
    assert!(rep.residual <= 1e-6);
    assert!(rep.reconstruction_error(&a).unwrap() < 1e-6 * a.frob());
    assert!(rep.unitarity_error().unwrap() < 1e-6);
}

#[test]
fn svd_spectrum_matches_real_lift() {
    let spec = catalog::clifford(2, 1).unwrap();
    let a = gaussian(&spec, 3, 2, 13);
    let opts =
        SvdOptions::new(QrOptions::new(Beta::Basis, NormChoice::Inf, 1e-12)).with_max_iters(20_000);
    let rep = asvd(&a, &opts).unwrap();
    assert!(rep.residual <= 1e-12);
    assert!(rep.reconstruction_error(&a).unwrap() < 1e-10 * a.frob());
    assert!(rep.unitarity_error().unwrap() < 1e-10);
    let sa = sorted_singular_values(&real_lift(&a));
    let sd = sorted_singular_values(&real_lift(rep.d().unwrap()));
    for (x, y) in sa.iter().zip(&sd) {
        assert!((x - y).abs() < 1e-7, "{x} vs {y}");
    }
}

fn arb_case() -> impl Strategy<Value = (usize, usize, usize, usize, u64)> {
    (0usize..4, 0usize..3, 1usize..5, 1usize..4, any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn qr_contract((p, q, m, n, seed) in arb_case()) {
        let spec = catalog::clifford(p, q).unwrap();
        let a = gaussian(&spec, m, n, seed);
        let (beta, norm) = Beta::recommended(&spec);
        let eps = 1e-10;
        let rep = aqr(&a, &QrOptions::new(beta, norm, eps)).unwrap();
        prop_assert!(rep.r().unwrap().max_below_diag(norm) <= eps);
        prop_assert!(rep.reconstruction_error(&a).unwrap() <= 1e-9 * a.frob());
        prop_assert!(rep.unitarity_error().unwrap() <= 1e-10);
        let r = rep.r().unwrap();
        for k in 0..m.min(n) {
            prop_assert!(r[(k, k)].re() >= 0.0);
        }
    }

    #[test]
    fn svd_contract((p, q, m, n, seed) in arb_case()) {
        prop_assume!(p + q <= 3);
        let spec = catalog::clifford(p, q).unwrap();
        let a = gaussian(&spec, m.min(3), n.min(2), seed);
        let (beta, norm) = Beta::recommended(&spec);
        let eps = 1e-9;
        let opts = SvdOptions::new(QrOptions::new(beta, norm, eps)).with_max_iters(50_000);
        let rep = asvd(&a, &opts).unwrap();
        prop_assert!(rep.d().unwrap().max_off_diag(norm) <= eps);
        prop_assert!(rep.reconstruction_error(&a).unwrap() <= 1e-9 * a.frob());
        prop_assert!(rep.unitarity_error().unwrap() <= 1e-9);
    }
}
