use proptest::prelude::*;

use super::*;
use crate::catalog;
use crate::random;

fn lbl(spec: &AlgebraSpec, s: &str) -> BasisLabel {
    spec.parse_label(s).unwrap()
}

fn el(spec: &AlgebraSpec, terms: &[(&str, f64)]) -> Element {
    Element::from_terms(spec, terms.iter().map(|(s, c)| (lbl(spec, s), *c))).unwrap()
}

fn small_specs() -> Vec<AlgebraSpec> {
    vec![
        catalog::real(),
        catalog::complex(),
        catalog::quat(),
        catalog::clifford(1, 1).unwrap(),
        catalog::clifford(2, 1).unwrap(),
        catalog::clifford(3, 1).unwrap(),
        catalog::quadquat(),
        catalog::biquat(),
        catalog::cyclic(1, 6).unwrap(),
        catalog::cyclic(2, 4).unwrap(),
        catalog::laurent(1).unwrap(),
        catalog::laurent(2).unwrap(),
    ]
}

#[test]
fn terms_are_merged_sorted_and_zero_free() {
    let h = catalog::quat();
    let a = el(&h, &[("g2", 1.0), ("1", 2.0), ("g2", -1.0), ("g1", 0.5)]);
    assert_eq!(a.support_len(), 2);
    assert_eq!(a.coeff(&lbl(&h, "1")), 2.0);
    assert_eq!(a.coeff(&lbl(&h, "g1")), 0.5);
    assert_eq!(a.coeff(&lbl(&h, "g2")), 0.0);
    assert!(a.terms().windows(2).all(|w| w[0].0 < w[1].0));
}

#[test]
fn unknown_labels_are_rejected() {
    let h = catalog::quat();
    assert!(Element::from_terms(&h, [(BasisLabel::index(4), 1.0)]).is_err());
    assert!(Element::from_dense(&h, &[1.0, 2.0]).is_err());
    assert!(h.parse_label("g3").is_err());
}

#[test]
fn quaternion_products_follow_hamilton() {
    let h = catalog::quat();
    let i = el(&h, &[("g1", 1.0)]);
    let j = el(&h, &[("g2", 1.0)]);
    let k = el(&h, &[("g1g2", 1.0)]);
    let minus_one = Element::scalar(&h, -1.0);
    assert_eq!(&i * &i, minus_one);
    assert_eq!(&j * &j, minus_one);
    assert_eq!(&k * &k, minus_one);
    assert_eq!(&i * &j, k);
    assert_eq!(&j * &i, -&k);
    assert_eq!(&j * &k, i);
    assert_eq!(&k * &i, j);
}

#[test]
fn conjugation_of_quaternion_negates_imaginary_parts() {
    let h = catalog::quat();
    let a = el(&h, &[("1", 1.0), ("g1", 2.0), ("g2", -3.0), ("g1g2", 4.0)]);
    let b = el(&h, &[("1", 1.0), ("g1", -2.0), ("g2", 3.0), ("g1g2", -4.0)]);
    assert_eq!(a.conj(), b);
    // a ā = |a|² for a division algebra.
    let n = &a * &a.conj();
    assert!(n.approx_eq(&Element::scalar(&h, 30.0), 1e-12, NormChoice::Inf));
}

#[test]
fn norms_and_real_part() {
    let c = catalog::complex();
    let a = el(&c, &[("1", 3.0), ("g1", -4.0)]);
    assert_eq!(a.re(), 3.0);
    assert_eq!(a.norm2(), 5.0);
    assert_eq!(a.norm_inf(), 4.0);
    assert_eq!(NormChoice::Two.of(&a), 5.0);
    assert_eq!(Element::zero(&c).norm(NormChoice::Inf), 0.0);
}

#[test]
fn trim_drops_relative_small_coefficients() {
    let l = catalog::laurent(1).unwrap();
    let mut a = el(&l, &[("z", 1.0), ("z^2", 1e-12), ("z^-1", -0.5)]);
    assert_eq!(a.trim(1e-9), 1);
    assert_eq!(a.support_len(), 2);
    assert_eq!(a.trim(0.0), 0);
}

#[test]
fn display_renders_signed_terms() {
    let h = catalog::quat();
    let a = el(&h, &[("1", -1.5), ("g1g2", 2.0), ("g2", -0.25)]);
    assert_eq!(a.to_string(), "-1.5*1 - 0.25*g2 + 2*g1g2");
    assert_eq!(Element::zero(&h).to_string(), "0");
}

#[test]
fn mixing_algebras_is_an_error() {
    let a = Element::one(&catalog::quat());
    let b = Element::one(&catalog::complex());
    assert!(matches!(
        a.try_mul(&b),
        Err(crate::Error::SpecMismatch { .. })
    ));
    assert!(a.try_add(&b).is_err());
}

#[test]
fn rmr_of_complex_unit_is_rotation() {
    let c = catalog::complex();
    let m = el(&c, &[("g1", 1.0)]).rmr().unwrap();
    assert_eq!(
        m,
        nalgebra::DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0])
    );
    assert!(el(&catalog::laurent(1).unwrap(), &[("z", 1.0)])
        .rmr()
        .is_err());
}

#[test]
fn invariant_suite_passes_on_catalog() {
    for spec in small_specs() {
        for outcome in run_invariant_suite(&spec, 11) {
            assert!(outcome.passed, "{}: {outcome}", spec.descriptor());
        }
    }
}

#[test]
fn matrix_herm_and_products() {
    let h = catalog::quat();
    let mut rng = random::rng_from_seed(3);
    let x = random::gaussian_matrix(&h, 3, 2, &mut rng, 2).unwrap();
    let y = random::gaussian_matrix(&h, 2, 4, &mut rng, 2).unwrap();
    // (XY)^H = Y^H X^H
    let lhs = x.matmul(&y).unwrap().herm();
    let rhs = y.herm().matmul(&x.herm()).unwrap();
    assert!(lhs.sub(&rhs).unwrap().frob() < 1e-12);
    assert_eq!(x.herm().herm(), x);
    assert_eq!(x.transpose().shape(), (2, 3));
    assert!(x.matmul(&x).is_err());
    let eye = AlgMatrix::identity(&h, 3).unwrap();
    assert_eq!(eye.matmul(&x).unwrap(), x);
    assert_eq!(eye.unitarity_error().unwrap(), 0.0);
    assert!(x.unitarity_error().is_err());
}

#[test]
fn matrix_residual_helpers() {
    let c = catalog::complex();
    let m =
        AlgMatrix::from_fn(&c, 3, 2, |i, j| Element::scalar(&c, (1 + i * 2 + j) as f64)).unwrap();
    // Entries 1..6 row-major; (2,1) = 6 is below the diagonal.
    assert_eq!(m.max_below_diag(NormChoice::Inf), 6.0);
    assert_eq!(m.max_off_diag(NormChoice::Inf), 6.0);
    assert_eq!(m.transpose().max_below_diag(NormChoice::Inf), 2.0);
    assert_eq!(m.upper_part().max_below_diag(NormChoice::Inf), 0.0);
    assert_eq!(m.diagonal_part().max_off_diag(NormChoice::Two), 0.0);
    assert_eq!(m.supnorm(), 6.0);
    assert!(AlgMatrix::zeros(&c, 0, 2).is_err());
}

fn arb_spec() -> impl Strategy<Value = AlgebraSpec> {
    prop::sample::select(small_specs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn re_agrees_with_trace(seed in any::<u64>(), spec in arb_spec()) {
        prop_assume!(spec.dim().is_some());
        let mut rng = random::rng_from_seed(seed);
        let a = random::gaussian_element(&spec, &mut rng, 2);
        prop_assert!((re_by_trace(&a).unwrap() - a.re()).abs() < 1e-12);
    }

    #[test]
    fn rmr_is_multiplicative_and_transposes(seed in any::<u64>(), spec in arb_spec()) {
        prop_assume!(spec.dim().is_some());
        let mut rng = random::rng_from_seed(seed);
        let a = random::gaussian_element(&spec, &mut rng, 2);
        let b = random::gaussian_element(&spec, &mut rng, 2);
        let ab = (&a * &b).rmr().unwrap();
        let prod = a.rmr().unwrap() * b.rmr().unwrap();
        prop_assert!((ab - prod).amax() < 1e-11);
        prop_assert!((a.conj().rmr().unwrap() - a.rmr().unwrap().transpose()).amax() < 1e-14);
    }

    #[test]
    fn involution_reverses_products(seed in any::<u64>(), spec in arb_spec()) {
        let mut rng = random::rng_from_seed(seed);
        let a = random::gaussian_element(&spec, &mut rng, 2);
        let b = random::gaussian_element(&spec, &mut rng, 2);
        let lhs = (&a * &b).conj();
        let rhs = &b.conj() * &a.conj();
        prop_assert!(lhs.approx_eq(&rhs, 1e-12, NormChoice::Inf));
        prop_assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn basis_elements_are_unitary(seed in any::<u64>(), spec in arb_spec()) {
        let mut rng = random::rng_from_seed(seed);
        let b = random::random_basis_element(&spec, &mut rng, 2);
        prop_assert!(b.is_unitary(0.0));
        let a = random::gaussian_element(&spec, &mut rng, 2);
        // ‖b a‖₂ = ‖a‖₂ for unitary b.
        prop_assert!(((&b * &a).norm2() - a.norm2()).abs() < 1e-12 * a.norm2().max(1.0));
    }

    #[test]
    fn addition_and_scaling(seed in any::<u64>(), r in -4.0f64..4.0, spec in arb_spec()) {
        let mut rng = random::rng_from_seed(seed);
        let a = random::gaussian_element(&spec, &mut rng, 2);
        let b = random::gaussian_element(&spec, &mut rng, 2);
        let lhs = (&(&a + &b) * r).axpy_unchecked(-r, &b);
        prop_assert!(lhs.approx_eq(&(&a * r), 1e-12, NormChoice::Inf));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn fused_kernels_match_plain_products(seed in any::<u64>(), spec in arb_spec(), right in any::<bool>()) {
        let mut rng = random::rng_from_seed(seed);
        let a = random::gaussian_element(&spec, &mut rng, 2);
        let x = random::gaussian_element(&spec, &mut rng, 2);
        let b = random::random_basis_element(&spec, &mut rng, 2).scale(-1.0);
        prop_assert!((a.re_mul(&x) - (&a * &x).re()).abs() < 1e-12);
        prop_assert!((b.re_mul(&x) - (&b * &x).re()).abs() < 1e-12);
        let bx = if right { &x * &b } else { &b * &x };
        let fused = Element::lincomb_mono(0.6, &a, -0.8, &b, &x, right);
        prop_assert!(fused.approx_eq(&Element::lincomb(0.6, &a, -0.8, &bx), 1e-12, NormChoice::Inf));
    }

    #[test]
    fn wide_laurent_products_are_convolutions(seed in any::<u64>()) {
        let spec = catalog::laurent(2).unwrap();
        let mut rng = random::rng_from_seed(seed);
        let a = random::gaussian_element(&spec, &mut rng, 5);
        let b = random::gaussian_element(&spec, &mut rng, 3);
        let mut expect: std::collections::BTreeMap<Vec<i32>, f64> = Default::default();
        for (la, ca) in a.terms() {
            for (lb, cb) in b.terms() {
                let e: Vec<i32> = la.as_slice().iter().zip(lb.as_slice()).map(|(x, y)| x + y).collect();
                *expect.entry(e).or_default() += ca * cb;
            }
        }
        let expect = Element::from_terms(&spec, expect.into_iter().map(|(e, c)| (BasisLabel::exponents(&e), c))).unwrap();
        let got = &a * &b;
        prop_assert!(got.approx_eq(&expect, 1e-11, NormChoice::Inf));
        prop_assert!(got.terms().windows(2).all(|w| w[0].0 < w[1].0));
    }
}
