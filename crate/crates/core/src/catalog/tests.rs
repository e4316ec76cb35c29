use proptest::prelude::*;

use super::*;
use crate::algebra::{run_invariant_suite, BasisLabel, Element, NormChoice};

/// Product of two blades by reducing the concatenated generator word with
/// adjacent swaps, independent of the bitset sign formula.
fn blade_product_by_words(a: &[usize], b: &[usize], p: usize) -> (i8, Vec<usize>) {
    let mut word: Vec<usize> = a.iter().chain(b).copied().collect();
    let mut sign = 1i8;
    // Bubble sort; each swap of distinct generators anticommutes.
    for i in 0..word.len() {
        for j in 0..word.len() - 1 - i {
            if word[j] > word[j + 1] {
                word.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    // Cancel equal neighbours: g² = +1 for the first p generators, −1 after.
    let mut out: Vec<usize> = Vec::new();
    for g in word {
        if out.last() == Some(&g) {
            out.pop();
            if g >= p {
                sign = -sign;
            }
        } else {
            out.push(g);
        }
    }
    (sign, out)
}

fn blade_of(spec: &AlgebraSpec, label: &BasisLabel) -> Vec<usize> {
    let s = spec.render(label);
    if s == "1" {
        return Vec::new();
    }
    s.split('g')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().unwrap() - 1)
        .collect()
}

#[test]
fn clifford_signs_match_word_reduction() {
    for (p, q) in [(0, 2), (1, 1), (2, 1), (3, 1), (4, 1), (0, 3)] {
        let spec = clifford(p, q).unwrap();
        for a in spec.basis() {
            for b in spec.basis() {
                let (s, c) = spec.mul_labels(&a, &b);
                let (s2, w) = blade_product_by_words(&blade_of(&spec, &a), &blade_of(&spec, &b), p);
                assert_eq!(blade_of(&spec, &c), w, "cl({p},{q})");
                assert_eq!(
                    s,
                    s2,
                    "cl({p},{q}) {} * {}",
                    spec.render(&a),
                    spec.render(&b)
                );
            }
        }
    }
}

#[test]
fn clifford_basis_is_ordered_by_grade_then_lex() {
    let spec = clifford(4, 1).unwrap();
    let names: Vec<String> = spec.basis().iter().map(|l| spec.render(l)).collect();
    assert_eq!(names.len(), 32);
    assert_eq!(&names[..7], &["1", "g1", "g2", "g3", "g4", "g5", "g1g2"]);
    assert_eq!(names[31], "g1g2g3g4g5");
    let grades: Vec<usize> = names
        .iter()
        .map(|n| if n == "1" { 0 } else { n.matches('g').count() })
        .collect();
    assert!(grades.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn clifford_signature() {
    let spec = clifford(4, 1).unwrap();
    let one = Element::one(&spec);
    for (k, sq) in [(1, 1.0), (2, 1.0), (3, 1.0), (4, 1.0), (5, -1.0)] {
        let g = Element::basis(&spec, spec.parse_label(&format!("g{k}")).unwrap());
        assert_eq!(&g * &g, one.scale(sq));
    }
    assert!(clifford(17, 0).is_err());
}

#[test]
fn clifford_labels_round_trip() {
    let spec = clifford(3, 1).unwrap();
    for l in spec.basis() {
        assert_eq!(spec.parse_label(&spec.render(&l)).unwrap(), l);
    }
    assert!(spec.parse_label("g2g1").is_err());
    assert!(spec.parse_label("g1g1").is_err());
}

#[test]
fn twisted_group_rebuilds_clifford() {
    for (p, q) in [(0, 2), (2, 1), (3, 1)] {
        let cl = clifford(p, q).unwrap();
        let tw = clifford_as_twisted_group(p, q).unwrap();
        let masks = blade_masks(p, q);
        let to_tw = |l: &BasisLabel| BasisLabel::index(masks[l.as_index()] as usize);
        for a in cl.basis() {
            for b in cl.basis() {
                let (s, c) = cl.mul_labels(&a, &b);
                let (s2, c2) = tw.mul_labels(&to_tw(&a), &to_tw(&b));
                assert_eq!((s, to_tw(&c)), (s2, c2));
            }
        }
        for o in run_invariant_suite(&tw, 5) {
            assert!(o.passed, "{o}");
        }
    }
}

#[test]
fn cocycle_violations_are_reported() {
    let g = FiniteGroup::cyclic(2);
    // α(1,1) = −1 on Z/2: R^α[Z/2] ≅ C, a valid cocycle.
    let c = twisted_group("c", &g, |a, b| if a == 1 && b == 1 { -1 } else { 1 }).unwrap();
    for o in run_invariant_suite(&c, 1) {
        assert!(o.passed, "{o}");
    }
    let z3 = FiniteGroup::cyclic(3);
    let bad = |a: usize, b: usize| if a == 1 && b == 1 { -1 } else { 1 };
    assert!(find_cocycle_violation(&z3, &bad).is_some());
    assert!(matches!(
        twisted_group("bad", &z3, bad),
        Err(crate::Error::Cocycle { .. })
    ));
}

#[test]
fn group_tables_are_validated() {
    assert!(FiniteGroup::from_table(vec![0, 1, 1, 1], vec!["e".into(), "a".into()]).is_err());
    let g = FiniteGroup::cyclic(4).product(&FiniteGroup::cyclic(2));
    assert_eq!(g.order(), 8);
    for a in 0..8 {
        assert_eq!(g.op(a, g.inverse(a)), g.identity());
    }
}

#[test]
fn tensor_of_quaternions() {
    let qq = quadquat();
    assert_eq!(qq.dim(), Some(16));
    for o in run_invariant_suite(&qq, 2) {
        assert!(o.passed, "{o}");
    }
    // Left and right factors commute.
    let i1 = Element::basis(&qq, qq.parse_label("g1|1").unwrap());
    let one_i = Element::basis(&qq, qq.parse_label("1|g1").unwrap());
    assert_eq!(&i1 * &one_i, &one_i * &i1);
    assert_eq!(biquat().dim(), Some(8));
}

#[test]
fn split_complex_direct_sum() {
    let s = direct_sum_pm(&real(), &real()).unwrap();
    assert_eq!(s.dim(), Some(2));
    let e = Element::basis(&s, s.parse_label("1(-)1").unwrap());
    // (1 ⊕ −1)² = 1 ⊕ 1.
    assert_eq!(&e * &e, Element::one(&s));
    for o in run_invariant_suite(&s, 3) {
        assert!(o.passed, "{o}");
    }
    assert!(matches!(
        direct_sum_pm(&real(), &complex()),
        Err(crate::Error::Dimension(_))
    ));
    let h_cl = clifford(2, 0).unwrap();
    let ds = direct_sum_pm(&quat(), &h_cl).unwrap();
    for o in run_invariant_suite(&ds, 4) {
        assert!(o.passed, "{o}");
    }
}

#[test]
fn laurent_monomials() {
    let l = laurent(2).unwrap();
    assert_eq!(l.dim(), None);
    let a = l.parse_label("z1^2*z2^-1").unwrap();
    assert_eq!(a.as_slice(), &[2, -1]);
    assert_eq!(l.render(&a), "z1^2*z2^-1");
    let (s, c) = l.conj_label(&a);
    assert_eq!((s, c.as_slice().to_vec()), (1, vec![-2, 1]));
    assert!(laurent(0).is_err());
    let one_var = laurent(1).unwrap();
    assert_eq!(one_var.parse_label("z^3").unwrap().as_slice(), &[3]);
}

#[test]
fn cyclic_wraps_exponents() {
    let c = cyclic(2, 4).unwrap();
    assert_eq!(c.dim(), Some(16));
    let a = c.parse_label("z1^3*z2").unwrap();
    let (_, p) = c.mul_labels(&a, &a);
    assert_eq!(p.as_slice(), &[2, 2]);
    assert_eq!(c.index_of(&a), Some(3 * 4 + 1));
    assert_eq!(c.label_at(13).unwrap(), a);
    assert!(cyclic(1, 5).is_err());
}

#[test]
fn descriptors_parse() {
    for (s, d) in [
        ("real", Some(1)),
        ("complex", Some(2)),
        ("quat", Some(4)),
        ("quadquat", Some(16)),
        ("biquat", Some(8)),
        ("cl(4,1)", Some(32)),
        ("Cl(3, 1)", Some(16)),
        ("laurent(2)", None),
        ("cyclic(1,8)", Some(8)),
    ] {
        assert_eq!(parse_descriptor(s).unwrap().dim(), d, "{s}");
    }
    for bad in ["cl(4)", "octonions", "cyclic(1)", "laurent(x)"] {
        assert!(
            matches!(parse_descriptor(bad), Err(crate::Error::Parse { .. })),
            "{bad}"
        );
    }
}

/// Dense Laurent product by convolution in one variable.
fn convolve(a: &[(i32, f64)], b: &[(i32, f64)]) -> Vec<(i32, f64)> {
    let mut out: std::collections::BTreeMap<i32, f64> = Default::default();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_default() += ca * cb;
        }
    }
    out.into_iter().filter(|(_, c)| *c != 0.0).collect()
}

proptest! {
    #[test]
    fn laurent_product_is_convolution(
        a in prop::collection::vec((-5i32..=5, -3.0f64..3.0), 1..6),
        b in prop::collection::vec((-5i32..=5, -3.0f64..3.0), 1..6),
    ) {
        let l = laurent(1).unwrap();
        let mk = |t: &[(i32, f64)]| Element::from_terms(&l, t.iter().map(|(e, c)| (BasisLabel::exponents(&[*e]), *c))).unwrap();
        let merge = |t: &[(i32, f64)]| {
            let mut m: std::collections::BTreeMap<i32, f64> = Default::default();
            for (e, c) in t { *m.entry(*e).or_default() += c; }
            m.into_iter().collect::<Vec<_>>()
        };
        let expect = mk(&convolve(&merge(&a), &merge(&b)));
        prop_assert!((&mk(&a) * &mk(&b)).approx_eq(&expect, 1e-12, NormChoice::Inf));
    }

    #[test]
    fn clifford_products_associate(p in 0usize..4, q in 0usize..3, seed in any::<u64>()) {
        let spec = clifford(p, q).unwrap();
        let mut rng = crate::random::rng_from_seed(seed);
        let a = crate::random::gaussian_element(&spec, &mut rng, 0);
        let b = crate::random::gaussian_element(&spec, &mut rng, 0);
        let c = crate::random::gaussian_element(&spec, &mut rng, 0);
        let lhs = &(&a * &b) * &c;
        let rhs = &a * &(&b * &c);
        prop_assert!(lhs.approx_eq(&rhs, 1e-11, NormChoice::Inf));
    }
}
