//! Invariant suites run by `verify` and by the test-suite.

use std::fmt;

use super::{AlgebraSpec, BasisLabel, Element};
use crate::random::{self, Rng};

/// Exhaustive checks are used up to this dimension, sampling beyond it.
const EXHAUSTIVE_DIM: usize = 32;

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// Worst residual observed (0 for exact checks that passed).
    pub worst: f64,
    pub cases: usize,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:<22} cases={:<7} worst={:.3e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.cases,
            self.worst
        )?;
        if !self.detail.is_empty() {
            write!(f, "  {}", self.detail)?;
        }
        Ok(())
    }
}

fn label_pool(spec: &AlgebraSpec) -> Vec<BasisLabel> {
    random::window_labels(spec, 2)
}

fn associativity(spec: &AlgebraSpec, rng: &mut Rng) -> CheckOutcome {
    let pool = label_pool(spec);
    let exhaustive = spec.dim().is_some_and(|d| d <= EXHAUSTIVE_DIM);
    let triples: Box<dyn Iterator<Item = (usize, usize, usize)>> = if exhaustive {
        let n = pool.len();
        Box::new((0..n * n * n).map(move |t| (t / (n * n), (t / n) % n, t % n)))
    } else {
        use rand::Rng as _;
        let n = pool.len();
        let picks: Vec<_> = (0..20_000)
            .map(|_| {
                (
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                )
            })
            .collect();
        Box::new(picks.into_iter())
    };
    let mut cases = 0;
    for (i, j, k) in triples {
        cases += 1;
        let (a, b, c) = (&pool[i], &pool[j], &pool[k]);
        let (s1, ab) = spec.mul_labels(a, b);
        let (s2, left) = spec.mul_labels(&ab, c);
        let (t1, bc) = spec.mul_labels(b, c);
        let (t2, right) = spec.mul_labels(a, &bc);
        if left != right || s1 * s2 != t1 * t2 {
            return CheckOutcome {
                name: "associativity",
                passed: false,
                worst: 1.0,
                cases,
                detail: format!(
                    "({} {}) {} != {} ({} {})",
                    spec.render(a),
                    spec.render(b),
                    spec.render(c),
                    spec.render(a),
                    spec.render(b),
                    spec.render(c)
                ),
            };
        }
    }
    CheckOutcome {
        name: "associativity",
        passed: true,
        worst: 0.0,
        cases,
        detail: if exhaustive {
            "exhaustive".into()
        } else {
            "sampled".into()
        },
    }
}

fn unitary_basis(spec: &AlgebraSpec) -> CheckOutcome {
    let pool = label_pool(spec);
    let mut cases = 0;
    for a in &pool {
        let ea = Element::basis(spec, a.clone());
        let ca = ea.conj();
        if ca.is_zero() || ca.mul_unchecked(&ea) != Element::one(spec) {
            return CheckOutcome {
                name: "unitary basis",
                passed: false,
                worst: 1.0,
                cases,
                detail: format!("{} is not unitary", spec.render(a)),
            };
        }
        for b in &pool {
            cases += 1;
            let eb = Element::basis(spec, b.clone());
            let r = ca.mul_unchecked(&eb).re();
            let want = if a == b { 1.0 } else { 0.0 };
            if r != want {
                return CheckOutcome {
                    name: "unitary basis",
                    passed: false,
                    worst: (r - want).abs(),
                    cases,
                    detail: format!("Re(conj({}) {}) = {r}", spec.render(a), spec.render(b)),
                };
            }
        }
    }
    CheckOutcome {
        name: "unitary basis",
        passed: true,
        worst: 0.0,
        cases,
        detail: String::new(),
    }
}

fn involution(spec: &AlgebraSpec, rng: &mut Rng, samples: usize, tol: f64) -> CheckOutcome {
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let a = random::gaussian_element(spec, rng, 1);
        let b = random::gaussian_element(spec, rng, 1);
        let lhs = a.mul_unchecked(&b).conj();
        let rhs = b.conj().mul_unchecked(&a.conj());
        let scale = (a.norm2() * b.norm2()).max(1.0);
        worst = worst.max(lhs.axpy_unchecked(-1.0, &rhs).norm_inf() / scale);
        worst = worst.max(a.conj().conj().axpy_unchecked(-1.0, &a).norm_inf());
    }
    CheckOutcome {
        name: "anti-automorphism",
        passed: worst <= tol,
        worst,
        cases: samples,
        detail: String::new(),
    }
}

fn isometry(spec: &AlgebraSpec, rng: &mut Rng, samples: usize, tol: f64) -> CheckOutcome {
    let pool = label_pool(spec);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let a = random::gaussian_element(spec, rng, 2);
        let n = a.norm2();
        for l in pool.iter().take(64) {
            let b = Element::basis(spec, l.clone());
            worst = worst.max((b.mul_unchecked(&a).norm2() - n).abs());
        }
    }
    CheckOutcome {
        name: "isometry",
        passed: worst <= tol,
        worst,
        cases: samples,
        detail: String::new(),
    }
}

fn a3(spec: &AlgebraSpec, rng: &mut Rng, samples: usize, tol: f64) -> CheckOutcome {
    if spec.dim().is_none() {
        return CheckOutcome {
            name: "rmr(conj) = rmr^T",
            passed: true,
            worst: 0.0,
            cases: 0,
            detail: "skipped (infinite basis)".into(),
        };
    }
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let a = random::gaussian_element(spec, rng, 0);
        let m = a.rmr().expect("finite");
        let mc = a.conj().rmr().expect("finite");
        worst = worst.max((mc - m.transpose()).amax());
    }
    CheckOutcome {
        name: "rmr(conj) = rmr^T",
        passed: worst <= tol,
        worst,
        cases: samples,
        detail: String::new(),
    }
}

fn norm_sandwich(spec: &AlgebraSpec, rng: &mut Rng, samples: usize) -> CheckOutcome {
    let mut ok = true;
    for _ in 0..samples {
        let a = random::gaussian_element(spec, rng, 2);
        let (ni, n2) = (a.norm_inf(), a.norm2());
        let s = (a.support_len() as f64).sqrt();
        ok &= ni <= n2 && n2 <= s * ni * (1.0 + 1e-15);
    }
    CheckOutcome {
        name: "norm sandwich",
        passed: ok,
        worst: 0.0,
        cases: samples,
        detail: String::new(),
    }
}

/// Associativity, unitary basis, involution, isometry, transpose and norm checks.
pub fn run_invariant_suite(spec: &AlgebraSpec, seed: u64) -> Vec<CheckOutcome> {
    let mut rng = random::rng_from_seed(seed);
    vec![
        associativity(spec, &mut rng),
        unitary_basis(spec),
        involution(spec, &mut rng, 100, 1e-14),
        isometry(spec, &mut rng, 20, 1e-13),
        a3(spec, &mut rng, 10, 1e-14),
        norm_sandwich(spec, &mut rng, 100),
    ]
}
