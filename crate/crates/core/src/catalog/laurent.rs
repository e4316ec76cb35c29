use crate::algebra::{AlgebraSpec, BasisLabel, MonomialRule, Sign, SpecKind};
use crate::error::{Error, Result};

fn render_monomial(exps: &[i32]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, e)| **e != 0)
        .map(|(k, e)| {
            if *e == 1 {
                format!("z{}", k + 1)
            } else {
                format!("z{}^{}", k + 1, e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn parse_monomial(s: &str, vars: usize) -> Option<Vec<i32>> {
    let mut exps = vec![0i32; vars];
    if s == "1" {
        return Some(exps);
    }
    for factor in s.split('*') {
        let factor = factor.trim().strip_prefix('z')?;
        let (var, exp) = match factor.split_once('^') {
            Some((v, e)) => (v, e.parse::<i32>().ok()?),
            None => (factor, 1),
        };
        let k = if var.is_empty() && vars == 1 {
            1
        } else {
            var.parse::<usize>().ok()?
        };
        if k == 0 || k > vars {
            return None;
        }
        exps[k - 1] = exps[k - 1].checked_add(exp)?;
    }
    Some(exps)
}

/// Monomials `z₁^ρ₁ ⋯ z_κ^ρ_κ` labelled by their exponent vector.
#[derive(Debug)]
struct LaurentRule {
    vars: usize,
}

impl MonomialRule for LaurentRule {
    fn dim(&self) -> Option<usize> {
        None
    }

    fn unit(&self) -> BasisLabel {
        BasisLabel::exponents(&vec![0; self.vars])
    }

    fn mul(&self, a: &BasisLabel, b: &BasisLabel) -> (Sign, BasisLabel) {
        let e: Vec<i32> = a
            .as_slice()
            .iter()
            .zip(b.as_slice())
            .map(|(x, y)| x + y)
            .collect();
        (1, BasisLabel::exponents(&e))
    }

    fn inverse(&self, a: &BasisLabel) -> (Sign, BasisLabel) {
        let e: Vec<i32> = a.as_slice().iter().map(|x| -x).collect();
        (1, BasisLabel::exponents(&e))
    }

    fn contains(&self, a: &BasisLabel) -> bool {
        a.as_slice().len() == self.vars
    }

    fn render(&self, a: &BasisLabel) -> String {
        render_monomial(a.as_slice())
    }

    fn parse(&self, s: &str) -> Option<BasisLabel> {
        parse_monomial(s, self.vars).map(|e| BasisLabel::exponents(&e))
    }
}

/// Exponent vectors reduced modulo `modulus` in each variable.
#[derive(Debug)]
struct CyclicRule {
    vars: usize,
    modulus: usize,
}

impl CyclicRule {
    fn reduce(&self, e: i64) -> i32 {
        e.rem_euclid(self.modulus as i64) as i32
    }
}

impl MonomialRule for CyclicRule {
    fn dim(&self) -> Option<usize> {
        Some(self.modulus.pow(self.vars as u32))
    }

    fn unit(&self) -> BasisLabel {
        BasisLabel::exponents(&vec![0; self.vars])
    }

    fn mul(&self, a: &BasisLabel, b: &BasisLabel) -> (Sign, BasisLabel) {
        let e: Vec<i32> = a
            .as_slice()
            .iter()
            .zip(b.as_slice())
            .map(|(x, y)| self.reduce(i64::from(*x) + i64::from(*y)))
            .collect();
        (1, BasisLabel::exponents(&e))
    }

    fn inverse(&self, a: &BasisLabel) -> (Sign, BasisLabel) {
        let e: Vec<i32> = a
            .as_slice()
            .iter()
            .map(|x| self.reduce(-i64::from(*x)))
            .collect();
        (1, BasisLabel::exponents(&e))
    }

    fn contains(&self, a: &BasisLabel) -> bool {
        a.as_slice().len() == self.vars
            && a.as_slice()
                .iter()
                .all(|&x| x >= 0 && (x as usize) < self.modulus)
    }

    fn render(&self, a: &BasisLabel) -> String {
        render_monomial(a.as_slice())
    }

    fn parse(&self, s: &str) -> Option<BasisLabel> {
        let e: Vec<i32> = parse_monomial(s, self.vars)?
            .into_iter()
            .map(|x| self.reduce(i64::from(x)))
            .collect();
        Some(BasisLabel::exponents(&e))
    }

    fn label_at(&self, index: usize) -> Option<BasisLabel> {
        if index >= self.dim()? {
            return None;
        }
        let mut e = vec![0i32; self.vars];
        let mut n = index;
        for slot in e.iter_mut().rev() {
            *slot = (n % self.modulus) as i32;
            n /= self.modulus;
        }
        Some(BasisLabel::exponents(&e))
    }

    fn index_of(&self, a: &BasisLabel) -> Option<usize> {
        if !self.contains(a) {
            return None;
        }
        Some(
            a.as_slice()
                .iter()
                .fold(0usize, |acc, &x| acc * self.modulus + x as usize),
        )
    }
}

/// κ-variate real Laurent polynomials; involution `z^ρ ↦ z^{−ρ}`.
pub fn laurent(vars: usize) -> Result<AlgebraSpec> {
    if vars == 0 {
        return Err(Error::usage("laurent needs at least one variable"));
    }
    AlgebraSpec::new(
        format!("laurent({vars})"),
        SpecKind::Laurent { vars },
        Box::new(LaurentRule { vars }),
    )
}

/// Group algebra of `(Z/δZ)^κ`, the periodic truncation of `laurent(κ)`.
pub fn cyclic(vars: usize, modulus: usize) -> Result<AlgebraSpec> {
    if vars == 0 {
        return Err(Error::usage("cyclic needs at least one variable"));
    }
    if modulus < 2 || !modulus.is_multiple_of(2) {
        return Err(Error::usage(format!(
            "cyclic modulus must be even and at least 2, got {modulus}"
        )));
    }
    AlgebraSpec::new(
        format!("cyclic({vars},{modulus})"),
        SpecKind::Cyclic { vars, modulus },
        Box::new(CyclicRule { vars, modulus }),
    )
}
