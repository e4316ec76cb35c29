use crate::algebra::{AlgebraSpec, BasisLabel, MonomialRule, Sign, SpecKind};
use crate::error::{Error, Result};

/// Finite group given by its multiplication table over elements `0..order`.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    names: Vec<String>,
}

impl FiniteGroup {
    /// Validates closure, identity and inverses. Associativity is checked
    /// exhaustively.
    pub fn from_table(table: Vec<usize>, names: Vec<String>) -> Result<Self> {
        let order = names.len();
        if order == 0 || table.len() != order * order {
            return Err(Error::Construction(
                "group table must be order² entries long".into(),
            ));
        }
        if table.iter().any(|&x| x >= order) {
            return Err(Error::Construction("group table is not closed".into()));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| table[e * order + g] == g && table[g * order + e] == g))
            .ok_or_else(|| Error::Construction("group has no identity".into()))?;
        let g = FiniteGroup {
            order,
            table,
            identity,
            names,
        };
        for a in 0..order {
            if !(0..order).any(|b| g.op(a, b) == identity) {
                return Err(Error::Construction(format!(
                    "{} has no inverse",
                    g.names[a]
                )));
            }
            for b in 0..order {
                for c in 0..order {
                    if g.op(g.op(a, b), c) != g.op(a, g.op(b, c)) {
                        return Err(Error::Construction("group table is not associative".into()));
                    }
                }
            }
        }
        Ok(g)
    }

    /// `Z/nZ` with elements `0..n`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n * n).map(|t| (t / n + t % n) % n).collect();
        let names = (0..n).map(|k| format!("c{k}")).collect();
        FiniteGroup {
            order: n,
            table,
            identity: 0,
            names,
        }
    }

    /// `(Z/2Z)^n` with elements encoded as bitsets and XOR as the operation.
    pub fn elementary_abelian_2(n: usize) -> Self {
        let order = 1usize << n;
        let table = (0..order * order)
            .map(|t| (t / order) ^ (t % order))
            .collect();
        let names = (0..order)
            .map(|m| format!("e{m:0width$b}", width = n))
            .collect();
        FiniteGroup {
            order,
            table,
            identity: 0,
            names,
        }
    }

    /// Direct product; element `(a, b)` is encoded as `a * other.order + b`.
    pub fn product(&self, other: &FiniteGroup) -> Self {
        let order = self.order * other.order;
        let table = (0..order * order)
            .map(|t| {
                let (x, y) = (t / order, t % order);
                let (a1, b1) = (x / other.order, x % other.order);
                let (a2, b2) = (y / other.order, y % other.order);
                self.op(a1, a2) * other.order + other.op(b1, b2)
            })
            .collect();
        let mut names = Vec::with_capacity(order);
        for a in &self.names {
            for b in &other.names {
                names.push(format!("{a}.{b}"));
            }
        }
        FiniteGroup {
            order,
            table,
            identity: self.identity * other.order + other.identity,
            names,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order)
            .find(|&b| self.op(a, b) == self.identity)
            .expect("validated group")
    }
}

/// Exhaustive scan of `α(f,g)α(fg,h) = α(f,gh)α(g,h)`. Returns the first
/// violating triple.
pub fn find_cocycle_violation(
    group: &FiniteGroup,
    alpha: &dyn Fn(usize, usize) -> Sign,
) -> Option<(usize, usize, usize)> {
    let n = group.order();
    for f in 0..n {
        for g in 0..n {
            let fg = group.op(f, g);
            for h in 0..n {
                let gh = group.op(g, h);
                if alpha(f, g) * alpha(fg, h) != alpha(f, gh) * alpha(g, h) {
                    return Some((f, g, h));
                }
            }
        }
    }
    None
}

/// Table-driven signed-monomial rule: basis element `k` is `b_{order[k]}`.
#[derive(Debug)]
struct TwistedRule {
    d: usize,
    mul: Vec<(Sign, u32)>,
    inv: Vec<(Sign, u32)>,
    names: Vec<String>,
    unit: usize,
}

impl MonomialRule for TwistedRule {
    fn dim(&self) -> Option<usize> {
        Some(self.d)
    }

    fn unit(&self) -> BasisLabel {
        BasisLabel::index(self.unit)
    }

    fn mul(&self, a: &BasisLabel, b: &BasisLabel) -> (Sign, BasisLabel) {
        let (s, k) = self.mul[a.as_index() * self.d + b.as_index()];
        (s, BasisLabel::index(k as usize))
    }

    fn inverse(&self, a: &BasisLabel) -> (Sign, BasisLabel) {
        let (s, k) = self.inv[a.as_index()];
        (s, BasisLabel::index(k as usize))
    }

    fn contains(&self, a: &BasisLabel) -> bool {
        a.as_slice().len() == 1 && a.as_slice()[0] >= 0 && (a.as_slice()[0] as usize) < self.d
    }

    fn render(&self, a: &BasisLabel) -> String {
        self.names[a.as_index()].clone()
    }

    fn parse(&self, s: &str) -> Option<BasisLabel> {
        self.names
            .iter()
            .position(|n| n == s)
            .map(BasisLabel::index)
    }
}

/// Real twisted group algebra `R^α[G]` with `b_g b_h = α(g,h) b_{gh}` and
/// involution `b̄_g = b_g⁻¹ = α(g,g⁻¹) b_{g⁻¹}`.
///
/// The basis is ordered by group element index; the identity need not be
/// element 0, but basis labels are the group element indices.
pub fn twisted_group(
    descriptor: &str,
    group: &FiniteGroup,
    alpha: impl Fn(usize, usize) -> Sign,
) -> Result<AlgebraSpec> {
    let n = group.order();
    let e = group.identity();
    if alpha(e, e) != 1 {
        return Err(Error::Construction(
            "twisting must satisfy α(1,1) = 1".into(),
        ));
    }
    if let Some((f, g, h)) = find_cocycle_violation(group, &alpha) {
        return Err(Error::Cocycle { f, g, h });
    }
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            mul.push((alpha(a, b), group.op(a, b) as u32));
        }
    }
    let inv = (0..n)
        .map(|g| {
            let gi = group.inverse(g);
            (alpha(g, gi), gi as u32)
        })
        .collect();
    let names = group
        .names
        .iter()
        .enumerate()
        .map(|(k, name)| {
            if k == e {
                "1".to_string()
            } else {
                name.clone()
            }
        })
        .collect();
    AlgebraSpec::new(
        descriptor,
        SpecKind::TwistedGroup,
        Box::new(TwistedRule {
            d: n,
            mul,
            inv,
            names,
            unit: e,
        }),
    )
}
