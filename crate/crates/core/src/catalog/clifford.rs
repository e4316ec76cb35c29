use crate::algebra::{AlgebraSpec, BasisLabel, MonomialRule, Sign, SpecKind};
use crate::error::{Error, Result};

pub const MAX_GENERATORS: usize = 16;

/// Blades of Cl(p,q) as generator bitsets. Generators `0..p` square to +1,
/// `p..p+q` to −1; bit `g` set means generator `g` is present.
#[derive(Debug)]
pub(crate) struct CliffordRule {
    p: usize,
    q: usize,
    /// Canonical position -> bitset.
    order: Vec<u32>,
    /// Bitset -> canonical position.
    position: Vec<u32>,
}

/// Sign of the blade product `a · b` for generator bitsets, with `neg_mask`
/// marking generators that square to −1.
pub fn blade_sign(a: u32, b: u32, neg_mask: u32) -> Sign {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    swaps += (a & b & neg_mask).count_ones();
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn generator_list(mask: u32) -> Vec<u32> {
    (0..32).filter(|g| mask & (1 << g) != 0).collect()
}

impl CliffordRule {
    fn new(p: usize, q: usize) -> Self {
        let n = p + q;
        let mut order: Vec<u32> = (0..(1u32 << n)).collect();
        // Grade first, then lexicographic on ascending generator indices.
        order.sort_by_key(|&m| (m.count_ones(), generator_list(m)));
        let mut position = vec![0u32; order.len()];
        for (i, &m) in order.iter().enumerate() {
            position[m as usize] = i as u32;
        }
        CliffordRule {
            p,
            q,
            order,
            position,
        }
    }

    fn neg_mask(&self) -> u32 {
        ((1u32 << self.q) - 1) << self.p
    }

    pub(crate) fn mask_of(&self, label: &BasisLabel) -> u32 {
        self.order[label.as_index()]
    }

    pub(crate) fn label_of(&self, mask: u32) -> BasisLabel {
        BasisLabel::index(self.position[mask as usize] as usize)
    }
}

impl MonomialRule for CliffordRule {
    fn dim(&self) -> Option<usize> {
        Some(self.order.len())
    }

    fn unit(&self) -> BasisLabel {
        BasisLabel::index(0)
    }

    fn mul(&self, a: &BasisLabel, b: &BasisLabel) -> (Sign, BasisLabel) {
        let (ma, mb) = (self.mask_of(a), self.mask_of(b));
        (blade_sign(ma, mb, self.neg_mask()), self.label_of(ma ^ mb))
    }

    fn inverse(&self, a: &BasisLabel) -> (Sign, BasisLabel) {
        let m = self.mask_of(a);
        // b·b = s·1, so b⁻¹ = s·b.
        (blade_sign(m, m, self.neg_mask()), a.clone())
    }

    fn contains(&self, a: &BasisLabel) -> bool {
        a.as_slice().len() == 1
            && a.as_slice()[0] >= 0
            && (a.as_slice()[0] as usize) < self.order.len()
    }

    fn render(&self, a: &BasisLabel) -> String {
        let m = self.mask_of(a);
        if m == 0 {
            return "1".into();
        }
        generator_list(m)
            .iter()
            .map(|g| format!("g{}", g + 1))
            .collect()
    }

    fn parse(&self, s: &str) -> Option<BasisLabel> {
        if s == "1" {
            return Some(self.unit());
        }
        let n = (self.p + self.q) as u32;
        let mut mask = 0u32;
        let mut last = 0u32;
        for part in s.strip_prefix('g')?.split('g') {
            let g: u32 = part.parse().ok()?;
            if g == 0 || g > n || g <= last {
                return None;
            }
            last = g;
            mask |= 1 << (g - 1);
        }
        Some(self.label_of(mask))
    }
}

/// Real Clifford algebra Cl(p,q) in its standard basis of blades.
///
/// Blades are ordered by grade, then lexicographically on generator indices;
/// for Cl(4,1) with generators `g1..g4 = γ₁, γ₂, γ₃, γ₊` and `g5 = γ₋` this is
/// the usual conformal listing `1, γ₁, …, γ₋, γ₁γ₂, …, γ₁γ₂γ₃γ₊γ₋`.
pub fn clifford(p: usize, q: usize) -> Result<AlgebraSpec> {
    if p + q > MAX_GENERATORS {
        return Err(Error::Unsupported(format!(
            "Cl({p},{q}) has more than {MAX_GENERATORS} generators"
        )));
    }
    AlgebraSpec::new(
        format!("cl({p},{q})"),
        SpecKind::Clifford { p, q },
        Box::new(CliffordRule::new(p, q)),
    )
}

pub fn real() -> AlgebraSpec {
    clifford(0, 0).expect("Cl(0,0)")
}

pub fn complex() -> AlgebraSpec {
    clifford(0, 1).expect("Cl(0,1)")
}

/// Quaternions as Cl(0,2): `i = g1`, `j = g2`, `k = g1g2`.
pub fn quat() -> AlgebraSpec {
    clifford(0, 2).expect("Cl(0,2)")
}

/// Bitset of each canonical basis position, for relabelling against other
/// constructions of the same algebra.
pub fn blade_masks(p: usize, q: usize) -> Vec<u32> {
    CliffordRule::new(p, q).order
}
