use crate::algebra::{AlgebraSpec, BasisLabel, MonomialRule, Sign, SpecKind};
use crate::error::{Error, Result};

/// `A ⊗ A'` on the basis `e_i ⊗ e'_j`, position `i·d' + j` (right factor
/// fastest).
#[derive(Debug)]
struct TensorRule {
    left: AlgebraSpec,
    right: AlgebraSpec,
    d_left: usize,
    d_right: usize,
}

impl TensorRule {
    fn split(&self, a: &BasisLabel) -> (BasisLabel, BasisLabel) {
        let k = a.as_index();
        (
            self.left.label_at(k / self.d_right).expect("in range"),
            self.right.label_at(k % self.d_right).expect("in range"),
        )
    }

    fn join(&self, l: &BasisLabel, r: &BasisLabel) -> BasisLabel {
        let i = self.left.index_of(l).expect("left label");
        let j = self.right.index_of(r).expect("right label");
        BasisLabel::index(i * self.d_right + j)
    }
}

impl MonomialRule for TensorRule {
    fn dim(&self) -> Option<usize> {
        Some(self.d_left * self.d_right)
    }

    fn unit(&self) -> BasisLabel {
        self.join(&self.left.unit(), &self.right.unit())
    }

    fn mul(&self, a: &BasisLabel, b: &BasisLabel) -> (Sign, BasisLabel) {
        let (a1, a2) = self.split(a);
        let (b1, b2) = self.split(b);
        let (s1, c1) = self.left.mul_labels(&a1, &b1);
        let (s2, c2) = self.right.mul_labels(&a2, &b2);
        (s1 * s2, self.join(&c1, &c2))
    }

    fn inverse(&self, a: &BasisLabel) -> (Sign, BasisLabel) {
        let (a1, a2) = self.split(a);
        let (s1, c1) = self.left.conj_label(&a1);
        let (s2, c2) = self.right.conj_label(&a2);
        (s1 * s2, self.join(&c1, &c2))
    }

    fn contains(&self, a: &BasisLabel) -> bool {
        a.as_slice().len() == 1
            && a.as_slice()[0] >= 0
            && (a.as_slice()[0] as usize) < self.d_left * self.d_right
    }

    fn render(&self, a: &BasisLabel) -> String {
        let (l, r) = self.split(a);
        format!("{}|{}", self.left.render(&l), self.right.render(&r))
    }

    fn parse(&self, s: &str) -> Option<BasisLabel> {
        let (l, r) = s.split_once('|')?;
        let l = self.left.parse_label(l).ok()?;
        let r = self.right.parse_label(r).ok()?;
        Some(self.join(&l, &r))
    }
}

/// Tensor product of two finite signed-monomial algebras.
pub fn tensor(left: &AlgebraSpec, right: &AlgebraSpec) -> Result<AlgebraSpec> {
    let d_left = left.finite_dim()?;
    let d_right = right.finite_dim()?;
    AlgebraSpec::new(
        format!("tensor({},{})", left.descriptor(), right.descriptor()),
        SpecKind::Tensor,
        Box::new(TensorRule {
            left: left.clone(),
            right: right.clone(),
            d_left,
            d_right,
        }),
    )
}

/// `A ⊕ A'` on the basis `e_i ⊕ ±e'_i`: position `2i` is `e_i ⊕ e'_i`,
/// position `2i+1` is `e_i ⊕ −e'_i`.
#[derive(Debug)]
struct DirectSumRule {
    left: AlgebraSpec,
    right: AlgebraSpec,
    d: usize,
}

impl DirectSumRule {
    fn make(&self, k: usize, sign_left: Sign, sign_right: Sign, twist: bool) -> (Sign, BasisLabel) {
        // sign_left·e_k ⊕ sign_right·e'_k = sign_left·(e_k ⊕ ±e'_k)
        let minus = (sign_left != sign_right) ^ twist;
        (sign_left, BasisLabel::index(2 * k + usize::from(minus)))
    }
}

impl MonomialRule for DirectSumRule {
    fn dim(&self) -> Option<usize> {
        Some(2 * self.d)
    }

    fn unit(&self) -> BasisLabel {
        BasisLabel::index(2 * self.left.index_of(&self.left.unit()).expect("unit"))
    }

    fn mul(&self, a: &BasisLabel, b: &BasisLabel) -> (Sign, BasisLabel) {
        let (ia, ta) = (a.as_index() / 2, a.as_index() % 2 == 1);
        let (ib, tb) = (b.as_index() / 2, b.as_index() % 2 == 1);
        let (la, lb) = (
            self.left.label_at(ia).expect("range"),
            self.left.label_at(ib).expect("range"),
        );
        let (s, k) = self.left.mul_labels(&la, &lb);
        let (s2, _) = self.right.mul_labels(
            &self.right.label_at(ia).expect("range"),
            &self.right.label_at(ib).expect("range"),
        );
        self.make(self.left.index_of(&k).expect("label"), s, s2, ta ^ tb)
    }

    fn inverse(&self, a: &BasisLabel) -> (Sign, BasisLabel) {
        let (i, t) = (a.as_index() / 2, a.as_index() % 2 == 1);
        let (s, k) = self.left.conj_label(&self.left.label_at(i).expect("range"));
        let (s2, _) = self
            .right
            .conj_label(&self.right.label_at(i).expect("range"));
        self.make(self.left.index_of(&k).expect("label"), s, s2, t)
    }

    fn contains(&self, a: &BasisLabel) -> bool {
        a.as_slice().len() == 1 && a.as_slice()[0] >= 0 && (a.as_slice()[0] as usize) < 2 * self.d
    }

    fn render(&self, a: &BasisLabel) -> String {
        let i = a.as_index() / 2;
        let l = self.left.render(&self.left.label_at(i).expect("range"));
        let r = self.right.render(&self.right.label_at(i).expect("range"));
        if a.as_index().is_multiple_of(2) {
            format!("{l}(+){r}")
        } else {
            format!("{l}(-){r}")
        }
    }

    fn parse(&self, s: &str) -> Option<BasisLabel> {
        let (l, minus) = match s.split_once("(+)") {
            Some((l, _)) => (l, false),
            None => (s.split_once("(-)")?.0, true),
        };
        let i = self.left.index_of(&self.left.parse_label(l).ok()?)?;
        Some(BasisLabel::index(2 * i + usize::from(minus)))
    }
}

/// Direct sum of two algebras of equal dimension on the basis
/// `{e_i ⊕ e'_i, e_i ⊕ −e'_i}`.
///
/// The basis stays signed-monomial only when both factors have the same
/// product index pattern (signs may differ); anything else is rejected.
pub fn direct_sum_pm(left: &AlgebraSpec, right: &AlgebraSpec) -> Result<AlgebraSpec> {
    let d = left.finite_dim()?;
    let d2 = right.finite_dim()?;
    if d != d2 {
        return Err(Error::dimension(format!(
            "direct_sum_pm needs equal dimensions, got {d} and {d2}"
        )));
    }
    if left.index_of(&left.unit()) != right.index_of(&right.unit()) {
        return Err(Error::Construction(
            "units sit at different basis positions".into(),
        ));
    }
    for i in 0..d {
        let (li, ri) = (left.label_at(i).unwrap(), right.label_at(i).unwrap());
        if left.index_of(&left.conj_label(&li).1) != right.index_of(&right.conj_label(&ri).1) {
            return Err(Error::Construction("involution patterns differ".into()));
        }
        for j in 0..d {
            let (lj, rj) = (left.label_at(j).unwrap(), right.label_at(j).unwrap());
            if left.index_of(&left.mul_labels(&li, &lj).1)
                != right.index_of(&right.mul_labels(&ri, &rj).1)
            {
                return Err(Error::Construction(format!(
                    "product patterns differ at basis pair ({i},{j})"
                )));
            }
        }
    }
    AlgebraSpec::new(
        format!("sum({},{})", left.descriptor(), right.descriptor()),
        SpecKind::DirectSum,
        Box::new(DirectSumRule {
            left: left.clone(),
            right: right.clone(),
            d,
        }),
    )
}
