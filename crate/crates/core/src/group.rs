//! Structural lattice-ordered groups.
//!
//! A [`GroupExpr`] describes a group built from `Z`, the trivial group, the
//! integer Heisenberg group and lexicographic or direct products. Elements are
//! flat coordinate vectors; the expression decides how the coordinates are
//! grouped, added and ordered. All arithmetic is checked 64-bit arithmetic and
//! reports [`Error::Overflow`] instead of wrapping.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub(crate) type Coords = SmallVec<[i64; 6]>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupExpr {
    /// The one-element group `O`.
    Trivial,
    /// The integers with their natural order.
    Z,
    /// Lexicographic product: compare heads first, tails on ties.
    Lex(Box<GroupExpr>, Box<GroupExpr>),
    /// Direct product with the coordinatewise order.
    Direct(Vec<GroupExpr>),
    /// Integer Heisenberg group `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')`
    /// with the lexicographic order on `(a,b,c)`.
    Heis,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement(Coords);

impl GroupElement {
    pub fn new(coords: impl IntoIterator<Item = i64>) -> Self {
        GroupElement(coords.into_iter().collect())
    }

    pub fn zero(dim: usize) -> Self {
        GroupElement(smallvec::smallvec![0; dim])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Sum of absolute values of the coordinates.
    pub fn size(&self) -> u64 {
        self.0.iter().map(|c| c.unsigned_abs()).sum()
    }

    /// The first `n` coordinates.
    pub fn prefix(&self, n: usize) -> GroupElement {
        GroupElement(self.0[..n].iter().copied().collect())
    }

    /// Coordinates from `n` on.
    pub fn suffix(&self, n: usize) -> GroupElement {
        GroupElement(self.0[n..].iter().copied().collect())
    }

    pub fn concat(&self, other: &GroupElement) -> GroupElement {
        GroupElement(self.0.iter().chain(other.0.iter()).copied().collect())
    }
}

impl From<Vec<i64>> for GroupElement {
    fn from(v: Vec<i64>) -> Self {
        GroupElement(v.into_iter().collect())
    }
}

impl<const N: usize> From<[i64; N]> for GroupElement {
    fn from(v: [i64; N]) -> Self {
        GroupElement(v.into_iter().collect())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [single] = self.0.as_slice() {
            return write!(f, "{single}");
        }
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

fn neg(a: i64) -> Result<i64> {
    a.checked_neg().ok_or(Error::Overflow)
}

fn combine(a: Option<Ordering>, b: Option<Ordering>) -> Option<Ordering> {
    use Ordering::*;
    match (a?, b?) {
        (Equal, o) | (o, Equal) => Some(o),
        (Less, Less) => Some(Less),
        (Greater, Greater) => Some(Greater),
        _ => None,
    }
}

impl GroupExpr {
    pub fn lex(head: GroupExpr, tail: GroupExpr) -> GroupExpr {
        GroupExpr::Lex(Box::new(head), Box::new(tail))
    }

    /// Direct product; an empty product is `Trivial` and a single factor is
    /// returned unchanged.
    pub fn direct(factors: Vec<GroupExpr>) -> GroupExpr {
        match factors.len() {
            0 => GroupExpr::Trivial,
            1 => factors.into_iter().next().unwrap(),
            _ => GroupExpr::Direct(factors),
        }
    }

    /// Number of integer coordinates of an element.
    pub fn dim(&self) -> usize {
        match self {
            GroupExpr::Trivial => 0,
            GroupExpr::Z => 1,
            GroupExpr::Heis => 3,
            GroupExpr::Lex(h, t) => h.dim() + t.dim(),
            GroupExpr::Direct(fs) => fs.iter().map(GroupExpr::dim).sum(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.dim() == 0
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement::zero(self.dim())
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            GroupExpr::Trivial | GroupExpr::Z => true,
            GroupExpr::Heis => false,
            GroupExpr::Lex(h, t) => h.is_abelian() && t.is_abelian(),
            GroupExpr::Direct(fs) => fs.iter().all(GroupExpr::is_abelian),
        }
    }

    /// True when the order is total.
    pub fn is_linear(&self) -> bool {
        match self {
            GroupExpr::Trivial | GroupExpr::Z | GroupExpr::Heis => true,
            GroupExpr::Lex(h, t) => h.is_linear() && t.is_linear(),
            GroupExpr::Direct(fs) => {
                let mut nontrivial = fs.iter().filter(|f| !f.is_trivial());
                match (nontrivial.next(), nontrivial.next()) {
                    (None, _) => true,
                    (Some(f), None) => f.is_linear(),
                    _ => false,
                }
            }
        }
    }

    /// Rejects lexicographic products that are not lattice ordered: a
    /// non-trivial tail requires a linearly ordered head.
    pub fn validate(&self) -> Result<()> {
        match self {
            GroupExpr::Trivial | GroupExpr::Z | GroupExpr::Heis => Ok(()),
            GroupExpr::Lex(h, t) => {
                h.validate()?;
                t.validate()?;
                if !t.is_trivial() && !h.is_linear() {
                    return Err(Error::InvalidGroup(format!(
                        "lexicographic product {self} needs a linearly ordered head"
                    )));
                }
                Ok(())
            }
            GroupExpr::Direct(fs) => fs.iter().try_for_each(GroupExpr::validate),
        }
    }

    /// Factors of the lexicographic chain, with trivial factors dropped.
    pub fn lex_chain(&self) -> Vec<&GroupExpr> {
        match self {
            GroupExpr::Lex(h, t) => {
                let mut chain = h.lex_chain();
                chain.extend(t.lex_chain());
                chain
            }
            g if g.is_trivial() => Vec::new(),
            g => vec![g],
        }
    }

    /// Explicit normal form: removes trivial lexicographic and direct factors
    /// and re-associates lexicographic chains to the right.
    pub fn flatten(&self) -> GroupExpr {
        match self {
            GroupExpr::Lex(..) => {
                let mut chain: Vec<GroupExpr> =
                    self.lex_chain().into_iter().map(GroupExpr::flatten).collect();
                let Some(mut acc) = chain.pop() else {
                    return GroupExpr::Trivial;
                };
                while let Some(h) = chain.pop() {
                    acc = GroupExpr::lex(h, acc);
                }
                acc
            }
            GroupExpr::Direct(fs) => GroupExpr::direct(
                fs.iter()
                    .filter(|f| !f.is_trivial())
                    .map(GroupExpr::flatten)
                    .collect(),
            ),
            g if g.is_trivial() => GroupExpr::Trivial,
            g => g.clone(),
        }
    }

    fn check_shape(&self, x: &GroupElement) -> Result<()> {
        let expected = self.dim();
        if x.dim() != expected {
            return Err(Error::ShapeMismatch {
                expected,
                found: x.dim(),
            });
        }
        Ok(())
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check_shape(x)?;
        self.check_shape(y)?;
        let mut out = Coords::new();
        self.add_into(&x.0, &y.0, &mut out)?;
        Ok(GroupElement(out))
    }

    fn add_into(&self, x: &[i64], y: &[i64], out: &mut Coords) -> Result<()> {
        match self {
            GroupExpr::Trivial => Ok(()),
            GroupExpr::Z => {
                out.push(add(x[0], y[0])?);
                Ok(())
            }
            GroupExpr::Heis => {
                out.push(add(x[0], y[0])?);
                out.push(add(x[1], y[1])?);
                out.push(add(add(x[2], y[2])?, mul(x[0], y[1])?)?);
                Ok(())
            }
            GroupExpr::Lex(h, t) => {
                let k = h.dim();
                h.add_into(&x[..k], &y[..k], out)?;
                t.add_into(&x[k..], &y[k..], out)
            }
            GroupExpr::Direct(fs) => {
                let mut at = 0;
                for f in fs {
                    let k = f.dim();
                    f.add_into(&x[at..at + k], &y[at..at + k], out)?;
                    at += k;
                }
                Ok(())
            }
        }
    }

    pub fn neg(&self, x: &GroupElement) -> Result<GroupElement> {
        self.check_shape(x)?;
        let mut out = Coords::new();
        self.neg_into(&x.0, &mut out)?;
        Ok(GroupElement(out))
    }

    fn neg_into(&self, x: &[i64], out: &mut Coords) -> Result<()> {
        match self {
            GroupExpr::Trivial => Ok(()),
            GroupExpr::Z => {
                out.push(neg(x[0])?);
                Ok(())
            }
            GroupExpr::Heis => {
                // (a,b,c)^-1 = (-a, -b, -c + ab)
                out.push(neg(x[0])?);
                out.push(neg(x[1])?);
                out.push(add(neg(x[2])?, mul(x[0], x[1])?)?);
                Ok(())
            }
            GroupExpr::Lex(h, t) => {
                let k = h.dim();
                h.neg_into(&x[..k], out)?;
                t.neg_into(&x[k..], out)
            }
            GroupExpr::Direct(fs) => {
                let mut at = 0;
                for f in fs {
                    let k = f.dim();
                    f.neg_into(&x[at..at + k], out)?;
                    at += k;
                }
                Ok(())
            }
        }
    }

    /// Right difference `x + (-y)`.
    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.add(x, &self.neg(y)?)
    }

    /// Left difference `(-y) + x`.
    pub fn sub_left(&self, y: &GroupElement, x: &GroupElement) -> Result<GroupElement> {
        self.add(&self.neg(y)?, x)
    }

    /// Order comparison; `None` means incomparable.
    pub fn compare(&self, x: &GroupElement, y: &GroupElement) -> Result<Option<Ordering>> {
        self.check_shape(x)?;
        self.check_shape(y)?;
        Ok(self.compare_at(&x.0, &y.0))
    }

    fn compare_at(&self, x: &[i64], y: &[i64]) -> Option<Ordering> {
        match self {
            GroupExpr::Trivial => Some(Ordering::Equal),
            GroupExpr::Z | GroupExpr::Heis => Some(x.cmp(y)),
            GroupExpr::Lex(h, t) => {
                let k = h.dim();
                match h.compare_at(&x[..k], &y[..k]) {
                    Some(Ordering::Equal) => t.compare_at(&x[k..], &y[k..]),
                    other => other,
                }
            }
            GroupExpr::Direct(fs) => {
                let mut at = 0;
                let mut acc = Some(Ordering::Equal);
                for f in fs {
                    let k = f.dim();
                    acc = combine(acc, f.compare_at(&x[at..at + k], &y[at..at + k]));
                    acc?;
                    at += k;
                }
                acc
            }
        }
    }

    pub fn le(&self, x: &GroupElement, y: &GroupElement) -> Result<bool> {
        Ok(matches!(
            self.compare(x, y)?,
            Some(Ordering::Less | Ordering::Equal)
        ))
    }

    pub fn lt(&self, x: &GroupElement, y: &GroupElement) -> Result<bool> {
        Ok(self.compare(x, y)? == Some(Ordering::Less))
    }

    pub fn meet(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.lattice_op(x, y, Ordering::Less)
    }

    pub fn join(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.lattice_op(x, y, Ordering::Greater)
    }

    fn lattice_op(&self, x: &GroupElement, y: &GroupElement, pick: Ordering) -> Result<GroupElement> {
        self.check_shape(x)?;
        self.check_shape(y)?;
        let mut out = Coords::new();
        self.lattice_into(&x.0, &y.0, pick, &mut out)?;
        Ok(GroupElement(out))
    }

    /// `pick == Less` computes the meet, `Greater` the join.
    fn lattice_into(&self, x: &[i64], y: &[i64], pick: Ordering, out: &mut Coords) -> Result<()> {
        match self {
            GroupExpr::Trivial => Ok(()),
            GroupExpr::Z | GroupExpr::Heis => {
                let chosen = if x.cmp(y) == pick { x } else { y };
                out.extend_from_slice(chosen);
                Ok(())
            }
            GroupExpr::Lex(h, t) => {
                let k = h.dim();
                if t.is_trivial() {
                    return h.lattice_into(&x[..k], &y[..k], pick, out);
                }
                match h.compare_at(&x[..k], &y[..k]) {
                    Some(Ordering::Equal) => {
                        out.extend_from_slice(&x[..k]);
                        t.lattice_into(&x[k..], &y[k..], pick, out)
                    }
                    Some(o) => {
                        out.extend_from_slice(if o == pick { x } else { y });
                        Ok(())
                    }
                    None => Err(Error::NotLattice(self.to_string())),
                }
            }
            GroupExpr::Direct(fs) => {
                let mut at = 0;
                for f in fs {
                    let k = f.dim();
                    f.lattice_into(&x[at..at + k], &y[at..at + k], pick, out)?;
                    at += k;
                }
                Ok(())
            }
        }
    }

    /// Whether `u` is a strong unit, i.e. every element lies in some `[-nu, nu]`.
    /// Errors when `u` is not positive.
    pub fn is_strong_unit(&self, u: &GroupElement) -> Result<bool> {
        if !self.le(&self.zero(), u)? {
            return Err(Error::NotPositive(u.to_string()));
        }
        Ok(self.strong_at(&u.0))
    }

    fn strong_at(&self, u: &[i64]) -> bool {
        match self {
            GroupExpr::Trivial => true,
            GroupExpr::Z => u[0] > 0,
            // (0,b,c) stays below (1,0,0) for every multiple
            GroupExpr::Heis => u[0] > 0,
            GroupExpr::Lex(h, t) => {
                let k = h.dim();
                if h.is_trivial() {
                    t.strong_at(&u[k..])
                } else {
                    h.strong_at(&u[..k])
                }
            }
            GroupExpr::Direct(fs) => {
                let mut at = 0;
                fs.iter().all(|f| {
                    let k = f.dim();
                    let ok = f.strong_at(&u[at..at + k]);
                    at += k;
                    ok
                })
            }
        }
    }

    /// Whether `x` commutes with every element of the group.
    pub fn in_center(&self, x: &GroupElement) -> Result<bool> {
        self.check_shape(x)?;
        Ok(self.center_at(&x.0))
    }

    fn center_at(&self, x: &[i64]) -> bool {
        match self {
            GroupExpr::Trivial | GroupExpr::Z => true,
            GroupExpr::Heis => x[0] == 0 && x[1] == 0,
            GroupExpr::Lex(h, t) => {
                let k = h.dim();
                h.center_at(&x[..k]) && t.center_at(&x[k..])
            }
            GroupExpr::Direct(fs) => {
                let mut at = 0;
                fs.iter().all(|f| {
                    let k = f.dim();
                    let ok = f.center_at(&x[at..at + k]);
                    at += k;
                    ok
                })
            }
        }
    }

    /// All elements of the order interval `[lo, hi]` whose coordinates lie in
    /// `[-bound, bound]`, in lexicographic order of the coordinate vectors.
    pub fn enumerate_window(
        &self,
        lo: &GroupElement,
        hi: &GroupElement,
        bound: i64,
    ) -> Result<Vec<GroupElement>> {
        if bound < 0 {
            return Err(Error::NegativeBound(bound));
        }
        self.check_shape(lo)?;
        self.check_shape(hi)?;
        let dim = self.dim();
        let mut out = Vec::new();
        let mut current: Coords = smallvec::smallvec![-bound; dim];
        loop {
            let x = GroupElement(current.clone());
            if self.le(lo, &x)? && self.le(&x, hi)? {
                out.push(x);
            }
            // odometer increment, last coordinate fastest
            let mut i = dim;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if current[i] < bound {
                    current[i] += 1;
                    break;
                }
                current[i] = -bound;
            }
        }
    }

    /// Splits the coordinates after the first `j`: returns the group carried by
    /// the first `j` coordinates (the quotient by the kernel of the projection)
    /// and the subgroup of elements whose first `j` coordinates vanish.
    pub fn split_at(&self, j: usize) -> Result<(GroupExpr, GroupExpr)> {
        let dim = self.dim();
        if j > dim {
            return Err(Error::InvalidGroup(format!(
                "cannot split {self} after {j} of {dim} coordinates"
            )));
        }
        if j == 0 {
            return Ok((GroupExpr::Trivial, self.clone()));
        }
        if j == dim {
            return Ok((self.clone(), GroupExpr::Trivial));
        }
        Ok(match self {
            GroupExpr::Trivial | GroupExpr::Z => unreachable!("handled by the bounds above"),
            GroupExpr::Heis => match j {
                1 => (GroupExpr::Z, GroupExpr::lex(GroupExpr::Z, GroupExpr::Z)),
                _ => (GroupExpr::lex(GroupExpr::Z, GroupExpr::Z), GroupExpr::Z),
            },
            GroupExpr::Lex(h, t) => {
                let k = h.dim();
                if j <= k {
                    let (hp, hs) = h.split_at(j)?;
                    let tail = if hs.is_trivial() {
                        (**t).clone()
                    } else {
                        GroupExpr::lex(hs, (**t).clone())
                    };
                    (hp, tail)
                } else {
                    let (tp, ts) = t.split_at(j - k)?;
                    (GroupExpr::lex((**h).clone(), tp), ts)
                }
            }
            GroupExpr::Direct(fs) => {
                let mut head = Vec::new();
                let mut tail = Vec::new();
                let mut remaining = j;
                for f in fs {
                    let k = f.dim();
                    if remaining >= k {
                        head.push(f.clone());
                        remaining -= k;
                    } else if remaining > 0 {
                        let (fp, fs) = f.split_at(remaining)?;
                        head.push(fp);
                        tail.push(fs);
                        remaining = 0;
                    } else {
                        tail.push(f.clone());
                    }
                }
                (GroupExpr::direct(head), GroupExpr::direct(tail))
            }
        })
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Trivial => f.write_str("O"),
            GroupExpr::Z => f.write_str("Z"),
            GroupExpr::Heis => f.write_str("Heis"),
            GroupExpr::Lex(h, t) => {
                // lex is left-associative, so only a lex tail needs parentheses
                write!(f, "{h} lex ")?;
                match **t {
                    GroupExpr::Lex(..) => write!(f, "({t})"),
                    _ => write!(f, "{t}"),
                }
            }
            GroupExpr::Direct(fs) => {
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    match g {
                        GroupExpr::Lex(..) | GroupExpr::Direct(_) => write!(f, "({g})")?,
                        _ => write!(f, "{g}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

/// A group together with a strong unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnitalGroup {
    expr: GroupExpr,
    unit: GroupElement,
}

impl UnitalGroup {
    pub fn new(expr: GroupExpr, unit: GroupElement) -> Result<Self> {
        expr.validate()?;
        expr.check_shape(&unit)?;
        if !expr.is_strong_unit(&unit)? {
            return Err(Error::NotStrongUnit {
                group: expr.to_string(),
                unit: unit.to_string(),
            });
        }
        Ok(UnitalGroup { expr, unit })
    }

    pub fn expr(&self) -> &GroupExpr {
        &self.expr
    }

    pub fn unit(&self) -> &GroupElement {
        &self.unit
    }
}

impl fmt::Display for UnitalGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.expr, self.unit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e<const N: usize>(c: [i64; N]) -> GroupElement {
        GroupElement::from(c)
    }

    fn zz() -> GroupExpr {
        GroupExpr::lex(GroupExpr::Z, GroupExpr::Z)
    }

    #[test]
    fn heisenberg_product_and_inverse() {
        let h = GroupExpr::Heis;
        assert_eq!(h.add(&e([0, 1, 0]), &e([0, 0, 5])).unwrap(), e([0, 1, 5]));
        assert_eq!(h.add(&e([1, 0, 0]), &e([0, 1, 0])).unwrap(), e([1, 1, 1]));
        assert_eq!(h.add(&e([0, 1, 0]), &e([1, 0, 0])).unwrap(), e([1, 1, 0]));
        assert_eq!(h.neg(&e([0, 1, 0])).unwrap(), e([0, -1, 0]));
        assert_eq!(h.neg(&e([1, 1, 0])).unwrap(), e([-1, -1, 1]));
    }

    #[test]
    fn abelian_sums() {
        assert_eq!(zz().add(&e([1, 2]), &e([0, -3])).unwrap(), e([1, -1]));
        assert_eq!(GroupExpr::Z.neg(&e([5])).unwrap(), e([-5]));
        for g in [zz(), GroupExpr::Heis, GroupExpr::Z] {
            let x = GroupElement::new((1..=g.dim() as i64).collect::<Vec<_>>());
            assert_eq!(g.add(&x, &g.zero()).unwrap(), x);
        }
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        assert_eq!(
            zz().add(&e([1]), &e([1, 2])),
            Err(Error::ShapeMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn overflow_is_reported() {
        let z = GroupExpr::Z;
        assert_eq!(z.add(&e([i64::MAX]), &e([1])), Err(Error::Overflow));
        assert_eq!(z.neg(&e([i64::MIN])), Err(Error::Overflow));
    }

    #[test]
    fn orders() {
        assert_eq!(zz().compare(&e([0, 7]), &e([1, -100])).unwrap(), Some(Ordering::Less));
        let zxz = GroupExpr::direct(vec![GroupExpr::Z, GroupExpr::Z]);
        assert_eq!(zxz.compare(&e([1, 3]), &e([2, 0])).unwrap(), None);
        assert_eq!(
            GroupExpr::Heis.compare(&e([0, 1, 0]), &e([1, 0, 0])).unwrap(),
            Some(Ordering::Less)
        );
    }

    #[test]
    fn lattice_operations() {
        let zxz = GroupExpr::direct(vec![GroupExpr::Z, GroupExpr::Z]);
        assert_eq!(zxz.meet(&e([1, 3]), &e([2, 0])).unwrap(), e([1, 0]));
        assert_eq!(zxz.join(&e([1, 3]), &e([2, 0])).unwrap(), e([2, 3]));
        assert_eq!(zz().meet(&e([1, 5]), &e([2, 1])).unwrap(), e([1, 5]));
        assert_eq!(GroupExpr::Heis.join(&e([0, 1, 0]), &e([0, 0, 9])).unwrap(), e([0, 1, 0]));
        let bad = GroupExpr::lex(zxz, GroupExpr::Z);
        assert!(matches!(bad.meet(&e([1, 0, 0]), &e([0, 1, 0])), Err(Error::NotLattice(_))));
    }

    #[test]
    fn linearity() {
        assert!(GroupExpr::lex(GroupExpr::Z, zz()).is_linear());
        assert!(!GroupExpr::direct(vec![GroupExpr::Z, GroupExpr::Z]).is_linear());
        assert!(GroupExpr::Heis.is_linear());
        assert!(GroupExpr::Direct(vec![GroupExpr::Trivial, GroupExpr::Z]).is_linear());
    }

    #[test]
    fn validation_rejects_nonlinear_heads() {
        let zxz = GroupExpr::direct(vec![GroupExpr::Z, GroupExpr::Z]);
        assert!(GroupExpr::lex(zxz.clone(), GroupExpr::Z).validate().is_err());
        assert!(GroupExpr::lex(zxz.clone(), GroupExpr::Trivial).validate().is_ok());
        assert!(GroupExpr::lex(GroupExpr::Z, zxz).validate().is_ok());
        assert_eq!(GroupExpr::direct(vec![]), GroupExpr::Trivial);
    }

    #[test]
    fn strong_units() {
        assert!(zz().is_strong_unit(&e([1, -5])).unwrap());
        assert!(!zz().is_strong_unit(&e([0, 1])).unwrap());
        assert!(GroupExpr::Z.is_strong_unit(&e([2])).unwrap());
        assert!(!GroupExpr::Heis.is_strong_unit(&e([0, 0, 5])).unwrap());
        assert!(GroupExpr::Heis.is_strong_unit(&e([1, -4, 2])).unwrap());
        assert!(matches!(GroupExpr::Z.is_strong_unit(&e([-1])), Err(Error::NotPositive(_))));
    }

    #[test]
    fn center() {
        assert!(GroupExpr::Heis.in_center(&e([0, 0, 7])).unwrap());
        assert!(!GroupExpr::Heis.in_center(&e([1, 0, 0])).unwrap());
        assert!(GroupExpr::Z.in_center(&e([5])).unwrap());
    }

    #[test]
    fn windows() {
        let z = GroupExpr::Z;
        assert_eq!(z.enumerate_window(&e([0]), &e([2]), 2).unwrap(), vec![e([0]), e([1]), e([2])]);
        assert_eq!(
            zz().enumerate_window(&e([0, 0]), &e([1, 0]), 1).unwrap(),
            vec![e([0, 0]), e([0, 1]), e([1, -1]), e([1, 0])]
        );
        let t = GroupExpr::Trivial;
        assert_eq!(t.enumerate_window(&t.zero(), &t.zero(), 3).unwrap(), vec![t.zero()]);
        assert_eq!(z.enumerate_window(&e([0]), &e([1]), -1), Err(Error::NegativeBound(-1)));
    }

    #[test]
    fn splitting() {
        let g = GroupExpr::lex(GroupExpr::Z, zz());
        assert_eq!(g.split_at(1).unwrap(), (GroupExpr::Z, zz()));
        assert_eq!(g.split_at(2).unwrap(), (zz(), GroupExpr::Z));
        let h = GroupExpr::lex(GroupExpr::Z, GroupExpr::Heis);
        assert_eq!(h.split_at(1).unwrap(), (GroupExpr::Z, GroupExpr::Heis));
        assert_eq!(GroupExpr::Heis.split_at(1).unwrap(), (GroupExpr::Z, zz()));
        let lz = GroupExpr::lex(zz(), GroupExpr::Heis);
        assert_eq!(lz.split_at(2).unwrap(), (zz(), GroupExpr::Heis));
    }

    #[test]
    fn flatten_normalizes() {
        let g = GroupExpr::lex(zz(), GroupExpr::Trivial);
        assert_eq!(g.flatten(), zz());
        let left = GroupExpr::lex(zz(), GroupExpr::Z);
        assert_eq!(left.flatten(), GroupExpr::lex(GroupExpr::Z, zz()));
    }
}
