//! The pseudo MV-algebra `Γ(G,u)` on the interval `[0,u]` of a unital
//! lattice-ordered group.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupExpr, UnitalGroup};
use crate::report::{witness, Bounds, CheckRecord, Report, Witness};
use crate::window::{search_1, search_2, search_3, Window};

/// The operations of a pseudo MV-algebra on group elements.
///
/// [`PmvAlgebra`] is the real implementation; the axiom checkers are generic
/// so that deliberately broken structures can be run through them too.
pub trait MvOps {
    fn zero(&self) -> GroupElement;
    fn one(&self) -> GroupElement;
    fn oplus(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement>;
    fn odot(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement>;
    fn lneg(&self, x: &GroupElement) -> Result<GroupElement>;
    fn rneg(&self, x: &GroupElement) -> Result<GroupElement>;
    fn join(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement>;
    fn meet(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement>;
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PmvAlgebra {
    group: UnitalGroup,
}

impl PmvAlgebra {
    pub fn new(expr: GroupExpr, unit: GroupElement) -> Result<Self> {
        Ok(PmvAlgebra {
            group: UnitalGroup::new(expr, unit)?,
        })
    }

    pub fn from_group(group: UnitalGroup) -> Self {
        PmvAlgebra { group }
    }

    pub fn group(&self) -> &UnitalGroup {
        &self.group
    }

    pub fn expr(&self) -> &GroupExpr {
        self.group.expr()
    }

    pub fn unit(&self) -> &GroupElement {
        self.group.unit()
    }

    pub fn dim(&self) -> usize {
        self.expr().dim()
    }

    /// `0 <= x <= u`.
    pub fn contains(&self, x: &GroupElement) -> bool {
        let g = self.expr();
        x.dim() == g.dim()
            && g.le(&g.zero(), x).unwrap_or(false)
            && g.le(x, self.unit()).unwrap_or(false)
    }

    pub fn check_member(&self, x: &GroupElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::NotMember {
                element: x.to_string(),
                algebra: self.to_string(),
            })
        }
    }

    pub fn element(&self, value: GroupElement) -> Result<PmvElement<'_>> {
        self.check_member(&value)?;
        Ok(PmvElement { algebra: self, value })
    }

    /// Members with coordinates in `[-bound, bound]`, plus `0` and `u`.
    pub fn window(&self, bound: i64) -> Result<Window> {
        let g = self.expr();
        let mut elems = g.enumerate_window(&g.zero(), self.unit(), bound)?;
        elems.push(g.zero());
        elems.push(self.unit().clone());
        Ok(Window::new(bound, elems))
    }

    /// `x ⊕ y = (x + y) ∧ u`
    pub fn oplus(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        let g = self.expr();
        g.meet(&g.add(x, y)?, self.unit())
    }

    /// `x ⊙ y = (x - u + y) ∨ 0`
    pub fn odot(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        let g = self.expr();
        let s = g.add(&g.sub(x, self.unit())?, y)?;
        g.join(&s, &g.zero())
    }

    /// `x⁻ = u - x`
    pub fn lneg(&self, x: &GroupElement) -> Result<GroupElement> {
        self.expr().sub(self.unit(), x)
    }

    /// `x∼ = -x + u`
    pub fn rneg(&self, x: &GroupElement) -> Result<GroupElement> {
        self.expr().sub_left(x, self.unit())
    }

    pub fn join(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.expr().join(x, y)
    }

    pub fn meet(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.expr().meet(x, y)
    }

    pub fn le(&self, x: &GroupElement, y: &GroupElement) -> Result<bool> {
        self.expr().le(x, y)
    }

    /// `n·x` as an iterated partial sum; `None` once a partial sum is undefined.
    pub fn nat_multiple(&self, n: u32, x: &GroupElement) -> Result<Option<GroupElement>> {
        let mut acc = self.expr().zero();
        for _ in 0..n {
            match self.partial_add(&acc, x)? {
                Some(next) => acc = next,
                None => return Ok(None),
            }
        }
        Ok(Some(acc))
    }

    /// Bounded infinitesimality test, paired with the exact structural answer
    /// when the leading lexicographic factor is `Z` or `Heis`.
    pub fn is_infinitesimal(&self, x: &GroupElement, n_max: u32) -> Result<Infinitesimality> {
        if n_max == 0 {
            return Err(Error::Precondition("n_max must be at least 1".into()));
        }
        self.check_member(x)?;
        let mut bounded = true;
        let mut acc = self.expr().zero();
        for _ in 0..n_max {
            match self.partial_add(&acc, x)? {
                Some(next) => acc = next,
                None => {
                    bounded = false;
                    break;
                }
            }
        }
        let structural = match self.expr().lex_chain().first() {
            Some(GroupExpr::Z | GroupExpr::Heis) => Some(x.coords()[0] == 0),
            _ => None,
        };
        Ok(Infinitesimality {
            bounded,
            structural,
        })
    }
}

impl MvOps for PmvAlgebra {
    fn zero(&self) -> GroupElement {
        self.expr().zero()
    }
    fn one(&self) -> GroupElement {
        self.unit().clone()
    }
    fn oplus(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        PmvAlgebra::oplus(self, x, y)
    }
    fn odot(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        PmvAlgebra::odot(self, x, y)
    }
    fn lneg(&self, x: &GroupElement) -> Result<GroupElement> {
        PmvAlgebra::lneg(self, x)
    }
    fn rneg(&self, x: &GroupElement) -> Result<GroupElement> {
        PmvAlgebra::rneg(self, x)
    }
    fn join(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        PmvAlgebra::join(self, x, y)
    }
    fn meet(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        PmvAlgebra::meet(self, x, y)
    }
}

impl fmt::Display for PmvAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gamma({}, {})", self.expr(), self.unit())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Infinitesimality {
    /// `n·x` defined for every `n <= n_max`.
    pub bounded: bool,
    /// Leading coordinate is zero, when that rule applies.
    pub structural: Option<bool>,
}

impl Infinitesimality {
    pub fn agrees(&self) -> bool {
        self.structural.is_none_or(|s| s == self.bounded)
    }
}

/// A member of a specific algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PmvElement<'a> {
    algebra: &'a PmvAlgebra,
    value: GroupElement,
}

impl<'a> PmvElement<'a> {
    pub fn value(&self) -> &GroupElement {
        &self.value
    }

    pub fn algebra(&self) -> &'a PmvAlgebra {
        self.algebra
    }

    fn same(&self, other: &PmvElement<'_>) -> Result<()> {
        if std::ptr::eq(self.algebra, other.algebra) || self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    fn wrap(&self, value: GroupElement) -> PmvElement<'a> {
        PmvElement {
            algebra: self.algebra,
            value,
        }
    }

    pub fn oplus(&self, other: &PmvElement<'_>) -> Result<PmvElement<'a>> {
        self.same(other)?;
        Ok(self.wrap(self.algebra.oplus(&self.value, &other.value)?))
    }

    pub fn odot(&self, other: &PmvElement<'_>) -> Result<PmvElement<'a>> {
        self.same(other)?;
        Ok(self.wrap(self.algebra.odot(&self.value, &other.value)?))
    }

    pub fn lneg(&self) -> Result<PmvElement<'a>> {
        Ok(self.wrap(self.algebra.lneg(&self.value)?))
    }

    pub fn rneg(&self) -> Result<PmvElement<'a>> {
        Ok(self.wrap(self.algebra.rneg(&self.value)?))
    }

    pub fn join(&self, other: &PmvElement<'_>) -> Result<PmvElement<'a>> {
        self.same(other)?;
        Ok(self.wrap(self.algebra.join(&self.value, &other.value)?))
    }

    pub fn meet(&self, other: &PmvElement<'_>) -> Result<PmvElement<'a>> {
        self.same(other)?;
        Ok(self.wrap(self.algebra.meet(&self.value, &other.value)?))
    }
}

impl fmt::Display for PmvElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

fn differ(
    vars: &[(&str, &GroupElement)],
    lhs: &GroupElement,
    rhs: &GroupElement,
) -> Option<Witness> {
    if lhs == rhs {
        return None;
    }
    let mut w = witness(vars.iter().map(|(k, v)| (*k, *v)));
    w.insert("lhs".into(), lhs.to_string());
    w.insert("rhs".into(), rhs.to_string());
    Some(w)
}

/// Exhaustively checks (A1)-(A8), the derived `⊙`, the lattice operations
/// given by (A6)/(A7) and both distributive laws over the window.
pub fn check_axioms<A: MvOps + Sync>(alg: &A, window: &Window) -> Result<Report> {
    let xs = &window.elements;
    let b = Bounds::window(window.bound);
    let zero = alg.zero();
    let one = alg.one();
    let mut report = Report::new("axioms");

    let a1 = search_3(xs, |x, y, z| {
        let l = alg.oplus(x, &alg.oplus(y, z)?)?;
        let r = alg.oplus(&alg.oplus(x, y)?, z)?;
        Ok(differ(&[("x", x), ("y", y), ("z", z)], &l, &r))
    })?;
    report.push(CheckRecord::from_outcome("A1 associativity", b, a1));

    let a2 = search_1(xs, |x| {
        Ok(differ(&[("x", x)], &alg.oplus(x, &zero)?, x)
            .or(differ(&[("x", x)], &alg.oplus(&zero, x)?, x)))
    })?;
    report.push(CheckRecord::from_outcome("A2 zero", b, a2));

    let a3 = search_1(xs, |x| {
        Ok(differ(&[("x", x)], &alg.oplus(x, &one)?, &one)
            .or(differ(&[("x", x)], &alg.oplus(&one, x)?, &one)))
    })?;
    report.push(CheckRecord::from_outcome("A3 one", b, a3));

    let a4 = differ(&[], &alg.rneg(&one)?, &zero).or(differ(&[], &alg.lneg(&one)?, &zero));
    report.push(CheckRecord::from_outcome("A4 negated one", b, a4));

    let a5 = search_2(xs, xs, |x, y| {
        let l = alg.rneg(&alg.oplus(&alg.lneg(x)?, &alg.lneg(y)?)?)?;
        let r = alg.lneg(&alg.oplus(&alg.rneg(x)?, &alg.rneg(y)?)?)?;
        Ok(differ(&[("x", x), ("y", y)], &l, &r))
    })?;
    report.push(CheckRecord::from_outcome("A5 de Morgan", b, a5));

    let odot_def = search_2(xs, xs, |x, y| {
        // y ⊙ x = (x⁻ ⊕ y⁻)∼
        let l = alg.odot(y, x)?;
        let r = alg.rneg(&alg.oplus(&alg.lneg(x)?, &alg.lneg(y)?)?)?;
        Ok(differ(&[("x", x), ("y", y)], &l, &r))
    })?;
    report.push(CheckRecord::from_outcome("odot definition", b, odot_def));

    let a6 = search_2(xs, xs, |x, y| {
        let v = [("x", x), ("y", y)];
        let t1 = alg.oplus(x, &alg.odot(&alg.rneg(x)?, y)?)?;
        let t2 = alg.oplus(y, &alg.odot(&alg.rneg(y)?, x)?)?;
        let t3 = alg.oplus(&alg.odot(x, &alg.lneg(y)?)?, y)?;
        let t4 = alg.oplus(&alg.odot(y, &alg.lneg(x)?)?, x)?;
        Ok(differ(&v, &t1, &t2)
            .or_else(|| differ(&v, &t1, &t3))
            .or_else(|| differ(&v, &t1, &t4)))
    })?;
    report.push(CheckRecord::from_outcome("A6 join terms", b, a6));

    let a7 = search_2(xs, xs, |x, y| {
        let l = alg.odot(x, &alg.oplus(&alg.lneg(x)?, y)?)?;
        let r = alg.odot(&alg.oplus(x, &alg.rneg(y)?)?, y)?;
        Ok(differ(&[("x", x), ("y", y)], &l, &r))
    })?;
    report.push(CheckRecord::from_outcome("A7 meet terms", b, a7));

    let a8 = search_1(xs, |x| {
        Ok(differ(&[("x", x)], &alg.rneg(&alg.lneg(x)?)?, x)
            .or(differ(&[("x", x)], &alg.lneg(&alg.rneg(x)?)?, x)))
    })?;
    report.push(CheckRecord::from_outcome("A8 double negation", b, a8));

    let lattice = search_2(xs, xs, |x, y| {
        let v = [("x", x), ("y", y)];
        let join_term = alg.oplus(x, &alg.odot(&alg.rneg(x)?, y)?)?;
        let meet_term = alg.odot(x, &alg.oplus(&alg.lneg(x)?, y)?)?;
        Ok(differ(&v, &alg.join(x, y)?, &join_term).or(differ(&v, &alg.meet(x, y)?, &meet_term)))
    })?;
    report.push(CheckRecord::from_outcome("lattice matches A6/A7", b, lattice));

    let dist = search_3(xs, |x, y, z| {
        let v = [("x", x), ("y", y), ("z", z)];
        let l = alg.meet(x, &alg.join(y, z)?)?;
        let r = alg.join(&alg.meet(x, y)?, &alg.meet(x, z)?)?;
        let l2 = alg.join(x, &alg.meet(y, z)?)?;
        let r2 = alg.meet(&alg.join(x, y)?, &alg.join(x, z)?)?;
        Ok(differ(&v, &l, &r).or(differ(&v, &l2, &r2)))
    })?;
    report.push(CheckRecord::from_outcome("distributive lattice", b, dist));

    report.fact("window size", xs.len());
    Ok(report)
}

/// Outcome of the symmetry search: a witness `x⁻ ≠ x∼` and the independent
/// central-unit verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symmetry {
    pub witness: Option<GroupElement>,
    pub unit_central: bool,
}

impl Symmetry {
    /// A witness exists exactly when the unit is not central.
    pub fn agrees(&self) -> bool {
        self.witness.is_some() != self.unit_central
    }

    pub fn report(&self, alg: &PmvAlgebra, window: &Window) -> Result<Report> {
        let b = Bounds::window(window.bound);
        let mut report = Report::new("symmetry");
        report.fact("unit central", self.unit_central);
        match &self.witness {
            Some(x) => {
                report.fact("witness", x);
                report.fact("x-", alg.lneg(x)?);
                report.fact("x~", alg.rneg(x)?);
            }
            None => report.fact("witness", "none"),
        }
        let record = if self.agrees() {
            CheckRecord::pass("witness agrees with center test", b)
        } else {
            let w = match &self.witness {
                Some(x) => witness([("x", x.to_string()), ("unit central", "true".into())]),
                None => witness([("unit", alg.unit().to_string()), ("unit central", "false".into())]),
            };
            CheckRecord::fail("witness agrees with center test", b, w)
        };
        report.push(record);
        Ok(report)
    }
}

pub fn symmetry_witness(alg: &PmvAlgebra, window: &Window) -> Result<Symmetry> {
    let mut witness = None;
    for x in window.iter() {
        if alg.lneg(x)? != alg.rneg(x)? {
            witness = Some(x.clone());
            break;
        }
    }
    Ok(Symmetry {
        witness,
        unit_central: alg.expr().in_center(alg.unit())?,
    })
}
