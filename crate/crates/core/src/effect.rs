//! The pseudo effect algebra induced on `Γ(G,u)` by the partial sum
//! `x + y := x ⊕ y`, defined exactly when `x ≤ y⁻`, i.e. `y ⊙ x = 0`.
//!
//! In the commutative case this is the same as `x ⊙ y = 0`. In `Γ(Heis,u)`
//! only the `y ⊙ x` form yields a pseudo effect algebra; see
//! [`literal_partial_add`] for the other reading.

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::gamma::PmvAlgebra;
use crate::group::{GroupElement, GroupExpr};
use crate::report::{witness, Bounds, CheckRecord, Report, Witness};
use crate::window::{search_1, search_2, search_3, Window};

/// `Some(x ⊕ y)` when the partial sum is defined.
pub type PartialSum = Option<GroupElement>;

impl PmvAlgebra {
    pub fn partial_add(&self, x: &GroupElement, y: &GroupElement) -> Result<PartialSum> {
        if self.odot(y, x)?.is_zero() {
            Ok(Some(self.oplus(x, y)?))
        } else {
            Ok(None)
        }
    }

    fn require_le(&self, a: &GroupElement, b: &GroupElement) -> Result<()> {
        if self.le(a, b)? {
            Ok(())
        } else {
            Err(Error::NotBelow {
                lower: a.to_string(),
                upper: b.to_string(),
            })
        }
    }

    /// `b ∖li a = b + (-a)`, so that `(b ∖li a) + a = b`.
    pub fn minus_li(&self, b: &GroupElement, a: &GroupElement) -> Result<GroupElement> {
        self.require_le(a, b)?;
        self.expr().sub(b, a)
    }

    /// `a ∖re b = (-a) + b`, so that `a + (a ∖re b) = b`.
    pub fn minus_re(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.require_le(a, b)?;
        self.expr().sub_left(a, b)
    }

    /// `a ⊕ b` rebuilt from the effect structure as `(b⁻ ∖li (a ∧ b⁻))∼`.
    pub fn oplus_from_effect(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let bl = self.lneg(b)?;
        let m = self.meet(a, &bl)?;
        self.rneg(&self.minus_li(&bl, &m)?)
    }
}

/// The partial sum gated on `x ⊙ y = 0` instead of `y ⊙ x = 0`.
pub fn literal_partial_add(
    alg: &PmvAlgebra,
    x: &GroupElement,
    y: &GroupElement,
) -> Result<PartialSum> {
    if alg.odot(x, y)?.is_zero() {
        Ok(Some(alg.oplus(x, y)?))
    } else {
        Ok(None)
    }
}

/// A partial binary operation with `0` and `1`, as seen by the PE checks.
pub trait PartialAddition {
    fn zero(&self) -> GroupElement;
    fn one(&self) -> GroupElement;
    fn padd(&self, x: &GroupElement, y: &GroupElement) -> Result<PartialSum>;
    /// Extra candidates `d` for `a + d = s` beyond the window.
    fn right_solutions(&self, a: &GroupElement, s: &GroupElement) -> Result<Vec<GroupElement>>;
    /// Extra candidates `e` for `e + a = s` beyond the window.
    fn left_solutions(&self, a: &GroupElement, s: &GroupElement) -> Result<Vec<GroupElement>>;
}

impl PartialAddition for PmvAlgebra {
    fn zero(&self) -> GroupElement {
        self.expr().zero()
    }
    fn one(&self) -> GroupElement {
        self.unit().clone()
    }
    fn padd(&self, x: &GroupElement, y: &GroupElement) -> Result<PartialSum> {
        self.partial_add(x, y)
    }
    fn right_solutions(&self, a: &GroupElement, s: &GroupElement) -> Result<Vec<GroupElement>> {
        let d = self.expr().sub_left(a, s)?;
        Ok(if self.contains(&d) { vec![d] } else { vec![] })
    }
    fn left_solutions(&self, a: &GroupElement, s: &GroupElement) -> Result<Vec<GroupElement>> {
        let e = self.expr().sub(s, a)?;
        Ok(if self.contains(&e) { vec![e] } else { vec![] })
    }
}

fn candidates(window: &Window, extra: Vec<GroupElement>) -> Vec<GroupElement> {
    let mut all: Vec<GroupElement> = window.elements.clone();
    all.extend(extra);
    all.sort();
    all.dedup();
    all
}

fn show(x: &PartialSum) -> String {
    x.as_ref().map_or("undefined".into(), |v| v.to_string())
}

/// Windowed verification of (PE1)-(PE4).
pub fn check_pe_axioms<A: PartialAddition + Sync>(alg: &A, window: &Window) -> Result<Report> {
    let xs = &window.elements;
    let b = Bounds::window(window.bound);
    let one = alg.one();
    let zero = alg.zero();
    let mut report = Report::new("effect axioms");

    let pe1 = search_3(xs, |x, y, z| {
        let left = match alg.padd(x, y)? {
            Some(s) => alg.padd(&s, z)?,
            None => None,
        };
        let right = match alg.padd(y, z)? {
            Some(s) => alg.padd(x, &s)?,
            None => None,
        };
        Ok((left != right).then(|| {
            witness([
                ("x", x.to_string()),
                ("y", y.to_string()),
                ("z", z.to_string()),
                ("(x+y)+z", show(&left)),
                ("x+(y+z)", show(&right)),
            ])
        }))
    })?;
    report.push(CheckRecord::from_outcome("PE1 associativity", b, pe1));

    let pe2 = search_1(xs, |a| {
        let count = |cands: Vec<GroupElement>, left: bool| -> Result<usize> {
            let mut n = 0;
            for d in candidates(window, cands) {
                let s = if left { alg.padd(&d, a)? } else { alg.padd(a, &d)? };
                if s.as_ref() == Some(&one) {
                    n += 1;
                }
            }
            Ok(n)
        };
        let nd = count(alg.right_solutions(a, &one)?, false)?;
        let ne = count(alg.left_solutions(a, &one)?, true)?;
        Ok((nd != 1 || ne != 1).then(|| {
            witness([
                ("a", a.to_string()),
                ("solutions of a+d=1", nd.to_string()),
                ("solutions of e+a=1", ne.to_string()),
            ])
        }))
    })?;
    report.push(CheckRecord::from_outcome("PE2 unique complements", b, pe2));

    let pe3 = search_2(xs, xs, |a, bb| {
        let Some(s) = alg.padd(a, bb)? else {
            return Ok(None);
        };
        let mut has_d = false;
        for d in candidates(window, alg.left_solutions(a, &s)?) {
            if alg.padd(&d, a)?.as_ref() == Some(&s) {
                has_d = true;
                break;
            }
        }
        let mut has_e = false;
        for e in candidates(window, alg.right_solutions(bb, &s)?) {
            if alg.padd(bb, &e)?.as_ref() == Some(&s) {
                has_e = true;
                break;
            }
        }
        Ok((!has_d || !has_e).then(|| {
            witness([
                ("a", a.to_string()),
                ("b", bb.to_string()),
                ("a+b", s.to_string()),
                ("d found", has_d.to_string()),
                ("e found", has_e.to_string()),
            ])
        }))
    })?;
    report.push(CheckRecord::from_outcome("PE3 swapping", b, pe3));

    let pe4 = search_1(xs, |a| {
        if a == &zero {
            return Ok(None);
        }
        let l = alg.padd(&one, a)?;
        let r = alg.padd(a, &one)?;
        Ok((l.is_some() || r.is_some()).then(|| {
            witness([("a", a.to_string()), ("1+a", show(&l)), ("a+1", show(&r))])
        }))
    })?;
    report.push(CheckRecord::from_outcome("PE4 one is maximal", b, pe4));
    Ok(report)
}

/// Recomposition identities for the two differences and agreement of the
/// effect-built `⊕` with the direct one.
pub fn check_differences(alg: &PmvAlgebra, window: &Window) -> Result<Report> {
    let xs = &window.elements;
    let b = Bounds::window(window.bound);
    let mut report = Report::new("differences");

    let recompose = search_2(xs, xs, |a, bb| {
        if !alg.le(a, bb)? {
            return Ok(None);
        }
        let li = alg.minus_li(bb, a)?;
        let re = alg.minus_re(a, bb)?;
        let l = alg.partial_add(&li, a)?;
        let r = alg.partial_add(a, &re)?;
        let ok = l.as_ref() == Some(bb) && r.as_ref() == Some(bb);
        Ok((!ok).then(|| {
            witness([
                ("a", a.to_string()),
                ("b", bb.to_string()),
                ("(b\\a)+a", show(&l)),
                ("a+(a/b)", show(&r)),
            ])
        }))
    })?;
    report.push(CheckRecord::from_outcome("recomposition", b, recompose));

    let agree = search_2(xs, xs, |a, bb| {
        let l = alg.oplus_from_effect(a, bb)?;
        let r = alg.oplus(a, bb)?;
        Ok((l != r).then(|| {
            witness([
                ("a", a.to_string()),
                ("b", bb.to_string()),
                ("from effect", l.to_string()),
                ("oplus", r.to_string()),
            ])
        }))
    })?;
    report.push(CheckRecord::from_outcome("oplus from effect structure", b, agree));

    let diffs = search_2(xs, xs, |x, y| {
        if !alg.le(y, x)? {
            return Ok(None);
        }
        let g = alg.expr();
        let l = alg.odot(x, &alg.lneg(y)?)?;
        let r = alg.odot(&alg.rneg(y)?, x)?;
        let ok = l == g.sub(x, y)? && r == g.sub_left(y, x)?;
        Ok((!ok).then(|| witness([("x", x), ("y", y)])))
    })?;
    report.push(CheckRecord::from_outcome("odot gives group differences", b, diffs));
    Ok(report)
}

/// A decomposition `a₁ = c₁₁+c₁₂`, `a₂ = c₂₁+c₂₂`, `b₁ = c₁₁+c₂₁`,
/// `b₂ = c₁₂+c₂₂` with `c₁₂ ∧ c₂₁ = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refinement {
    pub c11: GroupElement,
    pub c12: GroupElement,
    pub c21: GroupElement,
    pub c22: GroupElement,
}

/// Searches the window for a refinement of `a₁+a₂ = b₁+b₂`.
pub fn find_refinement(
    alg: &PmvAlgebra,
    window: &Window,
    a: (&GroupElement, &GroupElement),
    b: (&GroupElement, &GroupElement),
) -> Result<Option<Refinement>> {
    let g = alg.expr();
    let defined_as = |x: &GroupElement, y: &GroupElement, s: &GroupElement| -> Result<bool> {
        Ok(alg.partial_add(x, y)?.as_ref() == Some(s))
    };
    for c11 in window.iter() {
        let c12 = g.sub_left(c11, a.0)?;
        let c21 = g.sub_left(c11, b.0)?;
        let c22 = g.sub_left(&c21, a.1)?;
        if ![&c12, &c21, &c22].iter().all(|c| alg.contains(c)) {
            continue;
        }
        if defined_as(c11, &c12, a.0)?
            && defined_as(&c21, &c22, a.1)?
            && defined_as(c11, &c21, b.0)?
            && defined_as(&c12, &c22, b.1)?
            && alg.meet(&c12, &c21)?.is_zero()
        {
            return Ok(Some(Refinement {
                c11: c11.clone(),
                c12,
                c21,
                c22,
            }));
        }
    }
    Ok(None)
}

/// For every windowed pair of equal defined sums, looks for a refinement.
pub fn check_rdp2(alg: &PmvAlgebra, window: &Window) -> Result<Report> {
    let b = Bounds::window(window.bound);
    let mut by_sum: BTreeMap<GroupElement, Vec<(GroupElement, GroupElement)>> = BTreeMap::new();
    for x in window.iter() {
        for y in window.iter() {
            if let Some(s) = alg.partial_add(x, y)? {
                by_sum.entry(s).or_default().push((x.clone(), y.clone()));
            }
        }
    }
    let mut instances = 0usize;
    let mut witnessed = 0usize;
    let mut missing: Option<Witness> = None;
    for pairs in by_sum.values() {
        for (a1, a2) in pairs {
            for (b1, b2) in pairs {
                instances += 1;
                if find_refinement(alg, window, (a1, a2), (b1, b2))?.is_some() {
                    witnessed += 1;
                } else if missing.is_none() {
                    missing = Some(witness([("a1", a1), ("a2", a2), ("b1", b1), ("b2", b2)]));
                }
            }
        }
    }
    let mut report = Report::new("rdp2");
    let record = CheckRecord::from_outcome("refinement within window", b, missing);
    report.push(if record.passed() {
        record
    } else {
        record.with_detail("no witness within window")
    });
    report.fact("instances", instances);
    report.fact("witnessed", witnessed);
    Ok(report)
}

/// A state given by the ratio of leading coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct State {
    head_unit: i64,
}

impl State {
    pub fn value(&self, x: &GroupElement) -> Ratio<i64> {
        Ratio::new(x.coords()[0], self.head_unit)
    }

    pub fn in_kernel(&self, x: &GroupElement) -> bool {
        x.coords()[0] == 0
    }
}

/// `s(x) = x₀ / u₀` when the leading lexicographic factor is `Z`.
pub fn canonical_state(alg: &PmvAlgebra) -> Result<State> {
    let chain = alg.expr().lex_chain();
    match chain.first() {
        Some(GroupExpr::Z) if alg.dim() > 0 => {
            let u0 = alg.unit().coords()[0];
            if u0 == 0 {
                return Err(Error::Precondition("leading coordinate of the unit is 0".into()));
            }
            Ok(State { head_unit: u0 })
        }
        _ => Err(Error::Unsupported(format!(
            "no constructive state for {alg}: leading factor is not Z"
        ))),
    }
}

/// Normalization, range and additivity on defined windowed partial sums.
pub fn check_state(alg: &PmvAlgebra, state: &State, window: &Window) -> Result<Report> {
    let b = Bounds::window(window.bound);
    let one = Ratio::from_integer(1);
    let zero = Ratio::from_integer(0);
    let mut report = Report::new("state");

    let norm = state.value(alg.unit());
    report.push(CheckRecord::from_outcome(
        "s(1) = 1",
        b,
        (norm != one).then(|| witness([("s(1)", norm)])),
    ));

    let range = search_1(&window.elements, |x| {
        let v = state.value(x);
        Ok((v < zero || v > one).then(|| witness([("x", x.to_string()), ("s(x)", v.to_string())])))
    })?;
    report.push(CheckRecord::from_outcome("values in [0,1]", b, range));

    let additive = search_2(&window.elements, &window.elements, |x, y| {
        let Some(s) = alg.partial_add(x, y)? else {
            return Ok(None);
        };
        let l = state.value(&s);
        let r = state.value(x) + state.value(y);
        Ok((l != r).then(|| {
            witness([
                ("x", x.to_string()),
                ("y", y.to_string()),
                ("s(x+y)", l.to_string()),
                ("s(x)+s(y)", r.to_string()),
            ])
        }))
    })?;
    report.push(CheckRecord::from_outcome("additive on partial sums", b, additive));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e<const N: usize>(c: [i64; N]) -> GroupElement {
        GroupElement::from(c)
    }

    fn z2() -> PmvAlgebra {
        PmvAlgebra::new(GroupExpr::Z, e([2])).unwrap()
    }

    fn zz(u: [i64; 2]) -> PmvAlgebra {
        PmvAlgebra::new(GroupExpr::lex(GroupExpr::Z, GroupExpr::Z), e(u)).unwrap()
    }

    fn heis() -> PmvAlgebra {
        PmvAlgebra::new(GroupExpr::Heis, e([1, 0, 0])).unwrap()
    }

    #[test]
    fn partial_sums() {
        let m = z2();
        assert_eq!(m.partial_add(&e([1]), &e([1])).unwrap(), Some(e([2])));
        assert_eq!(m.partial_add(&e([2]), &e([1])).unwrap(), None);
        assert_eq!(m.partial_add(&e([2]), &e([0])).unwrap(), Some(e([2])));
    }

    #[test]
    fn differences() {
        let h = heis();
        assert_eq!(h.minus_li(&e([1, 0, 0]), &e([0, 1, 0])).unwrap(), e([1, -1, -1]));
        assert_eq!(h.minus_re(&e([0, 1, 0]), &e([1, 0, 0])).unwrap(), e([1, -1, 0]));
        assert_eq!(h.minus_li(&e([0, 1, 0]), &e([0, 0, 0])).unwrap(), e([0, 1, 0]));
        assert!(matches!(
            h.minus_li(&e([0, 1, 0]), &e([1, 0, 0])),
            Err(Error::NotBelow { .. })
        ));
    }

    #[test]
    fn oplus_rebuilt() {
        assert_eq!(z2().oplus_from_effect(&e([1]), &e([2])).unwrap(), e([2]));
        let h = heis();
        assert_eq!(h.oplus_from_effect(&e([0, 1, 0]), &e([0, 0, 5])).unwrap(), e([0, 1, 5]));
        assert_eq!(h.oplus_from_effect(&e([0, 0, 0]), &e([0, 2, -1])).unwrap(), e([0, 2, -1]));
        for m in [z2(), zz([2, 1]), heis()] {
            let r = check_differences(&m, &m.window(2).unwrap()).unwrap();
            assert!(r.passed(), "{}", r.render_text());
        }
    }

    #[test]
    fn pe_axioms() {
        for m in [z2(), heis()] {
            let r = check_pe_axioms(&m, &m.window(2).unwrap()).unwrap();
            assert!(r.passed(), "{}", r.render_text());
        }
    }

    struct ForcedTotal(PmvAlgebra);

    impl PartialAddition for ForcedTotal {
        fn zero(&self) -> GroupElement {
            self.0.expr().zero()
        }
        fn one(&self) -> GroupElement {
            self.0.unit().clone()
        }
        fn padd(&self, x: &GroupElement, y: &GroupElement) -> Result<PartialSum> {
            Ok(Some(self.0.oplus(x, y)?))
        }
        fn right_solutions(&self, a: &GroupElement, s: &GroupElement) -> Result<Vec<GroupElement>> {
            self.0.right_solutions(a, s)
        }
        fn left_solutions(&self, a: &GroupElement, s: &GroupElement) -> Result<Vec<GroupElement>> {
            self.0.left_solutions(a, s)
        }
    }

    struct Literal(PmvAlgebra);

    impl PartialAddition for Literal {
        fn zero(&self) -> GroupElement {
            self.0.expr().zero()
        }
        fn one(&self) -> GroupElement {
            self.0.unit().clone()
        }
        fn padd(&self, x: &GroupElement, y: &GroupElement) -> Result<PartialSum> {
            literal_partial_add(&self.0, x, y)
        }
        fn right_solutions(&self, a: &GroupElement, s: &GroupElement) -> Result<Vec<GroupElement>> {
            self.0.right_solutions(a, s)
        }
        fn left_solutions(&self, a: &GroupElement, s: &GroupElement) -> Result<Vec<GroupElement>> {
            self.0.left_solutions(a, s)
        }
    }

    #[test]
    fn literal_gate_agrees_when_commutative_only() {
        let m = zz([2, 1]);
        let r = check_pe_axioms(&Literal(m.clone()), &m.window(2).unwrap()).unwrap();
        assert!(r.passed());
        let h = heis();
        let r = check_pe_axioms(&Literal(h.clone()), &h.window(2).unwrap()).unwrap();
        assert!(!r.passed());
        // a + a∼ = 1 in the group, yet a ⊙ a∼ = (0,0,1)
        let a = e([0, 1, -2]);
        assert_eq!(h.odot(&a, &h.rneg(&a).unwrap()).unwrap(), e([0, 0, 1]));
        assert_eq!(h.partial_add(&a, &h.rneg(&a).unwrap()).unwrap(), Some(e([1, 0, 0])));
    }

    #[test]
    fn forced_total_sum_breaks_pe4() {
        let m = z2();
        let w = m.window(2).unwrap();
        let r = check_pe_axioms(&ForcedTotal(m), &w).unwrap();
        let pe4 = r.check("PE4 one is maximal").unwrap();
        assert!(!pe4.passed());
        assert_eq!(pe4.witness.as_ref().unwrap()["a"], "1");
    }

    #[test]
    fn refinements() {
        let m = z2();
        let w = m.window(2).unwrap();
        let r = find_refinement(&m, &w, (&e([1]), &e([1])), (&e([2]), &e([0])))
            .unwrap()
            .unwrap();
        assert_eq!((r.c11, r.c12, r.c21, r.c22), (e([1]), e([0]), e([1]), e([0])));
        let a = e([1]);
        let r = find_refinement(&m, &w, (&a, &e([0])), (&a, &e([0])))
            .unwrap()
            .unwrap();
        assert_eq!((r.c11, r.c12, r.c21, r.c22), (a, e([0]), e([0]), e([0])));
        for m in [z2(), zz([1, 0])] {
            let r = check_rdp2(&m, &m.window(2).unwrap()).unwrap();
            assert!(r.passed(), "{}", r.render_text());
            assert_eq!(r.facts["instances"], r.facts["witnessed"]);
        }
    }

    #[test]
    fn states() {
        let m = zz([2, 1]);
        let s = canonical_state(&m).unwrap();
        assert_eq!(s.value(&e([1, 5])), Ratio::new(1, 2));
        assert_eq!(s.value(&e([0, 3])), Ratio::from_integer(0));
        assert_eq!(s.value(m.unit()), Ratio::from_integer(1));
        let r = check_state(&m, &s, &m.window(3).unwrap()).unwrap();
        assert!(r.passed(), "{}", r.render_text());
        assert!(matches!(canonical_state(&heis()), Err(Error::Unsupported(_))));
    }
}
