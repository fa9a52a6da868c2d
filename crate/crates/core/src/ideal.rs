//! Ideals of `Γ(G,u)`: structural tests, quotients, sections of the quotient
//! map and the lexicographic classification.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::PmvAlgebra;
use crate::group::{GroupElement, GroupExpr};
use crate::matrix::IntMatrix;
use crate::report::{witness, Bounds, CheckRecord, Report, Witness};
use crate::window::{search_1, search_2, Window};

type Membership = Arc<dyn Fn(&GroupElement) -> bool + Send + Sync>;

#[derive(Clone)]
pub enum IdealKind {
    /// Elements whose first `depth` flattened coordinates vanish.
    TailProjection(usize),
    Explicit { name: String, member: Membership },
}

impl fmt::Debug for IdealKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealKind::TailProjection(j) => write!(f, "TailProjection({j})"),
            IdealKind::Explicit { name, .. } => write!(f, "Explicit({name})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct IdealDesc {
    algebra: PmvAlgebra,
    kind: IdealKind,
}

impl IdealDesc {
    pub fn tail(algebra: &PmvAlgebra, depth: usize) -> Result<Self> {
        if depth == 0 || depth > algebra.dim() {
            return Err(Error::Precondition(format!(
                "tail depth {depth} outside 1..={} for {algebra}",
                algebra.dim()
            )));
        }
        Ok(IdealDesc {
            algebra: algebra.clone(),
            kind: IdealKind::TailProjection(depth),
        })
    }

    pub fn explicit(
        algebra: &PmvAlgebra,
        name: impl Into<String>,
        member: impl Fn(&GroupElement) -> bool + Send + Sync + 'static,
    ) -> Self {
        IdealDesc {
            algebra: algebra.clone(),
            kind: IdealKind::Explicit {
                name: name.into(),
                member: Arc::new(member),
            },
        }
    }

    pub fn zero(algebra: &PmvAlgebra) -> Self {
        IdealDesc::explicit(algebra, "{0}", |x| x.is_zero())
    }

    pub fn full(algebra: &PmvAlgebra) -> Self {
        IdealDesc::explicit(algebra, "M", |_| true)
    }

    pub fn algebra(&self) -> &PmvAlgebra {
        &self.algebra
    }

    pub fn kind(&self) -> &IdealKind {
        &self.kind
    }

    pub fn depth(&self) -> Option<usize> {
        match self.kind {
            IdealKind::TailProjection(j) => Some(j),
            IdealKind::Explicit { .. } => None,
        }
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.algebra.contains(x)
            && match &self.kind {
                IdealKind::TailProjection(j) => x.coords()[..*j].iter().all(|c| *c == 0),
                IdealKind::Explicit { member, .. } => member(x),
            }
    }

    /// `{0}` or all of `M`, as far as the window can tell.
    pub fn is_improper(&self, window: &Window) -> bool {
        let all = window.iter().all(|x| self.contains(x));
        let only_zero = window.iter().all(|x| x.is_zero() || !self.contains(x));
        all || only_zero
    }

    /// `x ≡ y` iff `x ⊙ y⁻ ⊕ y ⊙ x⁻ ∈ I`.
    pub fn congruent(&self, x: &GroupElement, y: &GroupElement) -> Result<bool> {
        let m = &self.algebra;
        let d = m.oplus(&m.odot(x, &m.lneg(y)?)?, &m.odot(y, &m.lneg(x)?)?)?;
        Ok(self.contains(&d))
    }

    /// `x/I ≤ y/I` iff `x ⊙ y⁻ ∈ I`.
    pub fn class_le(&self, x: &GroupElement, y: &GroupElement) -> Result<bool> {
        let m = &self.algebra;
        Ok(self.contains(&m.odot(x, &m.lneg(y)?)?))
    }
}

impl fmt::Display for IdealDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            IdealKind::TailProjection(j) => write!(f, "tail:{j}"),
            IdealKind::Explicit { name, .. } => f.write_str(name),
        }
    }
}

fn bounds(window: &Window) -> Bounds {
    Bounds::window(window.bound)
}

/// Contains `0`, is downward closed and closed under `⊕`.
pub fn is_ideal(ideal: &IdealDesc, window: &Window) -> Result<Report> {
    let m = ideal.algebra();
    let b = bounds(window);
    let mut report = Report::new("ideal");
    let zero = m.expr().zero();
    report.push(CheckRecord::from_outcome(
        "contains 0",
        b,
        (!ideal.contains(&zero)).then(|| witness([("x", &zero)])),
    ));
    let down = search_2(&window.elements, &window.elements, |a, x| {
        Ok((ideal.contains(x) && m.le(a, x)? && !ideal.contains(a))
            .then(|| witness([("a", a), ("b", x)])))
    })?;
    report.push(CheckRecord::from_outcome("downward closed", b, down));
    let members = window.filter(|x| ideal.contains(x));
    let closed = search_2(&members, &members, |a, x| {
        let s = m.oplus(a, x)?;
        Ok((!ideal.contains(&s)).then(|| witness([("a", a), ("b", x), ("a+b", &s)])))
    })?;
    report.push(CheckRecord::from_outcome("closed under oplus", b, closed));
    Ok(report)
}

/// `z ∈ I ⊕ {x}` (`left = true`) or `z ∈ {x} ⊕ I`, decided exactly for
/// linearly ordered groups.
fn in_translate(ideal: &IdealDesc, x: &GroupElement, z: &GroupElement, left: bool) -> Result<bool> {
    let m = ideal.algebra();
    let g = m.expr();
    if z == m.unit() {
        // i ⊕ x = u iff i ≥ x⁻; x ⊕ i = u iff i ≥ x∼
        let c = if left { m.lneg(x)? } else { m.rneg(x)? };
        return Ok(ideal.contains(&c));
    }
    if !g.le(x, z)? {
        return Ok(false);
    }
    let d = if left { g.sub(z, x)? } else { g.sub_left(x, z)? };
    Ok(ideal.contains(&d))
}

/// `I ⊕ {x} = {x} ⊕ I` for every windowed `x`, compared on the window.
pub fn is_normal(ideal: &IdealDesc, window: &Window) -> Result<Report> {
    let m = ideal.algebra();
    let b = bounds(window);
    let mut report = Report::new("normal");
    let failure = if m.expr().is_linear() {
        search_2(&window.elements, &window.elements, |x, z| {
            let l = in_translate(ideal, x, z, true)?;
            let r = in_translate(ideal, x, z, false)?;
            Ok((l != r).then(|| {
                witness([
                    ("x", x.to_string()),
                    ("z", z.to_string()),
                    ("z in I+x", l.to_string()),
                    ("z in x+I", r.to_string()),
                ])
            }))
        })?
    } else {
        let members = window.filter(|x| ideal.contains(x));
        search_1(&window.elements, |x| {
            let mut l = Vec::new();
            let mut r = Vec::new();
            for i in &members {
                l.push(m.oplus(i, x)?);
                r.push(m.oplus(x, i)?);
            }
            for side in [&mut l, &mut r] {
                side.retain(|z| window.elements.binary_search(z).is_ok());
                side.sort();
                side.dedup();
            }
            let only_l = l.iter().find(|z| !r.contains(z));
            let only_r = r.iter().find(|z| !l.contains(z));
            Ok(match (only_l, only_r) {
                (Some(z), _) => Some(witness([("x", x.to_string()), ("z only in I+x", z.to_string())])),
                (_, Some(z)) => Some(witness([("x", x.to_string()), ("z only in x+I", z.to_string())])),
                _ => None,
            })
        })?
    };
    report.push(CheckRecord::from_outcome("I+x = x+I", b, failure));
    Ok(report)
}

/// `x ∧ y ∈ I` forces `x ∈ I` or `y ∈ I`.
pub fn is_prime(ideal: &IdealDesc, window: &Window) -> Result<Report> {
    let m = ideal.algebra();
    let mut report = Report::new("prime");
    let failure = search_2(&window.elements, &window.elements, |x, y| {
        let meet = m.meet(x, y)?;
        Ok((ideal.contains(&meet) && !ideal.contains(x) && !ideal.contains(y))
            .then(|| witness([("x", x), ("y", y), ("x^y", &meet)])))
    })?;
    report.push(CheckRecord::from_outcome("prime", bounds(window), failure));
    Ok(report)
}

/// `x/I < y/I` forces `x < y`.
pub fn is_strict(ideal: &IdealDesc, window: &Window) -> Result<Report> {
    let m = ideal.algebra();
    let mut report = Report::new("strict");
    let failure = search_2(&window.elements, &window.elements, |x, y| {
        let below = ideal.class_le(x, y)? && !ideal.class_le(y, x)?;
        Ok((below && !m.expr().lt(x, y)?).then(|| witness([("x", x), ("y", y)])))
    })?;
    report.push(CheckRecord::from_outcome("strict", bounds(window), failure));
    Ok(report)
}

/// `M/I` realized as `Γ` of the coordinate prefix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quotient {
    algebra: PmvAlgebra,
    tail: GroupExpr,
    depth: usize,
}

impl Quotient {
    pub fn algebra(&self) -> &PmvAlgebra {
        &self.algebra
    }

    /// The group carried by the coordinates after the prefix.
    pub fn tail_group(&self) -> &GroupExpr {
        &self.tail
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn project(&self, x: &GroupElement) -> GroupElement {
        x.prefix(self.depth)
    }
}

pub fn quotient(ideal: &IdealDesc) -> Result<Quotient> {
    let Some(depth) = ideal.depth() else {
        return Err(Error::Unsupported(format!(
            "no structural quotient for the explicit ideal {ideal}"
        )));
    };
    let m = ideal.algebra();
    let (head, tail) = m.expr().split_at(depth)?;
    let algebra = PmvAlgebra::new(head, m.unit().prefix(depth))?;
    Ok(Quotient {
        algebra,
        tail,
        depth,
    })
}

/// Congruence classes of the window match the fibres of the projection, and
/// the projection is a surjective homomorphism on windows.
pub fn check_quotient(ideal: &IdealDesc, q: &Quotient, window: &Window) -> Result<Report> {
    let m = ideal.algebra();
    let h = q.algebra();
    let b = bounds(window);
    let xs = &window.elements;
    let mut report = Report::new("quotient");

    let classes = search_2(xs, xs, |x, y| {
        let c = ideal.congruent(x, y)?;
        let p = q.project(x) == q.project(y);
        Ok((c != p).then(|| {
            witness([
                ("x", x.to_string()),
                ("y", y.to_string()),
                ("congruent", c.to_string()),
                ("same projection", p.to_string()),
            ])
        }))
    })?;
    report.push(CheckRecord::from_outcome("congruence classes", b, classes));

    let consts = [
        (m.expr().zero(), h.expr().zero()),
        (m.unit().clone(), h.unit().clone()),
    ];
    let c = consts
        .iter()
        .find(|(x, t)| q.project(x) != *t)
        .map(|(x, t)| witness([("x", x), ("expected", t)]));
    let ops = c.or(search_2(xs, xs, |x, y| {
        let px = q.project(x);
        let py = q.project(y);
        let checks = [
            ("oplus", q.project(&m.oplus(x, y)?), h.oplus(&px, &py)?),
            ("odot", q.project(&m.odot(x, y)?), h.odot(&px, &py)?),
            ("lneg", q.project(&m.lneg(x)?), h.lneg(&px)?),
            ("rneg", q.project(&m.rneg(x)?), h.rneg(&px)?),
        ];
        Ok(checks.into_iter().find(|(_, l, r)| l != r).map(|(op, l, r)| {
            witness([
                ("op", op.to_string()),
                ("x", x.to_string()),
                ("y", y.to_string()),
                ("image", l.to_string()),
                ("expected", r.to_string()),
            ])
        }))
    })?);
    report.push(CheckRecord::from_outcome("projection is a homomorphism", b, ops));

    let probes = h.window(window.bound)?;
    let tail_zero = GroupElement::zero(m.dim() - q.depth());
    let surj = search_1(&probes.elements, |t| {
        let mut cands = vec![t.concat(&tail_zero)];
        if t == h.unit() {
            cands.push(m.unit().clone());
        }
        let hit = cands
            .iter()
            .chain(xs.iter())
            .any(|x| m.contains(x) && q.project(x) == *t);
        Ok((!hit).then(|| witness([("t", t)])))
    })?;
    report.push(CheckRecord::from_outcome("projection is surjective", b, surj));
    Ok(report)
}

/// A map `δ` from the quotient back into `M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Section {
    /// `δ(t) = (t, A·t)`
    Linear(IntMatrix),
    /// Explicit values on finitely many `t`.
    Table(BTreeMap<GroupElement, GroupElement>),
}

impl Section {
    pub fn canonical(head_dim: usize, tail_dim: usize) -> Section {
        Section::Linear(IntMatrix::zero(tail_dim, head_dim))
    }

    pub fn apply(&self, t: &GroupElement) -> Result<GroupElement> {
        match self {
            Section::Linear(a) => Ok(t.concat(&GroupElement::new(a.apply(t.coords())?))),
            Section::Table(map) => map
                .get(t)
                .cloned()
                .ok_or_else(|| Error::Precondition(format!("section undefined at {t}"))),
        }
    }

    /// A table agreeing with `self` on `probes` except that `t` maps to `value`.
    pub fn perturbed(&self, probes: &Window, t: &GroupElement, value: GroupElement) -> Result<Section> {
        let mut map = BTreeMap::new();
        for s in probes.iter() {
            map.insert(s.clone(), self.apply(s)?);
        }
        map.insert(t.clone(), value);
        Ok(Section::Table(map))
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Section::Linear(a) => write!(f, "t -> (t, [{a}]t)"),
            Section::Table(map) => {
                let parts: Vec<String> = map.iter().map(|(t, x)| format!("{t}->{x}")).collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
        }
    }
}

fn section_values(q: &Quotient, m: &PmvAlgebra, delta: &Section, probes: &Window) -> Result<Option<Witness>> {
    search_1(&probes.elements, |t| {
        let d = delta.apply(t)?;
        if !m.contains(&d) {
            return Ok(Some(witness([("t", t.to_string()), ("delta(t) not in M", d.to_string())])));
        }
        Ok((q.project(&d) != *t).then(|| witness([("t", t), ("delta(t)", &d)])))
    })
}

/// `δ` is a pMV homomorphism with `π ∘ δ = id` on probes.
pub fn check_retraction(q: &Quotient, m: &PmvAlgebra, delta: &Section, probes: &Window) -> Result<Option<Witness>> {
    if let Some(w) = section_values(q, m, delta, probes)? {
        return Ok(Some(w));
    }
    let h = q.algebra();
    let du = delta.apply(h.unit())?;
    if du != *m.unit() {
        return Ok(Some(witness([("delta(1)", du.to_string()), ("1", m.unit().to_string())])));
    }
    search_2(&probes.elements, &probes.elements, |s, t| {
        let ds = delta.apply(s)?;
        let dt = delta.apply(t)?;
        let checks = [
            ("oplus", delta.apply(&h.oplus(s, t)?)?, m.oplus(&ds, &dt)?),
            ("lneg", delta.apply(&h.lneg(s)?)?, m.lneg(&ds)?),
            ("rneg", delta.apply(&h.rneg(s)?)?, m.rneg(&ds)?),
        ];
        Ok(checks.into_iter().find(|(_, l, r)| l != r).map(|(op, l, r)| {
            witness([
                ("op", op.to_string()),
                ("s", s.to_string()),
                ("t", t.to_string()),
                ("delta(op)", l.to_string()),
                ("op(delta)", r.to_string()),
            ])
        }))
    })
}

/// `δ` is additive on defined partial sums with `π ∘ δ = id` on probes.
pub fn check_weak_retraction(q: &Quotient, m: &PmvAlgebra, delta: &Section, probes: &Window) -> Result<Option<Witness>> {
    if let Some(w) = section_values(q, m, delta, probes)? {
        return Ok(Some(w));
    }
    let h = q.algebra();
    search_2(&probes.elements, &probes.elements, |s, t| {
        let Some(st) = h.partial_add(s, t)? else {
            return Ok(None);
        };
        let l = delta.apply(&st)?;
        let r = m.partial_add(&delta.apply(s)?, &delta.apply(t)?)?;
        Ok((r.as_ref() != Some(&l)).then(|| {
            witness([
                ("s", s.to_string()),
                ("t", t.to_string()),
                ("delta(s+t)", l.to_string()),
                ("delta(s)+delta(t)", r.map_or("undefined".into(), |v| v.to_string())),
            ])
        }))
    })
}

fn linear_sections(q: &Quotient, m: &PmvAlgebra, k: i64) -> impl Iterator<Item = Section> {
    let head = q.algebra().dim();
    IntMatrix::enumerate(m.dim() - head, head, k).map(Section::Linear)
}

/// First section `δ(t) = (t, A·t)` with `|A| ≤ k` that is a retraction.
pub fn find_retraction(ideal: &IdealDesc, k: i64, bound: i64) -> Result<Option<Section>> {
    let q = quotient(ideal)?;
    let m = ideal.algebra();
    let probes = q.algebra().window(bound)?;
    for delta in linear_sections(&q, m, k) {
        if check_retraction(&q, m, &delta, &probes)?.is_none() {
            return Ok(Some(delta));
        }
    }
    Ok(None)
}

/// Every retraction with `|A| ≤ k`.
pub fn all_retractions(ideal: &IdealDesc, k: i64, bound: i64) -> Result<Vec<Section>> {
    let q = quotient(ideal)?;
    let m = ideal.algebra();
    let probes = q.algebra().window(bound)?;
    let mut out = Vec::new();
    for delta in linear_sections(&q, m, k) {
        if check_retraction(&q, m, &delta, &probes)?.is_none() {
            out.push(delta);
        }
    }
    Ok(out)
}

/// `1 ∖li δ(u)` restricted to the tail coordinates.
pub fn offset(ideal: &IdealDesc, delta: &Section) -> Result<GroupElement> {
    let q = quotient(ideal)?;
    let m = ideal.algebra();
    let du = delta.apply(q.algebra().unit())?;
    Ok(m.minus_li(m.unit(), &du)?.suffix(q.depth()))
}

/// First weakly retractive section with `|A| ≤ k`, with its offset `b`.
pub fn find_weak_retraction(ideal: &IdealDesc, k: i64, bound: i64) -> Result<Option<(Section, GroupElement)>> {
    let q = quotient(ideal)?;
    let m = ideal.algebra();
    let probes = q.algebra().window(bound)?;
    for delta in linear_sections(&q, m, k) {
        if check_weak_retraction(&q, m, &delta, &probes)?.is_none() {
            let b = offset(ideal, &delta)?;
            return Ok(Some((delta, b)));
        }
    }
    Ok(None)
}

/// The group identities `x+y-δ(s+t) = (x-δ(s))+(y-δ(t))` for defined
/// `x+y` with `x ∈ M_s`, `y ∈ M_t`, and `x-δ(t) = -δ(t)+x` for `x ∈ M_t`.
pub fn check_offset_conditions(ideal: &IdealDesc, delta: &Section, window: &Window) -> Result<Report> {
    let q = quotient(ideal)?;
    let m = ideal.algebra();
    let g = m.expr();
    let h = q.algebra();
    let probes = h.window(window.bound)?;
    if let Some(w) = section_values(&q, m, delta, &probes)? {
        let parts: Vec<String> = w.iter().map(|(k, v)| format!("{k}={v}")).collect();
        return Err(Error::Precondition(format!(
            "section is not a right inverse of the projection: {}",
            parts.join(" ")
        )));
    }
    let b = bounds(window);
    let xs = &window.elements;
    let mut report = Report::new("lex conditions");

    let iv = search_2(xs, xs, |x, y| {
        let Some(sum) = m.partial_add(x, y)? else {
            return Ok(None);
        };
        let s = q.project(x);
        let t = q.project(y);
        let Some(st) = h.partial_add(&s, &t)? else {
            return Ok(Some(witness([("x", x.to_string()), ("y", y.to_string()), ("s+t", "undefined".into())])));
        };
        let l = g.sub(&sum, &delta.apply(&st)?)?;
        let r = g.add(&g.sub(x, &delta.apply(&s)?)?, &g.sub(y, &delta.apply(&t)?)?)?;
        Ok((l != r).then(|| {
            witness([
                ("x", x.to_string()),
                ("y", y.to_string()),
                ("lhs", l.to_string()),
                ("rhs", r.to_string()),
            ])
        }))
    })?;
    report.push(CheckRecord::from_outcome("additive offsets", b, iv));

    let v = search_1(xs, |x| {
        let d = delta.apply(&q.project(x))?;
        let l = g.sub(x, &d)?;
        let r = g.sub_left(&d, x)?;
        Ok((l != r).then(|| witness([("x", x), ("x-delta(t)", &l), ("-delta(t)+x", &r)])))
    })?;
    report.push(CheckRecord::from_outcome("offsets commute", b, v));
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IdealLabel {
    Lexicographic,
    WeaklyLexicographic,
    Neither,
}

impl fmt::Display for IdealLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdealLabel::Lexicographic => "Lexicographic",
            IdealLabel::WeaklyLexicographic => "WeaklyLexicographic",
            IdealLabel::Neither => "Neither",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub label: IdealLabel,
    pub report: Report,
    pub section: Option<Section>,
    /// Offset `1 ∖li δ(u)` in tail coordinates, when a section was found.
    pub offset: Option<GroupElement>,
}

/// The strongest of the two lexicographic labels the ideal earns.
pub fn classify_ideal(ideal: &IdealDesc, k: i64, window: &Window) -> Result<Classification> {
    if ideal.is_improper(window) {
        return Err(Error::Precondition(format!(
            "{ideal} is {{0}} or M; a lexicographic ideal must be proper and non-zero"
        )));
    }
    let mut report = Report::new("classify");
    report.fact("ideal", ideal);
    report.fact("search bound", k);
    let structural = [
        ("ideal", is_ideal(ideal, window)?),
        ("normal", is_normal(ideal, window)?),
        ("strict", is_strict(ideal, window)?),
        ("prime", is_prime(ideal, window)?),
    ];
    let mut ok = true;
    for (name, r) in structural {
        ok &= r.passed();
        report.absorb(name, r);
    }
    let neither = |mut report: Report| {
        report.fact("label", IdealLabel::Neither);
        Ok(Classification {
            label: IdealLabel::Neither,
            report,
            section: None,
            offset: None,
        })
    };
    if !ok {
        return neither(report);
    }
    let q = match quotient(ideal) {
        Ok(q) => q,
        Err(Error::Unsupported(msg)) => {
            report.push(CheckRecord::unsupported("sections", bounds(window), msg));
            return neither(report);
        }
        Err(e) => return Err(e),
    };
    report.absorb("quotient", check_quotient(ideal, &q, window)?);
    report.fact("quotient", q.algebra());
    let m = ideal.algebra();
    let probes = q.algebra().window(window.bound)?;
    let b = bounds(window).with_search(k);

    let mut tried = 0usize;
    for delta in linear_sections(&q, m, k) {
        tried += 1;
        if check_retraction(&q, m, &delta, &probes)?.is_none() {
            let lex = check_offset_conditions(ideal, &delta, window)?;
            if lex.passed() {
                report.push(CheckRecord::pass("retractive", b).with_detail(format!("section {delta}")));
                report.absorb("section", lex);
                report.fact("label", IdealLabel::Lexicographic);
                let off = offset(ideal, &delta)?;
                report.fact("b", &off);
                return Ok(Classification {
                    label: IdealLabel::Lexicographic,
                    report,
                    section: Some(delta),
                    offset: Some(off),
                });
            }
        }
    }
    report.fact("retraction", format!("none among {tried} sections with |A| <= {k}"));

    let mut weak_seen = None;
    for delta in linear_sections(&q, m, k) {
        if check_weak_retraction(&q, m, &delta, &probes)?.is_none() {
            let lex = check_offset_conditions(ideal, &delta, window)?;
            if lex.passed() {
                report.push(
                    CheckRecord::pass("weakly retractive", b).with_detail(format!("section {delta}")),
                );
                report.absorb("section", lex);
                let off = offset(ideal, &delta)?;
                report.fact("b", &off);
                report.fact("label", IdealLabel::WeaklyLexicographic);
                return Ok(Classification {
                    label: IdealLabel::WeaklyLexicographic,
                    report,
                    section: Some(delta),
                    offset: Some(off),
                });
            }
            weak_seen.get_or_insert((delta, lex));
        }
    }
    match weak_seen {
        Some((delta, lex)) => {
            report.fact("weak section without offset conditions", &delta);
            report.absorb("section", lex);
        }
        None => report.push(CheckRecord::fail(
            "weakly retractive",
            b,
            witness([("sections tried", tried.to_string()), ("search bound", k.to_string())]),
        )),
    }
    neither(report)
}

/// `⟨I⟩ = I ∪ I⁻`.
#[derive(Debug, Clone)]
pub struct Generated {
    ideal: IdealDesc,
}

impl Generated {
    pub fn contains(&self, x: &GroupElement) -> bool {
        let m = self.ideal.algebra();
        self.ideal.contains(x) || m.rneg(x).map(|y| self.ideal.contains(&y)).unwrap_or(false)
    }

    /// `0` for members of `I`, `1` for members of `I⁻`.
    pub fn slice(&self, x: &GroupElement) -> Option<u8> {
        if self.ideal.contains(x) {
            Some(0)
        } else if self.contains(x) {
            Some(1)
        } else {
            None
        }
    }
}

/// Builds `⟨I⟩`, checks closure and that `(I, I⁻)` is a `(Z,1)`-decomposition.
pub fn generated_subalgebra(ideal: &IdealDesc, window: &Window) -> Result<(Generated, Report)> {
    let m = ideal.algebra();
    for x in window.iter() {
        if ideal.contains(&m.rneg(x)?) != ideal.contains(&m.lneg(x)?) {
            return Err(Error::Precondition(format!("I- and I~ differ at {x}")));
        }
    }
    let gen = Generated {
        ideal: ideal.clone(),
    };
    let b = bounds(window);
    let members = window.filter(|x| gen.contains(x));
    let mut report = Report::new("generated subalgebra");
    report.fact("members in window", members.len());

    let closed = search_2(&members, &members, |x, y| {
        let s = m.oplus(x, y)?;
        let l = m.lneg(x)?;
        let r = m.rneg(x)?;
        let bad = [("x+y", &s), ("x-", &l), ("x~", &r)]
            .into_iter()
            .find(|(_, v)| !gen.contains(v));
        Ok(bad.map(|(k, v)| witness([("x", x.to_string()), ("y", y.to_string()), (k, v.to_string())])))
    })?;
    report.push(CheckRecord::from_outcome("closed under oplus and negations", b, closed));

    let order = search_2(&members, &members, |x, y| {
        Ok((gen.slice(x) == Some(0) && gen.slice(y) == Some(1) && !m.expr().lt(x, y)?)
            .then(|| witness([("x", x), ("y", y)])))
    })?;
    report.push(CheckRecord::from_outcome("(a) I below I-", b, order));

    let negs = search_1(&members, |x| {
        let s = gen.slice(x).unwrap_or(0);
        let want = Some(1 - s);
        let (l, r) = (m.lneg(x)?, m.rneg(x)?);
        Ok((gen.slice(&l) != want || gen.slice(&r) != want).then(|| witness([("x", x), ("x-", &l), ("x~", &r)])))
    })?;
    report.push(CheckRecord::from_outcome("(b) negations swap slices", b, negs));

    let sums = search_2(&members, &members, |x, y| {
        let want = (gen.slice(x).unwrap_or(0) + gen.slice(y).unwrap_or(0)).min(1);
        let s = m.oplus(x, y)?;
        Ok((gen.slice(&s) != Some(want)).then(|| witness([("x", x), ("y", y), ("x+y", &s)])))
    })?;
    report.push(CheckRecord::from_outcome("(c) slice sums", b, sums));
    Ok((gen, report))
}

/// `I ⊆ J` or `J ⊆ I` on the window.
pub fn lex_ideal_comparability(i: &IdealDesc, j: &IdealDesc, window: &Window) -> Result<Report> {
    let i_not_j = window.iter().find(|x| i.contains(x) && !j.contains(x));
    let j_not_i = window.iter().find(|x| j.contains(x) && !i.contains(x));
    let mut report = Report::new("comparability");
    report.fact(format!("{i} within {j}"), i_not_j.is_none());
    report.fact(format!("{j} within {i}"), j_not_i.is_none());
    let failure = match (i_not_j, j_not_i) {
        (Some(x), Some(y)) => Some(witness([("only in first", x), ("only in second", y)])),
        _ => None,
    };
    report.push(CheckRecord::from_outcome("comparable", bounds(window), failure));
    Ok(report)
}

/// No tail ideal lies strictly between `I` and `M` on the window.
pub fn maximal_among_tails(ideal: &IdealDesc, window: &Window) -> Result<Report> {
    let m = ideal.algebra();
    let mut failure = None;
    for k in 1..=m.dim() {
        let j = IdealDesc::tail(m, k)?;
        let contains_i = window.iter().all(|x| !ideal.contains(x) || j.contains(x));
        let larger = window.iter().find(|x| j.contains(x) && !ideal.contains(x));
        let proper = window.iter().any(|x| !j.contains(x));
        if let (true, Some(x), true) = (contains_i, larger, proper) {
            failure = Some(witness([("larger ideal", j.to_string()), ("extra element", x.to_string())]));
            break;
        }
    }
    let mut report = Report::new("maximal among tails");
    report.push(CheckRecord::from_outcome("maximal", bounds(window), failure));
    Ok(report)
}

/// The `t` with `x ≡ δ(t)`, if exactly one probe qualifies.
pub fn slice_via_section(ideal: &IdealDesc, delta: &Section, probes: &Window, x: &GroupElement) -> Result<Option<GroupElement>> {
    let mut found = None;
    for t in probes.iter() {
        if ideal.congruent(x, &delta.apply(t)?)? {
            if found.is_some() {
                return Ok(None);
            }
            found = Some(t.clone());
        }
    }
    Ok(found)
}

/// Every section induces the slice family given by the projection.
pub fn check_slice_uniqueness(ideal: &IdealDesc, sections: &[Section], window: &Window) -> Result<Report> {
    let q = quotient(ideal)?;
    let probes = q.algebra().window(window.bound)?;
    let mut report = Report::new("slice uniqueness");
    report.fact("sections", sections.len());
    for (n, delta) in sections.iter().enumerate() {
        let failure = search_1(&window.elements, |x| {
            let t = slice_via_section(ideal, delta, &probes, x)?;
            let p = q.project(x);
            Ok((t.as_ref() != Some(&p)).then(|| {
                witness([
                    ("x", x.to_string()),
                    ("slice via section", t.map_or("none".into(), |t| t.to_string())),
                    ("projection", p.to_string()),
                ])
            }))
        })?;
        report.push(
            CheckRecord::from_outcome(format!("section {n} slices"), bounds(window), failure)
                .with_detail(delta.to_string()),
        );
    }
    Ok(report)
}
