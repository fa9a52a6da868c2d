//! Terms over `{⊕, ⊙, ⁻, ∼, 0, 1}` with iterated sums `n.t` and powers `t^n`.
//!
//! ```text
//! identity := expr "=" expr
//! expr     := prod { "(+)" prod }
//! prod     := unary { "(.)" unary }
//! unary    := INT "." unary | postfix
//! postfix  := atom { "^-" | "^~" | "^" INT }
//! atom     := VAR | "0" | "1" | "(" expr ")"
//! ```
//!
//! `⊕`, `⊙`, `⁻` and `∼` are accepted as aliases. `⊙` binds tighter than `⊕`,
//! and both associate to the left.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, ParseError, Result};
use crate::gamma::MvOps;
use crate::group::GroupElement;
use crate::report::{Bounds, CheckRecord, Report, Witness};
use crate::window::Window;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Zero,
    One,
    Oplus(Box<Term>, Box<Term>),
    Odot(Box<Term>, Box<Term>),
    LNeg(Box<Term>),
    RNeg(Box<Term>),
    /// `n.t`, the `n`-fold `⊕` of `t`.
    Mult(u32, Box<Term>),
    /// `t^n`, the `n`-fold `⊙` of `t`.
    Pow(Box<Term>, u32),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn oplus(a: Term, b: Term) -> Term {
        Term::Oplus(Box::new(a), Box::new(b))
    }

    pub fn odot(a: Term, b: Term) -> Term {
        Term::Odot(Box::new(a), Box::new(b))
    }

    pub fn mult(n: u32, t: Term) -> Term {
        Term::Mult(n, Box::new(t))
    }

    pub fn pow(t: Term, n: u32) -> Term {
        Term::Pow(Box::new(t), n)
    }

    pub fn parse(text: &str) -> Result<Term> {
        let mut p = Parser::new(text)?;
        let t = p.expr()?;
        p.expect_end()?;
        Ok(t)
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Zero | Term::One => {}
            Term::Oplus(a, b) | Term::Odot(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::LNeg(a) | Term::RNeg(a) | Term::Mult(_, a) | Term::Pow(a, _) => {
                a.collect_vars(out)
            }
        }
    }

    fn level(&self) -> u8 {
        match self {
            Term::Oplus(..) => 0,
            Term::Odot(..) => 1,
            Term::Mult(..) => 2,
            Term::LNeg(_) | Term::RNeg(_) | Term::Pow(..) => 3,
            Term::Var(_) | Term::Zero | Term::One => 4,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            f.write_str("(")?;
            self.fmt_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Zero => f.write_str("0"),
            Term::One => f.write_str("1"),
            Term::Oplus(a, b) => {
                a.fmt_at(f, 0)?;
                f.write_str(" (+) ")?;
                b.fmt_at(f, 1)
            }
            Term::Odot(a, b) => {
                a.fmt_at(f, 1)?;
                f.write_str(" (.) ")?;
                b.fmt_at(f, 2)
            }
            Term::Mult(n, a) => {
                write!(f, "{n}.")?;
                a.fmt_at(f, 2)
            }
            Term::LNeg(a) => {
                a.fmt_at(f, 3)?;
                f.write_str("^-")
            }
            Term::RNeg(a) => {
                a.fmt_at(f, 3)?;
                f.write_str("^~")
            }
            Term::Pow(a, n) => {
                a.fmt_at(f, 3)?;
                write!(f, "^{n}")
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Var(String),
    Oplus,
    Odot,
    Dot,
    LNeg,
    RNeg,
    Caret,
    LParen,
    RParen,
    Eq,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer {n}"),
            Tok::Var(v) => format!("variable `{v}`"),
            Tok::Oplus => "`(+)`".into(),
            Tok::Odot => "`(.)`".into(),
            Tok::Dot => "`.`".into(),
            Tok::LNeg => "`^-`".into(),
            Tok::RNeg => "`^~`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eq => "`=`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let rest = &text[i..];
        let (tok, len) = if c.is_whitespace() {
            chars.next();
            continue;
        } else if rest.starts_with("(+)") {
            (Tok::Oplus, 3)
        } else if rest.starts_with("(.)") {
            (Tok::Odot, 3)
        } else if rest.starts_with("^-") {
            (Tok::LNeg, 2)
        } else if rest.starts_with("^~") {
            (Tok::RNeg, 2)
        } else if c.is_ascii_digit() {
            let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
            let n = digits
                .parse()
                .map_err(|_| ParseError::new(i, &["integer below 2^64"], digits.clone()))?;
            (Tok::Int(n), digits.len())
        } else if c.is_ascii_alphabetic() {
            let name: String = rest
                .chars()
                .take_while(|c| c.is_ascii_alphanumeric() || *c == '_')
                .collect();
            let len = name.len();
            (Tok::Var(name), len)
        } else {
            let tok = match c {
                '⊕' => Tok::Oplus,
                '⊙' => Tok::Odot,
                '⁻' => Tok::LNeg,
                '∼' | '~' => Tok::RNeg,
                '.' => Tok::Dot,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '=' => Tok::Eq,
                other => return Err(ParseError::new(i, &["term"], format!("`{other}`"))),
            };
            (tok, c.len_utf8())
        };
        out.push((i, tok));
        let end = i + len;
        while chars.peek().is_some_and(|&(j, _)| j < end) {
            chars.next();
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser {
            toks: lex(text)?,
            at: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> Error {
        let (pos, tok) = &self.toks[self.at];
        ParseError::new(*pos, expected, tok.describe()).into()
    }

    fn expect_end(&self) -> Result<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.error(&["`(+)`", "`(.)`", "end of input"]))
        }
    }

    fn expr(&mut self) -> Result<Term> {
        let mut t = self.prod()?;
        while *self.peek() == Tok::Oplus {
            self.bump();
            t = Term::oplus(t, self.prod()?);
        }
        Ok(t)
    }

    fn prod(&mut self) -> Result<Term> {
        let mut t = self.unary()?;
        while *self.peek() == Tok::Odot {
            self.bump();
            t = Term::odot(t, self.unary()?);
        }
        Ok(t)
    }

    fn count(&self, n: u64) -> Result<u32> {
        u32::try_from(n).map_err(|_| self.error(&["count below 2^32"]))
    }

    fn unary(&mut self) -> Result<Term> {
        if let (Tok::Int(n), Tok::Dot) = (self.peek().clone(), self.peek2()) {
            let n = self.count(n)?;
            self.bump();
            self.bump();
            return Ok(Term::mult(n, self.unary()?));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Term> {
        let mut t = self.atom()?;
        loop {
            match self.peek() {
                Tok::LNeg => {
                    self.bump();
                    t = Term::LNeg(Box::new(t));
                }
                Tok::RNeg => {
                    self.bump();
                    t = Term::RNeg(Box::new(t));
                }
                Tok::Caret => {
                    self.bump();
                    match self.peek().clone() {
                        Tok::Int(n) => {
                            let n = self.count(n)?;
                            self.bump();
                            t = Term::pow(t, n);
                        }
                        _ => return Err(self.error(&["integer exponent", "`-`", "`~`"])),
                    }
                }
                _ => return Ok(t),
            }
        }
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Tok::Var(v) => {
                self.bump();
                Ok(Term::Var(v))
            }
            Tok::Int(0) => {
                self.bump();
                Ok(Term::Zero)
            }
            Tok::Int(1) => {
                self.bump();
                Ok(Term::One)
            }
            Tok::LParen => {
                self.bump();
                let t = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["`)`"]));
                }
                self.bump();
                Ok(t)
            }
            _ => Err(self.error(&["variable", "`0`", "`1`", "`(`", "`n.`"])),
        }
    }
}

/// An equation `lhs = rhs` between terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
}

impl Identity {
    pub fn parse(text: &str) -> Result<Identity> {
        let mut p = Parser::new(text)?;
        let lhs = p.expr()?;
        if *p.peek() != Tok::Eq {
            return Err(p.error(&["`=`"]));
        }
        p.bump();
        let rhs = p.expr()?;
        p.expect_end()?;
        Ok(Identity { lhs, rhs })
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut v = self.lhs.variables();
        v.extend(self.rhs.variables());
        v
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

pub type Env = BTreeMap<String, GroupElement>;

pub fn eval_term<A: MvOps + ?Sized>(alg: &A, t: &Term, env: &Env) -> Result<GroupElement> {
    Ok(match t {
        Term::Var(v) => env
            .get(v)
            .cloned()
            .ok_or_else(|| Error::UnboundVariable(v.clone()))?,
        Term::Zero => alg.zero(),
        Term::One => alg.one(),
        Term::Oplus(a, b) => alg.oplus(&eval_term(alg, a, env)?, &eval_term(alg, b, env)?)?,
        Term::Odot(a, b) => alg.odot(&eval_term(alg, a, env)?, &eval_term(alg, b, env)?)?,
        Term::LNeg(a) => alg.lneg(&eval_term(alg, a, env)?)?,
        Term::RNeg(a) => alg.rneg(&eval_term(alg, a, env)?)?,
        Term::Mult(n, a) => {
            let x = eval_term(alg, a, env)?;
            let mut acc = alg.zero();
            for _ in 0..*n {
                acc = alg.oplus(&acc, &x)?;
            }
            acc
        }
        Term::Pow(a, n) => {
            let x = eval_term(alg, a, env)?;
            let mut acc = alg.one();
            for _ in 0..*n {
                acc = alg.odot(&acc, &x)?;
            }
            acc
        }
    })
}

/// All assignments of window elements to `vars`, smallest total coordinate
/// size first and lexicographic within a size.
fn assignments(vars: usize, window: &Window) -> Vec<Vec<&GroupElement>> {
    let mut out: Vec<Vec<&GroupElement>> = vec![vec![]];
    for _ in 0..vars {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                window.iter().map(move |x| {
                    let mut next = prefix.clone();
                    next.push(x);
                    next
                })
            })
            .collect();
    }
    out.sort_by_key(|a| (a.iter().map(|x| x.size()).sum::<u64>(), a.clone()));
    out
}

/// Evaluates both sides on every windowed assignment.
pub fn check_identity<A: MvOps + Sync>(alg: &A, id: &Identity, window: &Window) -> Result<Report> {
    let vars: Vec<String> = id.variables().into_iter().collect();
    let all = assignments(vars.len(), window);
    let failure = all
        .par_iter()
        .map(|values| -> Result<Option<Witness>> {
            let env: Env = vars.iter().cloned().zip(values.iter().map(|x| (*x).clone())).collect();
            let l = eval_term(alg, &id.lhs, &env)?;
            let r = eval_term(alg, &id.rhs, &env)?;
            if l == r {
                return Ok(None);
            }
            let mut w: Witness = env.iter().map(|(k, v)| (k.clone(), v.to_string())).collect();
            w.insert("lhs".into(), l.to_string());
            w.insert("rhs".into(), r.to_string());
            Ok(Some(w))
        })
        .find_first(|r| !matches!(r, Ok(None)))
        .unwrap_or(Ok(None))?;
    let mut report = Report::new("identity");
    report.push(CheckRecord::from_outcome(id.to_string(), Bounds::window(window.bound), failure));
    report.fact("assignments", all.len());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::PmvAlgebra;
    use crate::group::GroupExpr;
    use proptest::prelude::*;

    fn e<const N: usize>(c: [i64; N]) -> GroupElement {
        GroupElement::from(c)
    }

    fn zz(u: [i64; 2]) -> PmvAlgebra {
        PmvAlgebra::new(GroupExpr::lex(GroupExpr::Z, GroupExpr::Z), e(u)).unwrap()
    }

    fn basis() -> Identity {
        Identity::parse("2.x^2 = (2.x)^2").unwrap()
    }

    #[test]
    fn parses_with_precedence() {
        let t = Term::parse("x (+) y (.) z").unwrap();
        assert_eq!(t, Term::oplus(Term::var("x"), Term::odot(Term::var("y"), Term::var("z"))));
        let t = Term::parse("2.x^2").unwrap();
        assert_eq!(t, Term::mult(2, Term::pow(Term::var("x"), 2)));
        let t = Term::parse("x ⊕ y⁻ ⊙ 1").unwrap();
        assert_eq!(
            t,
            Term::oplus(
                Term::var("x"),
                Term::odot(Term::LNeg(Box::new(Term::var("y"))), Term::One)
            )
        );
        assert_eq!(basis().variables().len(), 1);
    }

    #[test]
    fn parse_errors_have_positions() {
        let Err(Error::Parse(p)) = Term::parse("x (+) ") else {
            panic!("expected parse error")
        };
        assert_eq!(p.position, 6);
        let Err(Error::Parse(p)) = Term::parse("(x (+) y") else {
            panic!("expected parse error")
        };
        assert_eq!(p.position, 8);
        assert!(Term::parse("x^").is_err());
        assert!(Term::parse("7").is_err());
        assert!(Identity::parse("x").is_err());
    }

    #[test]
    fn basis_identity_evaluation() {
        let id = basis();
        let m = zz([1, 0]);
        let env: Env = [("x".to_string(), e([1, -3]))].into();
        assert_eq!(eval_term(&m, &id.lhs, &env).unwrap(), e([1, 0]));
        assert_eq!(eval_term(&m, &id.rhs, &env).unwrap(), e([1, 0]));
        let m = zz([2, 1]);
        let env: Env = [("x".to_string(), e([1, 0]))].into();
        assert_eq!(eval_term(&m, &id.lhs, &env).unwrap(), e([0, 0]));
        assert_eq!(eval_term(&m, &id.rhs, &env).unwrap(), e([2, -1]));
        let env: Env = [("x".to_string(), e([0, 0]))].into();
        assert_eq!(eval_term(&m, &id.lhs, &env).unwrap(), e([0, 0]));
        assert_eq!(eval_term(&m, &id.rhs, &env).unwrap(), e([0, 0]));
        assert_eq!(
            eval_term(&m, &Term::var("y"), &env),
            Err(Error::UnboundVariable("y".into()))
        );
    }

    #[test]
    fn identity_checks() {
        let m = zz([1, 0]);
        let r = check_identity(&m, &basis(), &m.window(3).unwrap()).unwrap();
        assert!(r.passed());
        let m = zz([2, 1]);
        let r = check_identity(&m, &basis(), &m.window(3).unwrap()).unwrap();
        let w = r.first_failure().unwrap().witness.as_ref().unwrap();
        assert_eq!(w["x"], "(1,0)");
        let h = PmvAlgebra::new(GroupExpr::Heis, e([1, 0, 0])).unwrap();
        let comm = Identity::parse("x (+) y = y (+) x").unwrap();
        let r = check_identity(&h, &comm, &h.window(1).unwrap()).unwrap();
        assert!(!r.passed());
    }

    fn arb_term() -> impl Strategy<Value = Term> {
        let leaf = prop_oneof![
            Just(Term::Zero),
            Just(Term::One),
            "[xyz][0-9]?".prop_map(Term::Var),
        ];
        leaf.prop_recursive(4, 32, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::oplus(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::odot(a, b)),
                inner.clone().prop_map(|a| Term::LNeg(Box::new(a))),
                inner.clone().prop_map(|a| Term::RNeg(Box::new(a))),
                (0u32..4, inner.clone()).prop_map(|(n, a)| Term::mult(n, a)),
                (inner, 0u32..4).prop_map(|(a, n)| Term::pow(a, n)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity(t in arb_term()) {
            let printed = t.to_string();
            prop_assert_eq!(Term::parse(&printed).unwrap(), t);
        }
    }
}
