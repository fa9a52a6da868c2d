//! Text form of algebras: `Gamma(group, unit)`.
//!
//! ```text
//! spec    := "Gamma" "(" group "," element ")"
//! group   := product { "lex" product }
//! product := atom { "x" atom }
//! atom    := "Z" | "O" | "Heis" | "(" group ")"
//! element := INT | "(" [ element { "," element } ] ")"
//! ```
//!
//! Both products associate to the left and `x` binds tighter than `lex`.
//! Nested elements are flattened, so `(1,(0,0,0))` and `(1,0,0,0)` agree.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError, Result};
use crate::gamma::PmvAlgebra;
use crate::group::{GroupElement, GroupExpr};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    LParen,
    RParen,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("integer {n}"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '(' => {
                i += 1;
                Tok::LParen
            }
            ')' => {
                i += 1;
                Tok::RParen
            }
            ',' => {
                i += 1;
                Tok::Comma
            }
            '-' | '0'..='9' => {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let s = &text[start..i];
                let n = s
                    .parse()
                    .map_err(|_| ParseError::new(start, &["integer"], format!("`{s}`")))?;
                Tok::Int(n)
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i] as char).is_ascii_alphanumeric() {
                    i += 1;
                }
                Tok::Ident(text[start..i].to_string())
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or(c);
                return Err(ParseError::new(start, &["group or element"], format!("`{ch}`")));
            }
        };
        out.push((start, tok));
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

    fn bump(&mut self) {
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
    }

    fn error(&self, expected: &[&str]) -> Error {
        let (pos, tok) = &self.toks[self.at];
        ParseError::new(*pos, expected, tok.describe()).into()
    }

    fn expect(&mut self, tok: Tok, name: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    fn is_ident(&self, name: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == name)
    }

    fn group(&mut self) -> Result<GroupExpr> {
        let mut g = self.product()?;
        while self.is_ident("lex") {
            self.bump();
            g = GroupExpr::lex(g, self.product()?);
        }
        Ok(g)
    }

    fn product(&mut self) -> Result<GroupExpr> {
        let mut factors = vec![self.atom()?];
        while self.is_ident("x") {
            self.bump();
            factors.push(self.atom()?);
        }
        if factors.len() == 1 {
            return Ok(factors.pop().expect("one factor"));
        }
        let flat = factors
            .into_iter()
            .flat_map(|f| match f {
                GroupExpr::Direct(inner) => inner,
                other => vec![other],
            })
            .collect();
        Ok(GroupExpr::direct(flat))
    }

    fn atom(&mut self) -> Result<GroupExpr> {
        let g = match self.peek() {
            Tok::Ident(s) if s == "Z" => GroupExpr::Z,
            Tok::Ident(s) if s == "O" => GroupExpr::Trivial,
            Tok::Ident(s) if s == "Heis" => GroupExpr::Heis,
            Tok::LParen => {
                self.bump();
                let g = self.group()?;
                self.expect(Tok::RParen, "`)`")?;
                return Ok(g);
            }
            _ => return Err(self.error(&["`Z`", "`O`", "`Heis`", "`(`"])),
        };
        self.bump();
        Ok(g)
    }

    fn element(&mut self, out: &mut Vec<i64>) -> Result<()> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                out.push(n);
                Ok(())
            }
            Tok::LParen => {
                self.bump();
                if *self.peek() == Tok::RParen {
                    self.bump();
                    return Ok(());
                }
                self.element(out)?;
                while *self.peek() == Tok::Comma {
                    self.bump();
                    self.element(out)?;
                }
                self.expect(Tok::RParen, "`)` or `,`")
            }
            _ => Err(self.error(&["integer", "`(`"])),
        }
    }

    fn end(&self) -> Result<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.error(&["end of input"]))
        }
    }
}

pub fn parse_group(text: &str) -> Result<GroupExpr> {
    let mut p = Parser::new(text)?;
    let g = p.group()?;
    p.end()?;
    g.validate()?;
    Ok(g)
}

pub fn parse_element(text: &str) -> Result<GroupElement> {
    let mut p = Parser::new(text)?;
    let mut coords = Vec::new();
    p.element(&mut coords)?;
    p.end()?;
    Ok(GroupElement::new(coords))
}

/// A parsed algebra together with the text it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub source: String,
    pub algebra: PmvAlgebra,
}

pub fn parse_spec(text: &str) -> Result<AlgebraSpec> {
    let mut p = Parser::new(text)?;
    if !p.is_ident("Gamma") {
        return Err(p.error(&["`Gamma`"]));
    }
    p.bump();
    p.expect(Tok::LParen, "`(`")?;
    let group = p.group()?;
    p.expect(Tok::Comma, "`,`")?;
    let mut coords = Vec::new();
    p.element(&mut coords)?;
    p.expect(Tok::RParen, "`)`")?;
    p.end()?;
    let algebra = PmvAlgebra::new(group, GroupElement::new(coords))?;
    Ok(AlgebraSpec {
        source: text.to_string(),
        algebra,
    })
}

impl FromStr for AlgebraSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_spec(s)
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.algebra.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_nested_algebras() {
        let s = parse_spec("Gamma(Z lex Z, (2,1))").unwrap();
        assert_eq!(*s.algebra.expr(), GroupExpr::lex(GroupExpr::Z, GroupExpr::Z));
        assert_eq!(*s.algebra.unit(), GroupElement::from([2, 1]));
        let s = parse_spec("Gamma(Heis, (1,0,0))").unwrap();
        assert_eq!(*s.algebra.expr(), GroupExpr::Heis);
        let s = parse_spec("Gamma(Z lex Heis, (1,(0,0,0)))").unwrap();
        assert_eq!(s.algebra.dim(), 4);
        let s = parse_spec("Gamma(Z, 2)").unwrap();
        assert_eq!(s.to_string(), "Gamma(Z, 2)");
    }

    #[test]
    fn precedence_and_associativity() {
        let g = parse_group("Z lex Z x Z").unwrap();
        assert_eq!(
            g,
            GroupExpr::lex(GroupExpr::Z, GroupExpr::direct(vec![GroupExpr::Z, GroupExpr::Z]))
        );
        let g = parse_group("Z lex Z lex Z").unwrap();
        assert_eq!(g, GroupExpr::lex(GroupExpr::lex(GroupExpr::Z, GroupExpr::Z), GroupExpr::Z));
        let g = parse_group("(Z x Z) x Z").unwrap();
        assert_eq!(g, GroupExpr::direct(vec![GroupExpr::Z; 3]));
        assert!(parse_group("Z x Z lex Z").is_err());
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_spec("Gamma(Z lex Z, (0,1))"),
            Err(Error::NotStrongUnit { .. })
        ));
        assert!(matches!(
            parse_spec("Gamma(Z lex Z, (1,0,0))"),
            Err(Error::ShapeMismatch { expected: 2, found: 3 })
        ));
        let Err(Error::Parse(p)) = parse_spec("Gamma(Z lex , 1)") else {
            panic!("expected parse error")
        };
        assert_eq!(p.position, 12);
        assert!(p.expected.contains(&"`Heis`".to_string()));
        let Err(Error::Parse(p)) = parse_spec("Gamma(Z, 1") else {
            panic!("expected parse error")
        };
        assert_eq!(p.position, 10);
        assert!(parse_spec("Gamma(Z, 1) junk").is_err());
        assert!(parse_spec("Gamma(Z, $)").is_err());
    }

    fn arb_group() -> impl Strategy<Value = GroupExpr> {
        let leaf = prop_oneof![Just(GroupExpr::Z), Just(GroupExpr::Heis), Just(GroupExpr::Trivial)];
        leaf.prop_recursive(3, 12, 3, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(h, t)| GroupExpr::lex(h, t)),
                prop::collection::vec(inner, 2..4).prop_map(|fs| {
                    let flat = fs
                        .into_iter()
                        .flat_map(|f| match f {
                            GroupExpr::Direct(inner) => inner,
                            other => vec![other],
                        })
                        .collect();
                    GroupExpr::direct(flat)
                }),
            ]
        })
    }

    proptest! {
        #[test]
        fn group_print_parse_round_trip(g in arb_group()) {
            prop_assume!(g.validate().is_ok());
            prop_assert_eq!(parse_group(&g.to_string()).unwrap(), g);
        }

        #[test]
        fn spec_print_parse_is_idempotent(k in 1i64..5, t in -5i64..5) {
            let text = format!("Gamma(Z lex Z, ({k},{t}))");
            let once = parse_spec(&text).unwrap();
            let twice = parse_spec(&once.to_string()).unwrap();
            prop_assert_eq!(once.algebra, twice.algebra);
        }
    }
}
