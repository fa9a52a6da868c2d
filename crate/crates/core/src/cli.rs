//! Command-line front end. `main.rs` only forwards to [`run`].

use std::io::{Read, Write};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::effect::{canonical_state, check_differences, check_pe_axioms, check_rdp2, check_state};
use crate::error::{Error, Result};
use crate::gamma::{check_axioms, symmetry_witness, PmvAlgebra};
use crate::ideal::{
    check_quotient, classify_ideal, find_retraction, find_weak_retraction, generated_subalgebra,
    is_ideal, is_normal, is_prime, is_strict, maximal_among_tails, quotient, IdealDesc,
};
use crate::matrix::IntMatrix;
use crate::repr::{
    build_decomposition, build_representation, check_isomorphism, check_strong_perfect,
    check_slice_structure, check_weak_perfect, linear_map,
};
use crate::report::{Bounds, CheckRecord, Report};
use crate::syntax::parse_spec;
use crate::term::{check_identity, Identity};

#[derive(Debug, Parser)]
#[command(name = "lexmv", version, about = "Exact checks for pseudo MV-algebras Gamma(G,u)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Algebra such as "Gamma(Z lex Z, (2,1))", or "-" to read it from stdin.
    pub spec: String,
    /// Coordinate bound of the enumeration window.
    #[arg(long, default_value_t = 3)]
    pub bound: i64,
    /// Entry bound for section searches.
    #[arg(long, default_value_t = 5)]
    pub search: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct WithIdeal {
    #[command(flatten)]
    pub common: Common,
    /// `tail:J`, `zero` or `full`.
    #[arg(long, default_value = "tail:1")]
    pub ideal: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Axioms, negation symmetry and the induced effect algebra.
    Axioms {
        #[command(flatten)]
        common: Common,
        /// Also search refinements for every equal pair of sums.
        #[arg(long)]
        rdp2: bool,
    },
    /// Ideal, normality, primeness, strictness, quotient and generated subalgebra.
    Ideals(WithIdeal),
    /// Lexicographic, weakly lexicographic or neither.
    Classify(WithIdeal),
    /// Slices over the quotient and their structural properties.
    Decompose(WithIdeal),
    /// The representation onto Gamma(H lex G, (u,b)).
    Represent(WithIdeal),
    /// Checks an equation between terms on every windowed assignment.
    Identity {
        #[command(flatten)]
        common: Common,
        /// For example "2.x^2 = (2.x)^2".
        equation: String,
    },
    /// Checks that a coordinate matrix is an isomorphism between two algebras.
    Isocheck {
        #[command(flatten)]
        common: Common,
        /// Target algebra.
        target: String,
        /// Rows separated by `;`, entries by `,`.
        #[arg(long)]
        map: String,
    },
}

fn load(spec: &str, stdin: &mut dyn Read) -> Result<PmvAlgebra> {
    if spec == "-" {
        let mut text = String::new();
        stdin
            .read_to_string(&mut text)
            .map_err(|e| Error::Precondition(format!("reading stdin: {e}")))?;
        return Ok(parse_spec(text.trim())?.algebra);
    }
    Ok(parse_spec(spec)?.algebra)
}

pub fn parse_ideal(algebra: &PmvAlgebra, text: &str) -> Result<IdealDesc> {
    match text {
        "zero" => Ok(IdealDesc::zero(algebra)),
        "full" => Ok(IdealDesc::full(algebra)),
        _ => {
            let depth = text
                .strip_prefix("tail:")
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| Error::Precondition(format!("unknown ideal `{text}`")))?;
            IdealDesc::tail(algebra, depth)
        }
    }
}

fn axioms(m: &PmvAlgebra, bound: i64, rdp2: bool) -> Result<Report> {
    let w = m.window(bound)?;
    let mut report = Report::new("axioms");
    report.fact("algebra", m);
    report.absorb("pmv", check_axioms(m, &w)?);
    let sym = symmetry_witness(m, &w)?;
    report.absorb("symmetry", sym.report(m, &w)?);
    report.absorb("effect", check_pe_axioms(m, &w)?);
    report.absorb("effect", check_differences(m, &w)?);
    match canonical_state(m) {
        Ok(s) => report.absorb("state", check_state(m, &s, &w)?),
        Err(Error::Unsupported(msg)) => report.fact("state", msg),
        Err(e) => return Err(e),
    }
    if rdp2 {
        report.absorb("rdp2", check_rdp2(m, &w)?);
    }
    Ok(report)
}

fn ideals(m: &PmvAlgebra, ideal: &IdealDesc, bound: i64) -> Result<Report> {
    let w = m.window(bound)?;
    let mut report = Report::new("ideals");
    report.fact("algebra", m);
    report.fact("ideal", ideal);
    report.absorb("ideal", is_ideal(ideal, &w)?);
    report.absorb("normal", is_normal(ideal, &w)?);
    report.absorb("prime", is_prime(ideal, &w)?);
    report.absorb("strict", is_strict(ideal, &w)?);
    match quotient(ideal) {
        Ok(q) => {
            report.fact("quotient", q.algebra());
            report.absorb("quotient", check_quotient(ideal, &q, &w)?);
            report.absorb("maximal", maximal_among_tails(ideal, &w)?);
        }
        Err(Error::Unsupported(msg)) => {
            report.push(CheckRecord::unsupported("quotient", Bounds::window(bound), msg))
        }
        Err(e) => return Err(e),
    }
    match generated_subalgebra(ideal, &w) {
        Ok((_, r)) => report.absorb("generated", r),
        Err(Error::Precondition(msg)) => {
            report.push(CheckRecord::unsupported("generated", Bounds::window(bound), msg))
        }
        Err(e) => return Err(e),
    }
    Ok(report)
}

fn classify(m: &PmvAlgebra, ideal: &IdealDesc, bound: i64, k: i64) -> Result<Report> {
    let c = classify_ideal(ideal, k, &m.window(bound)?)?;
    let mut report = c.report;
    report.fact("algebra", m);
    Ok(report)
}

fn decompose(m: &PmvAlgebra, ideal: &IdealDesc, bound: i64, k: i64) -> Result<Report> {
    let w = m.window(bound)?;
    let mut d = build_decomposition(ideal, &w)?;
    let mut report = Report::new("decompose");
    report.fact("algebra", m);
    report.fact("quotient", d.quotient().algebra());
    if let Some(s) = find_retraction(ideal, k, bound)? {
        report.fact("section", &s);
        d = d.with_section(s);
    } else if let Some((s, _)) = find_weak_retraction(ideal, k, bound)? {
        report.fact("weak section", &s);
        d = d.with_section(s);
    }
    report.absorb("structure", check_slice_structure(&d, &w, 10)?);
    Ok(report)
}

fn represent(m: &PmvAlgebra, ideal: &IdealDesc, bound: i64, k: i64) -> Result<Report> {
    let w = m.window(bound)?;
    let d = build_decomposition(ideal, &w)?;
    let mut report = Report::new("represent");
    report.fact("algebra", m);
    let b = Bounds::window(bound).with_search(k);
    let family = if let Some(s) = find_retraction(ideal, k, bound)? {
        report.fact("family", "strong");
        report.absorb("family", check_strong_perfect(&d, &s, &w)?);
        s
    } else if let Some((s, _)) = find_weak_retraction(ideal, k, bound)? {
        report.fact("family", "weak");
        report.absorb("family", check_weak_perfect(&d, &s, &w)?);
        s
    } else {
        report.push(CheckRecord::fail(
            "family",
            b,
            crate::report::witness([("search bound", k)]),
        ));
        return Ok(report);
    };
    let rep = build_representation(&d, &family, &w)?;
    report.fact("target", &rep.target);
    report.fact("b", &rep.offset);
    report.absorb("phi", rep.report);
    Ok(report)
}

fn isocheck(m1: &PmvAlgebra, m2: &PmvAlgebra, map: &str, bound: i64) -> Result<Report> {
    let a: IntMatrix = map.parse()?;
    let inv = a
        .inverse()
        .ok_or_else(|| Error::Precondition(format!("matrix {a} has no integer inverse")))?;
    let (f, g) = (linear_map(&a), linear_map(&inv));
    check_isomorphism(m1, m2, &f, &g, bound)
}

fn dispatch(cli: Cli, stdin: &mut dyn Read) -> Result<(Report, Format)> {
    Ok(match cli.command {
        Command::Axioms { common, rdp2 } => {
            let m = load(&common.spec, stdin)?;
            (axioms(&m, common.bound, rdp2)?, common.format)
        }
        Command::Ideals(a) => {
            let m = load(&a.common.spec, stdin)?;
            let i = parse_ideal(&m, &a.ideal)?;
            (ideals(&m, &i, a.common.bound)?, a.common.format)
        }
        Command::Classify(a) => {
            let m = load(&a.common.spec, stdin)?;
            let i = parse_ideal(&m, &a.ideal)?;
            (classify(&m, &i, a.common.bound, a.common.search)?, a.common.format)
        }
        Command::Decompose(a) => {
            let m = load(&a.common.spec, stdin)?;
            let i = parse_ideal(&m, &a.ideal)?;
            (decompose(&m, &i, a.common.bound, a.common.search)?, a.common.format)
        }
        Command::Represent(a) => {
            let m = load(&a.common.spec, stdin)?;
            let i = parse_ideal(&m, &a.ideal)?;
            (represent(&m, &i, a.common.bound, a.common.search)?, a.common.format)
        }
        Command::Identity { common, equation } => {
            let m = load(&common.spec, stdin)?;
            let id = Identity::parse(&equation)?;
            let mut r = check_identity(&m, &id, &m.window(common.bound)?)?;
            r.fact("algebra", &m);
            (r, common.format)
        }
        Command::Isocheck {
            common,
            target,
            map,
        } => {
            let m1 = load(&common.spec, stdin)?;
            let m2 = load(&target, stdin)?;
            (isocheck(&m1, &m2, &map, common.bound)?, common.format)
        }
    })
}

/// Runs one invocation and returns the process exit code: `0` when every
/// check passed, `1` on a counterexample, `2` on unsupported input or misuse.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    let start = Instant::now();
    match dispatch(cli, stdin) {
        Ok((mut report, format)) => {
            report.timing_ms = start.elapsed().as_millis() as u64;
            let text = match format {
                Format::Text => report.render_text(),
                Format::Json => report.to_json() + "\n",
            };
            let _ = out.write_all(text.as_bytes());
            report.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
