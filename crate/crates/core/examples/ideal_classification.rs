//! Tail ideals: structure checks, quotients and the lexicographic label.
use lexmv::ideal::{classify_ideal, lex_ideal_comparability, quotient, IdealDesc};
use lexmv::syntax::parse_spec;

fn main() -> lexmv::Result<()> {
    let cases = [
        ("Gamma(Z lex Z, (2,1))", 1),
        ("Gamma(Z lex (Z lex Z), (1,0,0))", 1),
        ("Gamma(Z lex (Z lex Z), (1,0,0))", 2),
        ("Gamma(Heis, (1,0,0))", 1),
    ];
    for (text, depth) in cases {
        let m = parse_spec(text)?.algebra;
        let i = IdealDesc::tail(&m, depth)?;
        let c = classify_ideal(&i, 3, &m.window(2)?)?;
        let b = c.offset.map(|b| b.to_string()).unwrap_or_else(|| "-".into());
        println!("{m} {i}: {} (b = {b}, quotient {})", c.label, quotient(&i)?.algebra());
    }
    let m = parse_spec("Gamma(Z lex (Z lex Z), (1,0,0))")?.algebra;
    let (i1, i2) = (IdealDesc::tail(&m, 1)?, IdealDesc::tail(&m, 2)?);
    print!("{}", lex_ideal_comparability(&i2, &i1, &m.window(2)?)?.render_text());
    Ok(())
}
