//! Checking term equations and reading counterexamples.
use lexmv::syntax::parse_spec;
use lexmv::term::{check_identity, Identity};

fn main() -> lexmv::Result<()> {
    let ids = ["2.x^2 = (2.x)^2", "x (+) y = y (+) x", "(x^- (.) y)^~ = y^~ (+) x"];
    for text in ["Gamma(Z lex Z, (1,0))", "Gamma(Z lex Z, (2,1))", "Gamma(Heis, (1,0,0))"] {
        let m = parse_spec(text)?.algebra;
        for id in ids {
            let r = check_identity(&m, &Identity::parse(id)?, &m.window(2)?)?;
            let verdict = match r.first_failure().and_then(|f| f.witness.as_ref()) {
                None => "holds".to_string(),
                Some(w) => format!("fails at {w:?}"),
            };
            println!("{m}: {id}: {verdict}");
        }
    }
    Ok(())
}
