//! Exhaustive axiom check on a window and the non-commuting negations of Heis.
use lexmv::gamma::symmetry_witness;
use lexmv::syntax::parse_spec;

fn main() -> lexmv::Result<()> {
    for text in ["Gamma(Z lex Z, (2,1))", "Gamma(Heis, (1,0,0))"] {
        let m = parse_spec(text)?.algebra;
        let w = m.window(2)?;
        print!("{}", lexmv::check_axioms(&m, &w)?.render_text());
        let sym = symmetry_witness(&m, &w)?;
        match &sym.witness {
            Some(x) => println!("  x={x}: x^- = {}, x~ = {}", m.lneg(x)?, m.rneg(x)?),
            None => println!("  negations agree on the window"),
        }
    }
    Ok(())
}
