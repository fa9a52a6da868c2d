//! Partial addition, differences, refinements and the canonical state.
use lexmv::effect::{canonical_state, check_pe_axioms, check_rdp2, find_refinement};
use lexmv::syntax::{parse_element, parse_spec};

fn main() -> lexmv::Result<()> {
    let m = parse_spec("Gamma(Z lex Z, (2,1))")?.algebra;
    let (a, b) = (parse_element("(1,0)")?, parse_element("(1,1)")?);
    println!("{a} + {b} = {:?}", m.partial_add(&a, &b)?.map(|s| s.to_string()));
    println!("{a} + (2,0) = {:?}", m.partial_add(&a, &parse_element("(2,0)")?)?);
    println!("(2,1) \\ (1,0) = {}", m.minus_li(m.unit(), &a)?);

    let w = m.window(2)?;
    print!("{}", check_pe_axioms(&m, &w)?.render_text());
    let z = parse_spec("Gamma(Z, 2)")?.algebra;
    let (one, two, zero) = (parse_element("1")?, parse_element("2")?, parse_element("0")?);
    let r = find_refinement(&z, &z.window(2)?, (&one, &one), (&two, &zero))?;
    println!("1+1 = 2+0 refines as {r:?}");
    print!("{}", check_rdp2(&z, &z.window(2)?)?.render_text());

    let s = canonical_state(&m)?;
    for x in ["(0,5)", "(1,-3)", "(2,1)"] {
        println!("s{x} = {}", s.value(&parse_element(x)?));
    }
    Ok(())
}
