//! Decomposition into slices and the isomorphism onto Gamma(H lex G, (u,b)).
use lexmv::ideal::{find_weak_retraction, IdealDesc};
use lexmv::repr::{build_decomposition, build_representation, check_slice_structure};
use lexmv::syntax::{parse_element, parse_spec};

fn main() -> lexmv::Result<()> {
    let m = parse_spec("Gamma(Z lex Z, (2,1))")?.algebra;
    let w = m.window(2)?;
    let i = IdealDesc::tail(&m, 1)?;
    let (family, b) = find_weak_retraction(&i, 3, 2)?.expect("weak section");
    let d = build_decomposition(&i, &w)?.with_section(family.clone());
    println!("slice of (1,-4): {}", d.slice_of(&parse_element("(1,-4)")?));
    print!("{}", check_slice_structure(&d, &w, 10)?.render_text());

    let rep = build_representation(&d, &family, &w)?;
    println!("b = {b}, target {}", rep.target);
    for x in ["(0,3)", "(1,-2)", "(2,1)"] {
        let x = parse_element(x)?;
        let y = rep.forward(&x)?;
        println!("phi{x} = {y}, back {}", rep.inverse(&y)?);
    }
    Ok(())
}
