//! Heisenberg and lexicographic arithmetic, order and strong units.
use lexmv::syntax::{parse_element, parse_group};

fn main() -> lexmv::Result<()> {
    let heis = parse_group("Heis")?;
    let (x, y) = (parse_element("(1,0,0)")?, parse_element("(0,1,0)")?);
    println!("x+y = {}, y+x = {}", heis.add(&x, &y)?, heis.add(&y, &x)?);
    println!("-(1,1,0) = {}", heis.neg(&parse_element("(1,1,0)")?)?);
    println!("(1,0,0) central: {}", heis.in_center(&x)?);

    let zz = parse_group("Z lex Z")?;
    let (a, b) = (parse_element("(0,9)")?, parse_element("(1,-9)")?);
    println!("{a} < {b}: {}", zz.lt(&a, &b)?);
    for u in ["(1,0)", "(0,1)"] {
        println!("{u} strong unit in {zz}: {}", zz.is_strong_unit(&parse_element(u)?)?);
    }
    Ok(())
}
