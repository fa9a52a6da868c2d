//! Shear isomorphisms between Gamma(Z lex Z, (2,k)) for different k.
use lexmv::matrix::IntMatrix;
use lexmv::repr::{check_isomorphism, linear_map};
use lexmv::syntax::parse_spec;

fn main() -> lexmv::Result<()> {
    let m = parse_spec("Gamma(Z lex Z, (2,0))")?.algebra;
    for (target, map) in [("Gamma(Z lex Z, (2,2))", "1,0;1,1"), ("Gamma(Z lex Z, (2,-2))", "1,0;-1,1"), ("Gamma(Z lex Z, (2,1))", "1,0;1,1")] {
        let t = parse_spec(target)?.algebra;
        let a: IntMatrix = map.parse()?;
        let inv = a.inverse().expect("unimodular");
        let r = check_isomorphism(&m, &t, &linear_map(&a), &linear_map(&inv), 3)?;
        match r.first_failure() {
            None => println!("{m} -> {t} via [{a}]: isomorphism"),
            Some(f) => println!("{m} -> {t} via [{a}]: {} fails at {:?}", f.name, f.witness),
        }
    }
    Ok(())
}
