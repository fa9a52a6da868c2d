//! Building algebras from (H,u), G and b, and lifting l-homomorphisms.
use lexmv::matrix::IntMatrix;
use lexmv::repr::{functor_morphism, functor_object};
use lexmv::syntax::{parse_element, parse_group};
use lexmv::UnitalGroup;

fn main() -> lexmv::Result<()> {
    let h = UnitalGroup::new(parse_group("Z")?, parse_element("2")?)?;
    for (g, b) in [("Z", "1"), ("Z x Z", "(0,1)"), ("Heis", "(0,0,1)")] {
        let obj = functor_object(&h, &parse_group(g)?, &parse_element(b)?)?;
        println!("{} with ideal {} and section {}", obj.algebra, obj.ideal, obj.section);
    }
    let z = parse_group("Z")?;
    for k in [2, -1] {
        match functor_morphism(&h, &z, &z, &IntMatrix::scalar(1, k), 2) {
            Ok((lift, r)) => println!("h = {k} lifts: {} ({})", lift.apply(&parse_element("(1,3)")?)?, r.aggregate().as_str()),
            Err(e) => println!("h = {k} rejected: {e}"),
        }
    }
    Ok(())
}
