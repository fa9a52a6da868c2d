//! Acceptance gate. Prints one line per criterion, then fails if any did.

use lexmv::effect::{canonical_state, check_differences, check_pe_axioms, check_rdp2, check_state};
use lexmv::gamma::symmetry_witness;
use lexmv::ideal::{
    classify_ideal, find_retraction, find_weak_retraction, lex_ideal_comparability, IdealDesc, IdealLabel,
    Section,
};
use lexmv::matrix::IntMatrix;
use lexmv::repr::{
    build_decomposition, build_representation, check_isomorphism, check_representation, check_slice_structure,
    family_offset, functor_object, linear_map,
};
use lexmv::syntax::parse_spec;
use lexmv::term::{check_identity, Identity};
use lexmv::{check_axioms, GroupElement, GroupExpr, PmvAlgebra, Report, UnitalGroup, Verdict};
use num_rational::Ratio;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn alg(text: &str) -> PmvAlgebra {
    parse_spec(text).unwrap().algebra
}

fn e(c: &[i64]) -> GroupElement {
    GroupElement::new(c.iter().copied())
}

const SHIPPED: [&str; 6] = [
    "Gamma(Z, 2)",
    "Gamma(Z lex Z, (1,0))",
    "Gamma(Z lex Z, (2,1))",
    "Gamma(Z lex (Z lex Z), (1,0,0))",
    "Gamma(Heis, (1,0,0))",
    "Gamma(Z lex Heis, (1,0,0,0))",
];

fn require(r: &Report, what: &str) -> Result<(), String> {
    match r.first_failure() {
        None if r.aggregate() == Verdict::Pass => Ok(()),
        Some(f) => Err(format!("{what}: {} failed {:?}", f.name, f.witness)),
        None => Err(format!("{what}: unsupported\n{}", r.render_text())),
    }
}

fn axioms() -> Outcome {
    let mut sizes = Vec::new();
    for s in SHIPPED {
        let m = alg(s);
        let w = m.window(2).map_err(|x| x.to_string())?;
        require(&check_axioms(&m, &w).map_err(|x| x.to_string())?, s)?;
        sizes.push(w.len().to_string());
    }
    Ok(format!("6 algebras, window sizes {}", sizes.join("/")))
}

// Direct Heisenberg evaluation, independent of the library group code.
fn heis_add(x: [i64; 3], y: [i64; 3]) -> [i64; 3] {
    [x[0] + y[0], x[1] + y[1], x[2] + y[2] + x[0] * y[1]]
}

fn heis_neg(x: [i64; 3]) -> [i64; 3] {
    [-x[0], -x[1], -x[2] + x[0] * x[1]]
}

fn symmetry() -> Outcome {
    let u = [1, 0, 0];
    let x = [0, 1, 0];
    let lneg = heis_add(u, heis_neg(x));
    let rneg = heis_add(heis_neg(x), u);
    if lneg != [1, -1, -1] || rneg != [1, -1, 0] {
        return Err(format!("oracle gave {lneg:?} and {rneg:?}"));
    }
    let m = alg("Gamma(Heis, (1,0,0))");
    let w = m.window(2).map_err(|x| x.to_string())?;
    let xe = e(&x);
    let (l, r) = (m.lneg(&xe).unwrap(), m.rneg(&xe).unwrap());
    if l != e(&lneg) || r != e(&rneg) {
        return Err(format!("library gave {l} and {r}"));
    }
    let sym = symmetry_witness(&m, &w).map_err(|x| x.to_string())?;
    let central = m.group().expr().in_center(m.unit()).map_err(|x| x.to_string())?;
    if sym.witness.is_none() || central || sym.unit_central || !sym.agrees() {
        return Err(format!("{sym:?} central={central}"));
    }
    Ok(format!("x=(0,1,0): x^-={l}, x~={r}, u central: {central}"))
}

fn weak_example() -> Outcome {
    let m = alg("Gamma(Z lex Z, (2,1))");
    let i = IdealDesc::tail(&m, 1).unwrap();
    let w = m.window(3).unwrap();
    let mut b = None;
    for k in 0..=10 {
        let c = classify_ideal(&i, k, &w).map_err(|x| x.to_string())?;
        if c.label != IdealLabel::WeaklyLexicographic {
            return Err(format!("K={k}: {}", c.label));
        }
        b = c.offset;
    }
    let b = b.ok_or("no offset")?;
    if b != e(&[1]) {
        return Err(format!("b={b}"));
    }
    Ok(format!("WeaklyLexicographic for K=0..10, b={b}"))
}

fn three_chain() -> Outcome {
    let m = alg("Gamma(Z lex (Z lex Z), (1,0,0))");
    let w = m.window(2).unwrap();
    let (i1, i2) = (IdealDesc::tail(&m, 1).unwrap(), IdealDesc::tail(&m, 2).unwrap());
    for i in [&i1, &i2] {
        let c = classify_ideal(i, 3, &w).map_err(|x| x.to_string())?;
        if c.label != IdealLabel::Lexicographic {
            return Err(format!("{i}: {}\n{}", c.label, c.report.render_text()));
        }
    }
    let r = lex_ideal_comparability(&i2, &i1, &w).map_err(|x| x.to_string())?;
    require(&r, "comparability")?;
    let inside = r.facts["tail:2 within tail:1"] == "true";
    let strict = r.facts["tail:1 within tail:2"] == "false";
    if !(inside && strict) {
        return Err(format!("{:?}", r.facts));
    }
    Ok("tail:1 and tail:2 Lexicographic, tail:2 strictly inside tail:1".into())
}

fn round_trip() -> Outcome {
    let heads = [
        UnitalGroup::new(GroupExpr::Z, e(&[1])).unwrap(),
        UnitalGroup::new(GroupExpr::Z, e(&[2])).unwrap(),
        UnitalGroup::new(GroupExpr::lex(GroupExpr::Z, GroupExpr::Z), e(&[1, 0])).unwrap(),
    ];
    let tails: [(GroupExpr, Vec<i64>); 3] = [
        (GroupExpr::Z, vec![1]),
        (GroupExpr::direct(vec![GroupExpr::Z, GroupExpr::Z]), vec![1, 1]),
        (GroupExpr::Heis, vec![0, 0, 1]),
    ];
    let mut count = 0;
    for h in &heads {
        for (g, pos) in &tails {
            for b in [g.zero(), e(pos)] {
                let obj = functor_object(h, g, &b).map_err(|x| x.to_string())?;
                let w = obj.algebra.window(2).unwrap();
                let d = build_decomposition(&obj.ideal, &w).map_err(|x| x.to_string())?;
                let d = d.with_section(obj.section.clone());
                let rep = build_representation(&d, &obj.section, &w).map_err(|x| format!("{}: {x}", obj.algebra))?;
                if rep.offset != b || rep.target.unit() != obj.algebra.unit() || rep.target.dim() != obj.algebra.dim() {
                    return Err(format!("{}: target {} b={}", obj.algebra, rep.target, rep.offset));
                }
                require(&check_representation(&rep, &w).map_err(|x| x.to_string())?, &obj.algebra.to_string())?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} functor objects reproduced (u,b)"))
}

fn thetas() -> Outcome {
    let m = alg("Gamma(Z lex Z, (2,0))");
    let mut offsets = vec![];
    let cases = [
        ("Gamma(Z lex Z, (2,2))", "1,0;1,1", 1, 0),
        ("Gamma(Z lex Z, (2,-2))", "1,0;-1,1", -1, -2),
    ];
    for (target, map, step, slope) in cases {
        let mi = alg(target);
        let a: IntMatrix = map.parse().unwrap();
        let inv = a.inverse().ok_or("no inverse")?;
        let (f, g) = (linear_map(&a), linear_map(&inv));
        for t in 0..=2 {
            for n in -3..=3 {
                let img = f(&e(&[t, n])).unwrap();
                if img != e(&[t, n + step * t]) {
                    return Err(format!("theta({t},{n}) = {img}"));
                }
            }
        }
        require(&check_isomorphism(&m, &mi, &f, &g, 3).map_err(|x| x.to_string())?, target)?;
        let w = mi.window(2).unwrap();
        let d = build_decomposition(&IdealDesc::tail(&mi, 1).unwrap(), &w).unwrap();
        let family = Section::Linear(IntMatrix::scalar(1, slope));
        offsets.push(family_offset(&d, &family).map_err(|x| x.to_string())?);
    }
    let w = m.window(2).unwrap();
    let d = build_decomposition(&IdealDesc::tail(&m, 1).unwrap(), &w).unwrap();
    let b0 = family_offset(&d, &Section::canonical(1, 1)).unwrap();
    if b0 != e(&[0, 0]) || offsets.iter().any(|b| *b != e(&[0, 2])) {
        return Err(format!("b values {b0} {offsets:?}"));
    }
    Ok(format!("theta1, theta2 verified at bound 3; b={b0} on M vs {} on M1 and M2", offsets[0]))
}

fn effect_layer() -> Outcome {
    for s in SHIPPED {
        let m = alg(s);
        let w = m.window(2).unwrap();
        require(&check_differences(&m, &w).map_err(|x| x.to_string())?, s)?;
        require(&check_pe_axioms(&m, &w).map_err(|x| x.to_string())?, s)?;
    }
    let mut counts = vec![];
    for s in ["Gamma(Z, 2)", "Gamma(Z lex Z, (1,0))"] {
        let m = alg(s);
        let r = check_rdp2(&m, &m.window(2).unwrap()).map_err(|x| x.to_string())?;
        require(&r, s)?;
        if r.facts["instances"] != r.facts["witnessed"] {
            return Err(format!("{s}: {:?}", r.facts));
        }
        counts.push(r.facts["instances"].clone());
    }
    Ok(format!("PE1-PE4 and oplus agreement on 6 algebras; RDP2 {} instances all refined", counts.join("+")))
}

fn states() -> Outcome {
    let m = alg("Gamma(Z lex Z, (2,1))");
    let s = canonical_state(&m).map_err(|x| x.to_string())?;
    let w = m.window(3).unwrap();
    for x in w.iter() {
        let oracle = Ratio::new(x.coords()[0], 2);
        if s.value(x) != oracle {
            return Err(format!("s({x}) = {}", s.value(x)));
        }
    }
    for (t, v) in [(0, Ratio::from_integer(0)), (1, Ratio::new(1, 2)), (2, Ratio::from_integer(1))] {
        if s.value(&e(&[t, 5])) != v {
            return Err(format!("s({t},5)"));
        }
    }
    require(&check_state(&m, &s, &w).map_err(|x| x.to_string())?, "state")?;
    let d = build_decomposition(&IdealDesc::tail(&m, 1).unwrap(), &w).unwrap();
    let r = check_slice_structure(&d.with_section(Section::canonical(1, 1)), &m.window(2).unwrap(), 10)
        .map_err(|x| x.to_string())?;
    let kernel = r.checks.iter().find(|c| c.name.contains("Ker(s)")).ok_or("no kernel record")?;
    if !kernel.passed() {
        return Err(format!("{kernel:?}"));
    }
    Ok("s(t,n) = t/2 exactly, additive, M0 within Ker(s)".into())
}

fn identities() -> Outcome {
    let id = Identity::parse("2.x^2 = (2.x)^2").unwrap();
    for s in ["Gamma(Z lex Z, (1,0))", "Gamma(Z lex Heis, (1,0,0,0))"] {
        let m = alg(s);
        require(&check_identity(&m, &id, &m.window(3).unwrap()).map_err(|x| x.to_string())?, s)?;
    }
    let m = alg("Gamma(Z lex Z, (2,1))");
    let r = check_identity(&m, &id, &m.window(3).unwrap()).map_err(|x| x.to_string())?;
    let fail = r.first_failure().ok_or("identity held on (2,1)")?;
    let x = &fail.witness.as_ref().ok_or("no witness")?["x"];
    if x != "(1,0)" {
        return Err(format!("counterexample x={x}"));
    }
    Ok(format!("holds on 2 algebras, fails on (2,1) at x={x}"))
}

fn slice_structure() -> Outcome {
    let cases = [
        ("Gamma(Z lex Z, (1,0))", 1),
        ("Gamma(Z lex Z, (2,1))", 1),
        ("Gamma(Z lex (Z lex Z), (1,0,0))", 1),
        ("Gamma(Z lex (Z lex Z), (1,0,0))", 2),
        ("Gamma(Z lex Heis, (1,0,0,0))", 1),
    ];
    let mut records = 0;
    for (s, j) in cases {
        let m = alg(s);
        let w = m.window(2).unwrap();
        let i = IdealDesc::tail(&m, j).unwrap();
        let mut d = build_decomposition(&i, &w).map_err(|x| x.to_string())?;
        if let Some(sec) = find_retraction(&i, 3, 2).map_err(|x| x.to_string())? {
            d = d.with_section(sec);
        } else if let Some((sec, _)) = find_weak_retraction(&i, 3, 2).map_err(|x| x.to_string())? {
            d = d.with_section(sec);
        }
        let r = check_slice_structure(&d, &w, 10).map_err(|x| x.to_string())?;
        for c in &r.checks {
            let optional_state = c.name.starts_with("state") && c.verdict == Verdict::Unsupported;
            if !c.passed() && !optional_state {
                return Err(format!("{s} tail:{j}: {} {:?} {:?}", c.name, c.verdict, c.witness));
            }
        }
        records += r.checks.len();
    }
    Ok(format!("5 decompositions, {records} records"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("axioms on shipped algebras", axioms),
        ("negations differ on Heis", symmetry),
        ("weakly lexicographic (2,1)", weak_example),
        ("two comparable lexicographic ideals", three_chain),
        ("representation round trip", round_trip),
        ("theta isomorphisms", thetas),
        ("effect layer", effect_layer),
        ("canonical state", states),
        ("identity 2.x^2 = (2.x)^2", identities),
        ("slice structure of decompositions", slice_structure),
    ];
    let mut failed = vec![];
    for (n, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = f();
        let ms = start.elapsed().as_millis();
        match &outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({ms} ms): {detail}", n + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {name} ({ms} ms): {why}", n + 1);
                failed.push(n + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
