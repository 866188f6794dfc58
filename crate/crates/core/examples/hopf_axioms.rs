//! Coproduct, counit and antipode: well-definedness on the relations, the
//! Hopf axioms on random elements, and the displayed identities.
//!
//!     cargo run --example hopf_axioms -- 2 200

use curveform::hopf::{check_hopf_axioms, check_identities, check_welldefined, HopfAlgebra};
use curveform::{build_algebra, CurvePoint, Letter, NcPoly, Rational, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let t: Rational = args.next().as_deref().unwrap_or("2").parse()?;
    let samples: usize = args.next().as_deref().unwrap_or("200").parse()?;
    let point = CurvePoint::from_t(&t);
    let alg = build_algebra(&point)?;
    let hopf = HopfAlgebra::new(&alg);

    for l in Letter::ALL {
        let f = NcPoly::letter(l);
        let l = Word::letter(l);
        println!("delta({l}) = {}", hopf.delta(&f)?);
        println!("    S({l}) = {}", hopf.antipode(&f)?);
    }

    let wd = check_welldefined(&hopf)?;
    for rel in &wd.relations {
        println!("{:<48} {}", rel.relation, if rel.passed { "respected" } else { "VIOLATED" });
    }

    let axioms = check_hopf_axioms(&hopf, samples, 6, 42)?;
    println!(
        "axioms on {} generators and {} random elements: {} failures",
        axioms.generators_checked,
        axioms.random_checked,
        axioms.failures.len()
    );
    println!("S^2(x) = {}", axioms.antipode_squared_x);
    println!("S^2(y) = {}", axioms.antipode_squared_y);

    for id in check_identities(&hopf)?.identities {
        println!("{:<50} residual {}", id.identity, id.residual);
    }
    Ok(())
}
