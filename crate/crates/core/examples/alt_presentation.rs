//! Checks the relations of the algebra in the generators `a, b, c, d, e`.
//!
//! Usage: `cargo run --example alt_presentation -- [t]`

use curveform::hopf::check_alt_presentation;
use curveform::{build_algebra, CurvePoint, Rational};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t: Rational = std::env::args().nth(1).as_deref().unwrap_or("2").parse()?;
    let alg = build_algebra(&CurvePoint::from_t(&t))?;
    let report = check_alt_presentation(&alg)?;
    for rel in &report.relations {
        let mark = if rel.passed { "ok  " } else { "FAIL" };
        println!("{mark} {:<48} residual {}", rel.identity, rel.residual);
    }
    println!("all relations hold: {}", report.passed);
    println!("with d = 3(y - pb):");
    for rel in &report.anticommuting {
        let mark = if rel.passed { "ok  " } else { "FAIL" };
        println!("{mark} {:<48} residual {}", rel.identity, rel.residual);
    }
    println!("all relations hold: {}", report.anticommuting_passed);
    Ok(())
}
