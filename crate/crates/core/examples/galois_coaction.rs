//! The projection onto `C = A/B⁺A`, the coaction, recovery of `B` as the
//! coinvariants, and the witness that `B⁺A` and `AB⁺` differ.
//!
//!     cargo run --example galois_coaction -- 2 "a*x" "x*y"

use curveform::galois::{coaction, project_pi, recovery_check, witness_check};
use curveform::hopf::HopfAlgebra;
use curveform::{build_algebra, parse_expr, CurvePoint, Rational};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let t: Rational = args.next().as_deref().unwrap_or("2").parse()?;
    let mut exprs: Vec<String> = args.collect();
    if exprs.is_empty() {
        exprs = ["x", "x*y", "a", "a*x", "b*y"].map(String::from).to_vec();
    }
    let point = CurvePoint::from_t(&t);
    let alg = build_algebra(&point)?;
    let hopf = HopfAlgebra::new(&alg);

    for e in &exprs {
        let f = parse_expr(e, &point)?;
        println!("pi({e}) = {}", project_pi(&f, &alg)?);
        println!("lambda({e}) = {}", coaction(&f, &hopf)?);
    }

    let rec = recovery_check(&hopf, 6)?;
    println!(
        "\ncoinvariants: {} words of B fixed, {} other basis words moved, {} failures",
        rec.invariant_words,
        rec.non_invariant_words,
        rec.failures.len()
    );

    let wit = witness_check(&hopf)?;
    println!("{} = {}", wit.element, wit.normal_form);
    println!("in AB+: {}   in B+A: {}   pi = {}", wit.in_a_bplus, wit.in_bplus_a, wit.projection);
    Ok(())
}
