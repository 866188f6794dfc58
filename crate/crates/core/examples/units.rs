//! Bounded search for inverses: solves `f*u = 1` exactly with `u`
//! supported on basis words up to a length bound.
//!
//!     cargo run --example units -- 2 6 "a^2*b" "1 + x"

use curveform::hopf::{units_bounded_check, UnitsOutcome};
use curveform::{build_algebra, parse_expr, CurvePoint, Rational};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let t: Rational = args.next().as_deref().unwrap_or("2").parse()?;
    let max_len: usize = args.next().as_deref().unwrap_or("6").parse()?;
    let mut exprs: Vec<String> = args.collect();
    if exprs.is_empty() {
        exprs = ["a", "b", "a^2*b", "a^-1*b", "1 + x", "x", "3*x - (1 + 3*q)*a + 1", "1 + y"]
            .map(String::from)
            .to_vec();
    }
    let point = CurvePoint::from_t(&t);
    let alg = build_algebra(&point)?;
    for e in &exprs {
        let report = units_bounded_check(&alg, &parse_expr(e, &point)?, max_len)?;
        match &report.outcome {
            UnitsOutcome::Invertible { inverse, two_sided } => {
                println!("{e:>24}: inverse {inverse} (two-sided: {two_sided})")
            }
            UnitsOutcome::NoInverseWithinBound => println!(
                "{e:>24}: no inverse on {} basis words of length <= {max_len}",
                report.unknowns
            ),
        }
    }
    Ok(())
}
