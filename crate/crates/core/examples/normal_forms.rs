//! Normal forms and products in A.
//!
//!     cargo run --example normal_forms -- 2 "a^-1*x" "b*y"
//!
//! First argument is the curve parameter `t`; the rest are expressions.
//! With no expressions a few standard ones are reduced.

use curveform::{build_algebra, parse_expr, CurvePoint, Rational};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let t: Rational = args.next().as_deref().unwrap_or("2").parse()?;
    let mut exprs: Vec<String> = args.collect();
    if exprs.is_empty() {
        exprs = ["b*b", "y^2 - x^2 - x^3", "a^-1*x", "b*y", "a^2*x", "(x - q*a)^2 + (x - q*a)^3", "y*y*y"]
            .map(String::from)
            .to_vec();
    }
    let point = CurvePoint::from_t(&t);
    let alg = build_algebra(&point)?;
    println!("point q = {}, p = {}", point.q(), point.p());
    for e in &exprs {
        let f = parse_expr(e, &point)?;
        println!("{e:>28}  ->  {}", alg.nf(&f)?);
    }

    let x = parse_expr("x", &point)?;
    let a = parse_expr("a", &point)?;
    println!("\n(a*a) * x = {}", alg.mul(&alg.mul(&a, &a)?, &x)?);
    println!("a * (a*x) = {}", alg.mul(&a, &alg.mul(&a, &x)?)?);
    Ok(())
}
