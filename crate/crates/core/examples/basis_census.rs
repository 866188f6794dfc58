//! Builds A at a curve point, prints the completed rule system and runs
//! the exhaustive word census against the basis pattern.
//!
//!     cargo run --example basis_census -- 2 8
//!
//! Arguments: the curve parameter `t` (point `(t^2 - 1, t(t^2 - 1))`) and
//! the maximum word length.

use std::time::Instant;

use curveform::nodal::{basis_census, NodalAlgebra};
use curveform::rewrite::DEFAULT_FUEL;
use curveform::{CurvePoint, Rational};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let t: Rational = args.next().as_deref().unwrap_or("2").parse()?;
    let max_len: usize = args.next().as_deref().unwrap_or("6").parse()?;
    let point = CurvePoint::from_t(&t);
    println!("point q = {}, p = {}", point.q(), point.p());

    let start = Instant::now();
    let alg = NodalAlgebra::build(&point, DEFAULT_FUEL)?;
    println!("completed system ({} rules, {:?}):", alg.system().len(), start.elapsed());
    for rule in alg.system().rules() {
        println!("  {:>4} -> {}", rule.lhs.to_compact(), rule.rhs);
    }

    let start = Instant::now();
    let census = basis_census(&alg, max_len);
    println!("\nlength  scanned  reducible  irreducible  pattern");
    for row in &census.rows {
        println!(
            "{:>6} {:>8} {:>10} {:>12} {:>8}",
            row.length, row.words_scanned, row.reducible, row.irreducible, row.pattern_words
        );
    }
    println!("census {} in {:?}", if census.passed { "PASSED" } else { "FAILED" }, start.elapsed());
    Ok(())
}
