//! Counts basis words by length and fits the growth exponent.
//!
//!     cargo run --example growth -- 200

use curveform::nodal::growth;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max_len: usize = std::env::args().nth(1).as_deref().unwrap_or("200").parse()?;
    let report = growth(max_len);
    println!("   L   words of length L   c(L)");
    for (len, (n, c)) in report.per_length.iter().zip(&report.cumulative).enumerate() {
        if len <= 10 || len % 25 == 0 || len == max_len {
            println!("{len:>4} {n:>19} {c:>10}");
        }
    }
    println!("log2(c({}) / c({})) = {:.4}", 2 * report.fit_at, report.fit_at, report.fitted_exponent);
    Ok(())
}
