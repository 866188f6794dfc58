//! Completes the seed relations step by step, then checks every ambiguity
//! of the final system.
//!
//!     cargo run --example completion -- 2

use curveform::nodal::{is_basis_word, seed_rules};
use curveform::rewrite::{check_diamond, Completer, PatternGuided, RuleSource, RuleSystem, DEFAULT_FUEL};
use curveform::{CurvePoint, Rational};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t: Rational = std::env::args().nth(1).as_deref().unwrap_or("2").parse()?;
    let point = CurvePoint::from_t(&t);
    let seed = RuleSystem::new(seed_rules(&point))?;
    println!("{} seed rules at q = {}, p = {}", seed.len(), point.q(), point.p());

    let policy = PatternGuided::new(is_basis_word);
    let mut completer = Completer::new(seed, &policy, DEFAULT_FUEL);
    while let Some(entry) = completer.step()? {
        let why = match &entry.source {
            RuleSource::Ambiguity { witness, left_lhs, right_lhs } => {
                format!("from {left_lhs} / {right_lhs} on {witness}")
            }
            RuleSource::Retired { former_lhs } => format!("re-oriented after retiring {former_lhs}"),
        };
        println!("  added {} -> {}   ({why})", entry.lhs, entry.rhs);
    }
    let (system, log) = completer.finish();
    println!("retired heads: {:?}", log.retired.iter().map(|w| w.to_string()).collect::<Vec<_>>());

    let report = check_diamond(&system, DEFAULT_FUEL);
    println!(
        "{} rules, {} ambiguities, {} resolved, locally confluent: {}",
        report.rules,
        report.ambiguities.len(),
        report.resolved,
        report.locally_confluent
    );
    for amb in &report.ambiguities {
        println!("  {:>6} on {}", format!("{}/{}", amb.left_lhs, amb.right_lhs), amb.ambiguity.witness);
    }
    Ok(())
}
