//! Acceptance run: one line per criterion, nonzero exit if any criterion
//! fails. Built with `harness = false` so the lines are always printed.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use curveform::galois::{recovery_check, witness_check};
use curveform::hopf::{
    check_alt_presentation, check_coideal, check_hopf_axioms, check_identities, check_welldefined,
    units_bounded_check, HopfAlgebra,
};
use curveform::nodal::{basis_census, freeness_check, growth, NodalAlgebra};
use curveform::rewrite::DEFAULT_FUEL;
use curveform::{parse_expr, CurvePoint, Letter, NcPoly, Rational, Word};

enum Verdict {
    Pass(String),
    /// Not met as stated, for a reason established and asserted exactly.
    Deviation(String),
    Fail(String),
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    verdict: Verdict,
    elapsed: Duration,
}

fn points() -> Vec<(i64, CurvePoint)> {
    [2, 1, 0, 3].into_iter().map(|t| (t, CurvePoint::from_t(&Rational::from(t)))).collect()
}

fn label(p: &CurvePoint) -> String {
    format!("({}, {})", p.q(), p.p())
}

fn pass_if(ok: bool, pass: String, fail: String) -> Verdict {
    if ok {
        Verdict::Pass(pass)
    } else {
        Verdict::Fail(fail)
    }
}

/// Independent matcher for `x* y? (ax)* (a+ | g+)? b?`, used to count
/// pattern words by brute force.
fn matches_pattern(w: &[Letter]) -> bool {
    use Letter::*;
    let mut k = 0;
    while k < w.len() && w[k] == X {
        k += 1;
    }
    if k < w.len() && w[k] == Y {
        k += 1;
    }
    while k + 1 < w.len() && w[k] == A && w[k + 1] == X {
        k += 2;
    }
    if k < w.len() && (w[k] == A || w[k] == G) {
        let l = w[k];
        while k < w.len() && w[k] == l {
            k += 1;
        }
    }
    if k < w.len() && w[k] == B {
        k += 1;
    }
    k == w.len()
}

fn brute_pattern_count(len: usize) -> u64 {
    let mut count = 0;
    let mut idx = vec![0usize; len];
    loop {
        let w: Vec<Letter> = idx.iter().map(|&i| Letter::ALL[i]).collect();
        if matches_pattern(&w) {
            count += 1;
        }
        let mut k = len;
        loop {
            if k == 0 {
                return count;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < 5 {
                break;
            }
            idx[k] = 0;
        }
    }
}

fn criterion_1(algs: &[(CurvePoint, NodalAlgebra)]) -> (Verdict, Duration) {
    // rebuild to time construction per point
    let mut worst = Duration::ZERO;
    let mut notes = Vec::new();
    for (p, _) in algs {
        let start = Instant::now();
        let alg = match NodalAlgebra::build(p, DEFAULT_FUEL) {
            Ok(a) => a,
            Err(e) => return (Verdict::Fail(format!("{}: {e}", label(p))), worst),
        };
        worst = worst.max(start.elapsed());
        let d = alg.diamond_report();
        if d.failures != 0 || !d.locally_confluent {
            return (Verdict::Fail(format!("{}: {} unresolved", label(p), d.failures)), worst);
        }
        notes.push(format!("{}: {} rules/{} ambiguities", label(p), d.rules, d.ambiguities.len()));
    }
    (Verdict::Pass(notes.join("; ")), worst)
}

fn main() -> ExitCode {
    let total = Instant::now();
    let mut results: Vec<Criterion> = Vec::new();
    let mut record = |id, name, limit: Option<Duration>, run: &mut dyn FnMut() -> (Verdict, Duration)| {
        let (verdict, elapsed) = run();
        let verdict = match (verdict, limit) {
            (Verdict::Pass(msg), Some(l)) if elapsed > l => {
                Verdict::Fail(format!("{msg}; took {elapsed:.2?}, limit {l:?}"))
            }
            (v, _) => v,
        };
        results.push(Criterion { id, name, limit, verdict, elapsed });
    };

    let algs: Vec<(CurvePoint, NodalAlgebra)> = points()
        .into_iter()
        .map(|(_, p)| {
            let alg = NodalAlgebra::build(&p, DEFAULT_FUEL).expect("algebra builds");
            (p, alg)
        })
        .collect();

    record(1, "diamond lemma", Some(Duration::from_secs(10)), &mut || criterion_1(&algs));

    record(2, "hopf well-definedness", Some(Duration::from_secs(10)), &mut || {
        let start = Instant::now();
        for (p, alg) in &algs {
            let r = check_welldefined(&HopfAlgebra::new(alg)).expect("runs");
            if !r.passed {
                let bad: Vec<_> = r.relations.iter().filter(|c| !c.passed).map(|c| c.relation).collect();
                return (Verdict::Fail(format!("{}: {bad:?}", label(p))), start.elapsed());
            }
        }
        (Verdict::Pass("13 relations x 4 points, residuals 0".into()), start.elapsed())
    });

    record(3, "hopf axioms", Some(Duration::from_secs(60)), &mut || {
        let start = Instant::now();
        for (p, alg) in &algs {
            let r = check_hopf_axioms(&HopfAlgebra::new(alg), 200, 6, 42).expect("runs");
            if !r.passed {
                return (Verdict::Fail(format!("{}: {} failures", label(p), r.failures.len())), start.elapsed());
            }
        }
        (Verdict::Pass("5 generators + 200 random elements x 4 points".into()), start.elapsed())
    });

    record(4, "displayed identities", None, &mut || {
        let start = Instant::now();
        for (p, alg) in &algs {
            let r = check_identities(&HopfAlgebra::new(alg)).expect("runs");
            if !r.passed || r.identities.len() != 3 {
                return (Verdict::Fail(label(p)), start.elapsed());
            }
        }
        (Verdict::Pass("3 identities x 4 points reduce to 0".into()), start.elapsed())
    });

    record(5, "basis census", Some(Duration::from_secs(60)), &mut || {
        let start = Instant::now();
        let (p, alg) = &algs[0];
        let census = basis_census(alg, 8);
        let elapsed = start.elapsed();
        let oracle: Vec<u64> = (0..=6).map(brute_pattern_count).collect();
        let per_len: Vec<u64> = census.rows.iter().take(7).map(|r| r.irreducible).collect();
        let ok = census.passed
            && census.cumulative[1] == 6
            && census.cumulative[2] == 19
            && per_len == oracle;
        let msg = format!("{}: L <= 8, c(L) = {:?}", label(p), census.cumulative);
        (pass_if(ok, msg.clone(), format!("{msg}; oracle per-length {oracle:?}")), elapsed)
    });

    record(6, "growth exponent", Some(Duration::from_secs(5)), &mut || {
        let start = Instant::now();
        let g = growth(200);
        let elapsed = start.elapsed();
        // number of pattern words of exact length L is 2L^2 + 2L + 1
        let closed_form = g.per_length.iter().enumerate().all(|(l, &n)| n == (2 * l * l + 2 * l + 1) as u64);
        let ok = closed_form && (g.fitted_exponent - 3.0).abs() <= 0.2;
        let msg = format!("log2(c(200)/c(100)) = {:.4}", g.fitted_exponent);
        (pass_if(ok, msg.clone(), format!("{msg}; closed form ok: {closed_form}")), elapsed)
    });

    record(7, "freeness over B", None, &mut || {
        let start = Instant::now();
        let mut right_single = Vec::new();
        for (p, alg) in &algs {
            let r = freeness_check(alg, 10, 500, 6, 42).expect("runs");
            if !r.passed {
                return (
                    Verdict::Fail(format!("{}: {} products, {} round trips failed", label(p), r.failures.len(), r.round_trip_failures.len())),
                    start.elapsed(),
                );
            }
            right_single.push(r.right_analogue.single_word_products);
        }
        let msg = format!("B*t products to length 10, 500 round trips x 4 points; t*B single words: {right_single:?}");
        (Verdict::Pass(msg), start.elapsed())
    });

    record(8, "right coideal", None, &mut || {
        let start = Instant::now();
        for (p, alg) in &algs {
            let r = check_coideal(&HopfAlgebra::new(alg), 6).expect("runs");
            if !r.passed {
                return (Verdict::Fail(format!("{}: {} violations", label(p), r.violations.len())), start.elapsed());
            }
        }
        (Verdict::Pass("i + j <= 6 x 4 points".into()), start.elapsed())
    });

    record(9, "galois structure", None, &mut || {
        let start = Instant::now();
        for (p, alg) in &algs {
            let hopf = HopfAlgebra::new(alg);
            let rec = recovery_check(&hopf, 6).expect("runs");
            let wit = witness_check(&hopf).expect("runs");
            if !rec.passed || !wit.passed {
                return (Verdict::Fail(format!("{}: recovery {}, witness {}", label(p), rec.passed, wit.passed)), start.elapsed());
            }
        }
        (Verdict::Pass("coinvariants = B to degree 6; a^2(x-q) in AB+ not in B+A x 4 points".into()), start.elapsed())
    });

    record(10, "alternate presentation", Some(Duration::from_secs(30)), &mut || {
        let start = Instant::now();
        let mut deviating = Vec::new();
        for (p, alg) in &algs {
            let r = check_alt_presentation(alg).expect("runs");
            if r.relations.len() != 14 || !r.anticommuting_passed {
                return (Verdict::Fail(format!("{}: corrected presentation fails", label(p))), start.elapsed());
            }
            let failing: Vec<_> = r.relations.iter().filter(|c| !c.passed).collect();
            if p.p().is_zero() {
                if !failing.is_empty() {
                    return (Verdict::Fail(format!("{}: {} relations fail", label(p), failing.len())), start.elapsed());
                }
                continue;
            }
            // bd + db = -6p a^3 is the only failure
            let expected = NcPoly::word(Word::power(Letter::A, 3)).scale(&(p.p() * &(-6).into()));
            let exact = failing.len() == 1 && failing[0].identity == "bd = -db" && failing[0].residual == expected;
            if !exact {
                return (Verdict::Fail(format!("{}: unexpected failures", label(p))), start.elapsed());
            }
            deviating.push(label(p));
        }
        let msg = format!(
            "with d = 3y - 6pb, bd = -db fails at {} (bd + db = -6p a^3); other 13 hold everywhere; \
             with d = 3(y - pb) all 14 hold, the 3d^2 relation having a^3 coefficient -2",
            deviating.join(", ")
        );
        (Verdict::Deviation(msg), start.elapsed())
    });

    record(11, "units (bounded)", None, &mut || {
        let start = Instant::now();
        let cases = [
            ("a", true),
            ("b", true),
            ("a^2*b", true),
            ("a^-1*b", true),
            ("1 + x", false),
            ("x", false),
            ("3*x - (1 + 3*q)*a + 1", false),
            ("1 + y", false),
        ];
        for (p, alg) in &algs {
            for (expr, invertible) in cases {
                let f = parse_expr(expr, p).expect("parses");
                let r = units_bounded_check(alg, &f, 6).expect("runs");
                if r.is_invertible() != invertible {
                    return (Verdict::Fail(format!("{}: {expr}", label(p))), start.elapsed());
                }
            }
        }
        (Verdict::Pass("4 inverses found, 4 elements without inverse of support <= 6, x 4 points; bounded evidence".into()), start.elapsed())
    });

    record(12, "determinism", None, &mut || {
        let start = Instant::now();
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_curveform"))
                .args(["suite", "all", "--json", "--seed", "42"])
                .env_remove("CURVEFORM_FUEL")
                .output()
                .expect("binary runs")
        };
        let (a, b) = (run(), run());
        let ok = !a.stdout.is_empty() && a.stdout == b.stdout && a.status.code() == b.status.code();
        let msg = format!("two runs of `suite all --json --seed 42`: {} bytes each, identical", a.stdout.len());
        (pass_if(ok, msg, "outputs differ".into()), start.elapsed())
    });

    let mut failed = 0;
    for c in &results {
        let (tag, msg) = match &c.verdict {
            Verdict::Pass(m) => ("PASS", m),
            Verdict::Deviation(m) => ("DEVIATION", m),
            Verdict::Fail(m) => {
                failed += 1;
                ("FAIL", m)
            }
        };
        let limit = c.limit.map(|l| format!(" / limit {l:?}")).unwrap_or_default();
        println!("criterion {:>2} [{tag}] {}: {msg} ({:.2?}{limit})", c.id, c.name, c.elapsed);
    }
    println!("acceptance finished in {:.2?}: {failed} failing", total.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
