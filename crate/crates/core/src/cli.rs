//! Command-line front end. The binary only parses arguments and calls
//! [`execute`]; everything here is usable from tests.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::Result;
use crate::freealg::{parse_expr, NcPoly};
use crate::galois::{recovery_check, witness_check};
use crate::hopf::{
    check_alt_presentation, check_coideal, check_hopf_axioms, check_identities, check_welldefined,
    units_bounded_check, HopfAlgebra, Residual, UnitsReport,
};
use crate::nodal::{basis_census, freeness_check, growth, NodalAlgebra};
use crate::report::CheckReport;
use crate::rewrite::{Resolution, DEFAULT_FUEL};
use crate::scalar::{CurvePoint, Rational, Scalar};

#[derive(Debug, Parser)]
#[command(name = "curveform", version, about = "Normal forms and structure checks for a Hopf algebra over the nodal cubic")]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Curve parameter; selects the point (t^2 - 1, t(t^2 - 1)). Default 2, i.e. (3, 6).
    #[arg(long, global = true, allow_hyphen_values = true, conflicts_with_all = ["q", "p"])]
    pub t: Option<String>,
    /// x-coordinate of the point, an expression in r (use together with --p).
    #[arg(long, global = true, allow_hyphen_values = true, requires = "p")]
    pub q: Option<String>,
    /// y-coordinate of the point (use together with --q).
    #[arg(long, global = true, allow_hyphen_values = true, requires = "q")]
    pub p: Option<String>,
    /// Rewriting steps allowed per normal-form computation.
    #[arg(long, global = true, env = "CURVEFORM_FUEL", default_value_t = DEFAULT_FUEL as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub fuel: u64,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for random samples.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Word-length bound (basis, census, freeness, growth, units).
    #[arg(long, global = true)]
    pub max_len: Option<usize>,
    /// Degree bound (coideal, galois).
    #[arg(long, global = true)]
    pub max_deg: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of an expression.
    Nf { expr: String },
    /// Normal form of a product of two expressions.
    Mul { left: String, right: String },
    /// Run a verification suite.
    Suite {
        #[arg(value_enum)]
        name: SuiteName,
    },
    /// Print the completed rewriting system.
    Rules,
    /// Exhaustive irreducible-word census against the basis pattern.
    Census,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    Diamond,
    Basis,
    Growth,
    Hopf,
    Coideal,
    Identities,
    Alt,
    Galois,
    Units,
    All,
}

const ALL_SUITES: [SuiteName; 9] = [
    SuiteName::Diamond,
    SuiteName::Basis,
    SuiteName::Growth,
    SuiteName::Hopf,
    SuiteName::Coideal,
    SuiteName::Identities,
    SuiteName::Alt,
    SuiteName::Galois,
    SuiteName::Units,
];

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub point: CurvePoint,
    pub fuel: usize,
    pub json: bool,
    pub seed: u64,
    pub max_len: Option<usize>,
    pub max_deg: Option<usize>,
}

impl RunConfig {
    pub fn from_opts(opts: &GlobalOpts) -> std::result::Result<RunConfig, String> {
        let point = match (&opts.t, &opts.q, &opts.p) {
            (_, Some(q), Some(p)) => {
                CurvePoint::validate(parse_coordinate(q)?, parse_coordinate(p)?).map_err(|e| e.to_string())?
            }
            (Some(t), _, _) => CurvePoint::from_t(&t.parse::<Rational>().map_err(|e| format!("--t: {e}"))?),
            _ => CurvePoint::from_t(&Rational::from(2)),
        };
        Ok(RunConfig {
            point,
            fuel: opts.fuel as usize,
            json: opts.json,
            seed: opts.seed,
            max_len: opts.max_len,
            max_deg: opts.max_deg,
        })
    }
}

/// A constant expression in `r`, such as `3`, `-1/2` or `(1 - r)`.
fn parse_coordinate(text: &str) -> std::result::Result<Scalar, String> {
    if text.contains(['q', 'p']) {
        return Err(format!("coordinate `{text}` may not refer to q or p"));
    }
    let dummy = CurvePoint::from_t(&Rational::one());
    let poly = parse_expr(text, &dummy).map_err(|e| format!("coordinate `{text}`: {e}"))?;
    poly.as_constant().ok_or_else(|| format!("coordinate `{text}` is not a constant"))
}

/// Output of one invocation and whether every executed check passed.
pub struct Outcome {
    pub output: String,
    pub passed: bool,
}

pub fn execute(cli: &Cli) -> std::result::Result<Outcome, Box<dyn std::error::Error>> {
    let cfg = RunConfig::from_opts(&cli.opts)?;
    let alg = NodalAlgebra::build(&cfg.point, cfg.fuel)?;
    let pass = |output: String| Outcome { output, passed: true };
    match &cli.command {
        Command::Nf { expr } => {
            let nf = alg.nf(&parse_expr(expr, &cfg.point)?)?;
            Ok(pass(render_value(&cfg, &nf, json!({ "input": expr, "point": cfg.point, "normal_form": nf }))))
        }
        Command::Mul { left, right } => {
            let f = parse_expr(left, &cfg.point)?;
            let g = parse_expr(right, &cfg.point)?;
            let nf = alg.mul(&f, &g)?;
            let value = json!({ "left": left, "right": right, "point": cfg.point, "normal_form": nf });
            Ok(pass(render_value(&cfg, &nf, value)))
        }
        Command::Rules => {
            if cfg.json {
                return Ok(pass(pretty(&json!({ "point": cfg.point, "rules": alg.system() }))));
            }
            let mut text = String::new();
            for rule in alg.system().rules() {
                text.push_str(&format!("{} -> {}\n", rule.lhs, rule.rhs));
            }
            Ok(pass(text))
        }
        Command::Census => {
            let report = census_report(&cfg, &alg);
            let passed = report.passed();
            Ok(Outcome { output: render_reports(&cfg, &[report]), passed })
        }
        Command::Suite { name } => {
            let reports = run_suite(*name, &cfg, &alg)?;
            let passed = reports.iter().all(CheckReport::passed);
            Ok(Outcome { output: render_reports(&cfg, &reports), passed })
        }
    }
}

fn pretty(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn render_value(cfg: &RunConfig, nf: &NcPoly, value: serde_json::Value) -> String {
    if cfg.json {
        pretty(&value)
    } else {
        format!("{nf}\n")
    }
}

fn render_reports(cfg: &RunConfig, reports: &[CheckReport]) -> String {
    let passed = reports.iter().all(CheckReport::passed);
    if cfg.json {
        let status = if passed { "pass" } else { "fail" };
        return pretty(&json!({ "status": status, "reports": reports }));
    }
    let mut text = String::new();
    for r in reports {
        text.push_str(&r.text_line());
        text.push('\n');
    }
    text.push_str(if passed { "all checks passed\n" } else { "some checks failed\n" });
    text
}

/// Runs one suite (or all of them) and returns its reports in a fixed order.
pub fn run_suite(name: SuiteName, cfg: &RunConfig, alg: &NodalAlgebra) -> Result<Vec<CheckReport>> {
    let point = &cfg.point;
    let hopf = HopfAlgebra::new(alg);
    let reports = match name {
        SuiteName::All => {
            let mut out = Vec::new();
            for suite in ALL_SUITES {
                out.extend(run_suite(suite, cfg, alg)?);
            }
            out
        }
        SuiteName::Diamond => {
            let d = alg.diamond_report();
            let residual = d.ambiguities.iter().find_map(|a| match &a.resolution {
                Resolution::Unresolved { difference } => Some(difference.clone()),
                _ => None,
            });
            let summary = format!(
                "{} rules, {} ambiguities, {} resolved, {} failures",
                d.rules,
                d.ambiguities.len(),
                d.resolved,
                d.failures
            );
            vec![CheckReport::new("diamond", point, d.locally_confluent, d).with_residual(residual).with_summary(summary)]
        }
        SuiteName::Basis => {
            let census = census_report(cfg, alg);
            let max_len = cfg.max_len.unwrap_or(10);
            let free = freeness_check(alg, max_len, 500, 6, cfg.seed)?;
            let summary = format!(
                "{} products B*t up to length {}, {} round trips; NF(t*x^i*y^j) single word: {}",
                free.pairs_checked, max_len, free.round_trips, free.right_analogue.single_word_products
            );
            let residual = free.failures.first().map(|m| m.product.clone());
            vec![census, CheckReport::new("freeness", point, free.passed, &free).with_residual(residual).with_summary(summary)]
        }
        SuiteName::Growth => {
            let max_len = cfg.max_len.unwrap_or(200);
            let g = growth(max_len);
            let spot = g.cumulative.get(1).is_none_or(|&c| c == 6) && g.cumulative.get(2).is_none_or(|&c| c == 19);
            let passed = spot && (g.fitted_exponent - 3.0).abs() <= 0.2;
            let summary = format!("fitted exponent {:.4} from c({}) / c({})", g.fitted_exponent, 2 * g.fit_at, g.fit_at);
            vec![CheckReport::new("growth", point, passed, &g).with_summary(summary)]
        }
        SuiteName::Hopf => {
            let wd = check_welldefined(&hopf)?;
            let wd_residual = wd.relations.iter().find(|r| !r.passed).map(|r| r.antipode_residual.clone());
            let wd_summary = format!("{} relations respected by delta, counit, antipode", wd.relations.len());
            let ax = check_hopf_axioms(&hopf, 200, 6, cfg.seed)?;
            let ax_residual = ax.failures.first().and_then(|f| match &f.residual {
                Residual::Poly(p) => Some(p.clone()),
                Residual::Tensor(_) => None,
            });
            let ax_summary = format!(
                "{} generators, {} random elements, {} group-likes, {} failures",
                ax.generators_checked,
                ax.random_checked,
                ax.group_likes_checked,
                ax.failures.len()
            );
            vec![
                CheckReport::new("welldefined", point, wd.passed, &wd).with_residual(wd_residual).with_summary(wd_summary),
                CheckReport::new("axioms", point, ax.passed, &ax).with_residual(ax_residual).with_summary(ax_summary),
            ]
        }
        SuiteName::Coideal => {
            let c = check_coideal(&hopf, cfg.max_deg.unwrap_or(6))?;
            let summary = format!("{} words x^i*y^j with i + j <= {}", c.words_checked, c.max_deg);
            vec![CheckReport::new("coideal", point, c.passed, &c).with_summary(summary)]
        }
        SuiteName::Identities => {
            let r = check_identities(&hopf)?;
            let residual = r.identities.iter().find(|c| !c.passed).map(|c| c.residual.clone());
            let summary = format!("{} identities", r.identities.len());
            vec![CheckReport::new("identities", point, r.passed, &r).with_residual(residual).with_summary(summary)]
        }
        SuiteName::Alt => {
            let r = check_alt_presentation(alg)?;
            let residual = r.relations.iter().find(|c| !c.passed).map(|c| c.residual.clone());
            let holding = |v: &[crate::hopf::IdentityCheck]| v.iter().filter(|c| c.passed).count();
            let mut summary = format!("{}/{} relations hold", holding(&r.relations), r.relations.len());
            for c in r.relations.iter().filter(|c| !c.passed) {
                summary.push_str(&format!("; fails: {}", c.identity));
            }
            summary.push_str(&format!(
                "; with d = 3(y - pb): {}/{}",
                holding(&r.anticommuting),
                r.anticommuting.len()
            ));
            vec![CheckReport::new("alt", point, r.passed, &r).with_residual(residual).with_summary(summary)]
        }
        SuiteName::Galois => {
            let rec = recovery_check(&hopf, cfg.max_deg.unwrap_or(6))?;
            let rec_summary = format!(
                "{} coinvariant words, {} non-coinvariant words up to degree {}",
                rec.invariant_words, rec.non_invariant_words, rec.max_deg
            );
            let wit = witness_check(&hopf)?;
            let wit_summary = format!(
                "a^2*(x - q) = {}; in AB+: {}, in B+A: {}, pi = {}",
                wit.normal_form, wit.in_a_bplus, wit.in_bplus_a, wit.projection
            );
            vec![
                CheckReport::new("galois", point, rec.passed, &rec).with_summary(rec_summary),
                CheckReport::new("witness", point, wit.passed, &wit).with_summary(wit_summary),
            ]
        }
        SuiteName::Units => vec![units_report(cfg, alg)?],
    };
    Ok(reports)
}

fn census_report(cfg: &RunConfig, alg: &NodalAlgebra) -> CheckReport {
    let max_len = cfg.max_len.unwrap_or(7).min(10);
    let census = basis_census(alg, max_len);
    let summary = format!("irreducible = pattern words for L <= {max_len}; c(L) = {:?}", census.cumulative);
    CheckReport::new("basis", &cfg.point, census.passed, &census).with_summary(summary)
}

#[derive(Serialize)]
struct UnitsEntry {
    expression: &'static str,
    expected_invertible: bool,
    report: UnitsReport,
}

fn units_report(cfg: &RunConfig, alg: &NodalAlgebra) -> Result<CheckReport> {
    let max_len = cfg.max_len.unwrap_or(6).min(8);
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
    let mut entries = Vec::new();
    for (expression, expected_invertible) in cases {
        let f = parse_expr(expression, &cfg.point).expect("case parses");
        let report = units_bounded_check(alg, &f, max_len)?;
        entries.push(UnitsEntry { expression, expected_invertible, report });
    }
    let passed = entries.iter().all(|e| e.report.is_invertible() == e.expected_invertible);
    let invertible: Vec<_> = entries.iter().filter(|e| e.report.is_invertible()).map(|e| e.expression).collect();
    let summary = format!(
        "bounded search, support length <= {max_len}; invertible: {}; others have no inverse within the bound",
        invertible.join(", ")
    );
    Ok(CheckReport::new("units", &cfg.point, passed, &entries).with_summary(summary))
}
