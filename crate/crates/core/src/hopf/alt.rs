use serde::Serialize;

use super::checks::IdentityCheck;
use crate::error::Result;
use crate::freealg::{parse_expr, NcPoly};
use crate::nodal::NodalAlgebra;
use crate::scalar::Scalar;

/// `c = 3x - (1+3q)a + 1`, `d = 3y - 6pb`, `e = ac + rca`.
///
/// With `d = 3y - 6pb` the relation `bd = -db` fails whenever `p != 0`
/// (`bd + db = -6p a^3`), because `by + yb = 2p b^2`. The variant
/// `d = 3(y - pb)` anticommutes with `b` and satisfies
/// `3d^2 = c^3 - 3c + 2 - 2a^3` instead; [`AltGenerators::anticommuting`]
/// builds it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AltGenerators {
    pub a: NcPoly,
    pub g: NcPoly,
    pub b: NcPoly,
    pub c: NcPoly,
    pub d: NcPoly,
    pub e: NcPoly,
}

impl AltGenerators {
    pub fn new(alg: &NodalAlgebra) -> Result<AltGenerators> {
        AltGenerators::with_d(alg, "3*y - 6*p*b")
    }

    pub fn anticommuting(alg: &NodalAlgebra) -> Result<AltGenerators> {
        AltGenerators::with_d(alg, "3*y - 3*p*b")
    }

    fn with_d(alg: &NodalAlgebra, d: &str) -> Result<AltGenerators> {
        let parse = |s: &str| parse_expr(s, alg.point()).expect("generator parses");
        let a = parse("a");
        let c = parse("3*x - (1 + 3*q)*a + 1");
        let e = alg.nf(&(&a.mul(&c) + &c.mul(&a).scale(&Scalar::root())))?;
        Ok(AltGenerators { g: parse("a^-1"), b: parse("b"), d: parse(d), a, c, e })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AltReport {
    /// The 14 relations with `d = 3y - 6pb`.
    pub relations: Vec<IdentityCheck>,
    pub passed: bool,
    /// The same relations with `d = 3(y - pb)`, the `a^3` coefficient of
    /// `3d^2` lowered by `27p^2` (to `-2`).
    pub anticommuting: Vec<IdentityCheck>,
    pub anticommuting_passed: bool,
}

/// The relations of `A` in the generators `a^{±1}, b, c, d, e`, each
/// reduced to normal form over `Q(r)`, for both choices of `d`.
pub fn check_alt_presentation(alg: &NodalAlgebra) -> Result<AltReport> {
    let q = alg.q();
    let k = |n: i64| Scalar::from(n);
    // (1+3q)(-2+6q+9q^2)
    let stated = &(&k(1) + &(&k(3) * q)) * &(&(&k(-2) + &(&k(6) * q)) + &(&k(9) * &(q * q)));
    let stated = relations(alg, &AltGenerators::new(alg)?, "(1+3q)(-2+6q+9q^2)", &stated)?;
    let anticommuting = relations(alg, &AltGenerators::anticommuting(alg)?, "(-2)", &Scalar::from(-2))?;
    Ok(AltReport {
        passed: stated.iter().all(|r| r.passed),
        relations: stated,
        anticommuting_passed: anticommuting.iter().all(|r| r.passed),
        anticommuting,
    })
}

fn relations(alg: &NodalAlgebra, gens: &AltGenerators, coeff_name: &str, a3_coeff: &Scalar) -> Result<Vec<IdentityCheck>> {
    let AltGenerators { a, g, b, c, d, e } = gens;
    let r = Scalar::root();
    let r_inv = r.inv()?;
    let k = |n: i64| Scalar::from(n);
    let one = NcPoly::one();
    let a3 = a.pow(3);
    let last = format!("3d^2 = c^3 - 3c + 2 + {coeff_name} a^3");

    let rels: Vec<(&str, NcPoly)> = vec![
        ("a a^-1 = 1", &a.mul(g) - &one),
        ("a^-1 a = 1", &g.mul(a) - &one),
        ("ab = ba", &a.mul(b) - &b.mul(a)),
        ("ac + rca = e", &(&a.mul(c) + &c.mul(a).scale(&r)) - e),
        ("ad = da", &a.mul(d) - &d.mul(a)),
        ("ae + r^-1 ea = 0", &a.mul(e) + &e.mul(a).scale(&r_inv)),
        ("bc = cb", &b.mul(c) - &c.mul(b)),
        ("bd = -db", &b.mul(d) + &d.mul(b)),
        ("be = eb", &b.mul(e) - &e.mul(b)),
        ("b^2 = a^3", &b.pow(2) - &a3),
        ("cd = dc", &c.mul(d) - &d.mul(c)),
        ("r^-1 ce + ec = 3(a - a^3)", &(&c.mul(e).scale(&r_inv) + &e.mul(c)) - &(a - &a3).scale(&k(3))),
        ("de = ed", &d.mul(e) - &e.mul(d)),
        (
            &last,
            &(&d.pow(2).scale(&k(3)) - &c.pow(3)) + &(&(&c.scale(&k(3)) - &one.scale(&k(2))) - &a3.scale(a3_coeff)),
        ),
    ];
    rels.into_iter()
        .map(|(name, rel)| {
            let residual = alg.nf(&rel)?;
            Ok(IdentityCheck { identity: name.to_string(), passed: residual.is_zero(), residual })
        })
        .collect()
}
