use rayon::prelude::*;
use serde::Serialize;

use super::HopfAlgebra;
use crate::error::Result;
use crate::freealg::{parse_expr, Letter, NcPoly, TensorPoly, Word};
use crate::nodal::basis_index;
use crate::sample;
use crate::scalar::{CurvePoint, Scalar};

/// The defining relations as `lhs - rhs`, named by their left side.
pub fn defining_relations(point: &CurvePoint) -> Vec<(&'static str, NcPoly)> {
    [
        ("a*a^-1 = 1", "a*a^-1 - 1"),
        ("a^-1*a = 1", "a^-1*a - 1"),
        ("b*a = a*b", "b*a - a*b"),
        ("b*a^-1 = a^-1*b", "b*a^-1 - a^-1*b"),
        ("b*x = x*b", "b*x - x*b"),
        ("y*x = x*y", "y*x - x*y"),
        ("a*y = y*a", "a*y - y*a"),
        ("a^-1*y = y*a^-1", "a^-1*y - y*a^-1"),
        ("y^2 = x^2 + x^3", "y^2 - x^2 - x^3"),
        ("b^2 = a^3", "b^2 - a^3"),
        ("b*y = -y*b + 2p*b^2", "b*y + y*b - 2*p*b^2"),
        ("a^2*x = -x*a^2 - a*x*a - a^2 + (1+3q)*a^3", "a^2*x + x*a^2 + a*x*a + a^2 - (1 + 3*q)*a^3"),
        (
            "a*x^2 = -a*x - x*a - x^2*a - x*a*x + (2+3q)q*a^3",
            "a*x^2 + a*x + x*a + x^2*a + x*a*x - (2 + 3*q)*q*a^3",
        ),
    ]
    .into_iter()
    .map(|(name, expr)| (name, parse_expr(expr, point).expect("relation parses")))
    .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation: &'static str,
    pub delta_residual: TensorPoly,
    pub counit_residual: Scalar,
    pub antipode_residual: NcPoly,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WellDefinedReport {
    pub relations: Vec<RelationCheck>,
    pub passed: bool,
}

/// `Δ`, `ε` and `S` extended from the generators to the free algebra must
/// kill every defining relation.
pub fn check_welldefined(hopf: &HopfAlgebra<'_>) -> Result<WellDefinedReport> {
    let relations = defining_relations(hopf.point())
        .into_iter()
        .map(|(name, rel)| {
            let delta_residual = hopf.delta(&rel)?;
            let counit_residual = hopf.counit(&rel);
            let antipode_residual = hopf.antipode(&rel)?;
            let passed = delta_residual.is_zero() && counit_residual.is_zero() && antipode_residual.is_zero();
            Ok(RelationCheck { relation: name, delta_residual, counit_residual, antipode_residual, passed })
        })
        .collect::<Result<Vec<_>>>()?;
    let passed = relations.iter().all(|r| r.passed);
    Ok(WellDefinedReport { relations, passed })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Coassociativity,
    LeftCounit,
    RightCounit,
    LeftAntipode,
    RightAntipode,
    GroupLike,
    TwistedPrimitive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Residual {
    Poly(NcPoly),
    Tensor(TensorPoly),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub element: NcPoly,
    pub axiom: Axiom,
    pub residual: Residual,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub generators_checked: usize,
    pub random_checked: usize,
    pub group_likes_checked: usize,
    pub failures: Vec<AxiomFailure>,
    /// `S^2(x)` and `S^2(y)`, recorded for regression comparison.
    pub antipode_squared_x: NcPoly,
    pub antipode_squared_y: NcPoly,
    pub passed: bool,
}

/// Residuals of the five axioms on `f`; empty when all hold.
fn axiom_residuals(hopf: &HopfAlgebra<'_>, f: &NcPoly) -> Result<Vec<(Axiom, Residual)>> {
    let alg = hopf.algebra();
    let mut out = Vec::new();
    let delta = hopf.delta(f)?;

    let left = delta.expand_leg(0, |w| hopf.delta_word(w))?;
    let right = delta.expand_leg(1, |w| hopf.delta_word(w))?;
    let diff = left.sub(&right)?;
    if !diff.is_zero() {
        out.push((Axiom::Coassociativity, Residual::Tensor(diff)));
    }

    let nf = alg.nf(f)?;
    let counit_left = delta.contract_leg(0, |w| hopf.counit_word(w)).to_nc().expect("arity 1");
    let counit_right = delta.contract_leg(1, |w| hopf.counit_word(w)).to_nc().expect("arity 1");
    for (axiom, value) in [(Axiom::LeftCounit, counit_left), (Axiom::RightCounit, counit_right)] {
        let diff = alg.nf(&(&value - &nf))?;
        if !diff.is_zero() {
            out.push((axiom, Residual::Poly(diff)));
        }
    }

    let unit = NcPoly::constant(hopf.counit(f));
    let mut left_antipode = NcPoly::zero();
    let mut right_antipode = NcPoly::zero();
    for (legs, c) in delta.terms() {
        let s_left = hopf.antipode_word(&legs[0])?;
        left_antipode.add_scaled(c, &s_left.mul(&NcPoly::word(legs[1].clone())));
        let s_right = hopf.antipode_word(&legs[1])?;
        right_antipode.add_scaled(c, &NcPoly::word(legs[0].clone()).mul(&s_right));
    }
    for (axiom, value) in [(Axiom::LeftAntipode, left_antipode), (Axiom::RightAntipode, right_antipode)] {
        let diff = alg.nf(&(&value - &unit))?;
        if !diff.is_zero() {
            out.push((axiom, Residual::Poly(diff)));
        }
    }
    Ok(out)
}

/// Coassociativity, both counit laws and both antipode laws on every
/// generator and on `samples` random elements of length at most
/// `sample_len`; also checks the group-likes `a^m b^n` (`|m| <= 3`) and
/// the twisted primitives `x - qa`, `y - pb`.
pub fn check_hopf_axioms(
    hopf: &HopfAlgebra<'_>,
    samples: usize,
    sample_len: usize,
    seed: u64,
) -> Result<AxiomReport> {
    let point = hopf.point().clone();
    let mut elements: Vec<NcPoly> = Letter::ALL.iter().map(|&l| NcPoly::letter(l)).collect();
    let mut rng = sample::rng(seed);
    elements.extend((0..samples).map(|_| sample::random_element(&mut rng, &point, sample_len)));

    let per_element = elements
        .par_iter()
        .map(|f| Ok(axiom_residuals(hopf, f)?.into_iter().map(|(axiom, residual)| AxiomFailure {
            element: f.clone(),
            axiom,
            residual,
        })))
        .collect::<Result<Vec<_>>>()?;
    let mut failures: Vec<AxiomFailure> = per_element.into_iter().flatten().collect();

    let mut group_likes_checked = 0;
    for m in -3i64..=3 {
        for n in 0..=1usize {
            let idx = crate::nodal::BasisIndex { i: 0, j: 0, l: 0, m, n };
            let w = idx.word();
            let mut expect = TensorPoly::zero(2);
            expect.add_term(smallvec::smallvec![w.clone(), w.clone()], Scalar::one());
            let delta = hopf.delta_word(&w)?;
            let diff = delta.sub(&expect)?;
            if !diff.is_zero() {
                failures.push(AxiomFailure {
                    element: NcPoly::word(w.clone()),
                    axiom: Axiom::GroupLike,
                    residual: Residual::Tensor(diff),
                });
            }
            let eps = &hopf.counit_word(&w) - &Scalar::one();
            if !eps.is_zero() {
                failures.push(AxiomFailure {
                    element: NcPoly::word(w),
                    axiom: Axiom::GroupLike,
                    residual: Residual::Poly(NcPoly::constant(eps)),
                });
            }
            group_likes_checked += 1;
        }
    }

    for (shifted, weight) in [("x - q*a", Letter::A), ("y - p*b", Letter::B)] {
        let z = parse_expr(shifted, &point).expect("parses");
        let mut expect = TensorPoly::pure(&[&NcPoly::one(), &z]);
        expect.add_scaled(&Scalar::one(), &TensorPoly::pure(&[&z, &NcPoly::letter(weight)]))?;
        let diff = hopf.delta(&z)?.sub(&expect)?;
        if !diff.is_zero() {
            failures.push(AxiomFailure { element: z, axiom: Axiom::TwistedPrimitive, residual: Residual::Tensor(diff) });
        }
    }

    let x = NcPoly::letter(Letter::X);
    let y = NcPoly::letter(Letter::Y);
    let antipode_squared_x = hopf.antipode(&hopf.antipode(&x)?)?;
    let antipode_squared_y = hopf.antipode(&hopf.antipode(&y)?)?;

    let passed = failures.is_empty();
    Ok(AxiomReport {
        generators_checked: Letter::ALL.len(),
        random_checked: samples,
        group_likes_checked,
        failures,
        antipode_squared_x,
        antipode_squared_y,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub residual: NcPoly,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identities: Vec<IdentityCheck>,
    pub passed: bool,
}

/// The perturbed coordinates `x - qa`, `y - pb` satisfy the curve equation.
pub fn check_identities(hopf: &HopfAlgebra<'_>) -> Result<IdentityReport> {
    let point = hopf.point();
    let identities = [
        ("(y-pb)^2 = y^2 - p^2 b^2", "(y - p*b)^2 - y^2 + p^2*b^2"),
        (
            "(x-qa)^2 + (x-qa)^3 = x^2 + x^3 - (q^2+q^3) a^3",
            "(x - q*a)^2 + (x - q*a)^3 - x^2 - x^3 + (q^2 + q^3)*a^3",
        ),
        ("(y-pb)^2 = (x-qa)^2 + (x-qa)^3", "(y - p*b)^2 - (x - q*a)^2 - (x - q*a)^3"),
    ]
    .into_iter()
    .map(|(name, expr)| {
        let residual = hopf.algebra().nf(&parse_expr(expr, point).expect("identity parses"))?;
        Ok(IdentityCheck { identity: name.to_string(), passed: residual.is_zero(), residual })
    })
    .collect::<Result<Vec<_>>>()?;
    let passed = identities.iter().all(|c| c.passed);
    Ok(IdentityReport { identities, passed })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoidealViolation {
    pub word: Word,
    pub delta: TensorPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoidealReport {
    pub max_deg: usize,
    pub words_checked: usize,
    pub violations: Vec<CoidealViolation>,
    pub passed: bool,
}

fn in_b(w: &Word) -> bool {
    basis_index(w).is_some_and(|idx| idx.tail().is_empty())
}

/// `Δ(x^i y^j)` has every left leg in `B` for `i + j <= max_deg`.
pub fn check_coideal(hopf: &HopfAlgebra<'_>, max_deg: usize) -> Result<CoidealReport> {
    let mut words = Vec::new();
    for deg in 0..=max_deg {
        for j in 0..=1.min(deg) {
            let mut w = Word::power(Letter::X, deg - j);
            if j == 1 {
                w.push(Letter::Y);
            }
            words.push(w);
        }
    }
    let mut violations = Vec::new();
    for w in &words {
        let delta = hopf.delta_word(w)?;
        if !delta.terms().all(|(legs, _)| in_b(&legs[0])) {
            violations.push(CoidealViolation { word: w.clone(), delta });
        }
    }
    Ok(CoidealReport { max_deg, words_checked: words.len(), passed: violations.is_empty(), violations })
}
