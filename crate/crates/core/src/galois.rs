//! The quotient coalgebra `C = A/B⁺A`, the projection `π`, the coaction
//! `λ = (π ⊗ id)Δ` and the witness that `B⁺A ≠ AB⁺`.
//!
//! Because `A = ⊕_t B·t` over the tails `t = (ax)^l a^m b^n`, we get
//! `B⁺A = ⊕_t B⁺·t` and `π(Σ b_t t) = Σ ε(b_t) t̄`. The classes of the tails
//! are a basis of `C`, so every computation here is exact.

use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::freealg::{parse_expr, NcPoly, TensorPoly, Word};
use crate::hopf::HopfAlgebra;
use crate::nodal::{basis_index, basis_words_up_to, NodalAlgebra};
use crate::scalar::Scalar;

/// An element of `C` as a combination of tail classes; the empty tail is
/// `1̄`.
#[derive(Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct CPoly(NcPoly);

impl CPoly {
    pub fn zero() -> CPoly {
        CPoly::default()
    }

    pub fn class_of_one() -> CPoly {
        CPoly(NcPoly::one())
    }

    pub fn class(tail: Word) -> CPoly {
        debug_assert!(basis_index(&tail).is_some_and(|i| i.is_tail()));
        CPoly(NcPoly::word(tail))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn coeff(&self, tail: &Word) -> Scalar {
        self.0.coeff(tail)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.0.terms()
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &CPoly) {
        self.0.add_scaled(c, &other.0);
    }
}

impl fmt::Display for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::freealg::write_terms(f, self.0.terms().rev(), |_| false, |w| format!("[{w}]"))
    }
}

impl fmt::Debug for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CPoly({self})")
    }
}

/// `ε` restricted to `B`: `x^i y^j ↦ q^i p^j`.
fn counit_b(alg: &NodalAlgebra, i: usize, j: usize) -> Scalar {
    &alg.q().pow(i as u32) * &alg.p().pow(j as u32)
}

/// `π` on a single normal-form word.
fn project_word(alg: &NodalAlgebra, w: &Word) -> (Word, Scalar) {
    let idx = basis_index(w).expect("normal-form words are basis words");
    (idx.tail(), counit_b(alg, idx.i, idx.j))
}

pub fn project_pi(f: &NcPoly, alg: &NodalAlgebra) -> Result<CPoly> {
    let mut out = NcPoly::zero();
    for (w, c) in alg.nf(f)?.terms() {
        let (tail, eps) = project_word(alg, w);
        out.add_term(tail, c * &eps);
    }
    Ok(CPoly(out))
}

/// `f ∈ B⁺A` exactly when `π(f) = 0`.
pub fn membership_bplus_a(f: &NcPoly, alg: &NodalAlgebra) -> Result<bool> {
    Ok(project_pi(f, alg)?.is_zero())
}

/// An element of `C ⊗ A`: left legs are tails, right legs normal forms.
#[derive(Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct CoactionValue(TensorPoly);

impl CoactionValue {
    /// `1̄ ⊗ f` for `f` in normal form.
    pub fn trivial(f: &NcPoly) -> CoactionValue {
        CoactionValue(TensorPoly::pure(&[&NcPoly::one(), f]))
    }

    pub fn as_tensor(&self) -> &TensorPoly {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for CoactionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for CoactionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoactionValue({})", self.0)
    }
}

/// `λ(f) = π(f_(1)) ⊗ f_(2)`.
pub fn coaction(f: &NcPoly, hopf: &HopfAlgebra<'_>) -> Result<CoactionValue> {
    let alg = hopf.algebra();
    let delta = hopf.delta(f)?;
    let mut out = TensorPoly::zero(2);
    for (legs, c) in delta.terms() {
        let (tail, eps) = project_word(alg, &legs[0]);
        out.add_term(smallvec::smallvec![tail, legs[1].clone()], c * &eps);
    }
    Ok(CoactionValue(out))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecoveryFailure {
    pub word: Word,
    pub coaction: CoactionValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecoveryReport {
    pub max_deg: usize,
    /// `B`-basis words checked for `λ(f) = 1̄ ⊗ f`.
    pub invariant_words: usize,
    /// Other basis words checked for `λ(f) ≠ 1̄ ⊗ f`.
    pub non_invariant_words: usize,
    pub failures: Vec<RecoveryFailure>,
    pub passed: bool,
}

/// On basis words up to `max_deg`, the coinvariants `λ(f) = 1̄ ⊗ f` are
/// exactly the words lying in `B`.
pub fn recovery_check(hopf: &HopfAlgebra<'_>, max_deg: usize) -> Result<RecoveryReport> {
    let mut report = RecoveryReport {
        max_deg,
        invariant_words: 0,
        non_invariant_words: 0,
        failures: Vec::new(),
        passed: false,
    };
    for w in basis_words_up_to(max_deg) {
        let in_b = basis_index(&w).is_some_and(|i| i.tail().is_empty());
        let f = NcPoly::word(w.clone());
        let value = coaction(&f, hopf)?;
        let trivial = value == CoactionValue::trivial(&f);
        if in_b {
            report.invariant_words += 1;
        } else {
            report.non_invariant_words += 1;
        }
        if trivial != in_b {
            report.failures.push(RecoveryFailure { word: w, coaction: value });
        }
    }
    report.passed = report.failures.is_empty();
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub element: String,
    pub normal_form: NcPoly,
    /// `-xa^2 - axa - (1+q)a^2 + (1+3q)a^3`
    pub expected_normal_form: NcPoly,
    pub normal_form_matches: bool,
    /// `x - q` lies in `B` with `ε(x - q) = 0`.
    pub in_a_bplus: bool,
    pub in_bplus_a: bool,
    pub projection: CPoly,
    pub passed: bool,
}

/// `a^2 (x - q)` lies in `AB⁺` but not in `B⁺A`.
pub fn witness_check(hopf: &HopfAlgebra<'_>) -> Result<WitnessReport> {
    let alg = hopf.algebra();
    let point = alg.point();
    let right_factor = parse_expr("x - q", point).expect("parses");
    let element = parse_expr("a^2*(x - q)", point).expect("parses");
    let expected = parse_expr("-x*a^2 - a*x*a - (1 + q)*a^2 + (1 + 3*q)*a^3", point).expect("parses");
    let normal_form = alg.nf(&element)?;
    let normal_form_matches = normal_form == alg.nf(&expected)?;

    let factor_nf = alg.nf(&right_factor)?;
    let factor_in_b = factor_nf.words().all(|w| basis_index(w).is_some_and(|i| i.tail().is_empty()));
    let in_a_bplus = factor_in_b && hopf.counit(&factor_nf).is_zero();

    let projection = project_pi(&element, alg)?;
    let in_bplus_a = projection.is_zero();
    let passed = normal_form_matches && in_a_bplus && !in_bplus_a;
    Ok(WitnessReport {
        element: "a^2*(x - q)".into(),
        normal_form,
        expected_normal_form: expected,
        normal_form_matches,
        in_a_bplus,
        in_bplus_a,
        projection,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::w;
    use crate::scalar::CurvePoint;

    fn alg() -> NodalAlgebra {
        crate::nodal::build_algebra(&CurvePoint::from_t(&2.into())).unwrap()
    }

    #[test]
    fn projection_of_generators() {
        let alg = alg();
        let x = NcPoly::word(w("x"));
        assert_eq!(project_pi(&x, &alg).unwrap(), CPoly(NcPoly::constant(3.into())));
        assert_eq!(project_pi(&NcPoly::word(w("a")), &alg).unwrap(), CPoly::class(w("a")));
    }

    #[test]
    fn membership() {
        let alg = alg();
        let pt = alg.point().clone();
        let p = |s: &str| parse_expr(s, &pt).unwrap();
        assert!(membership_bplus_a(&p("(x - q)*a"), &alg).unwrap());
        assert!(!membership_bplus_a(&p("a^2*(x - q)"), &alg).unwrap());
        assert!(membership_bplus_a(&p("y^2 - p^2"), &alg).unwrap());
    }

    /// `λ(f)·Δ(h)`, with `C` acting on the right of itself through `π`.
    fn act(hopf: &HopfAlgebra<'_>, lam: &CoactionValue, h: &NcPoly) -> TensorPoly {
        let alg = hopf.algebra();
        let dh = hopf.delta(h).unwrap();
        let mut out = TensorPoly::zero(2);
        for (l1, c1) in lam.as_tensor().terms() {
            for (l2, c2) in dh.terms() {
                let left = project_pi(&NcPoly::word(l1[0].concat(&l2[0])), alg).unwrap();
                let right = alg.nf_word(&l1[1].concat(&l2[1])).unwrap();
                let c = c1 * c2;
                for (t, ct) in left.terms() {
                    let leg = TensorPoly::pure(&[&NcPoly::word(t.clone()), &right]);
                    out.add_scaled(&(&c * ct), &leg).unwrap();
                }
            }
        }
        out
    }

    #[test]
    fn invariants_on_random_elements() {
        let alg = alg();
        let hopf = HopfAlgebra::new(&alg);
        let pt = alg.point().clone();
        let mut rng = crate::sample::rng(11);
        let bs = [parse_expr("x", &pt).unwrap(), parse_expr("y - 2*x^2", &pt).unwrap(), parse_expr("x*y + 1", &pt).unwrap()];
        for _ in 0..25 {
            let f = crate::sample::random_element(&mut rng, &pt, 4);
            let h = crate::sample::random_element(&mut rng, &pt, 3);
            let pi_f = project_pi(&f, &alg).unwrap();

            for b in &bs {
                let mut scaled = CPoly::zero();
                scaled.add_scaled(&hopf.counit(b), &pi_f);
                assert_eq!(project_pi(&b.mul(&f), &alg).unwrap(), scaled);
            }

            let lam = coaction(&f, &hopf).unwrap();
            let contracted = lam.as_tensor().contract_leg(1, |w| hopf.counit_word(w)).to_nc().unwrap();
            assert_eq!(CPoly(contracted), pi_f);

            let lam_fh = coaction(&f.mul(&h), &hopf).unwrap();
            assert_eq!(lam_fh.as_tensor(), &act(&hopf, &lam, &h));
        }
    }

    #[test]
    fn recovery_and_witness_at_reference_points() {
        for t in [2, 0, -1, 3] {
            let alg = crate::nodal::build_algebra(&CurvePoint::from_t(&t.into())).unwrap();
            let hopf = HopfAlgebra::new(&alg);
            let rec = recovery_check(&hopf, 4).unwrap();
            assert!(rec.passed, "t={t}: {:?}", rec.failures);
            assert_eq!(rec.invariant_words, 9);
            let wit = witness_check(&hopf).unwrap();
            assert!(wit.passed, "t={t}: {wit:?}");
        }
    }

    #[test]
    fn projection_of_witness() {
        let alg = alg();
        let f = parse_expr("a^2*(x - q)", alg.point()).unwrap();
        let pi = project_pi(&f, &alg).unwrap();
        assert_eq!(pi.coeff(&w("aa")), Scalar::from(-7));
        assert_eq!(pi.coeff(&w("axa")), Scalar::from(-1));
        assert_eq!(pi.coeff(&w("aaa")), Scalar::from(10));
        assert_eq!(pi.terms().count(), 3);
    }
}
