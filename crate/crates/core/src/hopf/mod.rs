//! Coproduct, counit and antipode of `A`, extended from their values on
//! generators, and the checks that they are well defined and satisfy the
//! Hopf algebra axioms.

mod alt;
mod checks;
mod units;

use dashmap::DashMap;
use smallvec::smallvec;

use crate::error::Result;
use crate::freealg::{parse_expr, Letter, NcPoly, TensorPoly, Word};
use crate::nodal::NodalAlgebra;
use crate::scalar::{CurvePoint, Scalar};

pub use alt::{check_alt_presentation, AltGenerators, AltReport};
pub use checks::{
    check_coideal, check_hopf_axioms, check_identities, check_welldefined, defining_relations,
    Axiom, AxiomFailure, AxiomReport, CoidealReport, IdentityCheck, IdentityReport, RelationCheck,
    Residual, WellDefinedReport,
};
pub use units::{units_bounded_check, UnitsOutcome, UnitsReport};

/// Values of `Δ`, `ε` and `S` on the five letters.
///
/// `S(b) = b^-1` is written `a^-3 b` (from `b^2 = a^3`), so
/// `S(y) = p - (y - p) a^-3 b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureMaps {
    delta: [TensorPoly; 5],
    counit: [Scalar; 5],
    antipode: [NcPoly; 5],
}

impl StructureMaps {
    pub fn new(point: &CurvePoint) -> StructureMaps {
        let parse = |s: &str| parse_expr(s, point).expect("structure map formula parses");
        let one = NcPoly::one();
        let group_like = |l: Letter| {
            let w = Word::letter(l);
            let mut t = TensorPoly::zero(2);
            t.add_term(smallvec![w.clone(), w], Scalar::one());
            t
        };
        // Δ(x) = 1 ⊗ (x - qa) + x ⊗ a, Δ(y) = 1 ⊗ (y - pb) + y ⊗ b
        let twisted = |gen: &str, shifted: &str, weight: Letter| {
            let mut t = TensorPoly::pure(&[&one, &parse(shifted)]);
            t.add_scaled(&Scalar::one(), &TensorPoly::pure(&[&parse(gen), &NcPoly::letter(weight)]))
                .expect("arity 2");
            t
        };
        let delta = [
            twisted("x", "x - q*a", Letter::A),
            twisted("y", "y - p*b", Letter::B),
            group_like(Letter::A),
            group_like(Letter::G),
            group_like(Letter::B),
        ];
        let counit = [point.q().clone(), point.p().clone(), Scalar::one(), Scalar::one(), Scalar::one()];
        let antipode = [
            parse("q - (x - q)*a^-1"),
            parse("p - (y - p)*a^-3*b"),
            parse("a^-1"),
            parse("a"),
            parse("a^-3*b"),
        ];
        StructureMaps { delta, counit, antipode }
    }

    pub fn delta_of(&self, l: Letter) -> &TensorPoly {
        &self.delta[l.index()]
    }

    pub fn counit_of(&self, l: Letter) -> &Scalar {
        &self.counit[l.index()]
    }

    pub fn antipode_of(&self, l: Letter) -> &NcPoly {
        &self.antipode[l.index()]
    }
}

/// `A` together with its structure maps. Coproducts and antipodes of words
/// are memoised.
pub struct HopfAlgebra<'a> {
    alg: &'a NodalAlgebra,
    maps: StructureMaps,
    delta_cache: DashMap<Word, TensorPoly>,
    antipode_cache: DashMap<Word, NcPoly>,
}

impl<'a> HopfAlgebra<'a> {
    pub fn new(alg: &'a NodalAlgebra) -> Self {
        HopfAlgebra::with_maps(alg, StructureMaps::new(alg.point()))
    }

    pub fn with_maps(alg: &'a NodalAlgebra, maps: StructureMaps) -> Self {
        HopfAlgebra { alg, maps, delta_cache: DashMap::new(), antipode_cache: DashMap::new() }
    }

    pub fn algebra(&self) -> &'a NodalAlgebra {
        self.alg
    }

    pub fn maps(&self) -> &StructureMaps {
        &self.maps
    }

    pub fn point(&self) -> &CurvePoint {
        self.alg.point()
    }

    /// Reduces every leg of a tensor to normal form.
    pub fn nf_tensor(&self, t: &TensorPoly) -> Result<TensorPoly> {
        t.map_legs(|_, w| self.alg.nf_word(w))
    }

    pub fn delta_word(&self, w: &Word) -> Result<TensorPoly> {
        if w.is_empty() {
            return Ok(TensorPoly::one(2));
        }
        if let Some(hit) = self.delta_cache.get(w) {
            return Ok(hit.clone());
        }
        let n = w.len();
        let prefix = self.delta_word(&w.slice(0, n - 1))?;
        let last = self.maps.delta_of(w.letters()[n - 1]);
        let value = self.nf_tensor(&prefix.mul(last)?)?;
        self.delta_cache.insert(w.clone(), value.clone());
        Ok(value)
    }

    /// `Δ(f)` in `A ⊗ A`, both legs in normal form.
    pub fn delta(&self, f: &NcPoly) -> Result<TensorPoly> {
        let mut out = TensorPoly::zero(2);
        for (w, c) in f.terms() {
            out.add_scaled(c, &self.delta_word(w)?)?;
        }
        Ok(out)
    }

    pub fn counit_word(&self, w: &Word) -> Scalar {
        w.letters().iter().fold(Scalar::one(), |acc, &l| &acc * self.maps.counit_of(l))
    }

    pub fn counit(&self, f: &NcPoly) -> Scalar {
        f.terms().fold(Scalar::zero(), |acc, (w, c)| &acc + &(c * &self.counit_word(w)))
    }

    /// `S(l_1 ... l_n) = S(l_n) ... S(l_1)`, in normal form.
    pub fn antipode_word(&self, w: &Word) -> Result<NcPoly> {
        if w.is_empty() {
            return Ok(NcPoly::one());
        }
        if let Some(hit) = self.antipode_cache.get(w) {
            return Ok(hit.clone());
        }
        let n = w.len();
        let prefix = self.antipode_word(&w.slice(0, n - 1))?;
        let last = self.maps.antipode_of(w.letters()[n - 1]);
        let value = self.alg.mul(last, &prefix)?;
        self.antipode_cache.insert(w.clone(), value.clone());
        Ok(value)
    }

    pub fn antipode(&self, f: &NcPoly) -> Result<NcPoly> {
        let mut out = NcPoly::zero();
        for (w, c) in f.terms() {
            out.add_scaled(c, &self.antipode_word(w)?);
        }
        Ok(out)
    }
}

/// `Δ(f)` with both legs reduced.
pub fn apply_delta(f: &NcPoly, hopf: &HopfAlgebra<'_>) -> Result<TensorPoly> {
    hopf.delta(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::w;
    use crate::nodal::build_algebra;

    fn alg_at(t: i64) -> NodalAlgebra {
        build_algebra(&CurvePoint::from_t(&t.into())).unwrap()
    }

    #[test]
    fn delta_of_x() {
        let alg = alg_at(2);
        let hopf = HopfAlgebra::new(&alg);
        let got = hopf.delta(&NcPoly::letter(Letter::X)).unwrap();
        let pt = alg.point();
        let mut expect = TensorPoly::pure(&[&NcPoly::one(), &parse_expr("x - q*a", pt).unwrap()]);
        expect.add_scaled(&Scalar::one(), &TensorPoly::pure(&[&NcPoly::letter(Letter::X), &NcPoly::letter(Letter::A)])).unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn antipode_of_b_is_inverse() {
        let alg = alg_at(2);
        let hopf = HopfAlgebra::new(&alg);
        let b = NcPoly::letter(Letter::B);
        let s = hopf.antipode(&b).unwrap();
        assert_eq!(alg.mul(&b, &s).unwrap(), NcPoly::one());
        assert_eq!(alg.mul(&s, &b).unwrap(), NcPoly::one());
    }

    #[test]
    fn delta_is_multiplicative_on_a_product() {
        let alg = alg_at(2);
        let hopf = HopfAlgebra::new(&alg);
        let xy = hopf.delta_word(&w("xya")).unwrap();
        let x = hopf.delta_word(&w("x")).unwrap();
        let ya = hopf.delta_word(&w("ya")).unwrap();
        assert_eq!(hopf.nf_tensor(&x.mul(&ya).unwrap()).unwrap(), xy);
    }

    #[test]
    fn checks_pass_at_several_points() {
        for t in [2, 0, -1, 3] {
            let alg = alg_at(t);
            let hopf = HopfAlgebra::new(&alg);
            assert!(check_welldefined(&hopf).unwrap().passed, "welldefined t={t}");
            let axioms = check_hopf_axioms(&hopf, 10, 4, 7).unwrap();
            assert!(axioms.passed, "axioms t={t}: {:?}", axioms.failures);
            assert!(check_identities(&hopf).unwrap().passed, "identities t={t}");
            assert!(check_coideal(&hopf, 4).unwrap().passed, "coideal t={t}");
            let alt = check_alt_presentation(&alg).unwrap();
            assert!(alt.anticommuting_passed, "alt t={t}");
            let failing: Vec<_> = alt.relations.iter().filter(|r| !r.passed).map(|r| r.identity.as_str()).collect();
            let expected: &[&str] = if alg.p().is_zero() { &[] } else { &["bd = -db"] };
            assert_eq!(failing, expected, "t={t}");
        }
    }

    #[test]
    fn broken_counit_is_detected() {
        let alg = alg_at(2);
        let mut maps = StructureMaps::new(alg.point());
        maps.counit[Letter::X.index()] = Scalar::from(5);
        let hopf = HopfAlgebra::with_maps(&alg, maps);
        assert!(!check_welldefined(&hopf).unwrap().passed);
    }

    #[test]
    fn units_of_group_likes() {
        let alg = alg_at(2);
        let pt = alg.point().clone();
        let p = |s: &str| parse_expr(s, &pt).unwrap();
        let report = units_bounded_check(&alg, &p("a^2*b"), 6).unwrap();
        match report.outcome {
            UnitsOutcome::Invertible { inverse, two_sided } => {
                assert!(two_sided);
                assert_eq!(inverse, alg.nf(&p("a^-5*b")).unwrap());
            }
            other => panic!("expected invertible, got {other:?}"),
        }
        assert!(!units_bounded_check(&alg, &p("1 + x"), 4).unwrap().is_invertible());
    }
}
