//! The algebra `A` at a point of the nodal cubic: its rewriting
//! presentation, the basis `x^i y^j (ax)^l a^m b^n`, the decomposition of
//! `A` as a free left module over `B = k[x, y]/(y^2 - x^2 - x^3)`, and
//! growth counts.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freealg::{Letter, NcPoly, Word};
use crate::rewrite::{
    check_diamond, complete, CompletionLog, DiamondReport, NfCache, Origin, PatternGuided, Rule,
    RuleSystem, DEFAULT_FUEL,
};
use crate::sample;
use crate::scalar::{CurvePoint, Scalar};

/// Upper bound on the completed system size; the nodal system needs 15.
pub const MAX_RULES: usize = 64;

/// Exponents of the basis word `x^i y^j (ax)^l a^m b^n`; negative `m`
/// stands for `g^{-m}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BasisIndex {
    pub i: usize,
    pub j: usize,
    pub l: usize,
    pub m: i64,
    pub n: usize,
}

impl BasisIndex {
    pub fn len(&self) -> usize {
        self.i + self.j + 2 * self.l + self.m.unsigned_abs() as usize + self.n
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn word(&self) -> Word {
        self.b_part().concat(&self.tail())
    }

    /// `x^i y^j`, the part lying in `B`.
    pub fn b_part(&self) -> Word {
        let mut w = Word::power(Letter::X, self.i);
        if self.j == 1 {
            w.push(Letter::Y);
        }
        w
    }

    /// `(ax)^l a^m b^n`.
    pub fn tail(&self) -> Word {
        let mut w = Word::empty();
        for _ in 0..self.l {
            w.push(Letter::A);
            w.push(Letter::X);
        }
        let run = if self.m >= 0 { Letter::A } else { Letter::G };
        for _ in 0..self.m.unsigned_abs() {
            w.push(run);
        }
        if self.n == 1 {
            w.push(Letter::B);
        }
        w
    }

    pub fn is_tail(&self) -> bool {
        self.i == 0 && self.j == 0
    }
}

/// Parses `w` against `x* y? (ax)* (a*|g*) b?`.
pub fn basis_index(w: &Word) -> Option<BasisIndex> {
    let s = w.letters();
    let at = |k: usize| s.get(k).copied();
    let mut k = 0;
    let mut idx = BasisIndex { i: 0, j: 0, l: 0, m: 0, n: 0 };
    while at(k) == Some(Letter::X) {
        idx.i += 1;
        k += 1;
    }
    if at(k) == Some(Letter::Y) {
        idx.j = 1;
        k += 1;
    }
    while at(k) == Some(Letter::A) && at(k + 1) == Some(Letter::X) {
        idx.l += 1;
        k += 2;
    }
    match at(k) {
        Some(Letter::A) => {
            while at(k) == Some(Letter::A) {
                idx.m += 1;
                k += 1;
            }
        }
        Some(Letter::G) => {
            while at(k) == Some(Letter::G) {
                idx.m -= 1;
                k += 1;
            }
        }
        _ => {}
    }
    if at(k) == Some(Letter::B) {
        idx.n = 1;
        k += 1;
    }
    (k == s.len()).then_some(idx)
}

pub fn is_basis_word(w: &Word) -> bool {
    basis_index(w).is_some()
}

/// All basis indices of total length exactly `len`, in word order.
pub fn basis_indices_of_len(len: usize) -> Vec<BasisIndex> {
    let mut out = Vec::new();
    for j in 0..=1 {
        for n in 0..=1 {
            let Some(rest) = len.checked_sub(j + n) else { continue };
            for l in 0..=rest / 2 {
                let free = rest - 2 * l;
                for am in 0..=free {
                    let i = free - am;
                    let ms: &[i64] = if am == 0 { &[0] } else { &[am as i64, -(am as i64)] };
                    for &m in ms {
                        out.push(BasisIndex { i, j, l, m, n });
                    }
                }
            }
        }
    }
    out.sort_by_key(|idx| idx.word());
    out
}

/// Basis words of length at most `max_len`, shortest first.
pub fn basis_words_up_to(max_len: usize) -> Vec<Word> {
    (0..=max_len).flat_map(|s| basis_indices_of_len(s).into_iter().map(|idx| idx.word())).collect()
}

/// The 13 oriented defining relations, with `by = -yb + 2pb^2` folded to
/// `by -> -yb + 2p a^3`.
pub fn seed_rules(point: &CurvePoint) -> Vec<Rule> {
    let q = point.q();
    let p = point.p();
    let one = Scalar::one;
    let neg = || -Scalar::one();
    let poly = |terms: Vec<(Scalar, &str)>| {
        NcPoly::from_terms(terms.into_iter().map(|(c, s)| (c, crate::freealg::w(s))))
    };
    let given = |lhs: &str, rhs: NcPoly| Rule {
        lhs: crate::freealg::w(lhs),
        rhs,
        origin: Origin::Given,
    };
    let one_plus_3q = &Scalar::one() + &(&Scalar::from(3) * q);
    let two_plus_3q_q = &(&Scalar::from(2) + &(&Scalar::from(3) * q)) * q;
    vec![
        given("ag", NcPoly::one()),
        given("ga", NcPoly::one()),
        given("ba", poly(vec![(one(), "ab")])),
        given("bg", poly(vec![(one(), "gb")])),
        given("bx", poly(vec![(one(), "xb")])),
        given("yx", poly(vec![(one(), "xy")])),
        given("ay", poly(vec![(one(), "ya")])),
        given("gy", poly(vec![(one(), "yg")])),
        given("yy", poly(vec![(one(), "xx"), (one(), "xxx")])),
        given("bb", poly(vec![(one(), "aaa")])),
        Rule {
            lhs: crate::freealg::w("by"),
            rhs: poly(vec![(neg(), "yb"), (&Scalar::from(2) * p, "aaa")]),
            origin: Origin::Folded,
        },
        given(
            "aax",
            poly(vec![(neg(), "xaa"), (neg(), "axa"), (neg(), "aa"), (one_plus_3q, "aaa")]),
        ),
        given(
            "axx",
            poly(vec![
                (neg(), "ax"),
                (neg(), "xa"),
                (neg(), "xxa"),
                (neg(), "xax"),
                (two_plus_3q_q, "aaa"),
            ]),
        ),
    ]
}

/// `A` at a fixed curve point, backed by a completed and checked rule
/// system. Normal forms are memoised per word.
#[derive(Debug, Clone)]
pub struct NodalAlgebra {
    point: CurvePoint,
    system: RuleSystem,
    completion: CompletionLog,
    diamond: DiamondReport,
    fuel: usize,
    cache: NfCache,
}

pub fn build_algebra(point: &CurvePoint) -> Result<NodalAlgebra> {
    NodalAlgebra::build(point, DEFAULT_FUEL)
}

impl NodalAlgebra {
    pub fn build(point: &CurvePoint, fuel: usize) -> Result<NodalAlgebra> {
        let seed = RuleSystem::with_fuel(seed_rules(point), fuel)?;
        let policy = PatternGuided::new(is_basis_word);
        let (system, completion) = complete(seed, &policy, MAX_RULES, fuel)?;
        let diamond = check_diamond(&system, fuel);
        if !diamond.locally_confluent {
            return Err(Error::DiamondFailure { unresolved: diamond.failures });
        }
        Ok(NodalAlgebra { point: point.clone(), system, completion, diamond, fuel, cache: NfCache::new() })
    }

    pub fn point(&self) -> &CurvePoint {
        &self.point
    }

    pub fn system(&self) -> &RuleSystem {
        &self.system
    }

    pub fn completion_log(&self) -> &CompletionLog {
        &self.completion
    }

    pub fn diamond_report(&self) -> &DiamondReport {
        &self.diamond
    }

    pub fn fuel(&self) -> usize {
        self.fuel
    }

    pub fn q(&self) -> &Scalar {
        self.point.q()
    }

    pub fn p(&self) -> &Scalar {
        self.point.p()
    }

    pub fn nf(&self, f: &NcPoly) -> Result<NcPoly> {
        self.system.normal_form_cached(f, self.fuel, &self.cache)
    }

    pub fn nf_word(&self, w: &Word) -> Result<NcPoly> {
        self.system.word_normal_form(w, self.fuel, &self.cache)
    }

    /// Product in `A`.
    pub fn mul(&self, f: &NcPoly, g: &NcPoly) -> Result<NcPoly> {
        self.nf(&f.mul(g))
    }

    pub fn is_zero(&self, f: &NcPoly) -> Result<bool> {
        Ok(self.nf(f)?.is_zero())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub length: usize,
    pub words_scanned: u64,
    pub reducible: u64,
    pub irreducible: u64,
    /// Count from direct enumeration of basis tuples.
    pub pattern_words: u64,
    /// Words where "irreducible" and "matches the pattern" disagree.
    pub mismatches: Vec<Word>,
    /// Reducible words whose normal form leaves the pattern span.
    pub off_pattern: Vec<Word>,
    pub fuel_failures: Vec<Word>,
}

impl CensusRow {
    pub fn passes(&self) -> bool {
        self.mismatches.is_empty()
            && self.off_pattern.is_empty()
            && self.fuel_failures.is_empty()
            && self.irreducible == self.pattern_words
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub max_len: usize,
    pub rows: Vec<CensusRow>,
    /// Cumulative basis counts `c(L)`.
    pub cumulative: Vec<u64>,
    pub passed: bool,
}

const SAMPLE_CAP: usize = 8;

fn push_capped(v: &mut Vec<Word>, w: Word) {
    if v.len() < SAMPLE_CAP {
        v.push(w);
    }
}

fn merge_rows(mut a: CensusRow, b: CensusRow) -> CensusRow {
    a.words_scanned += b.words_scanned;
    a.reducible += b.reducible;
    a.irreducible += b.irreducible;
    for (dst, src) in [
        (&mut a.mismatches, b.mismatches),
        (&mut a.off_pattern, b.off_pattern),
        (&mut a.fuel_failures, b.fuel_failures),
    ] {
        for w in src {
            push_capped(dst, w);
        }
        dst.sort();
    }
    a
}

fn word_from_index(mut idx: u64, len: usize) -> Word {
    let mut letters = vec![Letter::X; len];
    for slot in letters.iter_mut().rev() {
        *slot = Letter::ALL[(idx % 5) as usize];
        idx /= 5;
    }
    Word::from_letters(&letters)
}

/// Scans every word up to `max_len`: checks that a word is irreducible
/// exactly when it matches the basis pattern, that reducible words reduce
/// into the pattern span, and that irreducible counts agree with tuple
/// enumeration.
pub fn basis_census(alg: &NodalAlgebra, max_len: usize) -> CensusReport {
    let mut rows = Vec::with_capacity(max_len + 1);
    for len in 0..=max_len {
        let total = 5u64.pow(len as u32);
        let mut row = (0..total)
            .into_par_iter()
            .fold(CensusRow::default, |mut row, idx| {
                let word = word_from_index(idx, len);
                row.words_scanned += 1;
                let irreducible = alg.system.is_irreducible(&word);
                if irreducible != is_basis_word(&word) {
                    push_capped(&mut row.mismatches, word.clone());
                }
                if irreducible {
                    row.irreducible += 1;
                } else {
                    row.reducible += 1;
                    match alg.nf_word(&word) {
                        Ok(nf) => {
                            if !nf.words().all(is_basis_word) {
                                push_capped(&mut row.off_pattern, word);
                            }
                        }
                        Err(_) => push_capped(&mut row.fuel_failures, word),
                    }
                }
                row
            })
            .reduce(CensusRow::default, merge_rows);
        row.length = len;
        row.pattern_words = basis_indices_of_len(len).len() as u64;
        rows.push(row);
    }
    let cumulative = rows
        .iter()
        .scan(0u64, |acc, r| {
            *acc += r.pattern_words;
            Some(*acc)
        })
        .collect();
    let passed = rows.iter().all(CensusRow::passes);
    CensusReport { max_len, rows, cumulative, passed }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    pub max_len: usize,
    /// Basis words of each exact length.
    pub per_length: Vec<u64>,
    /// `c(L)`, basis words of length at most `L`.
    pub cumulative: Vec<u64>,
    /// `L` used for the fit.
    pub fit_at: usize,
    /// `log2(c(2L) / c(L))`.
    pub fitted_exponent: f64,
}

/// Counts basis words by length. Only the combinatorics of the pattern is
/// involved, so this scales to lengths where a word census cannot.
pub fn growth(max_len: usize) -> GrowthReport {
    // words x^i * (y^j (ax)^l a^m b^n): for each non-x part of length
    // `base`, every length >= base is reached by exactly one i
    let mut by_base = vec![0u64; max_len + 1];
    for j in 0..=1usize {
        for n in 0..=1usize {
            for l in 0..=max_len / 2 {
                for am in 0..=max_len {
                    let base = j + n + 2 * l + am;
                    if base > max_len {
                        break;
                    }
                    by_base[base] += if am == 0 { 1 } else { 2 };
                }
            }
        }
    }
    let per_length: Vec<u64> =
        by_base.iter().scan(0u64, |acc, &c| {
            *acc += c;
            Some(*acc)
        })
        .collect();
    let cumulative: Vec<u64> = per_length
        .iter()
        .scan(0u64, |acc, &c| {
            *acc += c;
            Some(*acc)
        })
        .collect();
    let fit_at = max_len / 2;
    let fitted_exponent = if fit_at == 0 {
        f64::NAN
    } else {
        (cumulative[2 * fit_at] as f64 / cumulative[fit_at] as f64).log2()
    };
    GrowthReport { max_len, per_length, cumulative, fit_at, fitted_exponent }
}

/// `f = Σ_t b_t · t` with tails `t = (ax)^l a^m b^n` and `b_t` a
/// combination of words `x^i y^j`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BDecomposition {
    pub parts: BTreeMap<Word, NcPoly>,
}

impl BDecomposition {
    pub fn coefficient(&self, tail: &Word) -> NcPoly {
        self.parts.get(tail).cloned().unwrap_or_default()
    }

    /// `Σ b_t t` reduced in `A`.
    pub fn recompose(&self, alg: &NodalAlgebra) -> Result<NcPoly> {
        let mut out = NcPoly::zero();
        for (tail, b) in &self.parts {
            out = &out + &b.mul(&NcPoly::word(tail.clone()));
        }
        alg.nf(&out)
    }

    pub fn add(&self, other: &BDecomposition) -> BDecomposition {
        let mut parts = self.parts.clone();
        for (t, b) in &other.parts {
            let sum = &parts.get(t).cloned().unwrap_or_default() + b;
            if sum.is_zero() {
                parts.remove(t);
            } else {
                parts.insert(t.clone(), sum);
            }
        }
        BDecomposition { parts }
    }
}

/// Splits each basis word of an element already in normal form.
pub fn decompose_normal(nf: &NcPoly) -> BDecomposition {
    let mut parts: BTreeMap<Word, NcPoly> = BTreeMap::new();
    for (word, c) in nf.terms() {
        let idx = basis_index(word).expect("normal forms consist of basis words");
        parts.entry(idx.tail()).or_default().add_term(idx.b_part(), c.clone());
    }
    parts.retain(|_, b| !b.is_zero());
    BDecomposition { parts }
}

pub fn b_decompose(f: &NcPoly, alg: &NodalAlgebra) -> Result<BDecomposition> {
    Ok(decompose_normal(&alg.nf(f)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductMismatch {
    pub left: Word,
    pub right: Word,
    pub product: NcPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RightAnalogue {
    pub pairs_checked: usize,
    /// Whether `NF(t · x^i y^j)` is always a single basis word.
    pub single_word_products: bool,
    pub counterexample: Option<ProductMismatch>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessReport {
    pub max_len: usize,
    pub pairs_checked: usize,
    pub failures: Vec<ProductMismatch>,
    pub round_trips: usize,
    pub round_trip_failures: Vec<NcPoly>,
    pub right_analogue: RightAnalogue,
    pub passed: bool,
}

/// Left freeness of `A` over `B` on the tails: `NF(x^i y^j · t)` must be
/// the concatenated basis word for every pair of combined length up to
/// `max_len`; decomposition must round-trip on random elements.
pub fn freeness_check(
    alg: &NodalAlgebra,
    max_len: usize,
    samples: usize,
    sample_len: usize,
    seed: u64,
) -> Result<FreenessReport> {
    let indices: Vec<BasisIndex> = (0..=max_len).flat_map(basis_indices_of_len).collect();
    let outcomes = indices
        .par_iter()
        .map(|idx| {
            let (b, t) = (idx.b_part(), idx.tail());
            let product = alg.mul(&NcPoly::word(b.clone()), &NcPoly::word(t.clone()))?;
            Ok((product != NcPoly::word(idx.word())).then_some(ProductMismatch { left: b, right: t, product }))
        })
        .collect::<Result<Vec<_>>>()?;
    let failures: Vec<_> = outcomes.into_iter().flatten().collect();

    let mut rng = sample::rng(seed);
    let mut round_trip_failures = Vec::new();
    for _ in 0..samples {
        let f = sample::random_element(&mut rng, alg.point(), sample_len);
        let dec = b_decompose(&f, alg)?;
        if dec.recompose(alg)? != alg.nf(&f)? || dec.parts.values().flat_map(|b| b.words()).any(|w| {
            basis_index(w).map_or(true, |i| !i.tail().is_empty())
        }) {
            round_trip_failures.push(f);
        }
    }

    let right_len = max_len.min(6);
    let mut right = RightAnalogue { pairs_checked: 0, single_word_products: true, counterexample: None };
    'outer: for idx in (0..=right_len).flat_map(basis_indices_of_len) {
        let (b, t) = (idx.b_part(), idx.tail());
        let product = alg.mul(&NcPoly::word(t.clone()), &NcPoly::word(b.clone()))?;
        right.pairs_checked += 1;
        if product.len() != 1 || product.leading().map_or(true, |(_, c)| !c.is_one()) {
            right.single_word_products = false;
            right.counterexample = Some(ProductMismatch { left: t, right: b, product });
            break 'outer;
        }
    }

    let passed = failures.is_empty() && round_trip_failures.is_empty();
    Ok(FreenessReport {
        max_len,
        pairs_checked: indices.len(),
        failures,
        round_trips: samples,
        round_trip_failures,
        right_analogue: right,
        passed,
    })
}
