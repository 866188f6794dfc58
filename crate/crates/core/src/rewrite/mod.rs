//! Reduction of free-algebra polynomials by oriented monic rules
//! `lhs -> rhs`, with the machinery of the diamond lemma: ambiguity
//! enumeration, resolution checking and completion.

mod ambiguity;
mod complete;

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freealg::{NcPoly, Word};
use crate::scalar::Scalar;

pub use ambiguity::{
    check_diamond, find_ambiguities, Ambiguity, AmbiguityKind, AmbiguityOutcome, DiamondReport,
    Resolution,
};
pub use complete::{
    complete, Completer, CompletionLog, LogEntry, OrientationPolicy, PatternGuided, RuleSource,
};

pub const DEFAULT_FUEL: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    Given,
    Folded,
    Completed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: NcPoly,
    pub origin: Origin,
}

impl Rule {
    pub fn new(lhs: Word, rhs: NcPoly, origin: Origin) -> Result<Rule> {
        if lhs.is_empty() {
            return Err(Error::InvalidRule { lhs, reason: "empty left-hand side" });
        }
        if rhs.contains_word(&lhs) {
            return Err(Error::InvalidRule { lhs, reason: "left-hand side occurs on the right" });
        }
        Ok(Rule { lhs, rhs, origin })
    }

    /// `lhs - rhs`, the relation the rule encodes.
    pub fn relation(&self) -> NcPoly {
        &NcPoly::word(self.lhs.clone()) - &self.rhs
    }
}

/// Which occurrence of a rule head a reduction step rewrites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Leftmost,
    Rightmost,
}

/// Memoised word normal forms for one rule system.
#[derive(Debug, Default)]
pub struct NfCache(DashMap<Word, NcPoly>);

impl NfCache {
    pub fn new() -> NfCache {
        NfCache::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Clone for NfCache {
    fn clone(&self) -> Self {
        NfCache(self.0.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleSystem {
    rules: Vec<Rule>,
    fuel_default: usize,
    // per first letter: rule indices sorted by (lhs length desc, index)
    by_first: [Vec<usize>; 5],
}

impl RuleSystem {
    pub fn new(rules: Vec<Rule>) -> Result<RuleSystem> {
        RuleSystem::with_fuel(rules, DEFAULT_FUEL)
    }

    pub fn with_fuel(rules: Vec<Rule>, fuel_default: usize) -> Result<RuleSystem> {
        for (i, r) in rules.iter().enumerate() {
            if r.lhs.is_empty() || r.rhs.contains_word(&r.lhs) {
                Rule::new(r.lhs.clone(), r.rhs.clone(), r.origin)?;
            }
            if rules[..i].iter().any(|s| s.lhs == r.lhs) {
                return Err(Error::InvalidRule { lhs: r.lhs.clone(), reason: "duplicate left-hand side" });
            }
        }
        let mut by_first: [Vec<usize>; 5] = Default::default();
        for (i, r) in rules.iter().enumerate() {
            by_first[r.lhs.letters()[0].index()].push(i);
        }
        for bucket in &mut by_first {
            bucket.sort_by_key(|&i| (std::cmp::Reverse(rules[i].lhs.len()), i));
        }
        Ok(RuleSystem { rules, fuel_default: fuel_default.max(1), by_first })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn fuel_default(&self) -> usize {
        self.fuel_default
    }

    pub fn rule_for(&self, lhs: &Word) -> Option<&Rule> {
        self.rules.iter().find(|r| &r.lhs == lhs)
    }

    fn match_at(&self, word: &Word, pos: usize) -> Option<usize> {
        let first = word.letters()[pos];
        self.by_first[first.index()]
            .iter()
            .copied()
            .find(|&i| word.starts_with_at(pos, self.rules[i].lhs.letters()))
    }

    /// `(position, rule index)` of the occurrence a step would rewrite.
    pub fn find_redex(&self, word: &Word, strategy: Strategy) -> Option<(usize, usize)> {
        match strategy {
            Strategy::Leftmost => {
                (0..word.len()).find_map(|pos| self.match_at(word, pos).map(|i| (pos, i)))
            }
            Strategy::Rightmost => {
                (0..word.len()).rev().find_map(|pos| self.match_at(word, pos).map(|i| (pos, i)))
            }
        }
    }

    pub fn is_irreducible(&self, word: &Word) -> bool {
        self.find_redex(word, Strategy::Leftmost).is_none()
    }

    fn rewrite_at(&self, word: &Word, pos: usize, rule: usize) -> NcPoly {
        let r = &self.rules[rule];
        let end = pos + r.lhs.len();
        r.rhs.map_words(|m| word.splice(pos, end, m))
    }

    /// One deterministic step: the first reducible word in ascending order,
    /// rewritten at its leftmost redex. `None` when `f` is irreducible.
    pub fn reduce_once(&self, f: &NcPoly) -> Option<NcPoly> {
        let (word, c, pos, rule) = f.terms().find_map(|(w, c)| {
            self.find_redex(w, Strategy::Leftmost).map(|(pos, i)| (w.clone(), c.clone(), pos, i))
        })?;
        let mut out = f.clone();
        out.remove(&word);
        out.add_scaled(&c, &self.rewrite_at(&word, pos, rule));
        Some(out)
    }

    pub fn normal_form(&self, f: &NcPoly, fuel: usize) -> Result<NcPoly> {
        self.normal_form_with(f, fuel, Strategy::Leftmost)
    }

    pub fn normal_form_with(&self, f: &NcPoly, fuel: usize, strategy: Strategy) -> Result<NcPoly> {
        self.reduce_loop(f.clone(), fuel, strategy, None).map(|(nf, _)| nf)
    }

    /// Normal form with word-level memoisation; `fuel` bounds each word.
    pub fn normal_form_cached(&self, f: &NcPoly, fuel: usize, cache: &NfCache) -> Result<NcPoly> {
        let mut out = NcPoly::zero();
        for (w, c) in f.terms() {
            out.add_scaled(c, &self.word_normal_form(w, fuel, cache)?);
        }
        Ok(out)
    }

    pub fn word_normal_form(&self, w: &Word, fuel: usize, cache: &NfCache) -> Result<NcPoly> {
        if let Some(hit) = cache.0.get(w) {
            return Ok(hit.clone());
        }
        if self.is_irreducible(w) {
            return Ok(NcPoly::word(w.clone()));
        }
        let (nf, _) = self.reduce_loop(NcPoly::word(w.clone()), fuel, Strategy::Leftmost, Some(cache))?;
        cache.0.insert(w.clone(), nf.clone());
        Ok(nf)
    }

    /// Normal form where every word is rewritten once at the `strategy`
    /// redex and the resulting words are normalised the same way, with
    /// results memoised in `cache`. Use one cache per strategy. `fuel`
    /// bounds the rewrites not answered by the cache; on exhaustion the
    /// partial result is `f` itself.
    pub fn normal_form_memo(&self, f: &NcPoly, fuel: usize, strategy: Strategy, cache: &NfCache) -> Result<NcPoly> {
        struct Frame {
            word: Word,
            children: Vec<(Word, Scalar)>,
            next: usize,
            acc: NcPoly,
        }
        let mut steps = 0usize;
        let mut out = NcPoly::zero();
        for (root, coeff) in f.terms() {
            let mut stack: Vec<Frame> = Vec::new();
            let mut current = root.clone();
            let nf = loop {
                // resolve `current`, or open a frame for it
                let resolved = if let Some(hit) = cache.0.get(&current) {
                    Some(hit.clone())
                } else {
                    match self.find_redex(&current, strategy) {
                        None => Some(NcPoly::word(current.clone())),
                        Some((pos, rule)) => {
                            if steps >= fuel {
                                return Err(Error::FuelExhausted { partial: Box::new(f.clone()), steps });
                            }
                            steps += 1;
                            let children = self.rewrite_at(&current, pos, rule).terms().map(|(w, c)| (w.clone(), c.clone())).collect();
                            stack.push(Frame { word: current.clone(), children, next: 0, acc: NcPoly::zero() });
                            None
                        }
                    }
                };
                let mut value = resolved;
                // fold finished values into parents
                loop {
                    let Some(top) = stack.last_mut() else { break };
                    if let Some(v) = value.take() {
                        let c = top.children[top.next].1.clone();
                        top.acc.add_scaled(&c, &v);
                        top.next += 1;
                    }
                    if top.next < top.children.len() {
                        break;
                    }
                    let done = stack.pop().expect("nonempty");
                    cache.0.insert(done.word, done.acc.clone());
                    value = Some(done.acc);
                }
                match (stack.last(), value) {
                    (None, Some(v)) => break v,
                    (Some(top), _) => current = top.children[top.next].0.clone(),
                    (None, None) => unreachable!("an open frame always has a pending child"),
                }
            };
            out.add_scaled(coeff, &nf);
        }
        Ok(out)
    }

    /// Rewrites the largest pending word until nothing reducible remains.
    /// Returns the normal form and the number of rewrite steps.
    fn reduce_loop(
        &self,
        mut pending: NcPoly,
        fuel: usize,
        strategy: Strategy,
        cache: Option<&NfCache>,
    ) -> Result<(NcPoly, usize)> {
        let mut done = NcPoly::zero();
        let mut steps = 0usize;
        while let Some((w, c)) = pending.pop_last() {
            if let Some(hit) = cache.and_then(|cache| cache.0.get(&w)) {
                done.add_scaled(&c, &hit);
                continue;
            }
            match self.find_redex(&w, strategy) {
                None => done.add_term(w, c),
                Some((pos, rule)) => {
                    if steps >= fuel {
                        pending.add_term(w, c);
                        let mut partial = pending;
                        partial.add_scaled(&Scalar::one(), &done);
                        return Err(Error::FuelExhausted { partial: Box::new(partial), steps });
                    }
                    steps += 1;
                    pending.add_scaled(&c, &self.rewrite_at(&w, pos, rule));
                }
            }
        }
        Ok((done, steps))
    }
}

impl Serialize for RuleSystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rules.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RuleSystem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rules = Vec::<Rule>::deserialize(d)?;
        RuleSystem::new(rules).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::w;

    fn poly(terms: &[(i64, &str)]) -> NcPoly {
        NcPoly::from_terms(terms.iter().map(|&(c, s)| (Scalar::from(c), w(s))))
    }

    fn rule(lhs: &str, rhs: &[(i64, &str)]) -> Rule {
        Rule::new(w(lhs), poly(rhs), Origin::Given).unwrap()
    }

    fn small_system() -> RuleSystem {
        RuleSystem::new(vec![
            rule("ba", &[(1, "ab")]),
            rule("yy", &[(1, "xx"), (1, "xxx")]),
            rule("yx", &[(1, "xy")]),
            rule("bb", &[(1, "aaa")]),
        ])
        .unwrap()
    }

    #[test]
    fn single_steps() {
        let rs = small_system();
        assert_eq!(rs.reduce_once(&poly(&[(1, "ba")])), Some(poly(&[(1, "ab")])));
        assert_eq!(rs.reduce_once(&poly(&[(1, "yy")])), Some(poly(&[(1, "xx"), (1, "xxx")])));
        assert_eq!(rs.reduce_once(&poly(&[(1, "xy")])), None);
    }

    #[test]
    fn reduce_once_picks_first_word_and_leftmost_redex() {
        let rs = small_system();
        // "ba" < "yyx" in graded order, so "ba" is rewritten first
        let f = poly(&[(1, "yyx"), (1, "ba")]);
        assert_eq!(rs.reduce_once(&f), Some(poly(&[(1, "yyx"), (1, "ab")])));
        let g = poly(&[(1, "yyx")]);
        assert_eq!(rs.reduce_once(&g), Some(poly(&[(1, "xxx"), (1, "xxxx")])));
    }

    #[test]
    fn longest_rule_wins_ties() {
        let rs = RuleSystem::new(vec![rule("ab", &[(1, "x")]), rule("abb", &[(1, "y")])]).unwrap();
        assert_eq!(rs.reduce_once(&poly(&[(1, "abb")])), Some(poly(&[(1, "y")])));
    }

    #[test]
    fn normal_forms() {
        let rs = small_system();
        assert_eq!(rs.normal_form(&poly(&[(1, "bb")]), 100).unwrap(), poly(&[(1, "aaa")]));
        let yyy = rs.normal_form(&poly(&[(1, "yyy")]), 100).unwrap();
        assert_eq!(yyy, poly(&[(1, "xxy"), (1, "xxxy")]));
        let right = rs.normal_form_with(&poly(&[(1, "yyy")]), 100, Strategy::Rightmost).unwrap();
        assert_eq!(right, yyy);
    }

    #[test]
    fn fuel_exhaustion_reports_partial() {
        let rs = RuleSystem::new(vec![rule("x", &[(1, "yy")]), rule("yy", &[(1, "x")])]);
        // "x" -> "yy" -> "x" ... is rejected only by fuel
        let rs = rs.unwrap();
        match rs.normal_form(&poly(&[(1, "x")]), 5) {
            Err(Error::FuelExhausted { steps, partial }) => {
                assert_eq!(steps, 5);
                assert!(!partial.is_zero());
            }
            other => panic!("expected fuel exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn invalid_rules() {
        assert!(Rule::new(Word::empty(), NcPoly::zero(), Origin::Given).is_err());
        assert!(Rule::new(w("ab"), poly(&[(2, "ab")]), Origin::Given).is_err());
        let dup = RuleSystem::new(vec![rule("ab", &[(1, "x")]), rule("ab", &[(1, "y")])]);
        assert!(matches!(dup, Err(Error::InvalidRule { .. })));
    }

    #[test]
    fn cached_matches_uncached() {
        let rs = small_system();
        let cache = NfCache::new();
        let f = poly(&[(1, "yyyb"), (3, "bbyx"), (-1, "ba")]);
        let a = rs.normal_form(&f, 1000).unwrap();
        let b = rs.normal_form_cached(&f, 1000, &cache).unwrap();
        assert_eq!(a, b);
        assert_eq!(rs.normal_form_cached(&f, 1000, &cache).unwrap(), a);
    }

    #[test]
    fn json_round_trip() {
        let rs = small_system();
        let json = serde_json::to_string(&rs).unwrap();
        assert!(json.starts_with(r#"[{"lhs":"ba","rhs":[{"coeff""#));
        assert!(json.contains(r#""origin":"given""#));
        let back: RuleSystem = serde_json::from_str(&json).unwrap();
        assert_eq!(back.rules(), rs.rules());
    }
}
