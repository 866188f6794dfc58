use serde::Serialize;

use super::{find_ambiguities, Origin, Rule, RuleSystem};
use crate::error::{Error, Result};
use crate::freealg::{Letter, NcPoly, Word};
use crate::scalar::Scalar;

/// Picks the monomial of a relation that becomes the head of a new rule.
pub trait OrientationPolicy {
    fn choose_head(&self, relation: &NcPoly) -> Option<Word>;
}

/// Orients toward a known normal-form language: only words rejected by
/// `is_normal` may become heads. Among those, the maximum by letter weight,
/// then length, then lexicographic letter precedence wins.
pub struct PatternGuided<F> {
    is_normal: F,
    weights: [i64; 5],
    precedence: [u8; 5],
}

impl<F: Fn(&Word) -> bool> PatternGuided<F> {
    /// Weights `x = a = 2`, `y = b = 3`, `g = -2` and precedence
    /// `b > y > a > x > g`.
    pub fn new(is_normal: F) -> Self {
        let mut weights = [0; 5];
        let mut precedence = [0; 5];
        for (l, wt, prec) in [
            (Letter::X, 2, 1),
            (Letter::Y, 3, 3),
            (Letter::A, 2, 2),
            (Letter::G, -2, 0),
            (Letter::B, 3, 4),
        ] {
            weights[l.index()] = wt;
            precedence[l.index()] = prec;
        }
        PatternGuided { is_normal, weights, precedence }
    }

    fn key(&self, w: &Word) -> (i64, usize, Vec<u8>) {
        let weight = w.letters().iter().map(|l| self.weights[l.index()]).sum();
        let lex = w.letters().iter().map(|l| self.precedence[l.index()]).collect();
        (weight, w.len(), lex)
    }
}

impl<F: Fn(&Word) -> bool> OrientationPolicy for PatternGuided<F> {
    fn choose_head(&self, relation: &NcPoly) -> Option<Word> {
        relation.words().filter(|w| !(self.is_normal)(w)).max_by_key(|w| self.key(w)).cloned()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RuleSource {
    /// Unresolved ambiguity between the two named heads.
    Ambiguity { witness: Word, left_lhs: Word, right_lhs: Word },
    /// Re-oriented equation of a rule retired by interreduction.
    Retired { former_lhs: Word },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LogEntry {
    pub lhs: Word,
    pub rhs: NcPoly,
    pub source: RuleSource,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CompletionLog {
    pub added: Vec<LogEntry>,
    /// Heads removed because a newer head occurs inside them.
    pub retired: Vec<Word>,
}

impl CompletionLog {
    pub fn is_empty(&self) -> bool {
        self.added.is_empty() && self.retired.is_empty()
    }
}

/// Incremental completion. Each [`Completer::step`] resolves the
/// unresolved ambiguity with the shortest witness by adding one oriented
/// rule, then interreduces.
pub struct Completer<'p, P: OrientationPolicy> {
    system: RuleSystem,
    policy: &'p P,
    fuel: usize,
    log: CompletionLog,
}

impl<'p, P: OrientationPolicy> Completer<'p, P> {
    pub fn new(seed: RuleSystem, policy: &'p P, fuel: usize) -> Self {
        Completer { system: seed, policy, fuel, log: CompletionLog::default() }
    }

    pub fn system(&self) -> &RuleSystem {
        &self.system
    }

    pub fn log(&self) -> &CompletionLog {
        &self.log
    }

    pub fn finish(self) -> (RuleSystem, CompletionLog) {
        (self.system, self.log)
    }

    /// Returns the rule added, or `None` if every ambiguity resolves.
    pub fn step(&mut self) -> Result<Option<LogEntry>> {
        let mut ambiguities = find_ambiguities(&self.system);
        // stable: ties keep enumeration order
        ambiguities.sort_by_key(|a| a.witness.len());
        for amb in ambiguities {
            let difference = amb.difference(&self.system, self.fuel)?;
            if difference.is_zero() {
                continue;
            }
            let source = RuleSource::Ambiguity {
                witness: amb.witness.clone(),
                left_lhs: self.system.rules()[amb.left].lhs.clone(),
                right_lhs: self.system.rules()[amb.right].lhs.clone(),
            };
            let first = self.orient(&difference)?;
            let entry = LogEntry { lhs: first.lhs.clone(), rhs: first.rhs.clone(), source };
            self.log.added.push(entry.clone());
            self.insert(first)?;
            return Ok(Some(entry));
        }
        Ok(None)
    }

    fn orient(&self, relation: &NcPoly) -> Result<Rule> {
        let head = self
            .policy
            .choose_head(relation)
            .ok_or_else(|| Error::NonOrientable { difference: Box::new(relation.clone()) })?;
        let lead = relation.coeff(&head);
        let mut rest = relation.clone();
        rest.remove(&head);
        let rhs = rest.scale(&(-&Scalar::one()).checked_div(&lead)?);
        Rule::new(head, rhs, Origin::Completed)
    }

    /// Adds `rule`, retires rules whose heads contain it, renormalises right
    /// sides and re-orients the equations of retired rules.
    fn insert(&mut self, rule: Rule) -> Result<()> {
        let mut queue = vec![rule];
        while let Some(rule) = queue.pop() {
            let mut kept = Vec::with_capacity(self.system.len() + 1);
            let mut equations = Vec::new();
            for old in self.system.rules() {
                if old.lhs != rule.lhs && old.lhs.contains(&rule.lhs) {
                    self.log.retired.push(old.lhs.clone());
                    equations.push((old.lhs.clone(), old.relation()));
                } else {
                    kept.push(old.clone());
                }
            }
            kept.push(rule);
            self.system = RuleSystem::with_fuel(kept, self.system.fuel_default())?;
            self.renormalise()?;
            for (former_lhs, eq) in equations {
                let eq = self.system.normal_form(&eq, self.fuel)?;
                if eq.is_zero() {
                    continue;
                }
                let r = self.orient(&eq)?;
                self.log.added.push(LogEntry {
                    lhs: r.lhs.clone(),
                    rhs: r.rhs.clone(),
                    source: RuleSource::Retired { former_lhs },
                });
                queue.push(r);
            }
        }
        Ok(())
    }

    fn renormalise(&mut self) -> Result<()> {
        let mut rules = self.system.rules().to_vec();
        for r in &mut rules {
            r.rhs = self.system.normal_form(&r.rhs, self.fuel)?;
            if r.rhs.contains_word(&r.lhs) {
                return Err(Error::InvalidRule { lhs: r.lhs.clone(), reason: "head reappears after renormalising" });
            }
        }
        self.system = RuleSystem::with_fuel(rules, self.system.fuel_default())?;
        Ok(())
    }
}

/// Runs completion until every ambiguity resolves. Fails with
/// `LimitExceeded` once the system would hold more than `max_rules` rules or
/// the number of additions exceeds `8 * max_rules`.
pub fn complete<P: OrientationPolicy>(
    seed: RuleSystem,
    policy: &P,
    max_rules: usize,
    fuel: usize,
) -> Result<(RuleSystem, CompletionLog)> {
    let mut completer = Completer::new(seed, policy, fuel);
    loop {
        if completer.system.len() > max_rules || completer.log.added.len() > 8 * max_rules {
            return Err(Error::LimitExceeded { rules: completer.system.len(), limit: max_rules });
        }
        if completer.step()?.is_none() {
            return Ok(completer.finish());
        }
    }
}
