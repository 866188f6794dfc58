use rayon::prelude::*;
use serde::Serialize;

use super::RuleSystem;
use crate::error::{Error, Result};
use crate::freealg::{NcPoly, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AmbiguityKind {
    Overlap,
    Inclusion,
}

/// A word on which two rules both apply.
///
/// For an overlap, `left.lhs = u v`, `right.lhs = v w` and the witness is
/// `u v w`. For an inclusion, `left.lhs = u (right.lhs) w` is the witness.
/// In both cases `right.lhs` starts at `offset` in the witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ambiguity {
    pub kind: AmbiguityKind,
    pub left: usize,
    pub right: usize,
    pub offset: usize,
    pub witness: Word,
}

impl Ambiguity {
    /// The two one-step reducts of the witness.
    pub fn branches(&self, rs: &RuleSystem) -> (NcPoly, NcPoly) {
        let l = &rs.rules()[self.left];
        let r = &rs.rules()[self.right];
        let left = l.rhs.map_words(|m| self.witness.splice(0, l.lhs.len(), m));
        let right = r.rhs.map_words(|m| self.witness.splice(self.offset, self.offset + r.lhs.len(), m));
        (left, right)
    }

    /// Normal form of the difference of the two branches.
    pub fn difference(&self, rs: &RuleSystem, fuel: usize) -> Result<NcPoly> {
        let (left, right) = self.branches(rs);
        rs.normal_form(&(&left - &right), fuel)
    }
}

/// All overlap and inclusion ambiguities, ordered by (left rule, right
/// rule, overlap length or inclusion position).
pub fn find_ambiguities(rs: &RuleSystem) -> Vec<Ambiguity> {
    let rules = rs.rules();
    let mut out = Vec::new();
    for (i, ri) in rules.iter().enumerate() {
        let li = ri.lhs.letters();
        for (j, rj) in rules.iter().enumerate() {
            let lj = rj.lhs.letters();
            for k in 1..li.len().min(lj.len()) {
                if li[li.len() - k..] == lj[..k] {
                    let witness = ri.lhs.concat(&rj.lhs.slice(k, lj.len()));
                    out.push(Ambiguity {
                        kind: AmbiguityKind::Overlap,
                        left: i,
                        right: j,
                        offset: li.len() - k,
                        witness,
                    });
                }
            }
            if i != j && lj.len() < li.len() {
                for pos in 0..=li.len() - lj.len() {
                    if li[pos..pos + lj.len()] == *lj {
                        out.push(Ambiguity {
                            kind: AmbiguityKind::Inclusion,
                            left: i,
                            right: j,
                            offset: pos,
                            witness: ri.lhs.clone(),
                        });
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Resolution {
    Resolved { normal_form: NcPoly },
    Unresolved { difference: NcPoly },
    FuelExhausted { steps: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmbiguityOutcome {
    #[serde(flatten)]
    pub ambiguity: Ambiguity,
    pub left_lhs: Word,
    pub right_lhs: Word,
    pub resolution: Resolution,
}

impl AmbiguityOutcome {
    pub fn is_resolved(&self) -> bool {
        matches!(self.resolution, Resolution::Resolved { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiamondReport {
    pub rules: usize,
    pub ambiguities: Vec<AmbiguityOutcome>,
    pub resolved: usize,
    pub failures: usize,
    pub locally_confluent: bool,
}

/// Reduces both branches of every ambiguity to normal form and compares.
pub fn check_diamond(rs: &RuleSystem, fuel: usize) -> DiamondReport {
    let ambiguities: Vec<AmbiguityOutcome> = find_ambiguities(rs)
        .into_par_iter()
        .map(|amb| {
            let (left, right) = amb.branches(rs);
            let resolution = match (rs.normal_form(&left, fuel), rs.normal_form(&right, fuel)) {
                (Ok(l), Ok(r)) if l == r => Resolution::Resolved { normal_form: l },
                (Ok(l), Ok(r)) => Resolution::Unresolved { difference: &l - &r },
                (Err(Error::FuelExhausted { steps, .. }), _)
                | (_, Err(Error::FuelExhausted { steps, .. })) => Resolution::FuelExhausted { steps },
                (Err(e), _) | (_, Err(e)) => unreachable!("normal_form only fails on fuel: {e}"),
            };
            AmbiguityOutcome {
                left_lhs: rs.rules()[amb.left].lhs.clone(),
                right_lhs: rs.rules()[amb.right].lhs.clone(),
                ambiguity: amb,
                resolution,
            }
        })
        .collect();
    let resolved = ambiguities.iter().filter(|a| a.is_resolved()).count();
    let failures = ambiguities.len() - resolved;
    DiamondReport { rules: rs.len(), ambiguities, resolved, failures, locally_confluent: failures == 0 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::w;
    use crate::rewrite::{Origin, Rule};
    use crate::scalar::Scalar;

    fn rule(lhs: &str, rhs: &[(i64, &str)]) -> Rule {
        let rhs = NcPoly::from_terms(rhs.iter().map(|&(c, s)| (Scalar::from(c), w(s))));
        Rule::new(w(lhs), rhs, Origin::Given).unwrap()
    }

    fn witnesses(rs: &RuleSystem) -> Vec<String> {
        find_ambiguities(rs).iter().map(|a| a.witness.to_compact()).collect()
    }

    #[test]
    fn overlap_of_cubic_heads() {
        let rs = RuleSystem::new(vec![rule("aax", &[(1, "x")]), rule("axx", &[(1, "a")])]).unwrap();
        let found = find_ambiguities(&rs);
        let amb = found.iter().find(|a| a.left == 0 && a.right == 1).unwrap();
        assert_eq!(amb.kind, AmbiguityKind::Overlap);
        assert_eq!(amb.witness, w("aaxx"));
        assert_eq!(amb.offset, 1);
    }

    #[test]
    fn overlap_with_inverse() {
        let rs = RuleSystem::new(vec![rule("ga", &[(1, "")]), rule("aax", &[(1, "x")])]).unwrap();
        assert!(witnesses(&rs).contains(&"gaax".to_string()));
    }

    #[test]
    fn commutations_do_not_overlap() {
        let rs = RuleSystem::new(vec![rule("ba", &[(1, "ab")]), rule("yx", &[(1, "xy")])]).unwrap();
        assert!(find_ambiguities(&rs).is_empty());
    }

    #[test]
    fn inclusion_positions() {
        let rs = RuleSystem::new(vec![rule("xax", &[(1, "y")]), rule("a", &[(1, "b")])]).unwrap();
        let incl: Vec<_> =
            find_ambiguities(&rs).into_iter().filter(|a| a.kind == AmbiguityKind::Inclusion).collect();
        assert_eq!(incl.len(), 1);
        assert_eq!((incl[0].left, incl[0].right, incl[0].offset), (0, 1, 1));
    }

    #[test]
    fn self_overlap_is_found() {
        let rs = RuleSystem::new(vec![rule("aa", &[(1, "b")])]).unwrap();
        assert_eq!(witnesses(&rs), vec!["aaa"]);
        let report = check_diamond(&rs, 100);
        // aaa -> ba vs ab: unresolved without more rules
        assert!(!report.locally_confluent);
    }
}
