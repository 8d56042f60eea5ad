//! String rewriting systems over signed generator letters.
//!
//! Free cancellation rules `x x^-1 -> 1` are always present; the caller adds
//! the relations. Every rule must decrease its left side in shortlex order,
//! which makes reduction terminate, and local confluence is checked by
//! resolving all critical pairs at construction.

use std::cmp::Ordering;

use super::GroupError;

/// Upper bound on rewrites per reduction before we call it an internal error.
const MAX_REWRITES: usize = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Vec<i32>,
    pub rhs: Vec<i32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewritingSystem {
    generators: usize,
    rules: Vec<Rule>,
    max_lhs: usize,
}

fn letter_key(l: i32) -> (u32, bool) {
    (l.unsigned_abs(), l < 0)
}

/// Shortlex order with `a < a' < b < b' < ...`.
pub fn shortlex_cmp(a: &[i32], b: &[i32]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        a.iter()
            .map(|&l| letter_key(l))
            .cmp(b.iter().map(|&l| letter_key(l)))
    })
}

impl RewritingSystem {
    pub fn new(generators: usize, relations: Vec<Rule>) -> Result<Self, GroupError> {
        let mut rules: Vec<Rule> = Vec::new();
        for g in 1..=generators as i32 {
            rules.push(Rule { lhs: vec![g, -g], rhs: vec![] });
            rules.push(Rule { lhs: vec![-g, g], rhs: vec![] });
        }
        for (i, rule) in relations.into_iter().enumerate() {
            for &l in rule.lhs.iter().chain(&rule.rhs) {
                if l == 0 || l.unsigned_abs() as usize > generators {
                    return Err(GroupError::GeneratorOutOfRange {
                        letter: l,
                        generators,
                    });
                }
            }
            if rule.lhs.is_empty() {
                return Err(GroupError::InvalidRewriting(format!(
                    "relation {i} has an empty left side"
                )));
            }
            if shortlex_cmp(&rule.lhs, &rule.rhs) != Ordering::Greater {
                return Err(GroupError::InvalidRewriting(format!(
                    "relation {i} does not decrease in shortlex order"
                )));
            }
            if !rules.contains(&rule) {
                rules.push(rule);
            }
        }
        let max_lhs = rules.iter().map(|r| r.lhs.len()).max().unwrap_or(0);
        let system = RewritingSystem {
            generators,
            rules,
            max_lhs,
        };
        system.check_local_confluence()?;
        Ok(system)
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    /// All rules, free cancellations first.
    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    fn suffix_match(&self, word: &[i32]) -> Option<&Rule> {
        self.rules.iter().find(|r| word.ends_with(&r.lhs))
    }

    /// Irreducible form of `word`.
    pub fn reduce(&self, word: &[i32]) -> Result<Vec<i32>, GroupError> {
        // `out` stays irreducible, so only a suffix can match after a push.
        let mut out: Vec<i32> = Vec::with_capacity(word.len());
        let mut pending: Vec<i32> = word.iter().rev().copied().collect();
        let mut rewrites = 0usize;
        while let Some(l) = pending.pop() {
            out.push(l);
            if let Some(rule) = self.suffix_match(&out[out.len().saturating_sub(self.max_lhs)..]) {
                out.truncate(out.len() - rule.lhs.len());
                pending.extend(rule.rhs.iter().rev());
                rewrites += 1;
                if rewrites > MAX_REWRITES {
                    return Err(GroupError::RewritingDiverged);
                }
            }
        }
        Ok(out)
    }

    fn check_local_confluence(&self) -> Result<(), GroupError> {
        let join = |a: Vec<i32>, b: Vec<i32>, word: &[i32]| -> Result<(), GroupError> {
            let ra = self.reduce(&a)?;
            let rb = self.reduce(&b)?;
            if ra != rb {
                return Err(GroupError::NotConfluent {
                    word: word.to_vec(),
                    left: ra,
                    right: rb,
                });
            }
            Ok(())
        };

        for r1 in &self.rules {
            for r2 in &self.rules {
                let (l1, l2) = (&r1.lhs, &r2.lhs);
                // Proper overlaps: suffix of l1 equals prefix of l2.
                for ov in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - ov..] == l2[..ov] {
                        let mut word = l1.clone();
                        word.extend_from_slice(&l2[ov..]);
                        let mut a = r1.rhs.clone();
                        a.extend_from_slice(&l2[ov..]);
                        let mut b = l1[..l1.len() - ov].to_vec();
                        b.extend_from_slice(&r2.rhs);
                        join(a, b, &word)?;
                    }
                }
                // Inclusions: l2 occurs inside l1.
                if r1 != r2 && l2.len() <= l1.len() {
                    for p in 0..=(l1.len() - l2.len()) {
                        if l1[p..p + l2.len()] == l2[..] {
                            let a = r1.rhs.clone();
                            let mut b = l1[..p].to_vec();
                            b.extend_from_slice(&r2.rhs);
                            b.extend_from_slice(&l1[p + l2.len()..]);
                            join(a, b, l1)?;
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rule(lhs: &[i32], rhs: &[i32]) -> Rule {
        Rule { lhs: lhs.to_vec(), rhs: rhs.to_vec() }
    }

    /// Z^2 with a = 1, b = 2.
    pub(crate) fn z2_rules() -> Vec<Rule> {
        vec![
            rule(&[2, 1], &[1, 2]),
            rule(&[-2, 1], &[1, -2]),
            rule(&[2, -1], &[-1, 2]),
            rule(&[-2, -1], &[-1, -2]),
        ]
    }

    #[test]
    fn commutation_normal_form() {
        let rws = RewritingSystem::new(2, z2_rules()).unwrap();
        assert_eq!(rws.reduce(&[2, 1]).unwrap(), vec![1, 2]);
        assert_eq!(rws.reduce(&[2, 1, -2, -1]).unwrap(), Vec::<i32>::new());
        assert_eq!(rws.reduce(&[-2, 2, 1, 2, -1]).unwrap(), vec![2]);
    }

    #[test]
    fn rejects_increasing_rule() {
        let err = RewritingSystem::new(2, vec![rule(&[1, 2], &[2, 1])]).unwrap_err();
        assert!(matches!(err, GroupError::InvalidRewriting(_)));
    }

    #[test]
    fn rejects_non_confluent_system() {
        // aa -> 1 alone with the free rules is confluent (Z/2 * ...), but
        // adding ab -> b without its consequences is not.
        let err = RewritingSystem::new(2, vec![rule(&[1, 1], &[]), rule(&[1, 2], &[2])]).unwrap_err();
        assert!(matches!(err, GroupError::NotConfluent { .. }), "{err:?}");
    }

    #[test]
    fn finite_cyclic_system() {
        // Z/3: aa -> a', a'a' -> a
        let rws = RewritingSystem::new(1, vec![rule(&[1, 1], &[-1]), rule(&[-1, -1], &[1])]).unwrap();
        assert_eq!(rws.reduce(&[1, 1, 1]).unwrap(), Vec::<i32>::new());
        assert_eq!(rws.reduce(&[1, 1, 1, 1]).unwrap(), vec![1]);
    }

    #[test]
    fn out_of_range_letter() {
        assert!(matches!(
            RewritingSystem::new(1, vec![rule(&[2, 1], &[1, 2])]),
            Err(GroupError::GeneratorOutOfRange { .. })
        ));
    }
}
