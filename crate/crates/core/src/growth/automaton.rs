//! Cone-type transfer matrices for word-length spheres.
//!
//! The `k`-tail of an element `g` is the vector `(|gh| - |g|)_{h ∈ B_k}`.
//! Elements of equal tail are treated as one state. Each element `h ≠ e` is
//! attached to a single designated parent: the smallest generator index `j`
//! with `|h s_j^{-1}| = |h| - 1` names the edge `h s_j^{-1} → h`. For a
//! symmetric set and `k ≥ 2` the designation is a function of the parent's
//! tail, so sphere sizes are path counts in the resulting automaton.
//!
//! Whether the tail also determines the child's tail is checked on a finite
//! ball: every representative of a state must have the same outgoing
//! transitions, every reachable state must have been seen with its
//! transitions, and the predicted sphere counts must match enumeration. The
//! tail radius and the ball radius grow until all checks pass.

use std::collections::HashMap;

use crate::group::{CanonicalForm, GeneratingSet, GroupBackend};

use super::enumerate::{enumerate_balls, BallTable, EnumerationOptions};
use super::GrowthError;

/// Largest tail radius tried.
pub const MAX_TAIL_RADIUS: usize = 6;

/// Balls larger than this are not enumerated while searching.
pub const MAX_SEARCH_BALL: u64 = 4_000_000;

/// Extra radius beyond the tail radius, tried in order.
const MARGINS: [usize; 4] = [10, 14, 20, 28];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeAutomaton {
    /// Tail radius `k` at which the construction closed.
    pub tail_radius: usize,
    /// Radius up to which predicted sphere sizes match enumeration.
    pub validated_radius: usize,
    /// Index of the identity's state.
    pub start: usize,
    /// `transitions[c][d]` counts designated edges from state `c` to `d`.
    pub transitions: Vec<Vec<u64>>,
}

impl ConeAutomaton {
    pub fn states(&self) -> usize {
        self.transitions.len()
    }

    /// Sphere sizes `n = 0..=radius` predicted by path counting.
    pub fn predicted_spheres(&self, radius: usize) -> Vec<u128> {
        let n = self.states();
        let mut v = vec![0u128; n];
        v[self.start] = 1;
        let mut out = vec![1u128];
        for _ in 0..radius {
            let mut next = vec![0u128; n];
            for (c, &count) in v.iter().enumerate() {
                if count == 0 {
                    continue;
                }
                for (d, &m) in self.transitions[c].iter().enumerate() {
                    next[d] += count * m as u128;
                }
            }
            out.push(next.iter().sum());
            v = next;
        }
        out
    }

    /// True when no state lies on a cycle, i.e. spheres eventually vanish.
    pub fn is_acyclic(&self) -> bool {
        // Finite iff the path counts die out within `states` steps.
        self.predicted_spheres(self.states() + 1)
            .last()
            .is_some_and(|&c| c == 0)
    }
}

enum Attempt {
    Built(ConeAutomaton),
    /// Some state showed two different transition rows.
    Inconsistent,
    /// A reachable state was never seen far enough from the boundary.
    Unclosed,
}

/// Builds the cone-type automaton of a symmetric generating set.
pub fn build_cone_automaton(
    group: &GroupBackend,
    set: &GeneratingSet,
) -> Result<ConeAutomaton, GrowthError> {
    if !set.is_symmetric() {
        return Err(GrowthError::AutomatonFailed(
            "cone types need a symmetric generating set".into(),
        ));
    }
    let mut last = String::from("no attempt fit the search budget");
    'tails: for k in 2..=MAX_TAIL_RADIUS {
        for margin in MARGINS {
            let radius = k + margin;
            let options = EnumerationOptions::new(radius)
                .store_limit(radius)
                .memory_budget(1 << 30);
            let table = match enumerate_balls(group, set, options) {
                Ok(t) => t,
                Err(GrowthError::MemoryBudget { .. }) => break 'tails,
                Err(e) => return Err(e),
            };
            if table.ball_sizes()[radius] > MAX_SEARCH_BALL {
                break 'tails;
            }
            match attempt(group, set, &table, k)? {
                Attempt::Built(a) => return Ok(a),
                Attempt::Inconsistent => {
                    last = format!("tails of radius {k} do not determine transitions");
                    continue 'tails;
                }
                Attempt::Unclosed => {
                    last = format!("radius {radius} too small to close tails of radius {k}");
                }
            }
        }
    }
    Err(GrowthError::AutomatonFailed(last))
}

fn attempt(
    group: &GroupBackend,
    set: &GeneratingSet,
    table: &BallTable,
    k: usize,
) -> Result<Attempt, GrowthError> {
    let radius = table.radius_max();
    let forms: Vec<&CanonicalForm> = (0..=radius)
        .flat_map(|n| table.sphere_forms(n).expect("stored"))
        .collect();
    let mut lengths = Vec::with_capacity(forms.len());
    for n in 0..=radius {
        lengths.extend(std::iter::repeat(n as i32).take(table.sphere_sizes()[n] as usize));
    }
    let len_of = |f: &CanonicalForm| table.index_of(f).map(|i| lengths[i]);

    let gens: Vec<&CanonicalForm> = set.elements().iter().map(|g| g.canonical_form()).collect();
    let inverses: Vec<CanonicalForm> = gens
        .iter()
        .map(|g| group.inv_form(g))
        .collect::<Result<_, _>>()?;
    let tail_set = &forms[..table.ball_sizes()[k] as usize];

    let tail_limit = table.ball_sizes()[radius - k] as usize;
    let mut state_of: Vec<usize> = Vec::with_capacity(tail_limit);
    let mut states: HashMap<Vec<i8>, usize> = HashMap::new();
    for (i, g) in forms[..tail_limit].iter().enumerate() {
        let mut tail = Vec::with_capacity(tail_set.len());
        for h in tail_set {
            let gh = group.mul_forms(g, h)?;
            let l = len_of(&gh).expect("|gh| ≤ |g| + |h| lies in the ball");
            tail.push((l - lengths[i]) as i8);
        }
        let next = states.len();
        state_of.push(*states.entry(tail).or_insert(next));
    }

    let row_limit = table.ball_sizes()[radius - k - 1] as usize;
    let mut rows: Vec<Option<Vec<Option<usize>>>> = vec![None; states.len()];
    for (i, g) in forms[..row_limit].iter().enumerate() {
        let mut row = Vec::with_capacity(gens.len());
        for (si, s) in gens.iter().enumerate() {
            let h = group.mul_forms(g, s)?;
            let hi = table.index_of(&h).expect("neighbour lies in the ball");
            if lengths[hi] != lengths[i] + 1 {
                row.push(None);
                continue;
            }
            let mut designated = None;
            for (j, inv) in inverses.iter().enumerate() {
                let p = group.mul_forms(&h, inv)?;
                if len_of(&p) == Some(lengths[hi] - 1) {
                    designated = Some(j);
                    break;
                }
            }
            row.push((designated == Some(si)).then(|| state_of[hi]));
        }
        match &rows[state_of[i]] {
            Some(existing) if *existing != row => return Ok(Attempt::Inconsistent),
            Some(_) => {}
            None => rows[state_of[i]] = Some(row),
        }
    }

    // Keep only states reachable from the identity; all of them need rows.
    let start = state_of[0];
    let mut order: Vec<usize> = vec![start];
    let mut renumber: HashMap<usize, usize> = HashMap::from([(start, 0)]);
    let mut cursor = 0;
    while cursor < order.len() {
        let c = order[cursor];
        cursor += 1;
        let Some(row) = &rows[c] else {
            return Ok(Attempt::Unclosed);
        };
        for d in row.iter().flatten() {
            if !renumber.contains_key(d) {
                renumber.insert(*d, order.len());
                order.push(*d);
            }
        }
    }
    let mut transitions = vec![vec![0u64; order.len()]; order.len()];
    for (new_c, &c) in order.iter().enumerate() {
        for d in rows[c].as_ref().expect("checked above").iter().flatten() {
            transitions[new_c][renumber[d]] += 1;
        }
    }
    let automaton = ConeAutomaton {
        tail_radius: k,
        validated_radius: radius,
        start: 0,
        transitions,
    };
    let predicted = automaton.predicted_spheres(radius);
    let matches = predicted
        .iter()
        .zip(table.sphere_sizes())
        .all(|(&p, &s)| p == s as u128);
    Ok(if matches {
        Attempt::Built(automaton)
    } else {
        Attempt::Inconsistent
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn automaton(group: &GroupBackend, gens: &str) -> ConeAutomaton {
        let set = GeneratingSet::parse(group, gens).unwrap();
        build_cone_automaton(group, &set).unwrap()
    }

    #[test]
    fn modular_group_golden_set() {
        let g = GroupBackend::free_product_cyclic(vec![2, 3]);
        let a = automaton(&g, "a,ab,bba");
        let spheres = a.predicted_spheres(8);
        // Sphere sizes of the golden-ratio set grow like Fibonacci numbers.
        assert_eq!(spheres[0], 1);
        assert_eq!(spheres[1], 3);
        assert!(spheres.windows(2).skip(3).all(|w| w[1] > w[0]));
        assert!(!a.is_acyclic());
    }

    #[test]
    fn modular_group_syllable_set() {
        let g = GroupBackend::free_product_cyclic(vec![2, 3]);
        let a = automaton(&g, "a,b,bb");
        // Alternating syllables, 2^⌊n/2⌋ + 2^⌈n/2⌉ words of length n (√2 growth).
        assert_eq!(a.predicted_spheres(7), vec![1, 3, 4, 6, 8, 12, 16, 24]);
    }

    #[test]
    fn free_group_as_free_product() {
        let g = GroupBackend::free_product_cyclic(vec![0, 0]);
        let a = automaton(&g, "a,a',b,b'");
        assert_eq!(a.predicted_spheres(4), vec![1, 4, 12, 36, 108]);
    }

    #[test]
    fn finite_free_product_is_acyclic() {
        let g = GroupBackend::free_product_cyclic(vec![2]);
        let a = automaton(&g, "a");
        assert!(a.is_acyclic());
        assert_eq!(a.predicted_spheres(3), vec![1, 1, 0, 0]);
    }

    #[test]
    fn rejects_asymmetric_sets() {
        let g = GroupBackend::free_product_cyclic(vec![0]);
        let set = GeneratingSet::parse(&g, "a").unwrap();
        assert!(build_cone_automaton(&g, &set).is_err());
    }
}
