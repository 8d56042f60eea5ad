//! Exact property checks over groups, the group algebra, trees and Hecke
//! measures, shared by the command line and the test suites.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::algebra::{convolve, involution, AlgebraElement};
use crate::exact::rational;
use crate::group::{GroupBackend, GroupElement};
use crate::growth::{check_submultiplicative, BallTable};
use crate::padic::{hecke_measure, Signature};
use crate::tree::{double_coset_measure, sphere_size, tree_growth_lower, TreeSpec};

/// Outcome of one property over a batch of cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub cases: usize,
    /// First counterexample, if any.
    pub failure: Option<String>,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    fn run(name: &'static str, cases: impl IntoIterator<Item = Result<(), String>>) -> Self {
        let mut count = 0;
        for case in cases {
            count += 1;
            if let Err(e) = case {
                return PropertyResult {
                    name,
                    cases: count,
                    failure: Some(e),
                };
            }
        }
        PropertyResult {
            name,
            cases: count,
            failure: None,
        }
    }
}

/// Ball, power, sphere and literal-difference counts are submultiplicative.
pub fn submultiplicativity(table: &BallTable) -> PropertyResult {
    match check_submultiplicative(table) {
        Ok(r) => PropertyResult {
            name: "submultiplicativity",
            cases: r.inequalities_checked,
            failure: None,
        },
        Err(e) => PropertyResult {
            name: "submultiplicativity",
            cases: 0,
            failure: Some(e.to_string()),
        },
    }
}

/// All elements stored in `table`, in enumeration order.
pub fn stored_elements(table: &BallTable) -> Vec<GroupElement> {
    (0..=table.stored_radius()).flat_map(|n| table.sphere(n).unwrap_or_default()).collect()
}

/// Inverses, identity, associativity and canonical-form uniqueness on
/// random elements of `pool`.
pub fn group_axioms(group: &GroupBackend, pool: &[GroupElement], cases: usize, seed: u64) -> Vec<PropertyResult> {
    let mut rng = StdRng::seed_from_u64(seed);
    let e = group.identity();
    let triples: Vec<[&GroupElement; 3]> = (0..cases)
        .map(|_| [(); 3].map(|_| pool.choose(&mut rng).expect("nonempty pool")))
        .collect();
    let show = |x: &GroupElement| group.format(x);
    let inverse = PropertyResult::run(
        "inverse",
        triples.iter().map(|[x, _, _]| {
            let inv = group.invert(x).map_err(|e| e.to_string())?;
            let left = group.multiply(&inv, x).map_err(|e| e.to_string())?;
            let right = group.multiply(x, &inv).map_err(|e| e.to_string())?;
            let back = group.invert(&inv).map_err(|e| e.to_string())?;
            if left != e || right != e || &back != *x {
                return Err(format!("inverse of {} fails", show(x)));
            }
            Ok(())
        }),
    );
    let identity = PropertyResult::run(
        "identity",
        triples.iter().map(|[x, _, _]| {
            let a = group.multiply(x, &e).map_err(|e| e.to_string())?;
            let b = group.multiply(&e, x).map_err(|e| e.to_string())?;
            if &a != *x || &b != *x {
                return Err(format!("identity is not neutral for {}", show(x)));
            }
            Ok(())
        }),
    );
    let associativity = PropertyResult::run(
        "associativity",
        triples.iter().map(|[x, y, z]| {
            let xy = group.multiply(x, y).map_err(|e| e.to_string())?;
            let yz = group.multiply(y, z).map_err(|e| e.to_string())?;
            let l = group.multiply(&xy, z).map_err(|e| e.to_string())?;
            let r = group.multiply(x, &yz).map_err(|e| e.to_string())?;
            if l != r {
                return Err(format!("({}·{})·{} differs from {}·({}·{})", show(x), show(y), show(z), show(x), show(y), show(z)));
            }
            Ok(())
        }),
    );
    let normal_forms = PropertyResult::run(
        "normal-form-round-trip",
        triples.iter().map(|[x, y, _]| {
            let xy = group.multiply(x, y).map_err(|e| e.to_string())?;
            let parsed = group.parse_word(&group.format(&xy)).map_err(|e| e.to_string())?;
            if parsed != xy {
                return Err(format!("{} does not parse back to itself", show(&xy)));
            }
            Ok(())
        }),
    );
    vec![inverse, identity, associativity, normal_forms]
}

fn random_element(group: &GroupBackend, pool: &[GroupElement], rng: &mut StdRng) -> AlgebraElement {
    let size = rng.gen_range(1..=6);
    let terms: Vec<(GroupElement, _)> = (0..size)
        .map(|_| {
            let g = pool.choose(rng).expect("nonempty pool").clone();
            (g, rational(rng.gen_range(-5..=5), rng.gen_range(1..=4)))
        })
        .collect();
    AlgebraElement::from_terms(group, terms).expect("same backend")
}

/// ℓ¹ identities on random pairs: submultiplicativity, equality for
/// nonnegative elements, isometric anti-multiplicative involution, and
/// multiplicativity of the total mass.
pub fn algebra_identities(group: &GroupBackend, pool: &[GroupElement], cases: usize, seed: u64) -> Vec<PropertyResult> {
    let mut rng = StdRng::seed_from_u64(seed);
    let pairs: Vec<(AlgebraElement, AlgebraElement)> = (0..cases)
        .map(|_| (random_element(group, pool, &mut rng), random_element(group, pool, &mut rng)))
        .collect();
    let mut results = Vec::new();
    let products: Vec<Result<AlgebraElement, String>> = pairs
        .iter()
        .map(|(x, y)| convolve(group, x, y).map_err(|e| e.to_string()))
        .collect();
    results.push(PropertyResult::run(
        "l1-submultiplicative",
        pairs.iter().zip(&products).map(|((x, y), xy)| {
            let xy = xy.clone()?;
            if xy.l1_norm() > x.l1_norm() * y.l1_norm() {
                return Err(format!("‖xy‖ > ‖x‖‖y‖ for x = {x:?}"));
            }
            Ok(())
        }),
    ));
    results.push(PropertyResult::run(
        "l1-multiplicative-on-nonnegative",
        pairs.iter().map(|(x, y)| {
            let (ax, ay) = (abs(group, x), abs(group, y));
            let p = convolve(group, &ax, &ay).map_err(|e| e.to_string())?;
            if p.l1_norm() != ax.l1_norm() * ay.l1_norm() {
                return Err("‖|x||y|‖ ≠ ‖x‖‖y‖".into());
            }
            Ok(())
        }),
    ));
    results.push(PropertyResult::run(
        "involution",
        pairs.iter().zip(&products).map(|((x, y), xy)| {
            let xy = xy.clone()?;
            let lhs = involution(group, &xy).map_err(|e| e.to_string())?;
            let xs = involution(group, x).map_err(|e| e.to_string())?;
            let ys = involution(group, y).map_err(|e| e.to_string())?;
            let rhs = convolve(group, &ys, &xs).map_err(|e| e.to_string())?;
            if lhs != rhs {
                return Err("(xy)* ≠ y*x*".into());
            }
            if xs.l1_norm() != x.l1_norm() || involution(group, &xs).map_err(|e| e.to_string())? != *x {
                return Err("involution is not an isometric involution".into());
            }
            Ok(())
        }),
    ));
    results.push(PropertyResult::run(
        "total-mass-multiplicative",
        pairs.iter().zip(&products).map(|((x, y), xy)| {
            let xy = xy.clone()?;
            if xy.total_mass() != x.total_mass() * y.total_mass() {
                return Err("Σ(xy) ≠ Σx·Σy".into());
            }
            Ok(())
        }),
    ));
    results
}

fn abs(group: &GroupBackend, x: &AlgebraElement) -> AlgebraElement {
    AlgebraElement::from_terms(group, x.terms().map(|(g, c)| (g, num_traits::Signed::abs(&c)))).expect("same backend")
}

/// All signatures of length `n` with entries in `lo..=hi`.
pub fn signature_grid(n: usize, lo: i64, hi: i64) -> Vec<Signature> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=hi).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(Signature).collect()
}

/// Integrality, shift invariance and permutation invariance of Hecke
/// measures for ranks `1..=max_rank`, entries in `-3..=3`, and `primes`.
pub fn hecke_invariants(max_rank: usize, primes: &[u64]) -> Vec<PropertyResult> {
    let grid: Vec<(usize, u64, Signature)> = (1..=max_rank)
        .flat_map(|n| signature_grid(n, -3, 3).into_iter().map(move |s| (n, s)))
        .flat_map(|(n, s)| primes.iter().map(move |&p| (n, p, s.clone())))
        .collect();
    let integrality = PropertyResult::run(
        "hecke-integrality",
        grid.iter().map(|(n, p, s)| {
            hecke_measure(*n, *p, s).map(|_| ()).map_err(|e| format!("n={n} p={p} λ=({s}): {e}"))
        }),
    );
    let shift = PropertyResult::run(
        "hecke-shift-invariance",
        grid.iter().flat_map(|(n, p, s)| {
            (-2..=2).map(move |c| {
                let shifted = Signature(s.entries().iter().map(|x| x + c).collect());
                let a = hecke_measure(*n, *p, s).map_err(|e| e.to_string())?;
                let b = hecke_measure(*n, *p, &shifted).map_err(|e| e.to_string())?;
                if a.value != b.value {
                    return Err(format!("n={n} p={p} λ=({s}) shift {c}: {} vs {}", a.value, b.value));
                }
                Ok(())
            })
        }),
    );
    let permutation = PropertyResult::run(
        "hecke-permutation-invariance",
        grid.iter().map(|(n, p, s)| {
            let mut reversed = s.entries().to_vec();
            reversed.reverse();
            let mut rotated = s.entries().to_vec();
            rotated.rotate_left(1);
            let a = hecke_measure(*n, *p, s).map_err(|e| e.to_string())?;
            for other in [reversed, rotated] {
                let b = hecke_measure(*n, *p, &Signature(other)).map_err(|e| e.to_string())?;
                if a.value != b.value {
                    return Err(format!("n={n} p={p} λ=({s}) not permutation invariant"));
                }
            }
            Ok(())
        }),
    );
    vec![integrality, shift, permutation]
}

/// Recursion-versus-product agreement and the two-thirds bound over all
/// degree sequences with entries in `3..=max_degree` and length `≤ max_k`.
pub fn tree_invariants(max_degree: u64, max_k: usize) -> Vec<PropertyResult> {
    let mut sequences: Vec<Vec<u64>> = Vec::new();
    let mut frontier: Vec<Vec<u64>> = vec![Vec::new()];
    for _ in 0..max_k {
        frontier = frontier
            .into_iter()
            .flat_map(|v| {
                (3..=max_degree).map(move |d| {
                    let mut w = v.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
        sequences.extend(frontier.iter().cloned());
    }
    let specs: Vec<TreeSpec> = sequences.into_iter().map(|d| TreeSpec::new(d).expect("degrees ≥ 3")).collect();
    let recursion = PropertyResult::run(
        "tree-recursion",
        specs.iter().step_by(7).map(|t| {
            let mut s = num_bigint::BigUint::from(t.degree(0));
            for n in 1..=64 {
                if sphere_size(t, n).map_err(|e| e.to_string())? != s {
                    return Err(format!("{t}: radius {n}"));
                }
                s *= t.degree(n) - 1;
            }
            Ok(())
        }),
    );
    let two_thirds = PropertyResult::run(
        "tree-two-thirds",
        specs.iter().map(|t| {
            let lower = tree_growth_lower(t) * 3u8;
            let mu = double_coset_measure(t, 1).map_err(|e| e.to_string())? * 2u8;
            if lower < mu || (lower == mu) != (t.degree(0) == 3) {
                return Err(format!("{t}: 3·lower = {lower}, 2·μ = {mu}"));
            }
            Ok(())
        }),
    );
    vec![recursion, two_thirds]
}

/// Case counts and grids for [`run_suite`].
pub struct SuiteConfig {
    pub group_cases: usize,
    pub algebra_cases: usize,
    pub hecke_max_rank: usize,
    pub hecke_primes: Vec<u64>,
    pub tree_max_degree: u64,
    pub tree_max_k: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            group_cases: 10_000,
            algebra_cases: 1_000,
            hecke_max_rank: 5,
            hecke_primes: vec![2, 3, 5, 7],
            tree_max_degree: 12,
            tree_max_k: 4,
            seed: 1,
        }
    }
}

/// Runs every property family; `table` must store elements for the
/// group-axiom and algebra checks.
pub fn run_suite(
    group: &GroupBackend,
    table: &BallTable,
    config: &SuiteConfig,
) -> Vec<PropertyResult> {
    let pool = stored_elements(table);
    let mut out = vec![submultiplicativity(table)];
    out.extend(group_axioms(group, &pool, config.group_cases, config.seed));
    out.extend(algebra_identities(group, &pool, config.algebra_cases, config.seed.wrapping_add(1)));
    out.extend(hecke_invariants(config.hecke_max_rank, &config.hecke_primes));
    out.extend(tree_invariants(config.tree_max_degree, config.tree_max_k));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GeneratingSet;
    use crate::growth::{enumerate_balls, EnumerationOptions};

    #[test]
    fn small_suite_passes() {
        let g = GroupBackend::free_product_cyclic(vec![2, 3]);
        let set = GeneratingSet::parse(&g, "a,ab,bba").unwrap();
        let t = enumerate_balls(&g, &set, EnumerationOptions::new(8).store_limit(8)).unwrap();
        let config = SuiteConfig {
            group_cases: 200,
            algebra_cases: 50,
            hecke_max_rank: 3,
            hecke_primes: vec![2, 3],
            tree_max_degree: 5,
            tree_max_k: 2,
            seed: 3,
        };
        let results = run_suite(&g, &t, &config);
        for r in &results {
            assert!(r.passed(), "{}: {:?}", r.name, r.failure);
            assert!(r.cases > 0, "{}", r.name);
        }
    }

    #[test]
    fn grid_sizes() {
        assert_eq!(signature_grid(3, -3, 3).len(), 343);
        assert_eq!(signature_grid(0, -3, 3).len(), 1);
    }
}
