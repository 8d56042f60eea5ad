//! Consistency checks that enumerated tables must satisfy.

use super::enumerate::BallTable;
use super::GrowthError;

/// Outcome of a successful submultiplicativity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmultiplicativityReport {
    pub radius_max: usize,
    /// Number of `(n, k, sequence)` inequalities verified.
    pub inequalities_checked: usize,
}

/// Verifies `a_{n+k} ≤ a_n · a_k` for balls `|B_n|`, power sets `|S^n|`,
/// word-length spheres and literal differences `|S^n \ S^{n-1}|`, for every
/// `n, k ≥ 1` with `n + k ≤ radius_max`.
///
/// A violation can only come from an enumeration bug and is reported as an
/// error.
pub fn check_submultiplicative(table: &BallTable) -> Result<SubmultiplicativityReport, GrowthError> {
    let r = table.radius_max();
    if r < 2 {
        return Err(GrowthError::TableTooShallow { needed: 2, have: r });
    }
    let sequences: [(&'static str, &[u64]); 4] = [
        ("ball", table.ball_sizes()),
        ("power", table.power_sizes()),
        ("sphere", table.sphere_sizes()),
        ("literal-difference", table.literal_differences()),
    ];
    let mut checked = 0;
    for (name, seq) in sequences {
        for n in 1..r {
            for k in 1..=(r - n) {
                let lhs = seq[n + k] as u128;
                let rhs = seq[n] as u128 * seq[k] as u128;
                if lhs > rhs {
                    return Err(GrowthError::SubmultiplicativityViolation {
                        sequence: name,
                        n,
                        k,
                        lhs: seq[n + k],
                        rhs,
                    });
                }
                checked += 1;
            }
        }
    }
    Ok(SubmultiplicativityReport {
        radius_max: r,
        inequalities_checked: checked,
    })
}

/// Finite-radius comparison of ball and sphere roots (advisory).
#[derive(Clone, Debug, PartialEq)]
pub struct AgreementReport {
    pub radius: usize,
    pub ball_root: f64,
    pub sphere_root: f64,
    pub difference: f64,
    pub tolerance: f64,
    pub within_tolerance: bool,
}

pub fn omega_sigma_agreement(table: &BallTable, tolerance: f64) -> AgreementReport {
    let n = table.radius_max().max(1);
    let ball_root = (table.ball_sizes()[n] as f64).powf(1.0 / n as f64);
    let sphere_root = (table.sphere_sizes()[n] as f64).powf(1.0 / n as f64);
    let difference = (ball_root - sphere_root).abs();
    AgreementReport {
        radius: n,
        ball_root,
        sphere_root,
        difference,
        tolerance,
        within_tolerance: difference <= tolerance,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{CayleyTable, GeneratingSet, GroupBackend};
    use crate::growth::{enumerate_balls, EnumerationOptions};

    fn table(group: &GroupBackend, gens: &str, n: usize) -> BallTable {
        let set = GeneratingSet::parse(group, gens).unwrap();
        enumerate_balls(group, &set, EnumerationOptions::new(n)).unwrap()
    }

    #[test]
    fn holds_on_standard_families() {
        let f2 = table(&GroupBackend::free(2), "standard", 8);
        let report = check_submultiplicative(&f2).unwrap();
        assert_eq!(report.inequalities_checked, 4 * 28);
        // sphere(5) = 324 ≤ sphere(2)·sphere(3) = 12·36.
        assert_eq!(f2.sphere_sizes()[5], 324);

        check_submultiplicative(&table(&GroupBackend::free(1), "a,a'", 12)).unwrap();
        let z6 = GroupBackend::finite_cayley(CayleyTable::cyclic(6));
        check_submultiplicative(&table(&z6, "#1,#5", 6)).unwrap();
        let m = GroupBackend::free_product_cyclic(vec![2, 3]);
        check_submultiplicative(&table(&m, "a,ab,bba", 12)).unwrap();
        check_submultiplicative(&table(&m, "a,b", 10)).unwrap();
    }

    #[test]
    fn agreement_is_advisory() {
        let f2 = table(&GroupBackend::free(2), "standard", 12);
        let r = omega_sigma_agreement(&f2, 0.15);
        assert!(r.within_tolerance, "{r:?}");
        assert!((r.sphere_root - 3.0).abs() < 0.15);

        let z = table(&GroupBackend::free(1), "a,a'", 30);
        let r = omega_sigma_agreement(&z, 0.15);
        assert!(r.within_tolerance && (r.ball_root - 1.0).abs() < 0.15);
    }
}
