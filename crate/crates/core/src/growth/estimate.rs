//! Finite-radius growth estimates and the normalized growth index.

use num_traits::Signed;

use crate::exact::{from_f64, integer, nth_root_enclosure, Enclosure, Provenance, ROOT_TOLERANCE};

use super::enumerate::BallTable;
use super::{ExactGrowth, GrowthError};

/// Per-radius growth data from one table, optionally upgraded by a rigorous
/// value from [`exact_growth`](super::exact_growth).
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthEstimate {
    pub radius_max: usize,
    /// `|B_n|^{1/n}` for `n = 1..=radius_max` (entry `n - 1`).
    pub per_n_ball_roots: Vec<f64>,
    /// `|B_n \ B_{n-1}|^{1/n}`, word-length spheres.
    pub per_n_sphere_roots: Vec<f64>,
    /// `|S^n|^{1/n}`, literal power sets.
    pub per_n_power_roots: Vec<f64>,
    /// Smallest root over both submultiplicative sequences (`|B_n|`, `|S^n|`).
    pub fekete_upper: f64,
    /// Radius attaining `fekete_upper`.
    pub fekete_radius: usize,
    /// Rigorous rational enclosure of the root at `fekete_radius`; its upper
    /// end bounds the growth rate from above.
    pub fekete_enclosure: Enclosure,
    /// `(|sphere_N| / |sphere_{N-2}|)^{1/2}` at the last radius. Two-step
    /// ratios cancel the constant in `|sphere_n| ≈ C·ω^n` and the period-two
    /// oscillation of bipartite Cayley graphs; `None` when the denominator
    /// vanishes or the table is shallower than 2.
    pub ratio_estimate: Option<f64>,
    /// Rigorous growth rate `ω` when known.
    pub exact_value: Option<Enclosure>,
    /// Rigorous spherical growth rate `σ` when known.
    pub exact_spherical: Option<Enclosure>,
    pub provenance: Provenance,
    pub warnings: Vec<String>,
}

fn root(x: u64, n: usize) -> f64 {
    (x as f64).powf(1.0 / n as f64)
}

/// Per-radius roots and the Fekete upper bound of a table.
pub fn growth_estimate(table: &BallTable) -> Result<GrowthEstimate, GrowthError> {
    let r = table.radius_max();
    if r < 2 {
        return Err(GrowthError::TableTooShallow { needed: 2, have: r });
    }
    let roots = |seq: &[u64]| (1..=r).map(|n| root(seq[n], n)).collect::<Vec<_>>();
    let per_n_ball_roots = roots(table.ball_sizes());
    let per_n_sphere_roots = roots(table.sphere_sizes());
    let per_n_power_roots = roots(table.power_sizes());

    // Both sequences are submultiplicative, so each root bounds ω from above.
    let mut best: (u64, usize) = (table.ball_sizes()[1], 1);
    for n in 1..=r {
        for size in [table.ball_sizes()[n], table.power_sizes()[n]] {
            if root(size, n) < root(best.0, best.1) {
                best = (size, n);
            }
        }
    }
    let fekete_enclosure = nth_root_enclosure(&integer(best.0 as i64), best.1 as u32, ROOT_TOLERANCE);

    let spheres = table.sphere_sizes();
    let ratio_estimate = (spheres[r - 2] > 0).then(|| (spheres[r] as f64 / spheres[r - 2] as f64).sqrt());

    Ok(GrowthEstimate {
        radius_max: r,
        per_n_ball_roots,
        per_n_sphere_roots,
        per_n_power_roots,
        fekete_upper: root(best.0, best.1),
        fekete_radius: best.1,
        fekete_enclosure,
        ratio_estimate,
        exact_value: None,
        exact_spherical: None,
        provenance: Provenance::Empirical,
        warnings: table.warnings().to_vec(),
    })
}

impl GrowthEstimate {
    /// Best available point value: the rigorous midpoint, else the ratio
    /// estimate, else the last ball root.
    pub fn best_value(&self) -> f64 {
        if let Some(e) = &self.exact_value {
            return e.midpoint_f64();
        }
        self.ratio_estimate
            .unwrap_or_else(|| *self.per_n_ball_roots.last().expect("nonempty"))
    }

    pub fn last_ball_root(&self) -> f64 {
        *self.per_n_ball_roots.last().expect("nonempty")
    }

    pub fn last_sphere_root(&self) -> f64 {
        *self.per_n_sphere_roots.last().expect("nonempty")
    }

    /// Records a rigorous value, taking over its provenance.
    pub fn attach_exact(&mut self, exact: &ExactGrowth) {
        self.exact_value = Some(exact.omega.clone());
        self.exact_spherical = Some(exact.sigma.clone());
        self.provenance = exact.provenance;
        self.warnings.extend(exact.warnings.iter().cloned());
    }
}

/// `θ = (ω - 1)/(|S| - 2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaIndex {
    pub value: Enclosure,
    /// Set when the enclosure leaves `[0, 1]`, which for a genuine growth
    /// rate can only come from a numerical estimate.
    pub outside_unit_interval: bool,
}

pub fn theta_index(omega: &Enclosure, set_size: usize) -> Result<ThetaIndex, GrowthError> {
    if set_size <= 2 {
        return Err(GrowthError::SetTooSmall {
            size: set_size,
            needed: 3,
        });
    }
    let one = integer(1);
    let denom = integer(set_size as i64 - 2);
    let value = Enclosure::new((omega.lo() - &one) / &denom, (omega.hi() - &one) / &denom);
    let outside_unit_interval = value.lo().is_negative() || value.hi() > &one;
    Ok(ThetaIndex {
        value,
        outside_unit_interval,
    })
}

/// [`theta_index`] for a float estimate.
pub fn theta_index_f64(omega: f64, set_size: usize) -> Result<ThetaIndex, GrowthError> {
    theta_index(&Enclosure::exact(from_f64(omega)), set_size)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;
    use crate::group::{GeneratingSet, GroupBackend};
    use crate::growth::{enumerate_balls, EnumerationOptions};

    fn estimate(group: &GroupBackend, gens: &str, n: usize) -> GrowthEstimate {
        let set = GeneratingSet::parse(group, gens).unwrap();
        let t = enumerate_balls(group, &set, EnumerationOptions::new(n)).unwrap();
        growth_estimate(&t).unwrap()
    }

    #[test]
    fn free_group_roots_decrease_toward_three() {
        let e = estimate(&GroupBackend::free(2), "standard", 10);
        assert!(e.per_n_ball_roots.windows(2).all(|w| w[1] < w[0]));
        assert!(e.fekete_upper >= 3.0);
        assert!(e.fekete_enclosure.hi_f64() >= 3.0);
        assert!((e.ratio_estimate.unwrap() - 3.0).abs() < 1e-12);
        assert_eq!(e.provenance, Provenance::Empirical);
    }

    #[test]
    fn integers_roots_tend_to_one() {
        let e = estimate(&GroupBackend::free(1), "a,a'", 10);
        assert!((e.per_n_ball_roots[9] - 21f64.powf(0.1)).abs() < 1e-12);
        // |S^10| = 11 < |B_10| = 21 gives the smaller Fekete bound.
        assert!((e.fekete_upper - 11f64.powf(0.1)).abs() < 1e-12);
        assert!(e.fekete_enclosure.contains_f64(11f64.powf(0.1)));
    }

    #[test]
    fn shallow_table_rejected() {
        let g = GroupBackend::free(1);
        let set = g.standard_generators().unwrap();
        let t = enumerate_balls(&g, &set, EnumerationOptions::new(1)).unwrap();
        assert!(growth_estimate(&t).is_err());
    }

    #[test]
    fn theta_values() {
        let t = theta_index(&Enclosure::from_integer(3), 4).unwrap();
        assert_eq!(t.value, Enclosure::from_integer(1));
        assert!(!t.outside_unit_interval);
        let t = theta_index(&Enclosure::from_integer(1), 6).unwrap();
        assert_eq!(t.value, Enclosure::from_integer(0));
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let t = theta_index_f64(phi, 3).unwrap();
        assert!((t.value.midpoint_f64() - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-12);
        let t = theta_index(&Enclosure::exact(rational(1, 2)), 3).unwrap();
        assert!(t.outside_unit_interval);
        assert!(theta_index(&Enclosure::from_integer(3), 2).is_err());
    }
}
