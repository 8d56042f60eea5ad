//! Growth of generating sets: ball enumeration, finite-radius estimates,
//! rigorous growth values for closed-form families and consistency checks.
//!
//! Spheres are word-length spheres `B_n \ B_{n-1}` with `B_0 = {e}`. Literal
//! power sets `S^n` and differences `S^n \ S^{n-1}` are reported alongside;
//! for bipartite Cayley graphs the literal differences contain the lower
//! spheres of equal parity and do not isolate the top sphere.

mod automaton;
mod checks;
mod enumerate;
mod estimate;
mod perron;

use thiserror::Error;

use crate::exact::{integer, Enclosure, Provenance};
use crate::group::{BackendKind, GeneratingSet, GroupBackend, GroupError};

pub use automaton::{build_cone_automaton, ConeAutomaton, MAX_SEARCH_BALL, MAX_TAIL_RADIUS};
pub use checks::{check_submultiplicative, omega_sigma_agreement, AgreementReport, SubmultiplicativityReport};
pub use enumerate::{enumerate_balls, BallTable, EnumerationOptions, DEFAULT_MEMORY_BUDGET};
pub use estimate::{growth_estimate, theta_index, theta_index_f64, GrowthEstimate, ThetaIndex};
pub use perron::{collatz_wielandt, perron_root_enclosure, PerronEnclosure};

/// Target width of Perron enclosures.
pub const PERRON_TOLERANCE: f64 = 1e-9;

/// Float iterations allowed per strongly connected component.
pub const PERRON_MAX_ITERATIONS: usize = 200_000;

#[derive(Debug, Error)]
pub enum GrowthError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("radius must be at least 1, got {0}")]
    RadiusTooSmall(usize),
    #[error("memory budget exceeded; radii up to {completed} are complete")]
    MemoryBudget {
        completed: usize,
        partial: Box<BallTable>,
    },
    #[error("table has radius {have}, need at least {needed}")]
    TableTooShallow { needed: usize, have: usize },
    #[error("generating set has {size} elements, need at least {needed}")]
    SetTooSmall { size: usize, needed: usize },
    #[error(
        "internal error: {sequence} counts are not submultiplicative: \
         a({n}+{k}) = {lhs} > a({n})·a({k}) = {rhs}"
    )]
    SubmultiplicativityViolation {
        sequence: &'static str,
        n: usize,
        k: usize,
        lhs: u64,
        rhs: u128,
    },
    #[error("cone-type automaton construction failed: {0}")]
    AutomatonFailed(String),
}

/// A rigorous growth value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactGrowth {
    /// Growth rate `ω = lim |B_n|^{1/n}`.
    pub omega: Enclosure,
    /// Spherical growth rate `σ = limsup |B_n \ B_{n-1}|^{1/n}`.
    pub sigma: Enclosure,
    pub provenance: Provenance,
    /// How the value was obtained, for reports.
    pub method: String,
    pub warnings: Vec<String>,
}

/// Rigorous growth for the families with a closed form or a transfer
/// matrix; `Ok(None)` means not available for this input.
///
/// * Free groups with the standard symmetric set: `ω = σ = 2r - 1`.
/// * Free products of cyclic groups with a symmetric set: the spherical
///   growth is the Perron root of the cone-type automaton, enclosed by
///   Collatz–Wielandt bounds; `ω = max(1, σ)`.
pub fn exact_growth(
    group: &GroupBackend,
    set: &GeneratingSet,
) -> Result<Option<ExactGrowth>, GrowthError> {
    match group.kind() {
        BackendKind::FreeGroup { rank } => {
            let standard = group.standard_generators()?;
            let same = standard.len() == set.len()
                && standard.elements().iter().all(|g| set.elements().contains(g));
            if !same || *rank == 0 {
                return Ok(None);
            }
            let value = Enclosure::exact(integer(2 * *rank as i64 - 1));
            Ok(Some(ExactGrowth {
                omega: value.clone(),
                sigma: value,
                provenance: Provenance::ExactClosedForm,
                method: format!("reduced words: spheres 2r(2r-1)^(n-1) with r = {rank}"),
                warnings: Vec::new(),
            }))
        }
        BackendKind::FreeProductCyclic { .. } => {
            if !set.is_symmetric() {
                return Ok(None);
            }
            let automaton = build_cone_automaton(group, set)?;
            if automaton.is_acyclic() {
                return Ok(Some(ExactGrowth {
                    omega: Enclosure::from_integer(1),
                    sigma: Enclosure::from_integer(0),
                    provenance: Provenance::PerronEnclosure,
                    method: format!(
                        "acyclic cone-type automaton ({} states): finite group",
                        automaton.states()
                    ),
                    warnings: Vec::new(),
                }));
            }
            let perron =
                perron_root_enclosure(&automaton.transitions, PERRON_TOLERANCE, PERRON_MAX_ITERATIONS);
            let mut warnings = Vec::new();
            if !perron.reached_tolerance {
                warnings.push(format!(
                    "Perron enclosure width {} exceeds tolerance {PERRON_TOLERANCE}",
                    crate::exact::to_f64(&perron.enclosure.width())
                ));
            }
            let sigma = perron.enclosure;
            let omega = sigma.max(&Enclosure::from_integer(1));
            Ok(Some(ExactGrowth {
                omega,
                sigma,
                provenance: Provenance::PerronEnclosure,
                method: format!(
                    "cone-type automaton: {} states, tail radius {}, validated to radius {}",
                    automaton.states(),
                    automaton.tail_radius,
                    automaton.validated_radius
                ),
                warnings,
            }))
        }
        BackendKind::FiniteCayley(_) | BackendKind::RewritingSystem(_) => Ok(None),
    }
}
