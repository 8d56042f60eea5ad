//! Growth criteria for non-Hermitianity evaluated on measure-level data.
//!
//! The general criterion compares a growth rate with
//! `∫_S Δ^{-1/2} dμ / (2 μ(K) inf_S Δ^{-1/2})`. For discrete groups
//! (`Δ ≡ 1`, counting measure, `K = {e}`) the threshold is `|S|/2`; for a
//! symmetric double coset `KgK` in a unimodular totally disconnected group
//! with `μ(K) = 1` it is `μ(KgK)/2`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{fmt_rational, integer, rational, Enclosure, Provenance};

/// Adian's lower bound on the spherical growth of free Burnside groups of
/// large odd exponent on two generators.
pub fn adian_rate() -> BigRational {
    rational(29, 10)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CriteriaError {
    #[error("field '{0}' must be positive")]
    NonPositive(&'static str),
    #[error("inf of the modular weight exceeds its mean over S")]
    InfAboveMean,
    #[error("generating set size {0} is below 2")]
    SetTooSmall(usize),
    #[error("empirical growth values cannot back a criterion")]
    EmpiricalGrowth,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Inconclusive,
    EqualityBoundary,
    Certified,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Certified => "CERTIFIED",
            Verdict::EqualityBoundary => "EQUALITY_BOUNDARY",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }

    /// `Certified` if `lo > threshold`, `EqualityBoundary` if equal.
    pub fn compare(lo: &BigRational, threshold: &BigRational) -> Verdict {
        match lo.cmp(threshold) {
            std::cmp::Ordering::Greater => Verdict::Certified,
            std::cmp::Ordering::Equal => Verdict::EqualityBoundary,
            std::cmp::Ordering::Less => Verdict::Inconclusive,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A verdict with everything needed to re-check it by hand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionVerdict {
    pub criterion: &'static str,
    pub verdict: Verdict,
    pub threshold: BigRational,
    pub omega_lower: Enclosure,
    /// `omega_lower.lo - threshold`.
    pub margin: BigRational,
    pub provenance: Provenance,
    /// True when the growth value is an input taken on trust.
    pub conditional: bool,
    pub notes: Vec<String>,
}

impl CriterionVerdict {
    fn new(
        criterion: &'static str,
        omega_lower: &Enclosure,
        threshold: BigRational,
        provenance: Provenance,
    ) -> Self {
        CriterionVerdict {
            criterion,
            verdict: Verdict::compare(omega_lower.lo(), &threshold),
            margin: omega_lower.lo() - &threshold,
            threshold,
            omega_lower: omega_lower.clone(),
            provenance,
            conditional: provenance.is_conditional(),
            notes: Vec::new(),
        }
    }

    pub fn summary(&self) -> String {
        format!(
            "{} [{}]: omega >= {} vs threshold {} (margin {}, {})",
            self.verdict,
            self.criterion,
            fmt_rational(self.omega_lower.lo()),
            fmt_rational(&self.threshold),
            fmt_rational(&self.margin),
            self.provenance
        )
    }
}

/// Measure data for the general criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionInput {
    /// `∫_S Δ^{-1/2} dμ`.
    pub integral_s_delta: BigRational,
    /// `μ(K)`.
    pub mu_k: BigRational,
    /// `inf_{h ∈ S} Δ^{-1/2}(h)`.
    pub inf_delta_s: BigRational,
    /// `μ(S)`, when known; enables the mean-versus-inf check.
    pub mu_s: Option<BigRational>,
    pub omega_lower: Enclosure,
    pub provenance: Provenance,
}

impl CriterionInput {
    /// Unimodular data: `Δ ≡ 1`, so the integral is `μ(S)`.
    pub fn unimodular(mu_s: BigRational, mu_k: BigRational, omega_lower: Enclosure, provenance: Provenance) -> Self {
        CriterionInput {
            integral_s_delta: mu_s.clone(),
            mu_k,
            inf_delta_s: BigRational::one(),
            mu_s: Some(mu_s),
            omega_lower,
            provenance,
        }
    }

    /// Discrete data: counting measure, `K = {e}`.
    pub fn discrete(set_size: usize, omega_lower: Enclosure, provenance: Provenance) -> Self {
        CriterionInput::unimodular(integer(set_size as i64), BigRational::one(), omega_lower, provenance)
    }

    fn validate(&self) -> Result<(), CriteriaError> {
        for (name, v) in [
            ("integral_S_delta", &self.integral_s_delta),
            ("mu_K", &self.mu_k),
            ("inf_delta_S", &self.inf_delta_s),
        ] {
            if !v.is_positive() {
                return Err(CriteriaError::NonPositive(name));
            }
        }
        if let Some(mu_s) = &self.mu_s {
            if !mu_s.is_positive() {
                return Err(CriteriaError::NonPositive("mu_S"));
            }
            if &self.inf_delta_s * mu_s > self.integral_s_delta {
                return Err(CriteriaError::InfAboveMean);
            }
        }
        if !self.provenance.is_rigorous() {
            return Err(CriteriaError::EmpiricalGrowth);
        }
        Ok(())
    }
}

/// `∫_S Δ^{-1/2} dμ / (2 μ(K) inf_S Δ^{-1/2})`.
pub fn general_threshold(input: &CriterionInput) -> Result<BigRational, CriteriaError> {
    input.validate()?;
    Ok(&input.integral_s_delta / (integer(2) * &input.mu_k * &input.inf_delta_s))
}

/// Compares `input.omega_lower` with [`general_threshold`].
pub fn general_criterion(input: &CriterionInput) -> Result<CriterionVerdict, CriteriaError> {
    let threshold = general_threshold(input)?;
    Ok(CriterionVerdict::new("general", &input.omega_lower, threshold, input.provenance))
}

/// Discrete groups: certified iff `ω > |S|/2`.
pub fn discrete_criterion(
    set_size: usize,
    omega_lower: &Enclosure,
    provenance: Provenance,
) -> Result<CriterionVerdict, CriteriaError> {
    if set_size < 2 {
        return Err(CriteriaError::SetTooSmall(set_size));
    }
    if !provenance.is_rigorous() {
        return Err(CriteriaError::EmpiricalGrowth);
    }
    Ok(CriterionVerdict::new(
        "discrete",
        omega_lower,
        rational(set_size as i64, 2),
        provenance,
    ))
}

/// Symmetric double cosets: certified iff `KgK = Kg^{-1}K` (asserted by the
/// caller), `μ(KgK) > 1` and `ω > μ(KgK)/2`.
pub fn double_coset_criterion(
    mu_kgk: &BigRational,
    omega_lower: &Enclosure,
    provenance: Provenance,
    symmetric: bool,
    symmetry_justification: &str,
) -> CriterionVerdict {
    let mut v = CriterionVerdict::new("double-coset", omega_lower, mu_kgk / integer(2), provenance);
    if symmetric {
        v.notes.push(format!("symmetry asserted: {symmetry_justification}"));
    } else {
        v.notes.push("double coset not asserted symmetric".into());
        v.verdict = Verdict::Inconclusive;
    }
    if mu_kgk <= &BigRational::one() {
        v.notes.push(format!("mu(KgK) = {} is not > 1", fmt_rational(mu_kgk)));
        v.verdict = Verdict::Inconclusive;
    }
    if !provenance.is_rigorous() {
        v.notes.push("empirical growth value".into());
        v.verdict = Verdict::Inconclusive;
    }
    v
}

/// Two-generator free Burnside groups with `S = {a, b, a^{-1}, b^{-1}}`:
/// `ω ≥ rate` against the threshold `|S|/2 = 2`. The rate is a published
/// constant, never recomputed.
pub fn burnside_check(rate: &BigRational) -> CriterionVerdict {
    let omega = Enclosure::exact(rate.clone());
    let mut v = CriterionVerdict::new("burnside", &omega, integer(2), Provenance::PaperConstant);
    v.notes.push(format!(
        "spherical growth bound 4*({})^(k-1) taken from Adian's theorem, not recomputed",
        fmt_rational(rate)
    ));
    v
}

/// True when both verdicts use thresholds that agree and report the same
/// outcome (used to cross-check two routes to one criterion).
pub fn routes_agree(a: &CriterionVerdict, b: &CriterionVerdict) -> bool {
    a.verdict == b.verdict && (a.margin.is_zero() == b.margin.is_zero())
}
