//! Two-sided capacity estimates for witness elements and the certificate
//! rule `cap(a) ≤ R(a)/2` for elements with real spectrum.
//!
//! Lower side: for `f = χ_S/|S|` and any monic `p` of degree `n`, the part
//! of `p(f)` on the word-length sphere of radius `n` is exactly `f^n` there
//! (lower powers live in `B_{n-1}`), so `m_n = Σ_{|g| = n} f^n(g)` bounds
//! `‖p(f)‖₁` from below. Every element of the sphere has a geodesic
//! factorization, hence `m_n ≥ |sphere_n| / |S|^n` and the limit is at least
//! `σ/|S|`.
//!
//! Upper side: the ℓ¹ minimum over real monic polynomials of degree `n`,
//! solved exactly by [`lp::l1_fit`].

pub mod lp;

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Signed;
use thiserror::Error;

use crate::algebra::{powers, AlgebraElement, AlgebraError};
use crate::exact::{fmt_rational, integer, nth_root_enclosure, Enclosure, Provenance, ROOT_TOLERANCE};
use crate::group::{CanonicalForm, GeneratingSet, GroupBackend};
use crate::growth::BallTable;

pub use lp::{l1_fit, residual_norm, L1Fit};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CapacityError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("table stores elements to radius {stored}, need {needed}")]
    TableTooShallow { needed: usize, stored: usize },
    #[error("table and element belong to different groups")]
    BackendMismatch,
    #[error("element is not the normalized indicator of the generating set")]
    NotWitness,
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("linear program failed: {0}")]
    LpFailure(String),
    #[error("no rigorous capacity lower bound: {0}")]
    MissingRigorousLower(String),
}

/// Sphere mass `m_n` of `f^n` and its `n`-th root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereMass {
    pub degree: usize,
    pub mass: BigRational,
    pub root: Enclosure,
}

/// Rigorous lower bound on the capacity limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerLimit {
    pub value: Enclosure,
    pub provenance: Provenance,
    /// Explanation of where the growth value came from.
    pub source: String,
}

/// Sphere masses of `f^n` for `n = 1..=n_max`.
///
/// `f` must be the normalized indicator of `set` and `table` must store
/// elements up to radius `n_max`.
pub fn sphere_mass_lower(
    group: &GroupBackend,
    set: &GeneratingSet,
    f: &AlgebraElement,
    table: &BallTable,
    n_max: usize,
    support_budget: usize,
) -> Result<Vec<SphereMass>, CapacityError> {
    if set.len() < 2 {
        return Err(AlgebraError::SetTooSmall(set.len()).into());
    }
    if f.backend_id() != group.id() || table.backend() != group.id() {
        return Err(CapacityError::BackendMismatch);
    }
    let weight = BigRational::new(1.into(), (set.len() as i64).into());
    let support: BTreeSet<&CanonicalForm> = f.numerators().keys().collect();
    let expected: BTreeSet<&CanonicalForm> = set.elements().iter().map(|s| s.canonical_form()).collect();
    if support != expected || set.elements().iter().any(|s| f.coefficient(s) != weight) {
        return Err(CapacityError::NotWitness);
    }
    if table.stored_radius() < n_max {
        return Err(CapacityError::TableTooShallow {
            needed: n_max,
            stored: table.stored_radius(),
        });
    }
    let pw = powers(group, f, n_max, support_budget)?;
    Ok((1..=n_max)
        .map(|n| {
            let mass: BigRational = table
                .sphere_forms(n)
                .expect("stored radius checked")
                .map(|g| pw[n].coefficient_of_form(g))
                .sum();
            let root = nth_root_enclosure(&mass, n as u32, ROOT_TOLERANCE);
            SphereMass {
                degree: n,
                mass,
                root,
            }
        })
        .collect())
}

/// `σ/|S|` from a rigorous spherical growth value; empirical values are
/// refused.
pub fn lower_limit_from_growth(
    sigma: &Enclosure,
    provenance: Provenance,
    set_size: usize,
    source: impl Into<String>,
) -> Result<LowerLimit, CapacityError> {
    if !provenance.is_rigorous() {
        return Err(CapacityError::MissingRigorousLower(
            "empirical growth data never feeds a certificate".into(),
        ));
    }
    Ok(LowerLimit {
        value: sigma.scale_down(&integer(set_size as i64)),
        provenance,
        source: source.into(),
    })
}

/// Per-degree LP upper estimate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpUpper {
    pub degree: usize,
    /// `min ‖f^n + Σ_{k<n} c_k f^k‖₁` over real `c`.
    pub optimum: BigRational,
    pub root: Enclosure,
    pub coefficients: Vec<BigRational>,
    pub pivots: usize,
}

/// `min_c ‖target + Σ_k c_k columns[k]‖₁` over the union of supports.
pub fn lp_l1_minimize(columns: &[AlgebraElement], target: &AlgebraElement) -> Result<L1Fit, CapacityError> {
    if columns.iter().any(|c| c.backend_id() != target.backend_id()) {
        return Err(CapacityError::BackendMismatch);
    }
    let mut support: BTreeSet<&CanonicalForm> = target.numerators().keys().collect();
    for c in columns {
        support.extend(c.numerators().keys());
    }
    let matrix: Vec<Vec<BigRational>> = support
        .iter()
        .map(|g| columns.iter().map(|c| c.coefficient_of_form(g)).collect())
        .collect();
    let rhs: Vec<BigRational> = support.iter().map(|g| target.coefficient_of_form(g)).collect();
    l1_fit(&matrix, &rhs)
}

/// LP upper estimates for each degree `1..=max_degree`.
pub fn capacity_upper_lp(
    group: &GroupBackend,
    f: &AlgebraElement,
    max_degree: usize,
    support_budget: usize,
) -> Result<Vec<LpUpper>, CapacityError> {
    if max_degree == 0 {
        return Err(CapacityError::ZeroDegree);
    }
    let pw = powers(group, f, max_degree, support_budget)?;
    (1..=max_degree)
        .map(|n| {
            let fit = lp_l1_minimize(&pw[..n], &pw[n])?;
            let root = nth_root_enclosure(&fit.optimum, n as u32, ROOT_TOLERANCE);
            Ok(LpUpper {
                degree: n,
                optimum: fit.optimum,
                root,
                coefficients: fit.coefficients,
                pivots: fit.pivots,
            })
        })
        .collect()
}

/// Everything known about the capacity of one witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapacityBounds {
    pub witness: String,
    pub set_size: usize,
    pub lower_sphere: Vec<SphereMass>,
    pub lower_limit: Option<LowerLimit>,
    pub upper_lp: Vec<LpUpper>,
    pub spectral_upper: Option<Enclosure>,
}

impl CapacityBounds {
    /// Degrees at which lower data exceed upper data, compared exactly on
    /// the unrooted values (sphere mass vs LP optimum). Always empty for
    /// correct inputs.
    pub fn order_violations(&self) -> Vec<usize> {
        self.lower_sphere
            .iter()
            .filter_map(|l| {
                let u = self.upper_lp.iter().find(|u| u.degree == l.degree)?;
                (l.mass > u.optimum).then_some(l.degree)
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrwVerdict {
    NotHermitian,
    Inconclusive,
}

impl FrwVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            FrwVerdict::NotHermitian => "NOT_HERMITIAN",
            FrwVerdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// Outcome of comparing a rigorous capacity lower bound with `R/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateResult {
    pub verdict: FrwVerdict,
    pub witness: String,
    pub capacity_lower: Enclosure,
    pub spectral_upper: Enclosure,
    pub half_spectral_upper: BigRational,
    /// `capacity_lower.lo - spectral_upper.hi / 2`, exact.
    pub margin: BigRational,
    pub provenance: Provenance,
    /// True when the growth value is an asserted input.
    pub conditional: bool,
    pub source: String,
}

impl CertificateResult {
    pub fn summary(&self) -> String {
        format!(
            "{}: cap lower {} vs R/2 = {} (margin {})",
            self.verdict.as_str(),
            self.capacity_lower,
            fmt_rational(&self.half_spectral_upper),
            fmt_rational(&self.margin)
        )
    }
}

/// Certifies non-Hermitianity iff `lower.lo > R.hi / 2`, exactly.
pub fn frw_certificate(bounds: &CapacityBounds, r_upper: &Enclosure) -> Result<CertificateResult, CapacityError> {
    let lower = bounds.lower_limit.as_ref().ok_or_else(|| {
        CapacityError::MissingRigorousLower("no closed-form, Perron or asserted growth value".into())
    })?;
    if !lower.provenance.is_rigorous() {
        return Err(CapacityError::MissingRigorousLower(
            "empirical growth data never feeds a certificate".into(),
        ));
    }
    let half = r_upper.hi() / integer(2);
    let margin = lower.value.lo() - &half;
    let verdict = if margin.is_positive() {
        FrwVerdict::NotHermitian
    } else {
        FrwVerdict::Inconclusive
    };
    Ok(CertificateResult {
        verdict,
        witness: bounds.witness.clone(),
        capacity_lower: lower.value.clone(),
        spectral_upper: r_upper.clone(),
        half_spectral_upper: half,
        margin,
        provenance: lower.provenance,
        conditional: lower.provenance.is_conditional(),
        source: lower.source.clone(),
    })
}
