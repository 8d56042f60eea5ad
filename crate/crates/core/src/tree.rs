//! Exact sphere calculus on locally finite trees whose vertex degrees are
//! periodic along a translation axis.
//!
//! The base vertex `x_0` has degree `deg_0`, and every vertex on sphere `n`
//! has degree `deg_{n mod k}`, so `|S_1| = deg_0` and
//! `|S_{n+1}| = (deg_n - 1)·|S_n|`. A translation of length `k` along the
//! axis gives a double coset `KgK` with `μ(Kg^nK) = |S_{nk}|`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

use crate::criteria::{double_coset_criterion, CriterionVerdict};
use crate::exact::{from_biguint, Enclosure, Provenance};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("degree sequence is empty")]
    Empty,
    #[error("degree {degree} at position {index} is below 2")]
    DegreeTooSmall { index: usize, degree: u64 },
    #[error("translation length {k} differs from the {len} listed degrees")]
    LengthMismatch { k: usize, len: usize },
    #[error("sphere radius must be at least 1")]
    RadiusZero,
    #[error("cannot parse tree spec: {0}")]
    Parse(String),
}

/// Periodic degree data `deg_0, …, deg_{k-1}` with `k` the translation length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeSpec {
    degrees: Vec<u64>,
}

impl TreeSpec {
    pub fn new(degrees: Vec<u64>) -> Result<Self, TreeError> {
        if degrees.is_empty() {
            return Err(TreeError::Empty);
        }
        if let Some((index, &degree)) = degrees.iter().enumerate().find(|(_, &d)| d < 2) {
            return Err(TreeError::DegreeTooSmall { index, degree });
        }
        Ok(TreeSpec { degrees })
    }

    /// The `(q+1)`-regular tree with translation length 1.
    pub fn regular(degree: u64) -> Result<Self, TreeError> {
        TreeSpec::new(vec![degree])
    }

    /// The degree sequence of `x_0`'s spheres, one period.
    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn translation_length(&self) -> usize {
        self.degrees.len()
    }

    /// `deg_n`, extended periodically.
    pub fn degree(&self, n: usize) -> u64 {
        self.degrees[n % self.degrees.len()]
    }
}

impl fmt::Display for TreeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.degrees.iter().map(u64::to_string).collect();
        write!(f, "degrees={} k={}", list.join(","), self.degrees.len())
    }
}

impl FromStr for TreeSpec {
    type Err = TreeError;

    /// Parses `degrees=3,4 k=2`; `k` may be omitted.
    fn from_str(s: &str) -> Result<Self, TreeError> {
        let mut degrees = None;
        let mut k = None;
        for token in s.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| TreeError::Parse(format!("expected key=value, got '{token}'")))?;
            match key {
                "degrees" => {
                    let list = value
                        .split(',')
                        .map(|d| {
                            d.trim()
                                .parse::<u64>()
                                .map_err(|_| TreeError::Parse(format!("bad degree '{d}'")))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    degrees = Some(list);
                }
                "k" => {
                    k = Some(
                        value
                            .parse::<usize>()
                            .map_err(|_| TreeError::Parse(format!("bad translation length '{value}'")))?,
                    );
                }
                other => return Err(TreeError::Parse(format!("unknown key '{other}'"))),
            }
        }
        let degrees = degrees.ok_or_else(|| TreeError::Parse("missing 'degrees='".into()))?;
        if let Some(k) = k {
            if k != degrees.len() {
                return Err(TreeError::LengthMismatch { k, len: degrees.len() });
            }
        }
        TreeSpec::new(degrees)
    }
}

/// `|S_n(x_0)| = deg_0 · ∏_{i=1}^{n-1} (deg_i - 1)`.
pub fn sphere_size(tree: &TreeSpec, n: usize) -> Result<BigUint, TreeError> {
    if n == 0 {
        return Err(TreeError::RadiusZero);
    }
    let mut size = BigUint::from(tree.degree(0));
    for i in 1..n {
        size *= tree.degree(i) - 1;
    }
    Ok(size)
}

/// `μ(Kg^pK) = |S_{pk}(x_0)|` for the translation `g` of length `k`.
pub fn double_coset_measure(tree: &TreeSpec, power: usize) -> Result<BigUint, TreeError> {
    if power == 0 {
        return Err(TreeError::RadiusZero);
    }
    sphere_size(tree, power * tree.translation_length())
}

/// `lim μ(Kg^nK)^{1/n} = (deg_0 - 1) ∏_{i=1}^{k-1} (deg_i - 1)`, a lower
/// bound for the growth of `KgK`.
pub fn tree_growth_lower(tree: &TreeSpec) -> BigUint {
    tree.degrees.iter().map(|&d| BigUint::from(d - 1)).product()
}

/// The outcome of the tree criterion with the hypotheses it checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeVerdict {
    pub tree: TreeSpec,
    pub mu_kgk: BigUint,
    pub growth_lower: BigUint,
    /// Some vertex has degree at least 3.
    pub degree_condition: bool,
    /// `growth_lower ≥ (2/3)·μ(KgK)`.
    pub two_thirds_holds: bool,
    pub two_thirds_equality: bool,
    pub verdict: CriterionVerdict,
}

/// Applies the double-coset criterion to the translation of length `k`.
pub fn tree_criterion(tree: &TreeSpec) -> TreeVerdict {
    let mu = double_coset_measure(tree, 1).expect("power 1 is valid");
    let lower = tree_growth_lower(tree);
    let degree_condition = tree.degrees.iter().any(|&d| d >= 3);
    let three_lower = BigUint::from(3u8) * &lower;
    let two_mu = BigUint::from(2u8) * &mu;
    let mu_q = from_biguint(&mu);
    let mut verdict = double_coset_criterion(
        &mu_q,
        &Enclosure::exact(from_biguint(&lower)),
        Provenance::ExactClosedForm,
        true,
        "the acting group is assumed transitive on each sphere around x_0",
    );
    verdict.criterion = "tree";
    if !degree_condition {
        verdict.notes.push("no vertex of degree at least 3".into());
        verdict.verdict = crate::criteria::Verdict::Inconclusive;
    }
    TreeVerdict {
        tree: tree.clone(),
        two_thirds_holds: three_lower >= two_mu,
        two_thirds_equality: three_lower == two_mu,
        mu_kgk: mu,
        growth_lower: lower,
        degree_condition,
        verdict,
    }
}

/// `μ(Kg^nK)^{1/n}` as a rigorous enclosure, for inspecting convergence.
pub fn measure_root(tree: &TreeSpec, power: usize) -> Result<Enclosure, TreeError> {
    let mu = from_biguint(&double_coset_measure(tree, power)?);
    Ok(crate::exact::nth_root_enclosure(&mu, power as u32, crate::exact::ROOT_TOLERANCE))
}
