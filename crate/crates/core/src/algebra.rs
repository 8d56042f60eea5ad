//! Exact arithmetic in the group algebra of a discrete group: finitely
//! supported rational functions, convolution, involution, ℓ¹ norm and the
//! normalized indicator of a generating set.
//!
//! Elements are stored as integer numerators over one positive common
//! denominator, which keeps convolution powers of uniform measures in cheap
//! integer arithmetic.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{fmt_rational, integer, nth_root_enclosure, parse_rational, Enclosure, ROOT_TOLERANCE};
use crate::group::{BackendId, CanonicalForm, GeneratingSet, GroupBackend, GroupElement, GroupError};

/// Default cap on the support size of convolution powers.
pub const DEFAULT_SUPPORT_BUDGET: usize = 4_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("generating set is not symmetric")]
    NotSymmetric,
    #[error("generating set has {0} elements, need at least 2")]
    SetTooSmall(usize),
    #[error("support budget of {budget} exceeded at power {power}; powers up to {completed} are complete")]
    SupportBudget {
        power: usize,
        completed: usize,
        budget: usize,
    },
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("element is zero")]
    ZeroElement,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A finitely supported function `G → Q`, zeros never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    backend: BackendId,
    denom: BigInt,
    terms: BTreeMap<CanonicalForm, BigInt>,
}

impl AlgebraElement {
    pub fn zero(group: &GroupBackend) -> Self {
        AlgebraElement {
            backend: group.id(),
            denom: BigInt::one(),
            terms: BTreeMap::new(),
        }
    }

    /// Point mass `δ_x`.
    pub fn delta(group: &GroupBackend, x: &GroupElement) -> Result<Self, AlgebraError> {
        Self::from_terms(group, [(x.clone(), integer(1))])
    }

    /// Sums the given terms; repeated elements accumulate.
    pub fn from_terms(
        group: &GroupBackend,
        terms: impl IntoIterator<Item = (GroupElement, BigRational)>,
    ) -> Result<Self, AlgebraError> {
        let terms: Vec<(GroupElement, BigRational)> = terms.into_iter().collect();
        let mut denom = BigInt::one();
        for (x, q) in &terms {
            if x.backend_id() != group.id() {
                return Err(GroupError::BackendMismatch.into());
            }
            denom = denom.lcm(q.denom());
        }
        let mut map: BTreeMap<CanonicalForm, BigInt> = BTreeMap::new();
        for (x, q) in terms {
            let num = q.numer() * (&denom / q.denom());
            *map.entry(x.canonical_form().clone()).or_insert_with(BigInt::zero) += num;
        }
        Ok(AlgebraElement::normalized(group.id(), denom, map))
    }

    fn normalized(backend: BackendId, denom: BigInt, mut terms: BTreeMap<CanonicalForm, BigInt>) -> Self {
        terms.retain(|_, v| !v.is_zero());
        let mut g = denom.clone();
        for v in terms.values() {
            if g.is_one() {
                break;
            }
            g = g.gcd(v);
        }
        let (denom, terms) = if g.is_one() {
            (denom, terms)
        } else {
            let terms = terms.into_iter().map(|(k, v)| (k, v / &g)).collect();
            (denom / &g, terms)
        };
        let denom = if terms.is_empty() { BigInt::one() } else { denom };
        AlgebraElement {
            backend,
            denom,
            terms,
        }
    }

    pub fn backend_id(&self) -> BackendId {
        self.backend
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    /// Common denominator of all coefficients, in lowest terms.
    pub fn denominator(&self) -> &BigInt {
        &self.denom
    }

    pub fn coefficient(&self, x: &GroupElement) -> BigRational {
        if x.backend_id() != self.backend {
            return BigRational::zero();
        }
        self.coefficient_of_form(x.canonical_form())
    }

    pub(crate) fn coefficient_of_form(&self, form: &CanonicalForm) -> BigRational {
        self.terms
            .get(form)
            .map(|v| BigRational::new(v.clone(), self.denom.clone()))
            .unwrap_or_else(BigRational::zero)
    }

    /// Coefficients in shortlex order of the support.
    pub fn terms(&self) -> impl Iterator<Item = (GroupElement, BigRational)> + '_ {
        self.terms.iter().map(move |(f, v)| {
            (
                GroupElement {
                    backend: self.backend,
                    form: f.clone(),
                },
                BigRational::new(v.clone(), self.denom.clone()),
            )
        })
    }

    pub(crate) fn numerators(&self) -> &BTreeMap<CanonicalForm, BigInt> {
        &self.terms
    }

    /// `Σ |x(g)|`, exact.
    pub fn l1_norm(&self) -> BigRational {
        let total: BigInt = self.terms.values().map(|v| v.abs()).sum();
        BigRational::new(total, self.denom.clone())
    }

    /// `Σ x(g)`, the augmentation.
    pub fn total_mass(&self) -> BigRational {
        let total: BigInt = self.terms.values().sum();
        BigRational::new(total, self.denom.clone())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|v| !v.is_negative())
    }

    /// `q · x`.
    pub fn scale(&self, q: &BigRational) -> AlgebraElement {
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| (k.clone(), v * q.numer()))
            .collect();
        AlgebraElement::normalized(self.backend, &self.denom * q.denom(), terms)
    }

    /// `x + y`.
    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        if self.backend != other.backend {
            return Err(GroupError::BackendMismatch.into());
        }
        let denom = self.denom.lcm(&other.denom);
        let (fa, fb) = (&denom / &self.denom, &denom / &other.denom);
        let mut terms: BTreeMap<CanonicalForm, BigInt> =
            self.terms.iter().map(|(k, v)| (k.clone(), v * &fa)).collect();
        for (k, v) in &other.terms {
            *terms.entry(k.clone()).or_insert_with(BigInt::zero) += v * &fb;
        }
        Ok(AlgebraElement::normalized(self.backend, denom, terms))
    }

    /// Line-oriented text form: one `word coefficient` pair per line.
    pub fn to_text(&self, group: &GroupBackend) -> String {
        let mut out = String::new();
        for (x, q) in self.terms() {
            writeln!(out, "{} {}", group.format(&x), fmt_rational(&q)).expect("write to string");
        }
        out
    }

    /// Inverse of [`to_text`](Self::to_text); blank lines and lines starting
    /// with `# ` are skipped.
    pub fn parse_text(group: &GroupBackend, text: &str) -> Result<AlgebraElement, AlgebraError> {
        let mut terms = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            // `#k` names a table element, so only `# ...` is a comment.
            if line.is_empty() || line == "#" || line.starts_with("# ") {
                continue;
            }
            let parse_err = |message: String| AlgebraError::Parse {
                line: i + 1,
                message,
            };
            let (word, coeff) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| parse_err("expected 'word coefficient'".into()))?;
            let x = group.parse_word(word).map_err(|e| parse_err(e.to_string()))?;
            let q = parse_rational(coeff).map_err(parse_err)?;
            terms.push((x, q));
        }
        AlgebraElement::from_terms(group, terms)
    }
}

/// `(x ∗ y)(g) = Σ_h x(h) y(h^{-1} g)`.
pub fn convolve(
    group: &GroupBackend,
    x: &AlgebraElement,
    y: &AlgebraElement,
) -> Result<AlgebraElement, AlgebraError> {
    if x.backend != group.id() || y.backend != group.id() {
        return Err(GroupError::BackendMismatch.into());
    }
    let mut acc: HashMap<CanonicalForm, BigInt> = HashMap::with_capacity(x.terms.len() * y.terms.len() / 2 + 1);
    for (h, a) in &x.terms {
        for (k, b) in &y.terms {
            let g = group.mul_forms(h, k)?;
            *acc.entry(g).or_insert_with(BigInt::zero) += a * b;
        }
    }
    Ok(AlgebraElement::normalized(
        group.id(),
        &x.denom * &y.denom,
        acc.into_iter().collect(),
    ))
}

/// `x^*(g) = conj(x(g^{-1}))`; coefficients are real, so only the argument
/// is inverted (the modular function is trivial for discrete groups).
pub fn involution(group: &GroupBackend, x: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
    if x.backend != group.id() {
        return Err(GroupError::BackendMismatch.into());
    }
    let terms = x
        .terms
        .iter()
        .map(|(k, v)| Ok((group.inv_form(k)?, v.clone())))
        .collect::<Result<BTreeMap<_, _>, GroupError>>()?;
    Ok(AlgebraElement::normalized(group.id(), x.denom.clone(), terms))
}

/// `x^0 = δ_e, x^1, …, x^n` by repeated convolution with `x`.
pub fn powers(
    group: &GroupBackend,
    x: &AlgebraElement,
    n: usize,
    support_budget: usize,
) -> Result<Vec<AlgebraElement>, AlgebraError> {
    let mut out = vec![AlgebraElement::delta(group, &group.identity())?];
    for k in 1..=n {
        let prev = out.last().expect("nonempty");
        // |supp(prev ∗ x)| ≤ |supp prev|·|supp x|; only enforce on the result.
        let next = convolve(group, prev, x)?;
        if next.support_size() > support_budget {
            return Err(AlgebraError::SupportBudget {
                power: k,
                completed: k - 1,
                budget: support_budget,
            });
        }
        out.push(next);
    }
    Ok(out)
}

/// `x^n`, `n ≥ 1`.
pub fn power(
    group: &GroupBackend,
    x: &AlgebraElement,
    n: usize,
    support_budget: usize,
) -> Result<AlgebraElement, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::ZeroExponent);
    }
    Ok(powers(group, x, n, support_budget)?.pop().expect("nonempty"))
}

/// The self-adjoint witness `f = χ_S / |S|` of a symmetric set.
pub fn witness_element(group: &GroupBackend, set: &GeneratingSet) -> Result<AlgebraElement, AlgebraError> {
    if set.len() < 2 {
        return Err(AlgebraError::SetTooSmall(set.len()));
    }
    if !set.is_symmetric() {
        return Err(AlgebraError::NotSymmetric);
    }
    let weight = BigRational::new(BigInt::one(), BigInt::from(set.len()));
    AlgebraElement::from_terms(group, set.elements().iter().map(|s| (s.clone(), weight.clone())))
}

/// Upper bound on the spectral radius: `min_{1≤n≤m} ‖x^n‖₁^{1/n}`.
///
/// Returns the enclosure of the minimizing root; its upper end is a valid
/// bound because the ℓ¹ norm is submultiplicative.
pub fn spectral_radius_upper(
    group: &GroupBackend,
    x: &AlgebraElement,
    m: usize,
    support_budget: usize,
) -> Result<Enclosure, AlgebraError> {
    if m == 0 {
        return Err(AlgebraError::ZeroExponent);
    }
    if x.is_zero() {
        return Err(AlgebraError::ZeroElement);
    }
    let pw = powers(group, x, m, support_budget)?;
    let mut best: Option<Enclosure> = None;
    for (n, p) in pw.iter().enumerate().skip(1) {
        let e = nth_root_enclosure(&p.l1_norm(), n as u32, ROOT_TOLERANCE);
        if best.as_ref().map_or(true, |b| e.hi() < b.hi()) {
            best = Some(e);
        }
    }
    Ok(best.expect("m ≥ 1"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    fn el(g: &GroupBackend, terms: &[(&str, i64, i64)]) -> AlgebraElement {
        AlgebraElement::from_terms(
            g,
            terms
                .iter()
                .map(|&(w, n, d)| (g.parse_word(w).unwrap(), rational(n, d))),
        )
        .unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let g = GroupBackend::free(2);
        let f = witness_element(&g, &g.standard_generators().unwrap()).unwrap();
        let e = AlgebraElement::delta(&g, &g.identity()).unwrap();
        assert_eq!(convolve(&g, &e, &f).unwrap(), f);
        assert_eq!(convolve(&g, &f, &e).unwrap(), f);
    }

    #[test]
    fn free_group_square_at_identity() {
        let g = GroupBackend::free(2);
        let f = witness_element(&g, &g.standard_generators().unwrap()).unwrap();
        let f2 = convolve(&g, &f, &f).unwrap();
        assert_eq!(f2.coefficient(&g.identity()), rational(1, 4));
        assert_eq!(f2.coefficient(&g.parse_word("ab").unwrap()), rational(1, 16));
        assert_eq!(f2.support_size(), 13);
        assert_eq!(f2.l1_norm(), integer(1));
    }

    #[test]
    fn integer_binomial_convolution() {
        let z = GroupBackend::free(1);
        let f = el(&z, &[("a", 1, 2), ("a'", 1, 2)]);
        let f2 = convolve(&z, &f, &f).unwrap();
        assert_eq!(f2, el(&z, &[("aa", 1, 4), ("1", 1, 2), ("a'a'", 1, 4)]));
    }

    #[test]
    fn involution_examples() {
        let g = GroupBackend::free(2);
        let f = witness_element(&g, &g.standard_generators().unwrap()).unwrap();
        assert_eq!(involution(&g, &f).unwrap(), f);
        let x = el(&g, &[("a", 2, 1), ("b", 3, 1)]);
        assert_eq!(involution(&g, &x).unwrap(), el(&g, &[("a'", 2, 1), ("b'", 3, 1)]));
        assert_eq!(involution(&g, &involution(&g, &x).unwrap()).unwrap(), x);
    }

    #[test]
    fn powers_of_point_masses() {
        let g = GroupBackend::free(2);
        let a = AlgebraElement::delta(&g, &g.parse_word("a").unwrap()).unwrap();
        assert_eq!(
            power(&g, &a, 5, 10).unwrap(),
            AlgebraElement::delta(&g, &g.parse_word("aaaaa").unwrap()).unwrap()
        );
        assert_eq!(spectral_radius_upper(&g, &a, 4, 10).unwrap(), Enclosure::from_integer(1));
    }

    #[test]
    fn witness_mass_and_radius() {
        let m = GroupBackend::free_product_cyclic(vec![2, 3]);
        let set = GeneratingSet::parse(&m, "a,ab,bba").unwrap();
        let f = witness_element(&m, &set).unwrap();
        assert!(f.terms().all(|(_, q)| q == rational(1, 3)));
        let p = power(&m, &f, 6, 1000).unwrap();
        assert_eq!(p.l1_norm(), integer(1));
        assert_eq!(spectral_radius_upper(&m, &f, 6, 1000).unwrap(), Enclosure::from_integer(1));
    }

    #[test]
    fn witness_preconditions() {
        let g = GroupBackend::free(2);
        let single = GeneratingSet::parse(&g, "a").unwrap();
        assert_eq!(witness_element(&g, &single), Err(AlgebraError::SetTooSmall(1)));
        let asym = GeneratingSet::parse(&g, "a,b").unwrap();
        assert_eq!(witness_element(&g, &asym), Err(AlgebraError::NotSymmetric));
    }

    #[test]
    fn support_budget_reports_progress() {
        let g = GroupBackend::free(2);
        let f = witness_element(&g, &g.standard_generators().unwrap()).unwrap();
        match powers(&g, &f, 10, 100) {
            Err(AlgebraError::SupportBudget { power, completed, .. }) => {
                assert_eq!(power, 4);
                assert_eq!(completed, 3);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn text_round_trip() {
        let g = GroupBackend::free(2);
        let x = el(&g, &[("ab'", -3, 7), ("1", 1, 2), ("b", 5, 1)]);
        let text = x.to_text(&g);
        assert_eq!(AlgebraElement::parse_text(&g, &text).unwrap(), x);
        assert!(AlgebraElement::parse_text(&g, "a 1/2\nb\n").is_err());
    }

    #[test]
    fn mixing_backends_fails() {
        let g = GroupBackend::free(2);
        let h = GroupBackend::free(2);
        let x = AlgebraElement::delta(&g, &g.identity()).unwrap();
        let y = AlgebraElement::delta(&h, &h.identity()).unwrap();
        assert!(convolve(&g, &x, &y).is_err());
        assert!(x.add(&y).is_err());
    }
}
