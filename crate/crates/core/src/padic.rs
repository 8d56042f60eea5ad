//! Hecke double-coset measures for `GL_n(Q_p)` with `K = GL_n(Z_p)`.
//!
//! For a signature `λ` the double coset `Kπ^λK` has measure
//! `p^{2⟨λ,ρ⟩} ν_n(1/p) / ν_λ(1/p)` with `ρ = ½(n-1, n-3, …, 1-n)`,
//! `ν_m(t) = ∏_{i=1}^m (1 + t + … + t^{i-1})` and `ν_λ` the product of
//! `ν_{m_i}` over the multiplicities `m_i` of the values in `λ` (zero
//! included). `λ` is first sorted into decreasing order (the measure is
//! invariant under permutations, which lie in `K`) and shifted by a
//! constant so its entries are nonnegative (central elements do not change
//! the double coset's measure).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::criteria::{double_coset_criterion, routes_agree, CriterionVerdict, Verdict};
use crate::exact::{from_biguint, integer, nth_root_enclosure, rational, Enclosure, Provenance, ROOT_TOLERANCE};

/// Primes are checked by trial division below this bound.
pub const PRIME_LIMIT: u64 = 1 << 31;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PadicError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = {0} is at or above the primality-check limit 2^31")]
    PrimeTooLarge(u64),
    #[error("signature is empty")]
    EmptySignature,
    #[error("rank must be at least {needed}, got {n}")]
    RankTooSmall { n: usize, needed: usize },
    #[error("signature has {len} entries but the rank is {n}")]
    RankMismatch { n: usize, len: usize },
    #[error("negative entry {0}; shift the signature first")]
    NegativeEntry(i64),
    #[error("t = 1 is not allowed")]
    UnitArgument,
    #[error("valuation sum {0} is not zero: the element is not in SL_n")]
    NotSpecialLinear(i64),
    #[error("internal error: measure {0} is not a positive integer")]
    NotInteger(String),
    #[error("internal error: inequality and double-coset routes disagree at n = {n}, p = {p}")]
    RoutesDisagree { n: usize, p: u64 },
    #[error("cannot parse signature: {0}")]
    Parse(String),
}

/// An integer signature `(λ_1, …, λ_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature(pub Vec<i64>);

impl Signature {
    /// `(k, 0, …, 0, -k)` of length `n ≥ 2`.
    pub fn extreme(n: usize, k: i64) -> Signature {
        let mut v = vec![0; n];
        v[0] = k;
        v[n - 1] -= k;
        Signature(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// Total valuation `Σ λ_i`, the valuation of the determinant.
    pub fn valuation(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Decreasing order, shifted so the smallest entry is zero.
    pub fn normalized(&self) -> Signature {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        let min = v.last().copied().unwrap_or(0);
        Signature(v.into_iter().map(|x| x - min).collect())
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Signature {
    type Err = PadicError;

    /// Comma-separated integers, optionally in parentheses: `1,0,-1`.
    fn from_str(s: &str) -> Result<Self, PadicError> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let v = inner
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<i64>()
                    .map_err(|_| PadicError::Parse(format!("bad entry '{}'", x.trim())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if v.is_empty() {
            return Err(PadicError::EmptySignature);
        }
        Ok(Signature(v))
    }
}

/// Deterministic trial division for `p < 2^31`.
pub fn check_prime(p: u64) -> Result<(), PadicError> {
    if p >= PRIME_LIMIT {
        return Err(PadicError::PrimeTooLarge(p));
    }
    if p < 2 {
        return Err(PadicError::NotPrime(p));
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return Err(PadicError::NotPrime(p));
        }
        d += 1;
    }
    Ok(())
}

/// `ν_m(t) = ∏_{i=1}^m (1 + t + … + t^{i-1})`, the cancelled form of
/// `(1-t)^{-m} ∏ (1-t^i)`.
pub fn nu_m(m: usize, t: &BigRational) -> Result<BigRational, PadicError> {
    if t.is_one() {
        return Err(PadicError::UnitArgument);
    }
    let mut product = BigRational::one();
    let mut partial = BigRational::zero();
    let mut power = BigRational::one();
    for _ in 0..m {
        partial += &power;
        power *= t;
        product *= &partial;
    }
    Ok(product)
}

/// `ν_λ(t) = ∏_i ν_{m_i}(t)` over the multiplicities of each value `i ≥ 0`.
pub fn nu_lambda(lambda: &Signature, t: &BigRational) -> Result<BigRational, PadicError> {
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for &x in lambda.entries() {
        if x < 0 {
            return Err(PadicError::NegativeEntry(x));
        }
        *counts.entry(x).or_default() += 1;
    }
    counts
        .values()
        .try_fold(BigRational::one(), |acc, &m| Ok(acc * nu_m(m, t)?))
}

/// `⟨λ, ρ⟩` with `ρ_j = (n + 1 - 2j)/2`, in the given entry order.
pub fn inner_rho(lambda: &Signature) -> BigRational {
    let n = lambda.len() as i64;
    let twice: i64 = lambda
        .entries()
        .iter()
        .enumerate()
        .map(|(j, &x)| x * (n - 1 - 2 * j as i64))
        .sum();
    rational(twice, 2)
}

/// A double-coset measure, checked to be a positive integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeMeasure {
    pub n: usize,
    pub p: u64,
    pub lambda: Signature,
    /// The sorted, shifted signature the formula was evaluated on.
    pub normalized: Signature,
    pub value: BigUint,
    pub notes: Vec<String>,
}

impl HeckeMeasure {
    pub fn as_rational(&self) -> BigRational {
        from_biguint(&self.value)
    }
}

fn inverse_prime(p: u64) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(p))
}

/// `μ(Kπ^λK)` for `GL_n(Q_p)`.
pub fn hecke_measure(n: usize, p: u64, lambda: &Signature) -> Result<HeckeMeasure, PadicError> {
    check_prime(p)?;
    if lambda.is_empty() {
        return Err(PadicError::EmptySignature);
    }
    if lambda.len() != n {
        return Err(PadicError::RankMismatch { n, len: lambda.len() });
    }
    let normalized = lambda.normalized();
    let t = inverse_prime(p);
    let twice_rho = (inner_rho(&normalized) * integer(2)).to_integer();
    let exponent = twice_rho
        .to_u32()
        .expect("2<λ,ρ> is a nonnegative machine-size integer for dominant λ");
    let scale = BigInt::from(p).pow(exponent);
    let value = BigRational::from_integer(scale) * nu_m(n, &t)? / nu_lambda(&normalized, &t)?;
    if !value.is_integer() || !value.is_positive() {
        return Err(PadicError::NotInteger(value.to_string()));
    }
    let value = value
        .to_integer()
        .to_biguint()
        .expect("positive integer");
    Ok(HeckeMeasure {
        n,
        p,
        lambda: lambda.clone(),
        normalized,
        value,
        notes: Vec::new(),
    })
}

/// `p^{2k(n-1)}(1-p^{-(n-1)})(1-p^{-n})/(1-p^{-1})²`, the measure at
/// `λ = k·(1, 0, …, 0, -1)` for `n ≥ 3` (for `n = 2` the middle
/// multiplicity vanishes and the formula still holds).
pub fn extreme_closed_form(n: usize, p: u64, k: u32) -> BigRational {
    let t = inverse_prime(p);
    let one = BigRational::one();
    let pow_t = |e: usize| Pow::pow(&t, e as u32);
    let scale = BigRational::from_integer(BigInt::from(p).pow(2 * k * (n as u32 - 1)));
    scale * (&one - pow_t(n - 1)) * (&one - pow_t(n)) / ((&one - &t) * (&one - &t))
}

/// `p^{2(n-1)}`, the lower bound `lim_k μ(Kπ^{kλ}K)^{1/k}` for
/// `λ = (1, 0, …, 0, -1)`.
pub fn gl_growth_lower(n: usize, p: u64) -> Result<BigUint, PadicError> {
    if n < 2 {
        return Err(PadicError::RankTooSmall { n, needed: 2 });
    }
    check_prime(p)?;
    Ok(BigUint::from(p).pow(2 * (n as u32 - 1)))
}

/// `μ(Kπ^{kλ}K)^{1/k}` for `k = 1..=k_max`, for inspection.
pub fn gl_growth_sequence(n: usize, p: u64, k_max: u32) -> Result<Vec<Enclosure>, PadicError> {
    (1..=k_max)
        .map(|k| {
            let mu = hecke_measure(n, p, &Signature::extreme(n, k as i64))?;
            Ok(nth_root_enclosure(&mu.as_rational(), k, ROOT_TOLERANCE))
        })
        .collect()
}

/// `2(1-1/p)² - (1-p^{-(n-1)})(1-p^{-n})`.
pub fn inequality_value(n: usize, p: u64) -> BigRational {
    let t = inverse_prime(p);
    let one = BigRational::one();
    let a = &one - &t;
    integer(2) * &a * &a
        - (&one - Pow::pow(&t, n as u32 - 1)) * (&one - Pow::pow(&t, n as u32))
}

/// Both routes to non-Hermitianity of `GL_n(Q_p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlVerdict {
    pub n: usize,
    pub p: u64,
    pub mu: HeckeMeasure,
    pub omega_lower: BigUint,
    pub inequality: BigRational,
    pub verdict: CriterionVerdict,
}

/// Evaluates the inequality and the double-coset criterion with
/// `μ = μ(Kπ^λK)`, `λ = (1, 0, …, 0, -1)`, `ω ≥ p^{2(n-1)}`; the two must
/// agree.
pub fn gl_criterion(n: usize, p: u64) -> Result<GlVerdict, PadicError> {
    let omega_lower = gl_growth_lower(n, p)?;
    let mu = hecke_measure(n, p, &Signature::extreme(n, 1))?;
    let inequality = inequality_value(n, p);
    let mut verdict = double_coset_criterion(
        &mu.as_rational(),
        &Enclosure::exact(from_biguint(&omega_lower)),
        Provenance::ExactClosedForm,
        true,
        "K contains all permutation matrices, so Kπ^λK = Kπ^{-λ}K",
    );
    verdict.criterion = "gl-double-coset";
    let mut by_inequality = verdict.clone();
    by_inequality.verdict = Verdict::compare(&inequality, &BigRational::zero());
    by_inequality.margin = inequality.clone();
    if !routes_agree(&verdict, &by_inequality) {
        return Err(PadicError::RoutesDisagree { n, p });
    }
    verdict
        .notes
        .push(format!("inequality value {inequality}"));
    Ok(GlVerdict {
        n,
        p,
        mu,
        omega_lower,
        inequality,
        verdict,
    })
}

/// One row of an inequality scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub n: usize,
    pub p: u64,
    pub value: BigRational,
    pub certified: bool,
}

/// Exact signs of the inequality on a grid; every `p` must be prime.
pub fn inequality_scan(ns: &[usize], ps: &[u64]) -> Result<Vec<ScanRow>, PadicError> {
    for &p in ps {
        check_prime(p)?;
    }
    let mut rows = Vec::with_capacity(ns.len() * ps.len());
    for &n in ns {
        if n < 2 {
            return Err(PadicError::RankTooSmall { n, needed: 2 });
        }
        for &p in ps {
            let value = inequality_value(n, p);
            rows.push(ScanRow {
                n,
                p,
                certified: value.is_positive(),
                value,
            });
        }
    }
    Ok(rows)
}

/// The small cases certified individually: `GL_2(Q_2)`, `GL_2(Q_3)`,
/// `GL_3(Q_3)`.
pub const SPECIAL_CASES: [(usize, u64); 3] = [(2, 2), (2, 3), (3, 3)];

/// The measure in `SL_n(Q_p)` with `K̃ = SL_n(Z_p)`, equal to the
/// `GL_n` measure because every `GL_n(Z_p)`-coset meets `SL_n`.
pub fn sl_measure(n: usize, p: u64, lambda: &Signature) -> Result<HeckeMeasure, PadicError> {
    let v = lambda.valuation();
    if v != 0 {
        return Err(PadicError::NotSpecialLinear(v));
    }
    let mut m = hecke_measure(n, p, lambda)?;
    m.notes
        .push("SL_n coset count equals the GL_n coset count for determinant-one diagonals".into());
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(v: &[i64]) -> Signature {
        Signature(v.to_vec())
    }

    #[test]
    fn primes() {
        assert!(check_prime(2).is_ok() && check_prime(13).is_ok() && check_prime(2_147_483_647).is_ok());
        assert_eq!(check_prime(1), Err(PadicError::NotPrime(1)));
        assert_eq!(check_prime(9), Err(PadicError::NotPrime(9)));
        assert!(check_prime(65_521).is_ok());
        assert_eq!(check_prime(1 << 31), Err(PadicError::PrimeTooLarge(1 << 31)));
    }

    #[test]
    fn nu_values() {
        let t = rational(1, 5);
        assert_eq!(nu_m(0, &t).unwrap(), integer(1));
        assert_eq!(nu_m(1, &t).unwrap(), integer(1));
        assert_eq!(nu_m(2, &t).unwrap(), rational(6, 5));
        assert_eq!(nu_lambda(&sig(&[0, 0]), &t).unwrap(), rational(6, 5));
        assert_eq!(nu_lambda(&sig(&[2, 1, 0]), &t).unwrap(), integer(1));
        assert_eq!(nu_lambda(&sig(&[4, 2, 2, 2, 0]), &t).unwrap(), nu_m(3, &t).unwrap());
        assert_eq!(nu_lambda(&sig(&[1, -1]), &t), Err(PadicError::NegativeEntry(-1)));
        assert_eq!(nu_m(2, &integer(1)), Err(PadicError::UnitArgument));
        // Uncancelled form away from t = 1.
        for m in 0..6 {
            let t = rational(2, 7);
            let one = BigRational::one();
            let direct = (1..=m).fold(one.clone(), |acc, i| acc * (&one - Pow::pow(&t, i as u32)))
                / Pow::pow(&(&one - &t), m as u32);
            assert_eq!(nu_m(m, &t).unwrap(), direct);
        }
    }

    #[test]
    fn rho_pairing() {
        for n in 2..8 {
            assert_eq!(inner_rho(&Signature::extreme(n, 1)), integer(n as i64 - 1));
            assert_eq!(inner_rho(&Signature(vec![4; n])), integer(0));
        }
        assert_eq!(inner_rho(&sig(&[1, 0])), rational(1, 2));
    }

    #[test]
    fn measures() {
        assert_eq!(hecke_measure(2, 5, &sig(&[1, -1])).unwrap().value, BigUint::from(30u8));
        assert_eq!(hecke_measure(2, 2, &sig(&[1, -1])).unwrap().value, BigUint::from(6u8));
        for n in 1..5 {
            for p in [2, 3, 5] {
                assert_eq!(hecke_measure(n, p, &Signature(vec![0; n])).unwrap().value, BigUint::one());
            }
        }
        // Single-step cosets in rank 2 count the p + 1 lines.
        assert_eq!(hecke_measure(2, 7, &sig(&[1, 0])).unwrap().value, BigUint::from(8u8));
        assert_eq!(hecke_measure(2, 4, &sig(&[1, 0])), Err(PadicError::NotPrime(4)));
        assert!(matches!(hecke_measure(3, 5, &sig(&[1, 0])), Err(PadicError::RankMismatch { .. })));
    }

    #[test]
    fn closed_form_agrees() {
        for n in 2..=6 {
            for p in [2, 3, 5] {
                for k in 1..=6 {
                    let m = hecke_measure(n, p, &Signature::extreme(n, k as i64)).unwrap();
                    assert_eq!(m.as_rational(), extreme_closed_form(n, p, k), "n={n} p={p} k={k}");
                }
            }
        }
    }

    #[test]
    fn growth_lower_and_sequence() {
        assert_eq!(gl_growth_lower(2, 5).unwrap(), BigUint::from(25u8));
        assert_eq!(gl_growth_lower(3, 5).unwrap(), BigUint::from(625u16));
        assert_eq!(gl_growth_lower(2, 2).unwrap(), BigUint::from(4u8));
        assert!(gl_growth_lower(1, 5).is_err());
        let seq = gl_growth_sequence(2, 5, 30).unwrap();
        assert!(seq.iter().all(|e| e.lo_f64() >= 25.0 - 1e-6));
        // μ_k = 25^k · 6/5.
        assert!((seq[29].midpoint_f64() - 25.0 * 1.2f64.powf(1.0 / 30.0)).abs() < 1e-6);
    }

    #[test]
    fn criterion_examples() {
        let v = gl_criterion(2, 5).unwrap();
        assert_eq!(v.inequality, rational(64, 125));
        assert_eq!(v.mu.value, BigUint::from(30u8));
        assert_eq!(v.verdict.verdict, Verdict::Certified);
        let v = gl_criterion(2, 2).unwrap();
        assert_eq!(v.inequality, rational(1, 8));
        assert_eq!(v.verdict.verdict, Verdict::Certified);
        assert_eq!(gl_criterion(3, 3).unwrap().inequality, rational(8, 243));
        assert_eq!(gl_criterion(2, 3).unwrap().inequality, rational(8, 27));
        assert_eq!(gl_criterion(10, 2).unwrap().verdict.verdict, Verdict::Inconclusive);
        assert_eq!(gl_criterion(4, 3).unwrap().verdict.verdict, Verdict::Inconclusive);
        assert!(inequality_value(4, 3).is_negative());
    }

    #[test]
    fn scan() {
        let ns: Vec<usize> = (2..=10).collect();
        let rows = inequality_scan(&ns, &[5, 7, 11, 13]).unwrap();
        assert_eq!(rows.len(), 36);
        assert!(rows.iter().all(|r| r.certified));
        for (n, p) in SPECIAL_CASES {
            assert!(inequality_value(n, p).is_positive());
        }
        assert_eq!(inequality_scan(&ns, &[6]), Err(PadicError::NotPrime(6)));
    }

    #[test]
    fn special_linear() {
        assert_eq!(sl_measure(2, 5, &sig(&[1, -1])).unwrap().value, BigUint::from(30u8));
        assert_eq!(sl_measure(2, 5, &sig(&[1, 0])), Err(PadicError::NotSpecialLinear(1)));
        let sl = sl_measure(3, 5, &sig(&[2, -1, -1])).unwrap();
        assert_eq!(sl.value, hecke_measure(3, 5, &sig(&[2, -1, -1])).unwrap().value);
    }

    #[test]
    fn parsing() {
        assert_eq!("1,0,-1".parse::<Signature>().unwrap(), sig(&[1, 0, -1]));
        assert_eq!("(2, -1, -1)".parse::<Signature>().unwrap(), sig(&[2, -1, -1]));
        assert!("1,x".parse::<Signature>().is_err());
        assert_eq!(sig(&[1, 0, -1]).to_string(), "1,0,-1");
    }
}
