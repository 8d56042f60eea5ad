//! Exact rational helpers shared by every module: closed enclosures,
//! provenance tags, rational n-th root bracketing and text formatting.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Default width for root bracketing.
pub const ROOT_TOLERANCE: f64 = 1e-9;

/// Where a growth value (or a bound derived from one) came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    /// Closed-form value, exact.
    ExactClosedForm,
    /// Rigorous Collatz–Wielandt enclosure of a transfer-matrix Perron root.
    PerronEnclosure,
    /// Published constant taken as input, never recomputed.
    PaperConstant,
    /// Supplied by the caller; certificates built on it are conditional.
    UserAsserted,
    /// Finite-n data only. Never feeds a certificate.
    Empirical,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::ExactClosedForm => "exact-closed-form",
            Provenance::PerronEnclosure => "perron-enclosure",
            Provenance::PaperConstant => "paper-constant",
            Provenance::UserAsserted => "user-asserted",
            Provenance::Empirical => "empirical",
        }
    }

    /// Whether a value with this provenance may back a certificate.
    pub fn is_rigorous(self) -> bool {
        !matches!(self, Provenance::Empirical)
    }

    /// Certificates built on these values hold only if the input is true.
    pub fn is_conditional(self) -> bool {
        matches!(self, Provenance::PaperConstant | Provenance::UserAsserted)
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Provenance {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "exact-closed-form" => Provenance::ExactClosedForm,
            "perron-enclosure" => Provenance::PerronEnclosure,
            "paper-constant" => Provenance::PaperConstant,
            "user-asserted" => Provenance::UserAsserted,
            "empirical" => Provenance::Empirical,
            other => return Err(format!("unknown provenance '{other}'")),
        })
    }
}

/// A closed rational interval `[lo, hi]` known to contain some real value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Enclosure {
    lo: BigRational,
    hi: BigRational,
}

impl Enclosure {
    /// Panics if `lo > hi`.
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "enclosure with lo > hi");
        Enclosure { lo, hi }
    }

    pub fn exact(value: BigRational) -> Self {
        Enclosure {
            lo: value.clone(),
            hi: value,
        }
    }

    pub fn from_integer(value: i64) -> Self {
        Enclosure::exact(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Float containment with slack, for irrational targets.
    pub fn contains_f64(&self, x: f64) -> bool {
        self.lo_f64() <= x && x <= self.hi_f64()
    }

    pub fn lo_f64(&self) -> f64 {
        to_f64(&self.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        to_f64(&self.hi)
    }

    pub fn midpoint_f64(&self) -> f64 {
        0.5 * (self.lo_f64() + self.hi_f64())
    }

    /// Divides both ends by a positive rational.
    pub fn scale_down(&self, by: &BigRational) -> Enclosure {
        assert!(by.is_positive());
        Enclosure::new(&self.lo / by, &self.hi / by)
    }

    /// Tightest enclosure of `min(a, b)` from enclosures of `a` and `b`.
    pub fn min(&self, other: &Enclosure) -> Enclosure {
        Enclosure::new(
            self.lo.clone().min(other.lo.clone()),
            self.hi.clone().min(other.hi.clone()),
        )
    }

    /// Tightest enclosure of `max(a, b)`.
    pub fn max(&self, other: &Enclosure) -> Enclosure {
        Enclosure::new(
            self.lo.clone().max(other.lo.clone()),
            self.hi.clone().max(other.hi.clone()),
        )
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", fmt_rational(&self.lo))
        } else {
            write!(f, "[{}, {}]", fmt_rational(&self.lo), fmt_rational(&self.hi))
        }
    }
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

pub fn from_biguint(value: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(value.clone()))
}

/// Lossy conversion for reports. Huge values saturate to infinity.
pub fn to_f64(q: &BigRational) -> f64 {
    if let Some(x) = q.to_f64() {
        if x.is_finite() {
            return x;
        }
    }
    // Fall back to a scaled division so very large numerators and
    // denominators do not both overflow.
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift = (nb - db).clamp(-1000, 1000);
    let scaled = if shift > 0 {
        q / BigRational::from_integer(BigInt::one() << (shift as usize))
    } else {
        q * BigRational::from_integer(BigInt::one() << ((-shift) as usize))
    };
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
}

/// Exact rational from a finite float (every finite f64 is a dyadic rational).
pub fn from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// `a / b` as a reduced fraction string, `a` alone for integers.
pub fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `a`, `a/b`, or a finite decimal such as `2.9`.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| format!("bad numerator in '{s}'"))?;
        let d: BigInt = d.trim().parse().map_err(|_| format!("bad denominator in '{s}'"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in '{s}'"));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad decimal '{s}'"));
        }
        let n: BigInt = digits.parse().map_err(|_| format!("bad decimal '{s}'"))?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let q = BigRational::new(n, d);
        return Ok(if negative { -q } else { q });
    }
    let n: BigInt = s.parse().map_err(|_| format!("bad rational '{s}'"))?;
    Ok(BigRational::from_integer(n))
}

/// Exact integer n-th root of a nonnegative integer, if it is a perfect power.
fn exact_integer_root(x: &BigInt, n: u32) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let r = x.nth_root(n);
    if num_traits::pow(r.clone(), n as usize) == *x {
        Some(r)
    } else {
        None
    }
}

/// Rational enclosure of `q^(1/n)` for `q >= 0`, of width at most `tol`.
///
/// Exact (zero width) when `q` is a perfect n-th power of a rational.
pub fn nth_root_enclosure(q: &BigRational, n: u32, tol: f64) -> Enclosure {
    assert!(n >= 1, "root degree must be positive");
    assert!(!q.is_negative(), "root of a negative rational");
    if n == 1 || q.is_zero() || q.is_one() {
        return Enclosure::exact(q.clone());
    }
    if let (Some(a), Some(b)) = (
        exact_integer_root(q.numer(), n),
        exact_integer_root(q.denom(), n),
    ) {
        return Enclosure::exact(BigRational::new(a, b));
    }

    let pow = |x: &BigRational| num_traits::pow(x.clone(), n as usize);
    let tol_q = from_f64(tol);

    // Float guess, then verify and widen until the bracket is proven.
    let guess = to_f64(q).powf(1.0 / n as f64);
    let (mut lo, mut hi) = if guess.is_finite() && guess > 0.0 {
        let eps = (guess * 1e-12).max(f64::MIN_POSITIVE);
        (from_f64((guess - eps).max(0.0)), from_f64(guess + eps))
    } else {
        (BigRational::zero(), q.clone().max(BigRational::one()))
    };
    let mut widen = 2i32;
    while pow(&lo) > *q {
        let step = from_f64(guess.abs() * 10f64.powi(-12 + widen));
        lo = (&lo - step).max(BigRational::zero());
        widen += 1;
    }
    widen = 2;
    while pow(&hi) < *q {
        let step = from_f64(guess.abs().max(1.0) * 10f64.powi(-12 + widen));
        hi = &hi + step;
        widen += 1;
    }

    // Bisect on a dyadic grid to keep denominators small.
    let two = integer(2);
    while &hi - &lo > tol_q {
        let mid = (&lo + &hi) / &two;
        if pow(&mid) <= *q {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Enclosure::new(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_powers_are_exact() {
        let e = nth_root_enclosure(&rational(27, 64), 3, ROOT_TOLERANCE);
        assert!(e.is_exact());
        assert_eq!(e.lo(), &rational(3, 4));
        assert_eq!(nth_root_enclosure(&integer(1), 7, 1e-9), Enclosure::from_integer(1));
    }

    #[test]
    fn irrational_root_brackets() {
        let e = nth_root_enclosure(&integer(2), 2, 1e-12);
        assert!(e.width() <= from_f64(1e-12));
        let lo2 = e.lo() * e.lo();
        let hi2 = e.hi() * e.hi();
        assert!(lo2 <= integer(2) && integer(2) <= hi2);
        assert!(e.contains_f64(std::f64::consts::SQRT_2));
    }

    #[test]
    fn huge_rationals_still_bracket() {
        let big = BigRational::from_integer(num_traits::pow(BigInt::from(5), 60) + 1);
        let e = nth_root_enclosure(&big, 7, 1e-9);
        assert!(num_traits::pow(e.lo().clone(), 7) <= big);
        assert!(num_traits::pow(e.hi().clone(), 7) >= big);
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("2.9").unwrap(), rational(29, 10));
        assert_eq!(parse_rational("-3/6").unwrap(), rational(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), integer(7));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(fmt_rational(&rational(6, 4)), "3/2");
        assert_eq!(fmt_rational(&integer(-5)), "-5");
    }

    #[test]
    fn provenance_round_trips() {
        for p in [
            Provenance::ExactClosedForm,
            Provenance::PerronEnclosure,
            Provenance::PaperConstant,
            Provenance::UserAsserted,
            Provenance::Empirical,
        ] {
            assert_eq!(p.as_str().parse::<Provenance>().unwrap(), p);
        }
    }
}
