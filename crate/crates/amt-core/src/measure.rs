//! Exact interval measures.
//!
//! A measure is the multiplicative size of an interval: the frequency ratio
//! between its endpoints. Three representations are kept apart so arithmetic
//! stays exact wherever exactness is possible:
//!
//! - [`Measure::Pow2`]: a symbolic power of two `2^q` with rational exponent
//!   `q` — the representation of everything on the equal-tempered grids;
//! - [`Measure::Ratio`]: a positive rational in lowest terms that is *not*
//!   itself a power of two (any pure power of two normalizes to `Pow2`);
//! - [`Measure::Approx`]: an explicitly approximate positive real.
//!
//! Equality and ordering compare the represented real values. Comparisons
//! between the two exact forms are decided by integer arithmetic (never
//! floats); comparisons involving an approximate value use a relative
//! tolerance of [`APPROX_REL_TOL`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the kernel.
pub type Rat = BigRational;

/// Relative tolerance for comparisons that involve an approximate value.
pub const APPROX_REL_TOL: f64 = 1e-12;

/// Build a rational from a numerator/denominator pair.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Build a rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `true` when the two positive reals agree within [`APPROX_REL_TOL`] relative.
pub fn approx_eq(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= APPROX_REL_TOL * a.abs().max(b.abs())
}

/// Exact `2^e` for an integer exponent of either sign.
fn pow2_rat(e: &BigInt) -> Rat {
    let mag = e.magnitude();
    let exp = mag
        .to_u32()
        .expect("power-of-two exponent magnitude exceeds supported range");
    let p = BigInt::from(2u8).pow(exp);
    if e.is_negative() {
        Rat::new(BigInt::one(), p)
    } else {
        Rat::from_integer(p)
    }
}

/// Exact `r^e` for an integer exponent of either sign (`r` must be nonzero).
fn pow_rat(r: &Rat, e: &BigInt) -> Rat {
    let exp = e
        .magnitude()
        .to_u32()
        .expect("rational power exponent magnitude exceeds supported range");
    let n = r.numer().pow(exp);
    let d = r.denom().pow(exp);
    if e.is_negative() {
        Rat::new(d, n)
    } else {
        Rat::new(n, d)
    }
}

/// If `r` is an exact integer power of two, return that exponent.
fn pure_pow2_exponent(r: &Rat) -> Option<BigInt> {
    fn log2_exact(x: &BigInt) -> Option<u64> {
        let mag = x.magnitude();
        if mag.count_ones() == 1 {
            Some(mag.trailing_zeros().unwrap_or(0))
        } else {
            None
        }
    }
    let n = log2_exact(r.numer())?;
    let d = log2_exact(r.denom())?;
    Some(BigInt::from(n) - BigInt::from(d))
}

/// The multiplicative size of an interval. See the module docs.
#[derive(Debug, Clone)]
pub enum Measure {
    /// `2^q` with `q` a reduced rational exponent.
    Pow2(Rat),
    /// A positive rational in lowest terms, never a pure power of two.
    Ratio(Rat),
    /// An explicitly approximate positive real.
    Approx(f64),
}

impl Measure {
    /// The unit measure `2^0 = 1`.
    pub fn one() -> Self {
        Measure::Pow2(Rat::zero())
    }

    /// The octave measure `2^1 = 2`.
    pub fn octave() -> Self {
        Measure::Pow2(Rat::one())
    }

    /// Symbolic power of two with the given exponent.
    pub fn pow2(q: Rat) -> Self {
        Measure::Pow2(q)
    }

    /// Convenience: `2^(n/d)`.
    pub fn pow2_frac(n: i64, d: i64) -> Self {
        Measure::Pow2(rat(n, d))
    }

    /// Exact positive rational, normalized: pure powers of two become [`Measure::Pow2`].
    ///
    /// # Panics
    /// If `r` is not strictly positive.
    pub fn ratio(r: Rat) -> Self {
        assert!(r.is_positive(), "a measure must be strictly positive");
        match pure_pow2_exponent(&r) {
            Some(e) => Measure::Pow2(Rat::from_integer(e)),
            None => Measure::Ratio(r),
        }
    }

    /// Convenience: the exact rational `n/d`.
    pub fn ratio_frac(n: i64, d: i64) -> Self {
        Self::ratio(rat(n, d))
    }

    /// Explicitly approximate positive real.
    ///
    /// # Panics
    /// If `x` is not strictly positive and finite.
    pub fn approx(x: f64) -> Self {
        assert!(
            x.is_finite() && x > 0.0,
            "an approximate measure must be a strictly positive finite real"
        );
        Measure::Approx(x)
    }

    /// The represented value as a float (projection, not the source of truth).
    pub fn to_float(&self) -> f64 {
        match self {
            Measure::Pow2(q) => {
                let e = q.to_f64().expect("exponent out of float range");
                e.exp2()
            }
            Measure::Ratio(r) => r.to_f64().expect("ratio out of float range"),
            Measure::Approx(x) => *x,
        }
    }

    /// Product of two measures. Exact whenever both operands are exact and
    /// the product has an exact representation; otherwise approximate.
    pub fn compose(&self, other: &Measure) -> Measure {
        use Measure::*;
        match (self, other) {
            (Pow2(a), Pow2(b)) => Pow2(a + b),
            (Ratio(a), Ratio(b)) => Measure::ratio(a * b),
            (Pow2(q), Ratio(r)) | (Ratio(r), Pow2(q)) => {
                if q.is_integer() {
                    Measure::ratio(r * pow2_rat(q.numer()))
                } else {
                    Approx(self.to_float() * other.to_float())
                }
            }
            _ => Approx(self.to_float() * other.to_float()),
        }
    }

    /// Multiplicative inverse (the measure of the converted interval).
    pub fn invert(&self) -> Measure {
        match self {
            Measure::Pow2(q) => Measure::Pow2(-q),
            Measure::Ratio(r) => Measure::Ratio(r.recip()),
            Measure::Approx(x) => Measure::Approx(1.0 / x),
        }
    }

    /// Exact exponentiation by a rational.
    ///
    /// Always exact on powers of two. On ratios and approximate values only
    /// integer exponents are representable; other exponents report
    /// [`Error::NonExactPower`].
    pub fn rational_pow(&self, w: &Rat) -> Result<Measure> {
        match self {
            Measure::Pow2(q) => Ok(Measure::Pow2(q * w)),
            Measure::Ratio(r) => {
                if w.is_integer() {
                    Ok(Measure::ratio(pow_rat(r, w.numer())))
                } else {
                    Err(Error::NonExactPower)
                }
            }
            Measure::Approx(x) => {
                if w.is_integer() {
                    let e = w
                        .numer()
                        .to_i32()
                        .ok_or_else(|| Error::DomainError("exponent out of range".into()))?;
                    Ok(Measure::Approx(x.powi(e)))
                } else {
                    Err(Error::NonExactPower)
                }
            }
        }
    }

    /// Trichotomous comparison of represented values.
    ///
    /// Exact forms are compared by integer arithmetic; any approximate
    /// operand falls back to floats with [`APPROX_REL_TOL`] equality.
    pub fn compare(&self, other: &Measure) -> Ordering {
        use Measure::*;
        match (self, other) {
            (Pow2(a), Pow2(b)) => a.cmp(b),
            (Ratio(a), Ratio(b)) => a.cmp(b),
            (Pow2(q), Ratio(r)) => cmp_pow2_ratio(q, r),
            (Ratio(r), Pow2(q)) => cmp_pow2_ratio(q, r).reverse(),
            _ => {
                let (x, y) = (self.to_float(), other.to_float());
                if approx_eq(x, y) {
                    Ordering::Equal
                } else {
                    x.partial_cmp(&y).expect("measures are finite")
                }
            }
        }
    }

    /// The exponent in semitone units: `12·q` for `2^q`, absent otherwise.
    pub fn semitone_exponent(&self) -> Option<Rat> {
        match self {
            Measure::Pow2(q) => Some(q * rat_int(12)),
            _ => None,
        }
    }

    /// A measure `h` with `h·h` equal to this one, as produced by the point
    /// splitting an interval into two congruent halves. Exact on powers of
    /// two; a float square root otherwise.
    pub fn midsound_measure(&self) -> Measure {
        match self {
            Measure::Pow2(q) => Measure::Pow2(q / rat_int(2)),
            _ => Measure::Approx(self.to_float().sqrt()),
        }
    }

    /// Least `n ≥ 1` with `self ≤ other^n`. Both measures must exceed 1.
    pub fn archimedean_witness(&self, other: &Measure) -> Result<u64> {
        let one = Measure::one();
        if self.compare(&one) != Ordering::Greater || other.compare(&one) != Ordering::Greater {
            return Err(Error::DomainError(
                "growth witness requires both measures to exceed the unit".into(),
            ));
        }
        if let (Measure::Pow2(a), Measure::Pow2(b)) = (self, other) {
            // Least n with a ≤ n·b, i.e. n = ceil(a/b), clamped to ≥ 1.
            let q = a / b;
            let n = q.ceil().to_integer();
            let n = n.to_u64().unwrap_or(u64::MAX).max(1);
            return Ok(n);
        }
        let mut acc = other.clone();
        let mut n: u64 = 1;
        while self.compare(&acc) == Ordering::Greater {
            acc = acc.compose(other);
            n += 1;
            if n > 10_000_000 {
                return Err(Error::DomainError(
                    "growth witness search exceeded the iteration budget".into(),
                ));
            }
        }
        Ok(n)
    }
}

/// Compare `2^q` against the positive rational `r` exactly.
///
/// With `q = p/s` in lowest terms (`s ≥ 1`), both sides are raised to the
/// `s`-th power — monotone on positive reals — leaving `2^p` versus `r^s`,
/// which integer arithmetic decides.
fn cmp_pow2_ratio(q: &Rat, r: &Rat) -> Ordering {
    let p = q.numer();
    let s = q.denom();
    if p.magnitude().to_u64().map_or(true, |m| m > 1_000_000) {
        // Out of reach for exact powering; the float projection decides.
        let x = q.to_f64().map(f64::exp2).unwrap_or(f64::INFINITY);
        let y = r.to_f64().unwrap_or(f64::INFINITY);
        return x.partial_cmp(&y).expect("finite");
    }
    let lhs = pow2_rat(p);
    let rhs = pow_rat(r, s);
    lhs.cmp(&rhs)
}

impl PartialEq for Measure {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl Eq for Measure {}

impl PartialOrd for Measure {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.compare(other))
    }
}

impl Ord for Measure {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measure::Pow2(q) => {
                if q.is_integer() {
                    write!(f, "2^{}", q.numer())
                } else {
                    write!(f, "2^{}/{}", q.numer(), q.denom())
                }
            }
            Measure::Ratio(r) => write!(f, "{}:{}", r.numer(), r.denom()),
            Measure::Approx(x) => write!(f, "{x}"),
        }
    }
}

impl FromStr for Measure {
    type Err = Error;

    /// Accepts the three rendered forms: `2^p/q` (or `2^n`), `n:d`, and a
    /// positive decimal.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(exp) = s.strip_prefix("2^") {
            let q = parse_rat(exp)?;
            return Ok(Measure::Pow2(q));
        }
        if let Some((n, d)) = s.split_once(':') {
            let n: BigInt = n
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("invalid ratio numerator: {n:?}")))?;
            let d: BigInt = d
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("invalid ratio denominator: {d:?}")))?;
            if n.is_positive() && d.is_positive() {
                return Ok(Measure::ratio(Rat::new(n, d)));
            }
            return Err(Error::Parse("ratio parts must be positive integers".into()));
        }
        let x: f64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("invalid measure: {s:?}")))?;
        if x.is_finite() && x > 0.0 {
            Ok(Measure::Approx(x))
        } else {
            Err(Error::Parse("a measure must be positive and finite".into()))
        }
    }
}

/// Parse a rational written as `p/q` or an integer, with optional sign.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n
        .parse()
        .map_err(|_| Error::Parse(format!("invalid numerator: {n:?}")))?;
    let d: BigInt = d
        .parse()
        .map_err(|_| Error::Parse(format!("invalid denominator: {d:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Rat::new(n, d))
}

/// An interval up to congruence: fully described by its measure.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FreeInterval(pub Measure);

impl From<Measure> for FreeInterval {
    fn from(m: Measure) -> Self {
        FreeInterval(m)
    }
}

/// The calibration pinning frequencies: the positive frequency (Hz) assigned
/// to the base sound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyBase(f64);

impl FrequencyBase {
    /// # Panics
    /// If `hz` is not strictly positive and finite.
    pub fn new(hz: f64) -> Self {
        assert!(hz.is_finite() && hz > 0.0, "base frequency must be positive");
        FrequencyBase(hz)
    }

    pub fn hz(&self) -> f64 {
        self.0
    }
}

/// Frequency of the pitch lying at `pitch_ratio` above the base.
pub fn frequency_of(pitch_ratio: &Measure, base: &FrequencyBase) -> f64 {
    base.hz() * pitch_ratio.to_float()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponents_add_under_composition() {
        let a = Measure::pow2_frac(1, 12);
        let b = a.compose(&a);
        assert_eq!(b, Measure::pow2_frac(1, 6));
        assert_eq!(b.semitone_exponent(), Some(rat_int(2)));
    }

    #[test]
    fn fifth_plus_fourth_is_an_octave() {
        let fifth = Measure::pow2_frac(7, 12);
        let fourth = Measure::pow2_frac(5, 12);
        assert_eq!(fifth.compose(&fourth), Measure::octave());
    }

    #[test]
    fn ratio_composition_stays_exact() {
        let a = Measure::ratio_frac(9, 8);
        let b = Measure::ratio_frac(10, 9);
        assert_eq!(a.compose(&b), Measure::ratio_frac(5, 4));
    }

    #[test]
    fn pure_power_of_two_ratios_normalize() {
        assert_eq!(Measure::ratio_frac(4, 1), Measure::pow2(rat_int(2)));
        assert_eq!(Measure::ratio_frac(1, 2), Measure::pow2(rat_int(-1)));
        assert_eq!(Measure::ratio_frac(1, 1), Measure::one());
        // 9/8 is not a pure power of two and must stay a ratio.
        assert!(matches!(Measure::ratio_frac(9, 8), Measure::Ratio(_)));
    }

    #[test]
    fn inversion_gives_group_inverses() {
        for m in [
            Measure::octave(),
            Measure::ratio_frac(3, 2),
            Measure::pow2_frac(-5, 12),
        ] {
            assert_eq!(m.compose(&m.invert()), Measure::one());
        }
        assert_eq!(Measure::octave().invert(), Measure::pow2(rat_int(-1)));
        assert_eq!(Measure::ratio_frac(3, 2).invert(), Measure::ratio_frac(2, 3));
        assert_eq!(Measure::one().invert(), Measure::one());
    }

    #[test]
    fn rational_powers_on_the_exponent_grid() {
        let semitone = Measure::pow2_frac(1, 12);
        assert_eq!(
            semitone.rational_pow(&rat(3, 2)).unwrap(),
            Measure::pow2_frac(1, 8)
        );
        assert_eq!(
            Measure::octave().rational_pow(&rat(1, 2)).unwrap(),
            Measure::pow2_frac(1, 2)
        );
        assert_eq!(
            Measure::ratio_frac(9, 8).rational_pow(&rat_int(2)).unwrap(),
            Measure::ratio_frac(81, 64)
        );
        assert_eq!(
            Measure::ratio_frac(3, 2).rational_pow(&rat(1, 2)),
            Err(Error::NonExactPower)
        );
        assert_eq!(
            Measure::approx(1.5).rational_pow(&rat(1, 2)),
            Err(Error::NonExactPower)
        );
    }

    #[test]
    fn ordering_crosses_representations_exactly() {
        // 3/2 against 2^(7/12): after raising both to the 12th power the
        // sides are 3^12 = 531441 and 2^19 = 524288, so the ratio is greater.
        assert_eq!(
            Measure::ratio_frac(3, 2).compare(&Measure::pow2_frac(7, 12)),
            Ordering::Greater
        );
        assert_eq!(
            Measure::pow2_frac(1, 12).compare(&Measure::pow2_frac(1, 6)),
            Ordering::Less
        );
        assert_eq!(Measure::one().compare(&Measure::ratio_frac(1, 1)), Ordering::Equal);
        // And the reverse orientation agrees.
        assert_eq!(
            Measure::pow2_frac(7, 12).compare(&Measure::ratio_frac(3, 2)),
            Ordering::Less
        );
    }

    #[test]
    fn approximate_comparisons_use_relative_tolerance() {
        let a = Measure::approx(1.5);
        let b = Measure::ratio_frac(3, 2);
        assert_eq!(a.compare(&b), Ordering::Equal);
        let slightly_more = Measure::approx(1.5 * (1.0 + 1e-9));
        assert_eq!(slightly_more.compare(&b), Ordering::Greater);
        let within_tolerance = Measure::approx(1.5 * (1.0 + 1e-14));
        assert_eq!(within_tolerance.compare(&b), Ordering::Equal);
    }

    #[test]
    fn semitone_exponents() {
        assert_eq!(
            Measure::pow2_frac(7, 12).semitone_exponent(),
            Some(rat_int(7))
        );
        assert_eq!(Measure::ratio_frac(3, 2).semitone_exponent(), None);
        assert_eq!(
            Measure::pow2_frac(1, 8).semitone_exponent(),
            Some(rat(3, 2))
        );
    }

    #[test]
    fn frequencies_scale_multiplicatively() {
        let base = FrequencyBase::new(220.0);
        assert!(approx_eq(frequency_of(&Measure::octave(), &base), 440.0));
        let c = FrequencyBase::new(261.6256);
        assert!(approx_eq(frequency_of(&Measure::one(), &c), 261.6256));
        // From the pitch nine semitones above a base of 440·2^(-9/12).
        let base = FrequencyBase::new(261.6255653);
        let nine_semitones = Measure::pow2_frac(9, 12);
        assert!((frequency_of(&nine_semitones, &base) - 440.0).abs() < 1e-6);
    }

    #[test]
    fn midsound_splits_exactly_or_approximately() {
        assert_eq!(Measure::octave().midsound_measure(), Measure::pow2_frac(1, 2));
        assert_eq!(
            Measure::pow2_frac(1, 6).midsound_measure(),
            Measure::pow2_frac(1, 12)
        );
        let half = Measure::ratio_frac(9, 4).midsound_measure();
        assert!(matches!(half, Measure::Approx(_)));
        assert!(approx_eq(half.to_float(), 1.5));
    }

    #[test]
    fn growth_witnesses() {
        assert_eq!(
            Measure::ratio_frac(8, 1)
                .archimedean_witness(&Measure::octave())
                .unwrap(),
            3
        );
        assert_eq!(
            Measure::pow2_frac(7, 12)
                .archimedean_witness(&Measure::pow2_frac(1, 12))
                .unwrap(),
            7
        );
        // 3/2 needs eight upward semitones: 2^(7/12) < 3/2 ≤ 2^(8/12).
        assert_eq!(
            Measure::ratio_frac(3, 2)
                .archimedean_witness(&Measure::pow2_frac(1, 12))
                .unwrap(),
            8
        );
        assert!(Measure::one()
            .archimedean_witness(&Measure::octave())
            .is_err());
        assert!(Measure::octave()
            .archimedean_witness(&Measure::one())
            .is_err());
    }

    #[test]
    fn rendering_and_parsing_round_trip() {
        let cases = [
            Measure::pow2_frac(7, 12),
            Measure::pow2(rat_int(1)),
            Measure::pow2_frac(-5, 12),
            Measure::ratio_frac(3, 2),
            Measure::approx(1.059463),
        ];
        for m in cases {
            let text = m.to_string();
            let back: Measure = text.parse().unwrap();
            assert_eq!(back, m, "round trip failed for {text}");
        }
        assert_eq!("2^7/12".parse::<Measure>().unwrap(), Measure::pow2_frac(7, 12));
        assert_eq!("3:2".parse::<Measure>().unwrap(), Measure::ratio_frac(3, 2));
        assert!("0:5".parse::<Measure>().is_err());
        assert!("-1.5".parse::<Measure>().is_err());
        assert!("2^x".parse::<Measure>().is_err());
    }

    #[test]
    fn float_projection_tracks_exponents() {
        let m = Measure::pow2_frac(19, 12);
        let expected = (19.0_f64 / 12.0).exp2();
        assert!(approx_eq(m.to_float(), expected));
    }
}
