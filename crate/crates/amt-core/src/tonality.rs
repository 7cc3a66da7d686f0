//! Pitch classes, the octave-equivalence relation, and octave decomposition.
//!
//! A pitch class is identified by the measure of the interval from a fixed
//! base sound to it. Two classes are *equitonal* when that ratio between them
//! is an exact integer power of two; every class then decomposes uniquely as
//! an integer number of octaves plus a residue in `[1, 2)`.

use num_traits::{Signed, ToPrimitive};

use crate::measure::{rat_int, FrequencyBase, Measure, Rat};

/// Absolute tolerance on the log2 exponent when deciding octave equivalence
/// for explicitly approximate measures.
const APPROX_LOG2_TOL: f64 = 1e-9;

/// A pitch up to nothing — a point of the pitch continuum — identified by
/// its interval measure from the base sound.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PitchClass {
    ratio_to_base: Measure,
}

impl PitchClass {
    pub fn new(ratio_to_base: Measure) -> Self {
        PitchClass { ratio_to_base }
    }

    /// The base sound itself (ratio 1).
    pub fn base() -> Self {
        PitchClass::new(Measure::one())
    }

    pub fn ratio_to_base(&self) -> &Measure {
        &self.ratio_to_base
    }

    /// Frequency under the given calibration of the base sound.
    pub fn frequency(&self, base: &FrequencyBase) -> f64 {
        base.hz() * self.ratio_to_base.to_float()
    }
}

/// The measure of the interval from `x` up to `y`.
pub fn interval_between(x: &PitchClass, y: &PitchClass) -> Measure {
    y.ratio_to_base.compose(&x.ratio_to_base.invert())
}

/// `true` iff the interval between the classes measures `2^n` for an integer
/// `n`. Exact on the two exact representations; approximate values are
/// decided by rounding the log2 exponent.
pub fn equitonal(x: &PitchClass, y: &PitchClass) -> bool {
    measure_is_integer_pow2(&interval_between(x, y))
}

fn measure_is_integer_pow2(m: &Measure) -> bool {
    match m {
        Measure::Pow2(q) => q.is_integer(),
        // Normalization guarantees a `Ratio` is never a pure power of two.
        Measure::Ratio(_) => false,
        Measure::Approx(x) => {
            let l = x.log2();
            (l - l.round()).abs() <= APPROX_LOG2_TOL
        }
    }
}

/// Shift the class by `n` octaves (up for positive `n`, down for negative).
pub fn octave_shift(p: &PitchClass, n: i64) -> PitchClass {
    PitchClass::new(p.ratio_to_base.compose(&Measure::pow2(rat_int(n))))
}

/// Split a class as `2^n · residue` with `residue` in `[1, 2)`; the pair is
/// unique. Exact representations stay exact.
pub fn octave_decompose(p: &PitchClass) -> (i64, Measure) {
    match &p.ratio_to_base {
        Measure::Pow2(q) => {
            let n = q.floor().to_integer();
            let n = n.to_i64().expect("octave count out of range");
            (n, Measure::pow2(q - rat_int(n)))
        }
        Measure::Ratio(r) => {
            let mut r = r.clone();
            let two = rat_int(2);
            let mut n: i64 = 0;
            while r >= two {
                r /= &two;
                n += 1;
            }
            while !r.is_positive() || r < Rat::from_integer(1.into()) {
                r *= &two;
                n -= 1;
            }
            (n, Measure::ratio(r))
        }
        Measure::Approx(x) => {
            let mut n = x.log2().floor() as i64;
            let mut residue = x / (n as f64).exp2();
            if residue >= 2.0 {
                residue /= 2.0;
                n += 1;
            }
            if residue < 1.0 {
                residue *= 2.0;
                n -= 1;
            }
            (n, Measure::approx(residue))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::rat;

    fn class_ratio(n: i64, d: i64) -> PitchClass {
        PitchClass::new(Measure::ratio_frac(n, d))
    }

    #[test]
    fn octave_multiples_are_equitonal() {
        // Frequencies 220 and 880 over a common base: ratio 4 = 2².
        let a = class_ratio(1, 1);
        let b = class_ratio(4, 1);
        assert!(equitonal(&a, &b));
        // Ratio 3 is not a power of two.
        let c = class_ratio(3, 1);
        assert!(!equitonal(&a, &c));
        // Reflexive.
        assert!(equitonal(&c, &c));
    }

    #[test]
    fn equitonal_is_an_equivalence_on_samples() {
        let classes: Vec<PitchClass> = (-3..=3)
            .flat_map(|n| {
                [
                    PitchClass::new(Measure::ratio_frac(3, 2).compose(&Measure::pow2(rat_int(n)))),
                    PitchClass::new(Measure::pow2(rat(n, 1))),
                    PitchClass::new(Measure::pow2(rat(12 * n + 7, 12))),
                ]
            })
            .collect();
        for x in &classes {
            assert!(equitonal(x, x));
            for y in &classes {
                assert_eq!(equitonal(x, y), equitonal(y, x));
                for z in &classes {
                    if equitonal(x, y) && equitonal(y, z) {
                        assert!(equitonal(x, z));
                    }
                }
            }
        }
    }

    #[test]
    fn shifts_compose_and_invert() {
        let p = class_ratio(3, 2);
        assert_eq!(
            octave_shift(&PitchClass::base(), 1).ratio_to_base(),
            &Measure::octave()
        );
        assert_eq!(octave_shift(&p, -1).ratio_to_base(), &Measure::ratio_frac(3, 4));
        assert_eq!(octave_shift(&octave_shift(&p, 2), -2), p);
        assert!(equitonal(&p, &octave_shift(&p, 5)));
    }

    #[test]
    fn decomposition_oracles() {
        assert_eq!(
            octave_decompose(&class_ratio(5, 2)),
            (1, Measure::ratio_frac(5, 4))
        );
        assert_eq!(octave_decompose(&PitchClass::base()), (0, Measure::one()));
        assert_eq!(
            octave_decompose(&PitchClass::new(Measure::pow2(rat(31, 12)))),
            (2, Measure::pow2(rat(7, 12)))
        );
        let (n, residue) = octave_decompose(&PitchClass::new(Measure::approx(5.0)));
        assert_eq!(n, 2);
        assert!((residue.to_float() - 1.25).abs() < 1e-12);
    }

    #[test]
    fn decomposition_commutes_with_shifts() {
        let samples = [
            PitchClass::new(Measure::ratio_frac(3, 2)),
            PitchClass::new(Measure::ratio_frac(7, 5)),
            PitchClass::new(Measure::pow2(rat(5, 12))),
            PitchClass::new(Measure::pow2(rat(-31, 12))),
            PitchClass::base(),
        ];
        for p in &samples {
            let (n0, r0) = octave_decompose(p);
            for k in -8..=8 {
                let (n, r) = octave_decompose(&octave_shift(p, k));
                assert_eq!(n, n0 + k);
                assert_eq!(r, r0);
            }
        }
    }

    #[test]
    fn equitonality_matches_equal_residues() {
        let samples = [
            PitchClass::new(Measure::ratio_frac(3, 2)),
            PitchClass::new(Measure::ratio_frac(3, 1)),
            PitchClass::new(Measure::ratio_frac(5, 4)),
            PitchClass::new(Measure::pow2(rat(7, 12))),
            PitchClass::new(Measure::pow2(rat(19, 12))),
            PitchClass::base(),
        ];
        for x in &samples {
            for y in &samples {
                let same_residue = octave_decompose(x).1 == octave_decompose(y).1;
                assert_eq!(equitonal(x, y), same_residue);
            }
        }
    }

    #[test]
    fn residue_is_always_in_the_half_open_octave() {
        let one = Measure::one();
        let two = Measure::octave();
        for m in [
            Measure::ratio_frac(99, 7),
            Measure::ratio_frac(1, 17),
            Measure::pow2(rat(-37, 12)),
            Measure::approx(0.003),
            Measure::approx(1023.5),
        ] {
            let (_, r) = octave_decompose(&PitchClass::new(m));
            assert!(r >= one && r < two, "residue {r} out of range");
        }
    }
}
