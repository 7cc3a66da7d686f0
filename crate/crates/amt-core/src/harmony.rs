//! Harmonic grids, the smallest-step derivation, and interval species naming.
//!
//! The western grid admits exactly the measures `2^(n/12)`; the modal grid
//! refines it to `2^(n/24)`, accommodating three-quarter-tone and
//! five-quarter-tone steps. The smallest harmonic step ε is not postulated
//! but derived by solving the defining constraints symbolically over rational
//! exponents.

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::measure::{rat, rat_int, Measure, Rat};

/// Which equal division of the octave counts as harmonic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HarmonicGrid {
    /// Twelve divisions per octave.
    Western,
    /// Twenty-four divisions per octave (quarter-tone resolution).
    Modal,
}

impl HarmonicGrid {
    /// Number of grid steps per octave.
    pub fn granularity(&self) -> i64 {
        match self {
            HarmonicGrid::Western => 12,
            HarmonicGrid::Modal => 24,
        }
    }
}

impl std::fmt::Display for HarmonicGrid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HarmonicGrid::Western => write!(f, "western"),
            HarmonicGrid::Modal => write!(f, "modal"),
        }
    }
}

/// `true` iff `m = 2^q` with `q · granularity` an integer.
pub fn is_harmonic(m: &Measure, grid: HarmonicGrid) -> bool {
    match m {
        Measure::Pow2(q) => (q * rat_int(grid.granularity())).is_integer(),
        _ => false,
    }
}

/// Solve `a · x = b` by Gaussian elimination over exact rationals.
/// Returns `None` when the system is singular.
fn solve_linear_system(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let n = a.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in (col + 1)..n {
            if a[row][col].is_zero() {
                continue;
            }
            let factor = &a[row][col] / &a[col][col];
            for k in col..n {
                let delta = &factor * &a[col][k];
                a[row][k] -= delta;
            }
            let delta = &factor * &b[col];
            b[row] -= delta;
        }
    }
    let mut x = vec![Rat::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for col in (row + 1)..n {
            acc -= &a[row][col] * &x[col];
        }
        x[row] = acc / &a[row][row];
    }
    Some(x)
}

/// Derive the smallest harmonic step ε together with the two whole-tone
/// unknowns, by solving the constraint system
///
/// ```text
/// ε⁶·x²·y = 2      2ε·x·y = √2 · √2  (i.e. ε²·x·y = 2^(1/2))      x = y
/// ```
///
/// expressed linearly on base-2 exponents:
/// `6e + 2u + v = 1`, `2e + u + v = 1/2`, `u − v = 0`.
pub fn derive_epsilon() -> (Measure, Measure, Measure) {
    let a = vec![
        vec![rat_int(6), rat_int(2), rat_int(1)],
        vec![rat_int(2), rat_int(1), rat_int(1)],
        vec![Rat::zero(), Rat::one(), -Rat::one()],
    ];
    let b = vec![rat_int(1), rat(1, 2), Rat::zero()];
    let solution = solve_linear_system(a, b).expect("the step constraints are nonsingular");
    let [e, u, v] = <[Rat; 3]>::try_from(solution).expect("three unknowns");
    (Measure::pow2(e), Measure::pow2(u), Measure::pow2(v))
}

/// Classical name of a harmonic interval by its span of staff positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Species {
    Prime,
    Second,
    Third,
    Fourth,
    /// Six semitones: equally an augmented fourth or a diminished fifth, so
    /// it carries a dedicated tag rather than an arbitrary choice.
    Tritone,
    Fifth,
    Sixth,
    Seventh,
    Octave,
    /// An interval wider than an octave (or descending), named after its
    /// octave-reduced representative.
    Compound(Box<Species>),
}

impl Species {
    /// Ordinal used by the inversion law (`n + n' = 9`); absent for the
    /// tritone and for compound names.
    pub fn ordinal(&self) -> Option<u8> {
        match self {
            Species::Prime => Some(1),
            Species::Second => Some(2),
            Species::Third => Some(3),
            Species::Fourth => Some(4),
            Species::Fifth => Some(5),
            Species::Sixth => Some(6),
            Species::Seventh => Some(7),
            Species::Octave => Some(8),
            Species::Tritone | Species::Compound(_) => None,
        }
    }
}

impl std::fmt::Display for Species {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Species::Prime => write!(f, "prime"),
            Species::Second => write!(f, "second"),
            Species::Third => write!(f, "third"),
            Species::Fourth => write!(f, "fourth"),
            Species::Tritone => write!(f, "fourth-augmented/fifth-diminished"),
            Species::Fifth => write!(f, "fifth"),
            Species::Sixth => write!(f, "sixth"),
            Species::Seventh => write!(f, "seventh"),
            Species::Octave => write!(f, "octave"),
            Species::Compound(inner) => write!(f, "compound({inner})"),
        }
    }
}

fn simple_species(s: i64) -> Species {
    match s {
        0 => Species::Prime,
        1 | 2 => Species::Second,
        3 | 4 => Species::Third,
        5 => Species::Fourth,
        6 => Species::Tritone,
        7 => Species::Fifth,
        8 | 9 => Species::Sixth,
        10 | 11 => Species::Seventh,
        12 => Species::Octave,
        _ => unreachable!("semitone count {s} not reduced"),
    }
}

/// Name a western-harmonic interval. Ascending simple intervals (zero to
/// twelve semitones) get their plain name; wider or descending intervals are
/// octave-reduced and reported as compound.
pub fn interval_species(m: &Measure) -> Result<Species> {
    if !is_harmonic(m, HarmonicGrid::Western) {
        return Err(Error::NotHarmonic);
    }
    let s = m
        .semitone_exponent()
        .expect("harmonic measures are powers of two")
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::DomainError("semitone count out of range".into()))?;
    if (0..=12).contains(&s) {
        return Ok(simple_species(s));
    }
    let reduced = if s > 12 {
        // Into (0, 12]: a compound octave names as compound(octave).
        let r = s % 12;
        if r == 0 {
            12
        } else {
            r
        }
    } else {
        // Descending: into [0, 12).
        s.rem_euclid(12)
    };
    Ok(Species::Compound(Box::new(simple_species(reduced))))
}
