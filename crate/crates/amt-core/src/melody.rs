//! Melodies: pitch sequences, transposition, directed runs, scale
//! attribution, and modulation.
//!
//! Any finite pitch sequence is a melody, including the empty (silent) one.
//! Its *runs* are the maximal strictly-monotone stretches; a repeated pitch
//! belongs to no run, and the turning point of a rise-then-fall contour is
//! shared by both neighboring runs. A melody is *based on* a scale when,
//! for each direction that actually occurs, the classes sounded by that
//! direction's runs are exactly the scale's degree classes on that side.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::harmony::{is_harmonic, HarmonicGrid};
use crate::measure::{rat, Measure, Rat};
use crate::notes::{GridPitch, Note};
use crate::scales::{scale_from_components, CatalogEntry, Direction, Scale};

/// A finite (possibly empty) sequence of grid pitches.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Melody {
    terms: Vec<GridPitch>,
}

impl Melody {
    pub fn new(terms: Vec<GridPitch>) -> Self {
        Melody { terms }
    }

    /// The melody with no terms.
    pub fn silent() -> Self {
        Melody::default()
    }

    pub fn terms(&self) -> &[GridPitch] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Consecutive index differences, in semitones.
    pub fn intervals(&self) -> Vec<Rat> {
        self.terms
            .windows(2)
            .map(|w| w[1].index() - w[0].index())
            .collect()
    }
}

impl fmt::Display for Melody {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for t in &self.terms {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{t}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Melody {
    type Err = Error;

    /// Whitespace-separated pitch tokens; empty input is the silent melody.
    fn from_str(s: &str) -> Result<Self> {
        let terms = s
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<GridPitch>>>()?;
        Ok(Melody::new(terms))
    }
}

/// Two melodies are congruent when they have the same length and identical
/// consecutive intervals.
pub fn congruent(a: &Melody, b: &Melody) -> bool {
    a.len() == b.len() && a.intervals() == b.intervals()
}

/// Shift every term by the same harmonic interval. The result is the unique
/// melody congruent to the input starting at the shifted first term.
pub fn transpose(m: &Melody, by: &Measure, grid: HarmonicGrid) -> Result<Melody> {
    if !is_harmonic(by, grid) {
        return Err(Error::NotHarmonic);
    }
    let shift = by
        .semitone_exponent()
        .expect("harmonic measures are powers of two");
    Ok(Melody::new(
        m.terms().iter().map(|p| p.shift(&shift)).collect(),
    ))
}

/// A maximal strictly-monotone stretch of a melody.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub direction: Direction,
    pub terms: Vec<GridPitch>,
}

/// Maximal strictly-monotone stretches, in order. Turning points belong to
/// both adjacent runs; repeated pitches belong to none.
pub fn runs(m: &Melody) -> Vec<Run> {
    use std::cmp::Ordering;
    let terms = m.terms();
    let mut out = Vec::new();
    let mut i = 0;
    while i + 1 < terms.len() {
        let direction = match terms[i + 1].index().cmp(terms[i].index()) {
            Ordering::Greater => Direction::Ascendent,
            Ordering::Less => Direction::Descendent,
            Ordering::Equal => {
                i += 1;
                continue;
            }
        };
        let mut j = i + 1;
        while j + 1 < terms.len() {
            let next = match terms[j + 1].index().cmp(terms[j].index()) {
                Ordering::Greater => Direction::Ascendent,
                Ordering::Less => Direction::Descendent,
                Ordering::Equal => break,
            };
            if next != direction {
                break;
            }
            j += 1;
        }
        out.push(Run {
            direction,
            terms: terms[i..=j].to_vec(),
        });
        i = j;
    }
    out
}

fn run_classes(melody_runs: &[Run], direction: Direction) -> BTreeSet<Note> {
    melody_runs
        .iter()
        .filter(|r| r.direction == direction)
        .flat_map(|r| r.terms.iter().map(GridPitch::note_class))
        .collect()
}

/// `true` iff for each direction with at least one run, the classes sounded
/// by that direction's runs coincide exactly with the scale's degree classes
/// on that side. A direction with no runs imposes nothing; the silent melody
/// is based on no scale.
pub fn based_on(m: &Melody, s: &Scale) -> bool {
    if m.is_empty() {
        return false;
    }
    let melody_runs = runs(m);
    let side = |direction: Direction, degrees: &[Note]| -> bool {
        let sounded = run_classes(&melody_runs, direction);
        if sounded.is_empty() {
            return true;
        }
        let degree_set: BTreeSet<Note> = degrees.iter().cloned().collect();
        sounded == degree_set
    };
    side(Direction::Ascendent, &s.module().ascent_degrees)
        && side(Direction::Descendent, &s.module().descent_degrees)
}

/// The smallest scale the melody's runs can articulate: tonic at the first
/// run's first term, with one degree per sounded class. `None` when the
/// melody has no runs or its classes fit no equal-tempered grid.
fn construct_minimal_scale(m: &Melody) -> Option<Scale> {
    let melody_runs = runs(m);
    let first = melody_runs.first()?;
    let tonic = first.terms[0].note_class();
    let classes: BTreeSet<Note> = melody_runs
        .iter()
        .flat_map(|r| r.terms.iter().map(GridPitch::note_class))
        .collect();
    let grid = if classes.iter().all(|n| n.residue().is_integer()) {
        HarmonicGrid::Western
    } else if classes
        .iter()
        .all(|n| (n.residue() * Rat::from_integer(2.into())).is_integer())
    {
        HarmonicGrid::Modal
    } else {
        return None;
    };
    scale_from_components(&tonic, &classes, grid).ok()
}

/// All catalog scales (every shape at every grid tonic) the melody is based
/// on, plus the constructed minimal scale when it exists and validates.
pub fn infer_scales(m: &Melody, catalog: &[CatalogEntry]) -> Result<Vec<Scale>> {
    if m.is_empty() {
        return Err(Error::NoScaleFound);
    }
    let mut found: Vec<Scale> = Vec::new();
    for entry in catalog {
        let tonics: Vec<Note> = match entry.grid {
            HarmonicGrid::Western => (0..12).map(Note::from_semitones).collect(),
            HarmonicGrid::Modal => (0..24).map(|k| Note::new(rat(k, 2))).collect(),
        };
        for tonic in tonics {
            if let Ok(scale) = crate::scales::scale_from_entry(entry, tonic) {
                if based_on(m, &scale) && !found.contains(&scale) {
                    found.push(scale);
                }
            }
        }
    }
    if let Some(minimal) = construct_minimal_scale(m) {
        if based_on(m, &minimal) && !found.contains(&minimal) {
            found.push(minimal);
        }
    }
    if found.is_empty() {
        Err(Error::NoScaleFound)
    } else {
        Ok(found)
    }
}

/// Plain concatenation: the free product of melodies. Total, with the silent
/// melody as two-sided identity.
pub fn concat(a: &Melody, b: &Melody) -> Melody {
    Melody::new(
        a.terms()
            .iter()
            .chain(b.terms().iter())
            .cloned()
            .collect(),
    )
}

/// Concatenation restricted to melodies whose inferred scale sets differ
/// (a melody that failed inference contributes the empty set).
pub fn modulate(a: &Melody, b: &Melody, catalog: &[CatalogEntry]) -> Result<Melody> {
    let scales_a = infer_scales(a, catalog).unwrap_or_default();
    let scales_b = infer_scales(b, catalog).unwrap_or_default();
    let same = scales_a.len() == scales_b.len() && scales_a.iter().all(|s| scales_b.contains(s));
    if same {
        return Err(Error::SameScale);
    }
    Ok(concat(a, b))
}
