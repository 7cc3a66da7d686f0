//! Chords: validated ascending pitch stacks, triad taxonomy, inversions,
//! the chord-class lattice, and the chord↔melody correspondence.
//!
//! A chord is a nonempty tuple of grid pitches whose consecutive intervals
//! all ascend by harmonic amounts; checking consecutive intervals is
//! equivalent to checking every pair. Chords compare up to *enharmony*
//! (equal length, pairwise equal indices), and enharmonic classes of
//! on-grid chords form a lattice under union and intersection of their
//! index sets.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::harmony::{is_harmonic, HarmonicGrid};
use crate::measure::Rat;
use crate::melody::Melody;
use crate::notes::GridPitch;
use crate::scales::semitone_step;

/// A validated chord: strictly ascending pitches with harmonic consecutive
/// steps on the stated grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chord {
    pitches: Vec<GridPitch>,
    grid: HarmonicGrid,
}

/// Build a chord, reporting the first violated condition: order first, then
/// grid membership of each consecutive step.
pub fn make_chord(pitches: Vec<GridPitch>, grid: HarmonicGrid) -> Result<Chord> {
    if pitches.is_empty() {
        return Err(Error::EmptyTuple);
    }
    for pair in pitches.windows(2) {
        let diff = pair[1].index() - pair[0].index();
        if diff <= Rat::from_integer(0.into()) {
            return Err(Error::NotAscending);
        }
        if !is_harmonic(&semitone_step(diff), grid) {
            return Err(Error::NonHarmonicStep);
        }
    }
    Ok(Chord { pitches, grid })
}

impl Chord {
    pub fn pitches(&self) -> &[GridPitch] {
        &self.pitches
    }

    pub fn grid(&self) -> HarmonicGrid {
        self.grid
    }

    pub fn len(&self) -> usize {
        self.pitches.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The lowest pitch.
    pub fn root(&self) -> &GridPitch {
        &self.pitches[0]
    }

    /// Consecutive index differences, in semitones.
    pub fn steps(&self) -> Vec<Rat> {
        self.pitches
            .windows(2)
            .map(|w| w[1].index() - w[0].index())
            .collect()
    }
}

/// `true` when every index lies on the grid itself (not merely the steps).
pub fn is_standard(c: &Chord, grid: HarmonicGrid) -> bool {
    c.pitches()
        .iter()
        .all(|p| is_harmonic(&semitone_step(p.index().clone()), grid))
}

/// Identity in pitch, componentwise: equal length and pairwise equal
/// indices.
pub fn enharmonic(x: &Chord, y: &Chord) -> bool {
    x.len() == y.len()
        && x.pitches()
            .iter()
            .zip(y.pitches())
            .all(|(a, b)| a.index() == b.index())
}

/// The four triad shapes, by their two stacked-third step sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriadQuality {
    Major,
    Minor,
    Diminished,
    Augmented,
}

impl fmt::Display for TriadQuality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriadQuality::Major => write!(f, "major"),
            TriadQuality::Minor => write!(f, "minor"),
            TriadQuality::Diminished => write!(f, "diminished"),
            TriadQuality::Augmented => write!(f, "augmented"),
        }
    }
}

/// Classify a three-note chord by its step pair: (4,3) major, (3,4) minor,
/// (3,3) diminished, (4,4) augmented.
pub fn classify_triad(c: &Chord) -> Result<TriadQuality> {
    if c.len() != 3 {
        return Err(Error::NotATriadShape);
    }
    let steps = c.steps();
    let three = Rat::from_integer(3.into());
    let four = Rat::from_integer(4.into());
    match (&steps[0], &steps[1]) {
        (a, b) if *a == four && *b == three => Ok(TriadQuality::Major),
        (a, b) if *a == three && *b == four => Ok(TriadQuality::Minor),
        (a, b) if *a == three && *b == three => Ok(TriadQuality::Diminished),
        (a, b) if *a == four && *b == four => Ok(TriadQuality::Augmented),
        _ => Err(Error::NotATriadShape),
    }
}

/// Which octave-displacement inversion to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inversion {
    First,
    Second,
}

/// Drop one upper pitch of a triad by an octave and lead with it: the first
/// inversion moves the middle pitch, the second moves the top. The result
/// is re-validated; shapes whose displaced pitch fails to stay lowest are
/// rejected.
pub fn invert_triad(c: &Chord, which: Inversion) -> Result<Chord> {
    if c.len() != 3 {
        return Err(Error::NotATriadShape);
    }
    let twelve = Rat::from_integer(12.into());
    let [x, y, z] = [&c.pitches()[0], &c.pitches()[1], &c.pitches()[2]];
    let reordered = match which {
        Inversion::First => vec![
            GridPitch::new(y.index() - &twelve),
            x.clone(),
            z.clone(),
        ],
        Inversion::Second => vec![
            GridPitch::new(z.index() - &twelve),
            x.clone(),
            y.clone(),
        ],
    };
    make_chord(reordered, c.grid())
}

/// An enharmonic class of on-grid chords: a possibly-empty set of semitone
/// indices. The empty class is the attached bottom element of the lattice.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChordClass {
    indices: BTreeSet<Rat>,
}

impl ChordClass {
    /// The attached empty chord.
    pub fn empty() -> Self {
        ChordClass::default()
    }

    pub fn from_chord(c: &Chord) -> Self {
        ChordClass {
            indices: c.pitches().iter().map(|p| p.index().clone()).collect(),
        }
    }

    pub fn indices(&self) -> &BTreeSet<Rat> {
        &self.indices
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Union of index sets.
    pub fn join(&self, other: &ChordClass) -> ChordClass {
        ChordClass {
            indices: self.indices.union(&other.indices).cloned().collect(),
        }
    }

    /// Intersection of index sets.
    pub fn meet(&self, other: &ChordClass) -> ChordClass {
        ChordClass {
            indices: self.indices.intersection(&other.indices).cloned().collect(),
        }
    }

    /// The representative chord (ascending order), absent for the empty
    /// class or when the indices fail chord validation on `grid`.
    pub fn to_chord(&self, grid: HarmonicGrid) -> Option<Chord> {
        let pitches: Vec<GridPitch> = self
            .indices
            .iter()
            .map(|i| GridPitch::new(i.clone()))
            .collect();
        make_chord(pitches, grid).ok()
    }
}

/// Join of two chords' enharmonic classes: sorted union of indices.
pub fn chord_join(a: &Chord, b: &Chord) -> ChordClass {
    ChordClass::from_chord(a).join(&ChordClass::from_chord(b))
}

/// Meet of two chords' enharmonic classes: sorted intersection (possibly
/// the attached empty chord).
pub fn chord_meet(a: &Chord, b: &Chord) -> ChordClass {
    ChordClass::from_chord(a).meet(&ChordClass::from_chord(b))
}

/// The ascending melody sounding the chord's pitches in order.
pub fn chord_to_melody(c: &Chord) -> Melody {
    Melody::new(c.pitches().to_vec())
}

/// The chord germ of a strictly ascending harmonic melody.
pub fn melody_to_chord(m: &Melody, grid: HarmonicGrid) -> Result<Chord> {
    if m.is_empty() {
        return Err(Error::EmptyTuple);
    }
    for pair in m.terms().windows(2) {
        if pair[1].index() <= pair[0].index() {
            return Err(Error::NotAscendingMelody);
        }
    }
    make_chord(m.terms().to_vec(), grid)
}

impl fmt::Display for Chord {
    /// Pitch tokens joined by `+`, e.g. `C4+E4+G4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.pitches {
            if !first {
                write!(f, "+")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Chord {
    type Err = Error;

    /// Parses `C4+E4+G4`-style text. A `+`-joined piece that is `q` or a
    /// bare fraction continues the previous pitch token (`C♯4+q`), so
    /// microtonal names survive the separator.
    fn from_str(s: &str) -> Result<Self> {
        let mut tokens: Vec<String> = Vec::new();
        for piece in s.split('+').map(str::trim) {
            let is_suffix = piece == "q"
                || (!piece.is_empty()
                    && piece.chars().all(|c| c.is_ascii_digit() || c == '/'));
            match tokens.last_mut() {
                Some(prev) if is_suffix => {
                    prev.push('+');
                    prev.push_str(piece);
                }
                _ => tokens.push(piece.to_string()),
            }
        }
        let pitches = tokens
            .iter()
            .map(|tok| tok.parse())
            .collect::<Result<Vec<GridPitch>>>()?;
        let grid = if pitches
            .iter()
            .all(|p: &GridPitch| p.index().is_integer())
        {
            HarmonicGrid::Western
        } else {
            HarmonicGrid::Modal
        };
        make_chord(pitches, grid)
    }
}
