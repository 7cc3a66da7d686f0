//! Notes as residues modulo twelve, accidentals, and pitches on the
//! semitone grid.
//!
//! A [`Note`] is a residue class in `[0, 12)` — integer for the western
//! twelve, half-integer for quarter-tone degrees. Notes add and subtract
//! modulo twelve; sharps and flats are translation by one semitone either
//! way, so enharmonic spellings collapse (`C♯ = D♭`).
//!
//! A [`GridPitch`] is a concrete pitch: a rational semitone index relative to
//! the base sound, placed so that `A4` (index 9) sounds at 440 Hz.

use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::measure::{parse_rat, rat, rat_int, Rat};

/// Names of the twelve western residues, sharp spellings.
const NAMES: [&str; 12] = [
    "C", "C♯", "D", "D♯", "E", "F", "F♯", "G", "G♯", "A", "A♯", "B",
];

/// Semitone residues of the seven letters C D E F G A B.
const LETTER_RESIDUES: [(char, i64); 7] = [
    ('C', 0),
    ('D', 2),
    ('E', 4),
    ('F', 5),
    ('G', 7),
    ('A', 9),
    ('B', 11),
];

/// A note: a residue class modulo twelve semitones.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Note {
    residue: Rat,
}

impl Note {
    /// Wrap any rational into `[0, 12)`.
    pub fn new(residue: Rat) -> Self {
        let twelve = rat_int(12);
        let mut r = residue % &twelve;
        if r.is_negative() {
            r += &twelve;
        }
        Note { residue: r }
    }

    pub fn from_semitones(n: i64) -> Self {
        Note::new(rat_int(n))
    }

    pub fn residue(&self) -> &Rat {
        &self.residue
    }

    /// `true` when the residue sits on the western integer grid.
    pub fn is_western(&self) -> bool {
        self.residue.is_integer()
    }

    /// Addition modulo twelve.
    pub fn add(&self, other: &Note) -> Note {
        Note::new(&self.residue + &other.residue)
    }

    /// Subtraction modulo twelve.
    pub fn sub(&self, other: &Note) -> Note {
        Note::new(&self.residue - &other.residue)
    }

    /// One semitone up.
    pub fn sharp(&self) -> Note {
        Note::new(&self.residue + rat_int(1))
    }

    /// One semitone down.
    pub fn flat(&self) -> Note {
        Note::new(&self.residue - rat_int(1))
    }

    /// Printable name: sharp spellings for the integer residues, a `+q`
    /// suffix for an extra quarter tone, a generic `+p/q` suffix otherwise.
    pub fn name(&self) -> String {
        let floor = self.residue.floor().to_integer();
        let idx = floor.to_i64().expect("residue in [0,12)") as usize;
        let frac = &self.residue - Rat::from_integer(floor);
        let base = NAMES[idx];
        if frac.is_zero() {
            base.to_string()
        } else if frac == rat(1, 2) {
            format!("{base}+q")
        } else {
            format!("{base}+{frac}")
        }
    }
}

macro_rules! note_letters {
    ($($fn_name:ident => $semi:expr),* $(,)?) => {
        impl Note {
            $(pub fn $fn_name() -> Note { Note::from_semitones($semi) })*
        }
    };
}

note_letters! {
    c => 0,
    d => 2,
    e => 4,
    f => 5,
    g => 7,
    a => 9,
    b => 11,
}

impl fmt::Display for Note {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Split a note token into (note, remaining input). The token is a letter
/// C–G/A/B, then accidentals (`♯`/`#` up, `♭`/`b` down), then optionally
/// `+q` or `+p/q`.
fn parse_note_prefix(s: &str) -> Result<(Note, &str)> {
    let mut chars = s.char_indices();
    let (_, letter) = chars
        .next()
        .ok_or_else(|| Error::Parse("empty note".into()))?;
    let base = LETTER_RESIDUES
        .iter()
        .find(|(c, _)| *c == letter)
        .map(|(_, r)| *r)
        .ok_or_else(|| Error::Parse(format!("unknown note letter {letter:?}")))?;
    let mut residue = rat_int(base);
    let mut rest = &s[letter.len_utf8()..];
    loop {
        let mut it = rest.chars();
        match it.next() {
            Some(c @ ('♯' | '#')) => {
                residue += rat_int(1);
                rest = &rest[c.len_utf8()..];
            }
            Some(c @ ('♭' | 'b')) => {
                residue -= rat_int(1);
                rest = &rest[c.len_utf8()..];
            }
            _ => break,
        }
    }
    Ok((Note::new(residue), rest))
}

/// Split a trailing microtonal suffix `+q` or `+p/q` off the input.
fn parse_quarter_suffix(s: &str) -> Result<(Rat, &str)> {
    if let Some(rest) = s.strip_prefix("+q") {
        Ok((rat(1, 2), rest))
    } else if let Some(body) = s.strip_prefix('+') {
        let frac = parse_rat(body)?;
        if frac.is_negative() {
            return Err(Error::Parse("microtonal offset must be nonnegative".into()));
        }
        Ok((frac, ""))
    } else {
        Ok((Rat::zero(), s))
    }
}

impl FromStr for Note {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (note, rest) = parse_note_prefix(s.trim())?;
        let (frac, rest) = parse_quarter_suffix(rest)?;
        if !rest.is_empty() {
            return Err(Error::Parse(format!("trailing input after note: {rest:?}")));
        }
        Ok(Note::new(note.residue + frac))
    }
}

/// A pitch on the semitone grid: rational index relative to the base sound.
/// Index 0 is C4; index 9 is A4 at 440 Hz.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GridPitch {
    index: Rat,
}

impl GridPitch {
    pub fn new(index: Rat) -> Self {
        GridPitch { index }
    }

    pub fn from_semitones(n: i64) -> Self {
        GridPitch::new(rat_int(n))
    }

    /// Build from a note class and an octave number (`C4` = index 0).
    pub fn from_parts(note: &Note, octave: i64) -> Self {
        GridPitch::new(note.residue() + rat_int(12) * rat_int(octave - 4))
    }

    pub fn index(&self) -> &Rat {
        &self.index
    }

    /// The note class of this pitch.
    pub fn note_class(&self) -> Note {
        Note::new(self.index.clone())
    }

    /// Octave number under the convention that indices 0..12 are octave 4.
    pub fn octave(&self) -> i64 {
        let floor = (&self.index / rat_int(12)).floor().to_integer();
        floor.to_i64().expect("octave out of range") + 4
    }

    /// Frequency in Hz, with A4 (index 9) pinned to 440 Hz.
    pub fn frequency(&self) -> f64 {
        let exponent = (&self.index - rat_int(9)) / rat_int(12);
        440.0 * exponent.to_f64().expect("index out of float range").exp2()
    }

    /// Shift by a rational number of semitones.
    pub fn shift(&self, semitones: &Rat) -> GridPitch {
        GridPitch::new(&self.index + semitones)
    }
}

impl fmt::Display for GridPitch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let octave = self.octave();
        let residue = &self.index - rat_int(12) * rat_int(octave - 4);
        let floor = residue.floor().to_integer();
        let idx = floor.to_i64().expect("residue in [0,12)") as usize;
        let frac = residue - Rat::from_integer(floor);
        write!(f, "{}{octave}", NAMES[idx])?;
        if frac.is_zero() {
            Ok(())
        } else if frac == rat(1, 2) {
            write!(f, "+q")
        } else {
            write!(f, "+{frac}")
        }
    }
}

impl FromStr for GridPitch {
    type Err = Error;

    /// Accepts `<NAME><octave>[+q]`, e.g. `C4`, `F♯3`, `A♯2+q`, `D5+1/3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (note, rest) = parse_note_prefix(s)?;
        let digits_end = rest
            .char_indices()
            .take_while(|(i, c)| c.is_ascii_digit() || (*i == 0 && *c == '-'))
            .map(|(i, c)| i + c.len_utf8())
            .last()
            .ok_or_else(|| Error::Parse(format!("missing octave number in {s:?}")))?;
        let octave: i64 = rest[..digits_end]
            .parse()
            .map_err(|_| Error::Parse(format!("invalid octave number in {s:?}")))?;
        let (frac, tail) = parse_quarter_suffix(&rest[digits_end..])?;
        if !tail.is_empty() {
            return Err(Error::Parse(format!("trailing input after pitch: {tail:?}")));
        }
        let index = note.residue() + frac + rat_int(12) * rat_int(octave - 4);
        Ok(GridPitch::new(index))
    }
}

/// Frequency index helper: the exact rational `(index − 9)/12` exponent base
/// used by [`GridPitch::frequency`], exposed for calibration checks.
pub fn base_frequency_hz() -> f64 {
    440.0 * (-9.0_f64 / 12.0).exp2()
}

/// All twelve western notes in residue order.
pub fn western_notes() -> Vec<Note> {
    (0..12).map(Note::from_semitones).collect()
}
