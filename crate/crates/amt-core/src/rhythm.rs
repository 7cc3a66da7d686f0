//! Rhythm calculus: timed events over a bounded span, exact regularity,
//! the coarsest regular beat grid, signatures, tempo, and the five-way
//! classification.
//!
//! Onsets are exact rationals unless explicitly marked irrational at
//! ingestion: a float cannot witness irrationality, so the rationality
//! tests below key off the marking, never off a numeric approximation.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::measure::{parse_rat, Rat};
use crate::notes::GridPitch;

/// An event time, relative to the start of the span, in seconds.
#[derive(Debug, Clone, PartialEq)]
pub enum Onset {
    /// An exactly known rational time.
    Exact(Rat),
    /// A time declared irrational by the producer; the float is only a
    /// rendering hint.
    Irrational(f64),
}

impl Onset {
    /// Float projection, for ordering against marked-irrational onsets.
    pub fn value(&self) -> f64 {
        match self {
            Onset::Exact(q) => q.to_f64().expect("onset in float range"),
            Onset::Irrational(x) => *x,
        }
    }

    fn strictly_before(&self, other: &Onset) -> bool {
        match (self, other) {
            (Onset::Exact(a), Onset::Exact(b)) => a < b,
            _ => self.value() < other.value(),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Onset::Exact(q) => q.is_zero(),
            Onset::Irrational(x) => *x == 0.0,
        }
    }
}

impl fmt::Display for Onset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Onset::Exact(q) => write!(f, "{q}"),
            Onset::Irrational(x) => write!(f, "irr({x})"),
        }
    }
}

/// One timed event: a sounded pitch or a rest, starting at `onset` and
/// lasting until the next event (or the span end).
#[derive(Debug, Clone, PartialEq)]
pub struct RhythmEvent {
    pub onset: Onset,
    /// `None` is a rest.
    pub payload: Option<GridPitch>,
}

impl RhythmEvent {
    pub fn sound(onset: Onset, pitch: GridPitch) -> Self {
        RhythmEvent { onset, payload: Some(pitch) }
    }

    pub fn rest(onset: Onset) -> Self {
        RhythmEvent { onset, payload: None }
    }

    pub fn is_silent(&self) -> bool {
        self.payload.is_none()
    }
}

/// A validated rhythm: a positive span and a nonempty event list starting
/// at time zero with strictly increasing onsets inside the span.
#[derive(Debug, Clone, PartialEq)]
pub struct Rhythm {
    span: Rat,
    events: Vec<RhythmEvent>,
}

/// Build a rhythm, validating every structural invariant.
pub fn make_rhythm(span: Rat, events: Vec<RhythmEvent>) -> Result<Rhythm> {
    if !span.is_positive() {
        return Err(Error::DomainError("span must be positive".into()));
    }
    if events.is_empty() {
        return Err(Error::DomainError(
            "a rhythm needs at least one event".into(),
        ));
    }
    if let Onset::Irrational(x) = &events[0].onset {
        if !x.is_finite() {
            return Err(Error::DomainError("onsets must be finite".into()));
        }
    }
    if !events[0].onset.is_zero() {
        return Err(Error::DomainError("the first onset must be 0".into()));
    }
    let span_value = span.to_f64().expect("span in float range");
    for pair in events.windows(2) {
        if let Onset::Irrational(x) = &pair[1].onset {
            if !x.is_finite() {
                return Err(Error::DomainError("onsets must be finite".into()));
            }
        }
        if !pair[0].onset.strictly_before(&pair[1].onset) {
            return Err(Error::DomainError(
                "onsets must strictly increase".into(),
            ));
        }
    }
    for ev in &events {
        let before_end = match &ev.onset {
            Onset::Exact(q) => q < &span,
            Onset::Irrational(x) => *x < span_value,
        };
        if !before_end {
            return Err(Error::DomainError(
                "onsets must lie before the span end".into(),
            ));
        }
    }
    Ok(Rhythm { span, events })
}

impl Rhythm {
    pub fn span(&self) -> &Rat {
        &self.span
    }

    pub fn events(&self) -> &[RhythmEvent] {
        &self.events
    }

    /// Exact onsets of the sounded (non-rest) events, when all of them are
    /// exact; `None` as soon as a sounded onset is marked irrational.
    fn sounded_exact_onsets(&self) -> Option<Vec<&Rat>> {
        self.events
            .iter()
            .filter(|ev| !ev.is_silent())
            .map(|ev| match &ev.onset {
                Onset::Exact(q) => Some(q),
                Onset::Irrational(_) => None,
            })
            .collect()
    }
}

/// Is every sounded onset, normalized by the span, rational? Rests are
/// ignored; an empty sounded set is vacuously regular.
pub fn is_regular(r: &Rhythm) -> bool {
    regular_by_start_offsets(r)
}

/// Rationality of each sounded onset measured from the span start.
pub fn regular_by_start_offsets(r: &Rhythm) -> bool {
    r.sounded_exact_onsets().is_some()
}

/// Rationality of every pairwise difference over the sounded onsets
/// together with the span start. A difference touching a marked-irrational
/// onset counts as irrational.
pub fn regular_by_pairwise_differences(r: &Rhythm) -> bool {
    let mut points: Vec<Option<Rat>> = vec![Some(Rat::zero())];
    for ev in r.events() {
        if ev.is_silent() {
            continue;
        }
        points.push(match &ev.onset {
            Onset::Exact(q) => Some(q.clone()),
            Onset::Irrational(_) => None,
        });
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let difference_rational =
                matches!((&points[i], &points[j]), (Some(_), Some(_)));
            if !difference_rational {
                return false;
            }
        }
    }
    true
}

/// Rationality of the gaps between consecutive sounded onsets, starting
/// with the gap from the span start to the first sounded onset.
pub fn regular_by_consecutive_gaps(r: &Rhythm) -> bool {
    let mut previous: Option<Rat> = Some(Rat::zero());
    for ev in r.events() {
        if ev.is_silent() {
            continue;
        }
        let current = match &ev.onset {
            Onset::Exact(q) => Some(q.clone()),
            Onset::Irrational(_) => None,
        };
        let gap_rational = matches!((&previous, &current), (Some(_), Some(_)));
        if !gap_rational {
            return false;
        }
        previous = current;
    }
    true
}

/// The coarsest beat grid whose boundaries catch every sounded onset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeatGrid {
    span: Rat,
    count: u64,
}

impl BeatGrid {
    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn span(&self) -> &Rat {
        &self.span
    }

    /// Beat duration; absent for the empty (all-rest) grid.
    pub fn beat_length(&self) -> Option<Rat> {
        (self.count > 0).then(|| &self.span / Rat::from_integer(self.count.into()))
    }

    /// The beat boundaries, `count` evenly spaced points from 0.
    pub fn boundaries(&self) -> Vec<Rat> {
        let count = BigInt::from(self.count);
        (0..self.count)
            .map(|k| &self.span * Rat::new(BigInt::from(k), count.clone()))
            .collect()
    }

    /// Does `time` fall on a boundary?
    pub fn contains(&self, time: &Rat) -> bool {
        if self.count == 0 {
            return false;
        }
        let scaled = time / &self.span * Rat::from_integer(self.count.into());
        scaled.is_integer()
            && !scaled.is_negative()
            && scaled.to_integer() < BigInt::from(self.count)
    }
}

/// The coarsest regular partition of the span containing every sounded
/// onset: beat length span/L with L the least common multiple of the
/// reduced denominators of the normalized sounded onsets. All-rest rhythms
/// get the empty grid.
pub fn coarsest_refinement(r: &Rhythm) -> Result<BeatGrid> {
    let onsets = r.sounded_exact_onsets().ok_or(Error::IrregularRhythm)?;
    if onsets.is_empty() {
        return Ok(BeatGrid { span: r.span().clone(), count: 0 });
    }
    let mut l = BigInt::one();
    for onset in onsets {
        let normalized = onset / r.span();
        l = l.lcm(normalized.denom());
    }
    let count = l
        .to_u64()
        .ok_or_else(|| Error::DomainError("beat grid too fine".into()))?;
    Ok(BeatGrid { span: r.span().clone(), count })
}

/// A beat count paired with the duration it fills.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    pub beat_count: u64,
    pub duration: Rat,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.beat_count, self.duration)
    }
}

/// Beats per unit duration.
pub fn sig_tempo(s: &Signature) -> Rat {
    Rat::from_integer(s.beat_count.into()) / &s.duration
}

/// The rhythm's signature: coarsest-grid beat count over the span.
pub fn signature(r: &Rhythm) -> Result<Signature> {
    let grid = coarsest_refinement(r)?;
    Ok(Signature { beat_count: grid.count(), duration: r.span().clone() })
}

/// Beats per second; zero for an all-rest rhythm.
pub fn tempo(r: &Rhythm) -> Result<Rat> {
    Ok(sig_tempo(&signature(r)?))
}

/// The five-way rhythm taxonomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhythmClass {
    Silence,
    Trivial,
    Simple,
    Compound,
    Complex,
}

impl fmt::Display for RhythmClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            RhythmClass::Silence => "silence",
            RhythmClass::Trivial => "trivial",
            RhythmClass::Simple => "simple",
            RhythmClass::Compound => "compound",
            RhythmClass::Complex => "complex",
        };
        write!(f, "{name}")
    }
}

/// Classify by beat count: 0 silence, 1 trivial, 2–3 simple, multiples of
/// 3 from 6 up compound, everything else (4, 5, 7, 8, …) complex.
pub fn classify(r: &Rhythm) -> Result<RhythmClass> {
    let beats = signature(r)?.beat_count;
    Ok(match beats {
        0 => RhythmClass::Silence,
        1 => RhythmClass::Trivial,
        2 | 3 => RhythmClass::Simple,
        n if n >= 6 && n % 3 == 0 => RhythmClass::Compound,
        _ => RhythmClass::Complex,
    })
}

/// Triple the beat count at constant duration.
pub fn sig_triple(s: &Signature) -> Signature {
    Signature { beat_count: s.beat_count * 3, duration: s.duration.clone() }
}

/// Concatenate: beat counts and durations add.
pub fn sig_concat(a: &Signature, b: &Signature) -> Signature {
    Signature {
        beat_count: a.beat_count + b.beat_count,
        duration: &a.duration + &b.duration,
    }
}

impl fmt::Display for Rhythm {
    /// `span=<rational>; <onset>:<pitch|rest> …`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span={};", self.span)?;
        for ev in &self.events {
            match &ev.payload {
                Some(p) => write!(f, " {}:{}", ev.onset, p)?,
                None => write!(f, " {}:rest", ev.onset)?,
            }
        }
        Ok(())
    }
}

fn parse_onset(token: &str) -> Result<Onset> {
    if let Some(body) = token.strip_prefix("irr(") {
        let inner = body
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("unclosed irr(: {token:?}")))?;
        let x: f64 = inner
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad irrational onset: {inner:?}")))?;
        Ok(Onset::Irrational(x))
    } else {
        Ok(Onset::Exact(parse_rat(token)?))
    }
}

impl FromStr for Rhythm {
    type Err = Error;

    /// Parses `span=1; 0:C4 1/4:E4 1/2:rest 3/4:G4`; the token
    /// `irr(<float>)` marks an onset as irrational.
    fn from_str(s: &str) -> Result<Self> {
        let (head, tail) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse("expected `span=<q>; <events>`".into()))?;
        let span_text = head
            .trim()
            .strip_prefix("span=")
            .ok_or_else(|| Error::Parse("expected leading span=<q>".into()))?;
        let span = parse_rat(span_text.trim())?;
        let mut events = Vec::new();
        for token in tail.split_whitespace() {
            let (onset_text, payload_text) = token
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected <onset>:<payload>: {token:?}")))?;
            let onset = parse_onset(onset_text)?;
            let payload = if payload_text == "rest" {
                None
            } else {
                Some(payload_text.parse()?)
            };
            events.push(RhythmEvent { onset, payload });
        }
        make_rhythm(span, events)
    }
}
