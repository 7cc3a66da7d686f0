//! Modes, scales, degrees, tetrachords, evenness, and the parallel-scale
//! lattice.
//!
//! A scale is a tonic plus an ascending step tuple whose measures multiply to
//! exactly an octave, and a descending tuple multiplying to exactly half.
//! When the descent mirrors the ascent (reversed inverses) the scale is
//! *compatible*. Degree classes generated by walking the steps live in the
//! same residue universe as [`Note`], so western and quarter-tone scales
//! share one component-set type.

use num_traits::{Signed, ToPrimitive};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::harmony::{is_harmonic, HarmonicGrid};
use crate::measure::{parse_rat, rat, rat_int, Measure, Rat};
use crate::notes::Note;

/// Melodic orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Ascendent,
    Descendent,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Ascendent => write!(f, "ascendent"),
            Direction::Descendent => write!(f, "descendent"),
        }
    }
}

/// The measure of a step spanning the given number of semitones.
pub fn semitone_step(semitones: Rat) -> Measure {
    Measure::pow2(semitones / rat_int(12))
}

/// Convenience: a step of `n/d` semitones.
pub fn step_frac(n: i64, d: i64) -> Measure {
    semitone_step(rat(n, d))
}

/// A mode: the set of step sizes a scale may draw from, with an orientation.
/// Valid modes tile the octave — some multiset of the steps multiplies to 2
/// (ascendent) or 1/2 (descendent).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mode {
    steps: Vec<Measure>,
    direction: Direction,
    grid: HarmonicGrid,
}

impl Mode {
    /// Steps are deduplicated and sorted. Each must be harmonic in `grid`
    /// and lie strictly on the orientation's side of the unit; the set must
    /// admit an exact octave tiling.
    pub fn new(
        steps: impl IntoIterator<Item = Measure>,
        direction: Direction,
        grid: HarmonicGrid,
    ) -> Result<Self> {
        let mut steps: Vec<Measure> = steps.into_iter().collect();
        steps.sort();
        steps.dedup();
        if steps.is_empty() {
            return Err(Error::EmptyTuple);
        }
        let one = Measure::one();
        for s in &steps {
            let oriented = match direction {
                Direction::Ascendent => *s > one,
                Direction::Descendent => *s < one,
            };
            if !is_harmonic(s, grid) || !oriented {
                return Err(Error::NonHarmonicStep);
            }
        }
        let mode = Mode {
            steps,
            direction,
            grid,
        };
        if mode.order_search().is_none() {
            return Err(Error::OctaveProductViolation);
        }
        Ok(mode)
    }

    pub fn steps(&self) -> &[Measure] {
        &self.steps
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn grid(&self) -> HarmonicGrid {
        self.grid
    }

    /// Exponent of each step in grid units (integral by construction),
    /// oriented upward.
    fn step_units(&self) -> Vec<u64> {
        self.steps
            .iter()
            .map(|s| {
                let m = match self.direction {
                    Direction::Ascendent => s.clone(),
                    Direction::Descendent => s.invert(),
                };
                let q = match m {
                    Measure::Pow2(q) => q,
                    _ => unreachable!("mode steps are harmonic"),
                };
                (q * rat_int(self.grid.granularity()))
                    .to_integer()
                    .to_u64()
                    .expect("step within an octave")
            })
            .collect()
    }

    /// Minimal total step count over all exact octave tilings: every step
    /// size used at least once, found by exact integer search.
    fn order_search(&self) -> Option<u64> {
        let units = self.step_units();
        if units.iter().any(|&u| u == 0) {
            return None;
        }
        let target = self.grid.granularity() as u64;
        let mandatory: u64 = units.iter().sum();
        if mandatory > target {
            return None;
        }
        let remainder = (target - mandatory) as usize;
        let mut dp = vec![u64::MAX; remainder + 1];
        dp[0] = 0;
        for t in 1..=remainder {
            for &u in &units {
                let u = u as usize;
                if u <= t && dp[t - u] != u64::MAX {
                    dp[t] = dp[t].min(dp[t - u] + 1);
                }
            }
        }
        match dp[remainder] {
            u64::MAX => None,
            extra => Some(units.len() as u64 + extra),
        }
    }

    /// The minimum of the total exponent sum over octave tilings.
    pub fn order(&self) -> u64 {
        self.order_search().expect("validated at construction")
    }
}

/// `true` iff the mode's step sizes span at most two consecutive semitone
/// counts `{k, k+1}`. Only defined on the western grid.
pub fn is_maximally_even_mode(m: &Mode) -> Result<bool> {
    let mut exponents = Vec::new();
    for s in m.steps() {
        let oriented = match m.direction() {
            Direction::Ascendent => s.clone(),
            Direction::Descendent => s.invert(),
        };
        let q = oriented
            .semitone_exponent()
            .filter(|q| q.is_integer())
            .ok_or(Error::NotOnGrid)?;
        exponents.push(q.to_integer().to_i64().expect("within an octave"));
    }
    let min = exponents.iter().min().expect("nonempty");
    let max = exponents.iter().max().expect("nonempty");
    Ok(max - min <= 1)
}

/// The degree classes generated by walking a scale's steps from its tonic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedModule {
    /// Classes reached going up: first entry is the tonic.
    pub ascent_degrees: Vec<Note>,
    /// Classes reached going down: first entry is the tonic.
    pub descent_degrees: Vec<Note>,
    /// Union of both degree lists.
    pub components: BTreeSet<Note>,
}

/// A scale: tonic, ascending steps multiplying to 2, descending steps
/// multiplying to 1/2, with the generated degrees precomputed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scale {
    tonic: Note,
    ascent: Vec<Measure>,
    descent: Vec<Measure>,
    grid: HarmonicGrid,
    module: GeneratedModule,
}

fn walk_degrees(tonic: &Note, steps: &[Measure]) -> Vec<Note> {
    let mut degrees = vec![tonic.clone()];
    let mut residue = tonic.residue().clone();
    for step in &steps[..steps.len() - 1] {
        let q = step
            .semitone_exponent()
            .expect("scale steps are harmonic powers of two");
        residue += q;
        degrees.push(Note::new(residue.clone()));
    }
    degrees
}

/// Build a validated scale. An omitted descent produces the compatible
/// mirror (the ascent reversed with each step inverted).
pub fn make_scale(
    tonic: Note,
    ascent: Vec<Measure>,
    descent: Option<Vec<Measure>>,
    grid: HarmonicGrid,
) -> Result<Scale> {
    if ascent.is_empty() {
        return Err(Error::EmptyTuple);
    }
    let one = Measure::one();
    for s in &ascent {
        if !is_harmonic(s, grid) || *s <= one {
            return Err(Error::NonHarmonicStep);
        }
    }
    let product = ascent
        .iter()
        .fold(Measure::one(), |acc, s| acc.compose(s));
    if product != Measure::octave() {
        return Err(Error::OctaveProductViolation);
    }
    let descent = match descent {
        Some(d) => {
            if d.is_empty() {
                return Err(Error::EmptyTuple);
            }
            for s in &d {
                if !is_harmonic(s, grid) || *s >= one {
                    return Err(Error::NonHarmonicStep);
                }
            }
            let product = d.iter().fold(Measure::one(), |acc, s| acc.compose(s));
            if product != Measure::pow2(rat_int(-1)) {
                return Err(Error::OctaveProductViolation);
            }
            d
        }
        None => ascent.iter().rev().map(Measure::invert).collect(),
    };
    let ascent_degrees = walk_degrees(&tonic, &ascent);
    let descent_degrees = walk_degrees(&tonic, &descent);
    let components = ascent_degrees
        .iter()
        .chain(descent_degrees.iter())
        .cloned()
        .collect();
    let module = GeneratedModule {
        ascent_degrees,
        descent_degrees,
        components,
    };
    Ok(Scale {
        tonic,
        ascent,
        descent,
        grid,
        module,
    })
}

impl Scale {
    pub fn tonic(&self) -> &Note {
        &self.tonic
    }

    pub fn ascent(&self) -> &[Measure] {
        &self.ascent
    }

    pub fn descent(&self) -> &[Measure] {
        &self.descent
    }

    pub fn grid(&self) -> HarmonicGrid {
        self.grid
    }

    pub fn module(&self) -> &GeneratedModule {
        &self.module
    }

    /// `true` iff the descent is the reversed inverse of the ascent.
    pub fn is_compatible(&self) -> bool {
        self.descent.len() == self.ascent.len()
            && self
                .descent
                .iter()
                .zip(self.ascent.iter().rev())
                .all(|(d, a)| *d == a.invert())
    }

    /// The set of distinct ascending step sizes, as a mode.
    pub fn ascent_mode(&self) -> Result<Mode> {
        Mode::new(self.ascent.iter().cloned(), Direction::Ascendent, self.grid)
    }
}

/// The degrees generated by the scale (precomputed at construction).
pub fn generated_module(s: &Scale) -> &GeneratedModule {
    s.module()
}

fn integer_semitones_upward(steps: &[Measure], orient_up: bool) -> Result<Vec<i64>> {
    steps
        .iter()
        .map(|s| {
            let m = if orient_up { s.clone() } else { s.invert() };
            m.semitone_exponent()
                .filter(|q| q.is_integer())
                .map(|q| q.to_integer().to_i64().expect("within range"))
                .ok_or(Error::NotOnGrid)
        })
        .collect()
}

fn cyclic_window_sums(seq: &[i64], window: usize, out: &mut BTreeSet<i64>) {
    let n = seq.len();
    for start in 0..n {
        let sum: i64 = (0..window).map(|j| seq[(start + j) % n]).sum();
        out.insert(sum);
    }
}

/// Evenness check: for every window index `k` up to the longer side's
/// length, all cyclic sums of `k+1` consecutive steps — ascent and descent
/// magnitudes pooled — must fit within two consecutive semitone totals.
pub fn is_maximally_even_scale(s: &Scale) -> Result<bool> {
    let ascent = integer_semitones_upward(s.ascent(), true)?;
    let descent = integer_semitones_upward(s.descent(), false)?;
    let max_k = ascent.len().max(descent.len());
    for k in 1..=max_k {
        let mut sums = BTreeSet::new();
        cyclic_window_sums(&ascent, k + 1, &mut sums);
        cyclic_window_sums(&descent, k + 1, &mut sums);
        let min = sums.iter().next().expect("nonempty");
        let max = sums.iter().next_back().expect("nonempty");
        if max - min > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rotate a compatible scale's ascent by `k` (1 ≤ k ≤ m), re-rooting it at
/// the k-th degree so the generated components are preserved.
pub fn circular_rearrangement(s: &Scale, k: usize) -> Result<Scale> {
    if !s.is_compatible() {
        return Err(Error::DomainError(
            "circular rearrangement requires a compatible scale".into(),
        ));
    }
    let m = s.ascent().len();
    if k < 1 || k > m {
        return Err(Error::DegreeOutOfRange);
    }
    let mut ascent = s.ascent().to_vec();
    ascent.rotate_left(k % m);
    let tonic = s.module().ascent_degrees[k % m].clone();
    make_scale(tonic, ascent, None, s.grid())
}

fn joined_grid(a: &Scale, b: &Scale) -> HarmonicGrid {
    if a.grid() == HarmonicGrid::Modal || b.grid() == HarmonicGrid::Modal {
        HarmonicGrid::Modal
    } else {
        HarmonicGrid::Western
    }
}

/// Rebuild the unique compatible scale whose components are the given set
/// (which must contain the tonic), ordered cyclically from the tonic.
pub(crate) fn scale_from_components(
    tonic: &Note,
    components: &BTreeSet<Note>,
    grid: HarmonicGrid,
) -> Result<Scale> {
    let mut distances: Vec<Rat> = components
        .iter()
        .map(|n| n.sub(tonic).residue().clone())
        .collect();
    distances.sort();
    debug_assert!(!distances[0].is_positive(), "tonic must be a component");
    let mut boundaries = distances;
    boundaries.push(rat_int(12));
    let ascent: Vec<Measure> = boundaries
        .windows(2)
        .map(|w| semitone_step(&w[1] - &w[0]))
        .collect();
    make_scale(tonic.clone(), ascent, None, grid)
}

/// Least upper bound of two parallel scales: the compatible scale on the
/// union of their components.
pub fn scale_join(a: &Scale, b: &Scale) -> Result<Scale> {
    if a.tonic() != b.tonic() {
        return Err(Error::NotParallel);
    }
    let union: BTreeSet<Note> = a
        .module()
        .components
        .union(&b.module().components)
        .cloned()
        .collect();
    scale_from_components(a.tonic(), &union, joined_grid(a, b))
}

/// Greatest lower bound of two parallel scales: the compatible scale on the
/// intersection of their components (never empty — both contain the tonic —
/// and degenerating to the one-step scale when only the tonic is shared).
pub fn scale_meet(a: &Scale, b: &Scale) -> Result<Scale> {
    if a.tonic() != b.tonic() {
        return Err(Error::NotParallel);
    }
    let intersection: BTreeSet<Note> = a
        .module()
        .components
        .intersection(&b.module().components)
        .cloned()
        .collect();
    scale_from_components(a.tonic(), &intersection, joined_grid(a, b))
}

/// Swap the roles of ascent and descent (each reversed and inverted). A
/// scale is compatible exactly when it equals its own inverse.
pub fn scale_inverse(s: &Scale) -> Scale {
    let ascent: Vec<Measure> = s.descent().iter().rev().map(Measure::invert).collect();
    let descent: Vec<Measure> = s.ascent().iter().rev().map(Measure::invert).collect();
    make_scale(s.tonic().clone(), ascent, Some(descent), s.grid())
        .expect("the inverse of a valid scale is valid")
}

/// Whether the last ascending step, and the last descending step, close
/// with a single semitone (the leading-tone property), reported per side.
pub fn sensible(s: &Scale) -> (bool, bool) {
    let eps = step_frac(1, 1);
    let ascendent = s.ascent().last().map_or(false, |m| *m == eps);
    let descendent = s.descent().last().map_or(false, |m| m.invert() == eps);
    (ascendent, descendent)
}

/// Three consecutive steps of one side of a scale, with the four degree
/// classes they span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tetrachord {
    pub direction: Direction,
    /// 1-indexed position of the middle step.
    pub position: usize,
    pub steps: [Measure; 3],
    pub components: BTreeSet<Note>,
}

fn collect_tetrachords(
    tonic: &Note,
    steps: &[Measure],
    degrees: &[Note],
    direction: Direction,
    out: &mut Vec<Tetrachord>,
) {
    let m = steps.len();
    for k in 2..m {
        let triple = [steps[k - 2].clone(), steps[k - 1].clone(), steps[k].clone()];
        let components = (k - 2..=k + 1)
            .map(|i| if i == m { tonic.clone() } else { degrees[i].clone() })
            .collect();
        out.push(Tetrachord {
            direction,
            position: k,
            steps: triple,
            components,
        });
    }
}

/// Every three-consecutive-step segment of the scale, both sides: positions
/// 2 through m−1 ascending and 2 through n−1 descending.
pub fn tetrachords(s: &Scale) -> Vec<Tetrachord> {
    let mut out = Vec::new();
    collect_tetrachords(
        s.tonic(),
        s.ascent(),
        &s.module().ascent_degrees,
        Direction::Ascendent,
        &mut out,
    );
    collect_tetrachords(
        s.tonic(),
        s.descent(),
        &s.module().descent_degrees,
        Direction::Descendent,
        &mut out,
    );
    out
}

/// Count unordered pairs of tetrachords sharing at most the tonic.
pub fn disjoint_tetrachord_pairs(tetrachords: &[Tetrachord], tonic: &Note) -> usize {
    let mut count = 0;
    for (i, a) in tetrachords.iter().enumerate() {
        for b in &tetrachords[i + 1..] {
            if a.components
                .intersection(&b.components)
                .all(|n| n == tonic)
            {
                count += 1;
            }
        }
    }
    count
}

/// `true` iff the three classes reached from the k-th degree (1-indexed) by
/// the two triad steps all lie among that side's degree classes.
pub fn triad_scale_based(
    triad_steps: (&Measure, &Measure),
    s: &Scale,
    degree_k: usize,
    direction: Direction,
) -> Result<bool> {
    let degrees = match direction {
        Direction::Ascendent => &s.module().ascent_degrees,
        Direction::Descendent => &s.module().descent_degrees,
    };
    if degree_k < 1 || degree_k > degrees.len() {
        return Err(Error::DegreeOutOfRange);
    }
    for step in [triad_steps.0, triad_steps.1] {
        if !is_harmonic(step, s.grid()) {
            return Err(Error::NotHarmonic);
        }
    }
    let sign = match direction {
        Direction::Ascendent => rat_int(1),
        Direction::Descendent => rat_int(-1),
    };
    let q1 = triad_steps.0.semitone_exponent().expect("harmonic");
    let q2 = triad_steps.1.semitone_exponent().expect("harmonic");
    let base = degrees[degree_k - 1].clone();
    let second = Note::new(base.residue() + &q1 * &sign);
    let third = Note::new(second.residue() + &q2 * &sign);
    let degree_set: BTreeSet<&Note> = degrees.iter().collect();
    Ok(degree_set.contains(&second) && degree_set.contains(&third))
}

/// One named step pattern from the catalog.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    /// Ascending steps in semitones (positive rationals).
    pub ascent_semitones: Vec<Rat>,
    /// Explicit descending steps in semitones (negative, descent order);
    /// absent for compatible patterns.
    pub descent_semitones: Option<Vec<Rat>>,
    pub grid: HarmonicGrid,
}

fn semis(values: &[(i64, i64)]) -> Vec<Rat> {
    values.iter().map(|&(n, d)| rat(n, d)).collect()
}

fn ints(values: &[i64]) -> Vec<Rat> {
    values.iter().map(|&n| rat_int(n)).collect()
}

/// The named patterns: the western family plus the quarter-tone eastern
/// family (variants suffixed `_variant`).
pub fn scale_catalog() -> Vec<CatalogEntry> {
    let western = |name, ascent: Vec<Rat>| CatalogEntry {
        name,
        ascent_semitones: ascent,
        descent_semitones: None,
        grid: HarmonicGrid::Western,
    };
    let eastern = |name, ascent: Vec<(i64, i64)>| CatalogEntry {
        name,
        ascent_semitones: semis(&ascent),
        descent_semitones: None,
        grid: HarmonicGrid::Modal,
    };
    vec![
        western("major", ints(&[2, 2, 1, 2, 2, 2, 1])),
        western("natural_minor", ints(&[2, 1, 2, 2, 1, 2, 2])),
        western("harmonic_minor", ints(&[2, 1, 2, 2, 1, 3, 1])),
        CatalogEntry {
            name: "melodic_minor",
            ascent_semitones: ints(&[2, 1, 2, 2, 2, 2, 1]),
            descent_semitones: Some(ints(&[-2, -2, -1, -2, -2, -1, -2])),
            grid: HarmonicGrid::Western,
        },
        western("pathetic_minor", ints(&[1, 2, 2, 2, 1, 2, 2])),
        western("chromatic", ints(&[1; 12])),
        western("neutral", ints(&[12])),
        western("whole_tone", ints(&[2; 6])),
        eastern("shur", vec![(3, 2), (3, 2), (2, 1), (2, 1), (1, 1), (2, 1), (2, 1)]),
        eastern("abuata", vec![(3, 2), (2, 1), (2, 1), (1, 1), (2, 1), (2, 1), (3, 2)]),
        eastern("bayate_zand", vec![(2, 1), (2, 1), (1, 1), (2, 1), (2, 1), (3, 2), (3, 2)]),
        eastern("nava", vec![(2, 1), (1, 1), (2, 1), (2, 1), (3, 2), (3, 2), (2, 1)]),
        eastern("dashti", vec![(1, 1), (2, 1), (2, 1), (3, 2), (3, 2), (2, 1), (2, 1)]),
        eastern("afshari", vec![(2, 1), (3, 2), (3, 2), (2, 1), (2, 1), (1, 1), (2, 1)]),
        eastern("saba", vec![(3, 2), (3, 2), (1, 1), (3, 1), (1, 1), (2, 1), (2, 1)]),
        eastern("saba_variant", vec![(3, 2), (3, 2), (3, 2), (5, 2), (1, 1), (2, 1), (2, 1)]),
        eastern("mahur", vec![(2, 1), (2, 1), (1, 1), (2, 1), (2, 1), (2, 1), (1, 1)]),
        eastern("rast", vec![(2, 1), (2, 1), (1, 1), (2, 1), (2, 1), (1, 1), (2, 1)]),
        eastern("homayun", vec![(3, 2), (5, 2), (1, 1), (2, 1), (1, 1), (2, 1), (2, 1)]),
        eastern("homayun_variant", vec![(2, 1), (3, 2), (5, 2), (1, 1), (2, 1), (1, 1), (2, 1)]),
        eastern("esfahan", vec![(2, 1), (1, 1), (2, 1), (2, 1), (3, 2), (5, 2), (1, 1)]),
        eastern("shushtari", vec![(1, 1), (3, 1), (1, 1), (2, 1), (1, 1), (2, 1), (2, 1)]),
        eastern("segah", vec![(2, 1), (3, 2), (3, 2), (2, 1), (3, 2), (3, 2), (2, 1)]),
        eastern("chaargah", vec![(3, 2), (5, 2), (1, 1), (2, 1), (3, 2), (5, 2), (1, 1)]),
    ]
}

/// Build the scale for `entry` rooted at `tonic`.
pub fn scale_from_entry(entry: &CatalogEntry, tonic: Note) -> Result<Scale> {
    let ascent = entry
        .ascent_semitones
        .iter()
        .map(|q| semitone_step(q.clone()))
        .collect();
    let descent = entry
        .descent_semitones
        .as_ref()
        .map(|d| d.iter().map(|q| semitone_step(q.clone())).collect());
    make_scale(tonic, ascent, descent, entry.grid)
}

/// Look up a catalog pattern by name (case-insensitive; hyphens allowed)
/// and root it at `tonic`.
pub fn named_scale(name: &str, tonic: Note) -> Result<Scale> {
    let key = name.to_ascii_lowercase().replace('-', "_");
    let catalog = scale_catalog();
    let entry = catalog
        .iter()
        .find(|e| e.name == key)
        .ok_or_else(|| Error::UnknownName(name.to_string()))?;
    scale_from_entry(entry, tonic)
}

impl fmt::Display for Scale {
    /// `"<TONIC>: s1 s2 … sn"` with ascending steps in semitones.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.tonic)?;
        for s in &self.ascent {
            let q = s
                .semitone_exponent()
                .expect("scale steps are harmonic powers of two");
            write!(f, " {q}")?;
        }
        Ok(())
    }
}

impl FromStr for Scale {
    type Err = Error;

    /// Parse `"<TONIC>: s1 s2 … sn"`; fractional steps select the
    /// quarter-tone grid automatically.
    fn from_str(text: &str) -> Result<Self> {
        let (tonic_part, steps_part) = text
            .split_once(':')
            .ok_or_else(|| Error::Parse("expected \"<TONIC>: steps…\"".into()))?;
        let tonic: Note = tonic_part.trim().parse()?;
        let semitones: Vec<Rat> = steps_part
            .split_whitespace()
            .map(parse_rat)
            .collect::<Result<_>>()?;
        let grid = if semitones.iter().all(|q| q.is_integer()) {
            HarmonicGrid::Western
        } else {
            HarmonicGrid::Modal
        };
        let ascent = semitones.into_iter().map(semitone_step).collect();
        make_scale(tonic, ascent, None, grid)
    }
}
