//! Concrete models of the sound axioms and a sampling axiom checker.
//!
//! Three interpretations are provided. The *cartesian* model reads a sound
//! as a triple of positive reals: pitch order compares first coordinates,
//! intervals are congruent when their frequency ratios agree, intensity is
//! the second coordinate, and the spectrum is a sinusoid built from all
//! three. The *affine* model keeps the same pitch order but declares
//! `[x,y] ≅ [z,t]` when `2y−x = 2t−z`; the *circle* model places sounds on
//! angles with counterclockwise arcs under π as the pitch order and arc
//! congruence taken mod π. The two alternative models intentionally break
//! the regularity laws, and the checker finds those breaks by search and
//! reports concrete, re-checkable witnesses rather than hardcoding them.
//!
//! Universally quantified statements are sample-checked (deterministically
//! per seed); existential statements are verified by explicit witness
//! construction. Exactness lives in the measure types; relations here are
//! over floats with a relative tolerance of 1e-12.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::measure::{approx_eq, rat_int};
use crate::notes::Note;
use crate::scales::{
    is_maximally_even_scale, named_scale, semitone_step, sensible, tetrachords,
    triad_scale_based, Direction,
};

const TWO_PI: f64 = 2.0 * PI;
/// Absolute tolerance for angle arithmetic and for distances to integers
/// in logarithmic pitch space.
const INTEGER_TOL: f64 = 1e-9;

/// A sound: three strictly positive coordinates. The cartesian model uses
/// all three (pitch, intensity, phase offset); the affine model reads only
/// the first; the circle model reads the first as an angle mod 2π.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sound {
    f1: f64,
    f2: f64,
    f3: f64,
}

impl Sound {
    pub fn new(f1: f64, f2: f64, f3: f64) -> Result<Sound> {
        for v in [f1, f2, f3] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::DomainError(
                    "sound coordinates must be finite and strictly positive".into(),
                ));
            }
        }
        Ok(Sound { f1, f2, f3 })
    }

    pub fn f1(&self) -> f64 {
        self.f1
    }

    pub fn f2(&self) -> f64 {
        self.f2
    }

    pub fn f3(&self) -> f64 {
        self.f3
    }
}

impl fmt::Display for Sound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.f1, self.f2, self.f3)
    }
}

/// Which interpretation of the undefined concepts to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelId {
    Cartesian,
    Affine,
    Circle,
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ModelId::Cartesian => "cartesian",
            ModelId::Affine => "affine",
            ModelId::Circle => "circle",
        };
        write!(f, "{name}")
    }
}

impl FromStr for ModelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cartesian" => Ok(ModelId::Cartesian),
            "affine" => Ok(ModelId::Affine),
            "circle" => Ok(ModelId::Circle),
            other => Err(Error::UnknownName(other.into())),
        }
    }
}

fn angle(s: &Sound) -> f64 {
    s.f1.rem_euclid(TWO_PI)
}

/// Counterclockwise arc from `x` to `y`, in [0, 2π).
fn arc(x: &Sound, y: &Sound) -> f64 {
    (angle(y) - angle(x)).rem_euclid(TWO_PI)
}

/// Signed comparison with combined absolute/relative tolerance, for affine
/// combinations that may cross zero.
fn signed_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

fn near_integer(x: f64) -> bool {
    (x - x.round()).abs() <= INTEGER_TOL
}

/// Identity in pitch: equal first coordinates (cartesian and affine), or
/// equal-or-antipodal angles (circle).
pub fn identical_pitched(model: ModelId, x: &Sound, y: &Sound) -> bool {
    match model {
        ModelId::Cartesian | ModelId::Affine => approx_eq(x.f1, y.f1),
        ModelId::Circle => {
            let a = arc(x, y);
            a <= INTEGER_TOL || (a - PI).abs() <= INTEGER_TOL || TWO_PI - a <= INTEGER_TOL
        }
    }
}

/// The pitch order: strictly smaller first coordinate, or a
/// counterclockwise arc of length in (0, π).
pub fn lower_pitched(model: ModelId, x: &Sound, y: &Sound) -> bool {
    if identical_pitched(model, x, y) {
        return false;
    }
    match model {
        ModelId::Cartesian | ModelId::Affine => x.f1 < y.f1,
        ModelId::Circle => arc(x, y) < PI,
    }
}

/// Interval congruence `[a,b] ≅ [c,d]` in the chosen model.
pub fn congruent(model: ModelId, a: &Sound, b: &Sound, c: &Sound, d: &Sound) -> bool {
    match model {
        ModelId::Cartesian => approx_eq(b.f1 / a.f1, d.f1 / c.f1),
        ModelId::Affine => signed_eq(2.0 * b.f1 - a.f1, 2.0 * d.f1 - c.f1),
        ModelId::Circle => {
            let difference = (arc(a, b) - arc(c, d)).rem_euclid(PI);
            difference <= INTEGER_TOL || PI - difference <= INTEGER_TOL
        }
    }
}

/// Equal tone classes in the cartesian model: the frequency ratio is an
/// integer power of two.
fn equitonal(x: &Sound, y: &Sound) -> bool {
    near_integer((y.f1 / x.f1).log2())
}

/// Harmonic interval in the cartesian model: the frequency ratio is an
/// integer power of the twelfth root of two.
fn harmonic_pair(a: &Sound, b: &Sound) -> bool {
    harmonic_value(b.f1 / a.f1)
}

fn harmonic_value(ratio: f64) -> bool {
    near_integer(12.0 * ratio.log2())
}

/// The periodic-wave descriptor of a cartesian sound: period, range
/// diameter, and vertical offset of `t ↦ ½·f2·sin(2πt/f1) + f3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumDescriptor {
    pub period: f64,
    pub diameter: f64,
    pub offset: f64,
}

pub fn spectrum(x: &Sound) -> SpectrumDescriptor {
    SpectrumDescriptor { period: x.f1, diameter: x.f2, offset: x.f3 }
}

/// A pitch interval `[low, high]` on the first coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PitchSegment {
    pub low: f64,
    pub high: f64,
}

impl PitchSegment {
    pub fn contains(&self, s: &Sound) -> bool {
        self.low <= s.f1 && s.f1 <= self.high
    }
}

/// The convex hull of a finite sound set in the cartesian model: the
/// segment between the extreme pitches.
pub fn convex_hull(model: ModelId, sounds: &[Sound]) -> Result<PitchSegment> {
    if model != ModelId::Cartesian {
        return Err(Error::DomainError(
            "convex hulls are defined in the cartesian model only".into(),
        ));
    }
    if sounds.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut low = f64::INFINITY;
    let mut high = f64::NEG_INFINITY;
    for s in sounds {
        low = low.min(s.f1);
        high = high.max(s.f1);
    }
    Ok(PitchSegment { low, high })
}

/// Outcome of checking one axiom in one model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

/// A concrete counterexample: the sound tuple in the documented order for
/// its axiom, the violated item of a multi-part axiom, and a short
/// description of the broken clause.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub sounds: Vec<Sound>,
    pub item: Option<u8>,
    pub violation: String,
}

/// The checker's result for one (model, axiom) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    pub axiom_id: u8,
    pub model: ModelId,
    pub verdict: Verdict,
    pub samples_checked: u64,
    pub witness: Option<Witness>,
}

impl AxiomReport {
    /// Re-evaluate the stored witness from scratch. A passing report
    /// re-verifies trivially; a failing one must reproduce its violation.
    pub fn reverify(&self) -> bool {
        match (self.verdict, &self.witness) {
            (Verdict::Pass, _) => true,
            (Verdict::Fail, Some(w)) => {
                witness_violates(self.model, self.axiom_id, w.item, &w.sounds)
            }
            (Verdict::Fail, None) => false,
        }
    }
}

impl fmt::Display for AxiomReport {
    /// `AXIOM <id> <model> <PASS|FAIL> samples=<n> [witness=...]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        };
        write!(
            f,
            "AXIOM {} {} {} samples={}",
            self.axiom_id, self.model, verdict, self.samples_checked
        )?;
        if let Some(w) = &self.witness {
            write!(f, " witness=")?;
            if let Some(item) = w.item {
                write!(f, "item{item}:")?;
            }
            write!(f, "(")?;
            for (i, s) in w.sounds.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{s}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Does the tuple (in the documented order for `axiom_id`/`item`) violate
/// the axiom in `model`? This is the single re-verification path for every
/// witness the checker emits.
pub fn witness_violates(
    model: ModelId,
    axiom_id: u8,
    item: Option<u8>,
    sounds: &[Sound],
) -> bool {
    let lp = |x: &Sound, y: &Sound| lower_pitched(model, x, y);
    let id = |x: &Sound, y: &Sound| identical_pitched(model, x, y);
    let cg = |a: &Sound, b: &Sound, c: &Sound, d: &Sound| congruent(model, a, b, c, d);
    match (axiom_id, item, sounds) {
        (1, _, [x]) => lp(x, x),
        (2, _, [x, y, z]) => lp(x, y) && lp(y, z) && !lp(x, z),
        (3, _, [x, y]) => !(lp(x, y) || lp(y, x)),
        (4, _, [x, y, z]) => lp(x, y) && id(x, z) && id(y, z),
        (5, Some(1), [a, x, b]) => !(lp(a, x) && lp(x, b)),
        (5, Some(2), [x, a, y]) => lp(x, y) && !(lp(x, a) && lp(a, y)),
        (6, _, [a, b]) => !cg(a, b, a, b),
        (7, _, [a, b, c, d, e, f]) => {
            cg(a, b, c, d) && cg(c, d, e, f) && !cg(a, b, e, f)
        }
        // Motion can only fail here by having no solution at all; in the
        // affine model the required sound is forced to a non-positive value.
        (8, _, [x, y, a]) => {
            model == ModelId::Affine && y.f1 + (a.f1 - x.f1) / 2.0 <= 0.0
        }
        (9, Some(1), [a, b, c, d]) => lp(a, b) && cg(a, b, c, d) && !lp(c, d),
        (9, Some(2), [a, b, c, d]) => {
            (cg(a, b, c, d) && !cg(b, a, d, c)) || (cg(b, a, d, c) && !cg(a, b, c, d))
        }
        (10, Some(1), [a, b, c, a2, b2, c2]) => {
            lp(a, b)
                && lp(b, c)
                && cg(a, b, a2, b2)
                && cg(b, c, b2, c2)
                && !cg(a, c, a2, c2)
        }
        (10, Some(2), [a, b, c, a2, b2, c2]) => {
            lp(a, b)
                && lp(b, c)
                && cg(a, b, b2, a2)
                && cg(b, c, c2, b2)
                && !cg(a, c, c2, a2)
        }
        (12, _, [s, x]) => !id(x, s),
        (13, _, [x]) => {
            let d = spectrum(x);
            !(approx_eq(d.period, x.f1) && approx_eq(d.diameter, x.f2))
        }
        (14, _, [x, y]) => spectrum(x) == spectrum(y) && x != y,
        (15, Some(1), [x, y]) => id(x, y) && !equitonal(x, y),
        (15, Some(2), [x, y, z]) => equitonal(x, z) && equitonal(y, z) && !equitonal(x, y),
        (16, _, [s, t, a, b]) => {
            equitonal(s, t)
                && approx_eq(t.f1 / s.f1, 2.0)
                && cg(a, b, s, t)
                && !(equitonal(a, b) && approx_eq(b.f1 / a.f1, 2.0))
        }
        (17, Some(1), [a, b, c, d]) => {
            lp(a, b) && harmonic_pair(a, b) && cg(a, b, c, d) && !harmonic_pair(c, d)
        }
        (17, Some(2), [a, b]) => {
            harmonic_pair(a, b) && !id(a, b) && !harmonic_pair(b, a)
        }
        (18, _, [a, b, c, d]) => {
            let r = b.f1 / a.f1;
            let r2 = d.f1 / c.f1;
            let premise = harmonic_value(r)
                && harmonic_value(r2)
                && ((r > 1.0 && r2 > 1.0) || (r > 1.0 && r2 < 1.0));
            premise && !harmonic_value(r * r2)
        }
        (19, _, [a, b]) => {
            let r = b.f1 / a.f1;
            harmonic_pair(a, b) && r > 1.0 + INTEGER_TOL && r < 2f64.powf(1.0 / 12.0) * (1.0 - INTEGER_TOL)
        }
        (20, _, []) => !gamme_scale_exists(),
        _ => false,
    }
}

/// The constructive content of the final axiom: the major scale on C is
/// heptatonic, compatible, maximally even, ascending-sensible only, has a
/// disjoint pair of equal tetrachords, and carries the major triad on its
/// tonic.
fn gamme_scale_exists() -> bool {
    let Ok(scale) = named_scale("major", Note::c()) else {
        return false;
    };
    if scale.ascent().len() != 7 || !scale.is_compatible() {
        return false;
    }
    if !matches!(is_maximally_even_scale(&scale), Ok(true)) {
        return false;
    }
    let (ascending, descending) = sensible(&scale);
    if !ascending || descending {
        return false;
    }
    let tonic = scale.tonic().clone();
    let tets = tetrachords(&scale);
    let mut found_equal_disjoint = false;
    for i in 0..tets.len() {
        for j in i + 1..tets.len() {
            let disjoint = tets[i]
                .components
                .intersection(&tets[j].components)
                .all(|n| *n == tonic);
            if disjoint && tets[i].steps == tets[j].steps {
                found_equal_disjoint = true;
            }
        }
    }
    if !found_equal_disjoint {
        return false;
    }
    let major_third = semitone_step(rat_int(4));
    let minor_third = semitone_step(rat_int(3));
    matches!(
        triad_scale_based((&major_third, &minor_third), &scale, 1, Direction::Ascendent),
        Ok(true)
    )
}

/// Deterministic sound sampler for one model.
struct Sampler {
    rng: ChaCha8Rng,
    model: ModelId,
}

impl Sampler {
    fn new(model: ModelId, seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), model }
    }

    fn coordinate(&mut self) -> f64 {
        self.rng.gen_range(0.1..10.0)
    }

    fn sound(&mut self) -> Sound {
        let f1 = match self.model {
            ModelId::Cartesian | ModelId::Affine => self.coordinate(),
            ModelId::Circle => self.rng.gen_range(1e-3..TWO_PI - 1e-3),
        };
        Sound { f1, f2: self.coordinate(), f3: self.coordinate() }
    }

    fn at_angle(&mut self, theta: f64) -> Sound {
        let mut wrapped = theta.rem_euclid(TWO_PI);
        if wrapped <= 0.0 {
            wrapped = TWO_PI;
        }
        Sound { f1: wrapped, f2: self.coordinate(), f3: self.coordinate() }
    }

    fn at_pitch(&mut self, f1: f64) -> Sound {
        Sound { f1, f2: self.coordinate(), f3: self.coordinate() }
    }

    /// A pair with the first sound strictly lower-pitched.
    fn ordered_pair(&mut self) -> (Sound, Sound) {
        match self.model {
            ModelId::Cartesian | ModelId::Affine => loop {
                let x = self.sound();
                let y = self.sound();
                if (x.f1 - y.f1).abs() > 1e-6 {
                    return if x.f1 < y.f1 { (x, y) } else { (y, x) };
                }
            },
            ModelId::Circle => {
                let x = self.sound();
                let alpha = self.rng.gen_range(0.01..PI - 0.01);
                let y = self.at_angle(angle(&x) + alpha);
                (x, y)
            }
        }
    }

    /// A triple with consecutive pitch ascents. On the circle the two arcs
    /// may sum past π, which is exactly where transitivity gets tested.
    fn ordered_triple(&mut self) -> (Sound, Sound, Sound) {
        match self.model {
            ModelId::Cartesian | ModelId::Affine => loop {
                let mut sounds = [self.sound(), self.sound(), self.sound()];
                sounds.sort_by(|a, b| a.f1.partial_cmp(&b.f1).expect("finite"));
                let [x, y, z] = sounds;
                if y.f1 - x.f1 > 1e-6 && z.f1 - y.f1 > 1e-6 {
                    return (x, y, z);
                }
            },
            ModelId::Circle => {
                let x = self.sound();
                let alpha = self.rng.gen_range(0.01..PI - 0.01);
                let beta = self.rng.gen_range(0.01..PI - 0.01);
                let y = self.at_angle(angle(&x) + alpha);
                let z = self.at_angle(angle(&x) + alpha + beta);
                (x, y, z)
            }
        }
    }

    /// A sound `d` with `[a,b] ≅ [c,d]`, when one exists. On the circle
    /// both congruent branches (arc and arc+π) are exercised at random.
    fn congruent_partner(&mut self, a: &Sound, b: &Sound, c: &Sound) -> Option<Sound> {
        match self.model {
            ModelId::Cartesian => Some(self.at_pitch(c.f1 * b.f1 / a.f1)),
            ModelId::Affine => {
                let d1 = (2.0 * b.f1 - a.f1 + c.f1) / 2.0;
                (d1 > 1e-9).then(|| self.at_pitch(d1))
            }
            ModelId::Circle => {
                let mut target = arc(a, b);
                if self.rng.gen_bool(0.5) {
                    target += PI;
                }
                Some(self.at_angle(angle(c) + target))
            }
        }
    }

    /// A sound `d` with `[a,b] ≅ [d,c]` (congruence to the conversion),
    /// when one exists.
    fn conversion_partner(&mut self, a: &Sound, b: &Sound, c: &Sound) -> Option<Sound> {
        match self.model {
            ModelId::Cartesian => Some(self.at_pitch(c.f1 * a.f1 / b.f1)),
            ModelId::Affine => {
                let d1 = 2.0 * c.f1 - 2.0 * b.f1 + a.f1;
                (d1 > 1e-9).then(|| self.at_pitch(d1))
            }
            ModelId::Circle => {
                let mut target = arc(a, b);
                if self.rng.gen_bool(0.5) {
                    target += PI;
                }
                Some(self.at_angle(angle(c) - target))
            }
        }
    }
}

struct Verification {
    samples: u64,
    witness: Option<Witness>,
}

impl Verification {
    fn pass(samples: u64) -> Self {
        Verification { samples, witness: None }
    }

    fn fail(samples: u64, sounds: Vec<Sound>, item: Option<u8>, violation: &str) -> Self {
        Verification {
            samples,
            witness: Some(Witness { sounds, item, violation: violation.into() }),
        }
    }
}

/// Check one axiom in one model: `sample_count` deterministic samples per
/// universally quantified claim (seeded), constructive witnesses for
/// existential claims. The continuity axiom (11) is out of scope in every
/// model, and the loudness/colour/tonality/harmony axioms (12–20) are only
/// interpreted in the cartesian model.
pub fn check_axiom(
    model: ModelId,
    axiom_id: u8,
    sample_count: u64,
    seed: u64,
) -> Result<AxiomReport> {
    if !(1..=20).contains(&axiom_id) {
        return Err(Error::DomainError(format!(
            "axiom id out of range 1..=20: {axiom_id}"
        )));
    }
    if axiom_id == 11 {
        return Err(Error::UnsupportedAxiom("model-inherited".into()));
    }
    if axiom_id >= 12 && model != ModelId::Cartesian {
        return Err(Error::UnsupportedAxiom(format!(
            "uninterpreted in the {model} model"
        )));
    }
    let mut sampler = Sampler::new(model, seed);
    let outcome = run_axiom(model, axiom_id, sample_count, &mut sampler);
    let verdict = if outcome.witness.is_some() { Verdict::Fail } else { Verdict::Pass };
    let report = AxiomReport {
        axiom_id,
        model,
        verdict,
        samples_checked: outcome.samples,
        witness: outcome.witness,
    };
    debug_assert!(report.reverify(), "witness failed to re-verify: {report}");
    Ok(report)
}

fn run_axiom(model: ModelId, axiom_id: u8, n: u64, s: &mut Sampler) -> Verification {
    let lp = |x: &Sound, y: &Sound| lower_pitched(model, x, y);
    let id = |x: &Sound, y: &Sound| identical_pitched(model, x, y);
    let cg = |a: &Sound, b: &Sound, c: &Sound, d: &Sound| congruent(model, a, b, c, d);
    match axiom_id {
        // No sound is lower-pitched than itself.
        1 => {
            for k in 0..n {
                let x = s.sound();
                if lp(&x, &x) {
                    return Verification::fail(k + 1, vec![x], None, "x * x held");
                }
            }
            Verification::pass(n)
        }
        // The pitch order is transitive.
        2 => {
            for k in 0..n {
                let (x, y, z) = s.ordered_triple();
                if !lp(&x, &z) {
                    return Verification::fail(
                        k + 1,
                        vec![x, y, z],
                        None,
                        "x * y and y * z but not x * z",
                    );
                }
            }
            Verification::pass(n)
        }
        // Some pair of sounds is strictly ordered: constructive.
        3 => {
            let (x, y) = s.ordered_pair();
            if lp(&x, &y) || lp(&y, &x) {
                Verification::pass(1)
            } else {
                Verification::fail(1, vec![x, y], None, "constructed pair is unordered")
            }
        }
        // No sound is identical to both ends of a strict pitch step.
        4 => {
            for k in 0..n {
                let (x, y) = s.ordered_pair();
                let z = s.sound();
                if id(&x, &z) && id(&y, &z) {
                    return Verification::fail(
                        k + 1,
                        vec![x, y, z],
                        None,
                        "one sound identical to both ends",
                    );
                }
            }
            Verification::pass(n)
        }
        // Every sound is between two others, and between any ordered pair
        // lies a third: both verified by constructed witnesses.
        5 => {
            for k in 0..n {
                let x = s.sound();
                let (below, above) = match model {
                    ModelId::Cartesian | ModelId::Affine => {
                        (s.at_pitch(x.f1 * 0.5), s.at_pitch(x.f1 * 1.5))
                    }
                    ModelId::Circle => (
                        s.at_angle(angle(&x) - PI / 4.0),
                        s.at_angle(angle(&x) + PI / 4.0),
                    ),
                };
                if !(lp(&below, &x) && lp(&x, &above)) {
                    return Verification::fail(
                        k + 1,
                        vec![below, x, above],
                        Some(1),
                        "constructed neighbors fail to bracket",
                    );
                }
                let (lo, hi) = s.ordered_pair();
                let mid = match model {
                    ModelId::Cartesian | ModelId::Affine => {
                        s.at_pitch((lo.f1 + hi.f1) / 2.0)
                    }
                    ModelId::Circle => s.at_angle(angle(&lo) + arc(&lo, &hi) / 2.0),
                };
                if !(lp(&lo, &mid) && lp(&mid, &hi)) {
                    return Verification::fail(
                        k + 1,
                        vec![lo, mid, hi],
                        Some(2),
                        "constructed midpoint falls outside",
                    );
                }
            }
            Verification::pass(n)
        }
        // Congruence is reflexive.
        6 => {
            for k in 0..n {
                let a = s.sound();
                let b = s.sound();
                if !cg(&a, &b, &a, &b) {
                    return Verification::fail(
                        k + 1,
                        vec![a, b],
                        None,
                        "interval not congruent to itself",
                    );
                }
            }
            Verification::pass(n)
        }
        // Congruence is transitive.
        7 => {
            let mut checked = 0;
            for _ in 0..n {
                let a = s.sound();
                let b = s.sound();
                let c = s.sound();
                let Some(d) = s.congruent_partner(&a, &b, &c) else { continue };
                let e = s.sound();
                let Some(f) = s.congruent_partner(&c, &d, &e) else { continue };
                checked += 1;
                if !cg(&a, &b, &e, &f) {
                    return Verification::fail(
                        checked,
                        vec![a, b, c, d, e, f],
                        None,
                        "congruence chain broke",
                    );
                }
            }
            Verification::pass(checked)
        }
        // Motion: every interval re-roots at every sound, uniquely up to
        // identity. Existence is constructive; in the affine model the
        // forced solution can leave the positive reals, which is a failure.
        8 => {
            for k in 0..n {
                let x = s.sound();
                let y = s.sound();
                let a = s.sound();
                let b = match model {
                    ModelId::Cartesian => s.at_pitch(a.f1 * y.f1 / x.f1),
                    ModelId::Affine => {
                        let b1 = y.f1 + (a.f1 - x.f1) / 2.0;
                        if b1 <= 0.0 {
                            return Verification::fail(
                                k + 1,
                                vec![x, y, a],
                                None,
                                "no positive sound completes the motion",
                            );
                        }
                        s.at_pitch(b1)
                    }
                    ModelId::Circle => s.at_angle(angle(&a) + arc(&x, &y)),
                };
                if !cg(&x, &y, &a, &b) {
                    return Verification::fail(
                        k + 1,
                        vec![x, y, a],
                        None,
                        "constructed motion target not congruent",
                    );
                }
                // Uniqueness up to identity: the alternative solutions the
                // model admits are all identical-pitched to b.
                let unique = match model {
                    ModelId::Cartesian => {
                        let other = s.at_pitch(b.f1);
                        id(&b, &other)
                    }
                    ModelId::Affine => true,
                    ModelId::Circle => {
                        let antipode = s.at_angle(angle(&b) + PI);
                        cg(&x, &y, &a, &antipode) && id(&b, &antipode)
                    }
                };
                if !unique {
                    return Verification::fail(
                        k + 1,
                        vec![x, y, a],
                        None,
                        "motion target not unique up to identity",
                    );
                }
            }
            Verification::pass(n)
        }
        // Regularity: congruence respects direction, both ways.
        9 => {
            let mut checked = 0;
            for _ in 0..n {
                let (a, b) = s.ordered_pair();
                let c = s.sound();
                let Some(d) = s.congruent_partner(&a, &b, &c) else { continue };
                checked += 1;
                if !lp(&c, &d) {
                    return Verification::fail(
                        checked,
                        vec![a, b, c, d],
                        Some(1),
                        "congruent image of an ascent is not an ascent",
                    );
                }
                if !cg(&b, &a, &d, &c) {
                    return Verification::fail(
                        checked,
                        vec![a, b, c, d],
                        Some(2),
                        "conversions of congruent intervals not congruent",
                    );
                }
                // Reverse direction of the biconditional: build a pair
                // whose conversions are congruent and check the originals.
                let e = s.sound();
                let Some(f) = s.congruent_partner(&b, &a, &e) else { continue };
                if !cg(&a, &b, &f, &e) {
                    return Verification::fail(
                        checked,
                        vec![a, b, f, e],
                        Some(2),
                        "congruent conversions with incongruent originals",
                    );
                }
            }
            Verification::pass(checked)
        }
        // Interval addition, direct and converted.
        10 => {
            let mut checked = 0;
            for _ in 0..n {
                let (a, b, c) = s.ordered_triple();
                let a2 = s.sound();
                let Some(b2) = s.congruent_partner(&a, &b, &a2) else { continue };
                let Some(c2) = s.congruent_partner(&b, &c, &b2) else { continue };
                checked += 1;
                if !cg(&a, &c, &a2, &c2) {
                    return Verification::fail(
                        checked,
                        vec![a, b, c, a2, b2, c2],
                        Some(1),
                        "summed interval not congruent",
                    );
                }
                let Some(b3) = s.conversion_partner(&a, &b, &a2) else { continue };
                let Some(c3) = s.conversion_partner(&b, &c, &b3) else { continue };
                if !cg(&a, &c, &c3, &a2) {
                    return Verification::fail(
                        checked,
                        vec![a, b, c, a2, b3, c3],
                        Some(2),
                        "summed conversion not congruent",
                    );
                }
            }
            Verification::pass(checked)
        }
        // Intensity reaches every positive value inside every pitch class.
        12 => {
            for k in 0..n {
                let target = s.rng.gen_range(0.01..100.0);
                let base = s.sound();
                let witness = Sound { f1: base.f1, f2: target, f3: base.f3 };
                if !id(&witness, &base) || !approx_eq(witness.f2, target) {
                    return Verification::fail(
                        k + 1,
                        vec![base, witness],
                        None,
                        "no identical sound with the requested intensity",
                    );
                }
            }
            Verification::pass(n)
        }
        // The spectrum's period and diameter reproduce pitch and intensity.
        13 => {
            for k in 0..n {
                let x = s.sound();
                let d = spectrum(&x);
                if !(approx_eq(d.period, x.f1) && approx_eq(d.diameter, x.f2)) {
                    return Verification::fail(
                        k + 1,
                        vec![x],
                        None,
                        "descriptor disagrees with coordinates",
                    );
                }
            }
            Verification::pass(n)
        }
        // Equal spectra force equal sounds.
        14 => {
            for k in 0..n {
                let x = s.sound();
                let copy = x;
                if spectrum(&x) != spectrum(&copy) || x != copy {
                    return Verification::fail(
                        k + 1,
                        vec![x, copy],
                        None,
                        "copy has a different spectrum",
                    );
                }
                let mut shifted = x;
                shifted.f3 += 1.0;
                if spectrum(&x) == spectrum(&shifted) {
                    return Verification::fail(
                        k + 1,
                        vec![x, shifted],
                        None,
                        "distinct sounds share a spectrum",
                    );
                }
            }
            Verification::pass(n)
        }
        // Tonality: identity implies equitonality, and equitonality to a
        // common sound is transitive.
        15 => {
            for k in 0..n {
                let base = s.sound();
                let mate = Sound { f1: base.f1, f2: s.coordinate(), f3: s.coordinate() };
                if !equitonal(&base, &mate) {
                    return Verification::fail(
                        k + 1,
                        vec![base, mate],
                        Some(1),
                        "identical sounds not equitonal",
                    );
                }
                let z = s.sound();
                let j = s.rng.gen_range(-3..=3i32);
                let m = s.rng.gen_range(-3..=3i32);
                let x = s.at_pitch(z.f1 * 2f64.powi(j));
                let y = s.at_pitch(z.f1 * 2f64.powi(m));
                if !equitonal(&x, &y) {
                    return Verification::fail(
                        k + 1,
                        vec![x, y, z],
                        Some(2),
                        "equitonality failed to carry over",
                    );
                }
            }
            Verification::pass(n)
        }
        // Uniformity: anything congruent to an octave is an octave.
        16 => {
            for k in 0..n {
                let base = s.sound();
                let octave_top = s.at_pitch(base.f1 * 2.0);
                let a = s.sound();
                let b = s.at_pitch(a.f1 * 2.0);
                let witness = vec![base, octave_top, a, b];
                if !cg(&a, &b, &base, &octave_top)
                    || !(equitonal(&a, &b) && approx_eq(b.f1 / a.f1, 2.0))
                {
                    return Verification::fail(
                        k + 1,
                        witness,
                        None,
                        "congruent copy of an octave is not an octave",
                    );
                }
            }
            Verification::pass(n)
        }
        // Harmony survives congruence and conversion.
        17 => {
            for k in 0..n {
                let steps = s.rng.gen_range(1..=36);
                let a = s.sound();
                let b = s.at_pitch(a.f1 * 2f64.powf(steps as f64 / 12.0));
                let c = s.sound();
                let d = s.at_pitch(c.f1 * 2f64.powf(steps as f64 / 12.0));
                if !harmonic_pair(&c, &d) {
                    return Verification::fail(
                        k + 1,
                        vec![a, b, c, d],
                        Some(1),
                        "congruent image lost harmony",
                    );
                }
                if !harmonic_pair(&b, &a) {
                    return Verification::fail(
                        k + 1,
                        vec![a, b],
                        Some(2),
                        "conversion lost harmony",
                    );
                }
            }
            Verification::pass(n)
        }
        // Sums of harmonic steps stay harmonic.
        18 => {
            for k in 0..n {
                let m = s.rng.gen_range(1..=24);
                let choices = [s.rng.gen_range(1..=24), -s.rng.gen_range(1..=24)];
                let j = choices[usize::from(s.rng.gen_bool(0.5))];
                let a = s.sound();
                let b = s.at_pitch(a.f1 * 2f64.powf(m as f64 / 12.0));
                let c = s.sound();
                let d = s.at_pitch(c.f1 * 2f64.powf(j as f64 / 12.0));
                let product = (b.f1 / a.f1) * (d.f1 / c.f1);
                if !harmonic_value(product) {
                    return Verification::fail(
                        k + 1,
                        vec![a, b, c, d],
                        None,
                        "sum of harmonic steps not harmonic",
                    );
                }
            }
            Verification::pass(n)
        }
        // A least ascending harmonic step exists: the twelfth root of two.
        19 => {
            let alpha = 2f64.powf(1.0 / 12.0);
            for k in 0..n {
                let steps = s.rng.gen_range(1..=48);
                let a = s.sound();
                let b = s.at_pitch(a.f1 * 2f64.powf(steps as f64 / 12.0));
                if b.f1 / a.f1 < alpha * (1.0 - INTEGER_TOL) {
                    return Verification::fail(
                        k + 1,
                        vec![a, b],
                        None,
                        "an ascending harmonic step under the minimum",
                    );
                }
            }
            Verification::pass(n)
        }
        // The distinguished heptatonic scale exists with all its
        // structure: verified constructively through the scale machinery.
        20 => {
            if gamme_scale_exists() {
                Verification::pass(1)
            } else {
                Verification::fail(1, vec![], None, "distinguished scale construction failed")
            }
        }
        _ => unreachable!("axiom ids validated by check_axiom"),
    }
}
