//! Unified error taxonomy for the analysis kernel.

use thiserror::Error;

/// Every failure the kernel can report.
///
/// Variants are shared across modules so callers can match on one type;
/// each operation documents which variants it can produce.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Raising a ratio or approximate value to a non-integer power cannot be
    /// done exactly.
    #[error("non-exact power: cannot raise a non-power-of-two value to a non-integer exponent exactly")]
    NonExactPower,
    /// An argument left the domain an operation is defined on
    /// (e.g. a growth-witness query on a value that is not greater than 1).
    #[error("domain error: {0}")]
    DomainError(String),
    /// The requested axiom is not checkable in this implementation.
    #[error("unsupported axiom: {0}")]
    UnsupportedAxiom(String),
    /// A set operation that needs at least one element received none.
    #[error("empty set")]
    EmptySet,
    /// A measure that must lie on the active harmonic grid does not.
    #[error("not a harmonic measure on the active grid")]
    NotHarmonic,
    /// A value is off the grid an analysis is defined on
    /// (e.g. evenness analysis over fractional-semitone steps).
    #[error("value is not on the analysis grid")]
    NotOnGrid,
    /// Scale steps whose product is not exactly one octave (or its inverse).
    #[error("step product violates the octave constraint")]
    OctaveProductViolation,
    /// A step between consecutive elements is not harmonic on the active grid.
    #[error("non-harmonic step")]
    NonHarmonicStep,
    /// A tuple that must be nonempty was empty.
    #[error("empty tuple")]
    EmptyTuple,
    /// A binary scale operation was applied to scales with different tonics.
    #[error("scales are not parallel (tonics differ)")]
    NotParallel,
    /// A scale degree index outside 1..=degree-count.
    #[error("degree index out of range")]
    DegreeOutOfRange,
    /// A name that is not in the catalog.
    #[error("unknown name: {0}")]
    UnknownName(String),
    /// A pitch tuple that must strictly ascend does not.
    #[error("pitches are not strictly ascending")]
    NotAscending,
    /// A three-note chord whose step pair is not a recognized triad shape.
    #[error("not a recognized triad shape")]
    NotATriadShape,
    /// A melody that must strictly ascend does not.
    #[error("melody is not strictly ascending")]
    NotAscendingMelody,
    /// Scale inference produced no candidate.
    #[error("no scale found")]
    NoScaleFound,
    /// A modulation was attempted between melodies with identical scale sets.
    #[error("melodies share the same scale set")]
    SameScale,
    /// A rhythm operation that requires regularity received an irregular rhythm.
    #[error("irregular rhythm")]
    IrregularRhythm,
    /// Malformed text for one of the kernel's value formats.
    /// Position information is attached by the command-line layer.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
