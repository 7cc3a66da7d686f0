//! Exact-arithmetic kernel for music analysis: interval measures, model
//! checking, tonality, harmonic grids, scales and modes, notes and melodies,
//! chords, and rhythm.
//!
//! All core computations are exact (rational or symbolic powers of two);
//! floating point appears only in explicitly approximate values and in final
//! frequency projections.

pub mod chords;
pub mod error;
pub mod harmony;
pub mod measure;
pub mod melody;
pub mod model;
pub mod notes;
pub mod rhythm;
pub mod scales;
pub mod tonality;

pub use error::{Error, Result};
pub use measure::{Measure, Rat};
