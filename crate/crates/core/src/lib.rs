//! Symbolic dynamics of closed geodesics on the modular surface.
//!
//! The crate connects four descriptions of the same object:
//!
//! * positive cyclic words `∏ X^{k_i} Y^{m_i}` in two parabolic generators,
//! * their images in `SL(2, Z)` (exact, arbitrary precision),
//! * eventually periodic continued fractions of the attracting fixed point,
//! * Lorenz braids produced by Williams' ranking algorithm on the Lorenz template.
//!
//! On top of that it evaluates the closed-form volume bounds for complements of
//! canonical lifts, and provides generators plus exact trace-recurrence checkers
//! for the word families those bounds are stated for.

pub mod bounds;
pub mod coding;
pub mod families;
pub mod lorenz;

pub use bounds::{BoundParams, BoundReport, BoundsError};
pub use coding::{
    CodingError, CuttingSequence, CyclicWord, GeodesicCode, Letter, Mat2Z, PeriodicCF,
    QuadraticSurd, Syllable,
};
pub use families::{ClaimReport, FamilyError, FamilyId, TraceRecurrenceWitness, Verdict};
pub use lorenz::{BraidError, BraidPermutation, LorenzBraid, RingPartition};
