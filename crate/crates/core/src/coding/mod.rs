//! Positive words in `{X, Y}`, their matrices, and continued-fraction codings.

mod cf;
mod matrix;
mod word;

pub use cf::{cf_of_code, cf_to_cutting, CuttingSequence, PeriodicCF, QuadraticSurd, Side};
pub use matrix::{length_from_trace, GeneratorScale, Mat2Z};
pub use word::{parse_word, CyclicWord, GeodesicCode, Letter, Syllable};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodingError {
    #[error("empty word")]
    EmptyWord,
    #[error("exponent must be a positive integer, found `{0}`")]
    NonPositiveExponent(String),
    #[error("word uses a single letter; positive words need both X and Y")]
    SingleLetterWord,
    #[error("malformed token at byte {position}: `{found}`")]
    MalformedToken { position: usize, found: String },
    #[error("matrix with trace {0} is not hyperbolic (trace must be at least 3)")]
    NotHyperbolic(String),
    #[error("lower-left entry is zero; the Moebius map fixes infinity")]
    DegenerateMoebius,
    #[error("no repeated state within {0} continued-fraction steps")]
    PeriodNotFound(usize),
    #[error("invalid quadratic surd: {0}")]
    InvalidSurd(&'static str),
    #[error("continued fraction of a negative number is not supported")]
    NegativeSurd,
    #[error("continued-fraction digit does not fit in 64 bits")]
    DigitOverflow,
    #[error("invalid continued fraction: {0}")]
    InvalidContinuedFraction(&'static str),
    #[error("determinant is {0}, expected 1")]
    DeterminantNotOne(String),
}

impl CodingError {
    /// True for errors caused by unparseable input text rather than by the math.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            CodingError::EmptyWord
                | CodingError::NonPositiveExponent(_)
                | CodingError::SingleLetterWord
                | CodingError::MalformedToken { .. }
        )
    }
}
