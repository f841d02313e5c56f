//! Exact computation with episturmian words.
//!
//! An episturmian word is determined by a directive word `Δ = y_1 y_2 ⋯` and an
//! intercept, a digit sequence in the generalized Ostrowski numeration system
//! attached to `Δ`. This crate builds those objects with exact arithmetic:
//!
//! * [`words`] — finite-word primitives (palindromic closure, occurrences,
//!   primitivity, fractional powers);
//! * [`directive`] — directive words, their multiplicative form
//!   `x_1^{a_1} x_2^{a_2} ⋯`, and regularity detection;
//! * [`numeration`] — place values `q_k`, greedy digit expansions, and the
//!   Ostrowski validity conditions;
//! * [`engine`] — standard and central words, certified prefix generation for
//!   an arbitrary intercept, intercept decoding, and the digit odometer;
//! * [`complexity`] — initial nonrepetitive complexity by brute force, by
//!   Rauzy-graph traversal, and in closed form for regular directive words;
//! * [`exponents`] — Diophantine and initial critical exponent estimates,
//!   closed forms for standard words, and irrationality-exponent bounds.
//!
//! Everything that feeds a theorem-level formula is computed with
//! arbitrary-precision integers; floating point appears only when a final
//! estimate is displayed.

pub mod complexity;
pub mod directive;
pub mod engine;
pub mod error;
pub mod exponents;
pub mod numeration;
#[doc(hidden)]
pub mod testing;
pub mod words;

pub use directive::{DirectiveWord, MultiplicativeEntry};
pub use engine::{EpisturmianWord, SignedWord, WordTower};
pub use error::Error;
pub use numeration::{DigitString, NumerationSystem};
pub use words::{FiniteWord, Letter};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
