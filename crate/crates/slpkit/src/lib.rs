//! Algorithms on grammar-compressed strings.

pub mod error;
pub mod automata;
pub mod cli;
pub mod hardness;
pub mod matching;
pub mod parsing;
pub mod seqcmp;
pub mod slp;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use slp::{Alphabet, Rule, Slp, SlpBuilder, Stats};
