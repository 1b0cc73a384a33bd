//! Decompress-and-solve baselines: context-free recognition and RNA folding.

mod cfg;
mod rna;

pub use cfg::{cfg_recognize, Cfg, Production, Sym};
pub use rna::{expand, rna_fold, wrna_fold, wrna_fold_expanded, PairedAlphabet, FOLD_CAP};
