//! Sequence comparison on compressed strings: subsequence, Hamming distance, disjointness, LCS.

mod disjoint;
mod hamming;
mod lcs;
mod subsequence;

pub use disjoint::{disj_to_hamming, disj_to_subsequence, disjointness, disjointness_routes, DisjointReport};
pub use hamming::hamming_recursive;
pub use lcs::{lcs_dp, LcsReport, LCS_CELL_CAP};
pub use subsequence::{subsequence_avl, subsequence_recursive, subsequence_scan};

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::slp::Slp;

/// Re-express both grammars over one alphabet, identifying symbols by glyph.
/// The text keeps its numbering; glyphs only the pattern uses are appended.
pub(crate) fn common_alphabet(pattern: &Slp, text: &Slp) -> Result<(Slp, Slp)> {
    let (pa, ta) = (pattern.alphabet(), text.alphabet());
    if pa == ta {
        return Ok((pattern.clone(), text.clone()));
    }
    let gp: BTreeSet<String> = (0..pa.size()).map(|s| pa.glyph(s)).collect();
    let gt: BTreeSet<String> = (0..ta.size()).map(|s| ta.glyph(s)).collect();
    if !gp.is_subset(&gt) && !gt.is_subset(&gp) {
        return Err(Error::AlphabetMismatch("pattern and text alphabets are unrelated".into()));
    }
    let extra: Vec<String> = (0..pa.size()).map(|s| pa.glyph(s)).filter(|g| !gt.contains(g)).collect();
    let union = ta.extend(&extra)?;
    let images: Vec<Vec<u32>> =
        (0..pa.size()).map(|s| vec![union.symbol_of(&pa.glyph(s)).expect("glyph in union")]).collect();
    Ok((pattern.substitute(&images, union.clone())?, text.with_alphabet(union)?))
}
