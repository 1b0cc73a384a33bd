use crate::error::{Error, Result};
use crate::slp::{Alphabet, Slp};

use super::{hamming_recursive, subsequence_recursive};

// Bit value of each symbol of a binary alphabet: glyph "1" is set; without glyphs, symbol 1.
fn bits(a: &Alphabet) -> Result<Vec<bool>> {
    if a.size() > 2 {
        return Err(Error::NonBinaryAlphabet(a.size()));
    }
    Ok((0..a.size()).map(|s| a.glyph(s) == "1").collect())
}

fn gadget(s: &Slp, zero: &str, one: &str) -> Result<Slp> {
    let b = Alphabet::binary();
    let images: Vec<Vec<u32>> = bits(s.alphabet())?
        .into_iter()
        .map(|bit| b.encode(if bit { one } else { zero }).expect("binary literal"))
        .collect();
    s.substitute(&images, b)
}

fn check_pair(p: &Slp, t: &Slp) -> Result<()> {
    bits(p.alphabet())?;
    bits(t.alphabet())?;
    if p.len() != t.len() {
        return Err(Error::UnequalLength(p.len(), t.len()));
    }
    Ok(())
}

/// Disjointness as subsequence: the first string embeds in the second iff no position has two ones.
pub fn disj_to_subsequence(p: &Slp, t: &Slp) -> Result<(Slp, Slp)> {
    check_pair(p, t)?;
    Ok((gadget(p, "0", "10")?, gadget(t, "10", "0")?))
}

/// Disjointness as Hamming distance: disjoint iff the images differ in exactly `|p|` positions.
/// Position pairs (0,0), (0,1), (1,0) cost one and (1,1) costs three.
pub fn disj_to_hamming(p: &Slp, t: &Slp) -> Result<(Slp, Slp, u64)> {
    check_pair(p, t)?;
    Ok((gadget(p, "011", "000")?, gadget(t, "001", "111")?, p.len()))
}

/// True iff no position holds a one in both strings.
pub fn disjointness(p: &Slp, t: &Slp) -> Result<bool> {
    let (hp, ht, n) = disj_to_hamming(p, t)?;
    Ok(hamming_recursive(&hp, &ht)? == n)
}

/// Answers from every available route.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DisjointReport {
    pub hamming: bool,
    pub subsequence: bool,
    /// Direct scan of the decompressed strings, when they fit under the limit.
    pub scan: Option<bool>,
}

impl DisjointReport {
    pub fn agree(&self) -> bool {
        self.hamming == self.subsequence && self.scan.is_none_or(|s| s == self.hamming)
    }
}

pub fn disjointness_routes(p: &Slp, t: &Slp, max_decompress: u64) -> Result<DisjointReport> {
    let hamming = disjointness(p, t)?;
    let (sp, st) = disj_to_subsequence(p, t)?;
    let subsequence = subsequence_recursive(&sp, &st)?;
    let scan = if p.len() <= max_decompress {
        let (bp, bt) = (bits(p.alphabet())?, bits(t.alphabet())?);
        let (x, y) = (p.eval(max_decompress)?, t.eval(max_decompress)?);
        Some(x.iter().zip(&y).all(|(&a, &b)| !(bp[a as usize] && bt[b as usize])))
    } else {
        None
    };
    Ok(DisjointReport { hamming, subsequence, scan })
}
