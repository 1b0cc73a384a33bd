//! Generalized pattern matching: a compressed text against a plain pattern under a cost table.

mod compressed;
mod conv;

pub use compressed::gpm_compressed;
pub use conv::gpm_decompressed;

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::slp::{Alphabet, Slp};

/// Default cap on the decompressed pattern length.
pub const PATTERN_CAP: u64 = 1 << 26;

/// Cost of aligning each pattern symbol against each text symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostFn {
    pattern: Alphabet,
    text: Alphabet,
    table: Vec<u64>,
    wildcard: Option<u32>,
}

/// Minimum total cost over all offsets and the smallest offset attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchResult {
    pub min_cost: u64,
    pub best_offset: u64,
}

impl CostFn {
    /// `rows[p][t]` is the cost of pattern symbol `p` over text symbol `t`.
    pub fn new(pattern: Alphabet, text: Alphabet, rows: &[Vec<u64>], wildcard: Option<u32>) -> Result<Self> {
        let (sp, st) = (pattern.size() as usize, text.size() as usize);
        if rows.len() != sp || rows.iter().any(|r| r.len() != st) {
            return Err(Error::invalid(format!("cost table must be {sp}x{st}")));
        }
        if let Some(w) = wildcard {
            pattern.check(w)?;
            if rows[w as usize].iter().any(|&c| c != 0) {
                return Err(Error::invalid("wildcard row must be all zero"));
            }
        }
        Ok(CostFn { pattern, text, table: rows.concat(), wildcard })
    }

    /// `[p != t]`, comparing symbols by glyph.
    pub fn hamming(pattern: &Alphabet, text: &Alphabet) -> Self {
        Self::wildcard(pattern, text, None)
    }

    /// Zero for `wildcard`, otherwise `[glyph(p) != glyph(t)]`.
    pub fn wildcard(pattern: &Alphabet, text: &Alphabet, wildcard: Option<u32>) -> Self {
        let tg: Vec<String> = (0..text.size()).map(|t| text.glyph(t)).collect();
        let mut table = Vec::with_capacity(pattern.size() as usize * tg.len());
        for p in 0..pattern.size() {
            let g = pattern.glyph(p);
            for t in &tg {
                table.push(u64::from(Some(p) != wildcard && g != *t));
            }
        }
        CostFn { pattern: pattern.clone(), text: text.clone(), table, wildcard }
    }

    pub fn pattern_alphabet(&self) -> &Alphabet {
        &self.pattern
    }

    pub fn text_alphabet(&self) -> &Alphabet {
        &self.text
    }

    pub fn wildcard_symbol(&self) -> Option<u32> {
        self.wildcard
    }

    #[inline]
    pub fn cost(&self, p: u32, t: u32) -> u64 {
        self.table[p as usize * self.text.size() as usize + t as usize]
    }

    pub fn max_cost(&self) -> u64 {
        self.table.iter().copied().max().unwrap_or(0)
    }

    /// Same table with `c` added to every non-wildcard entry.
    pub fn shifted(&self, c: u64) -> Self {
        let st = self.text.size() as usize;
        let mut out = self.clone();
        for (i, v) in out.table.iter_mut().enumerate() {
            if Some((i / st) as u32) != self.wildcard {
                *v += c;
            }
        }
        out
    }

    /// Parse `costs σP σT`, σP rows of σT integers, optional `wildcard <index>`.
    pub fn parse(src: &str) -> Result<Self> {
        let mut lines = src
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, head) = lines.next().ok_or_else(|| Error::parse(1, "missing `costs` header"))?;
        let h: Vec<&str> = head.split_whitespace().collect();
        let dims = match h.as_slice() {
            ["costs", a, b] => a.parse::<u32>().ok().zip(b.parse::<u32>().ok()),
            _ => None,
        };
        let (sp, st) = dims.ok_or_else(|| Error::parse(ln, "expected `costs <sigmaP> <sigmaT>`"))?;
        let mut rows = Vec::new();
        let mut wildcard = None;
        for (ln, l) in lines {
            if let Some(w) = l.strip_prefix("wildcard") {
                wildcard = Some(w.trim().parse::<u32>().map_err(|_| Error::parse(ln, "bad wildcard index"))?);
                continue;
            }
            let row: std::result::Result<Vec<u64>, _> = l.split_whitespace().map(str::parse::<u64>).collect();
            let row = row.map_err(|_| Error::parse(ln, "costs are nonnegative integers"))?;
            if row.len() != st as usize {
                return Err(Error::parse(ln, format!("expected {st} costs")));
            }
            rows.push(row);
        }
        if rows.len() != sp as usize {
            return Err(Error::parse(0, format!("expected {sp} cost rows, found {}", rows.len())));
        }
        CostFn::new(Alphabet::new(sp)?, Alphabet::new(st)?, &rows, wildcard)
    }

    pub fn emit(&self) -> String {
        let st = self.text.size() as usize;
        let mut out = format!("costs {} {}\n", self.pattern.size(), st);
        for row in self.table.chunks(st) {
            let r: Vec<String> = row.iter().map(u64::to_string).collect();
            out.push_str(&r.join(" "));
            out.push('\n');
        }
        if let Some(w) = self.wildcard {
            out.push_str(&format!("wildcard {w}\n"));
        }
        out
    }
}

pub(crate) fn check_symbols(s: &[u32], a: &Alphabet) -> Result<()> {
    s.iter().try_for_each(|&x| a.check(x))
}

fn glyph_set(a: &Alphabet) -> HashSet<String> {
    (0..a.size()).map(|s| a.glyph(s)).collect()
}

/// Decide whether the pattern matches somewhere, `*` in the pattern alphabet matching anything.
pub fn wildcard_match(text: &Slp, pattern: &Slp) -> Result<bool> {
    let w = pattern.alphabet().symbol_of("*");
    wildcard_match_with(text, pattern, w)
}

pub fn wildcard_match_with(text: &Slp, pattern: &Slp, wildcard: Option<u32>) -> Result<bool> {
    if pattern.len() > text.len() {
        return Err(Error::PatternLongerThanText { pattern: pattern.len(), text: text.len() });
    }
    let p = pattern.eval(PATTERN_CAP)?;
    let cost = CostFn::wildcard(pattern.alphabet(), text.alphabet(), wildcard);
    Ok(gpm_compressed(text, &p, &cost)?.min_cost == 0)
}

/// Minimum Hamming distance of the pattern against any window of the text.
pub fn substring_hd(text: &Slp, pattern: &Slp) -> Result<u64> {
    if pattern.len() > text.len() {
        return Err(Error::PatternLongerThanText { pattern: pattern.len(), text: text.len() });
    }
    let (gp, gt) = (glyph_set(pattern.alphabet()), glyph_set(text.alphabet()));
    if !gp.is_subset(&gt) && !gt.is_subset(&gp) {
        return Err(Error::AlphabetMismatch("pattern and text alphabets are unrelated".into()));
    }
    let p = pattern.eval(PATTERN_CAP)?;
    let cost = CostFn::hamming(pattern.alphabet(), text.alphabet());
    Ok(gpm_compressed(text, &p, &cost)?.min_cost)
}
