use std::collections::BTreeSet;
use std::path::Path;

use super::read_file;
use crate::error::{Error, Result};
use crate::slp::{self, Alphabet, Slp};

/// A string input: either an SLP file or plain text still waiting for an alphabet.
pub(crate) enum Text {
    Slp(Slp),
    Plain(String),
}

pub(crate) fn looks_like_slp(src: &str) -> bool {
    src.lines().map(str::trim).filter(|l| !l.is_empty()).any(|l| {
        l.starts_with("#! alphabet") || l.starts_with("#! sigma") || (l.starts_with('S') && l.contains('='))
    })
}

impl Text {
    pub fn load(path: &Path) -> Result<Text> {
        let src = read_file(path)?;
        if looks_like_slp(&src) {
            slp::parse(&src).map(Text::Slp)
        } else {
            Ok(Text::Plain(src.trim().to_string()))
        }
    }

    /// Tokens a plain text would contribute to an inferred alphabet.
    fn tokens(&self) -> Vec<String> {
        match self {
            Text::Slp(s) => (0..s.alphabet().size()).map(|a| s.alphabet().glyph(a)).collect(),
            Text::Plain(p) => {
                let words: Vec<&str> = p.split_whitespace().collect();
                if words.len() > 1 && words.iter().any(|w| w.chars().count() > 1) {
                    words.into_iter().map(String::from).collect()
                } else {
                    p.chars().filter(|c| !c.is_whitespace()).map(String::from).collect()
                }
            }
        }
    }

    /// Resolve to an SLP, encoding plain text with `alphabet`.
    pub fn into_slp(self, alphabet: &Alphabet) -> Result<Slp> {
        match self {
            Text::Slp(s) => Ok(s),
            Text::Plain(p) => Slp::from_str_in(&p, alphabet.clone()),
        }
    }

    /// Resolve with an alphabet inferred from this text alone.
    pub fn into_slp_inferred(self) -> Result<Slp> {
        let a = infer(&[&self])?;
        self.into_slp(&a)
    }
}

/// Sorted glyph set of the given inputs.
pub(crate) fn infer(texts: &[&Text]) -> Result<Alphabet> {
    let set: BTreeSet<String> = texts.iter().flat_map(|t| t.tokens()).collect();
    if set.is_empty() {
        return Err(Error::EmptyString);
    }
    let v: Vec<String> = set.into_iter().collect();
    Alphabet::with_glyphs(&v)
}

/// Load two strings; plain inputs share an alphabet inferred from both.
pub(crate) fn load_pair(a: &Path, b: &Path) -> Result<(Slp, Slp)> {
    let (x, y) = (Text::load(a)?, Text::load(b)?);
    let alpha = infer(&[&x, &y])?;
    Ok((x.into_slp(&alpha)?, y.into_slp(&alpha)?))
}

/// Decompress `s` and renumber its symbols into `target` by glyph.
pub(crate) fn eval_into(s: &Slp, target: &Alphabet, cap: u64) -> Result<Vec<u32>> {
    let text = s.eval(cap)?;
    if s.alphabet() == target {
        return Ok(text);
    }
    let map: Vec<u32> = (0..s.alphabet().size())
        .map(|a| {
            let g = s.alphabet().glyph(a);
            target.symbol_of(&g).ok_or(Error::UndeclaredSymbol(g))
        })
        .collect::<Result<_>>()?;
    Ok(text.into_iter().map(|a| map[a as usize]).collect())
}
