use std::collections::HashMap;

use crate::error::{Error, Result};

/// Dense symbol range `0..size`, with an optional printable glyph per symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    size: u32,
    glyphs: Option<Vec<String>>,
}

impl Alphabet {
    pub fn new(size: u32) -> Result<Self> {
        if size == 0 {
            return Err(Error::invalid("alphabet size must be at least 1"));
        }
        Ok(Alphabet { size, glyphs: None })
    }

    /// Alphabet whose symbol `i` prints as `glyphs[i]`.
    pub fn with_glyphs<S: AsRef<str>>(glyphs: &[S]) -> Result<Self> {
        if glyphs.is_empty() {
            return Err(Error::invalid("alphabet size must be at least 1"));
        }
        let mut seen = HashMap::new();
        let mut out = Vec::with_capacity(glyphs.len());
        for (i, g) in glyphs.iter().enumerate() {
            let g = g.as_ref();
            if g.is_empty() || g.chars().any(|c| c.is_whitespace() || c == '"') {
                return Err(Error::invalid(format!("glyph {g:?} must be nonempty, without whitespace or quotes")));
            }
            if seen.insert(g.to_string(), i).is_some() {
                return Err(Error::invalid(format!("glyph {g:?} used twice")));
            }
            out.push(g.to_string());
        }
        let size = u32::try_from(out.len()).map_err(|_| Error::invalid("alphabet too large"))?;
        Ok(Alphabet { size, glyphs: Some(out) })
    }

    /// One glyph per character of `chars`.
    pub fn from_chars(chars: &str) -> Result<Self> {
        let glyphs: Vec<String> = chars.chars().map(String::from).collect();
        Self::with_glyphs(&glyphs)
    }

    /// `{0, 1}`.
    pub fn binary() -> Self {
        Self::from_chars("01").expect("static alphabet")
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn glyphs(&self) -> Option<&[String]> {
        self.glyphs.as_deref()
    }

    /// Printable token for `symbol`; the decimal index when no glyph map is set.
    pub fn glyph(&self, symbol: u32) -> String {
        match &self.glyphs {
            Some(g) if (symbol as usize) < g.len() => g[symbol as usize].clone(),
            _ => symbol.to_string(),
        }
    }

    pub fn symbol_of(&self, glyph: &str) -> Option<u32> {
        match &self.glyphs {
            Some(g) => g.iter().position(|x| x == glyph).map(|p| p as u32),
            None => glyph.parse::<u32>().ok().filter(|&s| s < self.size),
        }
    }

    pub fn check(&self, symbol: u32) -> Result<()> {
        if symbol < self.size {
            Ok(())
        } else {
            Err(Error::SymbolOutOfRange { symbol, size: self.size })
        }
    }

    fn single_char_glyphs(&self) -> bool {
        match &self.glyphs {
            Some(g) => g.iter().all(|x| x.chars().count() == 1),
            None => self.size <= 10,
        }
    }

    /// Parse text into symbols. Whitespace-separated tokens are looked up as glyphs;
    /// a token that is not a glyph is split into characters when every glyph is one character.
    pub fn encode(&self, text: &str) -> Result<Vec<u32>> {
        let mut out = Vec::new();
        for tok in text.split_whitespace() {
            if let Some(s) = self.symbol_of(tok) {
                out.push(s);
                continue;
            }
            if !self.single_char_glyphs() {
                return Err(Error::invalid(format!("unknown glyph {tok:?}")));
            }
            for c in tok.chars() {
                let s = self
                    .symbol_of(&c.to_string())
                    .ok_or_else(|| Error::invalid(format!("unknown glyph {c:?}")))?;
                out.push(s);
            }
        }
        Ok(out)
    }

    /// Render symbols; glyphs are concatenated when all are single characters, else space-separated.
    pub fn decode(&self, symbols: &[u32]) -> String {
        let parts: Vec<String> = symbols.iter().map(|&s| self.glyph(s)).collect();
        if self.single_char_glyphs() {
            parts.concat()
        } else {
            parts.join(" ")
        }
    }

    /// Same glyphs plus extra symbols appended at the end.
    pub fn extend<S: AsRef<str>>(&self, extra: &[S]) -> Result<Self> {
        let mut g: Vec<String> = (0..self.size).map(|s| self.glyph(s)).collect();
        g.extend(extra.iter().map(|s| s.as_ref().to_string()));
        Self::with_glyphs(&g)
    }
}
