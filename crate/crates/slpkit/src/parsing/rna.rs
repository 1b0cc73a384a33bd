use std::ops::Add;

use crate::error::{Error, Result};
use crate::slp::Alphabet;

/// Default cap on the folded string length; the DP table is quadratic.
pub const FOLD_CAP: usize = 20_000;

/// Alphabet with a complement pairing and symmetric positive weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairedAlphabet {
    base: Alphabet,
    bar: Vec<Option<u32>>,
    weight: Vec<u64>,
}

impl PairedAlphabet {
    /// `pairs` lists complementary symbols; symbols outside every pair never match.
    pub fn new(base: Alphabet, pairs: &[(u32, u32)], weight: Vec<u64>) -> Result<Self> {
        let n = base.size() as usize;
        if weight.len() != n || weight.contains(&0) {
            return Err(Error::invalid("one positive weight per symbol"));
        }
        let mut bar = vec![None; n];
        for &(a, b) in pairs {
            base.check(a)?;
            base.check(b)?;
            if a == b {
                return Err(Error::invalid(format!("symbol {} cannot pair with itself", base.glyph(a))));
            }
            for (x, y) in [(a, b), (b, a)] {
                match bar[x as usize] {
                    Some(z) if z != y => {
                        return Err(Error::invalid(format!("symbol {} has two complements", base.glyph(x))))
                    }
                    _ => bar[x as usize] = Some(y),
                }
            }
        }
        for &(a, b) in pairs {
            if weight[a as usize] != weight[b as usize] {
                return Err(Error::invalid(format!(
                    "complements {} and {} have different weights",
                    base.glyph(a),
                    base.glyph(b)
                )));
            }
        }
        Ok(PairedAlphabet { base, bar, weight })
    }

    /// All weights one.
    pub fn unweighted(base: Alphabet, pairs: &[(u32, u32)]) -> Result<Self> {
        let w = vec![1; base.size() as usize];
        Self::new(base, pairs, w)
    }

    pub fn base(&self) -> &Alphabet {
        &self.base
    }

    pub fn complement(&self, a: u32) -> Option<u32> {
        self.bar[a as usize]
    }

    pub fn weight(&self, a: u32) -> u64 {
        self.weight[a as usize]
    }

    pub fn max_weight(&self) -> u64 {
        self.weight.iter().copied().max().unwrap_or(1)
    }

    pub fn with_weights(&self, weight: Vec<u64>) -> Result<Self> {
        let pairs = self.pairs();
        Self::new(self.base.clone(), &pairs, weight)
    }

    pub fn pairs(&self) -> Vec<(u32, u32)> {
        (0..self.bar.len() as u32).filter_map(|a| self.bar[a as usize].filter(|&b| a < b).map(|b| (a, b))).collect()
    }

    /// Parse a `pairs` section of `a ā` lines and an optional `weights` section of `a w` lines.
    /// The alphabet is every glyph in order of first appearance.
    pub fn parse(src: &str) -> Result<Self> {
        #[derive(PartialEq)]
        enum Section {
            None,
            Pairs,
            Weights,
        }
        let mut section = Section::None;
        let mut glyphs: Vec<String> = Vec::new();
        let intern = |g: &str, glyphs: &mut Vec<String>| -> u32 {
            match glyphs.iter().position(|x| x == g) {
                Some(i) => i as u32,
                None => {
                    glyphs.push(g.to_string());
                    glyphs.len() as u32 - 1
                }
            }
        };
        let mut pairs = Vec::new();
        let mut weights: Vec<(usize, u32, u64)> = Vec::new();
        for (ln, line) in src.lines().enumerate() {
            let ln = ln + 1;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = t.split_whitespace().collect();
            match (toks.as_slice(), &section) {
                (["pairs"], _) => section = Section::Pairs,
                (["weights"], _) => section = Section::Weights,
                ([a, b], Section::Pairs) => {
                    let x = intern(a, &mut glyphs);
                    let y = intern(b, &mut glyphs);
                    pairs.push((x, y));
                }
                ([a, w], Section::Weights) => {
                    let w = w.parse::<u64>().map_err(|_| Error::parse(ln, format!("bad weight {w:?}")))?;
                    let x = intern(a, &mut glyphs);
                    weights.push((ln, x, w));
                }
                _ => return Err(Error::parse(ln, "expected `pairs`, `weights`, or a two-token line")),
            }
        }
        if glyphs.is_empty() {
            return Err(Error::parse(1, "no symbols declared"));
        }
        let base = Alphabet::with_glyphs(&glyphs).map_err(|e| Error::parse(0, e.to_string()))?;
        let mut w = vec![1u64; glyphs.len()];
        for (ln, x, v) in weights {
            if v == 0 {
                return Err(Error::parse(ln, "weights are positive"));
            }
            w[x as usize] = v;
        }
        PairedAlphabet::new(base, &pairs, w).map_err(|e| match e {
            Error::Invalid(m) => Error::parse(0, m),
            e => e,
        })
    }

    pub fn emit(&self) -> String {
        let mut out = String::from("pairs\n");
        let mut listed = vec![false; self.bar.len()];
        for (a, b) in self.pairs() {
            out.push_str(&format!("{} {}\n", self.base.glyph(a), self.base.glyph(b)));
            listed[a as usize] = true;
            listed[b as usize] = true;
        }
        out.push_str("weights\n");
        for a in 0..self.base.size() {
            if self.weight[a as usize] != 1 || !listed[a as usize] {
                out.push_str(&format!("{} {}\n", self.base.glyph(a), self.weight[a as usize]));
            }
        }
        out
    }
}

fn check(text: &[u32], pairing: &PairedAlphabet) -> Result<()> {
    for &a in text {
        if a >= pairing.base.size() {
            return Err(Error::UndeclaredSymbol(format!("symbol {a}")));
        }
    }
    if text.len() > FOLD_CAP {
        return Err(Error::TooLarge { len: text.len() as u64, limit: FOLD_CAP as u64 });
    }
    Ok(())
}

// Nussinov recursion over the upper triangle:
//   F[i][j] = max(F[i+1][j], max over partners k of T[i]: w + F[i+1][k-1] + F[k+1][j])
fn fold<T: Copy + Ord + Default + Add<Output = T>>(text: &[u32], pairing: &PairedAlphabet, gain: impl Fn(u32) -> T) -> T {
    let n = text.len();
    if n < 2 {
        return T::default();
    }
    let sigma = pairing.base.size() as usize;
    // positions of each symbol, ascending
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); sigma];
    for (i, &a) in text.iter().enumerate() {
        at[a as usize].push(i);
    }
    let row = |i: usize| i * n - i * i.saturating_sub(1) / 2;
    // F(i, j) for i <= j lives at row(i) + (j - i); empty ranges are zero
    let mut f: Vec<T> = vec![T::default(); n * (n + 1) / 2];
    let get = |f: &Vec<T>, i: usize, j: isize| -> T {
        if (i as isize) > j {
            T::default()
        } else {
            f[row(i) + (j as usize - i)]
        }
    };
    for i in (0..n).rev() {
        let partners: &[usize] = match pairing.complement(text[i]) {
            Some(b) => {
                let v = &at[b as usize];
                &v[v.partition_point(|&k| k <= i)..]
            }
            None => &[],
        };
        let w = gain(text[i]);
        for j in i..n {
            let mut best = get(&f, i + 1, j as isize);
            for &k in partners {
                if k > j {
                    break;
                }
                let v = w + get(&f, i + 1, k as isize - 1) + get(&f, k + 1, j as isize);
                if v > best {
                    best = v;
                }
            }
            f[row(i) + (j - i)] = best;
        }
    }
    f[row(0) + n - 1]
}

/// Maximum number of non-crossing complementary pairs.
pub fn rna_fold(text: &[u32], pairing: &PairedAlphabet) -> Result<u64> {
    check(text, pairing)?;
    Ok(u64::from(fold(text, pairing, |_| 1u32)))
}

/// Maximum total weight of a non-crossing complementary pairing, each pair scoring its symbol weight.
pub fn wrna_fold(text: &[u32], pairing: &PairedAlphabet) -> Result<u64> {
    check(text, pairing)?;
    Ok(fold(text, pairing, |a| pairing.weight(a)))
}

/// Each symbol repeated by its weight.
pub fn expand(text: &[u32], pairing: &PairedAlphabet, max_len: u64) -> Result<Vec<u32>> {
    let total = text.iter().try_fold(0u64, |s, &a| {
        pairing.base.check(a)?;
        s.checked_add(pairing.weight(a)).ok_or(Error::LengthOverflow)
    })?;
    if total > max_len {
        return Err(Error::TooLarge { len: total, limit: max_len });
    }
    let mut out = Vec::with_capacity(total as usize);
    for &a in text {
        out.extend(std::iter::repeat_n(a, pairing.weight(a) as usize));
    }
    Ok(out)
}

/// Weighted folding through the unweighted problem on the expanded string.
pub fn wrna_fold_expanded(text: &[u32], pairing: &PairedAlphabet) -> Result<u64> {
    let e = expand(text, pairing, FOLD_CAP as u64)?;
    rna_fold(&e, pairing)
}
