//! Straight-line programs: binary grammars that generate exactly one string.

mod alphabet;
mod balance;
mod builder;
mod text;

use std::sync::{Arc, OnceLock};

pub use alphabet::Alphabet;
pub use builder::{NodeId, SlpBuilder};
pub use text::{emit, parse};

use crate::error::{Error, Result};

/// Largest representable decompressed length.
pub const MAX_LEN: u64 = i64::MAX as u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Terminal(u32),
    /// Children are indices of earlier rules.
    Concat(usize, usize),
}

/// Size summary computed without decompressing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stats {
    /// Decompressed length.
    pub len: u64,
    /// Number of rules.
    pub rules: usize,
    pub depth: u32,
}

/// An immutable SLP. The last rule is the start symbol.
#[derive(Debug, Clone)]
pub struct Slp {
    alphabet: Alphabet,
    rules: Vec<Rule>,
    len: Vec<u64>,
    depth: Vec<u32>,
    balanced: OnceLock<Arc<Slp>>,
}

impl PartialEq for Slp {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.rules == other.rules
    }
}

impl Eq for Slp {}

impl Slp {
    /// Validate a rule list and compute lengths and depths.
    pub fn from_rules(alphabet: Alphabet, rules: Vec<Rule>) -> Result<Self> {
        if rules.is_empty() {
            return Err(Error::EmptyString);
        }
        let mut len: Vec<u64> = Vec::with_capacity(rules.len());
        let mut depth = Vec::with_capacity(rules.len());
        for (i, r) in rules.iter().enumerate() {
            match *r {
                Rule::Terminal(s) => {
                    alphabet.check(s)?;
                    len.push(1);
                    depth.push(0);
                }
                Rule::Concat(l, r) => {
                    if l >= i || r >= i {
                        return Err(Error::ForwardReference { line: i + 1, rule: i + 1, target: l.max(r) + 1 });
                    }
                    let n = len[l]
                        .checked_add(len[r])
                        .filter(|&n: &u64| n <= MAX_LEN)
                        .ok_or(Error::LengthOverflow)?;
                    len.push(n);
                    depth.push(1 + depth[l].max(depth[r]));
                }
            }
        }
        Ok(Slp { alphabet, rules, len, depth, balanced: OnceLock::new() })
    }

    /// Left-leaning SLP for a literal string; at most `2·|text|` rules.
    pub fn from_literal(text: &[u32], alphabet: Alphabet) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::EmptyString);
        }
        for &s in text {
            alphabet.check(s)?;
        }
        let mut b = SlpBuilder::new();
        let root = b.literal(text)?;
        b.finish(root, alphabet)
    }

    /// Parse `text` with `alphabet` glyphs, then build a literal SLP.
    pub fn from_str_in(text: &str, alphabet: Alphabet) -> Result<Self> {
        let syms = alphabet.encode(text)?;
        Self::from_literal(&syms, alphabet)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, i: usize) -> Rule {
        self.rules[i]
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    pub fn start(&self) -> usize {
        self.rules.len() - 1
    }

    /// Decompressed length `N`.
    pub fn len(&self) -> u64 {
        self.len[self.start()]
    }

    /// Always false: SLPs generate nonempty strings.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn depth(&self) -> u32 {
        self.depth[self.start()]
    }

    pub fn rule_len(&self, i: usize) -> u64 {
        self.len[i]
    }

    pub fn rule_depth(&self, i: usize) -> u32 {
        self.depth[i]
    }

    pub fn children(&self, i: usize) -> Option<(usize, usize)> {
        match self.rules[i] {
            Rule::Concat(l, r) => Some((l, r)),
            Rule::Terminal(_) => None,
        }
    }

    pub fn stats(&self) -> Stats {
        Stats { len: self.len(), rules: self.rule_count(), depth: self.depth() }
    }

    /// Same rules over a (larger) alphabet.
    pub fn with_alphabet(&self, alphabet: Alphabet) -> Result<Self> {
        Slp::from_rules(alphabet, self.rules.clone())
    }

    /// Decompress the start rule, refusing outputs longer than `max_len`.
    pub fn eval(&self, max_len: u64) -> Result<Vec<u32>> {
        self.eval_rule(self.start(), max_len)
    }

    pub fn eval_rule(&self, i: usize, max_len: u64) -> Result<Vec<u32>> {
        let len = self.len[i];
        if len > max_len {
            return Err(Error::TooLarge { len, limit: max_len });
        }
        let mut out = Vec::with_capacity(len as usize);
        let mut stack = vec![i];
        while let Some(j) = stack.pop() {
            match self.rules[j] {
                Rule::Terminal(s) => out.push(s),
                Rule::Concat(l, r) => {
                    stack.push(r);
                    stack.push(l);
                }
            }
        }
        Ok(out)
    }

    /// Glyph rendering of the decompressed string.
    pub fn eval_string(&self, max_len: u64) -> Result<String> {
        Ok(self.alphabet.decode(&self.eval(max_len)?))
    }

    /// Symbol at 1-based position `i`, by descending with the stored lengths.
    pub fn char_at(&self, i: u64) -> Result<u32> {
        self.char_at_rule(self.start(), i)
    }

    pub fn char_at_rule(&self, rule: usize, i: u64) -> Result<u32> {
        let n = self.len[rule];
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        let mut node = rule;
        let mut pos = i;
        loop {
            match self.rules[node] {
                Rule::Terminal(s) => return Ok(s),
                Rule::Concat(l, r) => {
                    if pos <= self.len[l] {
                        node = l;
                    } else {
                        pos -= self.len[l];
                        node = r;
                    }
                }
            }
        }
    }

    /// `eval(self)^k`, adding at most `2·floor(log2 k)` rules.
    pub fn repeat(&self, k: u64) -> Result<Self> {
        let mut b = SlpBuilder::from_slp(self);
        let root = b.power(self.start(), k)?;
        b.finish_verbatim(root, self.alphabet.clone())
    }

    /// `eval(a) ∘ eval(b)`: the rules of `a`, then those of `b` shifted, then one new root.
    pub fn concat(a: &Slp, b: &Slp) -> Result<Self> {
        if a.alphabet != b.alphabet {
            return Err(Error::AlphabetMismatch("concat needs equal alphabets".into()));
        }
        let shift = a.rules.len();
        let mut rules = a.rules.clone();
        rules.extend(b.rules.iter().map(|r| match *r {
            Rule::Terminal(s) => Rule::Terminal(s),
            Rule::Concat(l, r) => Rule::Concat(l + shift, r + shift),
        }));
        rules.push(Rule::Concat(a.start(), shift + b.start()));
        Slp::from_rules(a.alphabet.clone(), rules)
    }

    /// Replace every terminal `s` by the literal `images[s]` over `alphabet`.
    pub fn substitute(&self, images: &[Vec<u32>], alphabet: Alphabet) -> Result<Self> {
        if images.len() < self.alphabet.size() as usize {
            return Err(Error::AlphabetMismatch("substitution misses symbols".into()));
        }
        let mut b = SlpBuilder::new();
        let mut map = Vec::with_capacity(self.rules.len());
        for r in &self.rules {
            let id = match *r {
                Rule::Terminal(s) => {
                    for &x in &images[s as usize] {
                        alphabet.check(x)?;
                    }
                    b.literal(&images[s as usize])?
                }
                Rule::Concat(l, r) => b.concat(map[l], map[r])?,
            };
            map.push(id);
        }
        b.finish(*map.last().expect("nonempty"), alphabet)
    }

    /// True when every concatenation joins children whose depths differ by at most one.
    pub fn is_avl(&self) -> bool {
        self.rules.iter().all(|r| match *r {
            Rule::Terminal(_) => true,
            Rule::Concat(l, r) => self.depth[l].abs_diff(self.depth[r]) <= 1,
        })
    }

    /// AVL-balanced SLP with the same string. Already balanced inputs are returned as-is.
    pub fn balance(&self) -> Result<Self> {
        if self.is_avl() {
            return Ok(self.clone_uncached());
        }
        balance::balance(self)
    }

    /// Cached [`balance`](Self::balance).
    pub fn balanced(&self) -> Result<Arc<Slp>> {
        if let Some(b) = self.balanced.get() {
            return Ok(b.clone());
        }
        let b = Arc::new(self.balance()?);
        Ok(self.balanced.get_or_init(|| b).clone())
    }

    fn clone_uncached(&self) -> Self {
        Slp {
            alphabet: self.alphabet.clone(),
            rules: self.rules.clone(),
            len: self.len.clone(),
            depth: self.depth.clone(),
            balanced: OnceLock::new(),
        }
    }
}
