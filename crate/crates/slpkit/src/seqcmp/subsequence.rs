use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::slp::{Rule, Slp};

/// Per-rule symbol-presence bitsets over a (balanced) SLP.
pub(crate) struct Occurrences<'a> {
    slp: &'a Slp,
    words: usize,
    has: Vec<u64>,
}

impl<'a> Occurrences<'a> {
    pub(crate) fn new(slp: &'a Slp) -> Self {
        let words = (slp.alphabet().size() as usize).div_ceil(64);
        let mut has = vec![0u64; words * slp.rule_count()];
        for i in 0..slp.rule_count() {
            match slp.rule(i) {
                Rule::Terminal(a) => has[i * words + a as usize / 64] |= 1 << (a % 64),
                Rule::Concat(l, r) => {
                    for w in 0..words {
                        has[i * words + w] = has[l * words + w] | has[r * words + w];
                    }
                }
            }
        }
        Occurrences { slp, words, has }
    }

    fn contains(&self, rule: usize, a: u32) -> bool {
        self.has[rule * self.words + a as usize / 64] >> (a % 64) & 1 == 1
    }

    /// 0-based position of the first `a` in rule `i` at or after `from`.
    pub(crate) fn next(&self, i: usize, a: u32, from: u64) -> Option<u64> {
        if from >= self.slp.rule_len(i) || !self.contains(i, a) {
            return None;
        }
        match self.slp.rule(i) {
            Rule::Terminal(_) => Some(0),
            Rule::Concat(l, r) => {
                let ll = self.slp.rule_len(l);
                if from < ll {
                    if let Some(x) = self.next(l, a, from) {
                        return Some(x);
                    }
                }
                self.next(r, a, from.saturating_sub(ll)).map(|x| x + ll)
            }
        }
    }
}

/// Greedy leftmost embedding of a plain pattern, jumping between occurrences on the balanced grammar.
pub fn subsequence_avl(text: &Slp, pattern: &[u32]) -> Result<bool> {
    let sigma = text.alphabet().size();
    if let Some(&a) = pattern.iter().find(|&&a| a >= sigma) {
        return Err(Error::AlphabetMismatch(format!("pattern symbol {a} is outside the text alphabet")));
    }
    let t = text.balanced()?;
    let occ = Occurrences::new(&t);
    let mut pos = 0u64;
    for &a in pattern {
        match occ.next(t.start(), a, pos) {
            Some(x) => pos = x + 1,
            None => return Ok(false),
        }
    }
    Ok(true)
}

/// Plain greedy scan.
pub fn subsequence_scan(text: &[u32], pattern: &[u32]) -> bool {
    let mut it = text.iter();
    pattern.iter().all(|p| it.any(|t| t == p))
}

// State `d` for pattern rule P and text rule T:
//   d >= 0: the first d symbols of P are matched and T is untouched;
//   d <  0: P is untouched and the first -d symbols of T are used up.
// Result r:
//   r >= 0: T ran out after r symbols of P were matched in total;
//   r <  0: P completed, its last symbol at position -r of T.
struct Subseq<'a> {
    p: &'a Slp,
    t: &'a Slp,
    occ: Occurrences<'a>,
    memo: HashMap<(usize, usize, i64), i64>,
}

impl Subseq<'_> {
    fn run(&mut self, i: usize, j: usize, d: i64) -> i64 {
        let (pl, tl) = (self.p.rule_len(i) as i64, self.t.rule_len(j) as i64);
        if -d >= tl {
            return 0;
        }
        if let Some(&v) = self.memo.get(&(i, j, d)) {
            return v;
        }
        let v = if let Rule::Terminal(a) = self.p.rule(i) {
            match self.occ.next(j, a, (-d).max(0) as u64) {
                Some(x) => -(x as i64 + 1),
                None => 0,
            }
        } else if let Rule::Terminal(b) = self.t.rule(j) {
            // here d >= 0 and d < |P|
            let a = self.p.char_at_rule(i, d as u64 + 1).expect("in range");
            match (a == b, d + 1 == pl) {
                (true, true) => -1,
                (true, false) => d + 1,
                (false, _) => d,
            }
        } else if pl >= tl {
            let (l, r) = self.p.children(i).expect("concat");
            let ll = self.p.rule_len(l) as i64;
            if d >= ll {
                let x = self.run(r, j, d - ll);
                if x >= 0 {
                    x + ll
                } else {
                    x
                }
            } else {
                let x = self.run(l, j, d);
                if x >= 0 {
                    x
                } else {
                    let y = self.run(r, j, x);
                    if y >= 0 {
                        y + ll
                    } else {
                        y
                    }
                }
            }
        } else {
            let (l, r) = self.t.children(j).expect("concat");
            let ll = self.t.rule_len(l) as i64;
            if d < 0 && -d >= ll {
                let y = self.run(i, r, d + ll);
                if y < 0 {
                    y - ll
                } else {
                    y
                }
            } else {
                let x = self.run(i, l, d);
                if x < 0 {
                    x
                } else {
                    let y = self.run(i, r, x);
                    if y < 0 {
                        y - ll
                    } else {
                        y
                    }
                }
            }
        };
        self.memo.insert((i, j, d), v);
        v
    }
}

/// Subsequence test with both strings compressed, by memoized recursion on the balanced grammars.
pub fn subsequence_recursive(pattern: &Slp, text: &Slp) -> Result<bool> {
    let (p, t) = super::common_alphabet(pattern, text)?;
    let (p, t) = (p.balanced()?, t.balanced()?);
    let mut s = Subseq { p: &p, t: &t, occ: Occurrences::new(&t), memo: HashMap::new() };
    Ok(s.run(p.start(), t.start(), 0) < 0)
}
