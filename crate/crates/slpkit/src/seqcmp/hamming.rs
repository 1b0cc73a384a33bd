use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::slp::{Rule, Slp};

// Mismatches between text rule j and pattern rule i shifted right by d, over their overlap.
struct Ham<'a> {
    p: &'a Slp,
    t: &'a Slp,
    memo: HashMap<(usize, usize, i64), u64>,
}

impl Ham<'_> {
    fn run(&mut self, i: usize, j: usize, d: i64) -> u64 {
        let (pl, tl) = (self.p.rule_len(i) as i64, self.t.rule_len(j) as i64);
        if d >= tl || d + pl <= 0 {
            return 0;
        }
        if let (Rule::Terminal(a), Rule::Terminal(b)) = (self.p.rule(i), self.t.rule(j)) {
            return u64::from(a != b);
        }
        if let Some(&v) = self.memo.get(&(i, j, d)) {
            return v;
        }
        let v = match (self.p.children(i), self.t.children(j)) {
            (Some((l, r)), _) if pl >= tl || self.t.children(j).is_none() => {
                let ll = self.p.rule_len(l) as i64;
                self.run(l, j, d) + self.run(r, j, d + ll)
            }
            (_, Some((l, r))) => {
                let ll = self.t.rule_len(l) as i64;
                self.run(i, l, d) + self.run(i, r, d - ll)
            }
            _ => unreachable!("two terminals handled above"),
        };
        self.memo.insert((i, j, d), v);
        v
    }
}

/// Hamming distance of two equal-length compressed strings, splitting the longer rule each step.
pub fn hamming_recursive(pattern: &Slp, text: &Slp) -> Result<u64> {
    if pattern.len() != text.len() {
        return Err(Error::UnequalLength(pattern.len(), text.len()));
    }
    let (p, t) = super::common_alphabet(pattern, text)?;
    let (p, t) = (p.balanced()?, t.balanced()?);
    let mut h = Ham { p: &p, t: &t, memo: HashMap::new() };
    Ok(h.run(p.start(), t.start(), 0))
}
