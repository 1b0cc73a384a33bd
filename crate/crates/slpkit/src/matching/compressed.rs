use std::collections::HashMap;

use super::{check_symbols, CostFn, MatchResult, PATTERN_CAP};
use crate::error::{Error, Result};
use crate::slp::{Rule, Slp};

/// Minimum-cost alignment of a plain pattern against a compressed text in O(nM) memoized steps.
///
/// Each rule keeps its best in-rule match; a concatenation adds only the offsets that
/// straddle the boundary between its children, each priced by a memoized partial-overlap cost.
pub fn gpm_compressed(text: &Slp, pattern: &[u32], cost: &CostFn) -> Result<MatchResult> {
    let m = pattern.len() as u64;
    if m == 0 {
        return Err(Error::EmptyString);
    }
    if m > PATTERN_CAP {
        return Err(Error::TooLarge { len: m, limit: PATTERN_CAP });
    }
    if m > text.len() {
        return Err(Error::PatternLongerThanText { pattern: m, text: text.len() });
    }
    check_symbols(pattern, cost.pattern_alphabet())?;
    for r in text.rules() {
        if let Rule::Terminal(s) = *r {
            cost.text_alphabet().check(s)?;
        }
    }
    if (m as u128) * (cost.max_cost() as u128) >= 1u128 << 63 {
        return Err(Error::LengthOverflow);
    }

    let mut fx = Fixer::new(text, pattern, cost);
    let mut best: Vec<Option<MatchResult>> = Vec::with_capacity(text.rule_count());
    for i in 0..text.rule_count() {
        let len = text.rule_len(i);
        let here = if len < m {
            None
        } else {
            match text.rule(i) {
                Rule::Terminal(a) => Some(MatchResult { min_cost: cost.cost(pattern[0], a), best_offset: 0 }),
                Rule::Concat(l, r) => {
                    let ll = text.rule_len(l);
                    let mut acc = best[l];
                    let lo = ll.saturating_sub(m - 1);
                    let hi = (ll - 1).min(len - m);
                    for o in lo..=hi {
                        let c = fx.fix(l, o as i64) + fx.fix(r, o as i64 - ll as i64);
                        if acc.is_none_or(|b| c < b.min_cost) {
                            acc = Some(MatchResult { min_cost: c, best_offset: o });
                        }
                    }
                    if let Some(rb) = best[r] {
                        if acc.is_none_or(|b| rb.min_cost < b.min_cost) {
                            acc = Some(MatchResult { min_cost: rb.min_cost, best_offset: rb.best_offset + ll });
                        }
                    }
                    acc
                }
            }
        };
        best.push(here);
    }
    Ok(best[text.start()].expect("M <= N"))
}

/// Cost of the pattern placed at signed offset `d` inside a rule, counting only overlapping positions.
struct Fixer<'a> {
    slp: &'a Slp,
    pattern: &'a [u32],
    cost: &'a CostFn,
    memo: HashMap<(usize, i64), u64>,
    #[cfg(debug_assertions)]
    per_rule: HashMap<usize, u64>,
}

impl<'a> Fixer<'a> {
    fn new(slp: &'a Slp, pattern: &'a [u32], cost: &'a CostFn) -> Self {
        Fixer {
            slp,
            pattern,
            cost,
            memo: HashMap::new(),
            #[cfg(debug_assertions)]
            per_rule: HashMap::new(),
        }
    }

    fn quick(&self, i: usize, d: i64) -> Option<u64> {
        let m = self.pattern.len() as i64;
        if d >= self.slp.rule_len(i) as i64 || d + m <= 0 {
            return Some(0);
        }
        match self.slp.rule(i) {
            Rule::Terminal(a) => Some(self.cost.cost(self.pattern[(-d) as usize], a)),
            Rule::Concat(..) => self.memo.get(&(i, d)).copied(),
        }
    }

    fn fix(&mut self, i: usize, d: i64) -> u64 {
        if let Some(v) = self.quick(i, d) {
            return v;
        }
        let mut stack = vec![(i, d, false)];
        while let Some((j, e, ready)) = stack.pop() {
            let (l, r) = self.slp.children(j).expect("terminals are quick");
            let e2 = e - self.slp.rule_len(l) as i64;
            match (self.quick(l, e), self.quick(r, e2)) {
                (Some(a), Some(b)) => {
                    self.store(j, e, a + b);
                }
                (ql, qr) => {
                    debug_assert!(!ready);
                    stack.push((j, e, true));
                    if ql.is_none() {
                        stack.push((l, e, false));
                    }
                    if qr.is_none() {
                        stack.push((r, e2, false));
                    }
                }
            }
        }
        self.memo[&(i, d)]
    }

    fn store(&mut self, j: usize, e: i64, v: u64) {
        if self.memo.insert((j, e), v).is_none() {
            #[cfg(debug_assertions)]
            {
                let c = self.per_rule.entry(j).or_insert(0);
                *c += 1;
                debug_assert!(*c < 2 * self.pattern.len() as u64, "too many offsets for rule {j}");
            }
        }
    }
}
