use std::collections::HashMap;

use super::{Alphabet, Rule, Slp, MAX_LEN};
use crate::error::{Error, Result};

/// Handle to a rule inside an [`SlpBuilder`].
pub type NodeId = usize;

/// Incremental SLP construction with hash-consing of terminals and concatenations.
///
/// Generators assemble large grammars here and call [`SlpBuilder::finish`], which drops
/// unreachable rules and puts the chosen root last.
#[derive(Debug, Clone, Default)]
pub struct SlpBuilder {
    rules: Vec<Rule>,
    len: Vec<u64>,
    depth: Vec<u32>,
    terminals: HashMap<u32, NodeId>,
    pairs: HashMap<(NodeId, NodeId), NodeId>,
}

impl SlpBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Start from an existing SLP, keeping its rules verbatim at the same indices.
    pub fn from_slp(slp: &Slp) -> Self {
        let mut b = Self::new();
        for (i, r) in slp.rules().iter().enumerate() {
            b.rules.push(*r);
            b.len.push(slp.rule_len(i));
            b.depth.push(slp.rule_depth(i));
            match *r {
                Rule::Terminal(s) => {
                    b.terminals.entry(s).or_insert(i);
                }
                Rule::Concat(l, r) => {
                    b.pairs.entry((l, r)).or_insert(i);
                }
            }
        }
        b
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    pub fn rule(&self, id: NodeId) -> Rule {
        self.rules[id]
    }

    pub fn len(&self, id: NodeId) -> u64 {
        self.len[id]
    }

    pub fn depth(&self, id: NodeId) -> u32 {
        self.depth[id]
    }

    pub fn terminal(&mut self, symbol: u32) -> NodeId {
        if let Some(&id) = self.terminals.get(&symbol) {
            return id;
        }
        let id = self.rules.len();
        self.rules.push(Rule::Terminal(symbol));
        self.len.push(1);
        self.depth.push(0);
        self.terminals.insert(symbol, id);
        id
    }

    pub fn concat(&mut self, a: NodeId, b: NodeId) -> Result<NodeId> {
        if let Some(&id) = self.pairs.get(&(a, b)) {
            return Ok(id);
        }
        let len = self.len[a].checked_add(self.len[b]).filter(|&l| l <= MAX_LEN).ok_or(Error::LengthOverflow)?;
        let id = self.rules.len();
        self.rules.push(Rule::Concat(a, b));
        self.len.push(len);
        self.depth.push(1 + self.depth[a].max(self.depth[b]));
        self.pairs.insert((a, b), id);
        Ok(id)
    }

    /// Left-to-right concatenation of a nonempty list.
    pub fn seq(&mut self, parts: &[NodeId]) -> Result<NodeId> {
        let (&first, rest) = parts.split_first().ok_or(Error::EmptyString)?;
        rest.iter().try_fold(first, |acc, &p| self.concat(acc, p))
    }

    pub fn literal(&mut self, symbols: &[u32]) -> Result<NodeId> {
        let ids: Vec<NodeId> = symbols.iter().map(|&s| self.terminal(s)).collect();
        self.seq(&ids)
    }

    /// `x^k` for `k >= 1` by binary decomposition: a squaring chain plus one join per extra set bit.
    pub fn power(&mut self, x: NodeId, k: u64) -> Result<NodeId> {
        if k == 0 {
            return Err(Error::EmptyString);
        }
        self.len[x].checked_mul(k).filter(|&l| l <= MAX_LEN).ok_or(Error::LengthOverflow)?;
        let mut acc: Option<NodeId> = None;
        let mut sq = x;
        let mut k = k;
        loop {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => sq,
                    Some(a) => self.concat(sq, a)?,
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            sq = self.concat(sq, sq)?;
        }
        Ok(acc.expect("k >= 1"))
    }

    /// Copy every rule of `slp` (deduplicating) and return the id of its start rule.
    pub fn import(&mut self, slp: &Slp) -> Result<NodeId> {
        let mut map = Vec::with_capacity(slp.rule_count());
        for r in slp.rules() {
            let id = match *r {
                Rule::Terminal(s) => self.terminal(s),
                Rule::Concat(l, r) => self.concat(map[l], map[r])?,
            };
            map.push(id);
        }
        Ok(*map.last().expect("nonempty slp"))
    }

    // Helpers over possibly-empty pieces: `None` is the empty string.

    pub fn cat(&mut self, a: Option<NodeId>, b: Option<NodeId>) -> Result<Option<NodeId>> {
        Ok(match (a, b) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => Some(self.concat(a, b)?),
        })
    }

    pub fn cat_all<I: IntoIterator<Item = Option<NodeId>>>(&mut self, parts: I) -> Result<Option<NodeId>> {
        let mut acc = None;
        for p in parts {
            acc = self.cat(acc, p)?;
        }
        Ok(acc)
    }

    /// `x^k`, empty when `k == 0`.
    pub fn power_opt(&mut self, x: Option<NodeId>, k: u64) -> Result<Option<NodeId>> {
        match x {
            Some(x) if k > 0 => Ok(Some(self.power(x, k)?)),
            _ => Ok(None),
        }
    }

    /// `symbol^k`, empty when `k == 0`.
    pub fn run(&mut self, symbol: u32, k: u64) -> Result<Option<NodeId>> {
        let t = self.terminal(symbol);
        self.power_opt(Some(t), k)
    }

    pub fn len_opt(&self, x: Option<NodeId>) -> u64 {
        x.map_or(0, |x| self.len[x])
    }

    /// Extract the SLP rooted at `root`, keeping only reachable rules in their original order.
    pub fn finish(&self, root: NodeId, alphabet: Alphabet) -> Result<Slp> {
        let mut reach = vec![false; root + 1];
        reach[root] = true;
        for i in (0..=root).rev() {
            if reach[i] {
                if let Rule::Concat(l, r) = self.rules[i] {
                    reach[l] = true;
                    reach[r] = true;
                }
            }
        }
        let mut remap = vec![usize::MAX; root + 1];
        let mut rules = Vec::new();
        for i in 0..=root {
            if reach[i] {
                remap[i] = rules.len();
                rules.push(match self.rules[i] {
                    Rule::Terminal(s) => Rule::Terminal(s),
                    Rule::Concat(l, r) => Rule::Concat(remap[l], remap[r]),
                });
            }
        }
        Slp::from_rules(alphabet, rules)
    }

    /// Like [`finish`](Self::finish) but keeps every rule; `root` must be the newest rule.
    pub fn finish_verbatim(&self, root: NodeId, alphabet: Alphabet) -> Result<Slp> {
        if root + 1 != self.rules.len() {
            return self.finish(root, alphabet);
        }
        Slp::from_rules(alphabet, self.rules.clone())
    }
}
