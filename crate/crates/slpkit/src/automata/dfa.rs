use crate::error::{Error, Result};
use crate::slp::{Rule, Slp};

/// Deterministic automaton with a total transition table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    q: u32,
    sigma: u32,
    start: u32,
    accepting: Vec<bool>,
    delta: Vec<u32>,
}

impl Dfa {
    /// Build from a partial transition list. Missing moves go to a fresh absorbing
    /// rejecting state, which is then counted in [`Dfa::states`].
    pub fn new(q: u32, sigma: u32, start: u32, accepting: &[u32], moves: &[(u32, u32, u32)]) -> Result<Self> {
        if q == 0 || sigma == 0 {
            return Err(Error::invalid("automaton needs at least one state and one symbol"));
        }
        let bad = |what: &str, v: u32| Error::invalid(format!("{what} {v} out of range"));
        if start >= q {
            return Err(bad("start state", start));
        }
        let mut acc = vec![false; q as usize];
        for &s in accepting {
            *acc.get_mut(s as usize).ok_or_else(|| bad("accepting state", s))? = true;
        }
        const NONE: u32 = u32::MAX;
        let mut delta = vec![NONE; q as usize * sigma as usize];
        for &(s, a, t) in moves {
            if s >= q {
                return Err(bad("state", s));
            }
            if t >= q {
                return Err(bad("state", t));
            }
            if a >= sigma {
                return Err(Error::SymbolOutOfRange { symbol: a, size: sigma });
            }
            let slot = &mut delta[(s * sigma + a) as usize];
            if *slot != NONE && *slot != t {
                return Err(Error::invalid(format!("two moves from state {s} on symbol {a}")));
            }
            *slot = t;
        }
        let mut q = q;
        if delta.contains(&NONE) {
            let fail = q;
            q += 1;
            acc.push(false);
            delta.extend(std::iter::repeat_n(fail, sigma as usize));
            for d in delta.iter_mut() {
                if *d == NONE {
                    *d = fail;
                }
            }
        }
        Ok(Dfa { q, sigma, start, accepting: acc, delta })
    }

    /// Total table: `table[s * sigma + a]` is the successor of `s` on `a`.
    pub fn from_table(sigma: u32, start: u32, accepting: Vec<bool>, table: Vec<u32>) -> Result<Self> {
        let q = accepting.len() as u32;
        if q == 0 || sigma == 0 || table.len() != (q * sigma) as usize {
            return Err(Error::invalid("transition table has the wrong shape"));
        }
        if start >= q || table.iter().any(|&t| t >= q) {
            return Err(Error::invalid("state out of range"));
        }
        Ok(Dfa { q, sigma, start, accepting, delta: table })
    }

    pub fn states(&self) -> u32 {
        self.q
    }

    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn is_accepting(&self, s: u32) -> bool {
        self.accepting[s as usize]
    }

    #[inline]
    pub fn step(&self, s: u32, a: u32) -> u32 {
        self.delta[(s * self.sigma + a) as usize]
    }

    pub(crate) fn check_text(&self, slp: &Slp) -> Result<()> {
        for r in slp.rules() {
            if let Rule::Terminal(a) = *r {
                if a >= self.sigma {
                    return Err(Error::AlphabetMismatch(format!(
                        "text symbol {a} is outside the automaton alphabet of size {}",
                        self.sigma
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn accepts(&self, text: &[u32]) -> Result<bool> {
        let mut s = self.start;
        for &a in text {
            if a >= self.sigma {
                return Err(Error::AlphabetMismatch(format!("symbol {a} not in automaton alphabet")));
            }
            s = self.step(s, a);
        }
        Ok(self.is_accepting(s))
    }
}

/// Acceptance on the compressed text: each rule's state map is its right child's map
/// applied after its left child's.
pub fn dfa_accept(text: &Slp, dfa: &Dfa) -> Result<bool> {
    dfa.check_text(text)?;
    let q = dfa.q as usize;
    let mut maps: Vec<u32> = Vec::with_capacity(text.rule_count() * q);
    for i in 0..text.rule_count() {
        match text.rule(i) {
            Rule::Terminal(a) => maps.extend((0..dfa.q).map(|s| dfa.step(s, a))),
            Rule::Concat(l, r) => {
                for s in 0..q {
                    let mid = maps[l * q + s] as usize;
                    let v = maps[r * q + mid];
                    maps.push(v);
                }
            }
        }
    }
    let end = maps[text.start() * q + dfa.start as usize];
    Ok(dfa.is_accepting(end))
}
