use crate::error::{Error, Result};
use crate::slp::{Rule, Slp};

/// Square boolean matrix with rows packed into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix { n, words, data: vec![0; n * words] }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] |= 1 << (j % 64);
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    /// Boolean product: row i of the result is the OR of rows k of `other` over set bits k of row i.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.n);
        let w = self.words;
        for i in 0..self.n {
            let dst = i * w;
            for (wi, &word) in self.row(i).iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let k = wi * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    for (o, &x) in out.data[dst..dst + w].iter_mut().zip(other.row(k)) {
                        *o |= x;
                    }
                }
            }
        }
        out
    }
}

/// Nondeterministic automaton, one transition matrix per symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    q: u32,
    sigma: u32,
    start: u32,
    accepting: Vec<bool>,
    mats: Vec<BitMatrix>,
}

impl Nfa {
    pub fn new(q: u32, sigma: u32, start: u32, accepting: &[u32], moves: &[(u32, u32, u32)]) -> Result<Self> {
        if q == 0 || sigma == 0 {
            return Err(Error::invalid("automaton needs at least one state and one symbol"));
        }
        if start >= q {
            return Err(Error::invalid(format!("start state {start} out of range")));
        }
        let mut acc = vec![false; q as usize];
        for &s in accepting {
            *acc.get_mut(s as usize).ok_or_else(|| Error::invalid(format!("accepting state {s} out of range")))? = true;
        }
        let mut mats = vec![BitMatrix::zeros(q as usize); sigma as usize];
        for &(s, a, t) in moves {
            if s >= q || t >= q {
                return Err(Error::invalid(format!("move {s} {a} {t} uses an unknown state")));
            }
            if a >= sigma {
                return Err(Error::SymbolOutOfRange { symbol: a, size: sigma });
            }
            mats[a as usize].set(s as usize, t as usize);
        }
        Ok(Nfa { q, sigma, start, accepting: acc, mats })
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

    pub fn matrix(&self, a: u32) -> &BitMatrix {
        &self.mats[a as usize]
    }

    /// Transitions as `(from, symbol, to)` triples in sorted order.
    pub fn moves(&self) -> Vec<(u32, u32, u32)> {
        let mut out = Vec::new();
        for s in 0..self.q {
            for a in 0..self.sigma {
                for t in 0..self.q {
                    if self.mats[a as usize].get(s as usize, t as usize) {
                        out.push((s, a, t));
                    }
                }
            }
        }
        out
    }

    /// Subset simulation on a plain text.
    pub fn accepts(&self, text: &[u32]) -> Result<bool> {
        let q = self.q as usize;
        let mut cur = vec![false; q];
        cur[self.start as usize] = true;
        for &a in text {
            if a >= self.sigma {
                return Err(Error::AlphabetMismatch(format!("symbol {a} not in automaton alphabet")));
            }
            let m = &self.mats[a as usize];
            let mut next = vec![false; q];
            for s in (0..q).filter(|&s| cur[s]) {
                for (t, n) in next.iter_mut().enumerate() {
                    *n |= m.get(s, t);
                }
            }
            cur = next;
        }
        Ok((0..q).any(|s| cur[s] && self.accepting[s]))
    }
}

/// Acceptance on the compressed text via one boolean matrix product per rule.
pub fn nfa_accept(text: &Slp, nfa: &Nfa) -> Result<bool> {
    for r in text.rules() {
        if let Rule::Terminal(a) = *r {
            if a >= nfa.sigma {
                return Err(Error::AlphabetMismatch(format!(
                    "text symbol {a} is outside the automaton alphabet of size {}",
                    nfa.sigma
                )));
            }
        }
    }
    let mut mats: Vec<BitMatrix> = Vec::with_capacity(text.rule_count());
    for i in 0..text.rule_count() {
        let m = match text.rule(i) {
            Rule::Terminal(a) => nfa.mats[a as usize].clone(),
            Rule::Concat(l, r) => mats[l].mul(&mats[r]),
        };
        mats.push(m);
    }
    let last = &mats[text.start()];
    Ok((0..nfa.q as usize).any(|t| nfa.accepting[t] && last.get(nfa.start as usize, t)))
}
