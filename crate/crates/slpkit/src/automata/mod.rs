//! Finite automata run directly on compressed texts.

mod dfa;
mod nfa;

pub use dfa::{dfa_accept, Dfa};
pub use nfa::{nfa_accept, BitMatrix, Nfa};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Automaton {
    Dfa(Dfa),
    Nfa(Nfa),
}

impl Automaton {
    pub fn states(&self) -> u32 {
        match self {
            Automaton::Dfa(d) => d.states(),
            Automaton::Nfa(n) => n.states(),
        }
    }

    /// Parse `dfa|nfa q sigma start`, an `accept s...` line, then `s a t` lines.
    pub fn parse(src: &str) -> Result<Self> {
        let mut lines = src
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, head) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let h: Vec<&str> = head.split_whitespace().collect();
        let num = |s: &str, ln: usize| s.parse::<u32>().map_err(|_| Error::parse(ln, format!("bad number {s:?}")));
        if h.len() != 4 || !matches!(h[0], "dfa" | "nfa") {
            return Err(Error::parse(ln, "expected `dfa|nfa <q> <sigma> <start>`"));
        }
        let (q, sigma, start) = (num(h[1], ln)?, num(h[2], ln)?, num(h[3], ln)?);
        let (ln, acc) = lines.next().ok_or_else(|| Error::parse(ln + 1, "missing `accept` line"))?;
        let mut it = acc.split_whitespace();
        if it.next() != Some("accept") {
            return Err(Error::parse(ln, "expected `accept s...`"));
        }
        let accepting = it.map(|s| num(s, ln)).collect::<Result<Vec<u32>>>()?;
        let mut moves = Vec::new();
        for (ln, l) in lines {
            let v = l.split_whitespace().map(|s| num(s, ln)).collect::<Result<Vec<u32>>>()?;
            match v.as_slice() {
                [s, a, t] => moves.push((*s, *a, *t)),
                _ => return Err(Error::parse(ln, "expected `s a t`")),
            }
        }
        let at = |e: Error| match e {
            Error::Invalid(m) => Error::parse(0, m),
            e => e,
        };
        Ok(if h[0] == "dfa" {
            Automaton::Dfa(Dfa::new(q, sigma, start, &accepting, &moves).map_err(at)?)
        } else {
            Automaton::Nfa(Nfa::new(q, sigma, start, &accepting, &moves).map_err(at)?)
        })
    }

    pub fn emit(&self) -> String {
        let (kind, q, sigma, start) = match self {
            Automaton::Dfa(d) => ("dfa", d.states(), d.sigma(), d.start()),
            Automaton::Nfa(n) => ("nfa", n.states(), n.sigma(), n.start()),
        };
        let mut out = format!("{kind} {q} {sigma} {start}\naccept");
        for s in 0..q {
            let acc = match self {
                Automaton::Dfa(d) => d.is_accepting(s),
                Automaton::Nfa(n) => n.is_accepting(s),
            };
            if acc {
                out.push_str(&format!(" {s}"));
            }
        }
        out.push('\n');
        match self {
            Automaton::Dfa(d) => {
                for s in 0..q {
                    for a in 0..sigma {
                        out.push_str(&format!("{s} {a} {}\n", d.step(s, a)));
                    }
                }
            }
            Automaton::Nfa(n) => {
                for (s, a, t) in n.moves() {
                    out.push_str(&format!("{s} {a} {t}\n"));
                }
            }
        }
        out
    }
}

/// Ground truth by scanning the plain text.
pub fn accept_decompressed(text: &[u32], automaton: &Automaton) -> Result<bool> {
    match automaton {
        Automaton::Dfa(d) => d.accepts(text),
        Automaton::Nfa(n) => n.accepts(text),
    }
}

#[cfg(test)]
mod tests;
