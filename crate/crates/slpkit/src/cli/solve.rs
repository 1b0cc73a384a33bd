use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use super::input::{eval_into, load_pair, Text};
use super::{read_file, Global, SolveArgs};
use crate::automata::{accept_decompressed, dfa_accept, nfa_accept, Automaton, Dfa, Nfa};
use crate::error::{Error, Result};
use crate::matching::{gpm_compressed, gpm_decompressed, substring_hd, wildcard_match, CostFn};
use crate::parsing::{cfg_recognize, rna_fold, wrna_fold, Cfg, PairedAlphabet};
use crate::seqcmp::{disjointness, hamming_recursive, lcs_dp, subsequence_avl, subsequence_recursive, subsequence_scan};
use crate::slp::{Alphabet, Slp};

/// `(name, inputs, description)` for every `solve` algorithm.
pub const ALGORITHMS: &[(&str, &str, &str)] = &[
    ("dfa-accept", "TEXT AUTOMATON", "DFA acceptance on the compressed text"),
    ("nfa-accept", "TEXT AUTOMATON", "NFA acceptance by boolean matrix products"),
    ("accept-decompressed", "TEXT AUTOMATON", "acceptance by simulating on the decompressed text"),
    ("gpm", "TEXT PATTERN COSTS", "minimum pattern cost over text offsets, compressed text"),
    ("gpm-decompressed", "TEXT PATTERN COSTS", "same, by convolution on the decompressed text"),
    ("wildcard", "TEXT PATTERN", "pattern with `*` wildcards occurs in the text"),
    ("substring-hd", "TEXT PATTERN", "minimum Hamming distance of the pattern to a text window"),
    ("cfg", "TEXT GRAMMAR", "grammar generates the text (Earley)"),
    ("rna-fold", "TEXT PAIRING", "maximum number of non-crossing pairs"),
    ("wrna-fold", "TEXT PAIRING", "maximum weight of non-crossing pairs"),
    ("lcs", "X Y", "longest common subsequence length"),
    ("lcs-distance", "X Y", "|X| + |Y| - 2 LCS"),
    ("subsequence", "TEXT PATTERN", "pattern is a subsequence of the compressed text"),
    ("subsequence-recursive", "TEXT PATTERN", "same, with both strings compressed"),
    ("subsequence-scan", "TEXT PATTERN", "same, by greedy scan of the decompressed strings"),
    ("hamming", "X Y", "Hamming distance of equal-length compressed strings"),
    ("disjointness", "X Y", "accept iff no position holds a 1 in both bit strings"),
    ("eval", "TEXT", "the decompressed string"),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Answer {
    Decision(bool),
    Value(u64),
    Text(String),
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Answer::Decision(true) => f.write_str("accept"),
            Answer::Decision(false) => f.write_str("reject"),
            Answer::Value(v) => write!(f, "{v}"),
            Answer::Text(s) => f.write_str(s),
        }
    }
}

fn arity(name: &str) -> Result<usize> {
    ALGORITHMS
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|(_, inputs, _)| inputs.split_whitespace().count())
        .ok_or_else(|| {
            let names: Vec<&str> = ALGORITHMS.iter().map(|(n, _, _)| *n).collect();
            Error::invalid(format!("unknown algorithm {name:?}; known: {}", names.join(", ")))
        })
}

fn as_nfa(d: &Dfa) -> Result<Nfa> {
    let moves: Vec<(u32, u32, u32)> =
        (0..d.states()).flat_map(|s| (0..d.sigma()).map(move |a| (s, a, d.step(s, a)))).collect();
    let acc: Vec<u32> = (0..d.states()).filter(|&s| d.is_accepting(s)).collect();
    Nfa::new(d.states(), d.sigma(), d.start(), &acc, &moves)
}

fn automaton_input(text: &Path, auto: &Path) -> Result<(Slp, Automaton)> {
    let automaton = Automaton::parse(&read_file(auto)?)?;
    let sigma = match &automaton {
        Automaton::Dfa(d) => d.sigma(),
        Automaton::Nfa(n) => n.sigma(),
    };
    Ok((Text::load(text)?.into_slp(&Alphabet::new(sigma)?)?, automaton))
}

/// Run `name` on the input files; also returns `(n, N)` of the first input.
pub fn solve(name: &str, inputs: &[PathBuf], cap: u64) -> Result<(Answer, u64, u64)> {
    let want = arity(name)?;
    if inputs.len() != want {
        return Err(Error::invalid(format!("{name} takes {want} input file(s), got {}", inputs.len())));
    }
    let sizes = |s: &Slp| (s.rule_count() as u64, s.len());
    let (ans, (n, big_n)) = match name {
        "dfa-accept" | "nfa-accept" | "accept-decompressed" => {
            let (text, auto) = automaton_input(&inputs[0], &inputs[1])?;
            let ans = match (name, &auto) {
                ("dfa-accept", Automaton::Dfa(d)) => dfa_accept(&text, d)?,
                ("nfa-accept", Automaton::Nfa(n)) => nfa_accept(&text, n)?,
                ("nfa-accept", Automaton::Dfa(d)) => nfa_accept(&text, &as_nfa(d)?)?,
                ("accept-decompressed", a) => accept_decompressed(&text.eval(cap)?, a)?,
                _ => return Err(Error::TypeMismatch("dfa-accept needs a `dfa` automaton file".into())),
            };
            (Answer::Decision(ans), sizes(&text))
        }
        "gpm" | "gpm-decompressed" => {
            let cost = CostFn::parse(&read_file(&inputs[2])?)?;
            let text = Text::load(&inputs[0])?.into_slp(cost.text_alphabet())?;
            let pattern = Text::load(&inputs[1])?.into_slp(cost.pattern_alphabet())?;
            let p = pattern.eval(cap)?;
            let r = if name == "gpm" { gpm_compressed(&text, &p, &cost)? } else { gpm_decompressed(&text.eval(cap)?, &p, &cost)? };
            (Answer::Value(r.min_cost), sizes(&text))
        }
        "wildcard" | "substring-hd" => {
            let (text, pattern) = load_pair(&inputs[0], &inputs[1])?;
            let ans = if name == "wildcard" {
                Answer::Decision(wildcard_match(&text, &pattern)?)
            } else {
                Answer::Value(substring_hd(&text, &pattern)?)
            };
            (ans, sizes(&text))
        }
        "cfg" => {
            let grammar = Cfg::parse(&read_file(&inputs[1])?, None)?;
            let text = Text::load(&inputs[0])?.into_slp(grammar.terminals())?;
            let s = eval_into(&text, grammar.terminals(), cap)?;
            (Answer::Decision(cfg_recognize(&s, &grammar)?), sizes(&text))
        }
        "rna-fold" | "wrna-fold" => {
            let pairing = PairedAlphabet::parse(&read_file(&inputs[1])?)?;
            let text = Text::load(&inputs[0])?.into_slp(pairing.base())?;
            let s = eval_into(&text, pairing.base(), cap)?;
            let v = if name == "rna-fold" { rna_fold(&s, &pairing)? } else { wrna_fold(&s, &pairing)? };
            (Answer::Value(v), sizes(&text))
        }
        "lcs" | "lcs-distance" => {
            let (x, y) = load_pair(&inputs[0], &inputs[1])?;
            let r = lcs_dp(&x.eval(cap)?, &eval_into(&y, x.alphabet(), cap)?)?;
            (Answer::Value(if name == "lcs" { r.lcs } else { r.delta }), sizes(&x))
        }
        "subsequence" | "subsequence-recursive" | "subsequence-scan" => {
            let (text, pattern) = load_pair(&inputs[0], &inputs[1])?;
            let ans = match name {
                "subsequence" => subsequence_avl(&text, &eval_into(&pattern, text.alphabet(), cap)?)?,
                "subsequence-recursive" => subsequence_recursive(&pattern, &text)?,
                _ => subsequence_scan(&text.eval(cap)?, &eval_into(&pattern, text.alphabet(), cap)?),
            };
            (Answer::Decision(ans), sizes(&text))
        }
        "hamming" => {
            let (x, y) = load_pair(&inputs[0], &inputs[1])?;
            (Answer::Value(hamming_recursive(&x, &y)?), sizes(&x))
        }
        "disjointness" => {
            let (x, y) = (Text::load(&inputs[0])?.into_slp(&Alphabet::binary())?, Text::load(&inputs[1])?.into_slp(&Alphabet::binary())?);
            (Answer::Decision(disjointness(&x, &y)?), sizes(&x))
        }
        "eval" => {
            let s = Text::load(&inputs[0])?.into_slp_inferred()?;
            (Answer::Text(s.eval_string(cap)?), sizes(&s))
        }
        _ => unreachable!("arity() accepted {name}"),
    };
    Ok((ans, n, big_n))
}

pub(super) fn cmd(g: &Global, a: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let t = Instant::now();
    let (ans, n, big_n) = solve(&a.algorithm, &a.inputs, g.max_decompress)?;
    let secs = t.elapsed().as_secs_f64();
    writeln!(out, "{ans}").map_err(io)?;
    if a.stats {
        let line = serde_json::json!({ "algorithm": a.algorithm, "n": n, "N": big_n, "time": secs });
        writeln!(err, "{line}").map_err(io)?;
    }
    Ok(())
}

pub(crate) fn io(e: std::io::Error) -> Error {
    Error::Io { path: "<stdout>".into(), msg: e.to_string() }
}
