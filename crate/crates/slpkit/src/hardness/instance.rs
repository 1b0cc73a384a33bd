//! Generated instances: payload, expected answer, provenance, and the bundle directory format.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::automata::{accept_decompressed, dfa_accept, nfa_accept, Automaton};
use crate::error::{Error, Result};
use crate::matching::{gpm_decompressed, substring_hd, wildcard_match, CostFn};
use crate::parsing::{cfg_recognize, wrna_fold, Cfg, PairedAlphabet};
use crate::seqcmp::{disjointness, lcs_dp, subsequence_recursive, subsequence_scan};
use crate::slp::{self, Alphabet, Slp};

/// Comparison direction of a threshold answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Yes iff the value is at most the threshold.
    Le,
    /// Yes iff the value is at least the threshold.
    Ge,
}

impl Direction {
    pub fn holds(self, value: u64, threshold: u64) -> bool {
        match self {
            Direction::Le => value <= threshold,
            Direction::Ge => value >= threshold,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Direction::Le => "le",
            Direction::Ge => "ge",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expected {
    Accept(bool),
    Threshold { value: u64, dir: Direction },
}

impl Expected {
    pub fn emit(&self) -> String {
        match *self {
            Expected::Accept(true) => "accept\n".into(),
            Expected::Accept(false) => "reject\n".into(),
            Expected::Threshold { value, dir } => format!("threshold {value} {}\n", dir.name()),
        }
    }

    pub fn parse(src: &str) -> Result<Self> {
        let t: Vec<&str> = src.split_whitespace().collect();
        match t.as_slice() {
            ["accept"] => Ok(Expected::Accept(true)),
            ["reject"] => Ok(Expected::Accept(false)),
            ["threshold", v, d] => {
                let value = v.parse().map_err(|_| Error::parse(1, format!("bad threshold {v:?}")))?;
                let dir = match *d {
                    "le" => Direction::Le,
                    "ge" => Direction::Ge,
                    _ => return Err(Error::parse(1, format!("bad direction {d:?}"))),
                };
                Ok(Expected::Threshold { value, dir })
            }
            _ => Err(Error::parse(1, "expected `accept`, `reject`, or `threshold <int> <le|ge>`")),
        }
    }
}

/// The target-side problem, one variant per kind of generated instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    /// Does the automaton accept the text?
    Automaton { text: Slp, automaton: Automaton },
    /// Does the pattern (with `*` wildcards) occur in the text?
    Wildcard { text: Slp, pattern: Slp },
    /// Minimum Hamming distance of the pattern against a text window.
    SubstringHd { text: Slp, pattern: Slp },
    /// LCS distance of two strings.
    Lcs { x: Slp, y: Slp },
    /// Does the grammar generate the text?
    Grammar { text: Slp, grammar: Cfg },
    /// Maximum weight of a non-crossing folding.
    Folding { text: Slp, pairing: PairedAlphabet },
    /// Is the pattern a subsequence of the text?
    Subsequence { text: Slp, pattern: Slp },
    /// Is there a position where both strings have a 1?
    Intersect { text: Slp, pattern: Slp },
}

/// How to solve a payload.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// The compressed-input algorithm, where one exists.
    Compressed,
    /// Decompress, then run the plain oracle.
    Decompressed,
}

/// A target-side answer, with the numeric value for threshold problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Outcome {
    pub answer: bool,
    pub value: Option<u64>,
}

fn eval_in(s: &Slp, max: u64, alphabet: &Alphabet) -> Result<Vec<u32>> {
    let text = s.eval(max)?;
    if s.alphabet() == alphabet {
        return Ok(text);
    }
    let map: Vec<u32> = (0..s.alphabet().size())
        .map(|a| {
            let g = s.alphabet().glyph(a);
            alphabet.symbol_of(&g).ok_or(Error::UndeclaredSymbol(g))
        })
        .collect::<Result<_>>()?;
    Ok(text.into_iter().map(|a| map[a as usize]).collect())
}

impl Payload {
    pub fn task(&self) -> &'static str {
        match self {
            Payload::Automaton { .. } => "automaton",
            Payload::Wildcard { .. } => "wildcard",
            Payload::SubstringHd { .. } => "substring-hd",
            Payload::Lcs { .. } => "lcs",
            Payload::Grammar { .. } => "grammar",
            Payload::Folding { .. } => "folding",
            Payload::Subsequence { .. } => "subsequence",
            Payload::Intersect { .. } => "intersect",
        }
    }

    /// Does this task have a compressed-input algorithm?
    pub fn has_compressed_route(&self) -> bool {
        matches!(
            self,
            Payload::Automaton { .. }
                | Payload::Wildcard { .. }
                | Payload::SubstringHd { .. }
                | Payload::Subsequence { .. }
                | Payload::Intersect { .. }
        )
    }

    /// Total decompressed length of every string in the payload.
    pub fn decompressed_len(&self) -> u64 {
        match self {
            Payload::Automaton { text, .. } | Payload::Grammar { text, .. } | Payload::Folding { text, .. } => text.len(),
            Payload::Wildcard { text, pattern }
            | Payload::SubstringHd { text, pattern }
            | Payload::Subsequence { text, pattern }
            | Payload::Intersect { text, pattern } => text.len().saturating_add(pattern.len()),
            Payload::Lcs { x, y } => x.len().saturating_add(y.len()),
        }
    }

    /// Size figures: compressed and decompressed lengths plus automaton/grammar sizes.
    pub fn sizes(&self) -> BTreeMap<&'static str, u64> {
        let mut m = BTreeMap::new();
        let mut put = |k: &'static str, s: &Slp| {
            m.insert(k, s.rule_count() as u64);
            m.insert(if k == "n" { "N" } else { "M" }, s.len());
        };
        match self {
            Payload::Automaton { text, .. } | Payload::Grammar { text, .. } | Payload::Folding { text, .. } => {
                put("n", text)
            }
            Payload::Wildcard { text, pattern }
            | Payload::SubstringHd { text, pattern }
            | Payload::Subsequence { text, pattern }
            | Payload::Intersect { text, pattern } => {
                put("n", text);
                put("m", pattern);
            }
            Payload::Lcs { x, y } => {
                put("n", x);
                put("m", y);
            }
        }
        match self {
            Payload::Automaton { automaton, .. } => {
                m.insert("q", automaton.states() as u64);
            }
            Payload::Grammar { grammar, .. } => {
                m.insert("grammar", grammar.size() as u64);
            }
            _ => {}
        }
        m
    }

    /// Solve along `route`. `Ok(None)` means the route does not exist for this task or the
    /// strings exceed `max_decompress`.
    pub fn solve(&self, expected: &Expected, route: Route, max_decompress: u64) -> Result<Option<Outcome>> {
        let threshold = |v: u64| -> Result<Outcome> {
            match *expected {
                Expected::Threshold { value, dir } => Ok(Outcome { answer: dir.holds(v, value), value: Some(v) }),
                Expected::Accept(_) => Err(Error::invalid("threshold task with an accept/reject expectation")),
            }
        };
        let plain = |answer: bool| Ok(Some(Outcome { answer, value: None }));
        if route == Route::Decompressed && self.decompressed_len() > max_decompress {
            return Ok(None);
        }
        let cap = max_decompress;
        match (self, route) {
            (Payload::Automaton { text, automaton }, Route::Compressed) => plain(match automaton {
                Automaton::Dfa(d) => dfa_accept(text, d)?,
                Automaton::Nfa(n) => nfa_accept(text, n)?,
            }),
            (Payload::Automaton { text, automaton }, Route::Decompressed) => {
                plain(accept_decompressed(&text.eval(cap)?, automaton)?)
            }
            (Payload::Wildcard { text, pattern }, Route::Compressed) => plain(wildcard_match(text, pattern)?),
            (Payload::Wildcard { text, pattern }, Route::Decompressed) => {
                let w = pattern.alphabet().symbol_of("*");
                let cost = CostFn::wildcard(pattern.alphabet(), text.alphabet(), w);
                plain(gpm_decompressed(&text.eval(cap)?, &pattern.eval(cap)?, &cost)?.min_cost == 0)
            }
            (Payload::SubstringHd { text, pattern }, Route::Compressed) => Ok(Some(threshold(substring_hd(text, pattern)?)?)),
            (Payload::SubstringHd { text, pattern }, Route::Decompressed) => {
                let cost = CostFn::hamming(pattern.alphabet(), text.alphabet());
                let v = gpm_decompressed(&text.eval(cap)?, &pattern.eval(cap)?, &cost)?.min_cost;
                Ok(Some(threshold(v)?))
            }
            (Payload::Lcs { x, y }, Route::Decompressed) => {
                let yy = eval_in(y, cap, x.alphabet())?;
                Ok(Some(threshold(lcs_dp(&x.eval(cap)?, &yy)?.delta)?))
            }
            (Payload::Grammar { text, grammar }, Route::Decompressed) => {
                plain(cfg_recognize(&eval_in(text, cap, grammar.terminals())?, grammar)?)
            }
            (Payload::Folding { text, pairing }, Route::Decompressed) => {
                Ok(Some(threshold(wrna_fold(&eval_in(text, cap, pairing.base())?, pairing)?)?))
            }
            (Payload::Subsequence { text, pattern }, Route::Compressed) => plain(subsequence_recursive(pattern, text)?),
            (Payload::Subsequence { text, pattern }, Route::Decompressed) => {
                let p = eval_in(pattern, cap, text.alphabet())?;
                plain(subsequence_scan(&text.eval(cap)?, &p))
            }
            (Payload::Intersect { text, pattern }, Route::Compressed) => plain(!disjointness(pattern, text)?),
            (Payload::Intersect { text, pattern }, Route::Decompressed) => {
                let (p, t) = (pattern.eval(cap)?, text.eval(cap)?);
                let one = |s: &Slp| s.alphabet().symbol_of("1");
                let (op, ot) = (one(pattern), one(text));
                plain(p.iter().zip(&t).any(|(&a, &b)| Some(a) == op && Some(b) == ot))
            }
            _ => Ok(None),
        }
    }

    /// `(file name, contents)` for every payload file.
    pub fn files(&self) -> Vec<(&'static str, String)> {
        match self {
            Payload::Automaton { text, automaton } => {
                vec![("payload.text.slp", slp::emit(text)), ("payload.automaton", automaton.emit())]
            }
            Payload::Wildcard { text, pattern }
            | Payload::SubstringHd { text, pattern }
            | Payload::Subsequence { text, pattern }
            | Payload::Intersect { text, pattern } => {
                vec![("payload.text.slp", slp::emit(text)), ("payload.pattern.slp", slp::emit(pattern))]
            }
            Payload::Lcs { x, y } => vec![("payload.x.slp", slp::emit(x)), ("payload.y.slp", slp::emit(y))],
            Payload::Grammar { text, grammar } => {
                vec![("payload.text.slp", slp::emit(text)), ("payload.grammar.cfg", grammar.emit())]
            }
            Payload::Folding { text, pairing } => {
                vec![("payload.text.slp", slp::emit(text)), ("payload.pairing.txt", pairing.emit())]
            }
        }
    }

    /// Rebuild from the task name and a file reader.
    pub fn from_files(task: &str, read: impl Fn(&str) -> Result<String>) -> Result<Self> {
        let s = |name: &str| -> Result<Slp> { slp::parse(&read(name)?) };
        Ok(match task {
            "automaton" => {
                Payload::Automaton { text: s("payload.text.slp")?, automaton: Automaton::parse(&read("payload.automaton")?)? }
            }
            "wildcard" => Payload::Wildcard { text: s("payload.text.slp")?, pattern: s("payload.pattern.slp")? },
            "substring-hd" => Payload::SubstringHd { text: s("payload.text.slp")?, pattern: s("payload.pattern.slp")? },
            "subsequence" => Payload::Subsequence { text: s("payload.text.slp")?, pattern: s("payload.pattern.slp")? },
            "intersect" => Payload::Intersect { text: s("payload.text.slp")?, pattern: s("payload.pattern.slp")? },
            "lcs" => Payload::Lcs { x: s("payload.x.slp")?, y: s("payload.y.slp")? },
            "grammar" => {
                let text = s("payload.text.slp")?;
                let grammar = Cfg::parse(&read("payload.grammar.cfg")?, None)?;
                Payload::Grammar { text, grammar }
            }
            "folding" => {
                Payload::Folding { text: s("payload.text.slp")?, pairing: PairedAlphabet::parse(&read("payload.pairing.txt")?)? }
            }
            _ => return Err(Error::invalid(format!("unknown task {task:?}"))),
        })
    }
}

/// A reduction's output together with the source answer it must reproduce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedInstance {
    pub payload: Payload,
    pub expected: Expected,
    /// Ordered key/value record: reduction, parameters, digest, answer, constants.
    pub provenance: BTreeMap<String, String>,
}

/// Hex SHA-256 of a source's canonical text.
pub fn digest(text: &str) -> String {
    format!("{:x}", Sha256::digest(text.as_bytes()))
}

impl GeneratedInstance {
    /// Assemble an instance and record the task, sizes, and answer in its provenance.
    pub fn new(reduction: &str, payload: Payload, expected: Expected, answer: bool) -> Self {
        let mut provenance = BTreeMap::new();
        provenance.insert("reduction".into(), reduction.to_string());
        provenance.insert("task".into(), payload.task().to_string());
        provenance.insert("answer".into(), answer.to_string());
        provenance.insert("certified".into(), "true".into());
        for (k, v) in payload.sizes() {
            provenance.insert(format!("size.{k}"), v.to_string());
        }
        GeneratedInstance { payload, expected, provenance }
    }

    pub fn note(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.provenance.insert(key.to_string(), value.to_string());
        self
    }

    pub fn reduction(&self) -> &str {
        self.provenance.get("reduction").map_or("", String::as_str)
    }

    /// The source answer: from `expected` for accept/reject tasks, else from the provenance.
    pub fn answer(&self) -> Option<bool> {
        match self.expected {
            Expected::Accept(b) => Some(b),
            Expected::Threshold { .. } => self.provenance.get("answer").and_then(|a| a.parse().ok()),
        }
    }

    pub fn certified(&self) -> bool {
        self.provenance.get("certified").is_some_and(|c| c == "true")
    }

    /// Solve the payload and compare with the expected answer. Prefers the compressed route.
    pub fn solve(&self, route: Route, max_decompress: u64) -> Result<Option<Outcome>> {
        self.payload.solve(&self.expected, route, max_decompress)
    }

    pub fn write_bundle(&self, dir: &Path) -> Result<()> {
        let io = |e: std::io::Error| Error::Io { path: dir.display().to_string(), msg: e.to_string() };
        fs::create_dir_all(dir).map_err(io)?;
        let mut files = self.payload.files();
        files.push(("expected.txt", self.expected.emit()));
        let prov: String = self.provenance.iter().map(|(k, v)| format!("{k}={v}\n")).collect();
        files.push(("provenance.txt", prov));
        for (name, body) in files {
            let p = dir.join(name);
            fs::write(&p, body).map_err(|e| Error::Io { path: p.display().to_string(), msg: e.to_string() })?;
        }
        Ok(())
    }

    pub fn read_bundle(dir: &Path) -> Result<Self> {
        let read = |name: &str| -> Result<String> {
            let p = dir.join(name);
            fs::read_to_string(&p).map_err(|e| Error::Io { path: p.display().to_string(), msg: e.to_string() })
        };
        let mut provenance = BTreeMap::new();
        for (ln, line) in read("provenance.txt")?.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::parse(ln + 1, "expected key=value"))?;
            provenance.insert(k.to_string(), v.to_string());
        }
        let task = provenance.get("task").ok_or_else(|| Error::parse(0, "provenance lacks `task`"))?.clone();
        let payload = Payload::from_files(&task, read)?;
        let expected = Expected::parse(&read("expected.txt")?)?;
        Ok(GeneratedInstance { payload, expected, provenance })
    }
}
