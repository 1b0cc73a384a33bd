use std::io::Write;

use super::input::looks_like_slp;
use super::solve::io;
use super::{read_file, FmtArgs};
use crate::automata::Automaton;
use crate::error::{Error, Result};
use crate::hardness::{Expected, Source};
use crate::matching::CostFn;
use crate::parsing::{Cfg, PairedAlphabet};
use crate::slp;

pub const KINDS: [&str; 7] = ["slp", "automaton", "cfg", "pairing", "costs", "source", "expected"];

/// Guess the format from the first meaningful line.
pub fn detect(src: &str) -> Option<&'static str> {
    if looks_like_slp(src) {
        return Some("slp");
    }
    let first = src.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('%') && !l.starts_with("# "))?;
    let head = first.split_whitespace().next()?;
    Some(match head {
        "dfa" | "nfa" => "automaton",
        "costs" => "costs",
        "ov" | "kov" | "graph" | "ksum" => "source",
        "accept" | "reject" | "threshold" => "expected",
        "pairs" | "weights" => "pairing",
        "start" => "cfg",
        _ if first.starts_with("#!") && first.contains("terminals") => "cfg",
        _ if first.contains("->") => "cfg",
        _ => return None,
    })
}

/// Parse `src` as `kind` and print it in canonical form.
pub fn canonical(src: &str, kind: &str) -> Result<String> {
    Ok(match kind {
        "slp" => slp::emit(&slp::parse(src)?),
        "automaton" => Automaton::parse(src)?.emit(),
        "cfg" => Cfg::parse(src, None)?.emit(),
        "pairing" => PairedAlphabet::parse(src)?.emit(),
        "costs" => CostFn::parse(src)?.emit(),
        "source" => Source::parse(src)?.emit(),
        "expected" => Expected::parse(src)?.emit(),
        _ => return Err(Error::invalid(format!("unknown format {kind:?}; known: {}", KINDS.join(", ")))),
    })
}

pub(super) fn cmd(a: &FmtArgs, out: &mut dyn Write) -> Result<()> {
    let src = read_file(&a.file)?;
    let kind = match &a.kind {
        Some(k) => k.as_str(),
        None => detect(&src).ok_or_else(|| Error::invalid(format!("cannot tell the format of {}; pass --kind", a.file.display())))?,
    };
    out.write_all(canonical(&src, kind)?.as_bytes()).map_err(io)
}
