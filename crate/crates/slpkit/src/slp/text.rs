// Line format:
//   Sk = "g"      terminal with glyph g
//   Sk = Si Sj    concatenation
// Indices are 1-based and strictly increasing; the last rule is the start symbol.
// Lines starting with '#' are comments. Two comment forms carry the alphabet:
//   #! alphabet g0 g1 ...
//   #! sigma N

use std::collections::{BTreeSet, HashMap};

use super::{Alphabet, Rule, Slp};
use crate::error::{Error, Result};

pub fn emit(slp: &Slp) -> String {
    let a = slp.alphabet();
    let mut out = String::new();
    match a.glyphs() {
        Some(g) => {
            out.push_str("#! alphabet ");
            out.push_str(&g.join(" "));
            out.push('\n');
        }
        None => out.push_str(&format!("#! sigma {}\n", a.size())),
    }
    for (i, r) in slp.rules().iter().enumerate() {
        match *r {
            Rule::Terminal(s) => out.push_str(&format!("S{} = \"{}\"\n", i + 1, a.glyph(s))),
            Rule::Concat(l, r) => out.push_str(&format!("S{} = S{} S{}\n", i + 1, l + 1, r + 1)),
        }
    }
    out
}

enum Raw {
    Terminal(String),
    Concat(usize, usize),
}

fn rule_ref(tok: &str, line: usize) -> Result<usize> {
    tok.strip_prefix('S')
        .and_then(|d| d.parse::<usize>().ok())
        .filter(|&k| k >= 1)
        .ok_or_else(|| Error::parse(line, format!("expected a rule name like S3, found {tok:?}")))
}

pub fn parse(src: &str) -> Result<Slp> {
    let mut declared: Option<Alphabet> = None;
    let mut index_of: HashMap<usize, usize> = HashMap::new();
    let mut raw: Vec<(usize, Raw)> = Vec::new();
    let mut last = 0usize;
    for (ln, line) in src.lines().enumerate() {
        let ln = ln + 1;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        if let Some(c) = t.strip_prefix('#') {
            if let Some(p) = c.strip_prefix('!') {
                let mut it = p.split_whitespace();
                match it.next() {
                    Some("alphabet") => {
                        let g: Vec<&str> = it.collect();
                        declared = Some(Alphabet::with_glyphs(&g).map_err(|e| Error::parse(ln, e.to_string()))?);
                    }
                    Some("sigma") => {
                        let n = it
                            .next()
                            .and_then(|x| x.parse::<u32>().ok())
                            .ok_or_else(|| Error::parse(ln, "sigma needs a positive integer"))?;
                        declared = Some(Alphabet::new(n).map_err(|e| Error::parse(ln, e.to_string()))?);
                    }
                    _ => {}
                }
            }
            continue;
        }
        let (lhs, rhs) = t.split_once('=').ok_or_else(|| Error::parse(ln, "expected `Sk = ...`"))?;
        let k = rule_ref(lhs.trim(), ln)?;
        if k <= last {
            return Err(Error::parse(ln, format!("rule S{k} is not after S{last}")));
        }
        last = k;
        let rhs = rhs.trim();
        let rule = if let Some(q) = rhs.strip_prefix('"') {
            let g = q.strip_suffix('"').ok_or_else(|| Error::parse(ln, "unterminated glyph"))?;
            if g.is_empty() || g.contains('"') {
                return Err(Error::parse(ln, "bad glyph"));
            }
            Raw::Terminal(g.to_string())
        } else {
            let parts: Vec<&str> = rhs.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(Error::parse(ln, "a concatenation has exactly two rule names"));
            }
            let (i, j) = (rule_ref(parts[0], ln)?, rule_ref(parts[1], ln)?);
            for target in [i, j] {
                if target >= k {
                    return Err(Error::ForwardReference { line: ln, rule: k, target });
                }
                if !index_of.contains_key(&target) {
                    return Err(Error::parse(ln, format!("S{target} is not defined")));
                }
            }
            Raw::Concat(index_of[&i], index_of[&j])
        };
        index_of.insert(k, raw.len());
        raw.push((ln, rule));
    }
    if raw.is_empty() {
        return Err(Error::EmptyString);
    }
    let alphabet = match declared {
        Some(a) => a,
        None => infer_alphabet(&raw)?,
    };
    let mut rules = Vec::with_capacity(raw.len());
    for (ln, r) in raw {
        rules.push(match r {
            Raw::Concat(i, j) => Rule::Concat(i, j),
            Raw::Terminal(g) => Rule::Terminal(
                alphabet.symbol_of(&g).ok_or_else(|| Error::parse(ln, format!("glyph {g:?} not in alphabet")))?,
            ),
        });
    }
    Slp::from_rules(alphabet, rules)
}

// Without a declaration: all-numeric glyphs are symbol indices, otherwise the sorted glyph set.
fn infer_alphabet(raw: &[(usize, Raw)]) -> Result<Alphabet> {
    let glyphs: BTreeSet<&str> = raw
        .iter()
        .filter_map(|(_, r)| match r {
            Raw::Terminal(g) => Some(g.as_str()),
            Raw::Concat(..) => None,
        })
        .collect();
    let nums: Option<Vec<u32>> = glyphs.iter().map(|g| g.parse::<u32>().ok()).collect();
    match nums {
        Some(v) => Alphabet::new(v.into_iter().max().unwrap_or(0) + 1),
        None => {
            let g: Vec<&str> = glyphs.into_iter().collect();
            Alphabet::with_glyphs(&g)
        }
    }
}
