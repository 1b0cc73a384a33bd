use std::collections::{BTreeSet, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::slp::Alphabet;

/// Grammar symbol: a terminal index into the terminal alphabet, or a nonterminal index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    T(u32),
    N(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Production {
    pub lhs: u32,
    pub rhs: Vec<Sym>,
}

/// Context-free grammar over a terminal alphabet. Empty right sides are ε-productions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cfg {
    terminals: Alphabet,
    names: Vec<String>,
    start: u32,
    prods: Vec<Production>,
}

impl Cfg {
    pub fn new(terminals: Alphabet, names: Vec<String>, start: u32, prods: Vec<Production>) -> Result<Self> {
        let nn = names.len() as u32;
        if start >= nn {
            return Err(Error::UndeclaredSymbol(format!("start nonterminal #{start}")));
        }
        for p in &prods {
            if p.lhs >= nn {
                return Err(Error::UndeclaredSymbol(format!("nonterminal #{}", p.lhs)));
            }
            for s in &p.rhs {
                match *s {
                    Sym::N(b) if b >= nn => return Err(Error::UndeclaredSymbol(format!("nonterminal #{b}"))),
                    Sym::T(a) if a >= terminals.size() => return Err(Error::UndeclaredSymbol(format!("terminal #{a}"))),
                    _ => {}
                }
            }
        }
        Ok(Cfg { terminals, names, start, prods })
    }

    pub fn terminals(&self) -> &Alphabet {
        &self.terminals
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.names
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn productions(&self) -> &[Production] {
        &self.prods
    }

    /// Total size: the sum of right-side lengths (ε-productions count one).
    pub fn size(&self) -> usize {
        self.prods.iter().map(|p| p.rhs.len().max(1)).sum()
    }

    pub fn nullable(&self) -> Vec<bool> {
        let mut null = vec![false; self.names.len()];
        let mut changed = true;
        while changed {
            changed = false;
            for p in &self.prods {
                if !null[p.lhs as usize] && p.rhs.iter().all(|s| matches!(*s, Sym::N(b) if null[b as usize])) {
                    null[p.lhs as usize] = true;
                    changed = true;
                }
            }
        }
        null
    }

    /// Parse `start <NT>` and `NT -> sym ...` lines. Every left side is a nonterminal; other
    /// tokens are terminal glyphs, looked up in `terminals` when given and inferred otherwise.
    /// A `#! terminals g...` line fixes the terminal alphabet and `#! nonterminals N...` the
    /// nonterminal numbering.
    pub fn parse(src: &str, terminals: Option<&Alphabet>) -> Result<Self> {
        let mut start_name: Option<(usize, String)> = None;
        let mut declared: Option<Alphabet> = terminals.cloned();
        let mut order: Vec<String> = Vec::new();
        let mut raw: Vec<(usize, String, Vec<String>)> = Vec::new();
        for (ln, line) in src.lines().enumerate() {
            let ln = ln + 1;
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            if let Some(c) = t.strip_prefix('#') {
                let mut it = c.split_whitespace();
                if c.starts_with('!') && it.next() == Some("!") && it.next() == Some("terminals") && declared.is_none() {
                    let g: Vec<&str> = it.collect();
                    declared = Some(Alphabet::with_glyphs(&g).map_err(|e| Error::parse(ln, e.to_string()))?);
                }
                let mut it = c.split_whitespace();
                if c.starts_with('!') && it.next() == Some("!") && it.next() == Some("nonterminals") {
                    order = it.map(str::to_string).collect();
                }
                continue;
            }
            let toks: Vec<&str> = t.split_whitespace().collect();
            if toks[0] == "start" {
                if toks.len() != 2 {
                    return Err(Error::parse(ln, "expected `start <NT>`"));
                }
                start_name = Some((ln, toks[1].to_string()));
                continue;
            }
            if toks.len() < 2 || toks[1] != "->" {
                return Err(Error::parse(ln, "expected `NT -> sym ...`"));
            }
            raw.push((ln, toks[0].to_string(), toks[2..].iter().map(|s| s.to_string()).collect()));
        }
        let (sln, start_name) = start_name.ok_or_else(|| Error::parse(1, "missing `start` line"))?;
        let mut ids: HashMap<String, u32> = HashMap::new();
        let mut names = Vec::new();
        for lhs in order.iter().chain(raw.iter().map(|(_, lhs, _)| lhs)) {
            if !ids.contains_key(lhs) {
                ids.insert(lhs.clone(), names.len() as u32);
                names.push(lhs.clone());
            }
        }
        let start = *ids
            .get(&start_name)
            .ok_or_else(|| Error::parse(sln, format!("start symbol {start_name:?} has no productions")))?;
        let alphabet = match declared {
            Some(a) => a,
            None => {
                let glyphs: BTreeSet<&str> =
                    raw.iter().flat_map(|(_, _, r)| r.iter()).filter(|s| !ids.contains_key(*s)).map(|s| s.as_str()).collect();
                if glyphs.is_empty() {
                    Alphabet::new(1)?
                } else {
                    let g: Vec<&str> = glyphs.into_iter().collect();
                    Alphabet::with_glyphs(&g).map_err(|e| Error::parse(0, e.to_string()))?
                }
            }
        };
        let mut prods = Vec::with_capacity(raw.len());
        for (_ln, lhs, rhs) in raw {
            let mut body = Vec::with_capacity(rhs.len());
            for s in rhs {
                body.push(match ids.get(&s) {
                    Some(&b) => Sym::N(b),
                    None => Sym::T(alphabet.symbol_of(&s).ok_or(Error::UndeclaredSymbol(s))?),
                });
            }
            prods.push(Production { lhs: ids[&lhs], rhs: body });
        }
        Cfg::new(alphabet, names, start, prods)
    }

    pub fn emit(&self) -> String {
        let g: Vec<String> = (0..self.terminals.size()).map(|a| self.terminals.glyph(a)).collect();
        let mut out = format!(
            "#! terminals {}\n#! nonterminals {}\nstart {}\n",
            g.join(" "),
            self.names.join(" "),
            self.names[self.start as usize]
        );
        for p in &self.prods {
            out.push_str(&self.names[p.lhs as usize]);
            out.push_str(" ->");
            for s in &p.rhs {
                out.push(' ');
                match *s {
                    Sym::T(a) => out.push_str(&g[a as usize]),
                    Sym::N(b) => out.push_str(&self.names[b as usize]),
                }
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Item {
    prod: u32,
    dot: u32,
    origin: u32,
}

/// Earley recognition with nullable-aware prediction.
pub fn cfg_recognize(text: &[u32], cfg: &Cfg) -> Result<bool> {
    for &a in text {
        if a >= cfg.terminals.size() {
            return Err(Error::UndeclaredSymbol(format!("text symbol {a}")));
        }
    }
    let n = text.len();
    let nullable = cfg.nullable();
    let mut by_lhs: Vec<Vec<u32>> = vec![Vec::new(); cfg.names.len()];
    for (i, p) in cfg.prods.iter().enumerate() {
        by_lhs[p.lhs as usize].push(i as u32);
    }
    let next_sym = |it: &Item| cfg.prods[it.prod as usize].rhs.get(it.dot as usize).copied();

    let mut sets: Vec<Vec<Item>> = vec![Vec::new(); n + 1];
    let mut seen: Vec<HashSet<Item>> = vec![HashSet::new(); n + 1];
    // items in set i that wait on nonterminal B
    let mut waiting: Vec<HashMap<u32, Vec<Item>>> = vec![HashMap::new(); n + 1];

    fn add(sets: &mut [Vec<Item>], seen: &mut [HashSet<Item>], i: usize, it: Item) {
        if seen[i].insert(it) {
            sets[i].push(it);
        }
    }

    for &p in &by_lhs[cfg.start as usize] {
        add(&mut sets, &mut seen, 0, Item { prod: p, dot: 0, origin: 0 });
    }
    for i in 0..=n {
        let mut k = 0;
        while k < sets[i].len() {
            let it = sets[i][k];
            k += 1;
            match next_sym(&it) {
                None => {
                    let lhs = cfg.prods[it.prod as usize].lhs;
                    let o = it.origin as usize;
                    let parents: Vec<Item> = waiting[o].get(&lhs).cloned().unwrap_or_default();
                    for w in parents {
                        add(&mut sets, &mut seen, i, Item { dot: w.dot + 1, ..w });
                    }
                }
                Some(Sym::N(b)) => {
                    waiting[i].entry(b).or_default().push(it);
                    for &p in &by_lhs[b as usize] {
                        add(&mut sets, &mut seen, i, Item { prod: p, dot: 0, origin: i as u32 });
                    }
                    if nullable[b as usize] {
                        add(&mut sets, &mut seen, i, Item { dot: it.dot + 1, ..it });
                    }
                }
                Some(Sym::T(a)) => {
                    if i < n && text[i] == a {
                        add(&mut sets, &mut seen, i + 1, Item { dot: it.dot + 1, ..it });
                    }
                }
            }
        }
        // set i is final; free what later sets never read
        seen[i] = HashSet::new();
        if i < n {
            sets[i] = Vec::new();
            if sets[i + 1].is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(sets[n].iter().any(|it| {
        let p = &cfg.prods[it.prod as usize];
        p.lhs == cfg.start && it.origin == 0 && it.dot as usize == p.rhs.len()
    }))
}
