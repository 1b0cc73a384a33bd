use std::collections::HashMap;

use super::instance::{Expected, GeneratedInstance, Payload};
use super::source::{pow, solve_clique, Graph};
use crate::automata::{Automaton, Nfa};
use crate::error::{Error, Result};
use crate::parsing::{Cfg, Production, Sym};
use crate::slp::{Alphabet, NodeId, Slp, SlpBuilder};

/// State budget for generated automata.
pub const NFA_STATE_CAP: u32 = 4096;

fn bit_width(v: usize) -> usize {
    (usize::BITS - v.saturating_sub(1).leading_zeros()).max(1) as usize
}

/// Fixed-width binary code of vertex `v`, most significant bit first.
fn vertex_code(v: usize, width: usize) -> Vec<u32> {
    (0..width).rev().map(|b| ((v >> b) & 1) as u32).collect()
}

struct NfaBuilder {
    q: u32,
    moves: Vec<(u32, u32, u32)>,
}

impl NfaBuilder {
    fn state(&mut self) -> Result<u32> {
        if self.q >= NFA_STATE_CAP {
            return Err(Error::TooLarge { len: u64::from(self.q) + 1, limit: u64::from(NFA_STATE_CAP) });
        }
        self.q += 1;
        Ok(self.q - 1)
    }

    /// One path from `from` to `to` per neighbor, spelling the neighbor's code.
    fn neighborhood(&mut self, g: &Graph, v: usize, width: usize, from: u32, to: u32) -> Result<()> {
        for w in g.neighbors(v) {
            let code = vertex_code(w, width);
            let mut cur = from;
            for (i, &bit) in code.iter().enumerate() {
                let next = if i + 1 == code.len() { to } else { self.state()? };
                self.moves.push((cur, bit, next));
                cur = next;
            }
        }
        Ok(())
    }

    /// Chained neighborhood gadgets for each member of `clique`, each repeated `reps` times.
    fn clique_gadget(&mut self, g: &Graph, clique: &[usize], reps: usize, width: usize) -> Result<(u32, u32)> {
        let start = self.state()?;
        let mut cur = start;
        for &u in clique {
            for _ in 0..reps {
                let next = self.state()?;
                self.neighborhood(g, u, width, cur, next)?;
                cur = next;
            }
        }
        Ok((start, cur))
    }
}

const NFA_ZERO: u32 = 0;
const NFA_ONE: u32 = 1;
const NFA_HASH: u32 = 2;
const NFA_DOLLAR: u32 = 3;

/// Clique to NFA acceptance: detects cliques of size `3·small + text_side`.
///
/// The text lists every `text_side`-clique's code block `m + 4` times; the automaton walks four
/// columns of `small`-clique gadgets, and the `#` count forces the first and last column to agree.
pub fn gen_nfa_from_clique(g: &Graph, small: usize, text_side: usize) -> Result<GeneratedInstance> {
    if small == 0 || text_side == 0 {
        return Err(Error::invalid("both clique parts must be at least 1"));
    }
    let k = 3 * small + text_side;
    let answer = solve_clique(g, k)?;
    let width = bit_width(g.vertices());
    let cl = g.cliques(small);
    let cp = g.cliques(text_side);
    let m = cl.len();
    let alphabet = Alphabet::from_chars("01#$")?;

    let mut bld = SlpBuilder::new();
    let dollar = bld.terminal(NFA_DOLLAR);
    let hash = bld.terminal(NFA_HASH);
    let mut parts = vec![dollar];
    for c in &cp {
        let mut code = Vec::new();
        for _ in 0..small {
            for &u in c {
                code.extend(vertex_code(u, width));
            }
        }
        let lit = bld.literal(&code)?;
        let block = bld.concat(hash, lit)?;
        let rep = bld.power(block, m as u64 + 4)?;
        parts.push(rep);
        parts.push(dollar);
    }
    let root = bld.seq(&parts)?;
    let text = bld.finish(root, alphabet)?;

    let mut nb = NfaBuilder { q: 0, moves: Vec::new() };
    let s = nb.state()?;
    let t = nb.state()?;
    for a in [NFA_ZERO, NFA_ONE, NFA_HASH, NFA_DOLLAR] {
        nb.moves.push((s, a, s));
        nb.moves.push((t, a, t));
    }
    if m > 0 {
        let ladder_s = (0..m).map(|_| nb.state()).collect::<Result<Vec<_>>>()?;
        let ladder_t = (0..m).map(|_| nb.state()).collect::<Result<Vec<_>>>()?;
        let mut cols: Vec<Vec<(u32, u32)>> = Vec::new();
        for _ in 0..4 {
            cols.push(cl.iter().map(|c| nb.clique_gadget(g, c, text_side, width)).collect::<Result<_>>()?);
        }
        nb.moves.push((s, NFA_DOLLAR, ladder_s[0]));
        for i in 0..m {
            for ladder in [&ladder_s, &ladder_t] {
                nb.moves.push((ladder[i], NFA_ZERO, ladder[i]));
                nb.moves.push((ladder[i], NFA_ONE, ladder[i]));
                if i + 1 < m {
                    nb.moves.push((ladder[i], NFA_HASH, ladder[i + 1]));
                }
            }
            nb.moves.push((ladder_s[i], NFA_HASH, cols[0][i].0));
            nb.moves.push((cols[3][i].1, NFA_HASH, ladder_t[i]));
        }
        nb.moves.push((ladder_t[m - 1], NFA_DOLLAR, t));
        for i in 0..m {
            for j in 0..m {
                let union: Vec<usize> = cl[i].iter().chain(&cl[j]).copied().collect();
                if cl[i].iter().all(|u| !cl[j].contains(u)) && g.is_clique(&union) {
                    for r in 0..3 {
                        nb.moves.push((cols[r][i].1, NFA_HASH, cols[r + 1][j].0));
                    }
                }
            }
        }
    }
    let nfa = Nfa::new(nb.q, 4, s, &[t], &nb.moves)?;
    let mut out = GeneratedInstance::new(
        "nfa-clique",
        Payload::Automaton { text, automaton: Automaton::Nfa(nfa) },
        Expected::Accept(answer),
        answer,
    );
    out.note("param.k", k).note("param.small", small).note("param.text_side", text_side).note("param.V", g.vertices());
    Ok(out)
}

/// Memoized SLP families over `V^d` tuple blocks: inclusion and adjacency indicators.
pub(crate) struct TupleFamilies<'g> {
    g: &'g Graph,
    zero: NodeId,
    one: NodeId,
    zeros: Vec<NodeId>,
    incl: HashMap<(usize, Vec<usize>), NodeId>,
    adj: HashMap<(usize, usize), NodeId>,
}

impl<'g> TupleFamilies<'g> {
    pub fn new(bld: &mut SlpBuilder, g: &'g Graph, zero: NodeId, one: NodeId, depth: usize) -> Result<Self> {
        let mut zeros = vec![zero];
        for d in 1..=depth {
            let z = bld.power(zeros[d - 1], g.vertices() as u64)?;
            zeros.push(z);
        }
        Ok(TupleFamilies { g, zero, one, zeros, incl: HashMap::new(), adj: HashMap::new() })
    }

    /// Indicator over `d`-tuples (lex order) that contain the multiset `set`.
    pub fn incl(&mut self, bld: &mut SlpBuilder, d: usize, set: &[usize]) -> Result<NodeId> {
        if set.len() > d {
            return Ok(self.zeros[d]);
        }
        if d == 0 {
            return Ok(if set.is_empty() { self.one } else { self.zero });
        }
        let mut key = set.to_vec();
        key.sort_unstable();
        if let Some(&id) = self.incl.get(&(d, key.clone())) {
            return Ok(id);
        }
        let mut parts = Vec::with_capacity(self.g.vertices());
        for v in 0..self.g.vertices() {
            let mut rest = key.clone();
            if let Some(p) = rest.iter().position(|&x| x == v) {
                rest.remove(p);
            }
            parts.push(self.incl(bld, d - 1, &rest)?);
        }
        let id = bld.seq(&parts)?;
        self.incl.insert((d, key), id);
        Ok(id)
    }

    /// Indicator over `d`-tuples whose members are all adjacent to `v`.
    pub fn adj(&mut self, bld: &mut SlpBuilder, d: usize, v: usize) -> Result<NodeId> {
        if d == 0 {
            return Ok(self.one);
        }
        if let Some(&id) = self.adj.get(&(d, v)) {
            return Ok(id);
        }
        let mut parts = Vec::with_capacity(self.g.vertices());
        for u in 0..self.g.vertices() {
            parts.push(if self.g.adjacent(u, v) { self.adj(bld, d - 1, v)? } else { self.zeros[d - 1] });
        }
        let id = bld.seq(&parts)?;
        self.adj.insert((d, v), id);
        Ok(id)
    }
}

/// Binary SLP of length `V^k` with a 1 at each `k`-tuple containing the multiset `set`.
pub fn inclusion_slp(g: &Graph, k: usize, set: &[usize]) -> Result<Slp> {
    let mut bld = SlpBuilder::new();
    let (zero, one) = (bld.terminal(0), bld.terminal(1));
    let mut fam = TupleFamilies::new(&mut bld, g, zero, one, k)?;
    let root = fam.incl(&mut bld, k, set)?;
    bld.finish(root, Alphabet::binary())
}

/// Binary SLP of length `V^k` with a 1 at each `k`-tuple whose members are all adjacent to `v`.
pub fn adjacency_slp(g: &Graph, k: usize, v: usize) -> Result<Slp> {
    let mut bld = SlpBuilder::new();
    let (zero, one) = (bld.terminal(0), bld.terminal(1));
    let mut fam = TupleFamilies::new(&mut bld, g, zero, one, k)?;
    let root = fam.adj(&mut bld, k, v)?;
    bld.finish(root, Alphabet::binary())
}

const GLYPHS: &str = "01#$xyz";

fn t(c: char) -> Sym {
    Sym::T(GLYPHS.find(c).expect("grammar glyph") as u32)
}

/// Tuple pairs the clique test must rule out: non-edges, plus repeated vertices when `k ≥ 2`.
pub(crate) fn forbidden_pairs(g: &Graph, k: usize) -> Vec<Vec<usize>> {
    let mut f: Vec<Vec<usize>> = g.non_edges().into_iter().map(|(u, v)| vec![u, v]).collect();
    if k >= 2 {
        f.extend((0..g.vertices()).map(|v| vec![v, v]));
    }
    f
}

fn clique_grammar(span: u64) -> Result<Cfg> {
    let mut names: Vec<String> =
        ["S", "X", "C", "Ct", "Bin", "B", "Bout", "Btin", "Bt", "Btout"].iter().map(|s| s.to_string()).collect();
    let id = |names: &[String], n: &str| names.iter().position(|x| x == n).expect("declared") as u32;
    let skip = span - 1;
    let levels = if skip == 0 { 0 } else { 64 - skip.leading_zeros() as usize };
    let base = names.len() as u32;
    names.extend((0..levels).map(|d| format!("X{d}")));
    let n = |s: &str| Sym::N(id(&names, s));
    let mut prods = Vec::new();
    let mut p = |lhs: Sym, rhs: Vec<Sym>| {
        let Sym::N(lhs) = lhs else { unreachable!("nonterminal lhs") };
        prods.push(Production { lhs, rhs });
    };

    // X derives every string of length span - 1
    for c in GLYPHS.chars().filter(|_| levels > 0) {
        p(Sym::N(base), vec![t(c)]);
    }
    for d in 1..levels as u32 {
        p(Sym::N(base + d), vec![Sym::N(base + d - 1), Sym::N(base + d - 1)]);
    }
    let jump: Vec<Sym> = (0..levels).rev().filter(|&d| skip >> d & 1 == 1).map(|d| Sym::N(base + d as u32)).collect();
    p(n("X"), jump);

    let x = n("X");
    p(n("C"), vec![t('$'), x, n("Ct")]);
    p(n("Ct"), vec![t('0'), x, n("Ct")]);
    p(n("Ct"), vec![t('$')]);
    for (bin, b, bout) in [("Bin", "B", "Bout"), ("Btin", "Bt", "Btout")] {
        p(n(bin), vec![t('#'), x, n(b), x, t('#')]);
        for (l, r) in [('1', '1'), ('0', '1'), ('0', '0')] {
            p(n(b), vec![t(l), x, n(b), x, t(r)]);
        }
        p(n(b), vec![t('#'), n(bout), t('#')]);
    }
    p(n("S"), vec![t('x'), n("S")]);
    p(n("S"), vec![n("S"), t('z')]);
    p(n("S"), vec![x, n("C"), x, n("Bin"), x, n("C"), x]);
    p(n("Bout"), vec![x, n("Btin"), x, t('y'), x, n("C"), x, n("Btin"), x]);
    p(n("Btout"), vec![t('#'), n("Btout")]);
    p(n("Btout"), vec![]);
    Cfg::new(Alphabet::from_chars(GLYPHS)?, names, 0, prods)
}

/// Clique to CFG recognition: the grammar accepts the text iff the graph has a `3k`-clique.
pub fn gen_cfg_from_clique(g: &Graph, k: usize) -> Result<GeneratedInstance> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let answer = solve_clique(g, 3 * k)?;
    let span = pow(g.vertices() as u64, k)?;
    let sym = |c: char| GLYPHS.find(c).expect("glyph") as u32;

    let mut bld = SlpBuilder::new();
    let (zero, one) = (bld.terminal(sym('0')), bld.terminal(sym('1')));
    let mut fam = TupleFamilies::new(&mut bld, g, zero, one, k)?;
    let fence = |bld: &mut SlpBuilder, c: char| -> Result<NodeId> { Ok(bld.run(sym(c), span)?.expect("V >= 1")) };

    let dollars = fence(&mut bld, '$')?;
    let mut tc = vec![dollars];
    for e in forbidden_pairs(g, k) {
        tc.push(fam.incl(&mut bld, k, &e)?);
    }
    tc.push(dollars);
    let tc = bld.seq(&tc)?;

    let hashes = fence(&mut bld, '#')?;
    let mut tb = vec![hashes];
    for v in 0..g.vertices() {
        tb.push(fam.incl(&mut bld, k, &[v])?);
    }
    tb.push(hashes);
    let tb = bld.seq(&tb)?;
    let mut tb2 = vec![hashes];
    for v in (0..g.vertices()).rev() {
        tb2.push(fam.adj(&mut bld, k, v)?);
    }
    tb2.push(hashes);
    let tb2 = bld.seq(&tb2)?;

    let (xs, ys, zs) = (fence(&mut bld, 'x')?, fence(&mut bld, 'y')?, fence(&mut bld, 'z')?);
    let root = bld.seq(&[xs, tc, tb, tb, tb2, ys, tc, tb, tb2, tb2, tc, zs])?;
    let text = bld.finish(root, Alphabet::from_chars(GLYPHS)?)?;
    let grammar = clique_grammar(span)?;
    let mut out = GeneratedInstance::new("cfg-clique", Payload::Grammar { text, grammar }, Expected::Accept(answer), answer);
    out.note("param.k", k).note("param.V", g.vertices()).note("param.clique", 3 * k);
    Ok(out)
}
