//! Source instances of the hard problems and their exhaustive solvers.

use itertools::Itertools;

use crate::error::{Error, Result};

/// Exhaustive-search caps for [`solve_source`].
pub const TUPLE_CAP: u64 = 10_000_000;
pub const VERTEX_CAP: usize = 12;

/// Orthogonal Vectors: is there `a ∈ A`, `b ∈ B` with no common 1-coordinate?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OvInstance {
    pub d: usize,
    pub a: Vec<Vec<bool>>,
    pub b: Vec<Vec<bool>>,
}

/// k-OV: are there `k` vectors (repetition allowed) whose coordinatewise product is zero?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KovInstance {
    pub d: usize,
    pub k: usize,
    pub a: Vec<Vec<bool>>,
}

/// Simple undirected graph on vertices `0..v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    v: usize,
    adj: Vec<Vec<bool>>,
}

/// k-SUM with `arity` summands drawn from `values` (repetition allowed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KsumInstance {
    pub values: Vec<u64>,
    pub target: u64,
    pub arity: usize,
}

fn check_vectors(d: usize, vs: &[Vec<bool>], what: &str) -> Result<()> {
    if vs.is_empty() {
        return Err(Error::invalid(format!("{what} must be nonempty")));
    }
    if let Some(v) = vs.iter().find(|v| v.len() != d) {
        return Err(Error::invalid(format!("{what} has a vector of length {} in dimension {d}", v.len())));
    }
    Ok(())
}

impl OvInstance {
    pub fn new(d: usize, a: Vec<Vec<bool>>, b: Vec<Vec<bool>>) -> Result<Self> {
        check_vectors(d, &a, "A")?;
        check_vectors(d, &b, "B")?;
        Ok(OvInstance { d, a, b })
    }
}

impl KovInstance {
    pub fn new(d: usize, k: usize, a: Vec<Vec<bool>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("tuple arity k must be at least 1"));
        }
        check_vectors(d, &a, "A")?;
        Ok(KovInstance { d, k, a })
    }

    /// Number of k-tuples, `A^k`.
    pub fn tuple_count(&self) -> Result<u64> {
        pow(self.a.len() as u64, self.k)
    }
}

impl Graph {
    pub fn new(v: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![vec![false; v]; v];
        for &(a, b) in edges {
            if a >= v || b >= v {
                return Err(Error::invalid(format!("edge {a} {b} outside 0..{v}")));
            }
            if a == b {
                return Err(Error::invalid(format!("self-loop at {a}")));
            }
            adj[a][b] = true;
            adj[b][a] = true;
        }
        Ok(Graph { v, adj })
    }

    /// Graph whose edge set is read off the bits of `mask` over the pairs `u < v` in lex order.
    pub fn from_mask(v: usize, mask: u64) -> Self {
        let edges: Vec<(usize, usize)> =
            (0..v).tuple_combinations().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e).collect();
        Graph::new(v, &edges).expect("pairs are in range")
    }

    pub fn vertices(&self) -> usize {
        self.v
    }

    pub fn adjacent(&self, u: usize, w: usize) -> bool {
        self.adj[u][w]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.v).tuple_combinations().filter(|&(u, w)| self.adj[u][w]).collect()
    }

    /// Pairs `u < w` that are not adjacent.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        (0..self.v).tuple_combinations().filter(|&(u, w)| !self.adj[u][w]).collect()
    }

    pub fn neighbors(&self, u: usize) -> Vec<usize> {
        (0..self.v).filter(|&w| self.adj[u][w]).collect()
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter().tuple_combinations().all(|(&a, &b)| self.adj[a][b])
    }

    /// All `size`-cliques as increasing vertex lists, in lexicographic order.
    pub fn cliques(&self, size: usize) -> Vec<Vec<usize>> {
        if size == 0 {
            return vec![vec![]];
        }
        (0..self.v).combinations(size).filter(|c| self.is_clique(c)).collect()
    }
}

impl KsumInstance {
    pub fn new(mut values: Vec<u64>, target: u64, arity: usize) -> Result<Self> {
        if arity == 0 {
            return Err(Error::invalid("k-SUM arity must be at least 1"));
        }
        if values.is_empty() {
            return Err(Error::invalid("k-SUM needs at least one value"));
        }
        values.sort_unstable();
        if values.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("k-SUM values must be distinct"));
        }
        Ok(KsumInstance { values, target, arity })
    }

    /// Value bound `R`: every value lies in `[0, R]`.
    pub fn bound(&self) -> u64 {
        *self.values.last().expect("nonempty")
    }
}

pub(crate) fn pow(base: u64, exp: usize) -> Result<u64> {
    u32::try_from(exp).ok().and_then(|e| base.checked_pow(e)).ok_or(Error::LengthOverflow)
}

/// Every source kind the generators accept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Ov(OvInstance),
    Kov(KovInstance),
    Graph(Graph),
    Ksum(KsumInstance),
}

fn parse_row(s: &str, ln: usize) -> Result<Vec<bool>> {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::parse(ln, format!("expected 0/1, found {c:?}"))),
        })
        .collect()
}

fn row(v: &[bool]) -> String {
    v.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

impl Source {
    /// Parse `ov d`, `kov d k`, `graph V`, or `ksum arity t`, followed by the body lines.
    /// Lines starting with `%` are comments.
    pub fn parse(src: &str) -> Result<Self> {
        let mut lines = src.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.starts_with('%'));
        let (hl, head) = lines
            .by_ref()
            .find(|(_, l)| !l.is_empty())
            .ok_or_else(|| Error::parse(1, "empty source file"))?;
        let h: Vec<&str> = head.split_whitespace().collect();
        let num = |s: &str| s.parse::<u64>().map_err(|_| Error::parse(hl, format!("bad number {s:?}")));
        let shape = |e: Error| match e {
            Error::Invalid(m) => Error::parse(hl, m),
            e => e,
        };
        match h.as_slice() {
            ["ov", d] => {
                let d = num(d)? as usize;
                let (mut a, mut b) = (Vec::new(), Vec::new());
                let mut in_b = false;
                for (ln, l) in lines {
                    if l.is_empty() {
                        in_b |= !a.is_empty();
                        continue;
                    }
                    (if in_b { &mut b } else { &mut a }).push(parse_row(l, ln)?);
                }
                OvInstance::new(d, a, b).map(Source::Ov).map_err(shape)
            }
            ["kov", d, k] => {
                let (d, k) = (num(d)? as usize, num(k)? as usize);
                let a = lines.filter(|(_, l)| !l.is_empty()).map(|(ln, l)| parse_row(l, ln)).collect::<Result<_>>()?;
                KovInstance::new(d, k, a).map(Source::Kov).map_err(shape)
            }
            ["graph", v] => {
                let v = num(v)? as usize;
                let mut edges = Vec::new();
                for (ln, l) in lines.filter(|(_, l)| !l.is_empty()) {
                    let p: Vec<&str> = l.split_whitespace().collect();
                    let n = |s: &str| s.parse::<usize>().map_err(|_| Error::parse(ln, format!("bad vertex {s:?}")));
                    match p.as_slice() {
                        [a, b] => edges.push((n(a)?, n(b)?)),
                        _ => return Err(Error::parse(ln, "expected `u v`")),
                    }
                }
                Graph::new(v, &edges).map(Source::Graph).map_err(shape)
            }
            ["ksum", arity, t] => {
                let (arity, t) = (num(arity)? as usize, num(t)?);
                let mut values = Vec::new();
                for (ln, l) in lines.filter(|(_, l)| !l.is_empty()) {
                    values.push(l.parse::<u64>().map_err(|_| Error::parse(ln, format!("bad integer {l:?}")))?);
                }
                KsumInstance::new(values, t, arity).map(Source::Ksum).map_err(shape)
            }
            _ => Err(Error::parse(hl, "expected `ov d`, `kov d k`, `graph V`, or `ksum arity t`")),
        }
    }

    pub fn emit(&self) -> String {
        let mut out = String::new();
        match self {
            Source::Ov(o) => {
                out.push_str(&format!("ov {}\n", o.d));
                o.a.iter().for_each(|v| out.push_str(&(row(v) + "\n")));
                out.push('\n');
                o.b.iter().for_each(|v| out.push_str(&(row(v) + "\n")));
            }
            Source::Kov(o) => {
                out.push_str(&format!("kov {} {}\n", o.d, o.k));
                o.a.iter().for_each(|v| out.push_str(&(row(v) + "\n")));
            }
            Source::Graph(g) => {
                out.push_str(&format!("graph {}\n", g.v));
                g.edges().iter().for_each(|(a, b)| out.push_str(&format!("{a} {b}\n")));
            }
            Source::Ksum(s) => {
                out.push_str(&format!("ksum {} {}\n", s.arity, s.target));
                s.values.iter().for_each(|v| out.push_str(&format!("{v}\n")));
            }
        }
        out
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Source::Ov(_) => "ov",
            Source::Kov(_) => "kov",
            Source::Graph(_) => "graph",
            Source::Ksum(_) => "ksum",
        }
    }
}

/// Coordinatewise AND of the chosen vectors.
pub(crate) fn product(vs: &[Vec<bool>], pick: &[usize], d: usize) -> Vec<bool> {
    (0..d).map(|l| pick.iter().all(|&i| vs[i][l])).collect()
}

/// Does the k-OV instance have an orthogonal k-tuple?
pub fn solve_kov(inst: &KovInstance) -> Result<bool> {
    let count = inst.tuple_count().unwrap_or(u64::MAX);
    if count > TUPLE_CAP {
        return Err(Error::TooLarge { len: count, limit: TUPLE_CAP });
    }
    // order is irrelevant, so multisets suffice
    Ok((0..inst.a.len())
        .combinations_with_replacement(inst.k)
        .any(|t| !product(&inst.a, &t, inst.d).contains(&true)))
}

pub fn solve_ov(inst: &OvInstance) -> Result<bool> {
    let count = (inst.a.len() as u64).saturating_mul(inst.b.len() as u64);
    if count > TUPLE_CAP {
        return Err(Error::TooLarge { len: count, limit: TUPLE_CAP });
    }
    Ok(inst.a.iter().any(|a| inst.b.iter().any(|b| a.iter().zip(b).all(|(&x, &y)| !(x && y)))))
}

/// Does the graph have a clique on `k` distinct vertices?
pub fn solve_clique(g: &Graph, k: usize) -> Result<bool> {
    if g.v > VERTEX_CAP {
        return Err(Error::TooLarge { len: g.v as u64, limit: VERTEX_CAP as u64 });
    }
    if k > g.v {
        return Ok(false);
    }
    Ok((0..g.v).combinations(k).any(|c| g.is_clique(&c)))
}

pub fn solve_ksum(inst: &KsumInstance) -> Result<bool> {
    let count = pow(inst.values.len() as u64, inst.arity).unwrap_or(u64::MAX);
    if count > TUPLE_CAP {
        return Err(Error::TooLarge { len: count, limit: TUPLE_CAP });
    }
    Ok(inst
        .values
        .iter()
        .combinations_with_replacement(inst.arity)
        .any(|t| t.iter().map(|&&v| v as u128).sum::<u128>() == inst.target as u128))
}

/// Ground truth for a source; graphs need the clique size `k`.
pub fn solve_source(source: &Source, k: Option<usize>) -> Result<bool> {
    match source {
        Source::Ov(o) => solve_ov(o),
        Source::Kov(o) => solve_kov(o),
        Source::Graph(g) => solve_clique(g, k.ok_or_else(|| Error::invalid("graph sources need a clique size"))?),
        Source::Ksum(s) => solve_ksum(s),
    }
}
