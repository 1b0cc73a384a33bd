use super::clique::TupleFamilies;
use super::fresh_glyphs;
use super::instance::{Direction, Expected, GeneratedInstance, Payload};
use super::source::{pow, solve_clique, Graph};
use crate::error::{Error, Result};
use crate::parsing::PairedAlphabet;
use crate::slp::{Alphabet, NodeId, Slp, SlpBuilder};

/// Guard symbols `[5, 5̄, 6, 6̄, 7, 7̄]` and their weights.
#[derive(Debug, Clone, Copy)]
struct Guard {
    syms: [u32; 6],
    rows: u64,
    cols: u64,
    cell_weight: u64,
}

impl Guard {
    fn outer_weight(&self) -> u64 {
        4 * self.rows * self.cell_weight
    }

    /// `ρ = (8A + 12)·A·B·W`.
    fn rho(&self) -> Result<u64> {
        (8 * self.rows + 12)
            .checked_mul(self.rows)
            .and_then(|x| x.checked_mul(self.cols))
            .and_then(|x| x.checked_mul(self.cell_weight))
            .ok_or(Error::LengthOverflow)
    }

    /// Wrap `rows[a] = ⃝_b 6̄ x_{a,b}` into
    /// `5^B (6 5̄)^B ⃝_a(row_a 6^B) 6̄^B (7 6)^B 7̄^B`.
    fn build(&self, bld: &mut SlpBuilder, rows: &[NodeId]) -> Result<NodeId> {
        let [five, five_bar, six, six_bar, seven, seven_bar] = self.syms.map(|s| bld.terminal(s));
        let b = self.cols;
        let sixes = bld.power(six, b)?;
        let mut parts = vec![bld.power(five, b)?];
        let pair = bld.concat(six, five_bar)?;
        parts.push(bld.power(pair, b)?);
        for &r in rows {
            parts.push(r);
            parts.push(sixes);
        }
        parts.push(bld.power(six_bar, b)?);
        let pair = bld.concat(seven, six)?;
        parts.push(bld.power(pair, b)?);
        parts.push(bld.power(seven_bar, b)?);
        bld.seq(&parts)
    }
}

/// Guarded grid text with its pairing and the guard's contribution `ρ`.
#[derive(Debug, Clone)]
pub struct GuardedText {
    pub text: Slp,
    pub pairing: PairedAlphabet,
    pub rho: u64,
}

/// Guard an `A × B` grid of strings over `pairing` so that an optimal folding commits to one column.
///
/// Every cell must weigh at most `max_weight`, and no two grid symbols may pair. For any flanks `y1`, `y2` over the input alphabet,
/// `WRNA(y1 G y2) = ρ + max_b WRNA(y1 ⃝_a x[a][b] y2)`.
pub fn rna_guard(grid: &[Vec<Vec<u32>>], pairing: &PairedAlphabet, max_weight: u64) -> Result<GuardedText> {
    let rows = grid.len();
    let cols = grid.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 || grid.iter().any(|r| r.len() != cols) {
        return Err(Error::invalid("grid must be a nonempty rectangle"));
    }
    if max_weight == 0 {
        return Err(Error::invalid("cell weight bound must be positive"));
    }
    let base = pairing.base();
    let mut present = vec![false; base.size() as usize];
    for (a, row) in grid.iter().enumerate() {
        for (b, cell) in row.iter().enumerate() {
            let mut w = 0u64;
            for &s in cell {
                base.check(s)?;
                present[s as usize] = true;
                w += pairing.weight(s);
            }
            if w > max_weight {
                return Err(Error::WeightBoundViolated(format!("cell ({a}, {b}) weighs {w} > {max_weight}")));
            }
        }
    }
    if let Some(s) = (0..base.size()).find(|&s| present[s as usize] && pairing.complement(s).is_some_and(|c| present[c as usize])) {
        return Err(Error::invalid(format!("grid symbol {} pairs with another grid symbol", base.glyph(s))));
    }
    let n = base.size();
    let names = fresh_glyphs(base, &["5", "5\u{304}", "6", "6\u{304}", "7", "7\u{304}"]);
    let alphabet = base.extend(&names)?;
    let guard = Guard { syms: [n, n + 1, n + 2, n + 3, n + 4, n + 5], rows: rows as u64, cols: cols as u64, cell_weight: max_weight };
    let mut weights: Vec<u64> = (0..n).map(|s| pairing.weight(s)).collect();
    let (ow, sw) = (guard.outer_weight(), 2 * guard.outer_weight());
    weights.extend([ow, ow, sw, sw, ow, ow]);
    let mut pairs = pairing.pairs();
    pairs.extend([(n, n + 1), (n + 2, n + 3), (n + 4, n + 5)]);
    let pairing = PairedAlphabet::new(alphabet.clone(), &pairs, weights)?;

    let mut bld = SlpBuilder::new();
    let six_bar = bld.terminal(n + 3);
    let mut row_ids = Vec::with_capacity(rows);
    for row in grid {
        let mut parts = Vec::with_capacity(2 * cols);
        for cell in row {
            parts.push(six_bar);
            if !cell.is_empty() {
                parts.push(bld.literal(cell)?);
            }
        }
        row_ids.push(bld.seq(&parts)?);
    }
    let root = guard.build(&mut bld, &row_ids)?;
    let text = bld.finish(root, alphabet)?;
    Ok(GuardedText { text, pairing, rho: guard.rho()? })
}

/// Symbol `digit` (0..=7), optionally barred, at copy level `level` (0..=2).
fn sym(digit: u32, bar: bool, level: u32) -> u32 {
    level * 16 + digit * 2 + u32::from(bar)
}

fn clique_alphabet(rows: u64, cell_weight: u64) -> Result<PairedAlphabet> {
    let mut glyphs = Vec::new();
    let mut weights = Vec::new();
    let mut pairs = Vec::new();
    for level in 0..3 {
        for digit in 0..8u32 {
            for bar in [false, true] {
                let mut g = digit.to_string();
                if bar {
                    g.push('\u{304}');
                }
                g.push_str(&"'".repeat(level as usize));
                glyphs.push(g);
                weights.push(match digit {
                    5 | 7 => 4 * rows * cell_weight,
                    6 => 8 * rows * cell_weight,
                    _ => 1,
                });
            }
            pairs.push((sym(digit, false, level), sym(digit, true, level)));
        }
    }
    PairedAlphabet::new(Alphabet::with_glyphs(&glyphs)?, &pairs, weights)
}

#[derive(Clone, Copy)]
enum Row {
    /// `0̄` when the pair is inside the tuple, else `1̄`.
    Clique,
    /// `2 4` when the vertex is in the tuple, else `2 3 4`.
    Member,
    /// `4̄ 2̄` when the vertex is adjacent to the whole tuple, else `4̄ 3̄`. Rows run in descending
    /// vertex order so each one nests around its `Member` row instead of crossing it.
    Neighbor,
}

impl Row {
    /// Cell contents for indicator value 0 and 1.
    fn cells(self, level: u32) -> [Vec<u32>; 2] {
        let s = |d, b| sym(d, b, level);
        match self {
            Row::Clique => [vec![s(1, true)], vec![s(0, true)]],
            Row::Member => [vec![s(2, false), s(3, false), s(4, false)], vec![s(2, false), s(4, false)]],
            Row::Neighbor => [vec![s(4, true), s(3, true)], vec![s(4, true), s(2, true)]],
        }
    }
}

/// Clique to weighted RNA folding: the best folding reaches `3ρ + 6V + 3|F|` iff the graph has a
/// `3k`-clique, where `F` is the set of forbidden tuple pairs.
pub fn gen_rna_from_clique(g: &Graph, k: usize) -> Result<GeneratedInstance> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let answer = solve_clique(g, 3 * k)?;
    let v = g.vertices();
    let forbidden = super::clique::forbidden_pairs(g, k);
    let f = forbidden.len() as u64;
    let cols = pow(v as u64, k)?;
    let rows = f + 2 * v as u64;
    let cell_weight = 3;
    let pairing = clique_alphabet(rows, cell_weight)?;

    let mut bld = SlpBuilder::new();
    // grid g uses guard level g; its rows are (kind, content level)
    let layout: [[(Row, u32); 3]; 3] = [
        [(Row::Clique, 0), (Row::Member, 0), (Row::Member, 1)],
        [(Row::Clique, 1), (Row::Neighbor, 1), (Row::Member, 2)],
        [(Row::Clique, 2), (Row::Neighbor, 2), (Row::Neighbor, 0)],
    ];
    let mut parts = Vec::new();
    let mut rho = 0;
    for (level, spec) in layout.iter().enumerate() {
        let level = level as u32;
        let six_bar = bld.terminal(sym(6, true, level));
        let mut row_ids = Vec::new();
        for &(kind, content) in spec {
            let [c0, c1] = kind.cells(content);
            let leaf = |bld: &mut SlpBuilder, c: &[u32]| -> Result<NodeId> {
                let body = bld.literal(c)?;
                bld.concat(six_bar, body)
            };
            let (zero, one) = (leaf(&mut bld, &c0)?, leaf(&mut bld, &c1)?);
            let mut fam = TupleFamilies::new(&mut bld, g, zero, one, k)?;
            match kind {
                Row::Clique => {
                    for e in &forbidden {
                        row_ids.push(fam.incl(&mut bld, k, e)?);
                    }
                }
                Row::Member => {
                    for u in 0..v {
                        row_ids.push(fam.incl(&mut bld, k, &[u])?);
                    }
                }
                Row::Neighbor => {
                    for u in (0..v).rev() {
                        row_ids.push(fam.adj(&mut bld, k, u)?);
                    }
                }
            }
        }
        let guard = Guard {
            syms: [5, 6, 7].map(|d| [sym(d, false, level), sym(d, true, level)]).concat().try_into().expect("six"),
            rows,
            cols,
            cell_weight,
        };
        rho = guard.rho()?;
        let one = bld.terminal(sym(1, false, level));
        if let Some(ones) = bld.power_opt(Some(one), f)? {
            parts.push(ones);
        }
        parts.push(guard.build(&mut bld, &row_ids)?);
    }
    let root = bld.seq(&parts)?;
    let text = bld.finish(root, pairing.base().clone())?;
    let threshold = 3 * rho + 6 * v as u64 + 3 * f;
    let mut out = GeneratedInstance::new(
        "rna-clique",
        Payload::Folding { text, pairing },
        Expected::Threshold { value: threshold, dir: Direction::Ge },
        answer,
    );
    out.note("param.k", k).note("param.V", v).note("param.clique", 3 * k);
    out.note("const.rho", rho).note("const.rows", rows).note("const.cols", cols).note("const.forbidden", f);
    Ok(out)
}
