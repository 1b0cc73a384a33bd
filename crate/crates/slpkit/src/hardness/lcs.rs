use itertools::Itertools;

use super::fresh_glyphs;
use super::instance::{Direction, Expected, GeneratedInstance, Payload};
use super::source::{pow, product, solve_kov, KovInstance};
use super::tuplify::tuplify_in;
use crate::error::{Error, Result};
use crate::seqcmp::lcs_dp;
use crate::slp::{Alphabet, NodeId, Slp, SlpBuilder};

/// `[0_X, 1_X]` and `[0_Y, 1_Y]`: five-bit strings whose LCS distances encode AND.
pub const COORD_X: [&str; 2] = ["10011", "11100"];
pub const COORD_Y: [&str; 2] = ["11001", "00111"];

/// LCS distance `|x| + |y| - 2 LCS(x, y)`.
pub fn lcs_distance(x: &[u32], y: &[u32]) -> Result<u64> {
    Ok(lcs_dp(x, y)?.delta)
}

/// Cost of aligning `xs[i]` with `ys[j]` for each 0-based pair `(i, j)` in `pairs`, with a
/// penalty of `γ = max δ` per unaligned `j`, or per skipped `i` between the first and last
/// aligned `i` once every `j` is aligned.
pub fn alignment_cost(xs: &[Vec<u32>], ys: &[Vec<u32>], pairs: &[(usize, usize)]) -> Result<u64> {
    let (n, m) = (xs.len(), ys.len());
    if m > n {
        return Err(Error::InvalidAlignment(format!("m = {m} exceeds n = {n}")));
    }
    for (k, &(i, j)) in pairs.iter().enumerate() {
        if i >= n || j >= m {
            return Err(Error::InvalidAlignment(format!("pair ({i}, {j}) out of range {n} x {m}")));
        }
        if k > 0 && (i <= pairs[k - 1].0 || j <= pairs[k - 1].1) {
            return Err(Error::InvalidAlignment("pairs must increase strictly on both sides".into()));
        }
    }
    let mut gamma = 0;
    for x in xs {
        for y in ys {
            gamma = gamma.max(lcs_distance(x, y)?);
        }
    }
    let mut cost = 0;
    for &(i, j) in pairs {
        cost += lcs_distance(&xs[i], &ys[j])?;
    }
    let penalty = if pairs.len() < m {
        (m - pairs.len()) as u64
    } else if let (Some(first), Some(last)) = (pairs.first(), pairs.last()) {
        (last.0 - first.0 + 1 - m) as u64
    } else {
        0
    };
    Ok(cost + penalty * gamma)
}

/// One level of the compressible LCS alignment gadget, over the fresh symbols `σ, ρ, μ`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Gadget {
    sigma: u32,
    rho: u32,
    mu: u32,
    pub kappa1: u64,
    pub kappa2: u64,
}

impl Gadget {
    pub fn new(len_x: u64, len_y: u64, [sigma, rho, mu]: [u32; 3]) -> Result<Self> {
        let kappa1 = len_x.checked_add(len_y).and_then(|s| s.checked_mul(4)).ok_or(Error::LengthOverflow)?;
        let kappa2 = kappa1.checked_mul(2).and_then(|s| s.checked_add(len_x)).ok_or(Error::LengthOverflow)?;
        Ok(Gadget { sigma, rho, mu, kappa1, kappa2 })
    }

    fn mu_run(&self, bld: &mut SlpBuilder, k: u64) -> Result<Option<NodeId>> {
        bld.run(self.mu, k)
    }

    /// `μ^⌊κ2/2⌋ σ^κ1 S ρ^κ1 μ^⌈κ2/2⌉`
    pub fn pad(&self, bld: &mut SlpBuilder, s: NodeId) -> Result<NodeId> {
        let parts = [
            self.mu_run(bld, self.kappa2 / 2)?,
            bld.run(self.sigma, self.kappa1)?,
            Some(s),
            bld.run(self.rho, self.kappa1)?,
            self.mu_run(bld, self.kappa2.div_ceil(2))?,
        ];
        Ok(bld.cat_all(parts)?.expect("nonempty"))
    }

    /// X side around the concatenated pads.
    pub fn wrap_x(&self, bld: &mut SlpBuilder, pads: NodeId) -> Result<NodeId> {
        let parts = [self.mu_run(bld, self.kappa2.div_ceil(2))?, Some(pads), self.mu_run(bld, self.kappa2 / 2)?];
        Ok(bld.cat_all(parts)?.expect("nonempty"))
    }

    /// Y side around the concatenated pads, for `n` pieces on the X side.
    pub fn wrap_y(&self, bld: &mut SlpBuilder, pads: NodeId, n: u64) -> Result<NodeId> {
        let outer = n.checked_mul(self.kappa2).ok_or(Error::LengthOverflow)?;
        let left = self.mu_run(bld, outer + self.kappa2.div_ceil(2))?;
        let right = self.mu_run(bld, outer + self.kappa2 / 2)?;
        Ok(bld.cat_all([left, Some(pads), right])?.expect("nonempty"))
    }

    /// Full X side from individual pieces.
    pub fn side_x(&self, bld: &mut SlpBuilder, pieces: &[NodeId]) -> Result<NodeId> {
        let pads = pieces.iter().map(|&p| self.pad(bld, p)).collect::<Result<Vec<_>>>()?;
        let mid = bld.seq(&pads)?;
        self.wrap_x(bld, mid)
    }

    pub fn side_y(&self, bld: &mut SlpBuilder, pieces: &[NodeId], n: u64) -> Result<NodeId> {
        let pads = pieces.iter().map(|&p| self.pad(bld, p)).collect::<Result<Vec<_>>>()?;
        let mid = bld.seq(&pads)?;
        self.wrap_y(bld, mid, n)
    }

    /// Offset `C = 2nκ2` of the sandwich property.
    pub fn offset(&self, n: u64) -> Result<u64> {
        n.checked_mul(2).and_then(|x| x.checked_mul(self.kappa2)).ok_or(Error::LengthOverflow)
    }
}

fn common_type(items: &[Slp], side: &str) -> Result<(u64, Alphabet)> {
    let first = items.first().ok_or_else(|| Error::TypeMismatch(format!("{side} side is empty")))?;
    for s in items {
        if s.len() != first.len() || s.alphabet() != first.alphabet() {
            return Err(Error::TypeMismatch(format!("{side} pieces differ in length or alphabet")));
        }
    }
    Ok((first.len(), first.alphabet().clone()))
}

/// Alignment gadget over `xs` (n pieces) and `ys` (m ≤ n pieces). Returns `(X, Y, C)` with
/// `min_Λ cost(Λ) ≤ δ(X, Y) − C ≤ min_structured cost(Λ)`.
pub fn lcs_alignment_gadget(xs: &[Slp], ys: &[Slp]) -> Result<(Slp, Slp, u64)> {
    let (lx, ax) = common_type(xs, "X")?;
    let (ly, ay) = common_type(ys, "Y")?;
    if ax != ay {
        return Err(Error::TypeMismatch("X and Y pieces use different alphabets".into()));
    }
    if ys.len() > xs.len() {
        return Err(Error::TypeMismatch(format!("m = {} exceeds n = {}", ys.len(), xs.len())));
    }
    let base = ax.size();
    let fresh = fresh_glyphs(&ax, &["σ", "ρ", "μ"]);
    let alphabet = ax.extend(&fresh)?;
    let g = Gadget::new(lx, ly, [base, base + 1, base + 2])?;
    let n = xs.len() as u64;

    let mut bx = SlpBuilder::new();
    let pieces = xs.iter().map(|s| bx.import(s)).collect::<Result<Vec<_>>>()?;
    let root = g.side_x(&mut bx, &pieces)?;
    let x = bx.finish(root, alphabet.clone())?;

    let mut by = SlpBuilder::new();
    let pieces = ys.iter().map(|s| by.import(s)).collect::<Result<Vec<_>>>()?;
    let root = g.side_y(&mut by, &pieces, n)?;
    let y = by.finish(root, alphabet)?;
    Ok((x, y, g.offset(n)?))
}

const SYMS_PER_LEVEL: u32 = 3;

fn level_symbols(level: u32) -> [u32; 3] {
    let b = 2 + SYMS_PER_LEVEL * level;
    [b, b + 1, b + 2]
}

fn pipeline_alphabet() -> Alphabet {
    let mut g = vec!["0".to_string(), "1".to_string()];
    for lvl in 1..=3 {
        g.extend(["s", "r", "m"].iter().map(|c| format!("{c}{lvl}")));
    }
    Alphabet::with_glyphs(&g).expect("static alphabet")
}

/// Tuple-gadget layer of the LCS pipeline, with its constants.
#[derive(Debug, Clone)]
pub struct TupleGadgets {
    /// `TG_X(b)` for every `b` in lex order of `k2`-tuples.
    pub tg_x: Vec<Slp>,
    /// `TG_Y(c)` in the same order.
    pub tg_y: Vec<Slp>,
    pub tg_norm: Slp,
    /// Pieces on each side: `n = d'A^k1`, `m = (d'−1)A^k1 + 1` with `d' = d + 1`.
    pub n: u64,
    pub m: u64,
    pub offset: u64,
    pub delta0: u64,
    pub delta1: u64,
    /// For each `b`, the `k2`-tuple it came from.
    pub picks: Vec<Vec<usize>>,
}

struct Layer {
    tg_x: Vec<NodeId>,
    tg_y: Vec<NodeId>,
    tg_norm: NodeId,
    n: u64,
    m: u64,
    gadget: Gadget,
    picks: Vec<Vec<usize>>,
}

fn coord(bld: &mut SlpBuilder, bits: &str) -> Result<NodeId> {
    let s: Vec<u32> = bits.bytes().map(|b| u32::from(b - b'0')).collect();
    bld.literal(&s)
}

fn augment(vs: &[Vec<bool>], bit: bool) -> Vec<Vec<bool>> {
    vs.iter().map(|v| v.iter().copied().chain([bit]).collect()).collect()
}

fn build_layer(bld: &mut SlpBuilder, inst: &KovInstance, k1: usize, k2: usize) -> Result<Layer> {
    let a0 = augment(&inst.a, false);
    let a1 = augment(&inst.a, true);
    let dd = inst.d + 1;
    let block = pow(inst.a.len() as u64, k1)?;
    let n = (dd as u64).checked_mul(block).ok_or(Error::LengthOverflow)?;
    let m = n - block + 1;
    let gadget = Gadget::new(5, 5, level_symbols(0))?;
    let xs = [coord(bld, COORD_X[0])?, coord(bld, COORD_X[1])?];
    let ys = [coord(bld, COORD_Y[0])?, coord(bld, COORD_Y[1])?];
    let px = [gadget.pad(bld, xs[0])?, gadget.pad(bld, xs[1])?];
    let py = [gadget.pad(bld, ys[0])?, gadget.pad(bld, ys[1])?];

    let picks: Vec<Vec<usize>> = (0..k2).map(|_| 0..inst.a.len()).multi_cartesian_product().collect();
    let mut tg_x = Vec::new();
    let mut tg_y = Vec::new();
    let zeros_y = bld.power_opt(Some(py[0]), block - 1)?;
    for pick in &picks {
        let b = product(&a0, pick, dd);
        let mid = tuplify_in(bld, &a0, k1, &b, px[0], px[1])?;
        tg_x.push(gadget.wrap_x(bld, mid)?);

        let c = product(&a1, pick, dd);
        let mut parts = Vec::new();
        for &bit in &c[..dd - 1] {
            parts.push(Some(py[usize::from(bit)]));
            parts.push(zeros_y);
        }
        parts.push(Some(py[usize::from(c[dd - 1])]));
        let mid = bld.cat_all(parts)?.expect("nonempty");
        tg_y.push(gadget.wrap_y(bld, mid, n)?);
    }
    let zeros = bld.power(px[0], n - block)?;
    let ones = bld.power(px[1], block)?;
    let mid = bld.concat(zeros, ones)?;
    let tg_norm = gadget.wrap_x(bld, mid)?;
    Ok(Layer { tg_x, tg_y, tg_norm, n, m, gadget, picks })
}

fn coord_deltas() -> Result<(u64, u64)> {
    let enc = |s: &str| -> Vec<u32> { s.bytes().map(|b| u32::from(b - b'0')).collect() };
    let d0 = lcs_distance(&enc(COORD_X[0]), &enc(COORD_Y[0]))?;
    let d1 = lcs_distance(&enc(COORD_X[1]), &enc(COORD_Y[1]))?;
    Ok((d0, d1))
}

fn check_split(inst: &KovInstance, k1: usize, k2: usize) -> Result<()> {
    if k1 == 0 || k2 == 0 || k1 + 2 * k2 != inst.k {
        return Err(Error::invalid(format!("need k1, k2 >= 1 with k1 + 2*k2 = {}", inst.k)));
    }
    Ok(())
}

/// The tuple gadgets `TG_X(b)`, `TG_Y(c)`, `TG_norm` and their offset, as standalone SLPs.
pub fn tuple_gadgets(inst: &KovInstance, k1: usize, k2: usize) -> Result<TupleGadgets> {
    check_split(inst, k1, k2)?;
    let mut bld = SlpBuilder::new();
    let layer = build_layer(&mut bld, inst, k1, k2)?;
    let alphabet = pipeline_alphabet();
    let fin = |r: NodeId| bld.finish(r, alphabet.clone());
    let (delta0, delta1) = coord_deltas()?;
    Ok(TupleGadgets {
        tg_x: layer.tg_x.iter().map(|&r| fin(r)).collect::<Result<_>>()?,
        tg_y: layer.tg_y.iter().map(|&r| fin(r)).collect::<Result<_>>()?,
        tg_norm: fin(layer.tg_norm)?,
        n: layer.n,
        m: layer.m,
        offset: layer.gadget.offset(layer.n)?,
        delta0,
        delta1,
        picks: layer.picks,
    })
}

/// k-OV to LCS distance, with `k = k1 + 2·k2`. Yes-instances have `δ(X, Y) ≤ threshold`.
pub fn gen_lcs_from_kov(inst: &KovInstance, k1: usize, k2: usize) -> Result<GeneratedInstance> {
    check_split(inst, k1, k2)?;
    let answer = solve_kov(inst)?;
    let (delta0, delta1) = coord_deltas()?;
    let mut bld = SlpBuilder::new();
    let layer = build_layer(&mut bld, inst, k1, k2)?;
    let c1 = layer.gadget.offset(layer.n)?;

    // normalized tuple gadgets: X side (TG_X(b), TG_norm), Y side (TG_Y(c)) against n = 2
    let lx = bld.len(layer.tg_norm);
    let ly = bld.len(layer.tg_y[0]);
    let g2 = Gadget::new(lx, ly, level_symbols(1))?;
    let c2 = g2.offset(2)?;
    let norm_pad = g2.pad(&mut bld, layer.tg_norm)?;
    let mut ntg_x = Vec::new();
    for &t in &layer.tg_x {
        let p = g2.pad(&mut bld, t)?;
        let mid = bld.concat(p, norm_pad)?;
        ntg_x.push(g2.wrap_x(&mut bld, mid)?);
    }
    let ntg_y = layer.tg_y.iter().map(|&t| g2.side_y(&mut bld, &[t], 2)).collect::<Result<Vec<_>>>()?;

    // final gadget: every NTG_X twice, against every NTG_Y
    let count = layer.picks.len() as u64;
    let g3 = Gadget::new(bld.len(ntg_x[0]), bld.len(ntg_y[0]), level_symbols(2))?;
    let n3 = 2 * count;
    let c3 = g3.offset(n3)?;
    let pads = ntg_x.iter().map(|&t| g3.pad(&mut bld, t)).collect::<Result<Vec<_>>>()?;
    let once = bld.seq(&pads)?;
    let twice = bld.power(once, 2)?;
    let x_root = g3.wrap_x(&mut bld, twice)?;
    let y_root = g3.side_y(&mut bld, &ntg_y, n3)?;

    let alphabet = pipeline_alphabet();
    let x = bld.finish(x_root, alphabet.clone())?;
    let y = bld.finish(y_root, alphabet)?;

    let add = |xs: &[u64]| xs.iter().try_fold(0u64, |a, &b| a.checked_add(b)).ok_or(Error::LengthOverflow);
    let m0 = layer.m;
    let delta_orth = add(&[c2, c1, m0 * delta0])?;
    let delta_non = add(&[c2, c1, (m0 - 1) * delta0, delta1])?;
    let threshold = add(&[c3, (count - 1).checked_mul(delta_non).ok_or(Error::LengthOverflow)?, delta_orth])?;

    let mut out = GeneratedInstance::new(
        "lcs-kov",
        Payload::Lcs { x, y },
        Expected::Threshold { value: threshold, dir: Direction::Le },
        answer,
    );
    out.note("param.k1", k1).note("param.k2", k2).note("param.d", inst.d).note("param.A", inst.a.len());
    out.note("const.gamma", delta1).note("const.delta0", delta0).note("const.delta1", delta1);
    out.note("const.kappa1", layer.gadget.kappa1).note("const.kappa2", layer.gadget.kappa2);
    out.note("const.kappa1_norm", g2.kappa1).note("const.kappa2_norm", g2.kappa2);
    out.note("const.kappa1_final", g3.kappa1).note("const.kappa2_final", g3.kappa2);
    out.note("const.C", c1).note("const.C_norm", c2).note("const.C_final", c3);
    out.note("const.delta_orth", delta_orth).note("const.delta_non", delta_non);
    out.note("const.threshold", threshold);
    Ok(out)
}
