use super::instance::{Expected, GeneratedInstance, Payload};
use super::source::{pow, solve_ksum, KsumInstance};
use crate::error::{Error, Result};
use crate::slp::{Alphabet, NodeId, SlpBuilder};

/// One level of the shifted-block recursion:
/// `⃝_{w<r} (0^{s_w} prev 0^{span - s_w - |prev|}) ∘ 0^{s_r} prev`.
fn shift_level(bld: &mut SlpBuilder, prev: NodeId, span: u64, shifts: &[u64]) -> Result<NodeId> {
    let plen = bld.len(prev);
    let mut parts = Vec::new();
    for (w, &s) in shifts.iter().enumerate() {
        parts.push(bld.run(0, s)?);
        parts.push(Some(prev));
        if w + 1 < shifts.len() {
            let rest = span.checked_sub(s + plen).ok_or_else(|| Error::invalid("shifted block overflows its span"))?;
            parts.push(bld.run(0, rest)?);
        }
    }
    Ok(bld.cat_all(parts)?.expect("contains prev"))
}

/// `(2k+1)`-SUM to disjointness.
///
/// Values and target are first scaled by `k(k+1)`, so the shifted sets
/// `{t/k + R - a}` (pattern side, `k` summands) and `{Rk/(k+1) + a}` (text side, `k+1` summands)
/// are integral. The strings share a one-position iff some `k` pattern values sum to the same
/// total as some `k+1` text values.
pub fn gen_disjointness_from_ksum(inst: &KsumInstance, k: usize) -> Result<GeneratedInstance> {
    if k == 0 || inst.arity != 2 * k + 1 {
        return Err(Error::invalid(format!("arity {} is not 2k+1 for k = {k}", inst.arity)));
    }
    let answer = solve_ksum(inst)?;
    let scale = (k * (k + 1)) as u64;
    let mul = |x: u64| x.checked_mul(scale).ok_or(Error::LengthOverflow);
    let values: Vec<u64> = inst.values.iter().map(|&a| mul(a)).collect::<Result<_>>()?;
    let (t, r_bound) = (mul(inst.target)?, mul(inst.bound())?);
    let kk = k as u64;
    let pat_shifts: Vec<u64> = values.iter().map(|&a| t / kk + r_bound - a).collect();
    let text_shifts: Vec<u64> = values.iter().map(|&a| r_bound * kk / (kk + 1) + a).collect();
    let top = pat_shifts.iter().chain(&text_shifts).copied().max().expect("nonempty");
    let block = (2 * r_bound).max(10 * kk * top + 1);
    let r = values.len() as u64;
    let rk = pow(r, k)?;
    let total = block.checked_mul(rk).and_then(|x| x.checked_mul(rk)).ok_or(Error::LengthOverflow)?;
    if total > crate::slp::MAX_LEN {
        return Err(Error::LengthOverflow);
    }

    let mut bld = SlpBuilder::new();
    let one = bld.terminal(1);

    // pattern: one 1 per k-tuple at offset Σb inside its block, the whole row repeated r^k times
    let mut s = one;
    let mut span = block;
    for _ in 0..k {
        s = shift_level(&mut bld, s, span, &pat_shifts)?;
        span *= r;
    }
    let fill = bld.run(0, span - bld.len(s))?;
    let row = bld.cat(Some(s), fill)?.expect("nonempty");
    let pattern_root = bld.power(row, rk)?;

    // text: block W marks every single text value; each k-tuple shifts W and repeats it r^k times
    let mut marks = vec![0u32; *text_shifts.iter().max().expect("nonempty") as usize + 1];
    for &c in &text_shifts {
        marks[c as usize] = 1;
    }
    let head = bld.literal(&marks)?;
    let gap = bld.run(0, block - marks.len() as u64)?;
    let w = bld.cat(Some(head), gap)?.expect("nonempty");
    let lead = bld.power_opt(Some(w), rk - 1)?;
    let mut y = bld.cat(lead, Some(head))?.expect("nonempty");
    let mut span = block * rk;
    for _ in 0..k {
        y = shift_level(&mut bld, y, span, &text_shifts)?;
        span *= r;
    }
    let fill = bld.run(0, span - bld.len(y))?;
    let text_root = bld.cat(Some(y), fill)?.expect("nonempty");

    let pattern = bld.finish(pattern_root, Alphabet::binary())?;
    let text = bld.finish(text_root, Alphabet::binary())?;
    let mut out = GeneratedInstance::new("disj-ksum", Payload::Intersect { text, pattern }, Expected::Accept(answer), answer);
    out.note("param.k", k).note("param.r", r).note("param.target", inst.target);
    out.note("const.scale", scale).note("const.block", block).note("const.bound", r_bound);
    Ok(out)
}
