use super::instance::{Expected, GeneratedInstance, Payload};
use super::source::{solve_clique, Graph};
use crate::error::{Error, Result};
use crate::slp::{Alphabet, NodeId, SlpBuilder};

/// Clique to subsequence, for even `k >= 4`.
///
/// Every half-clique `C` becomes `(v_1..v_h #)^h` in the pattern and a list of its members'
/// neighborhoods in the text. Between text gadgets sits `$ (L #)^h $`, which absorbs any pattern
/// gadget, but there is one separator too few, so some gadget must land on a neighborhood list.
pub fn gen_subsequence_from_clique(g: &Graph, k: usize) -> Result<GeneratedInstance> {
    if k < 4 || k % 2 == 1 {
        return Err(Error::invalid(format!("clique size must be even and at least 4, got {k}")));
    }
    let half = k / 2;
    let v = g.vertices();
    let halves = g.cliques(half);
    if halves.is_empty() {
        return Err(Error::NoHalfClique(half));
    }
    let answer = solve_clique(g, k)?;
    let q = halves.len() as u64;
    let (hash, dollar) = (v as u32, v as u32 + 1);
    let mut glyphs: Vec<String> = (0..v).map(|u| u.to_string()).collect();
    glyphs.extend(["#".into(), "$".into()]);
    let alphabet = Alphabet::with_glyphs(&glyphs)?;

    let mut bld = SlpBuilder::new();
    let hash_id = bld.terminal(hash);
    let dollar_id = bld.terminal(dollar);
    let vertex: Vec<NodeId> = (0..v as u32).map(|u| bld.terminal(u)).collect();
    let list = |bld: &mut SlpBuilder, vs: &[usize]| -> Result<NodeId> {
        let parts: Vec<NodeId> = vs.iter().map(|&u| vertex[u]).chain([hash_id]).collect();
        bld.seq(&parts)
    };

    let mut row = Vec::new();
    for c in &halves {
        let once = list(&mut bld, c)?;
        row.push(bld.power(once, half as u64)?);
        row.push(dollar_id);
    }
    let row = bld.seq(&row)?;
    let pattern_root = bld.power(row, q)?;

    let all: Vec<usize> = (0..v).collect();
    let all = list(&mut bld, &all)?;
    let absorber = bld.power(all, half as u64)?;
    let mut text = Vec::new();
    for (j, c) in halves.iter().enumerate() {
        let mut parts = Vec::new();
        for &u in c {
            parts.push(list(&mut bld, &g.neighbors(u))?);
        }
        let gadget = bld.seq(&parts)?;
        let block = bld.seq(&[gadget, dollar_id, absorber, dollar_id])?;
        let reps = if j + 1 < halves.len() { q } else { q - 1 };
        if let Some(b) = bld.power_opt(Some(block), reps)? {
            text.push(b);
        }
        if j + 1 == halves.len() {
            text.extend([gadget, dollar_id]);
        }
    }
    let text_root = bld.seq(&text)?;
    let pattern = bld.finish(pattern_root, alphabet.clone())?;
    let text = bld.finish(text_root, alphabet)?;
    let mut out = GeneratedInstance::new("subseq-clique", Payload::Subsequence { text, pattern }, Expected::Accept(answer), answer);
    out.note("param.k", k).note("param.V", v).note("const.halves", q);
    Ok(out)
}
