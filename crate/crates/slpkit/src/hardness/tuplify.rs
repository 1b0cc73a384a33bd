use super::source::{pow, KovInstance};
use crate::error::{Error, Result};
use crate::slp::{NodeId, Slp, SlpBuilder};

/// Builder-level tuplify over `vectors` with tuple arity `k`.
///
/// Produces, stripe by stripe over the coordinates `l`, one block per k-tuple in lex order:
/// `zero` when `b[l]` times the tuple's product at `l` is 0, else `one`. A zero factor at
/// depth `j` of the tuple emits the whole remaining `A^(k-j)` run of `zero` as one power.
pub(crate) fn tuplify_in(
    bld: &mut SlpBuilder,
    vectors: &[Vec<bool>],
    k: usize,
    b: &[bool],
    zero: NodeId,
    one: NodeId,
) -> Result<NodeId> {
    if k == 0 {
        return Err(Error::invalid("tuple arity k must be at least 1"));
    }
    if vectors.is_empty() || b.is_empty() {
        return Err(Error::EmptyString);
    }
    let d = b.len();
    if vectors.iter().any(|v| v.len() != d) {
        return Err(Error::invalid("vector and selector dimensions differ"));
    }
    if bld.len(zero) != bld.len(one) {
        return Err(Error::UnequalLength(bld.len(zero), bld.len(one)));
    }
    let a = vectors.len() as u64;
    // zero_pow[j] = zero^(A^j)
    let mut zero_pow = vec![zero];
    for j in 1..=k {
        let p = bld.power(zero_pow[j - 1], a)?;
        zero_pow.push(p);
    }
    let mut stripes = Vec::with_capacity(d);
    for (l, &bl) in b.iter().enumerate() {
        if !bl {
            stripes.push(zero_pow[k]);
            continue;
        }
        // list[j] covers the last k-j+1 tuple positions, built innermost first
        let mut list = one;
        for j in (1..=k).rev() {
            let parts: Vec<NodeId> =
                vectors.iter().map(|v| if v[l] { list } else { zero_pow[k - j] }).collect();
            list = bld.seq(&parts)?;
        }
        stripes.push(list);
    }
    bld.seq(&stripes)
}

/// Tuplified representation of `inst` under selector `b`, with `s0`/`s1` as the 0/1 blocks.
pub fn tuplify(inst: &KovInstance, b: &[bool], s0: &Slp, s1: &Slp) -> Result<Slp> {
    if s0.alphabet() != s1.alphabet() {
        return Err(Error::AlphabetMismatch("the two block SLPs use different alphabets".into()));
    }
    if b.len() != inst.d {
        return Err(Error::invalid(format!("selector has length {}, dimension is {}", b.len(), inst.d)));
    }
    let total = pow(inst.a.len() as u64, inst.k)?
        .checked_mul(inst.d as u64)
        .and_then(|x| x.checked_mul(s0.len()))
        .ok_or(Error::LengthOverflow)?;
    if total > crate::slp::MAX_LEN {
        return Err(Error::LengthOverflow);
    }
    let mut bld = SlpBuilder::new();
    let zero = bld.import(s0)?;
    let one = bld.import(s1)?;
    let root = tuplify_in(&mut bld, &inst.a, inst.k, b, zero, one)?;
    bld.finish(root, s0.alphabet().clone())
}
