use itertools::Itertools;

use super::instance::{Direction, Expected, GeneratedInstance, Payload};
use super::source::{pow, product, solve_kov, solve_ov, KovInstance, OvInstance};
use super::tuplify::tuplify_in;
use crate::automata::{Automaton, Dfa};
use crate::error::{Error, Result};
use crate::slp::{Alphabet, Slp, SlpBuilder};

const ZERO: u32 = 0;
const ONE: u32 = 1;
const HASH: u32 = 2;
const BANG: u32 = 3;

/// OV to DFA acceptance: the text lists every vector of `A` once per vector of `B`,
/// and group `j` of the automaton tests each listed vector against `b_j`.
pub fn gen_dfa_from_ov(inst: &OvInstance) -> Result<GeneratedInstance> {
    let answer = solve_ov(inst)?;
    let d = inst.d as u32;
    let groups = inst.b.len() as u32;
    let alphabet = Alphabet::from_chars("01#!")?;

    let mut bld = SlpBuilder::new();
    let mut parts = vec![bld.terminal(BANG)];
    for a in &inst.a {
        parts.push(bld.terminal(HASH));
        parts.extend(a.iter().map(|&x| bld.terminal(if x { ONE } else { ZERO })));
    }
    let group = bld.seq(&parts)?;
    let root = bld.power(group, groups as u64)?;
    let text = bld.finish(root, alphabet)?;

    // g_0..g_B, then per group j (1-based): z_j^(0..d) and fail_j
    let g = |j: u32| j;
    let z = |j: u32, k: u32| groups + 1 + (j - 1) * (d + 2) + k;
    let fail = |j: u32| z(j, d + 1);
    let q = groups + 1 + groups * (d + 2);
    let mut moves = vec![(g(0), BANG, g(1))];
    let mut accepting = Vec::new();
    for (j, b) in (1..=groups).zip(&inst.b) {
        moves.push((g(j), HASH, z(j, 0)));
        for k in 1..=d {
            moves.push((z(j, k - 1), ZERO, z(j, k)));
            let on_one = if b[k as usize - 1] { fail(j) } else { z(j, k) };
            moves.push((z(j, k - 1), ONE, on_one));
        }
        for s in [ZERO, ONE, HASH, BANG] {
            moves.push((z(j, d), s, z(j, d)));
        }
        accepting.push(z(j, d));
        moves.push((fail(j), ZERO, fail(j)));
        moves.push((fail(j), ONE, fail(j)));
        moves.push((fail(j), HASH, z(j, 0)));
        if j < groups {
            moves.push((fail(j), BANG, g(j + 1)));
        }
    }
    let dfa = Dfa::new(q, 4, g(0), &accepting, &moves)?;
    let mut out = GeneratedInstance::new(
        "dfa-ov",
        Payload::Automaton { text, automaton: Automaton::Dfa(dfa) },
        Expected::Accept(answer),
        answer,
    );
    out.note("param.d", inst.d).note("param.A", inst.a.len()).note("param.B", inst.b.len());
    Ok(out)
}

/// `0 (*^(A^k1 - 1) 0)^(d-1)` over `{0, 1, *}`.
fn stripe_pattern(d: usize, block: u64) -> Result<Slp> {
    let alphabet = Alphabet::from_chars("01*")?;
    let mut bld = SlpBuilder::new();
    let zero = bld.terminal(0);
    let gap = bld.run(2, block - 1)?;
    let step = bld.cat(gap, Some(zero))?.expect("nonempty");
    let tail = bld.power_opt(Some(step), d as u64 - 1)?;
    let root = bld.cat(Some(zero), tail)?.expect("nonempty");
    bld.finish(root, alphabet)
}

/// k-OV to wildcard pattern matching, splitting the tuple arity as `k1 + k2`.
///
/// The text holds, for each `k2`-tuple, a run of `A^k1` ones followed by the tuplified
/// representation of the `k1`-tuples under the `k2`-tuple's product; the pattern probes one
/// offset in every stripe.
pub fn gen_wildcard_pm_from_kov(inst: &KovInstance, k1: usize, k2: usize) -> Result<GeneratedInstance> {
    if k1 == 0 || k2 == 0 || k1 + k2 != inst.k {
        return Err(Error::invalid(format!("need k1, k2 >= 1 with k1 + k2 = {}", inst.k)));
    }
    let answer = solve_kov(inst)?;
    let block = pow(inst.a.len() as u64, k1)?;
    let mut bld = SlpBuilder::new();
    let zero = bld.terminal(0);
    let one = bld.terminal(1);
    let ones = bld.power(one, block)?;
    let mut parts = Vec::new();
    for pick in (0..k2).map(|_| 0..inst.a.len()).multi_cartesian_product() {
        let sel = product(&inst.a, &pick, inst.d);
        parts.push(ones);
        parts.push(tuplify_in(&mut bld, &inst.a, k1, &sel, zero, one)?);
    }
    let root = bld.seq(&parts)?;
    let text = bld.finish(root, Alphabet::binary())?;
    let pattern = stripe_pattern(inst.d, block)?;
    let mut out = GeneratedInstance::new("wildcard-kov", Payload::Wildcard { text, pattern }, Expected::Accept(answer), answer);
    out.note("param.k1", k1).note("param.k2", k2).note("param.d", inst.d).note("param.A", inst.a.len());
    Ok(out)
}

const TEXT_GADGET: [&str; 2] = ["100", "010"];
const PATTERN_GADGET: [&str; 3] = ["101", "011", "000"];
const GUARD: &str = "234";

fn gadget(bits: &str) -> Vec<u32> {
    bits.chars().chain(GUARD.chars()).map(|c| c.to_digit(10).expect("digit")).collect()
}

fn text_image(glyph: &str) -> Result<Vec<u32>> {
    match glyph {
        "0" => Ok(gadget(TEXT_GADGET[0])),
        "1" => Ok(gadget(TEXT_GADGET[1])),
        g => Err(Error::AlphabetMismatch(format!("text symbol {g:?} is not binary"))),
    }
}

fn pattern_image(glyph: &str) -> Result<Vec<u32>> {
    match glyph {
        "0" => Ok(gadget(PATTERN_GADGET[0])),
        "1" => Ok(gadget(PATTERN_GADGET[1])),
        "*" => Ok(gadget(PATTERN_GADGET[2])),
        g => Err(Error::AlphabetMismatch(format!("pattern symbol {g:?} is not 0, 1, or *"))),
    }
}

/// Hamming distance between the pattern gadget of `pattern_glyph` and the text gadget of `text_glyph`.
pub fn gadget_distance(pattern_glyph: &str, text_glyph: &str) -> Result<u64> {
    let (p, t) = (pattern_image(pattern_glyph)?, text_image(text_glyph)?);
    Ok(p.iter().zip(&t).filter(|(a, b)| a != b).count() as u64)
}

/// Wildcard matching to substring Hamming distance. Each symbol becomes a three-bit code
/// followed by the guard `234`; the pattern matches iff the distance is exactly its length.
pub fn pm_to_substring_hd(text: &Slp, pattern: &Slp) -> Result<GeneratedInstance> {
    let out_alpha = Alphabet::from_chars("01234")?;
    let images = |s: &Slp, f: fn(&str) -> Result<Vec<u32>>| -> Result<Vec<Vec<u32>>> {
        (0..s.alphabet().size()).map(|a| f(&s.alphabet().glyph(a))).collect()
    };
    let t2 = text.substitute(&images(text, text_image)?, out_alpha.clone())?;
    let p2 = pattern.substitute(&images(pattern, pattern_image)?, out_alpha)?;
    let m = pattern.len();
    let answer = crate::matching::wildcard_match(text, pattern)?;
    let mut out = GeneratedInstance::new(
        "pm-hd",
        Payload::SubstringHd { text: t2, pattern: p2 },
        Expected::Threshold { value: m, dir: Direction::Le },
        answer,
    );
    out.note("answer_from", "wildcard_match");
    Ok(out)
}

/// k-OV through wildcard matching to substring Hamming distance.
pub fn gen_hd_from_kov(inst: &KovInstance, k1: usize, k2: usize) -> Result<GeneratedInstance> {
    let pm = gen_wildcard_pm_from_kov(inst, k1, k2)?;
    let Payload::Wildcard { text, pattern } = &pm.payload else { unreachable!("wildcard payload") };
    let mut out = pm_to_substring_hd(text, pattern)?;
    let answer = pm.answer().expect("accept task");
    out.provenance.remove("answer_from");
    for (k, v) in pm.provenance.iter().filter(|(k, _)| k.starts_with("param.")) {
        out.provenance.insert(k.clone(), v.clone());
    }
    out.note("reduction", "hd-kov").note("answer", answer);
    Ok(out)
}
