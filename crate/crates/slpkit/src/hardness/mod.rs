//! Reductions from the hard source problems to the compressed-input problems.
//!
//! Each generator takes a small source instance, emits the target instance, and records the
//! brute-force source answer so the pair can be checked end to end.

mod clique;
mod instance;
mod ksum;
mod lcs;
mod ov;
pub mod registry;
mod rna;
mod source;
mod subseq;
mod tuplify;

#[cfg(test)]
mod tests;

pub use clique::{adjacency_slp, gen_cfg_from_clique, gen_nfa_from_clique, inclusion_slp};
pub use instance::{digest, Direction, Expected, GeneratedInstance, Outcome, Payload, Route};
pub use ksum::gen_disjointness_from_ksum;
pub use lcs::{alignment_cost, gen_lcs_from_kov, lcs_alignment_gadget, lcs_distance, tuple_gadgets, TupleGadgets, COORD_X, COORD_Y};
pub use ov::{gadget_distance, gen_dfa_from_ov, gen_hd_from_kov, gen_wildcard_pm_from_kov, pm_to_substring_hd};
pub use registry::{generate, random_source, verify_instance, GenParams, VerifyOutcome, REDUCTIONS};
pub use rna::{gen_rna_from_clique, rna_guard, GuardedText};
pub use source::{solve_clique, solve_kov, solve_ksum, solve_ov, solve_source, Graph, KovInstance, KsumInstance, OvInstance, Source};
pub use subseq::gen_subsequence_from_clique;
pub use tuplify::tuplify;

pub use crate::seqcmp::{disj_to_hamming, disj_to_subsequence};

use crate::slp::Alphabet;

/// `names`, each primed until it clashes neither with `alphabet` nor with an earlier pick.
pub(crate) fn fresh_glyphs(alphabet: &Alphabet, names: &[&str]) -> Vec<String> {
    let mut out: Vec<String> = Vec::with_capacity(names.len());
    for &name in names {
        let mut g = name.to_string();
        while alphabet.symbol_of(&g).is_some() || out.contains(&g) {
            g.push('\'');
        }
        out.push(g);
    }
    out
}
