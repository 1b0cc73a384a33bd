//! Name-based dispatch over the generators, with the decompression cap and verification.

use rand::Rng;

use super::instance::{digest, Expected, GeneratedInstance, Outcome, Route};
use super::source::{Graph, KovInstance, KsumInstance, OvInstance, Source};
use super::{clique, ksum, lcs, ov, rna, subseq};
use crate::error::{Error, Result};

/// Registered reductions and the source kind each consumes.
pub const REDUCTIONS: &[(&str, &str)] = &[
    ("dfa-ov", "ov"),
    ("wildcard-kov", "kov"),
    ("hd-kov", "kov"),
    ("lcs-kov", "kov"),
    ("nfa-clique", "graph"),
    ("cfg-clique", "graph"),
    ("rna-clique", "graph"),
    ("subseq-clique", "graph"),
    ("disj-ksum", "ksum"),
];

/// Default cap on the total decompressed length of a certified instance.
pub const DEFAULT_MAX_DECOMPRESS: u64 = 1 << 24;

#[derive(Debug, Clone)]
pub struct GenParams {
    /// Clique size for graph sources. Defaults to the smallest size the reduction supports.
    pub k: Option<usize>,
    /// Tuple split for the k-OV reductions.
    pub k1: Option<usize>,
    pub k2: Option<usize>,
    pub max_decompress: u64,
    /// Emit instances too large to check on the target side.
    pub uncertified: bool,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams { k: None, k1: None, k2: None, max_decompress: DEFAULT_MAX_DECOMPRESS, uncertified: false }
    }
}

/// Source kind consumed by a registered reduction.
pub fn source_kind(name: &str) -> Result<&'static str> {
    REDUCTIONS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, kind)| *kind)
        .ok_or_else(|| Error::invalid(format!("unknown reduction {name:?}")))
}

/// Smallest clique size each graph reduction supports.
pub fn default_clique_size(name: &str) -> usize {
    match name {
        "nfa-clique" | "subseq-clique" => 4,
        _ => 3,
    }
}

fn kov_split(inst: &KovInstance, p: &GenParams, lcs_style: bool) -> (usize, usize) {
    let k = inst.k;
    match (p.k1, p.k2) {
        (Some(a), Some(b)) => (a, b),
        (Some(a), None) if lcs_style => (a, k.saturating_sub(a) / 2),
        (Some(a), None) => (a, k.saturating_sub(a)),
        (None, Some(b)) if lcs_style => (k.saturating_sub(2 * b), b),
        (None, Some(b)) => (k.saturating_sub(b), b),
        (None, None) if lcs_style => (k.saturating_sub(2), 1),
        (None, None) => (k.saturating_sub(1), 1),
    }
}

fn clique_size(name: &str, p: &GenParams) -> usize {
    p.k.unwrap_or_else(|| default_clique_size(name))
}

fn by_three(name: &str, k: usize) -> Result<usize> {
    if k == 0 || !k.is_multiple_of(3) {
        return Err(Error::invalid(format!("{name} detects cliques of size 3k; {k} is not a positive multiple of 3")));
    }
    Ok(k / 3)
}

fn build(name: &str, source: &Source, p: &GenParams) -> Result<GeneratedInstance> {
    match (name, source) {
        ("dfa-ov", Source::Ov(o)) => ov::gen_dfa_from_ov(o),
        ("wildcard-kov", Source::Kov(o)) => {
            let (a, b) = kov_split(o, p, false);
            ov::gen_wildcard_pm_from_kov(o, a, b)
        }
        ("hd-kov", Source::Kov(o)) => {
            let (a, b) = kov_split(o, p, false);
            ov::gen_hd_from_kov(o, a, b)
        }
        ("lcs-kov", Source::Kov(o)) => {
            let (a, b) = kov_split(o, p, true);
            lcs::gen_lcs_from_kov(o, a, b)
        }
        ("nfa-clique", Source::Graph(g)) => {
            let k = clique_size(name, p);
            if k < 4 {
                return Err(Error::invalid(format!("nfa-clique needs clique size at least 4, got {k}")));
            }
            let small = ((k - 1) / 3).max(1);
            clique::gen_nfa_from_clique(g, small, k - 3 * small)
        }
        ("cfg-clique", Source::Graph(g)) => clique::gen_cfg_from_clique(g, by_three(name, clique_size(name, p))?),
        ("rna-clique", Source::Graph(g)) => rna::gen_rna_from_clique(g, by_three(name, clique_size(name, p))?),
        ("subseq-clique", Source::Graph(g)) => subseq::gen_subsequence_from_clique(g, clique_size(name, p)),
        ("disj-ksum", Source::Ksum(s)) => {
            if s.arity % 2 == 0 {
                return Err(Error::invalid(format!("disj-ksum needs an odd arity of at least 3, got {}", s.arity)));
            }
            ksum::gen_disjointness_from_ksum(s, s.arity / 2)
        }
        _ => Err(Error::invalid(format!(
            "reduction {name} expects a {} source, got {}",
            source_kind(name)?,
            source.kind()
        ))),
    }
}

/// Run the reduction `name` on `source`.
///
/// Instances whose strings exceed `max_decompress` in total are refused unless `uncertified`
/// is set, in which case they are marked `certified=false`.
pub fn generate(name: &str, source: &Source, p: &GenParams) -> Result<GeneratedInstance> {
    source_kind(name)?;
    let mut inst = build(name, source, p)?;
    let len = inst.payload.decompressed_len();
    if len > p.max_decompress {
        if !p.uncertified {
            return Err(Error::TooLarge { len, limit: p.max_decompress });
        }
        inst.note("certified", false);
    }
    inst.note("reduction", name).note("source.kind", source.kind()).note("source.digest", digest(&source.emit()));
    if let (Source::Graph(_), Some(k)) = (source, p.k) {
        inst.note("source.clique", k);
    }
    Ok(inst)
}

/// Result of checking one instance against its expected answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub expected: Option<bool>,
    pub compressed: Option<Outcome>,
    pub decompressed: Option<Outcome>,
}

impl VerifyOutcome {
    /// Every route that ran matches the expected answer, and at least one ran.
    pub fn agree(&self) -> bool {
        let ran: Vec<bool> = [self.compressed, self.decompressed].iter().flatten().map(|o| o.answer).collect();
        !ran.is_empty() && self.expected.is_some_and(|e| ran.iter().all(|&a| a == e))
    }

    pub fn skipped(&self) -> bool {
        self.compressed.is_none() && self.decompressed.is_none()
    }

    /// The answer the target side produced, preferring the compressed route.
    pub fn target(&self) -> Option<bool> {
        self.compressed.or(self.decompressed).map(|o| o.answer)
    }
}

/// Solve the instance along both routes (where they exist and fit the cap).
pub fn verify_instance(inst: &GeneratedInstance, max_decompress: u64) -> Result<VerifyOutcome> {
    let expected = match inst.expected {
        Expected::Accept(b) => Some(b),
        Expected::Threshold { .. } => inst.answer(),
    };
    Ok(VerifyOutcome {
        expected,
        compressed: inst.solve(Route::Compressed, max_decompress)?,
        decompressed: inst.solve(Route::Decompressed, max_decompress)?,
    })
}

fn random_vectors<R: Rng>(rng: &mut R, count: usize, d: usize) -> Vec<Vec<bool>> {
    (0..count).map(|_| (0..d).map(|_| rng.gen_bool(0.5)).collect()).collect()
}

/// A random source of `kind` ("ov", "kov", "graph", "ksum") scaled by `size >= 1`.
pub fn random_source<R: Rng>(kind: &str, size: usize, rng: &mut R) -> Result<Source> {
    let size = size.max(1);
    match kind {
        "ov" => {
            let d = rng.gen_range(1..=size);
            let (a, b) = (random_vectors(rng, size, d), random_vectors(rng, size, d));
            OvInstance::new(d, a, b).map(Source::Ov)
        }
        "kov" => {
            let d = rng.gen_range(1..=size);
            let k = rng.gen_range(2..=3);
            KovInstance::new(d, k, random_vectors(rng, size, d)).map(Source::Kov)
        }
        "graph" => {
            let v = size + 3;
            let pairs = v * (v - 1) / 2;
            let mask = rng.gen_range(0..1u64 << pairs.min(63));
            Ok(Source::Graph(Graph::from_mask(v, mask)))
        }
        "ksum" => {
            let hi = 4 * size as u64;
            let mut values: Vec<u64> = (0..size).map(|_| rng.gen_range(0..=hi)).collect();
            values.sort_unstable();
            values.dedup();
            let target = rng.gen_range(0..=3 * hi);
            KsumInstance::new(values, target, 3).map(Source::Ksum)
        }
        _ => Err(Error::invalid(format!("unknown source kind {kind:?}"))),
    }
}
