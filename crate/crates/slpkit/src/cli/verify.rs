use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::solve::io;
use super::{pool, read_file, GenArgs, Global, SourceArgs, VerifyArgs};
use crate::error::{Error, Result};
use crate::hardness::registry::{default_clique_size, source_kind, VerifyOutcome};
use crate::hardness::{generate, random_source, solve_source, GenParams, GeneratedInstance, Outcome, Route, Source};

fn params(g: &Global, s: &SourceArgs) -> GenParams {
    GenParams { k: s.k, k1: s.k1, k2: s.k2, max_decompress: g.max_decompress, uncertified: g.uncertified }
}

/// Sources for `reduction`: the given files, or `--random N` draws from the seeded generator.
fn sources(g: &Global, reduction: &str, files: &[PathBuf], s: &SourceArgs) -> Result<Vec<Source>> {
    let kind = source_kind(reduction)?;
    match (s.random, files.is_empty()) {
        (Some(_), false) => Err(Error::invalid("give source files or --random, not both")),
        (Some(count), true) => {
            let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
            (0..count).map(|_| random_source(kind, s.size, &mut rng)).collect()
        }
        (None, true) => Err(Error::invalid("no source files (use --random N to draw sources)")),
        (None, false) => files.iter().map(|f| Source::parse(&read_file(f)?)).collect(),
    }
}

pub(super) fn gen(g: &Global, a: &GenArgs, out: &mut dyn Write) -> Result<()> {
    let files: Vec<PathBuf> = a.source.iter().cloned().collect();
    let srcs = sources(g, &a.reduction, &files, &a.src)?;
    let p = params(g, &a.src);
    let many = srcs.len() > 1;
    for (i, s) in srcs.iter().enumerate() {
        let inst = generate(&a.reduction, s, &p)?;
        let dir = if many { a.out.join(format!("{i:04}")) } else { a.out.clone() };
        inst.write_bundle(&dir)?;
        writeln!(out, "{}", dir.display()).map_err(io)?;
    }
    Ok(())
}

/// One CSV report line.
#[derive(Debug, Clone)]
struct Row {
    id: usize,
    reduction: String,
    source: Option<bool>,
    target: Option<bool>,
    agree: bool,
    sizes: [Option<u64>; 6],
    times: [f64; 3],
}

const SIZE_KEYS: [&str; 6] = ["n", "N", "m", "M", "q", "grammar"];

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(String::new, |v| v.to_string())
}

impl Row {
    fn fields(&self, timings: bool) -> Vec<String> {
        let mut f = vec![self.id.to_string(), self.reduction.clone(), opt(self.source), opt(self.target), self.agree.to_string()];
        f.extend(self.sizes.iter().map(|s| opt(*s)));
        if timings {
            f.extend(self.times.iter().map(|t| format!("{t:.6}")));
        }
        f
    }
}

fn header(timings: bool) -> Vec<&'static str> {
    let mut h = vec!["id", "reduction", "source_answer", "target_answer", "agree"];
    h.extend(SIZE_KEYS);
    if timings {
        h.extend(["t_generate", "t_compressed", "t_oracle"]);
    }
    h
}

fn check(id: usize, inst: &GeneratedInstance, t_gen: f64, cap: u64) -> Result<Row> {
    let timed = |route| -> Result<(Option<Outcome>, f64)> {
        let t = Instant::now();
        let r = inst.solve(route, cap)?;
        Ok((r, t.elapsed().as_secs_f64()))
    };
    let (compressed, t_c) = timed(Route::Compressed)?;
    let (decompressed, t_d) = timed(Route::Decompressed)?;
    let o = VerifyOutcome { expected: inst.answer(), compressed, decompressed };
    let sizes = inst.payload.sizes();
    Ok(Row {
        id,
        reduction: inst.reduction().to_string(),
        source: o.expected,
        target: o.target(),
        agree: o.agree(),
        sizes: SIZE_KEYS.map(|k| sizes.get(k).copied()),
        times: [t_gen, t_c, t_d],
    })
}

enum Case {
    Source(Source),
    Bundle(PathBuf),
}

fn run_case(id: usize, case: &Case, reduction: &str, p: &GenParams) -> Result<Row> {
    let t = Instant::now();
    let inst = match case {
        Case::Bundle(dir) => GeneratedInstance::read_bundle(dir)?,
        Case::Source(s) => match generate(reduction, s, p) {
            Ok(inst) => inst,
            // no half-size clique to enumerate: degenerate instance whose answer is "no"
            Err(Error::NoHalfClique(_)) => {
                let answer = solve_source(s, Some(p.k.unwrap_or_else(|| default_clique_size(reduction))))?;
                return Ok(Row {
                    id,
                    reduction: reduction.to_string(),
                    source: Some(answer),
                    target: Some(false),
                    agree: !answer,
                    sizes: [None; 6],
                    times: [t.elapsed().as_secs_f64(), 0.0, 0.0],
                });
            }
            Err(e) => return Err(e),
        },
    };
    check(id, &inst, t.elapsed().as_secs_f64(), p.max_decompress)
}

/// Run every case in the pool, then stream the report in id order. Returns the exit code.
pub(super) fn cmd(g: &Global, a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let cases: Vec<Case> = match &a.reduction {
        Some(r) => sources(g, r, &a.inputs, &a.src)?.into_iter().map(Case::Source).collect(),
        None => {
            if a.inputs.is_empty() {
                return Err(Error::invalid("no bundle directories given (or pass --reduction)"));
            }
            a.inputs.iter().map(|d| bundle_dir(d)).collect::<Result<Vec<_>>>()?.into_iter().flatten().map(Case::Bundle).collect()
        }
    };
    let reduction = a.reduction.clone().unwrap_or_default();
    let p = params(g, &a.src);
    let rows: Vec<Result<Row>> =
        pool(g.jobs)?.install(|| cases.par_iter().enumerate().map(|(i, c)| run_case(i, c, &reduction, &p)).collect());
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::invalid(e.to_string());
    w.write_record(header(a.timings)).map_err(csv_err)?;
    let mut all_agree = true;
    for row in rows {
        let row = row?;
        all_agree &= row.agree;
        w.write_record(row.fields(a.timings)).map_err(csv_err)?;
    }
    out.write_all(&w.into_inner().map_err(|e| Error::invalid(e.to_string()))?).map_err(io)?;
    Ok(if all_agree { 0 } else { 1 })
}

/// A bundle directory, or a directory of bundles (sorted by name).
fn bundle_dir(dir: &Path) -> Result<Vec<PathBuf>> {
    if dir.join("provenance.txt").is_file() {
        return Ok(vec![dir.to_path_buf()]);
    }
    let ioe = |e: std::io::Error| Error::Io { path: dir.display().to_string(), msg: e.to_string() };
    let mut subs: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(ioe)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.join("provenance.txt").is_file())
        .collect();
    if subs.is_empty() {
        return Err(Error::invalid(format!("{} is not a bundle directory", dir.display())));
    }
    subs.sort();
    Ok(subs)
}
