use std::io::Write;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::solve::io;
use super::{read_file, BenchArgs, Global};
use crate::automata::{dfa_accept, nfa_accept, Dfa, Nfa};
use crate::error::{Error, Result};
use crate::hardness::registry::source_kind;
use crate::hardness::{generate, random_source, GenParams, Route};
use crate::matching::{gpm_compressed, gpm_decompressed, CostFn};
use crate::seqcmp::{disjointness, hamming_recursive, subsequence_avl, subsequence_scan};
use crate::slp::{Alphabet, Slp, SlpBuilder};

pub const HEADER: [&str; 7] = ["case", "n", "N", "t_compressed", "t_decompress_solve", "answer_compressed", "answer_decompressed"];

const TEXT_ALGORITHMS: [&str; 6] = ["dfa-accept", "nfa-accept", "gpm", "hamming", "subsequence", "disjointness"];

/// `(01)^(2^(scale-1))`, so `N = 2^scale`.
fn repeat_text(scale: u32) -> Result<Slp> {
    if scale == 0 || scale > 62 {
        return Err(Error::invalid(format!("repeat scale must be in 1..=62, got {scale}")));
    }
    Slp::from_str_in("01", Alphabet::binary())?.repeat(1 << (scale - 1))
}

/// Fibonacci word number `scale`: `w1 = 0`, `w2 = 01`, `w(i) = w(i-1) w(i-2)`.
fn fibonacci_text(scale: u32) -> Result<Slp> {
    if scale == 0 || scale > 90 {
        return Err(Error::invalid(format!("fibonacci scale must be in 1..=90, got {scale}")));
    }
    let mut b = SlpBuilder::new();
    let (zero, one) = (b.terminal(0), b.terminal(1));
    let (mut prev, mut cur) = (zero, b.concat(zero, one)?);
    if scale == 1 {
        cur = zero;
    }
    for _ in 2..scale {
        let next = b.concat(cur, prev)?;
        prev = cur;
        cur = next;
    }
    b.finish(cur, Alphabet::binary())
}

/// Accepts iff the number of 1s is divisible by 8.
fn count_dfa() -> Result<Dfa> {
    let moves: Vec<(u32, u32, u32)> = (0..8).flat_map(|s| [(s, 0, s), (s, 1, (s + 1) % 8)]).collect();
    Dfa::new(8, 2, 0, &[0], &moves)
}

/// Accepts iff the seventh symbol from the end is 1.
fn suffix_nfa() -> Result<Nfa> {
    let mut moves = vec![(0, 0, 0), (0, 1, 0), (0, 1, 1)];
    for s in 1..7 {
        moves.extend([(s, 0, s + 1), (s, 1, s + 1)]);
    }
    Nfa::new(8, 2, 0, &[7], &moves)
}

fn swapped(s: &Slp) -> Result<Slp> {
    s.substitute(&[vec![1], vec![0]], Alphabet::binary())
}

fn ans(b: bool) -> String {
    if b { "accept" } else { "reject" }.to_string()
}

type Run<'a> = Box<dyn Fn() -> Result<String> + 'a>;

struct Work<'a> {
    n: u64,
    big_n: u64,
    /// Total length the decompressing route must materialize.
    footprint: u64,
    compressed: Option<Run<'a>>,
    decompressed: Run<'a>,
}

fn text_work<'a>(algorithm: &str, text: &'a Slp, cap: u64) -> Result<Work<'a>> {
    let (n, big_n) = (text.rule_count() as u64, text.len());
    let plain = move || text.eval(cap);
    let (compressed, decompressed, footprint): (Run<'a>, Run<'a>, u64) = match algorithm {
        "dfa-accept" => {
            let d = count_dfa()?;
            let d2 = d.clone();
            (Box::new(move || dfa_accept(text, &d).map(ans)), Box::new(move || d2.accepts(&plain()?).map(ans)), big_n)
        }
        "nfa-accept" => {
            let a = suffix_nfa()?;
            let a2 = a.clone();
            (Box::new(move || nfa_accept(text, &a).map(ans)), Box::new(move || a2.accepts(&plain()?).map(ans)), big_n)
        }
        "gpm" => {
            let cost = CostFn::hamming(&Alphabet::binary(), &Alphabet::binary());
            let c2 = cost.clone();
            let p = vec![0, 1, 1, 0];
            let p2 = p.clone();
            (
                Box::new(move || gpm_compressed(text, &p, &cost).map(|r| r.min_cost.to_string())),
                Box::new(move || gpm_decompressed(&plain()?, &p2, &c2).map(|r| r.min_cost.to_string())),
                big_n,
            )
        }
        "hamming" => {
            let y = swapped(text)?;
            let y2 = y.clone();
            (
                Box::new(move || hamming_recursive(text, &y).map(|d| d.to_string())),
                Box::new(move || {
                    let (a, b) = (plain()?, y2.eval(cap)?);
                    Ok(a.iter().zip(&b).filter(|(x, y)| x != y).count().to_string())
                }),
                2 * big_n,
            )
        }
        "subsequence" => {
            let p: Vec<u32> = [1, 0].repeat(4);
            let p2 = p.clone();
            (Box::new(move || subsequence_avl(text, &p).map(ans)), Box::new(move || Ok(ans(subsequence_scan(&plain()?, &p2)))), big_n)
        }
        "disjointness" => {
            let y = swapped(text)?;
            let y2 = y.clone();
            (
                Box::new(move || disjointness(&y, text).map(ans)),
                Box::new(move || {
                    let (a, b) = (y2.eval(cap)?, plain()?);
                    Ok(ans(!a.iter().zip(&b).any(|(&x, &y)| x == 1 && y == 1)))
                }),
                2 * big_n,
            )
        }
        _ => {
            return Err(Error::invalid(format!("unknown bench algorithm {algorithm:?}; known: {}", TEXT_ALGORITHMS.join(", "))))
        }
    };
    Ok(Work { n, big_n, footprint, compressed: Some(compressed), decompressed })
}

/// Median wall-clock seconds of three runs, with the last answer.
fn median3(f: &Run<'_>) -> Result<(f64, String)> {
    let mut times = Vec::with_capacity(3);
    let mut answer = String::new();
    for _ in 0..3 {
        let t = Instant::now();
        answer = f()?;
        times.push(t.elapsed().as_secs_f64());
    }
    times.sort_by(f64::total_cmp);
    Ok((times[1], answer))
}

fn row(case: String, w: &Work<'_>, cap: u64) -> Result<[String; 7]> {
    let (tc, ac) = match &w.compressed {
        Some(f) => {
            let (t, a) = median3(f)?;
            (format!("{t:.6}"), a)
        }
        None => ("n/a".into(), String::new()),
    };
    let (td, ad) = if w.footprint > cap {
        ("infeasible".into(), String::new())
    } else {
        let (t, a) = median3(&w.decompressed)?;
        (format!("{t:.6}"), a)
    };
    if !ac.is_empty() && !ad.is_empty() && ac != ad {
        return Err(Error::invalid(format!("{case}: compressed answer {ac} differs from decompressed {ad}")));
    }
    Ok([case, w.n.to_string(), w.big_n.to_string(), tc, td, ac, ad])
}

fn reduction_row(name: &str, scale: u32, line: usize, seed: u64, cap: u64) -> Result<[String; 7]> {
    let kind = source_kind(name)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(line as u64));
    let source = random_source(kind, scale as usize, &mut rng)?;
    let inst = generate(name, &source, &GenParams { max_decompress: cap, uncertified: true, ..GenParams::default() })?;
    let sizes = inst.payload.sizes();
    let outcome = |route| -> Result<String> {
        Ok(inst.solve(route, u64::MAX)?.map(|o| o.value.map_or_else(|| ans(o.answer), |v| v.to_string())).unwrap_or_default())
    };
    let compressed: Option<Run<'_>> =
        inst.payload.has_compressed_route().then(|| Box::new(move || outcome(Route::Compressed)) as Run<'_>);
    let w = Work {
        n: sizes.get("n").copied().unwrap_or(0),
        big_n: sizes.get("N").copied().unwrap_or(0),
        footprint: inst.payload.decompressed_len(),
        compressed,
        decompressed: Box::new(move || outcome(Route::Decompressed)),
    };
    row(format!("{name}/{scale}"), &w, cap)
}

/// Run a suite of `generator scale algorithm` lines (`#` starts a comment) into a CSV table.
///
/// Generators: `repeat` (`N = 2^scale`), `fibonacci` (word number `scale`), and `reduction:<name>`
/// (a random source of that size; the algorithm column must be `target`).
pub fn run_suite(suite: &str, seed: u64, max_decompress: u64) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::invalid(e.to_string());
    w.write_record(HEADER).map_err(csv_err)?;
    for (i, raw) in suite.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        let [gen, scale, algorithm] = f.as_slice() else {
            return Err(Error::parse(ln, "expected `generator scale algorithm`"));
        };
        let scale: u32 = scale.parse().map_err(|_| Error::parse(ln, format!("bad scale {scale:?}")))?;
        let record = if let Some(name) = gen.strip_prefix("reduction:") {
            if *algorithm != "target" {
                return Err(Error::parse(ln, "reduction rows take the algorithm `target`"));
            }
            reduction_row(name, scale, ln, seed, max_decompress)?
        } else {
            let text = match *gen {
                "repeat" => repeat_text(scale)?,
                "fibonacci" => fibonacci_text(scale)?,
                _ => return Err(Error::parse(ln, format!("unknown generator {gen:?}"))),
            };
            let work = text_work(algorithm, &text, max_decompress).map_err(|e| match e {
                Error::Invalid(m) => Error::parse(ln, m),
                e => e,
            })?;
            row(format!("{gen}/{scale}/{algorithm}"), &work, max_decompress)?
        };
        w.write_record(record).map_err(csv_err)?;
    }
    String::from_utf8(w.into_inner().map_err(|e| Error::invalid(e.to_string()))?).map_err(|e| Error::invalid(e.to_string()))
}

pub(super) fn cmd(g: &Global, a: &BenchArgs, out: &mut dyn Write) -> Result<()> {
    let table = run_suite(&read_file(&a.suite)?, g.seed, g.max_decompress)?;
    out.write_all(table.as_bytes()).map_err(io)
}
