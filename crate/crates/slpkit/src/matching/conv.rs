use super::{check_symbols, CostFn, MatchResult};
use crate::error::{Error, Result};

// Below this many aligned pairs the direct scan beats the transforms.
const DIRECT_LIMIT: u64 = 1 << 22;
const MAX_LOG: u32 = 23;
const PRIMES: [u64; 3] = [998_244_353, 167_772_161, 469_762_049];
const ROOT: u64 = 3;

/// Exact minimum-cost alignment on plain strings, by one correlation per text symbol.
pub fn gpm_decompressed(text: &[u32], pattern: &[u32], cost: &CostFn) -> Result<MatchResult> {
    let (n, m) = (text.len(), pattern.len());
    if m == 0 {
        return Err(Error::EmptyString);
    }
    if m > n {
        return Err(Error::PatternLongerThanText { pattern: m as u64, text: n as u64 });
    }
    check_symbols(text, cost.text_alphabet())?;
    check_symbols(pattern, cost.pattern_alphabet())?;
    if (m as u128) * (cost.max_cost() as u128) >= 1u128 << 63 {
        return Err(Error::LengthOverflow);
    }
    let totals = if (n as u64 - m as u64 + 1).saturating_mul(m as u64) <= DIRECT_LIMIT || 2 * m > 1 << MAX_LOG {
        direct(text, pattern, cost)
    } else {
        by_transform(text, pattern, cost)
    };
    let mut best = MatchResult { min_cost: u64::MAX, best_offset: 0 };
    for (i, &c) in totals.iter().enumerate() {
        if c < best.min_cost {
            best = MatchResult { min_cost: c, best_offset: i as u64 };
        }
    }
    Ok(best)
}

fn direct(text: &[u32], pattern: &[u32], cost: &CostFn) -> Vec<u64> {
    (0..=text.len() - pattern.len())
        .map(|i| pattern.iter().zip(&text[i..]).map(|(&p, &t)| cost.cost(p, t)).sum())
        .collect()
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn ntt(a: &mut [u64], p: u64, invert: bool) {
    let n = a.len();
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let mut w = pow_mod(ROOT, (p - 1) / len as u64, p);
        if invert {
            w = pow_mod(w, p - 2, p);
        }
        for chunk in a.chunks_mut(len) {
            let (lo, hi) = chunk.split_at_mut(len / 2);
            let mut wn = 1;
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let u = *x;
                let v = *y * wn % p;
                *x = if u + v >= p { u + v - p } else { u + v };
                *y = if u >= v { u - v } else { u + p - v };
                wn = wn * w % p;
            }
        }
        len <<= 1;
    }
    if invert {
        let inv = pow_mod(n as u64, p - 2, p);
        for x in a.iter_mut() {
            *x = *x * inv % p;
        }
    }
}

// Windows of the text, each of transform length L, give L - M + 1 offsets apiece.
// A cyclic convolution of length L >= window length is exact at indices >= M - 1.
fn by_transform(text: &[u32], pattern: &[u32], cost: &CostFn) -> Vec<u64> {
    windowed(text, pattern, cost, 1 << MAX_LOG)
}

fn windowed(text: &[u32], pattern: &[u32], cost: &CostFn, max_len: usize) -> Vec<u64> {
    let (n, m) = (text.len(), pattern.len());
    let offsets = n - m + 1;
    let l = (2 * m).next_power_of_two().max(n.next_power_of_two()).min(max_len);
    let step = l - m + 1;
    let sigma_t = cost.text_alphabet().size();
    let mut present = vec![false; sigma_t as usize];
    for &t in text {
        present[t as usize] = true;
    }
    // per text symbol a: reversed weights w_a[j] = cost(P[j], a)
    let weights: Vec<(u32, Vec<u64>)> = (0..sigma_t)
        .filter(|&a| present[a as usize])
        .map(|a| (a, pattern.iter().rev().map(|&p| cost.cost(p, a)).collect::<Vec<u64>>()))
        .filter(|(_, w)| w.iter().any(|&c| c != 0))
        .collect();
    let mut out = vec![0u64; offsets];
    if weights.is_empty() {
        return out;
    }
    let mut wf: Vec<Vec<Vec<u64>>> = Vec::new();
    for &p in &PRIMES {
        wf.push(
            weights
                .iter()
                .map(|(_, w)| {
                    let mut v = vec![0u64; l];
                    for (x, &c) in v.iter_mut().zip(w) {
                        *x = c % p;
                    }
                    ntt(&mut v, p, false);
                    v
                })
                .collect(),
        );
    }
    let mut start = 0;
    while start < offsets {
        let count = step.min(offsets - start);
        let window = &text[start..(start + count + m - 1).min(n)];
        let mut residues: Vec<Vec<u64>> = Vec::with_capacity(3);
        for (pi, &p) in PRIMES.iter().enumerate() {
            let mut acc = vec![0u64; l];
            for (wi, (a, _)) in weights.iter().enumerate() {
                let mut ind = vec![0u64; l];
                for (x, &t) in ind.iter_mut().zip(window) {
                    *x = u64::from(t == *a);
                }
                ntt(&mut ind, p, false);
                for ((s, &x), &y) in acc.iter_mut().zip(&ind).zip(&wf[pi][wi]) {
                    *s = (*s + x * y) % p;
                }
            }
            ntt(&mut acc, p, true);
            residues.push(acc);
        }
        for k in 0..count {
            let idx = k + m - 1;
            out[start + k] = crt([residues[0][idx], residues[1][idx], residues[2][idx]]);
        }
        start += count;
    }
    out
}

// Garner reconstruction; the true value is below 2^63 < p0·p1·p2.
fn crt(r: [u64; 3]) -> u64 {
    let [p0, p1, p2] = PRIMES;
    let inv01 = pow_mod(p0 % p1, p1 - 2, p1);
    let x1 = (r[1] + p1 - r[0] % p1) % p1 * inv01 % p1;
    let v01 = r[0] as u128 + p0 as u128 * x1 as u128;
    let m01 = (p0 as u128 * p1 as u128 % p2 as u128) as u64;
    let inv = pow_mod(m01, p2 - 2, p2);
    let x2 = (r[2] as u128 + p2 as u128 - v01 % p2 as u128) % p2 as u128;
    let x2 = (x2 as u64) * inv % p2;
    (v01 + p0 as u128 * p1 as u128 * x2 as u128) as u64
}
