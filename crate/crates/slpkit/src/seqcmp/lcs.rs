use std::collections::HashMap;

use crate::error::{Error, Result};

/// Largest |X|·|Y| the table fill accepts.
pub const LCS_CELL_CAP: u64 = 1 << 38;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LcsReport {
    /// Length of a longest common subsequence.
    pub lcs: u64,
    /// |X| + |Y| − 2·lcs.
    pub delta: u64,
}

/// LCS length by the standard table, one row of |X| cells packed into machine words.
pub fn lcs_dp(x: &[u32], y: &[u32]) -> Result<LcsReport> {
    let cells = (x.len() as u64).saturating_mul(y.len() as u64);
    if cells > LCS_CELL_CAP {
        return Err(Error::TooLarge { len: cells, limit: LCS_CELL_CAP });
    }
    let words = x.len().div_ceil(64).max(1);
    let mut mask: HashMap<u32, Vec<u64>> = HashMap::new();
    for (i, &a) in x.iter().enumerate() {
        mask.entry(a).or_insert_with(|| vec![0; words])[i / 64] |= 1 << (i % 64);
    }
    // zero bits of v mark the row positions where the table steps up
    let mut v = vec![u64::MAX; words];
    for b in y {
        let Some(m) = mask.get(b) else { continue };
        let (mut carry, mut borrow) = (false, false);
        for w in 0..words {
            let u = v[w] & m[w];
            let (s1, c1) = v[w].overflowing_add(u);
            let (s2, c2) = s1.overflowing_add(carry as u64);
            let (d1, b1) = v[w].overflowing_sub(u);
            let (d2, b2) = d1.overflowing_sub(borrow as u64);
            carry = c1 || c2;
            borrow = b1 || b2;
            v[w] = s2 | d2;
        }
    }
    let mut lcs = 0u64;
    for (w, &word) in v.iter().enumerate() {
        let bits = (x.len() - w * 64).min(64);
        let live = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
        lcs += u64::from((!word & live).count_ones());
    }
    Ok(LcsReport { lcs, delta: x.len() as u64 + y.len() as u64 - 2 * lcs })
}
