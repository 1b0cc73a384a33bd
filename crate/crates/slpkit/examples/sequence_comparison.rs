//! Hamming distance, subsequence tests, disjointness, and LCS.
use slpkit::seqcmp::{disjointness_routes, hamming_recursive, lcs_dp, subsequence_avl, subsequence_recursive};
use slpkit::{Alphabet, Slp};

fn main() -> slpkit::Result<()> {
    let b = Alphabet::binary();
    let x = Slp::from_str_in("0110", b.clone())?.repeat(1 << 30)?;
    let y = Slp::from_str_in("0101", b.clone())?.repeat(1 << 30)?;
    println!("hamming over N = {}: {}", x.len(), hamming_recursive(&x, &y)?);

    println!("0000 subsequence of x: {}", subsequence_avl(&x, &[0, 0, 0, 0])?);
    let p = Slp::from_str_in("10", b.clone())?.repeat(1 << 29)?;
    println!("(10)^(2^29) subsequence of x: {}", subsequence_recursive(&p, &x)?);

    let (u, v) = (Slp::from_str_in("1001", b.clone())?, Slp::from_str_in("0110", b.clone())?);
    let r = disjointness_routes(&u, &v, 1 << 20)?;
    println!("disjoint via hamming {}, via subsequence {}, agree {}", r.hamming, r.subsequence, r.agree());

    let l = lcs_dp(&b.encode("0110100")?, &b.encode("1010010")?)?;
    println!("lcs {}, distance {}", l.lcs, l.delta);
    Ok(())
}
