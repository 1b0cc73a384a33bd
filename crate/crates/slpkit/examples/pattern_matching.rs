//! Generalized pattern matching, wildcards, and substring Hamming distance on compressed texts.
use slpkit::matching::{gpm_compressed, gpm_decompressed, substring_hd, wildcard_match, CostFn};
use slpkit::{Alphabet, Slp};

fn main() -> slpkit::Result<()> {
    let sigma = Alphabet::binary();
    let text = Slp::from_str_in("0010110", sigma.clone())?.repeat(1000)?;
    let pattern = [1, 1, 0, 1];

    let cost = CostFn::hamming(&sigma, &sigma);
    let c = gpm_compressed(&text, &pattern, &cost)?;
    let d = gpm_decompressed(&text.eval(1 << 20)?, &pattern, &cost)?;
    println!("min cost {} at offset {} (decompressed route: {})", c.min_cost, c.best_offset, d.min_cost);

    let wild = Alphabet::with_glyphs(&["0", "1", "*"])?;
    let t = Slp::from_str_in("0010110", wild.clone())?;
    for p in ["1*11", "11*1"] {
        println!("{p} occurs: {}", wildcard_match(&t, &Slp::from_str_in(p, wild.clone())?)?);
    }

    let (t, p) = (Slp::from_str_in("0101", sigma.clone())?, Slp::from_str_in("0011", sigma)?);
    println!("substring Hamming distance of 0011 in 0101: {}", substring_hd(&t, &p)?);
    Ok(())
}
