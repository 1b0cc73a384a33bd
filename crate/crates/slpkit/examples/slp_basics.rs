//! Build a compressed string, inspect it, balance it, and read single symbols without decompressing.
use slpkit::{Alphabet, Slp, SlpBuilder};

fn main() -> slpkit::Result<()> {
    // (ab)^(2^40) with a handful of rules
    let ab = Slp::from_str_in("ab", Alphabet::with_glyphs(&["a", "b"])?)?;
    let huge = ab.repeat(1 << 40)?;
    println!("rules = {}, length = {}, depth = {}", huge.rule_count(), huge.len(), huge.depth());
    println!("symbol at position 10^12 + 1: {}", huge.alphabet().glyph(huge.char_at(1_000_000_000_001)?));

    // a deliberately lopsided chain: ((((a b) b) b) ... b)
    let mut b = SlpBuilder::new();
    let (a, bb) = (b.terminal(0), b.terminal(1));
    let mut node = a;
    for _ in 0..200 {
        node = b.concat(node, bb)?;
    }
    let chain = b.finish(node, Alphabet::with_glyphs(&["a", "b"])?)?;
    let balanced = chain.balanced()?;
    println!("chain depth {} -> balanced depth {} (avl: {})", chain.depth(), balanced.depth(), balanced.is_avl());
    assert_eq!(chain.eval(1 << 10)?, balanced.eval(1 << 10)?);

    print!("{}", slpkit::slp::emit(&Slp::from_str_in("abab", Alphabet::with_glyphs(&["a", "b"])?)?));
    Ok(())
}
