//! Context-free recognition and (weighted) RNA folding on decompressed texts.
use slpkit::parsing::{cfg_recognize, rna_fold, wrna_fold, wrna_fold_expanded, Cfg, PairedAlphabet};
use slpkit::Slp;

fn main() -> slpkit::Result<()> {
    let g = Cfg::parse("start S\nS -> a S b\nS ->\n", None)?;
    for w in ["aabb", "aab", ""] {
        let text = g.terminals().encode(w)?;
        println!("{w:?} in a^n b^n: {}", cfg_recognize(&text, &g)?);
    }

    let pairing = PairedAlphabet::parse("pairs\na ā\nc c̄\nweights\nc 3\nc̄ 3\n")?;
    let folded = Slp::from_str_in("a c a ā c̄ ā", pairing.base().clone())?.eval(64)?;
    println!("pairs: {}, weight: {}, expanded: {}", rna_fold(&folded, &pairing)?, wrna_fold(&folded, &pairing)?, wrna_fold_expanded(&folded, &pairing)?);
    Ok(())
}
