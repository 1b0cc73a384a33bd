//! The compressed-versus-decompressed gap as a CSV table.
fn main() -> slpkit::Result<()> {
    let suite = "repeat 12 dfa-accept\nrepeat 31 dfa-accept\nfibonacci 25 hamming\nreduction:dfa-ov 2 target\n";
    print!("{}", slpkit::cli::run_suite(suite, 42, 1 << 24)?);
    Ok(())
}
