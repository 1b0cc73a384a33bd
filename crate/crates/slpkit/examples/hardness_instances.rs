//! Turn source problems into compressed instances and check that the answers survive.
use slpkit::hardness::{generate, gen_rna_from_clique, verify_instance, GenParams, Graph, Source};

fn main() -> slpkit::Result<()> {
    let ov = Source::parse("ov 2\n10\n11\n\n01\n")?;
    let inst = generate("dfa-ov", &ov, &GenParams::default())?;
    let v = verify_instance(&inst, 1 << 24)?;
    println!("dfa-ov: source {:?}, target {:?}, sizes {:?}", v.expected, v.target(), inst.payload.sizes());

    let triangle = Graph::from_mask(3, 0b111);
    let rna = gen_rna_from_clique(&triangle, 1)?;
    let v = verify_instance(&rna, 1 << 24)?;
    println!("rna-clique on a triangle: threshold met = {:?} (rho = {})", v.target(), rna.provenance["const.rho"]);

    let dir = std::env::temp_dir().join("slpkit-example-bundle");
    inst.write_bundle(&dir)?;
    println!("bundle written to {}", dir.display());
    Ok(())
}
