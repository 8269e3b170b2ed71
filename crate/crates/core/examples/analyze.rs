//! Full analysis report of a polytope file, as printed by the binary.
//!
//!     cargo run --release --example analyze -- data/fixtures/x2.json

use toric_chow::report::{cmd_analyze, read_file, Options, PolytopeFile};

fn main() -> toric_chow::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/fixtures/cross2.json").into());
    let file = PolytopeFile::parse(&read_file(path.as_ref())?)?;
    let p = file.build()?;
    let opts = Options { lambda: file.lambda()?, k_max: 3, ..Options::default() };
    let rep = cmd_analyze(&p, &opts)?;
    print!("{}", rep.text);
    println!("certified: {}", rep.json["certified"]);
    Ok(())
}
