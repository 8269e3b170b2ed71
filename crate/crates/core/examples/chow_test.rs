//! Chow functional of a convex function given by lattice values: the apex
//! indicator on the 7-dimensional bipyramid is destabilizing.

use toric_chow::rational::show_rat;
use toric_chow::report::{read_file, FunctionFile, PolytopeFile};
use toric_chow::stability::chow_functional;

fn main() -> toric_chow::Result<()> {
    let dir = env!("CARGO_MANIFEST_DIR");
    let p = PolytopeFile::parse(&read_file(format!("{dir}/data/fixtures/bipyramid7.json").as_ref())?)?.build()?;
    let file = FunctionFile::parse(&read_file(format!("{dir}/data/functions/bipyramid7-apexes.json").as_ref())?)?;
    let f = file.resolve(&p)?;
    println!("envelope has {} affine pieces", f.pieces.len());
    let v = chow_functional(&p, &f, file.dilation())?;
    println!("lattice average {} - integral average {} = {}", show_rat(&v.lattice_average), show_rat(&v.integral_average), show_rat(&v.value));
    Ok(())
}
