//! Ehrhart polynomial, sum polynomial and Futaki-Ono vanishing of a polytope.
//!
//!     cargo run --example ehrhart -- data/fixtures/rhombus.json

use toric_chow::ehrhart::ehrhart_data;
use toric_chow::rational::show_rat;
use toric_chow::report::{read_file, PolytopeFile};

fn main() -> toric_chow::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/fixtures/simplex2.json").into());
    let p = PolytopeFile::parse(&read_file(path.as_ref())?)?.build()?;
    let d = ehrhart_data(&p)?;
    let coeffs: Vec<String> = d.ehrhart.coeffs.iter().rev().map(show_rat).collect();
    println!("{}: E(t) coefficients, highest first: {}", p.name, coeffs.join(", "));
    for t in 1..=4 {
        println!("  E({t}) = {}", show_rat(&d.ehrhart.eval(t)));
    }
    println!("  volume {} boundary measure {}", show_rat(&d.volume), show_rat(&d.sigma));
    let fo = d.fo_report();
    println!("  Futaki-Ono invariant vanishes: {}", fo.vanishes);
    Ok(())
}
