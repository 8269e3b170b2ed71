//! Type F cone triangulations of the rhombus, with and without a hint file,
//! and the SVG picture of the apex regions.

use toric_chow::report::{diagram, parse_hints, read_file, PolytopeFile};
use toric_chow::triangulation::Piece;
use toric_chow::weights::cone_triangulations;

fn main() -> toric_chow::Result<()> {
    let dir = env!("CARGO_MANIFEST_DIR");
    let p = PolytopeFile::parse(&read_file(format!("{dir}/data/fixtures/rhombus.json").as_ref())?)?.build()?;
    for hint_file in [None, Some("rhombus-layered"), Some("rhombus-fan")] {
        let hints = match hint_file {
            Some(h) => parse_hints(&read_file(format!("{dir}/data/hints/{h}.json").as_ref())?)?,
            None => vec![],
        };
        println!("{}", hint_file.unwrap_or("default"));
        let cones = cone_triangulations(&p, &hints)?;
        for c in &cones {
            let kinds: Vec<&str> = c
                .pieces
                .iter()
                .map(|q| match q {
                    Piece::Kuhn { .. } => "kuhn",
                    Piece::Layered { .. } => "layered",
                })
                .collect();
            println!("  vertex {:?}: {} apex simplices, pieces {}", c.cone.apex, c.apex_region().len(), kinds.join(" "));
        }
        if hint_file == Some("rhombus-fan") {
            let (_, svg) = diagram(&p, &cones).expect("planar");
            println!("  svg: {} bytes", svg.len());
        }
    }
    Ok(())
}
