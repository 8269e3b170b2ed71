//! Small and medium weights of the vertices of the 3-dimensional cross-polytope,
//! once from the apex region and once by counting in dilates.

use toric_chow::lattice::build_polytope;
use toric_chow::triangulation::BoundaryMode;
use toric_chow::weights::{apex_region, classify, cone_triangulations, weights_via_q};

fn main() -> toric_chow::Result<()> {
    let mut vs = vec![];
    for i in 0..3 {
        for s in [1, -1] {
            let mut v = vec![0; 3];
            v[i] = s;
            vs.push(v);
        }
    }
    let p = build_polytope(&vs)?;
    for c in p.vertex_cones() {
        let w = weights_via_q(&apex_region(&c)?)?;
        println!("vertex {:?}: alpha {} beta {}", c.apex, w.alpha, w.beta);
    }
    let cones = cone_triangulations(&p, &[])?;
    let r = classify(&p, &cones, 3, BoundaryMode::Literal);
    println!("class {} (alpha {}, beta {}, gamma {})", r.class.label(), r.alpha, r.beta, r.gamma);
    Ok(())
}
