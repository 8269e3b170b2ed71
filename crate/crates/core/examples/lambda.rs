//! Stability constant of a polygon: certified for symmetric weakly reflexive
//! input, otherwise an upper bound from random convex test functions.

use toric_chow::lattice::build_polytope;
use toric_chow::rational::show_rat;
use toric_chow::stability::{lambda_certificate, lambda_ratio, FamilyParams};

fn main() -> toric_chow::Result<()> {
    let params = FamilyParams { seed: 1, ..FamilyParams::default() };
    for (name, vs) in [
        ("cross2", vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]),
        ("x2", vec![vec![2, 0], vec![-2, 0], vec![0, 1], vec![0, -1]]),
        ("simplex2", vec![vec![0, 0], vec![1, 0], vec![0, 1]]),
    ] {
        let p = build_polytope(&vs)?;
        let cert = lambda_certificate(&p, None, &params, false)?;
        print!("{name}: lambda {} ({})", show_rat(&cert.lambda), cert.basis.label());
        if let Some(f) = &cert.witness {
            print!(", witness ratio {}", show_rat(&lambda_ratio(&p, f)?));
        }
        println!();
    }
    Ok(())
}
