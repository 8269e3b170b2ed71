//! Largest convex function below prescribed values at the lattice points of kΔ.

use super::lp::{Cmp, Lp};
use super::pl::PlFunction;
use crate::error::{Error, Result};
use crate::hull::Polytope;
use crate::integrate::Affine;
use crate::lattice::LatticePolytope;
use crate::rational::{ri, rvec, Rat};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Values at every lattice point of kΔ.
pub type LatticeValues = BTreeMap<Vec<i64>, Rat>;

fn lattice_data(p: &LatticePolytope, k: i64, values: &LatticeValues) -> Result<(Vec<Vec<i64>>, Vec<Rat>)> {
    let pts: Vec<Vec<i64>> = p.lattice_points(k).into_iter().map(|q| q.coords).collect();
    let mut vals = Vec::with_capacity(pts.len());
    for q in &pts {
        match values.get(q) {
            Some(v) => vals.push(v.clone()),
            None => return Err(Error::MissingInput(format!("value at {q:?}"))),
        }
    }
    if values.len() != pts.len() {
        return Err(Error::InvalidArgument(format!("{} values given for {} lattice points", values.len(), pts.len())));
    }
    Ok((pts, vals))
}

/// Lower facets of the lifted point set {(q, v_q)}. One extra point high
/// above the centroid keeps the lift full-dimensional without touching the
/// lower hull.
pub fn envelope_from_values(p: &LatticePolytope, k: i64, values: &LatticeValues) -> Result<PlFunction> {
    let n = p.dim;
    let (pts, vals) = lattice_data(p, k, values)?;
    let mut lifted: Vec<Vec<Rat>> = pts
        .iter()
        .zip(&vals)
        .map(|(q, v)| {
            let mut r = rvec(q);
            r.push(v.clone());
            r
        })
        .collect();
    let count = ri(pts.len() as i64);
    let mut apex: Vec<Rat> = (0..n).map(|i| pts.iter().fold(Rat::zero(), |s, q| s + ri(q[i])) / &count).collect();
    apex.push(vals.iter().max().unwrap() + Rat::one());
    lifted.push(apex);
    let hull = Polytope::from_points(&lifted).map_err(|_| Error::HullDegeneracy)?;
    let mut pieces = vec![];
    for h in &hull.facets {
        let nv = &h.normal[n];
        if !nv.is_positive() {
            continue;
        }
        // <a, x> + b v + off >= 0, b > 0  =>  v >= -(<a, x> + off) / b
        let b = crate::rational::rbig(nv);
        let grad = h.normal[..n].iter().map(|a| -crate::rational::rbig(a) / &b).collect();
        let c = -&h.offset / &b;
        pieces.push(Affine { grad, c });
    }
    PlFunction::new(pieces)
}

/// min Σ λ_q v_q over convex combinations Σ λ_q q = x.
pub fn envelope_oracle(p: &LatticePolytope, k: i64, values: &LatticeValues, x: &[Rat]) -> Result<Rat> {
    let (pts, vals) = lattice_data(p, k, values)?;
    let mut lp = Lp::new(vals, vec![false; pts.len()]);
    for i in 0..p.dim {
        lp.row(pts.iter().map(|q| ri(q[i])).collect(), Cmp::Eq, x[i].clone());
    }
    lp.row(vec![Rat::one(); pts.len()], Cmp::Eq, Rat::one());
    Ok(lp.minimize()?.value)
}

/// Values of f at the lattice points of kΔ.
pub fn lattice_values(p: &LatticePolytope, k: i64, f: &PlFunction) -> LatticeValues {
    p.lattice_points(k)
        .into_iter()
        .map(|q| {
            let v = f.eval_i64(&q.coords);
            (q.coords, v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_polytope;
    use crate::rational::rat;

    #[test]
    fn one_dimensional_envelopes() {
        let p = build_polytope(&[vec![0], vec![2]]).unwrap();
        let vals: LatticeValues = [(vec![0], ri(1)), (vec![1], ri(0)), (vec![2], ri(1))].into_iter().collect();
        let f = envelope_from_values(&p, 1, &vals).unwrap();
        for x in [rat(0, 1), rat(1, 2), rat(3, 2), rat(2, 1)] {
            assert_eq!(f.eval(std::slice::from_ref(&x)), (&x - ri(1)).abs());
            assert_eq!(envelope_oracle(&p, 1, &vals, std::slice::from_ref(&x)).unwrap(), (x - ri(1)).abs());
        }
        let zero: LatticeValues = vals.keys().map(|q| (q.clone(), ri(0))).collect();
        let z = envelope_from_values(&p, 1, &zero).unwrap();
        assert_eq!(z.pieces, vec![Affine::constant(1, ri(0))]);
    }

    #[test]
    fn missing_values() {
        let p = build_polytope(&[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        let vals: LatticeValues = [(vec![0, 0], ri(1))].into_iter().collect();
        assert!(matches!(envelope_from_values(&p, 1, &vals), Err(Error::MissingInput(_))));
    }
}
