//! Exact integration of affine data over simplicial decompositions.
//! On a simplex an affine function integrates to volume times the vertex average.

use crate::hull::Polytope;
use crate::lattice::sigma_simplex_volume;
use crate::rational::{to_i64, Int, Rat};
use num_traits::Zero;

/// Affine function <grad, x> + c.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Affine {
    pub grad: Vec<Rat>,
    pub c: Rat,
}

impl Affine {
    pub fn eval(&self, x: &[Rat]) -> Rat {
        crate::rational::dot_rat(&self.grad, x) + &self.c
    }

    pub fn eval_i64(&self, x: &[i64]) -> Rat {
        self.grad.iter().zip(x).fold(self.c.clone(), |s, (g, v)| s + g * Rat::from_integer(Int::from(*v)))
    }

    pub fn coordinate(n: usize, i: usize) -> Affine {
        let mut grad = vec![Rat::zero(); n];
        grad[i] = Rat::from_integer(Int::from(1));
        Affine { grad, c: Rat::zero() }
    }

    pub fn constant(n: usize, c: Rat) -> Affine {
        Affine { grad: vec![Rat::zero(); n], c }
    }

    pub fn sub(&self, o: &Affine) -> Affine {
        Affine { grad: self.grad.iter().zip(&o.grad).map(|(a, b)| a - b).collect(), c: &self.c - &o.c }
    }
}

/// vol(S) times the average of `values` over the vertices of S.
pub fn trapezoid(vol: &Rat, values: &[Rat]) -> Rat {
    let s = values.iter().fold(Rat::zero(), |a, b| a + b);
    vol * s / Rat::from_integer(Int::from(values.len()))
}

/// (volume, ∫ x dV) over a polytope.
pub fn interior_moments(p: &Polytope) -> (Rat, Vec<Rat>) {
    let mut vol = Rat::zero();
    let mut m = vec![Rat::zero(); p.dim];
    for s in p.triangulate() {
        let v = p.simplex_volume(&s);
        for (j, mj) in m.iter_mut().enumerate() {
            let vals: Vec<Rat> = s.iter().map(|&i| p.vertices[i][j].clone()).collect();
            *mj += trapezoid(&v, &vals);
        }
        vol += v;
    }
    (vol, m)
}

/// σ-measure of each simplex in a triangulation of facet `f`.
pub fn facet_pieces(p: &Polytope, f: usize) -> Vec<(Vec<usize>, Rat)> {
    let normal: Vec<i64> = p.facets[f].normal.iter().map(to_i64).collect();
    p.facet_triangulation(f)
        .into_iter()
        .map(|s| {
            let q: Vec<Vec<Rat>> = s.iter().map(|&i| p.vertices[i].clone()).collect();
            let sv = sigma_simplex_volume(&q, &normal);
            (s, sv)
        })
        .collect()
}

/// (σ-volume of the boundary, ∫_∂ x dσ).
pub fn boundary_moments(p: &Polytope) -> (Rat, Vec<Rat>) {
    let mut vol = Rat::zero();
    let mut m = vec![Rat::zero(); p.dim];
    for f in 0..p.facets.len() {
        for (s, v) in facet_pieces(p, f) {
            for (j, mj) in m.iter_mut().enumerate() {
                let vals: Vec<Rat> = s.iter().map(|&i| p.vertices[i][j].clone()).collect();
                *mj += trapezoid(&v, &vals);
            }
            vol += v;
        }
    }
    (vol, m)
}
