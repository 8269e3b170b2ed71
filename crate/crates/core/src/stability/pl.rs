//! Convex piecewise linear functions and their exact integrals.

use crate::error::{Error, Result};
use crate::hull::{Halfspace, Polytope};
use crate::integrate::{facet_pieces, interior_moments, trapezoid, Affine};
use crate::rational::{dot_rat, Rat};
use num_traits::Zero;
use std::collections::BTreeSet;

/// f(x) = max over the affine pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlFunction {
    pub pieces: Vec<Affine>,
}

/// A linearity cell: the piece that attains the max on it.
#[derive(Clone, Debug)]
pub struct Cell {
    pub piece: Affine,
    pub region: Polytope,
}

impl PlFunction {
    pub fn new(pieces: Vec<Affine>) -> Result<PlFunction> {
        let Some(first) = pieces.first() else { return Err(Error::EmptyInput) };
        let n = first.grad.len();
        if pieces.iter().any(|p| p.grad.len() != n) {
            return Err(Error::DimensionMismatch);
        }
        let pieces: Vec<Affine> = pieces.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        Ok(PlFunction { pieces })
    }

    pub fn affine(a: Affine) -> PlFunction {
        PlFunction { pieces: vec![a] }
    }

    pub fn dim(&self) -> usize {
        self.pieces[0].grad.len()
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        self.pieces.iter().map(|p| p.eval(x)).max().unwrap()
    }

    pub fn eval_i64(&self, x: &[i64]) -> Rat {
        self.pieces.iter().map(|p| p.eval_i64(x)).max().unwrap()
    }

    /// A piece attaining the max at x; its gradient is a subgradient there.
    pub fn active(&self, x: &[Rat]) -> &Affine {
        let v = self.eval(x);
        self.pieces.iter().find(|p| p.eval(x) == v).unwrap()
    }

    /// c f for c >= 0.
    pub fn scale(&self, c: &Rat) -> PlFunction {
        assert!(c >= &Rat::zero(), "negative scaling breaks convexity");
        let pieces = self.pieces.iter().map(|p| Affine { grad: p.grad.iter().map(|g| g * c).collect(), c: &p.c * c }).collect();
        PlFunction { pieces }
    }

    pub fn add_affine(&self, l: &Affine) -> PlFunction {
        let pieces = self.pieces.iter().map(|p| Affine { grad: p.grad.iter().zip(&l.grad).map(|(a, b)| a + b).collect(), c: &p.c + &l.c }).collect();
        PlFunction { pieces }
    }

    /// Linearity cells of positive volume in `dom`.
    pub fn cells(&self, dom: &Polytope) -> Vec<Cell> {
        let mut out = vec![];
        'pieces: for (j, pj) in self.pieces.iter().enumerate() {
            let mut hs: Vec<Halfspace> = dom.facets.clone();
            for (i, pi) in self.pieces.iter().enumerate() {
                if i == j {
                    continue;
                }
                let d = pj.sub(pi);
                match Halfspace::from_rats(&d.grad, &d.c) {
                    Some(h) => hs.push(h),
                    None if d.c < Rat::zero() => continue 'pieces,
                    None => {}
                }
            }
            if let Ok(Some(region)) = Polytope::from_halfspaces(dom.dim, &hs) {
                out.push(Cell { piece: pj.clone(), region });
            }
        }
        out
    }

    /// Whether f agrees with one affine function on all of `dom`.
    pub fn is_affine_on(&self, dom: &Polytope) -> bool {
        self.cells(dom).len() <= 1
    }

    /// Vertices of the linearity subdivision of `dom`.
    pub fn subdivision_vertices(&self, dom: &Polytope) -> Vec<Vec<Rat>> {
        let set: BTreeSet<Vec<Rat>> = self.cells(dom).into_iter().flat_map(|c| c.region.vertices).collect();
        set.into_iter().collect()
    }

    pub fn min_on(&self, dom: &Polytope) -> Rat {
        self.subdivision_vertices(dom).iter().map(|v| self.eval(v)).min().unwrap()
    }

    /// ∫_dom f dV, cell by cell with the vertex-average rule.
    pub fn integrate(&self, dom: &Polytope) -> Rat {
        self.cells(dom).iter().fold(Rat::zero(), |acc, c| {
            let (vol, ix) = interior_moments(&c.region);
            acc + dot_rat(&c.piece.grad, &ix) + &c.piece.c * vol
        })
    }

    /// ∫_∂dom f dσ over the cell faces lying on facets of `dom`.
    pub fn integrate_boundary(&self, dom: &Polytope) -> Rat {
        let facets: BTreeSet<&Halfspace> = dom.facets.iter().collect();
        let mut total = Rat::zero();
        for c in self.cells(dom) {
            for (f, h) in c.region.facets.iter().enumerate() {
                if !facets.contains(h) {
                    continue;
                }
                for (s, sv) in facet_pieces(&c.region, f) {
                    let vals: Vec<Rat> = s.iter().map(|&i| c.piece.eval(&c.region.vertices[i])).collect();
                    total += trapezoid(&sv, &vals);
                }
            }
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ri, rvec};

    fn hinge(n: usize, i: usize) -> PlFunction {
        PlFunction::new(vec![Affine::coordinate(n, i), Affine::constant(n, ri(0))]).unwrap()
    }

    #[test]
    fn segment_hinge() {
        let seg = Polytope::from_points(&[rvec(&[-1]), rvec(&[1])]).unwrap();
        let f = hinge(1, 0);
        assert_eq!(f.integrate(&seg), rat(1, 2));
        assert_eq!(f.cells(&seg).len(), 2);
        assert_eq!(f.min_on(&seg), ri(0));
    }

    #[test]
    fn cross_polytope_hinge() {
        let d = Polytope::from_points(&[rvec(&[1, 0]), rvec(&[-1, 0]), rvec(&[0, 1]), rvec(&[0, -1])]).unwrap();
        let f = hinge(2, 0);
        assert_eq!(f.integrate(&d), rat(1, 3));
        assert_eq!(f.integrate_boundary(&d), ri(1));
        let one = PlFunction::affine(Affine::constant(2, ri(1)));
        assert_eq!(one.integrate_boundary(&d), ri(4));
        assert!(one.is_affine_on(&d) && !f.is_affine_on(&d));
    }

    #[test]
    fn affine_on_triangle() {
        let t = Polytope::from_points(&[rvec(&[0, 0]), rvec(&[1, 0]), rvec(&[0, 1])]).unwrap();
        let x = PlFunction::affine(Affine::coordinate(2, 0));
        assert_eq!(x.integrate_boundary(&t), ri(1));
        assert_eq!(x.integrate(&t), rat(1, 6));
    }
}
