use super::simplex::{touch_counts, LatticeSimplex, Point, Triangulation};
use super::typef::TypeFCone;
use crate::error::{Error, Result};
use crate::hull::Polytope;
use crate::lattice::LatticePolytope;
use crate::rational::rvec;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};

/// Which cone-boundary (n-1)-simplices enter m_{i,k}.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BoundaryMode {
    /// Faces of the boundary triangulation whose vertices all lie in ∂K_{i,k}.
    #[default]
    Literal,
    /// Faces of simplices of K_{i,k}.
    ClosedStar,
}

#[derive(Clone, Debug)]
pub struct ConeCounts {
    pub k: i64,
    /// K_{i,k} in absolute coordinates.
    pub simplices: Vec<LatticeSimplex>,
    /// n_{i,k}(q) for every vertex q of K_{i,k}.
    pub n: BTreeMap<Point, usize>,
    /// m_{i,k}(q) over the selected boundary faces.
    pub m: BTreeMap<Point, usize>,
    pub boundary_faces: Vec<LatticeSimplex>,
}

pub fn cone_counts(p: &LatticePolytope, t: &TypeFCone, k: i64, mode: BoundaryMode) -> ConeCounts {
    let (inside, band) = t.in_dilate(p, k, 1);
    let n = touch_counts(&inside);
    let faces: BTreeSet<LatticeSimplex> = match mode {
        BoundaryMode::ClosedStar => inside.iter().flat_map(|s| s.facets().into_iter().map(|f| f.0)).filter(|f| t.on_cone_boundary(f, k)).collect(),
        BoundaryMode::Literal => {
            let verts: BTreeSet<&Point> = inside.iter().flat_map(|s| s.vertices.iter()).collect();
            band.iter()
                .flat_map(|s| s.facets().into_iter().map(|f| f.0))
                .filter(|f| f.vertices.iter().all(|v| verts.contains(v)) && t.on_cone_boundary(f, k))
                .collect()
        }
    };
    let boundary_faces: Vec<LatticeSimplex> = faces.into_iter().collect();
    let m = touch_counts(&boundary_faces);
    ConeCounts { k, simplices: inside, n, m, boundary_faces }
}

/// n_k(p) = max_i n_{i,k}(p) and m_k(p) = max_i m_{i,k}(p).
pub fn profile_counts(p: &LatticePolytope, cones: &[TypeFCone], k: i64, mode: BoundaryMode) -> (BTreeMap<Point, usize>, BTreeMap<Point, usize>) {
    let mut n: BTreeMap<Point, usize> = BTreeMap::new();
    let mut m: BTreeMap<Point, usize> = BTreeMap::new();
    for t in cones {
        let c = cone_counts(p, t, k, mode);
        for (q, v) in c.n {
            let e = n.entry(q).or_insert(0);
            *e = (*e).max(v);
        }
        for (q, v) in c.m {
            let e = m.entry(q).or_insert(0);
            *e = (*e).max(v);
        }
    }
    (n, m)
}

pub enum Region<'a> {
    /// A convex region; it must be a union of simplices of the triangulation.
    Convex(&'a Polytope),
    /// An explicit union of simplices of the triangulation.
    Union(&'a [LatticeSimplex]),
}

/// Number of simplices of `t` inside `b` having q as a vertex.
pub fn touching_count(q: &[i64], b: Region, t: &Triangulation) -> Result<usize> {
    match b {
        Region::Convex(poly) => {
            let inside: Vec<&LatticeSimplex> = t.simplices.iter().filter(|s| s.vertices.iter().all(|v| poly.contains(&rvec(v)))).collect();
            let vol = inside.iter().fold(crate::rational::Rat::zero(), |a, s| a + s.volume());
            if vol != poly.volume() {
                return Err(Error::RegionNotCovered);
            }
            Ok(inside.iter().filter(|s| s.has_vertex(q)).count())
        }
        Region::Union(parts) => {
            let all: BTreeSet<&LatticeSimplex> = t.simplices.iter().collect();
            if parts.iter().any(|s| !all.contains(s)) {
                return Err(Error::RegionNotCovered);
            }
            let distinct: BTreeSet<&LatticeSimplex> = parts.iter().collect();
            Ok(distinct.iter().filter(|s| s.has_vertex(q)).count())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_polytope;
    use crate::rational::ri;
    use crate::triangulation::{build_type_f, standard_simplex_triangulation};

    #[test]
    fn smooth_vertex_weights() {
        let p = build_polytope(&[vec![0, 0, 0], vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]).unwrap();
        for cone in p.vertex_cones() {
            let t = build_type_f(&cone).unwrap();
            for k in 1..=3 {
                let c = cone_counts(&p, &t, k, BoundaryMode::Literal);
                let apex: Vec<i64> = cone.apex.iter().map(|x| x * k).collect();
                assert_eq!(c.n[&apex], 1);
                assert_eq!(c.m[&apex], 3);
            }
        }
    }

    #[test]
    fn regions() {
        let t = standard_simplex_triangulation(2, 2).unwrap();
        let half = Polytope::from_points(&[vec![ri(0), ri(0)], vec![ri(1), ri(0)], vec![ri(0), ri(1)]]).unwrap();
        assert_eq!(touching_count(&[0, 0], Region::Convex(&half), &t), Ok(1));
        let tilted = Polytope::from_points(&[vec![ri(0), ri(0)], vec![ri(2), ri(0)], vec![ri(0), ri(1)]]).unwrap();
        assert_eq!(touching_count(&[0, 0], Region::Convex(&tilted), &t), Err(Error::RegionNotCovered));
        let foreign = [LatticeSimplex::new(vec![vec![5, 5], vec![6, 5], vec![5, 6]])];
        assert_eq!(touching_count(&[5, 5], Region::Union(&foreign), &t), Err(Error::RegionNotCovered));
    }
}
