//! Lattice polytopes: facets, vertex cones, volumes and the boundary σ-measure.

mod points;
mod symmetry;

pub use points::{Enumerator, LatticePoint, PointKind, Tally};
pub use symmetry::{classify_reflexivity, lattice_automorphisms, require_symmetric_origin, Automorphism, Reflexivity};

use crate::error::{Error, Result};
use crate::hull::Polytope;
use crate::linalg;
use crate::rational::{complement_vector, dot_i64, factorial, primitive_i64, rbig, ri, rvec, to_i64, Int, Rat};
use num_traits::{Signed, Zero};

/// Facet h(x) = <normal, x> + offset >= 0 with a primitive inward normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    pub fn eval(&self, x: &[i64]) -> i64 {
        dot_i64(&self.normal, x) + self.offset
    }

    pub fn eval_rat(&self, x: &[Rat]) -> Rat {
        self.normal.iter().zip(x).fold(ri(self.offset), |s, (a, b)| s + ri(*a) * b)
    }
}

#[derive(Clone, Debug)]
pub struct VertexCone {
    pub vertex: usize,
    pub apex: Vec<i64>,
    /// Primitive edge directions, sorted.
    pub generators: Vec<Vec<i64>>,
    /// Facets of the polytope through the apex (inward normals).
    pub facet_normals: Vec<Vec<i64>>,
}

#[derive(Clone, Debug)]
pub struct LatticePolytope {
    pub name: String,
    pub dim: usize,
    pub vertices: Vec<Vec<i64>>,
    pub facets: Vec<Facet>,
    pub poly: Polytope,
}

pub fn build_polytope(vertices: &[Vec<i64>]) -> Result<LatticePolytope> {
    build_named("", vertices)
}

pub fn build_named(name: &str, vertices: &[Vec<i64>]) -> Result<LatticePolytope> {
    if vertices.is_empty() {
        return Err(Error::EmptyInput);
    }
    let pts: Vec<Vec<Rat>> = vertices.iter().map(|v| rvec(v)).collect();
    let poly = Polytope::from_points(&pts)?;
    Ok(LatticePolytope::from_poly(name, poly))
}

impl LatticePolytope {
    fn from_poly(name: &str, poly: Polytope) -> Self {
        let vertices = poly.vertices.iter().map(|v| v.iter().map(|x| to_i64(&x.to_integer())).collect()).collect();
        let facets = poly.facets.iter().map(|h| Facet { normal: h.normal.iter().map(to_i64).collect(), offset: to_i64(&h.offset.to_integer()) }).collect();
        LatticePolytope { name: name.to_string(), dim: poly.dim, vertices, facets, poly }
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|f| f.eval(x) >= 0)
    }

    pub fn contains_dilate(&self, x: &[i64], k: i64) -> bool {
        self.facets.iter().all(|f| dot_i64(&f.normal, x) + k * f.offset >= 0)
    }

    pub fn euclidean_volume(&self) -> Rat {
        self.poly.volume()
    }

    /// Facets of the vertex: indices of facets through it.
    pub fn facets_at(&self, v: usize) -> Vec<usize> {
        (0..self.facets.len()).filter(|&f| self.poly.facet_vertices[f].get(v)).collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.poly.edges()
    }

    pub fn vertex_cones(&self) -> Vec<VertexCone> {
        let edges = self.edges();
        (0..self.vertices.len())
            .map(|i| {
                let mut generators: Vec<Vec<i64>> = edges
                    .iter()
                    .filter_map(|&(a, b)| {
                        let o = if a == i {
                            b
                        } else if b == i {
                            a
                        } else {
                            return None;
                        };
                        let d: Vec<i64> = self.vertices[o].iter().zip(&self.vertices[i]).map(|(x, y)| x - y).collect();
                        Some(primitive_i64(&d))
                    })
                    .collect();
                generators.sort();
                let facet_normals = self.facets_at(i).into_iter().map(|f| self.facets[f].normal.clone()).collect();
                VertexCone { vertex: i, apex: self.vertices[i].clone(), generators, facet_normals }
            })
            .collect()
    }

    /// σ-volume of each facet: sum over a facet triangulation of
    /// |det(q1-q0, ..., q_{n-1}-q0, w)| / (n-1)! with <w, v> = 1.
    pub fn facet_sigma_volumes(&self) -> Vec<Rat> {
        (0..self.facets.len())
            .map(|f| {
                self.poly
                    .facet_triangulation(f)
                    .iter()
                    .map(|s| {
                        let q: Vec<Vec<Rat>> = s.iter().map(|&i| self.poly.vertices[i].clone()).collect();
                        sigma_simplex_volume(&q, &self.facets[f].normal)
                    })
                    .fold(Rat::zero(), |a, b| a + b)
            })
            .collect()
    }

    pub fn boundary_sigma_volume(&self) -> Rat {
        self.facet_sigma_volumes().into_iter().fold(Rat::zero(), |a, b| a + b)
    }

    pub fn dilate(&self, k: i64) -> LatticePolytope {
        let v: Vec<Vec<i64>> = self.vertices.iter().map(|p| p.iter().map(|x| x * k).collect()).collect();
        build_named(&self.name, &v).expect("dilation of a valid polytope")
    }

    pub fn translate(&self, t: &[i64]) -> LatticePolytope {
        let v: Vec<Vec<i64>> = self.vertices.iter().map(|p| p.iter().zip(t).map(|(x, y)| x + y).collect()).collect();
        build_named(&self.name, &v).expect("translate of a valid polytope")
    }

    pub fn transform(&self, g: &[Vec<i64>]) -> LatticePolytope {
        let v: Vec<Vec<i64>> = self.vertices.iter().map(|p| g.iter().map(|r| dot_i64(r, p)).collect()).collect();
        build_named(&self.name, &v).expect("unimodular image of a valid polytope")
    }

    pub fn vertex_index(&self, p: &[i64]) -> Option<usize> {
        self.vertices.iter().position(|v| v == p)
    }

    pub fn enumerator(&self) -> Enumerator {
        Enumerator::new(self)
    }

    /// Lattice points of kΔ, sorted, each with its kind.
    pub fn lattice_points(&self, k: i64) -> Vec<LatticePoint> {
        self.enumerator().points(self, k)
    }
}

/// σ-measure of an (n-1)-simplex lying in a hyperplane with primitive normal v.
pub fn sigma_simplex_volume(q: &[Vec<Rat>], normal: &[i64]) -> Rat {
    let n = normal.len();
    let w = complement_vector(normal);
    let mut m: Vec<Vec<Rat>> = q[1..].iter().map(|v| v.iter().zip(&q[0]).map(|(a, b)| a - b).collect()).collect();
    m.push(rvec(&w));
    linalg::det(&m).abs() / rbig(&factorial(n - 1))
}

/// σ-measure via the gcd of maximal minors of the edge matrix.
pub fn sigma_simplex_volume_minors(q: &[Vec<Rat>]) -> Rat {
    let d = q.len() - 1;
    linalg::normalized_simplex_volume(q) / rbig(&factorial(d))
}

pub fn is_primitive(v: &[i64]) -> bool {
    let g = v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
    g == 1
}

pub fn int_vec(v: &[Int]) -> Vec<i64> {
    v.iter().map(to_i64).collect()
}

pub fn rat_is_nonneg(r: &Rat) -> bool {
    !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn simplex(n: usize) -> Vec<Vec<i64>> {
        let mut v = vec![vec![0; n]];
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            v.push(e);
        }
        v
    }

    #[test]
    fn standard_triangle_facets() {
        let p = build_polytope(&simplex(2)).unwrap();
        let mut fs: Vec<(Vec<i64>, i64)> = p.facets.iter().map(|f| (f.normal.clone(), f.offset)).collect();
        fs.sort();
        assert_eq!(fs, vec![(vec![-1, -1], 1), (vec![0, 1], 0), (vec![1, 0], 0)]);
        assert_eq!(p.euclidean_volume(), rat(1, 2));
        assert_eq!(p.boundary_sigma_volume(), ri(3));
    }

    #[test]
    fn example_polytopes() {
        let p = build_polytope(&[vec![-3, 0], vec![3, 0], vec![0, -1], vec![0, 1]]).unwrap();
        assert_eq!(p.facets.len(), 4);
        assert_eq!(p.vertices, vec![vec![-3, 0], vec![0, -1], vec![0, 1], vec![3, 0]]);
        let x2 = build_polytope(&[vec![2, 0], vec![-2, 0], vec![0, 1], vec![0, -1]]).unwrap();
        for f in &x2.facets {
            assert_eq!(f.offset, 2);
            assert_eq!((f.normal[0].abs(), f.normal[1].abs()), (1, 2));
        }
        let cones = x2.vertex_cones();
        let top = &cones[x2.vertex_index(&[0, 1]).unwrap()];
        assert_eq!(top.generators, vec![vec![-2, -1], vec![2, -1]]);
        let c = &p.vertex_cones()[p.vertex_index(&[3, 0]).unwrap()];
        assert_eq!(c.generators, vec![vec![-3, -1], vec![-3, 1]]);
    }

    #[test]
    fn redundant_points_dropped() {
        let mut v = simplex(2);
        v.push(vec![0, 0]);
        v.push(vec![1, 0]);
        let p = build_polytope(&v).unwrap();
        assert_eq!(p.vertices.len(), 3);
        assert!(matches!(build_polytope(&[vec![0, 0], vec![1, 1]]), Err(Error::NotFullDimensional(_))));
        assert!(matches!(build_polytope(&[]), Err(Error::EmptyInput)));
    }

    #[test]
    fn sigma_routes_agree() {
        let cross = build_polytope(&[vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]).unwrap();
        assert_eq!(cross.boundary_sigma_volume(), ri(4));
        for p in [&cross, &build_polytope(&[vec![2, 0, 0], vec![-2, 0, 0], vec![0, 1, 0], vec![0, -1, 0], vec![0, 0, 1], vec![0, 0, -1]]).unwrap()] {
            for f in 0..p.facets.len() {
                for s in p.poly.facet_triangulation(f) {
                    let q: Vec<Vec<Rat>> = s.iter().map(|&i| p.poly.vertices[i].clone()).collect();
                    assert_eq!(sigma_simplex_volume(&q, &p.facets[f].normal), sigma_simplex_volume_minors(&q));
                }
            }
        }
    }

    #[test]
    fn octahedron_volume_and_measure() {
        let o = build_polytope(&[vec![2, 0, 0], vec![-2, 0, 0], vec![0, 1, 0], vec![0, -1, 0], vec![0, 0, 1], vec![0, 0, -1]]).unwrap();
        assert_eq!(o.euclidean_volume(), rat(8, 3));
        // lattice distance 2 from the origin on every facet: σ = n vol / c
        assert_eq!(o.boundary_sigma_volume(), ri(3) * rat(8, 3) / ri(2));
    }
}
