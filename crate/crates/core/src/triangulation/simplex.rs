use crate::hull::Polytope;
use crate::linalg::{self, Solution};
use crate::rational::{factorial, rbig, rvec, Int, Rat};
use num_traits::{Signed, Zero};
use std::collections::{BTreeMap, HashMap};

pub type Point = Vec<i64>;

/// Lattice simplex with lexicographically sorted vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeSimplex {
    pub vertices: Vec<Point>,
}

impl LatticeSimplex {
    pub fn new(mut vertices: Vec<Point>) -> Self {
        vertices.sort();
        LatticeSimplex { vertices }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].len()
    }

    fn edge_rows(&self) -> Vec<Vec<i64>> {
        let v0 = &self.vertices[0];
        self.vertices[1..].iter().map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect()).collect()
    }

    /// d! times the d-volume in the lattice of the affine span.
    pub fn normalized_volume(&self) -> Int {
        let rows = self.edge_rows();
        if self.dim() == self.ambient_dim() {
            linalg::det_i64(&rows).abs()
        } else {
            let cols: Vec<Vec<Int>> = rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect();
            linalg::gcd_maximal_minors(&cols)
        }
    }

    /// Euclidean volume of a full-dimensional simplex.
    pub fn volume(&self) -> Rat {
        rbig(&linalg::det_i64(&self.edge_rows()).abs()) / rbig(&factorial(self.dim()))
    }

    pub fn is_unimodular(&self) -> bool {
        self.normalized_volume() == Int::from(1)
    }

    pub fn is_degenerate(&self) -> bool {
        self.normalized_volume().is_zero()
    }

    pub fn has_vertex(&self, q: &[i64]) -> bool {
        self.vertices.iter().any(|v| v == q)
    }

    /// Faces obtained by dropping one vertex, paired with the dropped vertex.
    pub fn facets(&self) -> Vec<(LatticeSimplex, Point)> {
        (0..self.vertices.len())
            .map(|i| {
                let mut f = self.vertices.clone();
                let v = f.remove(i);
                (LatticeSimplex { vertices: f }, v)
            })
            .collect()
    }

    pub fn translate(&self, t: &[i64]) -> LatticeSimplex {
        LatticeSimplex::new(self.vertices.iter().map(|v| v.iter().zip(t).map(|(a, b)| a + b).collect()).collect())
    }

    /// Representative of the translation class: first vertex moved to the origin.
    pub fn shape(&self) -> LatticeSimplex {
        let t: Vec<i64> = self.vertices[0].iter().map(|x| -x).collect();
        self.translate(&t)
    }

    /// Barycentric coordinates of x (full-dimensional simplex).
    pub fn barycentric(&self, x: &[Rat]) -> Vec<Rat> {
        let n = self.ambient_dim();
        let mut a: Vec<Vec<Rat>> = (0..n).map(|i| self.vertices.iter().map(|v| Rat::from_integer(Int::from(v[i]))).collect()).collect();
        a.push(vec![Rat::from_integer(Int::from(1)); self.vertices.len()]);
        let mut b = x.to_vec();
        b.push(Rat::from_integer(Int::from(1)));
        match linalg::solve(&a, &b) {
            Solution::Unique(l) => l,
            _ => panic!("barycentric coordinates of a degenerate simplex"),
        }
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.barycentric(x).iter().all(|l| !l.is_negative())
    }

    fn rat_vertices(&self) -> Vec<Vec<Rat>> {
        self.vertices.iter().map(|v| rvec(v)).collect()
    }
}

/// Some (a, b) with <a, x> + b = 0 on the affine hyperplane through an (n-1)-simplex.
pub fn facet_hyperplane(face: &LatticeSimplex) -> (Vec<Rat>, Rat) {
    let n = face.ambient_dim();
    let rows: Vec<Vec<Rat>> = face.edge_rows().iter().map(|r| rvec(r)).collect();
    // normal = kernel of the edge rows
    let mut m = rows.clone();
    let piv = linalg::rref(&mut m);
    let free = (0..n).find(|c| !piv.contains(c)).expect("face of codimension one");
    let mut a = vec![Rat::zero(); n];
    a[free] = Rat::from_integer(Int::from(1));
    for (r, &pc) in piv.iter().enumerate() {
        a[pc] = -m[r][free].clone();
    }
    let b = -crate::rational::dot_rat(&a, &rvec(&face.vertices[0]));
    (a, b)
}

fn side(a: &[Rat], b: &Rat, p: &[i64]) -> Rat {
    a.iter().zip(p).fold(b.clone(), |s, (x, y)| s + x * Rat::from_integer(Int::from(*y)))
}

/// A set of full-dimensional lattice simplices covering `region`.
#[derive(Clone, Debug)]
pub struct Triangulation {
    pub dim: usize,
    pub level: i64,
    pub simplices: Vec<LatticeSimplex>,
    pub region: Polytope,
}

impl Triangulation {
    pub fn volume(&self) -> Rat {
        self.simplices.iter().fold(Rat::zero(), |a, s| a + s.volume())
    }

    pub fn all_unimodular(&self) -> bool {
        self.simplices.iter().all(|s| s.is_unimodular())
    }

    pub fn touch_counts(&self) -> BTreeMap<Point, usize> {
        touch_counts(&self.simplices)
    }

    pub fn touching(&self, q: &[i64]) -> usize {
        self.simplices.iter().filter(|s| s.has_vertex(q)).count()
    }

    /// Face-to-face check: volumes add up to the region, every interior facet
    /// is shared by exactly two simplices on opposite sides, and every other
    /// facet lies on the boundary of the region.
    pub fn is_proper(&self) -> bool {
        is_subdivision(&self.simplices, &self.region)
    }
}

pub fn touch_counts(simplices: &[LatticeSimplex]) -> BTreeMap<Point, usize> {
    let mut out = BTreeMap::new();
    for s in simplices {
        for v in &s.vertices {
            *out.entry(v.clone()).or_insert(0) += 1;
        }
    }
    out
}

pub fn is_subdivision(simplices: &[LatticeSimplex], region: &Polytope) -> bool {
    let vol = simplices.iter().fold(Rat::zero(), |a, s| a + s.volume());
    if vol != region.volume() || simplices.iter().any(|s| s.is_degenerate()) {
        return false;
    }
    if simplices.iter().any(|s| s.rat_vertices().iter().any(|v| !region.contains(v))) {
        return false;
    }
    matched_facets(simplices, |face| {
        let vs = face.rat_vertices();
        region.facets.iter().any(|h| vs.iter().all(|v| h.eval(v).is_zero()))
    })
}

/// Every facet is shared by two simplices from opposite sides, or is accepted
/// by `on_boundary`.
pub fn matched_facets(simplices: &[LatticeSimplex], on_boundary: impl Fn(&LatticeSimplex) -> bool) -> bool {
    let mut faces: HashMap<LatticeSimplex, Vec<Point>> = HashMap::new();
    for s in simplices {
        for (f, v) in s.facets() {
            faces.entry(f).or_default().push(v);
        }
    }
    faces.iter().all(|(f, opp)| match opp.len() {
        1 => on_boundary(f),
        2 => {
            let (a, b) = facet_hyperplane(f);
            let s0 = side(&a, &b, &opp[0]);
            let s1 = side(&a, &b, &opp[1]);
            (s0.is_positive() && s1.is_negative()) || (s0.is_negative() && s1.is_positive())
        }
        _ => false,
    })
}
