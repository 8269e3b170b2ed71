//! Exact convex hulls by the double description method, and a generic
//! rational polytope with face incidences and pulling triangulations.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::rational::{dot_int_rat, factorial, primitive_big, primitive_of_rats, rbig, Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeSet, HashMap};

/// Extreme rays of the pointed cone { y : rows[i] . y >= 0 }.
/// Each ray comes with the set of rows it is tight on.
pub fn extreme_rays(rows: &[Vec<Int>], order: &[usize]) -> Result<Vec<(Vec<Int>, Bits)>> {
    let m = rows.len();
    let d = rows.first().map_or(0, |r| r.len());
    if d == 0 {
        return Err(Error::EmptyInput);
    }
    // pick d independent rows in the given order
    let mut basis: Vec<usize> = vec![];
    let mut echelon: Mat = vec![];
    for &i in order {
        let mut trial = echelon.clone();
        trial.push(rows[i].iter().map(rbig).collect());
        let r = linalg::rref(&mut trial).len();
        if r > echelon.len() {
            echelon = trial[..r].to_vec();
            basis.push(i);
            if basis.len() == d {
                break;
            }
        }
    }
    if basis.len() < d {
        return Err(Error::NotFullDimensional(d));
    }
    let b: Mat = basis.iter().map(|&i| rows[i].iter().map(rbig).collect()).collect();
    let inv = linalg::inverse(&b).expect("independent rows");
    let mut rays: Vec<(Vec<Int>, Bits)> = (0..d)
        .map(|j| {
            let col: Vec<Rat> = inv.iter().map(|r| r[j].clone()).collect();
            let mut z = Bits::new(m);
            for (t, &bi) in basis.iter().enumerate() {
                if t != j {
                    z.set(bi);
                }
            }
            (primitive_of_rats(&col), z)
        })
        .collect();
    let in_basis: BTreeSet<usize> = basis.iter().copied().collect();
    for &r in order.iter().filter(|i| !in_basis.contains(i)) {
        let row = &rows[r];
        let s: Vec<Int> = rays.iter().map(|(y, _)| row.iter().zip(y).fold(Int::zero(), |a, (p, q)| a + p * q)).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| s[i].is_negative()).collect();
        if neg.is_empty() {
            for (i, ray) in rays.iter_mut().enumerate() {
                if s[i].is_zero() {
                    ray.1.set(r);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| s[i].is_positive()).collect();
        let mut fresh = vec![];
        for &p in &pos {
            for &q in &neg {
                let z = rays[p].1.and(&rays[q].1);
                if z.count() + 2 < d {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|t| t == p || t == q || !z.is_subset(&rays[t].1));
                if !adjacent {
                    continue;
                }
                let y: Vec<Int> = rays[q].0.iter().zip(&rays[p].0).map(|(yq, yp)| &s[p] * yq - &s[q] * yp).collect();
                let mut z = z;
                z.set(r);
                fresh.push((primitive_big(&y), z));
            }
        }
        let mut next = vec![];
        for (i, mut ray) in rays.into_iter().enumerate() {
            if s[i].is_positive() {
                next.push(ray);
            } else if s[i].is_zero() {
                ray.1.set(r);
                next.push(ray);
            }
        }
        next.extend(fresh);
        rays = next;
    }
    Ok(rays)
}

/// Insertion order for hull rows: far from the centroid first, then lexicographic.
fn far_first_order(points: &[Vec<Rat>]) -> Vec<usize> {
    let n = points.len();
    let dim = points[0].len();
    let cnt = Rat::from_integer(Int::from(n));
    let c: Vec<Rat> = (0..dim).map(|j| points.iter().fold(Rat::zero(), |s, p| s + &p[j]) / &cnt).collect();
    let dist: Vec<Rat> = points.iter().map(|p| p.iter().zip(&c).fold(Rat::zero(), |s, (a, b)| s + (a - b) * (a - b))).collect();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| dist[b].cmp(&dist[a]).then_with(|| points[a].cmp(&points[b])));
    idx
}

/// Closed halfspace <normal, x> + offset >= 0 with a primitive integer normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Halfspace {
    pub normal: Vec<Int>,
    pub offset: Rat,
}

impl Halfspace {
    pub fn eval(&self, x: &[Rat]) -> Rat {
        dot_int_rat(&self.normal, x) + &self.offset
    }

    /// From a rational inequality <a, x> + b >= 0.
    pub fn from_rats(a: &[Rat], b: &Rat) -> Option<Halfspace> {
        let mut all = a.to_vec();
        all.push(b.clone());
        let l = all.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
        let lr = rbig(&l);
        let ints: Vec<Int> = a.iter().map(|x| (x * &lr).to_integer()).collect();
        let g = ints.iter().fold(Int::zero(), |g, x| g.gcd(x));
        if g.is_zero() {
            return None;
        }
        let normal = ints.iter().map(|x| x / &g).collect();
        let offset = b * &lr / rbig(&g);
        Some(Halfspace { normal, offset })
    }
}

#[derive(Clone, Debug)]
pub struct Polytope {
    pub dim: usize,
    /// Lexicographically sorted vertices.
    pub vertices: Vec<Vec<Rat>>,
    /// Facets sorted by (normal, offset).
    pub facets: Vec<Halfspace>,
    /// Vertex incidence per facet.
    pub facet_vertices: Vec<Bits>,
}

impl Polytope {
    /// Convex hull of a full-dimensional point set.
    pub fn from_points(points: &[Vec<Rat>]) -> Result<Polytope> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        let dim = points[0].len();
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch);
        }
        let pts: Vec<Vec<Rat>> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        if pts.len() < dim + 1 {
            return Err(Error::NotFullDimensional(dim));
        }
        let rows: Vec<Vec<Int>> = pts
            .iter()
            .map(|p| {
                let mut h = p.clone();
                h.push(Rat::one());
                primitive_of_rats(&h)
            })
            .collect();
        // the row for (p, 1) must keep a positive last entry
        let order = far_first_order(&pts);
        let rays = extreme_rays(&rows, &order).map_err(|_| Error::NotFullDimensional(dim))?;
        let mut hs = vec![];
        for (y, _) in &rays {
            if y[..dim].iter().all(|x| x.is_zero()) {
                continue;
            }
            hs.push(Halfspace::from_rats(&y[..dim].iter().map(rbig).collect::<Vec<_>>(), &rbig(&y[dim])).unwrap());
        }
        hs.sort();
        hs.dedup();
        let inc: Vec<Vec<bool>> = hs.iter().map(|h| pts.iter().map(|p| h.eval(p).is_zero()).collect()).collect();
        let mut vertices = vec![];
        for (i, p) in pts.iter().enumerate() {
            let mut common: Vec<bool> = vec![true; pts.len()];
            for row in &inc {
                if row[i] {
                    for (c, r) in common.iter_mut().zip(row) {
                        *c &= *r;
                    }
                }
            }
            if common.iter().filter(|&&c| c).count() == 1 {
                vertices.push(p.clone());
            }
        }
        Ok(Self::assemble(dim, vertices, hs))
    }

    fn assemble(dim: usize, vertices: Vec<Vec<Rat>>, facets: Vec<Halfspace>) -> Polytope {
        let facet_vertices = facets
            .iter()
            .map(|h| {
                let mut b = Bits::new(vertices.len());
                for (i, v) in vertices.iter().enumerate() {
                    if h.eval(v).is_zero() {
                        b.set(i);
                    }
                }
                b
            })
            .collect();
        Polytope { dim, vertices, facets, facet_vertices }
    }

    /// Intersection of halfspaces; Ok(None) when empty or lower dimensional.
    pub fn from_halfspaces(dim: usize, hs: &[Halfspace]) -> Result<Option<Polytope>> {
        let mut rows: Vec<Vec<Int>> = hs
            .iter()
            .map(|h| {
                let mut r: Vec<Rat> = h.normal.iter().map(rbig).collect();
                r.push(h.offset.clone());
                primitive_of_rats(&r)
            })
            .collect();
        let mut t = vec![Int::zero(); dim + 1];
        t[dim] = Int::one();
        rows.push(t);
        let order: Vec<usize> = (0..rows.len()).collect();
        let rays = match extreme_rays(&rows, &order) {
            Ok(r) => r,
            Err(_) => return Err(Error::Unbounded),
        };
        let mut verts = vec![];
        for (y, _) in &rays {
            if y[dim].is_zero() {
                return Err(Error::Unbounded);
            }
            let t = rbig(&y[dim]);
            verts.push(y[..dim].iter().map(|x| rbig(x) / &t).collect::<Vec<Rat>>());
        }
        if verts.len() < dim + 1 {
            return Ok(None);
        }
        let base = verts[0].clone();
        let diffs: Mat = verts[1..].iter().map(|v| v.iter().zip(&base).map(|(a, b)| a - b).collect()).collect();
        if linalg::rank(&diffs) < dim {
            return Ok(None);
        }
        Polytope::from_points(&verts).map(Some)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.facets.iter().all(|h| !h.eval(x).is_negative())
    }

    pub fn all_vertices(&self) -> Bits {
        Bits::full(self.vertices.len())
    }

    /// Maximal proper faces of the face `f` (given by its vertex set).
    pub fn subfaces(&self, f: &Bits) -> Vec<Bits> {
        let mut cands: Vec<Bits> = vec![];
        for fv in &self.facet_vertices {
            let g = f.and(fv).trimmed(self.vertices.len());
            if g.is_empty() || &g == f || cands.contains(&g) {
                continue;
            }
            cands.push(g);
        }
        let maximal: Vec<Bits> = cands.iter().filter(|g| !cands.iter().any(|h| h != *g && g.is_subset(h))).cloned().collect();
        maximal
    }

    /// Pulling triangulation of a face of dimension `d`: pull the smallest
    /// vertex and cone it over the subfaces that miss it.
    pub fn face_triangulation(&self, face: &Bits, d: usize) -> Vec<Vec<usize>> {
        let mut memo = HashMap::new();
        self.pull(face, d, &mut memo)
    }

    fn pull(&self, face: &Bits, d: usize, memo: &mut HashMap<Bits, Vec<Vec<usize>>>) -> Vec<Vec<usize>> {
        if let Some(t) = memo.get(face) {
            return t.clone();
        }
        let verts: Vec<usize> = face.ones().collect();
        let out = if verts.len() == d + 1 {
            vec![verts]
        } else {
            let v = verts[0];
            let mut out = vec![];
            for g in self.subfaces(face) {
                if g.get(v) {
                    continue;
                }
                for mut s in self.pull(&g, d - 1, memo) {
                    s.insert(0, v);
                    out.push(s);
                }
            }
            out
        };
        memo.insert(face.clone(), out.clone());
        out
    }

    pub fn triangulate(&self) -> Vec<Vec<usize>> {
        self.face_triangulation(&self.all_vertices(), self.dim)
    }

    pub fn facet_triangulation(&self, facet: usize) -> Vec<Vec<usize>> {
        self.face_triangulation(&self.facet_vertices[facet], self.dim - 1)
    }

    pub fn simplex_volume(&self, s: &[usize]) -> Rat {
        simplex_volume(&s.iter().map(|&i| self.vertices[i].clone()).collect::<Vec<_>>())
    }

    pub fn volume(&self) -> Rat {
        self.triangulate().iter().fold(Rat::zero(), |a, s| a + self.simplex_volume(s))
    }

    /// Pairs of vertices spanning an edge.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let nv = self.vertices.len();
        let mut out = vec![];
        for u in 0..nv {
            for w in u + 1..nv {
                let mut common = Bits::full(nv);
                for fv in &self.facet_vertices {
                    if fv.get(u) && fv.get(w) {
                        common = common.and(fv);
                    }
                }
                if common.count() == 2 {
                    out.push((u, w));
                }
            }
        }
        out
    }

    pub fn scaled(&self, k: &Rat) -> Polytope {
        let vertices = self.vertices.iter().map(|v| v.iter().map(|x| x * k).collect()).collect();
        let facets = self.facets.iter().map(|h| Halfspace { normal: h.normal.clone(), offset: &h.offset * k }).collect();
        Polytope { dim: self.dim, vertices, facets, facet_vertices: self.facet_vertices.clone() }
    }
}

/// Euclidean volume of a full-dimensional simplex.
pub fn simplex_volume(verts: &[Vec<Rat>]) -> Rat {
    let n = verts.len() - 1;
    let m: Mat = verts[1..].iter().map(|v| v.iter().zip(&verts[0]).map(|(a, b)| a - b).collect()).collect();
    linalg::det(&m).abs() / rbig(&factorial(n))
}
