//! Dilation-invariant triangulations of vertex cones.
//!
//! A cone is split into unimodular simplicial pieces around the apex. Each
//! piece is triangulated by a fixed periodic pattern, so that the cone
//! triangulation at kp_i is the same for every k.

use super::simplex::{matched_facets, LatticeSimplex, Point};
use super::standard::{chamber_to_cone, kuhn_chamber};
use crate::error::{Error, Result};
use crate::hull::Polytope;
use crate::lattice::{build_polytope, LatticePolytope, VertexCone};
use crate::linalg::{self, Mat};
use crate::rational::{dot_i64, factorial, rat_ceil, rbig, ri, rvec, to_i64, Rat};
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Piece {
    /// Standard triangulation of cone(u_1, ..., u_n): the Kuhn triangulation
    /// in the coordinates y_j = c_1 + ... + c_j of x = Σ c_j u_j.
    Kuhn { u: Vec<Point> },
    /// Planar pattern in cone(a, b). Layer j has bottom row j b + m a and top
    /// row (j+1) b + m a; the first `offset` triangles of each layer fan out
    /// from the top-left point, the rest alternate.
    Layered { a: Point, b: Point, offset: i64 },
}

impl Piece {
    pub fn generators(&self) -> Vec<Point> {
        match self {
            Piece::Kuhn { u } => u.clone(),
            Piece::Layered { a, b, .. } => vec![a.clone(), b.clone()],
        }
    }

    /// The simplex at the apex, relative to the apex.
    pub fn apex_simplex(&self) -> LatticeSimplex {
        let mut v = self.generators();
        v.push(vec![0; v[0].len()]);
        LatticeSimplex::new(v)
    }

    fn inverse(&self) -> Mat {
        let g = self.generators();
        let cols: Mat = linalg::transpose(&g.iter().map(|u| rvec(u)).collect::<Vec<_>>());
        linalg::inverse(&cols).expect("unimodular piece")
    }

    /// Every simplex of the piece whose vertices can lie in the window (a
    /// polytope given by its vertices, relative to the apex), plus `margin`
    /// extra layers.
    pub fn simplices(&self, window: &[Vec<Rat>], margin: i64) -> Vec<LatticeSimplex> {
        let inv = self.inverse();
        let coords: Vec<Vec<Rat>> = window.iter().map(|w| linalg::mat_vec(&inv, w)).collect();
        match self {
            Piece::Kuhn { u } => {
                let level = coords.iter().map(|c| c.iter().fold(Rat::zero(), |a, b| a + b)).max().unwrap();
                let top = to_i64(&rat_ceil(&level)).max(0) + margin;
                kuhn_chamber(u.len(), top).into_iter().map(|path| LatticeSimplex::new(path.iter().map(|y| chamber_to_cone(y, u)).collect())).collect()
            }
            Piece::Layered { a, b, offset } => {
                let ma = coords.iter().map(|c| c[0].clone()).max().unwrap();
                let mb = coords.iter().map(|c| c[1].clone()).max().unwrap();
                let layers = to_i64(&rat_ceil(&mb)).max(0) + margin;
                let cols = to_i64(&rat_ceil(&ma)).max(0) + margin;
                let at = |m: i64, j: i64| -> Point { a.iter().zip(b).map(|(x, y)| m * x + j * y).collect() };
                let mut out = vec![];
                for j in 0..layers {
                    let t = |m: i64| at(m, j + 1);
                    let bt = |m: i64| at(m, j);
                    for i in 0..*offset {
                        out.push(LatticeSimplex::new(vec![t(0), bt(i), bt(i + 1)]));
                    }
                    for m in 0..=cols {
                        out.push(LatticeSimplex::new(vec![t(m), t(m + 1), bt(m + offset)]));
                        out.push(LatticeSimplex::new(vec![t(m + 1), bt(m + offset), bt(m + offset + 1)]));
                    }
                }
                out
            }
        }
    }

    /// Representatives of the translation classes of the piece.
    pub fn classes(&self) -> Vec<LatticeSimplex> {
        let mut out = BTreeSet::new();
        match self {
            Piece::Kuhn { u } => {
                let n = u.len();
                let mut perm: Vec<usize> = (0..n).collect();
                permutations(&mut perm, 0, &mut |p| {
                    let mut y = vec![0i64; n];
                    let mut verts = vec![chamber_to_cone(&y, u)];
                    for &j in p {
                        y[j] += 1;
                        verts.push(chamber_to_cone(&y, u));
                    }
                    out.insert(LatticeSimplex::new(verts).shape());
                });
            }
            Piece::Layered { a, b, offset } => {
                // one layer wide enough for the fan and both band shapes
                let far: Point = a.iter().map(|x| x * (offset + 2)).collect();
                let w = vec![vec![Rat::zero(); 2], rvec(b), rvec(&far)];
                for s in self.simplices(&w, 0) {
                    out.insert(s.shape());
                }
            }
        }
        out.into_iter().collect()
    }
}

fn permutations(p: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
    if i == p.len() {
        f(p);
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permutations(p, i + 1, f);
        p.swap(i, j);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    Default,
    Hint,
}

#[derive(Clone, Debug)]
pub struct TypeFCone {
    pub cone: VertexCone,
    pub pieces: Vec<Piece>,
    pub origin: Origin,
}

/// How a hint describes the pieces at one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HintMode {
    ApexRegion,
    Layered,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeHint {
    pub vertex_index: usize,
    pub mode: HintMode,
    /// Absolute coordinates, the apex included. In layered mode each entry is
    /// [apex, apex + a, apex + b].
    pub simplices: Vec<Vec<Point>>,
    pub offset: i64,
}

const SEARCH_BUDGET: usize = 20_000;

impl TypeFCone {
    /// Apex region R in absolute coordinates.
    pub fn apex_region(&self) -> Vec<LatticeSimplex> {
        self.pieces.iter().map(|p| p.apex_simplex().translate(&self.cone.apex)).collect()
    }

    pub fn classes(&self) -> Vec<LatticeSimplex> {
        let mut out: BTreeSet<LatticeSimplex> = BTreeSet::new();
        for p in &self.pieces {
            out.extend(p.classes());
        }
        out.into_iter().collect()
    }

    /// Cone simplices (relative to the apex) that may meet the window.
    pub fn window_simplices(&self, window: &[Vec<Rat>], margin: i64) -> Vec<LatticeSimplex> {
        let mut out = BTreeSet::new();
        for p in &self.pieces {
            out.extend(p.simplices(window, margin));
        }
        out.into_iter().collect()
    }

    /// Vertices of k(Δ - p_i).
    pub fn window(&self, p: &LatticePolytope, k: i64) -> Vec<Vec<Rat>> {
        p.vertices.iter().map(|v| rvec(&v.iter().zip(&self.cone.apex).map(|(a, b)| k * (a - b)).collect::<Vec<_>>())).collect()
    }

    /// K_{i,k}: simplices of the cone triangulation at k p_i contained in kΔ,
    /// in absolute coordinates.
    pub fn instantiate(&self, p: &LatticePolytope, k: i64) -> Vec<LatticeSimplex> {
        self.in_dilate(p, k, 0).0
    }

    /// (simplices inside kΔ, simplices of the wider search band), absolute.
    pub(crate) fn in_dilate(&self, p: &LatticePolytope, k: i64, margin: i64) -> (Vec<LatticeSimplex>, Vec<LatticeSimplex>) {
        let shift: Point = self.cone.apex.iter().map(|x| x * k).collect();
        let all: Vec<LatticeSimplex> = self.window_simplices(&self.window(p, k), margin).into_iter().map(|s| s.translate(&shift)).collect();
        let inside = all.iter().filter(|s| s.vertices.iter().all(|v| p.contains_dilate(v, k))).cloned().collect();
        (inside, all)
    }

    /// Whether a face (absolute, at dilation k) lies on a facet of the cone.
    pub fn on_cone_boundary(&self, face: &LatticeSimplex, k: i64) -> bool {
        let rel: Vec<Point> = face.vertices.iter().map(|v| v.iter().zip(&self.cone.apex).map(|(a, b)| a - k * b).collect()).collect();
        self.cone.facet_normals.iter().any(|nu| rel.iter().all(|v| dot_i64(nu, v) == 0))
    }
}

/// Default construction: unimodular triangulation of Q = Conv{0, generators}
/// through all its lattice points, then the simplices at the apex.
pub fn build_type_f(cone: &VertexCone) -> Result<TypeFCone> {
    let n = cone.apex.len();
    let mut qv = cone.generators.clone();
    qv.push(vec![0; n]);
    let q = build_polytope(&qv)?;
    let vertex_set: BTreeSet<Point> = q.vertices.iter().cloned().collect();
    let mut points: Vec<Point> = q.vertices.clone();
    points.extend(q.lattice_points(1).into_iter().map(|p| p.coords).filter(|c| !vertex_set.contains(c)));
    let origin = points.iter().position(|p| p.iter().all(|&x| x == 0)).unwrap();
    let mut budget = SEARCH_BUDGET;
    let mut last_err = None;
    let mut found = None;
    search(&points, q.vertices.len(), &mut budget, &mut |simplices| {
        let pieces: Vec<Piece> = simplices
            .iter()
            .filter(|s| s.contains(&origin))
            .map(|s| {
                let mut u: Vec<Point> = s.iter().filter(|&&i| i != origin).map(|&i| points[i].clone()).collect();
                u.sort();
                Piece::Kuhn { u }
            })
            .collect();
        match validate_fan(cone, &pieces) {
            Ok(()) => {
                found = Some(pieces);
                true
            }
            Err(e) => {
                last_err = Some(e);
                false
            }
        }
    });
    match (found, last_err) {
        (Some(pieces), _) => Ok(TypeFCone { cone: cone.clone(), pieces, origin: Origin::Default }),
        (None, Some(e)) => Err(Error::BoundaryNotSimplicial(e)),
        (None, None) => Err(Error::NoUnimodularTriangulationFound(cone.vertex)),
    }
}

/// Validates a user-supplied apex region or layered pattern.
pub fn type_f_from_hint(cone: &VertexCone, hint: &ConeHint) -> Result<TypeFCone> {
    let n = cone.apex.len();
    let bad = |m: String| Error::InvalidHint(format!("vertex {}: {m}", hint.vertex_index));
    if hint.mode == HintMode::Layered && n != 2 {
        return Err(bad("layered pattern needs dimension 2".into()));
    }
    if hint.offset < 0 {
        return Err(bad("negative offset".into()));
    }
    let mut pieces = vec![];
    for s in &hint.simplices {
        if s.len() != n + 1 || s.iter().any(|v| v.len() != n) {
            return Err(bad(format!("simplex {s:?} has the wrong shape")));
        }
        let rel: Vec<Point> = s.iter().map(|v| v.iter().zip(&cone.apex).map(|(a, b)| a - b).collect()).collect();
        let Some(ai) = rel.iter().position(|v| v.iter().all(|&x| x == 0)) else {
            return Err(bad(format!("simplex {s:?} misses the apex")));
        };
        if !LatticeSimplex::new(rel.clone()).is_unimodular() {
            return Err(bad(format!("simplex {s:?} is not unimodular")));
        }
        let piece = match hint.mode {
            HintMode::ApexRegion => {
                let mut u: Vec<Point> = rel.iter().enumerate().filter(|&(i, _)| i != ai).map(|(_, v)| v.clone()).collect();
                u.sort();
                Piece::Kuhn { u }
            }
            HintMode::Layered => {
                if ai != 0 {
                    return Err(bad("layered simplices are listed as [apex, apex + a, apex + b]".into()));
                }
                Piece::Layered { a: rel[1].clone(), b: rel[2].clone(), offset: hint.offset }
            }
        };
        pieces.push(piece);
    }
    validate_fan(cone, &pieces).map_err(bad)?;
    Ok(TypeFCone { cone: cone.clone(), pieces, origin: Origin::Hint })
}

/// The simplicial cones of the pieces tile the vertex cone: generators lie in
/// the cone, the truncated volumes add up, and facets through the apex are
/// matched or lie on the cone boundary.
pub fn validate_fan(cone: &VertexCone, pieces: &[Piece]) -> std::result::Result<(), String> {
    let n = cone.apex.len();
    if pieces.is_empty() {
        return Err("no pieces".into());
    }
    let phi: Vec<i64> = (0..n).map(|i| cone.facet_normals.iter().map(|v| v[i]).sum()).collect();
    for p in pieces {
        for u in p.generators() {
            if cone.facet_normals.iter().any(|v| dot_i64(v, &u) < 0) || dot_i64(&phi, &u) <= 0 {
                return Err(format!("direction {u:?} leaves the cone"));
            }
        }
    }
    let section = |g: &Point| -> Vec<Rat> { g.iter().map(|x| ri(*x) / ri(dot_i64(&phi, g))).collect() };
    let mut pts = vec![vec![Rat::zero(); n]];
    pts.extend(cone.generators.iter().map(section));
    let target = Polytope::from_points(&pts).map_err(|e| e.to_string())?.volume();
    let mut total = Rat::zero();
    for p in pieces {
        let g = p.generators();
        let det = linalg::det_i64(&g).abs();
        let denom = g.iter().fold(rbig(&factorial(n)), |a, u| a * ri(dot_i64(&phi, u)));
        total += rbig(&det) / denom;
    }
    if total != target {
        return Err(format!("pieces cover volume {total} of {target}"));
    }
    let simplices: Vec<LatticeSimplex> = pieces.iter().map(|p| p.apex_simplex()).collect();
    let zero = vec![0i64; n];
    let ok = matched_facets(&simplices, |f| !f.has_vertex(&zero) || cone.facet_normals.iter().any(|v| f.vertices.iter().all(|u| dot_i64(v, u) == 0)));
    if !ok {
        return Err("pieces do not meet face to face".into());
    }
    Ok(())
}

/// Placing/stellar insertion of `points` (vertices of Q first) with
/// backtracking over the order of the remaining points. `accept` is called on
/// every complete unimodular triangulation until it returns true.
fn search(points: &[Point], nvert: usize, budget: &mut usize, accept: &mut impl FnMut(&[Vec<usize>]) -> bool) -> bool {
    let mut simplices = vec![];
    for i in 0..nvert {
        insert(points, &mut simplices, i);
    }
    let mut rest: Vec<usize> = (nvert..points.len()).collect();
    dfs(points, &simplices, &mut rest, budget, accept)
}

fn dfs(points: &[Point], simplices: &[Vec<usize>], rest: &mut Vec<usize>, budget: &mut usize, accept: &mut impl FnMut(&[Vec<usize>]) -> bool) -> bool {
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    // a non-unimodular simplex without remaining points can no longer be refined
    for s in simplices {
        if !simplex_of(points, s).is_unimodular() && !rest.iter().any(|&r| simplex_of(points, s).contains(&rvec(&points[r]))) {
            return false;
        }
    }
    if rest.is_empty() {
        return accept(simplices);
    }
    for idx in 0..rest.len() {
        let r = rest.remove(idx);
        let mut next = simplices.to_vec();
        insert(points, &mut next, r);
        let done = dfs(points, &next, rest, budget, accept);
        rest.insert(idx, r);
        if done {
            return true;
        }
        if *budget == 0 {
            return false;
        }
    }
    false
}

fn simplex_of(points: &[Point], s: &[usize]) -> LatticeSimplex {
    LatticeSimplex::new(s.iter().map(|&i| points[i].clone()).collect())
}

fn insert(points: &[Point], simplices: &mut Vec<Vec<usize>>, p: usize) {
    let n = points[0].len();
    if simplices.is_empty() {
        // the first simplex appears once n+1 independent points are present
        let mut pending: Vec<usize> = (0..p).collect();
        pending.push(p);
        let mut basis: Vec<usize> = vec![];
        for &i in &pending {
            let mut trial = basis.clone();
            trial.push(i);
            let m: Mat = trial[1..].iter().map(|&j| points[j].iter().zip(&points[trial[0]]).map(|(a, b)| ri(a - b)).collect()).collect();
            if linalg::rank(&m) == trial.len() - 1 {
                basis = trial;
            }
        }
        if basis.len() == n + 1 {
            basis.sort();
            simplices.push(basis.clone());
            for i in pending {
                if !basis.contains(&i) {
                    insert(points, simplices, i);
                }
            }
        }
        return;
    }
    let x = rvec(&points[p]);
    let mut containing = vec![];
    for (si, s) in simplices.iter().enumerate() {
        let b = simplex_of(points, s);
        // barycentric coordinates follow the sorted vertex order of b
        let l = b.barycentric(&x);
        if l.iter().all(|v| !v.is_negative()) {
            let order: Vec<usize> = b.vertices.iter().map(|v| *s.iter().find(|&&i| &points[i] == v).unwrap()).collect();
            containing.push((si, order, l));
        }
    }
    if !containing.is_empty() {
        let mut add = vec![];
        let drop: BTreeSet<usize> = containing.iter().map(|c| c.0).collect();
        for (_, order, l) in containing {
            for (j, lj) in l.iter().enumerate() {
                if lj.is_positive() {
                    let mut t = order.clone();
                    t[j] = p;
                    t.sort();
                    add.push(t);
                }
            }
        }
        let mut kept: Vec<Vec<usize>> = simplices.iter().enumerate().filter(|(i, _)| !drop.contains(i)).map(|(_, s)| s.clone()).collect();
        kept.extend(add);
        *simplices = kept;
        return;
    }
    // outside: cone over the visible boundary facets
    let mut faces: std::collections::HashMap<Vec<usize>, Vec<usize>> = std::collections::HashMap::new();
    for s in simplices.iter() {
        for j in 0..s.len() {
            let mut f = s.clone();
            let o = f.remove(j);
            faces.entry(f).or_default().push(o);
        }
    }
    let mut add = vec![];
    for (f, opp) in faces {
        if opp.len() != 1 {
            continue;
        }
        let face = simplex_of(points, &f);
        let (a, b) = super::simplex::facet_hyperplane(&face);
        let val = |q: &Point| a.iter().zip(q).fold(b.clone(), |s, (x, y)| s + x * ri(*y));
        let so = val(&points[opp[0]]);
        let sp = val(&points[p]);
        if (so.is_positive() && sp.is_negative()) || (so.is_negative() && sp.is_positive()) {
            let mut t = f.clone();
            t.push(p);
            t.sort();
            add.push(t);
        }
    }
    simplices.extend(add);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_polytope;

    fn cone_of(vertices: &[Vec<i64>], apex: &[i64]) -> (LatticePolytope, VertexCone) {
        let p = build_polytope(vertices).unwrap();
        let i = p.vertex_index(apex).unwrap();
        let c = p.vertex_cones()[i].clone();
        (p, c)
    }

    fn rel(t: &TypeFCone) -> Vec<LatticeSimplex> {
        let neg: Vec<i64> = t.cone.apex.iter().map(|x| -x).collect();
        let mut r: Vec<LatticeSimplex> = t.apex_region().iter().map(|s| s.translate(&neg)).collect();
        r.sort();
        r
    }

    #[test]
    fn two_triangle_cone() {
        let (_, c) = cone_of(&[vec![0, 0], vec![4, 2], vec![4, -2]], &[0, 0]);
        let t = build_type_f(&c).unwrap();
        let want = vec![LatticeSimplex::new(vec![vec![0, 0], vec![1, 0], vec![2, -1]]), LatticeSimplex::new(vec![vec![0, 0], vec![1, 0], vec![2, 1]])];
        assert_eq!(rel(&t), want);
    }

    #[test]
    fn unimodular_cone_has_one_class_per_order() {
        let (p, c) = cone_of(&[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], &[0, 0, 0]);
        let t = build_type_f(&c).unwrap();
        assert_eq!(t.pieces.len(), 1);
        assert_eq!(t.classes().len(), 6);
        let k3 = t.instantiate(&p, 3);
        assert_eq!(k3.len(), 27);
        let std = super::super::standard::standard_simplex_triangulation(3, 3).unwrap();
        let mut a = k3.clone();
        a.sort();
        let mut b = std.simplices.clone();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn octahedron_apex_regions() {
        let v = vec![vec![2, 0, 0], vec![-2, 0, 0], vec![0, 1, 0], vec![0, -1, 0], vec![0, 0, 1], vec![0, 0, -1]];
        let (_, c) = cone_of(&v, &[2, 0, 0]);
        let t = build_type_f(&c).unwrap();
        assert_eq!(t.pieces.len(), 4);
        assert!(rel(&t).iter().all(|s| s.has_vertex(&[-1, 0, 0])));
        let (_, c) = cone_of(&v, &[0, 0, 1]);
        assert_eq!(build_type_f(&c).unwrap().pieces.len(), 8);
    }

    #[test]
    fn layered_hint_and_classes() {
        let v = vec![vec![-3, 0], vec![3, 0], vec![0, -1], vec![0, 1]];
        let (p, c) = cone_of(&v, &[3, 0]);
        let hint = ConeHint {
            vertex_index: c.vertex,
            mode: HintMode::Layered,
            simplices: vec![vec![vec![3, 0], vec![2, 0], vec![0, 1]], vec![vec![3, 0], vec![2, 0], vec![0, -1]]],
            offset: 3,
        };
        let t = type_f_from_hint(&c, &hint).unwrap();
        let classes = t.classes();
        for k in 1..=4 {
            for s in t.instantiate(&p, k) {
                assert!(s.is_unimodular());
                assert!(classes.contains(&s.shape()));
            }
        }
        let k3 = t.instantiate(&p, 3);
        assert_eq!(k3.iter().filter(|s| s.has_vertex(&[6, 1])).count(), 5);
    }

    #[test]
    fn hints_are_validated() {
        let v = vec![vec![-3, 0], vec![3, 0], vec![0, -1], vec![0, 1]];
        let (_, c) = cone_of(&v, &[3, 0]);
        let half = ConeHint { vertex_index: c.vertex, mode: HintMode::ApexRegion, simplices: vec![vec![vec![3, 0], vec![2, 0], vec![0, 1]]], offset: 0 };
        assert!(matches!(type_f_from_hint(&c, &half), Err(Error::InvalidHint(_))));
        let fat = ConeHint { simplices: vec![vec![vec![3, 0], vec![0, 1], vec![0, -1]]], ..half };
        assert!(matches!(type_f_from_hint(&c, &fat), Err(Error::InvalidHint(_))));
    }
}
