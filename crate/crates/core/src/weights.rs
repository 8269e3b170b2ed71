//! Apex regions, (α, β, γ) weights and small/medium classification.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::hull::Polytope;
use crate::lattice::{sigma_simplex_volume, LatticePolytope, VertexCone};
use crate::linalg;
use crate::rational::{factorial, factorial_u64, rbig, rvec, to_i64, Rat};
use crate::triangulation::{build_type_f, cone_counts, type_f_from_hint, BoundaryMode, ConeHint, LatticeSimplex, Origin, Point, TypeFCone};
use num_traits::Zero;
use std::collections::BTreeSet;

/// R = Conv{0, q_1, ..., q_M} relative to the apex; Q is the union of the
/// facets of R missing the origin.
#[derive(Clone, Debug)]
pub struct ApexRegion {
    pub apex: Point,
    pub generators: Vec<Point>,
    pub r: Polytope,
    /// Facets of `r` forming Q.
    pub q_facets: Vec<usize>,
    /// (n-2)-faces of Q lying on the cone boundary, as vertex sets of `r`.
    pub boundary: Vec<Bits>,
}

pub fn apex_region(cone: &VertexCone) -> Result<ApexRegion> {
    let n = cone.apex.len();
    let mut pts = vec![rvec(&vec![0; n])];
    pts.extend(cone.generators.iter().map(|g| rvec(g)));
    let r = Polytope::from_points(&pts)?;
    let q_facets: Vec<usize> = (0..r.facets.len()).filter(|&f| !r.facets[f].offset.is_zero()).collect();
    let through_origin: Vec<&Bits> = (0..r.facets.len()).filter(|f| !q_facets.contains(f)).map(|f| &r.facet_vertices[f]).collect();
    let mut seen = BTreeSet::new();
    let mut boundary = vec![];
    for &f in &q_facets {
        for g in r.subfaces(&r.facet_vertices[f]) {
            if through_origin.iter().any(|h| g.is_subset(h)) && seen.insert(g.ones().collect::<Vec<_>>()) {
                boundary.push(g);
            }
        }
    }
    Ok(ApexRegion { apex: cone.apex.clone(), generators: cone.generators.clone(), r, q_facets, boundary })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConeWeight {
    pub alpha: u64,
    pub beta: u64,
}

fn integral(x: &Rat, what: &str) -> Result<u64> {
    if !x.is_integer() || x.is_zero() {
        return Err(Error::NonIntegralWeight(format!("{what} = {x}")));
    }
    Ok(to_i64(&x.to_integer()) as u64)
}

/// α = (n-2)! vol(∂Q) and β = (n-1)! vol(Q), volumes in the lattices of the
/// faces.
pub fn weights_via_q(region: &ApexRegion) -> Result<ConeWeight> {
    let n = region.apex.len();
    if n < 2 {
        return Err(Error::InvalidArgument("weights need dimension at least 2".into()));
    }
    let r = &region.r;
    let mut beta = Rat::zero();
    for &f in &region.q_facets {
        let normal: Vec<i64> = r.facets[f].normal.iter().map(to_i64).collect();
        for s in r.facet_triangulation(f) {
            let q: Vec<Vec<Rat>> = s.iter().map(|&i| r.vertices[i].clone()).collect();
            beta += sigma_simplex_volume(&q, &normal);
        }
    }
    beta *= rbig(&factorial(n - 1));
    let mut alpha = Rat::zero();
    for g in &region.boundary {
        for s in r.face_triangulation(g, n - 2) {
            let q: Vec<Vec<Rat>> = s.iter().map(|&i| r.vertices[i].clone()).collect();
            alpha += linalg::normalized_simplex_volume(&q);
        }
    }
    Ok(ConeWeight { alpha: integral(&alpha, "alpha")?, beta: integral(&beta, "beta")? })
}

/// α = m_{i,k}(k p_i) and β = n_{i,k}(k p_i), maximized over k = 1..k_max.
pub fn weights_via_counting(p: &LatticePolytope, t: &TypeFCone, k_max: i64, mode: BoundaryMode) -> ConeWeight {
    let mut w = ConeWeight { alpha: 0, beta: 0 };
    for k in 1..=k_max.max(1) {
        let c = cone_counts(p, t, k, mode);
        let apex: Point = t.cone.apex.iter().map(|x| x * k).collect();
        w.alpha = w.alpha.max(c.m.get(&apex).copied().unwrap_or(0) as u64);
        w.beta = w.beta.max(c.n.get(&apex).copied().unwrap_or(0) as u64);
    }
    w
}

/// Type F triangulation for every vertex cone: the hint when one is given,
/// the default construction otherwise.
pub fn cone_triangulations(p: &LatticePolytope, hints: &[ConeHint]) -> Result<Vec<TypeFCone>> {
    for h in hints {
        if h.vertex_index >= p.vertices.len() {
            return Err(Error::InvalidHint(format!("vertex index {} out of range", h.vertex_index)));
        }
    }
    p.vertex_cones()
        .iter()
        .map(|c| match hints.iter().find(|h| h.vertex_index == c.vertex) {
            Some(h) => type_f_from_hint(c, h),
            None => build_type_f(c),
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct VertexReport {
    pub vertex: usize,
    pub p: Point,
    pub origin: Origin,
    pub pieces: usize,
    pub alpha: u64,
    pub beta: u64,
    /// Largest n_{i,k} at boundary points that are not vertices.
    pub gamma: u64,
    pub small: bool,
    pub medium: bool,
    pub type_f_verified: bool,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolytopeClass {
    Small { alpha: u64, beta: u64 },
    Medium { alpha: u64, beta: u64, gamma: u64 },
    Unclassified,
}

impl PolytopeClass {
    pub fn label(&self) -> &'static str {
        match self {
            PolytopeClass::Small { .. } => "small",
            PolytopeClass::Medium { .. } => "medium",
            PolytopeClass::Unclassified => "none",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub k_max: i64,
    pub mode: BoundaryMode,
    pub per_vertex: Vec<VertexReport>,
    pub class: PolytopeClass,
    pub alpha: u64,
    pub beta: u64,
    pub gamma: u64,
}

impl ClassificationReport {
    pub fn is_small(&self) -> bool {
        self.per_vertex.iter().all(|v| v.small)
    }

    pub fn is_medium(&self) -> bool {
        self.per_vertex.iter().all(|v| v.medium)
    }
}

/// Bounds of the small conditions: interior n, boundary n, boundary m.
pub fn small_bounds(n: usize) -> (u64, u64, u64) {
    (factorial_u64(n + 1), factorial_u64(n + 1) / 2, factorial_u64(n))
}

fn check_vertex(p: &LatticePolytope, t: &TypeFCone, k_max: i64, mode: BoundaryMode) -> VertexReport {
    let n = p.dim;
    let (int_bound, bd_bound, m_bound) = small_bounds(n);
    let mut r = VertexReport {
        vertex: t.cone.vertex,
        p: t.cone.apex.clone(),
        origin: t.origin.clone(),
        pieces: t.pieces.len(),
        alpha: 0,
        beta: 0,
        gamma: 0,
        small: true,
        medium: true,
        type_f_verified: true,
        failures: vec![],
    };
    for k in 1..=k_max.max(1) {
        let c = cone_counts(p, t, k, mode);
        let apex: Point = t.cone.apex.iter().map(|x| x * k).collect();
        let is_vertex = |q: &Point| p.vertices.iter().any(|v| v.iter().zip(q).all(|(a, b)| a * k == *b));
        for (q, &cnt) in &c.n {
            let cnt = cnt as u64;
            if *q == apex {
                r.beta = r.beta.max(cnt);
                continue;
            }
            if is_vertex(q) {
                continue;
            }
            let on_boundary = p.facets.iter().any(|f| f.eval(q) + (k - 1) * f.offset == 0);
            if !on_boundary {
                if cnt > int_bound {
                    r.small = false;
                    r.medium = false;
                    r.failures.push(format!("k={k} interior {q:?}: n={cnt} > {int_bound}"));
                }
                continue;
            }
            r.gamma = r.gamma.max(cnt);
            if cnt > bd_bound {
                r.small = false;
                r.failures.push(format!("k={k} boundary {q:?}: n={cnt} > {bd_bound}"));
            }
        }
        for (q, &cnt) in &c.m {
            let cnt = cnt as u64;
            if *q == apex {
                r.alpha = r.alpha.max(cnt);
                continue;
            }
            if !is_vertex(q) && cnt > m_bound {
                r.small = false;
                r.medium = false;
                r.failures.push(format!("k={k} boundary {q:?}: m={cnt} > {m_bound}"));
            }
        }
    }
    if let Err(e) = verify_type_f(p, t, k_max) {
        r.type_f_verified = false;
        r.small = false;
        r.medium = false;
        r.failures.push(e);
    }
    r
}

fn relative(t: &TypeFCone, simplices: &[LatticeSimplex], k: i64) -> BTreeSet<LatticeSimplex> {
    let shift: Point = t.cone.apex.iter().map(|x| -x * k).collect();
    simplices.iter().map(|s| s.translate(&shift)).collect()
}

/// Finitely many translation classes, and K_{i,m} is the part of K_{i,k}
/// inside m(Δ - p_i) for m < k.
pub fn verify_type_f(p: &LatticePolytope, t: &TypeFCone, k_max: i64) -> std::result::Result<(), String> {
    let classes: BTreeSet<LatticeSimplex> = t.classes().into_iter().collect();
    let levels: Vec<BTreeSet<LatticeSimplex>> = (1..=k_max.max(1)).map(|k| relative(t, &t.instantiate(p, k), k)).collect();
    for (i, level) in levels.iter().enumerate() {
        if let Some(s) = level.iter().find(|s| !classes.contains(&s.shape())) {
            return Err(format!("k={}: simplex {:?} outside the translation classes", i + 1, s.vertices));
        }
        if let Some(s) = level.iter().find(|s| !s.is_unimodular()) {
            return Err(format!("k={}: simplex {:?} is not unimodular", i + 1, s.vertices));
        }
    }
    let top = levels.last().unwrap();
    for (i, level) in levels.iter().enumerate() {
        let m = i as i64 + 1;
        let inside = |v: &Point| {
            let abs: Point = v.iter().zip(&t.cone.apex).map(|(a, b)| a + m * b).collect();
            p.contains_dilate(&abs, m)
        };
        let restricted: BTreeSet<LatticeSimplex> = top.iter().filter(|s| s.vertices.iter().all(inside)).cloned().collect();
        if &restricted != level {
            return Err(format!("k={m}: not the restriction of k={}", levels.len()));
        }
    }
    Ok(())
}

pub fn classify(p: &LatticePolytope, cones: &[TypeFCone], k_max: i64, mode: BoundaryMode) -> ClassificationReport {
    let per_vertex: Vec<VertexReport> = cones.iter().map(|t| check_vertex(p, t, k_max, mode)).collect();
    let alpha = per_vertex.iter().map(|v| v.alpha).max().unwrap_or(0);
    let beta = per_vertex.iter().map(|v| v.beta).max().unwrap_or(0);
    let gamma = per_vertex.iter().map(|v| v.gamma).max().unwrap_or(0);
    let class = if per_vertex.iter().all(|v| v.small) {
        PolytopeClass::Small { alpha, beta }
    } else if per_vertex.iter().all(|v| v.medium) {
        PolytopeClass::Medium { alpha, beta, gamma }
    } else {
        PolytopeClass::Unclassified
    };
    ClassificationReport { k_max, mode, per_vertex, class, alpha, beta, gamma }
}

pub fn classify_small(p: &LatticePolytope, cones: &[TypeFCone], k_max: i64, mode: BoundaryMode) -> ClassificationReport {
    let mut r = classify(p, cones, k_max, mode);
    if !r.is_small() {
        r.class = PolytopeClass::Unclassified;
    }
    r
}

pub fn classify_medium(p: &LatticePolytope, cones: &[TypeFCone], k_max: i64, mode: BoundaryMode) -> ClassificationReport {
    let mut r = classify(p, cones, k_max, mode);
    r.class = if r.is_medium() { PolytopeClass::Medium { alpha: r.alpha, beta: r.beta, gamma: r.gamma } } else { PolytopeClass::Unclassified };
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_polytope;
    use crate::triangulation::HintMode;

    fn octahedron() -> LatticePolytope {
        build_polytope(&[vec![2, 0, 0], vec![-2, 0, 0], vec![0, 1, 0], vec![0, -1, 0], vec![0, 0, 1], vec![0, 0, -1]]).unwrap()
    }

    #[test]
    fn q_weights() {
        let p = octahedron();
        for c in p.vertex_cones() {
            let w = weights_via_q(&apex_region(&c).unwrap()).unwrap();
            let expect = if c.apex[0] != 0 { (4, 4) } else { (4, 8) };
            assert_eq!((w.alpha, w.beta), expect, "{:?}", c.apex);
        }
        let x2 = build_polytope(&[vec![2, 0], vec![-2, 0], vec![0, 1], vec![0, -1]]).unwrap();
        let c = x2.vertex_cones().into_iter().find(|c| c.apex == vec![0, 1]).unwrap();
        let w = weights_via_q(&apex_region(&c).unwrap()).unwrap();
        assert_eq!((w.alpha, w.beta), (2, 4));
    }

    #[test]
    fn counted_weights_match_q() {
        let p = octahedron();
        for t in cone_triangulations(&p, &[]).unwrap() {
            let counted = weights_via_counting(&p, &t, 2, BoundaryMode::Literal);
            assert_eq!(counted, weights_via_q(&apex_region(&t.cone).unwrap()).unwrap());
        }
    }

    #[test]
    fn smooth_triangle_is_small() {
        let p = build_polytope(&[vec![0, 0], vec![2, 0], vec![0, 2]]).unwrap();
        let r = classify(&p, &cone_triangulations(&p, &[]).unwrap(), 3, BoundaryMode::Literal);
        assert_eq!(r.class, PolytopeClass::Small { alpha: 2, beta: 1 });
        assert!(r.per_vertex.iter().all(|v| v.type_f_verified));
    }

    #[test]
    fn layered_rhombus_is_medium() {
        let p = build_polytope(&[vec![3, 0], vec![-3, 0], vec![0, 1], vec![0, -1]]).unwrap();
        let hints: Vec<ConeHint> = [3i64, -3]
            .iter()
            .map(|&x| ConeHint {
                vertex_index: p.vertex_index(&[x, 0]).unwrap(),
                mode: HintMode::Layered,
                simplices: [1, -1].iter().map(|&s| vec![vec![x, 0], vec![x - x.signum(), 0], vec![0, s]]).collect(),
                offset: 3,
            })
            .collect();
        let r = classify(&p, &cone_triangulations(&p, &hints).unwrap(), 3, BoundaryMode::Literal);
        assert!(!r.is_small());
        let left = r.per_vertex.iter().find(|v| v.p == vec![-3, 0]).unwrap();
        assert!(left.medium && !left.small);
        assert_eq!((left.alpha, left.beta, left.gamma), (2, 2, 5));
    }
}
