//! Lattice automorphisms and the reflexivity predicates.

use super::LatticePolytope;
use crate::error::{Error, Result};
use crate::linalg::{self, Mat, Solution};
use crate::rational::{dot_i64, gcd_i64, ri, rvec, to_i64, Rat};
use num_traits::{One, Signed, Zero};
use std::collections::{HashMap, VecDeque};

/// Affine lattice map x -> g x + t preserving the polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    pub g: Vec<Vec<i64>>,
    pub t: Vec<i64>,
    pub det: i64,
    /// Image index of each vertex.
    pub perm: Vec<usize>,
}

impl Automorphism {
    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        self.g.iter().zip(&self.t).map(|(r, t)| dot_i64(r, x) + t).collect()
    }
}

struct Search<'a> {
    p: &'a LatticePolytope,
    frame: Vec<usize>,
    frame_inv: Mat,
    sig: Vec<(usize, usize)>,
    adj: Vec<Vec<bool>>,
    pair: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

impl<'a> Search<'a> {
    fn new(p: &'a LatticePolytope) -> Self {
        let nv = p.vertices.len();
        let n = p.dim;
        let mut adj = vec![vec![false; nv]; nv];
        for (a, b) in p.edges() {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        let sig = (0..nv).map(|v| (adj[v].iter().filter(|&&e| e).count(), p.facets_at(v).len())).collect();
        let pair = (0..nv).map(|a| (0..nv).map(|b| p.vertices[a].iter().zip(&p.vertices[b]).fold(0, |g, (x, y)| gcd_i64(g, x - y))).collect()).collect();
        // breadth-first frame of n+1 affinely independent vertices
        let mut order = vec![];
        let mut seen = vec![false; nv];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in 0..nv {
                if adj[v][w] && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        let mut frame = vec![order[0]];
        let mut rows: Mat = vec![];
        for &v in &order[1..] {
            let d: Vec<Rat> = p.vertices[v].iter().zip(&p.vertices[frame[0]]).map(|(a, b)| ri(a - b)).collect();
            let mut trial = rows.clone();
            trial.push(d);
            if linalg::rank(&trial) == trial.len() {
                rows = trial;
                frame.push(v);
                if frame.len() == n + 1 {
                    break;
                }
            }
        }
        let frame_inv = linalg::inverse(&linalg::transpose(&rows)).expect("frame spans");
        let index = p.vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        Search { p, frame, frame_inv, sig, adj, pair, index }
    }

    fn run(&self, visit: &mut impl FnMut(Automorphism) -> bool) {
        let mut img = vec![];
        self.rec(&mut img, visit);
    }

    fn rec(&self, img: &mut Vec<usize>, visit: &mut impl FnMut(Automorphism) -> bool) -> bool {
        let i = img.len();
        if i == self.frame.len() {
            if let Some(a) = self.solve(img) {
                return visit(a);
            }
            return true;
        }
        let fi = self.frame[i];
        for c in 0..self.p.vertices.len() {
            if self.sig[c] != self.sig[fi] || img.contains(&c) {
                continue;
            }
            let ok = (0..i).all(|j| {
                let fj = self.frame[j];
                self.adj[fi][fj] == self.adj[c][img[j]] && self.pair[fi][fj] == self.pair[c][img[j]]
            });
            if !ok {
                continue;
            }
            img.push(c);
            let go_on = self.rec(img, visit);
            img.pop();
            if !go_on {
                return false;
            }
        }
        true
    }

    fn solve(&self, img: &[usize]) -> Option<Automorphism> {
        let p = self.p;
        let n = p.dim;
        let w: Mat = (1..=n).map(|j| p.vertices[img[j]].iter().zip(&p.vertices[img[0]]).map(|(a, b)| ri(a - b)).collect()).collect();
        let g = linalg::mat_mul(&linalg::transpose(&w), &self.frame_inv);
        if g.iter().flatten().any(|x| !x.is_integer()) {
            return None;
        }
        let gi: Vec<Vec<i64>> = g.iter().map(|r| r.iter().map(|x| to_i64(&x.to_integer())).collect()).collect();
        let det = linalg::det_i64(&gi);
        if det.abs() != One::one() {
            return None;
        }
        let f0 = &p.vertices[self.frame[0]];
        let t: Vec<i64> = gi.iter().zip(&p.vertices[img[0]]).map(|(r, y)| y - dot_i64(r, f0)).collect();
        let mut a = Automorphism { g: gi, t, det: to_i64(&det), perm: vec![] };
        let mut perm = Vec::with_capacity(p.vertices.len());
        for v in &p.vertices {
            perm.push(*self.index.get(&a.apply(v))?);
        }
        a.perm = perm;
        Some(a)
    }
}

/// All lattice automorphisms (determinant ±1, recorded in `det`).
pub fn lattice_automorphisms(p: &LatticePolytope) -> Vec<Automorphism> {
    let mut out = vec![];
    Search::new(p).run(&mut |a| {
        out.push(a);
        true
    });
    out
}

/// Fixed set of a collection of affine maps: None if it is not a single point.
fn fixed_point(eqs: &Mat, rhs: &[Rat]) -> Option<Vec<Rat>> {
    match linalg::solve(eqs, rhs) {
        Solution::Unique(x) => Some(x),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reflexivity {
    pub weakly_reflexive: bool,
    /// Common lattice distance of all facets from the center.
    pub c: Option<i64>,
    /// The point equidistant from all facets, when it exists.
    pub center: Option<Vec<Rat>>,
    pub reflexive: bool,
    pub symmetric: bool,
    /// Unique fixed point of the orientation-preserving automorphisms.
    pub fixed_point: Option<Vec<Rat>>,
}

pub fn classify_reflexivity(p: &LatticePolytope) -> Reflexivity {
    let n = p.dim;
    // <v_i, x> - c = -a_i
    let a: Mat = p
        .facets
        .iter()
        .map(|f| {
            let mut r = rvec(&f.normal);
            r.push(ri(-1));
            r
        })
        .collect();
    let b: Vec<Rat> = p.facets.iter().map(|f| ri(-f.offset)).collect();
    let (center, c) = match linalg::solve(&a, &b) {
        Solution::Unique(x) => (Some(x[..n].to_vec()), Some(x[n].clone())),
        _ => (None, None),
    };
    let weakly = match (&center, &c) {
        (Some(x), Some(c)) => x.iter().all(|v| v.is_integer()) && c.is_positive(),
        _ => false,
    };
    let c = if weakly { c.map(|c| to_i64(&c.to_integer())) } else { None };

    let mut eqs: Mat = vec![];
    let mut rhs: Vec<Rat> = vec![];
    let mut fixed = None;
    Search::new(p).run(&mut |aut| {
        if aut.det != 1 {
            return true;
        }
        for (i, row) in aut.g.iter().enumerate() {
            let mut r = rvec(row);
            r[i] -= Rat::one();
            eqs.push(r);
            rhs.push(ri(-aut.t[i]));
        }
        if linalg::rank(&eqs) == n {
            fixed = fixed_point(&eqs, &rhs);
            return false;
        }
        // keep the system small
        let mut red = eqs
            .iter()
            .cloned()
            .zip(rhs.iter().cloned())
            .map(|(mut r, b)| {
                r.push(b);
                r
            })
            .collect::<Mat>();
        let piv = linalg::rref(&mut red);
        red.truncate(piv.len());
        eqs = red.iter().map(|r| r[..n].to_vec()).collect();
        rhs = red.iter().map(|r| r[n].clone()).collect();
        true
    });
    let symmetric = fixed.as_ref().is_some_and(|x: &Vec<Rat>| x.iter().all(|v| v.is_integer()));
    Reflexivity { weakly_reflexive: weakly, c, center, reflexive: weakly && c == Some(1), symmetric, fixed_point: fixed }
}

/// Checks that the polytope is symmetric with its fixed point at the origin.
pub fn require_symmetric_origin(p: &LatticePolytope) -> Result<Reflexivity> {
    let r = classify_reflexivity(p);
    match &r.fixed_point {
        Some(x) if r.symmetric && x.iter().all(|v| v.is_zero()) => Ok(r),
        _ => Err(Error::NotSymmetricOrigin),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_polytope;

    #[test]
    fn segment_group() {
        let p = build_polytope(&[vec![-1], vec![1]]).unwrap();
        let g = lattice_automorphisms(&p);
        assert_eq!(g.len(), 2);
        assert!(g.iter().any(|a| a.g == vec![vec![-1]] && a.t == vec![0]));
    }

    #[test]
    fn cross_polytope_group() {
        let p = build_polytope(&[vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]).unwrap();
        let g = lattice_automorphisms(&p);
        assert_eq!(g.len(), 8);
        assert!(g.iter().any(|a| a.g == vec![vec![-1, 0], vec![0, -1]]));
        assert!(g.iter().any(|a| a.g == vec![vec![0, 1], vec![1, 0]]));
        let r = classify_reflexivity(&p);
        assert!(r.weakly_reflexive && r.reflexive && r.symmetric);
        assert_eq!(r.c, Some(1));
    }

    #[test]
    fn triangle_rotations() {
        let p = build_polytope(&[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        let g = lattice_automorphisms(&p);
        assert_eq!(g.len(), 6);
        let sl: Vec<_> = g.iter().filter(|a| a.det == 1).collect();
        assert_eq!(sl.len(), 3);
        let r = classify_reflexivity(&p);
        assert!(!r.weakly_reflexive && !r.symmetric);
        assert_eq!(r.fixed_point, Some(vec![crate::rational::rat(1, 3), crate::rational::rat(1, 3)]));
    }

    #[test]
    fn octahedron_is_weakly_reflexive() {
        let p = build_polytope(&[vec![2, 0, 0], vec![-2, 0, 0], vec![0, 1, 0], vec![0, -1, 0], vec![0, 0, 1], vec![0, 0, -1]]).unwrap();
        let r = classify_reflexivity(&p);
        assert!(r.weakly_reflexive && r.symmetric && !r.reflexive);
        assert_eq!(r.c, Some(2));
        assert!(require_symmetric_origin(&p).is_ok());
        let shifted = p.translate(&[1, 0, 0]);
        assert_eq!(require_symmetric_origin(&shifted), Err(Error::NotSymmetricOrigin));
        assert!(classify_reflexivity(&shifted).symmetric);
    }
}
