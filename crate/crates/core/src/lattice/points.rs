use super::LatticePolytope;
use crate::hull::Polytope;
use crate::rational::{ceil_div, floor_div, to_i64, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointKind {
    Interior,
    Boundary,
    Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePoint {
    pub coords: Vec<i64>,
    pub kind: PointKind,
}

/// Number of lattice points and their coordinate sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tally {
    pub count: i128,
    pub sum: Vec<i128>,
}

/// Slab enumerator: level j bounds coordinate j given the earlier ones,
/// using the facets of the projection onto the first j+1 coordinates.
pub struct Enumerator {
    n: usize,
    // levels[j] = [(coefficients on x_0..=x_j, offset)], last coefficient nonzero
    levels: Vec<Vec<(Vec<i64>, i64)>>,
}

impl Enumerator {
    pub fn new(p: &LatticePolytope) -> Self {
        let n = p.dim;
        let mut levels = vec![];
        for j in 1..=n {
            let cons: Vec<(Vec<i64>, i64)> = if j == n {
                p.facets.iter().map(|f| (f.normal.clone(), f.offset)).collect()
            } else {
                let proj: Vec<Vec<Rat>> = p.poly.vertices.iter().map(|v| v[..j].to_vec()).collect();
                let q = Polytope::from_points(&proj).expect("projection of a full-dimensional polytope");
                q.facets.iter().map(|h| (h.normal.iter().map(to_i64).collect(), to_i64(&h.offset.to_integer()))).collect()
            };
            levels.push(cons.into_iter().filter(|(a, _)| a[j - 1] != 0).collect());
        }
        Enumerator { n, levels }
    }

    fn bounds(&self, d: usize, partial: &[i64]) -> (i64, i64) {
        let mut lo = i64::MIN;
        let mut hi = i64::MAX;
        for ((a, _), s) in self.levels[d].iter().zip(partial) {
            let c = a[d];
            match c {
                1 => lo = lo.max(-s),
                -1 => hi = hi.min(*s),
                c if c > 0 => lo = lo.max(ceil_div(-s, c)),
                c => hi = hi.min(floor_div(*s, -c)),
            }
        }
        (lo, hi)
    }

    /// Calls `f(prefix, lo, hi)` for every prefix of length n-1 with a
    /// nonempty range lo..=hi of the last coordinate in kΔ.
    pub fn walk(&self, k: i64, f: &mut impl FnMut(&[i64], i64, i64)) {
        let n = self.n;
        let mut bufs: Vec<Vec<Vec<i64>>> = (0..n).map(|_| self.levels.iter().map(|l| vec![0i64; l.len()]).collect()).collect();
        for (l, lev) in self.levels.iter().enumerate() {
            for (c, (_, off)) in lev.iter().enumerate() {
                bufs[0][l][c] = off * k;
            }
        }
        let mut x = vec![0i64; n];
        self.rec(0, &mut x, &mut bufs, f);
    }

    fn rec(&self, d: usize, x: &mut Vec<i64>, bufs: &mut Vec<Vec<Vec<i64>>>, f: &mut impl FnMut(&[i64], i64, i64)) {
        let (lo, hi) = self.bounds(d, &bufs[d][d]);
        if lo > hi {
            return;
        }
        if d == self.n - 1 {
            f(&x[..d], lo, hi);
            return;
        }
        let (cur, rest) = bufs.split_at_mut(d + 1);
        let cur = &cur[d];
        let next = &mut rest[0];
        for l in d + 1..self.n {
            for (c, (a, _)) in self.levels[l].iter().enumerate() {
                next[l][c] = cur[l][c] + a[d] * lo;
            }
        }
        for v in lo..=hi {
            x[d] = v;
            self.rec(d + 1, x, bufs, f);
            let next = &mut bufs[d + 1];
            for l in d + 1..self.n {
                for (c, (a, _)) in self.levels[l].iter().enumerate() {
                    next[l][c] += a[d];
                }
            }
        }
    }

    /// Count and coordinate sum of kΔ ∩ Z^n, summing the last coordinate arithmetically.
    pub fn tally(&self, k: i64) -> Tally {
        let n = self.n;
        let mut count: i128 = 0;
        let mut sum = vec![0i128; n];
        self.walk(k, &mut |prefix, lo, hi| {
            let c = (hi - lo + 1) as i128;
            count += c;
            for (s, &p) in sum.iter_mut().zip(prefix) {
                *s += p as i128 * c;
            }
            sum[n - 1] += (lo as i128 + hi as i128) * c / 2;
        });
        Tally { count, sum }
    }

    pub fn count(&self, k: i64) -> i128 {
        let mut count: i128 = 0;
        self.walk(k, &mut |_, lo, hi| count += (hi - lo + 1) as i128);
        count
    }

    pub fn points(&self, p: &LatticePolytope, k: i64) -> Vec<LatticePoint> {
        let mut out = vec![];
        let verts: Vec<Vec<i64>> = p.vertices.iter().map(|v| v.iter().map(|x| x * k).collect()).collect();
        self.walk(k, &mut |prefix, lo, hi| {
            for t in lo..=hi {
                let mut c = prefix.to_vec();
                c.push(t);
                let on_boundary = p.facets.iter().any(|f| crate::rational::dot_i64(&f.normal, &c) + k * f.offset == 0);
                let kind = if !on_boundary {
                    PointKind::Interior
                } else if verts.contains(&c) {
                    PointKind::Vertex
                } else {
                    PointKind::Boundary
                };
                out.push(LatticePoint { coords: c, kind });
            }
        });
        out
    }
}

#[cfg(test)]
mod tests {
    use crate::lattice::{build_polytope, PointKind};

    fn brute(p: &crate::lattice::LatticePolytope, k: i64, r: i64) -> usize {
        let n = p.dim;
        let mut cnt = 0;
        let mut x = vec![-r; n];
        loop {
            if p.contains_dilate(&x, k) {
                cnt += 1;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return cnt;
                }
                x[i] += 1;
                if x[i] <= r {
                    break;
                }
                x[i] = -r;
                i += 1;
            }
        }
    }

    #[test]
    fn counts_match_bounding_box_scan() {
        let polys = [
            build_polytope(&[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap(),
            build_polytope(&[vec![2, 0], vec![-2, 0], vec![0, 1], vec![0, -1]]).unwrap(),
            build_polytope(&[vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 2]]).unwrap(),
            build_polytope(&[vec![2, 0, 0], vec![-2, 0, 0], vec![0, 1, 0], vec![0, -1, 0], vec![0, 0, 1], vec![0, 0, -1]]).unwrap(),
            build_polytope(&[vec![0, 0, 0], vec![3, 1, 0], vec![1, 2, 0], vec![1, 1, 3]]).unwrap(),
        ];
        for p in &polys {
            let e = p.enumerator();
            for k in 1..=3 {
                assert_eq!(e.count(k) as usize, brute(p, k, 3 * k + 1), "{:?} k={k}", p.vertices);
                assert_eq!(p.lattice_points(k).len(), e.count(k) as usize);
            }
        }
    }

    #[test]
    fn classification_and_order() {
        let x2 = build_polytope(&[vec![2, 0], vec![-2, 0], vec![0, 1], vec![0, -1]]).unwrap();
        let pts = x2.lattice_points(1);
        let coords: Vec<Vec<i64>> = pts.iter().map(|p| p.coords.clone()).collect();
        assert_eq!(coords, vec![vec![-2, 0], vec![-1, 0], vec![0, -1], vec![0, 0], vec![0, 1], vec![1, 0], vec![2, 0]]);
        let kinds: Vec<PointKind> = pts.iter().map(|p| p.kind).collect();
        assert_eq!(kinds.iter().filter(|&&k| k == PointKind::Vertex).count(), 4);
        assert_eq!(kinds.iter().filter(|&&k| k == PointKind::Interior).count(), 3);
        let t = x2.enumerator().tally(2);
        assert_eq!(t.sum, vec![0, 0]);
    }
}
