//! Dense exact linear algebra over the rationals and integers.

use crate::rational::{rbig, Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Mat = Vec<Vec<Rat>>;

pub fn to_rat_mat(m: &[Vec<i64>]) -> Mat {
    m.iter().map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect()).collect()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut Mat) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Mat) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

pub fn det(m: &Mat) -> Rat {
    let n = m.len();
    let mut a = m.clone();
    let mut d = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return Rat::zero() };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        let piv = a[c][c].clone();
        d *= &piv;
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &piv;
            for j in c..n {
                let t = &a[c][j] * &f;
                a[i][j] -= t;
            }
        }
    }
    d
}

/// Fraction-free Bareiss determinant.
pub fn det_int(m: &[Vec<Int>]) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::one();
    }
    let mut a = m.to_vec();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else { return Int::zero() };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub fn det_i64(m: &[Vec<i64>]) -> Int {
    let b: Vec<Vec<Int>> = m.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect();
    det_int(&b)
}

pub fn inverse(m: &Mat) -> Option<Mat> {
    let n = m.len();
    let mut a: Mat = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            row
        })
        .collect();
    let piv = rref(&mut a);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub enum Solution {
    Inconsistent,
    Unique(Vec<Rat>),
    /// A particular solution plus the rank of the coefficient matrix.
    Family(Vec<Rat>, usize),
}

/// Solves a x = b for a possibly non-square system.
pub fn solve(a: &Mat, b: &[Rat]) -> Solution {
    let cols = a.first().map_or(0, |r| r.len());
    let mut aug: Mat = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.last() == Some(&cols) {
        return Solution::Inconsistent;
    }
    let mut x = vec![Rat::zero(); cols];
    for (r, &c) in piv.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    if piv.len() == cols {
        Solution::Unique(x)
    } else {
        Solution::Family(x, piv.len())
    }
}

pub fn mat_vec(m: &Mat, v: &[Rat]) -> Vec<Rat> {
    m.iter().map(|r| crate::rational::dot_rat(r, v)).collect()
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let k = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter().map(|r| (0..cols).map(|j| (0..k).fold(Rat::zero(), |s, t| s + &r[t] * &b[t][j])).collect()).collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return vec![];
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// All k-subsets of 0..n in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// gcd of all maximal minors of the n x d matrix whose columns are `cols`.
/// For integral columns this is the lattice-normalized d-volume of the
/// parallelepiped they span, measured in the saturated sublattice.
pub fn gcd_maximal_minors(cols: &[Vec<Int>]) -> Int {
    let d = cols.len();
    if d == 0 {
        return Int::one();
    }
    let n = cols[0].len();
    let mut g = Int::zero();
    for rows in combinations(n, d) {
        let m: Vec<Vec<Int>> = rows.iter().map(|&r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        g = g.gcd(&det_int(&m));
    }
    g.abs()
}

/// Lattice-normalized d-volume (as a multiple of the unimodular d-simplex)
/// of a d-simplex with rational vertices lying in an affine lattice plane.
/// Vertices are scaled to integers first; the scale is divided back out.
pub fn normalized_simplex_volume(verts: &[Vec<Rat>]) -> Rat {
    let d = verts.len() - 1;
    let l = verts.iter().flatten().fold(Int::one(), |l, x| l.lcm(x.denom()));
    let lr = rbig(&l);
    let cols: Vec<Vec<Int>> = verts[1..].iter().map(|v| v.iter().zip(&verts[0]).map(|(a, b)| ((a - b) * &lr).to_integer()).collect()).collect();
    let g = gcd_maximal_minors(&cols);
    let mut s = Rat::one();
    for _ in 0..d {
        s *= &lr;
    }
    rbig(&g) / s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ri;

    #[test]
    fn determinants_agree() {
        let m = vec![vec![2, -1, 0], vec![1, 3, 4], vec![0, 5, -2]];
        assert_eq!(det(&to_rat_mat(&m)), rbig(&det_i64(&m)));
        assert_eq!(det_i64(&m), Int::from(-54));
    }

    #[test]
    fn inverse_round_trip() {
        let m = to_rat_mat(&[vec![1, 2], vec![3, 5]]);
        let inv = inverse(&m).unwrap();
        let p = mat_mul(&m, &inv);
        assert_eq!(p, to_rat_mat(&[vec![1, 0], vec![0, 1]]));
        assert!(inverse(&to_rat_mat(&[vec![1, 2], vec![2, 4]])).is_none());
    }

    #[test]
    fn solve_overdetermined() {
        let a = to_rat_mat(&[vec![1, 0], vec![0, 1], vec![1, 1]]);
        match solve(&a, &[ri(1), ri(2), ri(3)]) {
            Solution::Unique(x) => assert_eq!(x, vec![ri(1), ri(2)]),
            _ => panic!(),
        }
        assert!(matches!(solve(&a, &[ri(1), ri(2), ri(4)]), Solution::Inconsistent));
    }

    #[test]
    fn minors_measure_sublattice_volume() {
        // segment (0,0)->(2,1) is primitive: lattice length 1
        let c = vec![vec![Int::from(2), Int::from(1)]];
        assert_eq!(gcd_maximal_minors(&c), Int::from(1));
        let c = vec![vec![Int::from(4), Int::from(2)]];
        assert_eq!(gcd_maximal_minors(&c), Int::from(2));
    }
}
