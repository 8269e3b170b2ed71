//! Cube and dilated-simplex triangulations.

use super::simplex::{LatticeSimplex, Point, Triangulation};
use crate::error::{Error, Result};
use crate::hull::Polytope;
use crate::rational::{factorial_u64, rvec};

/// n! simplices of I^n: cone from `corner` over the triangulated facets
/// opposite to it, each facet triangulated the same way from its own
/// vertex nearest to `corner`.
pub fn standard_cube_triangulation(n: usize, corner: &[bool]) -> Result<Triangulation> {
    if n == 0 || n > 8 {
        return Err(Error::DimensionTooLarge(n, 8));
    }
    if corner.len() != n {
        return Err(Error::DimensionMismatch);
    }
    let p: Point = corner.iter().map(|&b| b as i64).collect();
    let mut fixed = vec![false; n];
    let simplices = cube_rec(&mut fixed, &p).into_iter().map(LatticeSimplex::new).collect();
    let cube: Vec<Vec<_>> = (0..1usize << n).map(|m| rvec(&(0..n).map(|i| ((m >> i) & 1) as i64).collect::<Vec<_>>())).collect();
    Ok(Triangulation { dim: n, level: 1, simplices, region: Polytope::from_points(&cube)? })
}

fn cube_rec(fixed: &mut Vec<bool>, p: &Point) -> Vec<Vec<Point>> {
    let free: Vec<usize> = (0..p.len()).filter(|&i| !fixed[i]).collect();
    if free.is_empty() {
        return vec![vec![p.clone()]];
    }
    let mut out = vec![];
    for i in free {
        let mut q = p.clone();
        q[i] = 1 - q[i];
        fixed[i] = true;
        for mut s in cube_rec(fixed, &q) {
            s.insert(0, p.clone());
            out.push(s);
        }
        fixed[i] = false;
    }
    out
}

/// Kuhn simplices inside {0 <= y_1 <= ... <= y_n <= top}, as vertex paths.
pub fn kuhn_chamber(n: usize, top: i64) -> Vec<Vec<Point>> {
    let mut out = vec![];
    if top <= 0 {
        return out;
    }
    let mut z = vec![0i64; n];
    corners(0, 0, top - 1, &mut z, &mut out);
    out
}

fn corners(i: usize, lo: i64, hi: i64, z: &mut Point, out: &mut Vec<Vec<Point>>) {
    if i == z.len() {
        let mut path = vec![z.clone()];
        let mut used = vec![false; z.len()];
        paths(&mut path, &mut used, out);
        return;
    }
    for v in lo..=hi {
        z[i] = v;
        corners(i + 1, v, hi, z, out);
    }
}

fn paths(path: &mut Vec<Point>, used: &mut Vec<bool>, out: &mut Vec<Vec<Point>>) {
    let n = used.len();
    if path.len() == n + 1 {
        out.push(path.clone());
        return;
    }
    let cur = path.last().unwrap().clone();
    for j in 0..n {
        if used[j] || (j + 1 < n && cur[j] + 1 > cur[j + 1]) {
            continue;
        }
        let mut next = cur.clone();
        next[j] += 1;
        used[j] = true;
        path.push(next);
        paths(path, used, out);
        path.pop();
        used[j] = false;
    }
}

/// x = Σ y_j (u_j - u_{j+1}) with u_{n+1} = 0, i.e. y_j = c_1 + ... + c_j for x = Σ c_j u_j.
pub fn chamber_to_cone(y: &[i64], u: &[Point]) -> Point {
    let n = u[0].len();
    let mut x = vec![0i64; n];
    for (j, &yj) in y.iter().enumerate() {
        for (i, xi) in x.iter_mut().enumerate() {
            let next = if j + 1 < u.len() { u[j + 1][i] } else { 0 };
            *xi += yj * (u[j][i] - next);
        }
    }
    x
}

/// Triangulation of kΔ_n cut out by the hyperplanes x_i + ... + x_j ∈ Z.
pub fn standard_simplex_triangulation(n: usize, k: i64) -> Result<Triangulation> {
    if n == 0 || n > 6 {
        return Err(Error::DimensionTooLarge(n, 6));
    }
    if k < 1 {
        return Err(Error::InvalidArgument(format!("dilation k={k} must be positive")));
    }
    let u: Vec<Point> = (0..n).map(|j| (0..n).map(|i| (i == j) as i64).collect()).collect();
    let simplices = kuhn_chamber(n, k).into_iter().map(|path| LatticeSimplex::new(path.iter().map(|y| chamber_to_cone(y, &u)).collect())).collect();
    let mut verts = vec![rvec(&vec![0; n])];
    verts.extend(u.iter().map(|e| rvec(&e.iter().map(|x| x * k).collect::<Vec<_>>())));
    Ok(Triangulation { dim: n, level: k, simplices, region: Polytope::from_points(&verts)? })
}

/// Touching count at a lattice point p of kΔ_n in the triangulation above.
/// With x_0 = k - Σx, the zero coordinates among (x_1, ..., x_n, x_0) read
/// cyclically form runs; a run of length r contributes a factor 1/(r+1)!.
pub fn standard_touch_count(n: usize, k: i64, p: &[i64]) -> u64 {
    let mut cyc: Vec<i64> = p.to_vec();
    cyc.push(k - p.iter().sum::<i64>());
    let zeros: Vec<bool> = cyc.iter().map(|&x| x == 0).collect();
    let m = n + 1;
    let mut denom = 1u64;
    if let Some(start) = (0..m).find(|&i| !zeros[i]) {
        let mut run = 0;
        for t in 1..=m {
            if zeros[(start + t) % m] {
                run += 1;
            } else {
                denom *= factorial_u64(run + 1);
                run = 0;
            }
        }
    } else {
        return 0;
    }
    factorial_u64(m) / denom
}

/// (n+1)!/(j+1)! for a point in the relative interior of an (n-j)-face.
pub fn closed_form_touch_count(n: usize, j: usize) -> u64 {
    factorial_u64(n + 1) / factorial_u64(j + 1)
}

/// Codimension of the smallest face of kΔ_n containing p.
pub fn face_codimension(k: i64, p: &[i64]) -> usize {
    p.iter().filter(|&&x| x == 0).count() + (p.iter().sum::<i64>() == k) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn cube_counts() {
        for n in 1..=4 {
            let t = standard_cube_triangulation(n, &vec![false; n]).unwrap();
            assert_eq!(t.simplices.len() as u64, factorial_u64(n));
            assert!(t.all_unimodular());
            assert!(t.is_proper());
        }
        let t = standard_cube_triangulation(3, &[true, false, true]).unwrap();
        assert!(t.simplices.iter().all(|s| s.volume() == rat(1, 6)));
        assert!(t.simplices.iter().all(|s| s.has_vertex(&[1, 0, 1]) && s.has_vertex(&[0, 1, 0])));
        assert_eq!(standard_cube_triangulation(9, &[false; 9]).unwrap_err(), Error::DimensionTooLarge(9, 8));
    }

    #[test]
    fn chamber_size() {
        for n in 1..=4 {
            for top in 1..=3 {
                assert_eq!(kuhn_chamber(n, top).len() as i64, top.pow(n as u32));
            }
        }
    }

    #[test]
    fn dilated_simplex() {
        let t = standard_simplex_triangulation(2, 3).unwrap();
        assert_eq!(t.simplices.len(), 9);
        assert!(t.is_proper());
        assert_eq!(t.touching(&[1, 1]), 6);
        assert_eq!(t.touching(&[1, 0]), 3);
        assert_eq!(t.touching(&[3, 0]), 1);
        let t = standard_simplex_triangulation(3, 2).unwrap();
        assert!(t.is_proper());
        for (p, c) in t.touch_counts() {
            assert_eq!(c as u64, standard_touch_count(3, 2, &p), "{p:?}");
        }
    }
}
