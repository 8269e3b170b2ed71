//! Ehrhart polynomial, sum polynomial and Futaki-Ono invariants.

use crate::error::{Error, Result};
use crate::integrate::{boundary_moments, interior_moments, Affine};
use crate::lattice::{LatticePolytope, Tally};
use crate::linalg::{self, Solution};
use crate::rational::{ri, Int, Rat};
use num_traits::{One, Zero};

/// Coefficients c_0..c_d of c_0 + c_1 t + ... through the given samples.
pub fn interpolate(xs: &[Rat], ys: &[Rat]) -> Vec<Rat> {
    let d = xs.len();
    let a: Vec<Vec<Rat>> = xs
        .iter()
        .map(|x| {
            let mut row = Vec::with_capacity(d);
            let mut p = Rat::one();
            for _ in 0..d {
                row.push(p.clone());
                p *= x;
            }
            row
        })
        .collect();
    match linalg::solve(&a, ys) {
        Solution::Unique(c) => c,
        _ => unreachable!("distinct interpolation nodes"),
    }
}

pub fn eval_poly(c: &[Rat], t: &Rat) -> Rat {
    c.iter().rev().fold(Rat::zero(), |acc, x| acc * t + x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartPolynomial {
    /// coeffs[j] multiplies t^j.
    pub coeffs: Vec<Rat>,
}

impl EhrhartPolynomial {
    pub fn eval(&self, t: i64) -> Rat {
        eval_poly(&self.coeffs, &ri(t))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumPolynomial {
    /// coeffs[j] is the vector coefficient of t^j in s(t).
    pub coeffs: Vec<Vec<Rat>>,
}

impl SumPolynomial {
    pub fn eval(&self, t: &Rat) -> Vec<Rat> {
        let n = self.coeffs[0].len();
        (0..n).map(|i| eval_poly(&self.coeffs.iter().map(|c| c[i].clone()).collect::<Vec<_>>(), t)).collect()
    }
}

/// Everything derived from the lattice counts of kΔ, k = 0..n+2.
#[derive(Clone, Debug)]
pub struct EhrhartData {
    pub dim: usize,
    pub ehrhart: EhrhartPolynomial,
    pub sum: SumPolynomial,
    pub volume: Rat,
    pub sigma: Rat,
    pub integral_x: Vec<Rat>,
    pub boundary_integral_x: Vec<Rat>,
    pub tallies: Vec<Tally>,
}

fn mismatch(k: usize, expected: &Rat, found: &Rat) -> Error {
    Error::CountMismatch { k: k as u64, expected: crate::rational::fmt_rat(expected), found: crate::rational::fmt_rat(found) }
}

pub fn ehrhart_data(p: &LatticePolytope) -> Result<EhrhartData> {
    let n = p.dim;
    let e = p.enumerator();
    let tallies: Vec<Tally> = (0..=n as i64 + 2).map(|k| if k == 0 { Tally { count: 1, sum: vec![0; n] } } else { e.tally(k) }).collect();
    let big = |x: i128| Rat::from_integer(Int::from(x));

    let xs: Vec<Rat> = (0..=n).map(|k| ri(k as i64)).collect();
    let ys: Vec<Rat> = tallies[..=n].iter().map(|t| big(t.count)).collect();
    let ec = interpolate(&xs, &ys);
    for k in n + 1..=n + 2 {
        let v = eval_poly(&ec, &ri(k as i64));
        if v != big(tallies[k].count) {
            return Err(mismatch(k, &big(tallies[k].count), &v));
        }
    }
    let (volume, integral_x) = interior_moments(&p.poly);
    let (sigma, boundary_integral_x) = boundary_moments(&p.poly);
    if ec[n] != volume {
        return Err(mismatch(0, &volume, &ec[n]));
    }
    if n >= 1 && ec[n - 1] != &sigma / ri(2) {
        return Err(mismatch(0, &(&sigma / ri(2)), &ec[n - 1]));
    }

    // i s(i) = Σ_{iΔ} p has degree n+1 and vanishes at 0
    let xs: Vec<Rat> = (0..=n + 1).map(|k| ri(k as i64)).collect();
    let mut scoeffs = vec![vec![Rat::zero(); n]; n + 1];
    for i in 0..n {
        let ys: Vec<Rat> = tallies[..=n + 1].iter().map(|t| big(t.sum[i])).collect();
        let c = interpolate(&xs, &ys);
        let last = eval_poly(&c, &ri(n as i64 + 2));
        if last != big(tallies[n + 2].sum[i]) {
            return Err(mismatch(n + 2, &big(tallies[n + 2].sum[i]), &last));
        }
        debug_assert!(c[0].is_zero());
        for j in 0..=n {
            scoeffs[j][i] = c[j + 1].clone();
        }
    }
    if scoeffs[n] != integral_x {
        return Err(mismatch(0, &integral_x[0], &scoeffs[n][0]));
    }
    if n >= 1 {
        let half: Vec<Rat> = boundary_integral_x.iter().map(|x| x / ri(2)).collect();
        if scoeffs[n - 1] != half {
            return Err(mismatch(0, &half[0], &scoeffs[n - 1][0]));
        }
    }
    Ok(EhrhartData {
        dim: n,
        ehrhart: EhrhartPolynomial { coeffs: ec },
        sum: SumPolynomial { coeffs: scoeffs },
        volume,
        sigma,
        integral_x,
        boundary_integral_x,
        tallies,
    })
}

pub fn ehrhart_polynomial(p: &LatticePolytope) -> Result<EhrhartPolynomial> {
    Ok(ehrhart_data(p)?.ehrhart)
}

pub fn sum_polynomial(p: &LatticePolytope) -> Result<SumPolynomial> {
    Ok(ehrhart_data(p)?.sum)
}

/// FO(ℓ; k) by direct lattice-point summation.
pub fn futaki_ono_fo(p: &LatticePolytope, l: &Affine, k: i64) -> Rat {
    let n = p.dim;
    let t = p.enumerator().tally(k);
    let (vol, ix) = interior_moments(&p.poly);
    let chi = Rat::from_integer(Int::from(t.count));
    let lattice_sum = l.grad.iter().zip(&t.sum).fold(&l.c * &chi, |s, (g, x)| s + g * Rat::from_integer(Int::from(*x)));
    let kr = ri(k);
    let mut kn = Rat::one();
    for _ in 0..n {
        kn *= &kr;
    }
    // ∫_{kΔ} ℓ = k^n (k <g, ∫x> + c vol)
    let integral = &kn * (&kr * crate::rational::dot_rat(&l.grad, &ix) + &l.c * &vol);
    lattice_sum / chi - integral / (kn * vol)
}

impl EhrhartData {
    /// F_{Δ,j} = vol s_j - E_j ∫ x dv.
    pub fn futaki_ono_vector(&self, j: usize) -> Result<Vec<Rat>> {
        if j == 0 || j > self.dim {
            return Err(Error::IndexOutOfRange(j));
        }
        Ok(self.sum.coeffs[j].iter().zip(&self.integral_x).map(|(s, ix)| &self.volume * s - &self.ehrhart.coeffs[j] * ix).collect())
    }

    /// N_{x_i}(k) = Σ_{kΔ} x_i vol(kΔ) - ∫_{kΔ} x_i χ_k, from the verified polynomials.
    pub fn fo_numerator(&self, i: usize, k: i64) -> Rat {
        let n = self.dim;
        let kr = ri(k);
        let mut kn = Rat::one();
        for _ in 0..n {
            kn *= &kr;
        }
        let lattice_sum = &kr * &self.sum.eval(&kr)[i];
        let chi = self.ehrhart.eval(k);
        lattice_sum * &kn * &self.volume - &kn * &kr * &self.integral_x[i] * chi
    }

    pub fn fo_report(&self) -> FoReport {
        let n = self.dim;
        let mut samples = vec![];
        for k in 1..=(2 * n as i64 + 3) {
            for i in 0..n {
                samples.push(FoSample { k, coordinate: i, value: self.fo_numerator(i, k) });
            }
        }
        let vanishes = samples.iter().all(|s| s.value.is_zero());
        let vectors = (1..=n).map(|j| self.futaki_ono_vector(j).unwrap()).collect();
        FoReport { vanishes, samples, vectors }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoSample {
    pub k: i64,
    pub coordinate: usize,
    pub value: Rat,
}

#[derive(Clone, Debug)]
pub struct FoReport {
    pub vanishes: bool,
    /// N_{x_i}(k) for k = 1..2n+3.
    pub samples: Vec<FoSample>,
    /// F_{Δ,j}, j = 1..n.
    pub vectors: Vec<Vec<Rat>>,
}

pub fn fo_vanishes(p: &LatticePolytope) -> Result<bool> {
    Ok(ehrhart_data(p)?.fo_report().vanishes)
}
