//! λ-stability functionals, certificates, the norm and the Chow functional.

use super::envelope::{envelope_from_values, LatticeValues};
use super::lp::{Cmp, Lp};
use super::pl::PlFunction;
use crate::error::{Error, Result};
use crate::hull::Polytope;
use crate::integrate::{boundary_moments, interior_moments, Affine};
use crate::lattice::{classify_reflexivity, LatticePolytope};
use crate::rational::{dot_rat, primitive_i64, rat, ri, Rat};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Integrals of Δ used by every functional.
#[derive(Clone, Debug)]
pub struct Measures {
    pub volume: Rat,
    pub sigma: Rat,
    pub integral_x: Vec<Rat>,
    pub boundary_integral_x: Vec<Rat>,
}

impl Measures {
    pub fn of(p: &Polytope) -> Measures {
        let (volume, integral_x) = interior_moments(p);
        let (sigma, boundary_integral_x) = boundary_moments(p);
        Measures { volume, sigma, integral_x, boundary_integral_x }
    }

    /// a = vol(∂Δ, σ) / vol(Δ).
    pub fn a(&self) -> Rat {
        &self.sigma / &self.volume
    }

    pub fn barycenter(&self) -> Vec<Rat> {
        self.integral_x.iter().map(|x| x / &self.volume).collect()
    }

    /// L_a(ℓ) = 0 for every affine ℓ; constants balance by the choice of a.
    pub fn affine_balanced(&self) -> bool {
        let a = self.a();
        self.boundary_integral_x.iter().zip(&self.integral_x).all(|(b, i)| *b == &a * i)
    }

    pub fn l_affine(&self, l: &Affine) -> Rat {
        let b = dot_rat(&l.grad, &self.boundary_integral_x) + &l.c * &self.sigma;
        let i = dot_rat(&l.grad, &self.integral_x) + &l.c * &self.volume;
        b - self.a() * i
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityValues {
    pub a: Rat,
    pub boundary_integral: Rat,
    pub interior_integral: Rat,
    pub l_a: Rat,
}

pub fn l_a(p: &LatticePolytope, f: &PlFunction) -> StabilityValues {
    let m = Measures::of(&p.poly);
    let boundary_integral = f.integrate_boundary(&p.poly);
    let interior_integral = f.integrate(&p.poly);
    let a = m.a();
    let l_a = &boundary_integral - &a * &interior_integral;
    StabilityValues { a, boundary_integral, interior_integral, l_a }
}

/// f minus an affine support at the barycenter: f(O) = min f = 0.
pub fn normalize(p: &LatticePolytope, f: &PlFunction) -> PlFunction {
    let o = Measures::of(&p.poly).barycenter();
    let s = f.active(&o).clone();
    let neg = Affine { grad: s.grad.iter().map(|g| -g).collect(), c: -s.c };
    PlFunction::new(f.add_affine(&neg).pieces).unwrap()
}

/// L_a(f) / ∫_∂Δ f dσ.
pub fn lambda_ratio(p: &LatticePolytope, f: &PlFunction) -> Result<Rat> {
    if f.is_affine_on(&p.poly) {
        return Err(Error::AffineInput);
    }
    let v = l_a(p, f);
    if !v.boundary_integral.is_positive() {
        return Err(Error::AffineInput);
    }
    Ok(v.l_a / v.boundary_integral)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LambdaBasis {
    SymmetricWeaklyReflexive,
    UserSupplied,
    EstimatedUpperBound,
}

impl LambdaBasis {
    pub fn label(&self) -> &'static str {
        match self {
            LambdaBasis::SymmetricWeaklyReflexive => "symmetricWeaklyReflexive",
            LambdaBasis::UserSupplied => "userSupplied",
            LambdaBasis::EstimatedUpperBound => "estimatedUpperBound",
        }
    }
}

#[derive(Clone, Debug)]
pub struct StabilityCertificate {
    pub lambda: Rat,
    pub basis: LambdaBasis,
    /// L_a vanishes on affine functions.
    pub affine_balanced: bool,
    pub witness: Option<PlFunction>,
}

impl StabilityCertificate {
    pub fn certifying(&self) -> bool {
        self.basis != LambdaBasis::EstimatedUpperBound && self.affine_balanced
    }
}

#[derive(Clone, Debug)]
pub struct FamilyParams {
    /// Hinge directions u with |u|_∞ <= max_coord.
    pub max_coord: i64,
    /// Offsets c = j/grid · max <u, x - O>, j = 0..grid-1.
    pub grid: i64,
    /// Envelopes of random lattice values.
    pub random: usize,
    pub seed: u64,
}

impl Default for FamilyParams {
    fn default() -> Self {
        FamilyParams { max_coord: 1, grid: 4, random: 8, seed: 0 }
    }
}

/// λ = 1/(n+1) for symmetric weakly reflexive Δ, else the given value,
/// else an estimated upper bound.
pub fn lambda_certificate(p: &LatticePolytope, user: Option<Rat>, params: &FamilyParams, demand: bool) -> Result<StabilityCertificate> {
    let r = classify_reflexivity(p);
    let affine_balanced = Measures::of(&p.poly).affine_balanced();
    if r.weakly_reflexive && r.symmetric && r.fixed_point == r.center {
        return Ok(StabilityCertificate { lambda: rat(1, p.dim as i64 + 1), basis: LambdaBasis::SymmetricWeaklyReflexive, affine_balanced, witness: None });
    }
    if let Some(lambda) = user {
        return Ok(StabilityCertificate { lambda, basis: LambdaBasis::UserSupplied, affine_balanced, witness: None });
    }
    if demand {
        return Err(Error::NoCertificate);
    }
    let (lambda, f) = lambda_upper_bound(p, params)?;
    Ok(StabilityCertificate { lambda, basis: LambdaBasis::EstimatedUpperBound, affine_balanced, witness: Some(f) })
}

fn directions(n: usize, u: i64) -> Vec<Vec<i64>> {
    let mut out = vec![];
    let mut v = vec![-u; n];
    loop {
        if v.iter().any(|&x| x != 0) && primitive_i64(&v) == v {
            out.push(v.clone());
        }
        let mut i = 0;
        while i < n && v[i] == u {
            v[i] = -u;
            i += 1;
        }
        if i == n {
            return out;
        }
        v[i] += 1;
    }
}

/// Hinges max(0, <u, x - O> - c) and normalized envelopes of random values.
pub fn test_family(p: &LatticePolytope, params: &FamilyParams) -> Result<Vec<PlFunction>> {
    let n = p.dim;
    let o = Measures::of(&p.poly).barycenter();
    let mut out = vec![];
    for u in directions(n, params.max_coord) {
        let ur: Vec<Rat> = u.iter().map(|&x| ri(x)).collect();
        let base = dot_rat(&ur, &o);
        let top = p.vertices.iter().map(|v| dot_rat(&ur, &crate::rational::rvec(v)) - &base).max().unwrap();
        for j in 0..params.grid.max(1) {
            let c = &top * rat(j, params.grid.max(1));
            let piece = Affine { grad: ur.clone(), c: -&base - c };
            out.push(PlFunction::new(vec![piece, Affine::constant(n, Rat::zero())])?);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let pts: Vec<Vec<i64>> = p.lattice_points(1).into_iter().map(|q| q.coords).collect();
    for _ in 0..params.random {
        let vals: LatticeValues = pts.iter().map(|q| (q.clone(), ri(rng.gen_range(0..4)))).collect();
        out.push(normalize(p, &envelope_from_values(p, 1, &vals)?));
    }
    out.retain(|f| !f.is_affine_on(&p.poly));
    if out.is_empty() {
        return Err(Error::EmptyFamily);
    }
    Ok(out)
}

/// min of lambda_ratio over the sampled family, with its minimizer.
pub fn lambda_upper_bound(p: &LatticePolytope, params: &FamilyParams) -> Result<(Rat, PlFunction)> {
    let mut best: Option<(Rat, PlFunction)> = None;
    for f in test_family(p, params)? {
        let r = lambda_ratio(p, &f)?;
        if best.as_ref().is_none_or(|(b, _)| r < *b) {
            best = Some((r, f));
        }
    }
    best.ok_or(Error::EmptyFamily)
}

/// ‖f‖ = inf over affine ℓ of ∫(f - ℓ) - vol(Δ) min(f - ℓ), as an LP in
/// (grad ℓ, m) with m <= f - ℓ at the subdivision vertices.
pub fn norm_delta(p: &LatticePolytope, f: &PlFunction) -> Result<Rat> {
    let n = p.dim;
    let m = Measures::of(&p.poly);
    let integral = f.integrate(&p.poly);
    // minimize -<g, ∫x> - vol m
    let mut obj: Vec<Rat> = m.integral_x.iter().map(|x| -x).collect();
    obj.push(-m.volume.clone());
    let mut lp = Lp::new(obj, vec![true; n + 1]);
    for v in f.subdivision_vertices(&p.poly) {
        let mut row = v.clone();
        row.push(Rat::one());
        lp.row(row, Cmp::Le, f.eval(&v));
    }
    Ok(integral + lp.minimize()?.value)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformCheck {
    pub l_a: Rat,
    pub norm: Rat,
    /// L_a(f) - δ ‖f‖.
    pub margin: Rat,
}

/// L_a(f) >= δ ‖f‖ with δ = 1 on each sampled f.
pub fn uniform_k_check(p: &LatticePolytope, family: &[PlFunction]) -> Result<(bool, Vec<UniformCheck>)> {
    let mut out = vec![];
    for f in family {
        let l = l_a(p, f).l_a;
        let norm = norm_delta(p, f)?;
        out.push(UniformCheck { margin: &l - &norm, l_a: l, norm });
    }
    Ok((out.iter().all(|c| !c.margin.is_negative()), out))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowValue {
    pub k: i64,
    pub lattice_average: Rat,
    pub integral_average: Rat,
    pub value: Rat,
}

/// (1/χ_k) Σ_{kΔ ∩ Z^n} f - ∫_{kΔ} f / vol(kΔ), with f a function on kΔ.
pub fn chow_functional(p: &LatticePolytope, f: &PlFunction, k: i64) -> Result<ChowValue> {
    if k < 1 {
        return Err(Error::InvalidArgument(format!("dilation k={k} must be positive")));
    }
    let mut sum = Rat::zero();
    let mut count = 0i64;
    let mut q = vec![0i64; p.dim];
    p.enumerator().walk(k, &mut |prefix, lo, hi| {
        q[..prefix.len()].copy_from_slice(prefix);
        for v in lo..=hi {
            q[prefix.len()] = v;
            sum += f.eval_i64(&q);
        }
        count += hi - lo + 1;
    });
    let dom = p.poly.scaled(&ri(k));
    let lattice_average = sum / ri(count);
    let integral_average = f.integrate(&dom) / interior_moments(&dom).0;
    Ok(ChowValue { k, value: &lattice_average - &integral_average, lattice_average, integral_average })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_polytope;

    fn cross2() -> LatticePolytope {
        build_polytope(&[vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]).unwrap()
    }

    fn hinge(n: usize, grad: Vec<Rat>, c: Rat) -> PlFunction {
        PlFunction::new(vec![Affine { grad, c }, Affine::constant(n, Rat::zero())]).unwrap()
    }

    #[test]
    fn cross_polytope_hinge_is_tight() {
        let p = cross2();
        let f = hinge(2, vec![ri(1), ri(0)], ri(0));
        let v = l_a(&p, &f);
        assert_eq!(v.a, ri(2));
        assert_eq!(v.l_a, rat(1, 3));
        assert_eq!(lambda_ratio(&p, &f).unwrap(), rat(1, 3));
        assert_eq!(norm_delta(&p, &f).unwrap(), rat(1, 3));
        let (ok, checks) = uniform_k_check(&p, &[f]).unwrap();
        assert!(ok);
        assert_eq!(checks[0].margin, ri(0));
        let c = lambda_certificate(&p, None, &FamilyParams::default(), true).unwrap();
        assert_eq!(c.lambda, rat(1, 3));
        assert!(c.certifying());
    }

    #[test]
    fn square_hinge_ratio() {
        let p = build_polytope(&[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let f = hinge(2, vec![ri(1), ri(0)], rat(-1, 2));
        // ∫f = 1/8, boundary integral 3/4, a = 4
        assert_eq!(lambda_ratio(&p, &f).unwrap(), rat(1, 3));
        assert_eq!(lambda_ratio(&p, &PlFunction::affine(Affine::coordinate(2, 0))), Err(Error::AffineInput));
    }

    #[test]
    fn triangle_chow_and_estimator() {
        let p = build_polytope(&[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        let f = hinge(2, vec![ri(2), ri(0)], ri(-1));
        let c = chow_functional(&p, &f, 1).unwrap();
        assert_eq!((c.lattice_average.clone(), c.integral_average.clone()), (rat(1, 3), rat(1, 12)));
        assert_eq!(c.value, rat(1, 4));
        assert_eq!(lambda_certificate(&p, None, &FamilyParams::default(), true).unwrap_err(), Error::NoCertificate);
        let est = lambda_certificate(&p, None, &FamilyParams::default(), false).unwrap();
        assert_eq!(est.basis, LambdaBasis::EstimatedUpperBound);
        assert!(!est.certifying());
    }

    #[test]
    fn estimator_on_cross_polytope() {
        let p = cross2();
        let params = FamilyParams { max_coord: 1, grid: 1, random: 0, seed: 0 };
        let (l, _) = lambda_upper_bound(&p, &params).unwrap();
        assert_eq!(l, rat(1, 3));
    }

    #[test]
    fn norm_of_affine_is_zero() {
        let p = cross2();
        let f = PlFunction::affine(Affine { grad: vec![ri(3), ri(-1)], c: ri(2) });
        assert_eq!(norm_delta(&p, &f).unwrap(), ri(0));
    }
}
