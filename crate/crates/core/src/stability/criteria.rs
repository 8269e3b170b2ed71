//! The four sufficient criteria for asymptotic Chow polystability.

use super::functionals::{LambdaBasis, StabilityCertificate};
use crate::error::{Error, Result};
use crate::rational::{factorial, rat, rbig, ri, Rat};
use crate::weights::{ClassificationReport, ConeWeight, PolytopeClass};
use num_traits::{One, Signed};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub name: &'static str,
    /// The hypotheses on Δ (class, λ basis, FO) hold.
    pub applicable: bool,
    pub inequalities_hold: bool,
    pub passed: bool,
    /// Exact quantities, named.
    pub margins: Vec<(String, Rat)>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct CriteriaReport {
    pub criteria: Vec<CriterionResult>,
    pub certified: bool,
}

impl CriteriaReport {
    pub fn get(&self, name: &str) -> Option<&CriterionResult> {
        self.criteria.iter().find(|c| c.name == name)
    }
}

fn fact(n: usize) -> Rat {
    rbig(&factorial(n))
}

/// 1 - α(1-λ)/(2 n!) - β/(n+1)!.
pub fn small_margin(n: usize, w: ConeWeight, lambda: &Rat) -> Rat {
    Rat::one() - ri(w.alpha as i64) * (Rat::one() - lambda) / (ri(2) * fact(n)) - ri(w.beta as i64) / fact(n + 1)
}

/// (1+λ)/2 - γ/(n+1)!.
pub fn gamma_margin(n: usize, gamma: u64, lambda: &Rat) -> Rat {
    (Rat::one() + lambda) / ri(2) - ri(gamma as i64) / fact(n + 1)
}

/// Inputs for one evaluation; `q_weights` are the (α, β) from the apex
/// regions, one per vertex in the order of the classification.
pub struct CriteriaInput<'a> {
    pub dim: usize,
    pub fo_vanishes: bool,
    pub certificate: Option<&'a StabilityCertificate>,
    pub classification: Option<&'a ClassificationReport>,
    pub q_weights: Option<&'a [ConeWeight]>,
}

pub fn evaluate_criteria(inp: &CriteriaInput) -> Result<CriteriaReport> {
    let n = inp.dim;
    let cert = inp.certificate.ok_or_else(|| Error::MissingInput("lambda".into()))?;
    let cls = inp.classification.ok_or_else(|| Error::MissingInput("weights".into()))?;
    let lambda = &cert.lambda;
    let base_ok = inp.fo_vanishes && cert.certifying();
    let mut base_notes = vec![];
    if !inp.fo_vanishes {
        base_notes.push("Futaki-Ono invariant does not vanish".to_string());
    }
    if !cert.certifying() {
        base_notes.push(format!("lambda basis {} does not certify", cert.basis.label()));
    }
    let small = matches!(cls.class, PolytopeClass::Small { .. });
    let medium = cls.is_medium();
    let weights: Vec<(String, ConeWeight)> = cls.per_vertex.iter().map(|v| (format!("{:?}", v.p), ConeWeight { alpha: v.alpha, beta: v.beta })).collect();
    let per_vertex_small: Vec<(String, Rat)> = weights.iter().map(|(p, w)| (format!("vertex {p}"), small_margin(n, *w, lambda))).collect();
    let all_positive = per_vertex_small.iter().all(|(_, m)| m.is_positive());
    let gm = gamma_margin(n, cls.gamma, lambda);
    let mut out = vec![];

    let mut notes = base_notes.clone();
    if !small {
        notes.push("not classified small".into());
    }
    out.push(CriterionResult {
        name: "small",
        applicable: base_ok && small,
        inequalities_hold: all_positive,
        passed: base_ok && small && all_positive,
        margins: per_vertex_small.clone(),
        notes,
    });

    let mut notes = base_notes.clone();
    if !medium {
        notes.push("not classified medium".into());
    }
    let mut margins = vec![("gamma".to_string(), gm.clone())];
    margins.extend(per_vertex_small.iter().cloned());
    let holds = !gm.is_negative() && all_positive;
    out.push(CriterionResult { name: "medium", applicable: base_ok && medium, inequalities_hold: holds, passed: base_ok && medium && holds, margins, notes });

    // symmetric weakly reflexive: λ = 1/(n+1)
    let swr = cert.basis == LambdaBasis::SymmetricWeaklyReflexive;
    let mut notes = vec![];
    if !swr {
        notes.push("not symmetric weakly reflexive".into());
    }
    if !medium {
        notes.push("not classified medium".into());
    }
    let gamma_bound = ri(n as i64 + 2) * fact(n) / ri(2);
    let bound = ri(2) * fact(n + 1);
    let mut margins = vec![("gamma bound - gamma".to_string(), &gamma_bound - ri(cls.gamma as i64))];
    let mut holds = ri(cls.gamma as i64) <= gamma_bound;
    for (p, w) in &weights {
        let lhs = ri(n as i64 * w.alpha as i64 + 2 * w.beta as i64);
        holds &= lhs < bound;
        margins.push((format!("vertex {p}: n alpha + 2 beta"), lhs.clone()));
        margins.push((format!("vertex {p}: 2(n+1)! - n alpha - 2 beta"), &bound - lhs));
    }
    out.push(CriterionResult { name: "symmetric", applicable: swr && medium, inequalities_hold: holds, passed: swr && medium && holds, margins, notes });

    let mut notes = base_notes;
    let mut margins = vec![("gamma".to_string(), gm.clone())];
    let mut applicable = base_ok && medium && n >= 2;
    let mut holds = !gm.is_negative();
    match inp.q_weights {
        Some(qw) if n >= 2 && qw.len() == weights.len() => {
            let rhs = ri(2 * (n as i64 - 1) * n as i64 * (n as i64 + 1));
            for ((p, w), q) in weights.iter().zip(qw) {
                if w != q {
                    applicable = false;
                    notes.push(format!("vertex {p}: counted weight differs from the apex region"));
                }
                let vol_q = ri(q.beta as i64) / fact(n - 1);
                let vol_dq = ri(q.alpha as i64) / fact(n - 2);
                let lhs = ri(2 * (n as i64 - 1)) * &vol_q + (Rat::one() - lambda) * ri(n as i64 + 1) * vol_dq;
                holds &= lhs < rhs;
                margins.push((format!("vertex {p}: rhs - lhs"), &rhs - &lhs));
                if n == 2 {
                    // surface form vol(Q) < 6 - 3(1-λ)
                    let surface = vol_q < ri(6) - ri(3) * (Rat::one() - lambda);
                    debug_assert_eq!(surface, lhs < rhs);
                    margins.push((format!("vertex {p}: 6 - 3(1-lambda) - vol(Q)"), ri(6) - ri(3) * (Rat::one() - lambda) - &vol_q));
                }
            }
        }
        _ => {
            applicable = false;
            notes.push("apex region weights unavailable".into());
        }
    }
    out.push(CriterionResult { name: "apexRegion", applicable, inequalities_hold: holds, passed: applicable && holds, margins, notes });

    let certified = inp.fo_vanishes && out.iter().any(|c| c.passed);
    Ok(CriteriaReport { criteria: out, certified })
}

/// 1 - 2^{n-2}(n+2)/(n+1)!, the small margin of the cross-polytope.
pub fn cross_polytope_margin(n: usize) -> Rat {
    Rat::one() - rat(1 << (n - 2).min(62), 1) * ri(n as i64 + 2) / fact(n + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn margins() {
        // smooth, λ = 0, weights (n, 1)
        for n in 2..=5 {
            let m = small_margin(n, ConeWeight { alpha: n as u64, beta: 1 }, &ri(0));
            let expect = rat(1, 2) * (Rat::one() - Rat::one() / fact(n - 1)) + (rat(1, 2) - Rat::one() / fact(n + 1));
            assert_eq!(m, expect);
            assert!(m.is_positive());
        }
        for n in 2..=4 {
            let w = 1u64 << (n - 1);
            let m = small_margin(n, ConeWeight { alpha: w, beta: w }, &rat(1, n as i64 + 1));
            assert_eq!(m, cross_polytope_margin(n));
            assert!(m.is_positive());
        }
        assert_eq!(gamma_margin(3, 16, &rat(1, 4)), rat(-1, 24));
    }
}
