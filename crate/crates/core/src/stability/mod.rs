//! Convex test functions, λ-stability, the Chow functional and the criteria.

mod criteria;
mod envelope;
mod functionals;
pub mod lp;
mod pl;

pub use criteria::{cross_polytope_margin, evaluate_criteria, gamma_margin, small_margin, CriteriaInput, CriteriaReport, CriterionResult};
pub use envelope::{envelope_from_values, envelope_oracle, lattice_values, LatticeValues};
pub use functionals::{
    chow_functional, l_a, lambda_certificate, lambda_ratio, lambda_upper_bound, norm_delta, normalize, test_family, uniform_k_check, ChowValue, FamilyParams,
    LambdaBasis, Measures, StabilityCertificate, StabilityValues, UniformCheck,
};
pub use pl::{Cell, PlFunction};
