//! Segal and quantum Segal algebra norms, axiom checks, Feichtinger-operator
//! norms and Poisson summation.

pub mod axioms;
pub mod feichtinger_op;
pub mod poisson;
pub mod qsa;
pub mod segal;

pub use axioms::{axiom_check, axiom_check_with, AxiomConfig};
pub use feichtinger_op::{
    feichtinger_op_norm_alphagamma, feichtinger_op_norm_fw, feichtinger_op_norm_gamma, feichtinger_op_norm_kernel,
    svd_fin_bound, EquivalenceReport,
};
pub use poisson::{poisson_sum_check, PoissonCheck};
pub use qsa::{induced_qsa_norm, twisted_qsa_norm};
pub use segal::{feichtinger_norm, qsa_sp_mu_norm, registry, s_p_mu_norm, s_p_norm, t_norm, NormFunctional, NormKind};
