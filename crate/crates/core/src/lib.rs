//! Exact computation of the second cohomology of `sl(2)` acting on spaces of
//! n-ary differential operators between tensor-density modules.

pub mod closed_form;
pub mod complex;
pub mod density;
pub mod error;
pub mod linalg;
pub mod multiindex;
pub mod poly;
pub mod rational;
pub mod reduced;
pub mod result;
pub mod sweep;

pub use closed_form::{classify, closed_form_result, dim_h2_closed_form, summary_prediction, summary_result, CaseTag};
pub use complex::{brute_force_h2, coboundary, default_alpha_max, Cochain, Truncation};
pub use density::{act_on_operator, apply_operator, lie_derivative_density, DiffOperator, SL2Generator, Weights};
pub use error::{CohomError, Result};
pub use linalg::RationalMatrix;
pub use multiindex::{gamma, multiset_coeff, MultiIndex};
pub use poly::Polynomial;
pub use rational::Rational;
pub use reduced::{
    build_system, coboundary_reduced, cocycle_basis, cocycle_residual, dim_h2_via_system, is_coboundary, split_systems,
    LinearSystem, Perturbation, ReducedOneCochain, ReducedTwoCochain,
};
pub use result::{CohomResult, Method};
