//! Dirichlet L-functions and abelian Dedekind zeta functions at integers.

mod bernoulli;
mod dedekind;
mod logderiv;
mod values;

pub use bernoulli::{gen_bernoulli, l_exact_nonpos, GenBernoulli};
pub use dedekind::{dedekind_logderiv, dedekind_logderiv_terms, dedekind_via_ideals, MAX_IDEAL_DISCRIMINANT};
pub use logderiv::{dirichlet_series_pair, l_logderiv_neg, LogDerivResult, Routes};
pub use values::{l_deriv, l_pair, l_value};
