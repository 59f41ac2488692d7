pub mod agm;
pub mod bigfloat;
pub mod complex;
pub mod evaluation;
pub mod gamma;
pub mod hurwitz;
pub mod logs;
pub mod progression;

pub use agm::{agm, agm_with_count};
pub use bigfloat::BigFloat;
pub use complex::BigComplex;
pub use evaluation::{Evaluation, Route};
pub use gamma::{digamma, digamma_rational, euler_gamma, log_gamma};
pub use hurwitz::{
    hurwitz_finite_part_at_one, hurwitz_pair_rational, hurwitz_zeta, hurwitz_zeta_ds, hurwitz_zeta_ds_rational, hurwitz_zeta_rational,
};
