//! Scalar factors of the conjectural formulas, closed-form degree
//! coefficients, oracle checks and report assembly.

mod checks;
mod coefficients;
mod colmez;
mod report;
mod verify;

pub use checks::{
    factorization_consistency, gross_cm_check, lerch_identity_check, quadratic_discriminant, FactorizationReport,
    GrossReport, LerchEntry, LerchReport, OracleLine,
};
pub use coefficients::{prop22_coefficient, prop23_coefficient, Contribution, DegreeCoefficient, Which};
pub use colmez::{colmez_factor, field_colmez_factors, kuhn_case_factor, log2_correction, ColmezFactor};
pub use report::{conjecture_report, ErrorWire, Report, ReportEntry, ReportRow, RowData, Target};
pub use verify::{run_suite, two_route_agreement, Suite, VerifyReport, FACTORIZATION_DISCRIMINANTS};
