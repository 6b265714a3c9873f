//! α-amenability diagnostics: the summability/decay classifier, the
//! Plancherel point mass, the modified Reiter program and the point
//! derivation probe.

mod classify;
mod derivation;
mod probes;
mod reiter;
mod verdict;

pub use classify::{classify, parity_leak};
pub use derivation::{derivation_probe, DerivationReport};
pub use probes::{c0_probe, point_mass};
pub use reiter::{check_residuals, reiter_curve, reiter_lp, ReiterCertificate, Residuals, RESIDUAL_TOL};
pub use verdict::{
    C0Report, Certificate, Classification, DecayVerdict, Diagnostics, PointMassEstimate, Thresholds, Verdict, Witness,
};
