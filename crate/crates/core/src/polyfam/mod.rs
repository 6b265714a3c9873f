//! One-variable polynomial hypergroups on ℕ₀.

mod character;
mod family;
mod linearize;
mod measure;

pub use character::PolyCharacter;
pub use family::{graph_closed_form, soradi_closed_form, FamilyKind, FamilySpec, RecursionFamily};
pub use linearize::{build_table, linearization_rows, linearize, verify_hypergroup, HypergroupReport, PolyTable};
pub use measure::{orthogonality_check, orthogonality_measure, MeasureDescriptor, OrthogonalityReport};
