//! Smoothability verdicts and the computations around them: κ-cycle
//! membership, peeling off reduced points, net determinants, sampling and a
//! registry of worked examples.

mod examples;
mod netdet;
mod peel;
mod report;
mod sample;
mod verdict;

pub use examples::{example, example_names, special_point_configuration, Example, ExpectedResults};
pub use netdet::{
    is_purely_singular_net, net_determinant, net_monomials, nonsingular_quadric_probe, NetDeterminant, ProbeResult,
};
pub use peel::{commutator_rank, peel_test, restrict_to_kernel_complement};
pub use report::{kappa_report, Admissibility, Conditions, KappaReport, REPORT_SCHEMA_VERSION};
pub(crate) use sample::trial_rng;
pub use sample::{sample_generic_kappa, KappaFrequencies};
pub use verdict::{
    deformation_table_153, kappa_cycle_member, smoothability_verdict, BoundCheck, DeformationTable, KappaCycleSpec,
    SmoothabilityVerdict, Verdict, DEFORMATION_BOUNDS, SUFFICIENCY_NOTE_NONSINGULAR, SUFFICIENCY_NOTE_SMALL,
};

use crate::quadric::QuadricError;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum ObstructionError {
    #[error("expected a vector of length {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("operation needs a different shape, got d = {d}, e = {e}")]
    WrongShape { d: usize, e: usize },
    #[error("forms have different numbers of variables ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },
    #[error("interpolation nodes stayed singular after repeated draws")]
    InterpolationSingular,
    #[error("unknown example {0:?}")]
    UnknownExample(String),
    #[error("sampling needs a prime p >= 5, got {0}")]
    BadPrime(u64),
    #[error(transparent)]
    Quadric(#[from] QuadricError),
}
