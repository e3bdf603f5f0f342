//! `H₀`, `Tor_s`, and the degree invariants `gd`, `td`, `hd_s`, `reg`.

mod filtered;
mod graded;
mod h0;
mod koszul;
mod report;
mod resolution;

pub use filtered::{
    filtered_shift_bound, is_filtered, smallest_filtered_shift, FilteredCertificate, Layer, ShiftSearch,
    Tor1CrossCheck, Verdict,
};
pub use graded::GradedDims;
pub use h0::{decomposables, gd, h0, module_generators, td, H0};
pub use koszul::{binomial, koszul_tor, Koszul, DEFAULT_BUDGET};
pub use report::{
    analyze, analyze_presentation, status_of, theorem31_checks, verify_theorem31, Analysis, AnalysisOptions, Certified, DegreeBounds,
    DegreeReport, Inequality, PresentationAnalysis, Status, Theorem31Report, REG_CONVENTION,
};
pub use resolution::{cover_tor, resolve, CoverMode, Resolution};
