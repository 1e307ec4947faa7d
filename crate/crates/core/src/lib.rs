//! Exact cycle counting, spectral trace identities, and extremal bounds
//! for small simple graphs.
//!
//! The crate is organized around three layers: graph construction and
//! enumeration ([`graph`]), exact and spectral counting ([`spectral`],
//! [`cycles`]), and the analytic side that turns power-sum maximization
//! into closed-form cycle bounds ([`powersum`], [`symfun`], [`bounds`]).
//! The [`oracle`] module exhaustively sweeps small labeled graphs to
//! verify the inequalities and probe where the sharp constants sit.

pub mod bounds;
pub mod cycles;
pub mod graph;
pub mod oracle;
pub mod powersum;
pub mod spectral;
pub mod symfun;

mod serialize;

pub use bounds::{BoundReport, BoundRow};
pub use cycles::CycleCounts;
pub use graph::Graph;
pub use oracle::{MaxTrianglesReport, VerificationReport, Violation};
pub use powersum::{ExtremalSolution, PowerSumProblem, ThresholdRecord};
pub use spectral::Spectrum;
pub use symfun::{PowerSumPoly, Rational};
