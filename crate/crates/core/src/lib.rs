//! Exact integrality-gap instances for the CKR relaxation of multiway cut.
//!
//! The crate builds weighted graphs on discretized simplices, evaluates and
//! minimizes non-opposite cuts exactly, checks the Sperner-type counting
//! bounds on small cases and evaluates the closed-form gap bounds.

pub mod bounds;
pub mod cuts;
pub mod error;
pub mod format;
pub mod instances;
pub mod lattice;
pub mod rational;
pub mod regions;
pub mod search;
pub mod sperner;

pub use bounds::{theorem2_bound, GapReport, Regime};
pub use cuts::{CutLabeling, CutSet, NamedCut};
pub use error::{Error, Result};
pub use instances::{combine, Component, GapParams, WeightMap};
pub use lattice::{Edge, LatticePoint, SimplexGraph};
pub use rational::Rational;
pub use search::{SearchBudget, SearchMode, SearchResult};
