//! Generalized quantum particle statistics.
//!
//! A statistics type is labelled `[q_0, q_1, ...]±` and fixes the single-mode
//! character `χ₁ = Q₋` (fermionic-like) or `χ₁ = 1/Q₊` (bosonic-like). From
//! it this crate derives
//!
//! * validity and irreducibility of the label ([`classify`]),
//! * the decomposition of the multi-mode Fock space into `U(d)` irreducible
//!   sectors with multiplicities ([`fock`], on top of [`symfunc`]),
//! * explicit sector representations and multi-particle interference for
//!   order-one statistics ([`dynamics`]),
//! * ideal-gas thermodynamics ([`thermo`]).

pub mod classify;
pub mod dynamics;
pub mod fock;
pub mod symfunc;
pub mod thermo;

pub use classify::{ClassificationReport, MaxOccupation, StatisticsKind, StatisticsSpec};
pub use dynamics::{AmplitudeVector, ModeUnitary, SectorMatrix};
pub use fock::{LabeledState, OccupationState, SectorDecomposition};
pub use symfunc::{IntegerSeries, Partition};
pub use thermo::{EnsembleParams, Spectrum, ThermoReport};
