//! Bounds on temperature estimation with single quantum probes.
//!
//! Units are `ħ = k_B = 1`. Temperatures, gaps and energies share one unit;
//! Fisher informations are in inverse temperature squared.

pub mod dynamics;
pub mod equilibrium;
pub mod error;
pub mod gaussian;
pub mod numerics;
pub mod spectra;

pub use dynamics::{DiagonalState, DissipationModel, Preparation, ProtocolConfig, QubitState};
pub use equilibrium::{OptimalGapResult, Probe, QfiValue};
pub use error::{Error, Result};
pub use gaussian::{CovarianceMatrix, GaussianProbe};
pub use numerics::{BracketedRoot, SymmetricMatrix};
pub use spectra::{EffectiveTwoLevelSpectrum, Spectrum, ThermalEnsemble};
