//! Quantum Fisher information of fully thermalized probes, the optimal
//! spectrum and its second-order certification.

mod fidelity;
mod hessian;
mod optimum;
mod scan;

pub use fidelity::{fidelity_diagonal, infidelity_diagonal, qfi_bures_oracle, TemperatureFamily, ORACLE_RELATIVE_STEP};
pub use hessian::{hessian_certificate, AnalyticHessianSpectrum, HessianCertificate, HessianCoefficients};
pub use optimum::{
    degeneracy_gain, optimal_gap, qfi_optimal_probe, stationarity_residual, variance_gradient, variance_hessian,
    DegeneracyGain, OptimalGapResult,
};
pub use scan::{fixed_gap_peak_ratio, qfi_equilibrium_scan, EquilibriumScan, ScanRow, Series};

use crate::spectra::ThermalEnsemble;

/// Which kind of probe a Fisher information belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Probe {
    Spectrum { levels: usize },
    EffectiveTwoLevel { n: usize, n0: usize },
    Harmonic,
    Qubit,
    DiagonalNLevel { levels: usize },
}

/// Fisher information with respect to temperature, in units of `1/T²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QfiValue {
    pub value: f64,
    pub temperature: f64,
    pub probe: Probe,
}

impl QfiValue {
    /// Quantum Cramér-Rao bound `ΔT ≥ (ν F)^{-1/2}` for `ν` repetitions.
    pub fn temperature_uncertainty(&self, repetitions: f64) -> f64 {
        (repetitions * self.value).sqrt().recip()
    }

    /// Largest attainable squared signal-to-noise `(T/ΔT)²` for one shot.
    pub fn signal_to_noise_bound(&self) -> f64 {
        self.temperature * self.temperature * self.value
    }
}

/// `F = ΔĤ²/T⁴` for a Gibbs state.
pub fn qfi_thermal(ensemble: &ThermalEnsemble) -> QfiValue {
    let t = ensemble.temperature();
    QfiValue {
        value: ensemble.energy_variance() / t.powi(4),
        temperature: t,
        probe: Probe::Spectrum { levels: ensemble.spectrum().dimension() },
    }
}
