use crate::error::{self, Result};
use crate::numerics::{central_diff_with, Derivative};
use crate::spectra::Spectrum;

use super::{Probe, QfiValue};

/// Finite-difference step of the Bures oracle, relative to `T`.
pub const ORACLE_RELATIVE_STEP: f64 = 1e-4;

/// A one-parameter family of states labelled by temperature.
pub trait TemperatureFamily {
    fn probe(&self) -> Probe;

    /// `1 − 𝔽(ρ_T, ρ_T')`, evaluated without cancellation near `T' = T`.
    fn infidelity(&self, temperature: f64, other: f64) -> Result<f64>;

    fn fidelity(&self, temperature: f64, other: f64) -> Result<f64> {
        Ok(1.0 - self.infidelity(temperature, other)?)
    }
}

/// `F = −2 ∂²𝔽(ρ_T, ρ_{T+δ})/∂δ²` at `δ = 0`, by Richardson-refined central
/// differences with `h = 1e-4·T`.
pub fn qfi_bures_oracle<F>(family: &F, temperature: f64) -> Result<QfiValue>
where
    F: TemperatureFamily + ?Sized,
{
    let t = error::temperature(temperature)?;
    let curvature = central_diff_with(
        |delta| Ok(vec![family.infidelity(t, t + delta)?]),
        0.0,
        ORACLE_RELATIVE_STEP * t,
        Derivative::Second,
    )?;
    Ok(QfiValue { value: 2.0 * curvature[0], temperature: t, probe: family.probe() })
}

/// Uhlmann fidelity of two commuting states given by their eigenvalues in a
/// shared basis: `(Σ √(p q))²`.
pub fn fidelity_diagonal(p: &[f64], q: &[f64]) -> f64 {
    let overlap: f64 = p.iter().zip(q).map(|(a, b)| (a * b).sqrt()).sum();
    overlap * overlap
}

/// `1 − (Σ √(p q))²` from `1 − Σ √(p q) = ½ Σ (√p − √q)²`.
pub fn infidelity_diagonal(p: &[f64], q: &[f64]) -> f64 {
    let deficit: f64 = 0.5
        * p.iter()
            .zip(q)
            .map(|(&a, &b)| {
                let s = a.sqrt() + b.sqrt();
                if s == 0.0 {
                    0.0
                } else {
                    ((a - b) / s).powi(2)
                }
            })
            .sum::<f64>();
    deficit * (2.0 - deficit)
}

impl TemperatureFamily for Spectrum {
    fn probe(&self) -> Probe {
        Probe::Spectrum { levels: self.dimension() }
    }

    fn infidelity(&self, temperature: f64, other: f64) -> Result<f64> {
        let a = self.thermalize(temperature)?;
        let b = self.thermalize(other)?;
        Ok(infidelity_diagonal(a.populations(), b.populations()))
    }
}
