use serde::{Deserialize, Serialize};

use crate::error::{self, Error, Result};

/// Weak coupling of a probe with gap `Ω` to a sample at temperature `T`
/// through a bath with flat spectral density `J(ω) = γ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawModel")]
pub struct DissipationModel {
    gap: f64,
    temperature: f64,
    gamma: f64,
}

#[derive(Deserialize)]
struct RawModel {
    gap: f64,
    temperature: f64,
    gamma: f64,
}

impl TryFrom<RawModel> for DissipationModel {
    type Error = Error;

    fn try_from(raw: RawModel) -> Result<Self> {
        DissipationModel::new(raw.gap, raw.temperature, raw.gamma)
    }
}

impl DissipationModel {
    pub fn new(gap: f64, temperature: f64, gamma: f64) -> Result<Self> {
        Ok(DissipationModel {
            gap: error::positive("gap", gap)?,
            temperature: error::temperature(temperature)?,
            gamma: error::positive("gamma", gamma)?,
        })
    }

    /// Same probe and coupling, different sample temperature.
    pub fn at_temperature(&self, temperature: f64) -> Result<Self> {
        Self::new(self.gap, temperature, self.gamma)
    }

    pub fn gap(&self) -> f64 {
        self.gap
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `x = Ω/T`.
    pub fn ratio(&self) -> f64 {
        self.gap / self.temperature
    }

    fn zero_temperature_rate(&self) -> f64 {
        self.gamma * self.gap.powi(3)
    }

    /// Emission rate `Γ = γΩ³/(1 − e^{−x})`.
    pub fn decay_rate(&self) -> f64 {
        self.zero_temperature_rate() / -(-self.ratio()).exp_m1()
    }

    /// Absorption rate `Γe^{−x}`.
    pub fn excitation_rate(&self) -> f64 {
        self.zero_temperature_rate() / self.ratio().exp_m1()
    }

    /// `1/τ = Γ(1 + e^{−x}) = γΩ³ coth(x/2)`.
    pub fn relaxation_rate(&self) -> f64 {
        self.decay_rate() + self.excitation_rate()
    }

    pub fn relaxation_time(&self) -> f64 {
        self.relaxation_rate().recip()
    }

    /// Relaxation rate of an oscillator's mean occupation, `Γ(1 − e^{−x}) = γΩ³`.
    pub fn covariance_damping_rate(&self) -> f64 {
        self.zero_temperature_rate()
    }
}
