//! Probe spectra and their Gibbs statistics (units with ħ = k_B = 1).

use serde::{Deserialize, Serialize};

use crate::error::{self, Error, Result};

/// Energy levels of an N-level probe, ascending, degeneracies stored explicitly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Spectrum {
    energies: Vec<f64>,
}

impl Spectrum {
    /// Sorts the levels; rejects fewer than two levels or non-finite energies.
    pub fn new(mut energies: Vec<f64>) -> Result<Self> {
        if energies.len() < 2 {
            return Err(Error::InvalidSpectrum(format!("need at least 2 levels, got {}", energies.len())));
        }
        if let Some(bad) = energies.iter().find(|e| !e.is_finite()) {
            return Err(Error::InvalidSpectrum(format!("non-finite level {bad}")));
        }
        energies.sort_by(f64::total_cmp);
        Ok(Self { energies })
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn dimension(&self) -> usize {
        self.energies.len()
    }

    pub fn ground_energy(&self) -> f64 {
        self.energies[0]
    }

    pub fn is_degenerate(&self) -> bool {
        self.energies.first() == self.energies.last()
    }

    pub fn shifted(&self, offset: f64) -> Result<Self> {
        Self::new(self.energies.iter().map(|e| e + offset).collect())
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.energies.iter().map(|e| e * factor).collect())
    }

    pub fn thermalize(&self, temperature: f64) -> Result<ThermalEnsemble> {
        thermalize(self, temperature)
    }
}

impl TryFrom<Vec<f64>> for Spectrum {
    type Error = Error;

    fn try_from(energies: Vec<f64>) -> Result<Self> {
        Self::new(energies)
    }
}

impl From<Spectrum> for Vec<f64> {
    fn from(s: Spectrum) -> Self {
        s.energies
    }
}

/// Two distinct levels `0` and `gap`, with `n0` ground and `n - n0` excited copies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTwoLevel")]
pub struct EffectiveTwoLevelSpectrum {
    gap: f64,
    n: usize,
    n0: usize,
}

#[derive(Deserialize)]
struct RawTwoLevel {
    gap: f64,
    n: usize,
    n0: usize,
}

impl TryFrom<RawTwoLevel> for EffectiveTwoLevelSpectrum {
    type Error = Error;

    fn try_from(raw: RawTwoLevel) -> Result<Self> {
        Self::new(raw.gap, raw.n, raw.n0)
    }
}

impl EffectiveTwoLevelSpectrum {
    pub fn new(gap: f64, n: usize, n0: usize) -> Result<Self> {
        error::positive("gap", gap)?;
        if n < 2 {
            return Err(Error::DimensionTooSmall { dimension: n, minimum: 2 });
        }
        if n0 == 0 || n0 >= n {
            return Err(Error::InvalidDegeneracy { n, n0, max: n - 1 });
        }
        Ok(Self { gap, n, n0 })
    }

    /// Non-degenerate ground level, `n - 1` degenerate excited levels.
    pub fn maximally_degenerate(gap: f64, n: usize) -> Result<Self> {
        Self::new(gap, n, 1)
    }

    pub fn gap(&self) -> f64 {
        self.gap
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn ground_degeneracy(&self) -> usize {
        self.n0
    }

    pub fn excited_degeneracy(&self) -> usize {
        self.n - self.n0
    }

    /// Frequency-to-temperature ratio `gap / T`.
    pub fn ratio(&self, temperature: f64) -> f64 {
        self.gap / temperature
    }

    pub fn expand(&self) -> Spectrum {
        let mut energies = vec![0.0; self.n0];
        energies.resize(self.n, self.gap);
        Spectrum { energies }
    }

    pub fn mean_energy(&self, temperature: f64) -> Result<f64> {
        let t = error::temperature(temperature)?;
        let x = self.gap / t;
        let (g, e) = (self.n0 as f64, self.excited_degeneracy() as f64);
        let w = (-x).exp();
        Ok(t * e * x * w / (g + e * w))
    }

    pub fn energy_variance(&self, temperature: f64) -> Result<f64> {
        let t = error::temperature(temperature)?;
        Ok(t * t * two_level_variance_ratio(self.gap / t, self.n, self.n0))
    }
}

/// `ΔĤ²/T²` of an effective two-level spectrum at ratio `x = gap/T`.
pub(crate) fn two_level_variance_ratio(x: f64, n: usize, n0: usize) -> f64 {
    let (g, e) = (n0 as f64, (n - n0) as f64);
    let w = (-x).exp();
    g * e * x * x * w / (e * w + g).powi(2)
}

/// Gibbs state of a spectrum at temperature `T`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalEnsemble {
    spectrum: Spectrum,
    temperature: f64,
    populations: Vec<f64>,
    log_partition: f64,
}

/// Gibbs populations `p_n = exp(-ε_n/T)/Z`.
///
/// Weights are formed relative to the ground level so that every exponent is
/// non-positive; `ln Z` is kept separately.
pub fn thermalize(spectrum: &Spectrum, temperature: f64) -> Result<ThermalEnsemble> {
    let t = error::temperature(temperature)?;
    let e0 = spectrum.ground_energy();
    let weights: Vec<f64> = spectrum.energies().iter().map(|e| (-(e - e0) / t).exp()).collect();
    let reduced: f64 = weights.iter().sum();
    Ok(ThermalEnsemble {
        spectrum: spectrum.clone(),
        temperature: t,
        populations: weights.iter().map(|w| w / reduced).collect(),
        log_partition: reduced.ln() - e0 / t,
    })
}

impl ThermalEnsemble {
    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn populations(&self) -> &[f64] {
        &self.populations
    }

    pub fn log_partition(&self) -> f64 {
        self.log_partition
    }

    pub fn partition(&self) -> f64 {
        self.log_partition.exp()
    }

    /// `⟨Ĥ⟩ = Σ p_n ε_n`.
    pub fn mean_energy(&self) -> f64 {
        self.weighted(|e| e)
    }

    pub fn mean_square_energy(&self) -> f64 {
        self.weighted(|e| e * e)
    }

    /// `⟨Ĥ²⟩ − ⟨Ĥ⟩²`, accumulated as `Σ p_n (ε_n − ⟨Ĥ⟩)²`.
    pub fn energy_variance(&self) -> f64 {
        let mean = self.mean_energy();
        self.weighted(|e| (e - mean).powi(2))
    }

    /// `C(T) = ΔĤ²/T² = d⟨Ĥ⟩/dT`.
    pub fn heat_capacity(&self) -> f64 {
        self.energy_variance() / (self.temperature * self.temperature)
    }

    fn weighted(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.populations.iter().zip(self.spectrum.energies()).map(|(p, &e)| p * f(e)).sum()
    }
}
