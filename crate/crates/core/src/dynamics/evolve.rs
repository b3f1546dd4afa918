use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{self, Error, Result};
use crate::numerics::{integrate_ode_steps, steps_for};
use crate::spectra::EffectiveTwoLevelSpectrum;

use super::DissipationModel;

/// RK4 steps per relaxation time.
pub const STEPS_PER_RELAXATION_TIME: f64 = 200.0;

const NORM_SLACK: f64 = 1e-12;

/// Qubit state as a Bloch vector; `r_z = −1` is the ground state of
/// `Ĥ = (Ω/2)σ_z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QubitState {
    bloch: [f64; 3],
}

impl QubitState {
    pub fn new(bloch: [f64; 3]) -> Result<Self> {
        if bloch.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidState(format!("non-finite Bloch vector {bloch:?}")));
        }
        let s = QubitState { bloch };
        if s.norm() > 1.0 + NORM_SLACK {
            return Err(Error::InvalidState(format!("Bloch vector longer than 1: |r| = {}", s.norm())));
        }
        Ok(s)
    }

    pub fn ground() -> Self {
        QubitState { bloch: [0.0, 0.0, -1.0] }
    }

    /// Gibbs state of a qubit with `x = Ω/T`.
    pub fn thermal(x: f64) -> Self {
        QubitState { bloch: [0.0, 0.0, -(0.5 * x).tanh()] }
    }

    /// `|+⟩`, the equal superposition of both levels.
    pub fn plus() -> Self {
        QubitState { bloch: [1.0, 0.0, 0.0] }
    }

    pub fn bloch(&self) -> [f64; 3] {
        self.bloch
    }

    pub fn norm(&self) -> f64 {
        self.bloch.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// `1 − |r|²`, zero for pure states.
    pub fn purity_defect(&self) -> f64 {
        let n = self.norm();
        (1.0 - n) * (1.0 + n)
    }

    /// `[p_ground, p_excited]`.
    pub fn populations(&self) -> [f64; 2] {
        let z = self.bloch[2];
        [0.5 * (1.0 - z), 0.5 * (1.0 + z)]
    }

    /// Rotation generated by `Ĥ` over a time `t`.
    pub fn rotated(&self, gap: f64, t: f64) -> Self {
        let (s, c) = (gap * t).sin_cos();
        let [x, y, z] = self.bloch;
        QubitState { bloch: [c * x - s * y, s * x + c * y, z] }
    }
}

/// Diagonal state of an effective two-level probe with a single ground
/// level (index 0) and `N − 1` excited levels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagonalState {
    populations: Vec<f64>,
}

impl DiagonalState {
    pub fn new(populations: Vec<f64>) -> Result<Self> {
        if populations.len() < 2 {
            return Err(Error::DimensionTooSmall { dimension: populations.len(), minimum: 2 });
        }
        if populations.iter().any(|p| !(p.is_finite() && *p >= -NORM_SLACK)) {
            return Err(Error::InvalidState(format!("populations must be nonnegative: {populations:?}")));
        }
        let total: f64 = populations.iter().sum();
        if (total - 1.0).abs() > NORM_SLACK {
            return Err(Error::InvalidState(format!("populations sum to {total}")));
        }
        Ok(DiagonalState { populations })
    }

    pub fn ground(levels: usize) -> Result<Self> {
        let mut p = vec![0.0; levels];
        if let Some(g) = p.first_mut() {
            *g = 1.0;
        }
        Self::new(p)
    }

    /// Gibbs state with `N − 1` degenerate excited levels and `x = Ω/T`.
    pub fn thermal(levels: usize, x: f64) -> Result<Self> {
        if levels < 2 {
            return Err(Error::DimensionTooSmall { dimension: levels, minimum: 2 });
        }
        let w = (-x).exp();
        let z = 1.0 + (levels - 1) as f64 * w;
        let mut p = vec![w / z; levels];
        p[0] = 1.0 / z;
        Ok(DiagonalState { populations: p })
    }

    pub fn populations(&self) -> &[f64] {
        &self.populations
    }

    pub fn dimension(&self) -> usize {
        self.populations.len()
    }

    pub fn excited_population(&self) -> f64 {
        self.populations[1..].iter().sum()
    }
}

/// Initial state of each interrogation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Preparation {
    Ground,
    /// Gibbs state at `temperature`, which need not be the sample's.
    Thermal { temperature: f64 },
    /// `|+⟩`; qubits only.
    PlusState,
    /// Already in equilibrium with the sample, whatever its temperature.
    Equilibrium,
}

impl Preparation {
    /// Initial qubit state when the sample is at `sample_temperature`.
    pub fn qubit_state(&self, gap: f64, sample_temperature: f64) -> Result<QubitState> {
        match *self {
            Preparation::Ground => Ok(QubitState::ground()),
            Preparation::Thermal { temperature } => Ok(QubitState::thermal(gap / error::temperature(temperature)?)),
            Preparation::PlusState => Ok(QubitState::plus()),
            Preparation::Equilibrium => Ok(QubitState::thermal(gap / error::temperature(sample_temperature)?)),
        }
    }

    pub fn diagonal_state(&self, levels: usize, gap: f64, sample_temperature: f64) -> Result<DiagonalState> {
        match *self {
            Preparation::Ground => DiagonalState::ground(levels),
            Preparation::Thermal { temperature } => DiagonalState::thermal(levels, gap / error::temperature(temperature)?),
            Preparation::Equilibrium => DiagonalState::thermal(levels, gap / error::temperature(sample_temperature)?),
            Preparation::PlusState => {
                Err(Error::InvalidState("coherent preparations are only supported for qubits".into()))
            }
        }
    }

    pub fn is_diagonal(&self) -> bool {
        !matches!(self, Preparation::PlusState)
    }
}

impl fmt::Display for Preparation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preparation::Ground => f.write_str("ground"),
            Preparation::Thermal { temperature } => write!(f, "thermal:{temperature}"),
            Preparation::PlusState => f.write_str("plus"),
            Preparation::Equilibrium => f.write_str("equilibrium"),
        }
    }
}

pub(crate) fn qubit_steps(model: &DissipationModel, t: f64) -> usize {
    steps_for(t, model.relaxation_time() / STEPS_PER_RELAXATION_TIME)
}

pub(crate) fn nlevel_steps(levels: usize, model: &DissipationModel, t: f64) -> usize {
    // the fastest mode is the symmetric excited one, at Γ(1 + (N−1)e^{−x})
    let fastest = model.decay_rate() + (levels - 1) as f64 * model.excitation_rate();
    steps_for(t, (fastest * STEPS_PER_RELAXATION_TIME).recip())
}

/// Bloch equations in the interaction picture with exactly `steps` RK4 steps.
pub(crate) fn qubit_interaction_steps(
    prep: &QubitState,
    model: &DissipationModel,
    t: f64,
    steps: usize,
) -> Result<QubitState> {
    let rate = model.relaxation_rate();
    let target = -(0.5 * model.ratio()).tanh();
    let rhs = |r: &[f64], dr: &mut [f64]| {
        dr[0] = -0.5 * rate * r[0];
        dr[1] = -0.5 * rate * r[1];
        dr[2] = -rate * (r[2] - target);
    };
    let r = integrate_ode_steps(rhs, &prep.bloch, t, steps)?;
    Ok(QubitState { bloch: [r[0], r[1], r[2]] })
}

/// Dissipative qubit evolution in the interaction picture: populations relax
/// to the Gibbs state at `1/τ`, coherences at `1/(2τ)`.
pub fn evolve_qubit_interaction(prep: &QubitState, model: &DissipationModel, t: f64) -> Result<QubitState> {
    let t = error::elapsed(t)?;
    qubit_interaction_steps(prep, model, t, qubit_steps(model, t))
}

/// Dissipative qubit evolution in the Schrödinger picture.
pub fn evolve_qubit(prep: &QubitState, model: &DissipationModel, t: f64) -> Result<QubitState> {
    Ok(evolve_qubit_interaction(prep, model, t)?.rotated(model.gap(), t))
}

pub(crate) fn nlevel_evolve_steps(
    prep: &DiagonalState,
    model: &DissipationModel,
    t: f64,
    steps: usize,
) -> Result<DiagonalState> {
    let (down, up) = (model.decay_rate(), model.excitation_rate());
    let rhs = |p: &[f64], dp: &mut [f64]| {
        let mut outflow = 0.0;
        for i in 1..p.len() {
            dp[i] = up * p[0] - down * p[i];
            outflow += dp[i];
        }
        dp[0] = -outflow;
    };
    Ok(DiagonalState { populations: integrate_ode_steps(rhs, &prep.populations, t, steps)? })
}

/// Rate equations for an effective two-level probe whose excited levels each
/// exchange population with the single ground level.
pub fn evolve_nlevel(
    prep: &DiagonalState,
    spectrum: &EffectiveTwoLevelSpectrum,
    model: &DissipationModel,
    t: f64,
) -> Result<DiagonalState> {
    let t = error::elapsed(t)?;
    if spectrum.ground_degeneracy() != 1 {
        return Err(Error::UnsupportedDegeneracy(spectrum.ground_degeneracy()));
    }
    if prep.dimension() != spectrum.dimension() {
        return Err(Error::InvalidState(format!(
            "state has {} levels, spectrum has {}",
            prep.dimension(),
            spectrum.dimension()
        )));
    }
    if (spectrum.gap() - model.gap()).abs() > 1e-12 * model.gap() {
        return Err(Error::InvalidParameter {
            name: "gap",
            reason: format!("spectrum gap {} differs from model gap {}", spectrum.gap(), model.gap()),
        });
    }
    nlevel_evolve_steps(prep, model, t, nlevel_steps(prep.dimension(), model, t))
}
