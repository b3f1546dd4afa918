use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::equilibrium::{infidelity_diagonal, Probe, QfiValue, TemperatureFamily, ORACLE_RELATIVE_STEP};
use crate::error::{self, Error, Result};
use crate::numerics::{central_diff_with, find_root, BracketedRoot, Derivative};

use super::evolve::{nlevel_evolve_steps, nlevel_steps, qubit_interaction_steps, qubit_steps};
use super::{DissipationModel, Preparation, QubitState};

const PURE_STATE_DEFECT: f64 = 1e-12;

/// Bures Fisher information of a qubit from its Bloch vector `r` and
/// derivative `∂r`: `|∂r|² + (r·∂r)²/(1 − |r|²)`.
pub fn bloch_qfi(state: &QubitState, derivative: [f64; 3]) -> Result<f64> {
    let r = state.bloch();
    let grad2: f64 = derivative.iter().map(|d| d * d).sum();
    let dot: f64 = r.iter().zip(&derivative).map(|(a, b)| a * b).sum();
    if dot == 0.0 {
        return Ok(grad2);
    }
    let defect = state.purity_defect();
    if defect <= PURE_STATE_DEFECT {
        if dot.abs() <= PURE_STATE_DEFECT * grad2.sqrt() {
            return Ok(grad2);
        }
        return Err(Error::SingularState { purity_defect: defect });
    }
    Ok(grad2 + dot * dot / defect)
}

/// Classical Fisher information `Σ (∂p)²/p`.
pub fn classical_fisher(populations: &[f64], derivative: &[f64]) -> f64 {
    populations.iter().zip(derivative).filter(|(p, _)| **p > 0.0).map(|(p, d)| d * d / p).sum()
}

/// `1 − 𝔽` for two qubits, as `[|r − s|² + (√(1−r²) − √(1−s²))²]/4`.
pub fn infidelity_qubit(a: &QubitState, b: &QubitState) -> f64 {
    let (r, s) = (a.bloch(), b.bloch());
    let dist2: f64 = r.iter().zip(&s).map(|(x, y)| (x - y).powi(2)).sum();
    let (da, db) = (a.purity_defect().max(0.0), b.purity_defect().max(0.0));
    let roots = da.sqrt() + db.sqrt();
    let mixed = if roots > 0.0 { (da - db) / roots } else { 0.0 };
    0.25 * (dist2 + mixed * mixed)
}

/// States reached after a contact time `dt`, as a function of the sample
/// temperature. The number of integration steps is fixed at the working
/// point so that nearby temperatures are integrated on the same mesh.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransientFamily {
    pub preparation: Preparation,
    pub levels: usize,
    pub model: DissipationModel,
    pub dt: f64,
}

enum Evolved {
    Qubit(QubitState),
    Diagonal(Vec<f64>),
}

impl TransientFamily {
    pub fn new(preparation: Preparation, levels: usize, model: DissipationModel, dt: f64) -> Result<Self> {
        if levels < 2 {
            return Err(Error::DimensionTooSmall { dimension: levels, minimum: 2 });
        }
        if levels > 2 && !preparation.is_diagonal() {
            return Err(Error::InvalidState("coherent preparations are only supported for qubits".into()));
        }
        if let Preparation::Thermal { temperature } = preparation {
            error::temperature(temperature)?;
        }
        Ok(TransientFamily { preparation, levels, model, dt: error::positive("dt", dt)? })
    }

    fn is_qubit(&self) -> bool {
        self.levels == 2
    }

    fn evolve(&self, temperature: f64) -> Result<Evolved> {
        let model = self.model.at_temperature(temperature)?;
        let gap = self.model.gap();
        if self.is_qubit() {
            let steps = qubit_steps(&self.model, self.dt);
            let prep = self.preparation.qubit_state(gap, temperature)?;
            Ok(Evolved::Qubit(qubit_interaction_steps(&prep, &model, self.dt, steps)?))
        } else {
            let steps = nlevel_steps(self.levels, &self.model, self.dt);
            let prep = self.preparation.diagonal_state(self.levels, gap, temperature)?;
            Ok(Evolved::Diagonal(nlevel_evolve_steps(&prep, &model, self.dt, steps)?.populations().to_vec()))
        }
    }

    fn components(&self, temperature: f64) -> Result<Vec<f64>> {
        Ok(match self.evolve(temperature)? {
            Evolved::Qubit(s) => s.bloch().to_vec(),
            Evolved::Diagonal(p) => p,
        })
    }

    /// Fisher information of the evolved state with respect to the sample
    /// temperature, differentiating through both the Gibbs target and the
    /// rates.
    pub fn qfi(&self) -> Result<QfiValue> {
        let t = self.model.temperature();
        let d = central_diff_with(|temp| self.components(temp), t, ORACLE_RELATIVE_STEP * t, Derivative::First)?;
        let value = match self.evolve(t)? {
            Evolved::Qubit(s) => bloch_qfi(&s, [d[0], d[1], d[2]])?,
            Evolved::Diagonal(p) => classical_fisher(&p, &d),
        };
        Ok(QfiValue { value, temperature: t, probe: self.probe() })
    }
}

impl TemperatureFamily for TransientFamily {
    fn probe(&self) -> Probe {
        if self.is_qubit() {
            Probe::Qubit
        } else {
            Probe::DiagonalNLevel { levels: self.levels }
        }
    }

    fn infidelity(&self, temperature: f64, other: f64) -> Result<f64> {
        match (self.evolve(temperature)?, self.evolve(other)?) {
            (Evolved::Qubit(a), Evolved::Qubit(b)) => Ok(infidelity_qubit(&a, &b)),
            (Evolved::Diagonal(p), Evolved::Diagonal(q)) => Ok(infidelity_diagonal(&p, &q)),
            _ => unreachable!("a family evolves a single kind of state"),
        }
    }
}

/// Fisher information about the sample temperature after one interrogation
/// of length `dt`. Qubits (`levels = 2`) use the Bloch-vector form, larger
/// probes the classical form on their populations.
///
/// The interaction picture is used throughout: the rotation back to the
/// Schrödinger picture does not depend on temperature and leaves the
/// information unchanged.
pub fn qfi_transient(preparation: &Preparation, levels: usize, model: &DissipationModel, dt: f64) -> Result<QfiValue> {
    TransientFamily::new(*preparation, levels, *model, dt)?.qfi()
}

/// Closed form of [`qfi_transient`] for a ground-state qubit:
///
/// `F₂ = x²(eˣ(u−1) + (1+eˣ) s csch x)² / ((1+eˣ)²(u−1)(1+eˣu)T²)`
///
/// with `s = Δt/τ` and `u = eˢ`, evaluated in a form free of overflow and
/// cancellation for small and large `s`.
pub fn qfi_transient_closed_form_qubit(x: f64, dt: f64, tau: f64, temperature: f64) -> Result<QfiValue> {
    let x = error::positive("x", x)?;
    let s = error::positive("dt", dt)? / error::positive("tau", tau)?;
    let t = error::temperature(temperature)?;
    let w = (-x).exp();
    let um1 = s.exp_m1();
    let c = 2.0 * s / x.exp_m1();
    // (um1 + c)²/(um1 (e^{−x} + 1 + um1)), split to avoid ∞/∞
    let growth = (1.0 + c / um1) * (1.0 + (c - 1.0 - w) / (1.0 + w + um1));
    let value = x * x * w / ((1.0 + w).powi(2) * t * t) * growth;
    Ok(QfiValue { value, temperature: t, probe: Probe::Qubit })
}

/// `lim_{Δt→0} F_N(Δt)/Δt = γT(N−1)x⁵e^{2x}/(eˣ−1)³` for a ground-state
/// preparation.
pub fn ultimate_rate(levels: usize, x: f64, gamma: f64, temperature: f64) -> Result<f64> {
    if levels < 2 {
        return Err(Error::DimensionTooSmall { dimension: levels, minimum: 2 });
    }
    let x = error::positive("x", x)?;
    let gamma = error::positive("gamma", gamma)?;
    let t = error::temperature(temperature)?;
    let em = -(-x).exp_m1();
    Ok(gamma * t * (levels - 1) as f64 * x.powi(5) * (-x).exp() / (em * em * em))
}

/// Ratio `x̃` maximizing [`ultimate_rate`], the root of `eˣ(5−x) = 5+2x` in
/// `(0, 5)`. It does not depend on the probe dimension.
pub fn optimal_short_time_ratio() -> Result<BracketedRoot> {
    find_root(|x| x.exp() * (5.0 - x) - (5.0 + 2.0 * x), 0.1, 4.999, 1e-12)
}

/// Sequential protocol: `ν = t_s/Δt` interrogations of length `Δt`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProtocolConfig {
    pub total_time: f64,
    pub interrogation_time: f64,
    pub preparation: Preparation,
}

impl ProtocolConfig {
    pub fn new(total_time: f64, interrogation_time: f64, preparation: Preparation) -> Result<Self> {
        let dt = error::positive("interrogation_time", interrogation_time)?;
        let ts = error::positive("total_time", total_time)?;
        if ts < dt {
            return Err(Error::InvalidParameter {
                name: "total_time",
                reason: format!("{ts} allows no complete interrogation of length {dt}"),
            });
        }
        Ok(ProtocolConfig { total_time: ts, interrogation_time: dt, preparation })
    }

    pub fn repetitions(&self) -> f64 {
        self.total_time / self.interrogation_time
    }

    /// Cramér-Rao bound on the temperature error after all repetitions.
    pub fn temperature_uncertainty(&self, per_shot: &QfiValue) -> f64 {
        per_shot.temperature_uncertainty(self.repetitions())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolOptimum {
    /// Best interrogation time found.
    pub dt_star: f64,
    /// `F(Δt*)/Δt*`.
    pub fisher_rate: f64,
    /// The maximum sits at the first grid point, so the optimum lies at or
    /// below the grid.
    pub at_lower_edge: bool,
    pub at_upper_edge: bool,
    /// `Δt → 0` supremum for ground-state preparations.
    pub short_time_limit: Option<f64>,
    pub grid_rates: Vec<f64>,
}

fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter { name: "dt_grid", reason: "empty".into() });
    }
    if grid.iter().any(|d| !(d.is_finite() && *d > 0.0)) || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter { name: "dt_grid", reason: "must be positive and strictly ascending".into() });
    }
    Ok(())
}

/// Maximizes `F(Δt)/Δt` over `grid`, refining an interior maximum by
/// golden-section search in `ln Δt`.
pub fn optimize_protocol(
    model: &DissipationModel,
    preparation: &Preparation,
    levels: usize,
    grid: &[f64],
) -> Result<ProtocolOptimum> {
    validate_grid(grid)?;
    let rate = |dt: f64| Ok::<_, Error>(qfi_transient(preparation, levels, model, dt)?.value / dt);
    let grid_rates = grid.iter().map(|&dt| rate(dt)).collect::<Result<Vec<_>>>()?;
    let best = (0..grid.len()).max_by(|&i, &j| grid_rates[i].total_cmp(&grid_rates[j])).unwrap_or(0);
    let at_lower_edge = best == 0;
    let at_upper_edge = best + 1 == grid.len();

    let (mut dt_star, mut fisher_rate) = (grid[best], grid_rates[best]);
    if !at_lower_edge && !at_upper_edge {
        let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
        let (mut a, mut b) = (grid[best - 1].ln(), grid[best + 1].ln());
        let mut c = b - inv_phi * (b - a);
        let mut d = a + inv_phi * (b - a);
        let (mut fc, mut fd) = (rate(c.exp())?, rate(d.exp())?);
        while b - a > 1e-8 {
            if fc > fd {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = rate(c.exp())?;
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = rate(d.exp())?;
            }
        }
        let (x, f) = if fc > fd { (c, fc) } else { (d, fd) };
        if f > fisher_rate {
            dt_star = x.exp();
            fisher_rate = f;
        }
    }

    let short_time_limit = match preparation {
        Preparation::Ground => Some(ultimate_rate(levels, model.ratio(), model.gamma(), model.temperature())?),
        _ => None,
    };
    Ok(ProtocolOptimum { dt_star, fisher_rate, at_lower_edge, at_upper_edge, short_time_limit, grid_rates })
}

/// One curve of a transient scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransientSeries {
    pub preparation: Preparation,
    pub levels: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransientRow {
    pub preparation: Preparation,
    pub levels: usize,
    pub dt: f64,
    pub fisher_rate: f64,
}

/// `F(Δt)/Δt` for each series over `grid`, evaluated in parallel. Rows are
/// ordered by series, then by `Δt`.
pub fn transient_scan(series: &[TransientSeries], model: &DissipationModel, grid: &[f64]) -> Result<Vec<TransientRow>> {
    validate_grid(grid)?;
    let families = series
        .iter()
        .map(|s| TransientFamily::new(s.preparation, s.levels, *model, grid[0]))
        .collect::<Result<Vec<_>>>()?;
    (0..series.len() * grid.len())
        .into_par_iter()
        .map(|k| {
            let (s, dt) = (&series[k / grid.len()], grid[k % grid.len()]);
            let family = TransientFamily { dt, ..families[k / grid.len()] };
            let rate = family.qfi()?.value / dt;
            Ok(TransientRow { preparation: s.preparation, levels: s.levels, dt, fisher_rate: rate })
        })
        .collect()
}
