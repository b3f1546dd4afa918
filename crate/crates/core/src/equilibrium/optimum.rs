use crate::error::{self, Error, Result};
use crate::numerics::{find_root, SymmetricMatrix};
use crate::spectra::{two_level_variance_ratio, EffectiveTwoLevelSpectrum, Spectrum, ThermalEnsemble};

/// Lower end of the bracket for `x*`, just above the pole at `x = 2`.
const GAP_BRACKET_FLOOR: f64 = 2.0 + 1e-9;
const GAP_TOLERANCE: f64 = 1e-14;

/// Optimal gap of an effective two-level probe at temperature `T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalGapResult {
    /// `x* = Ω*/T`, always above 2.
    pub x_star: f64,
    pub gap: f64,
    pub n: usize,
    pub n0: usize,
    pub temperature: f64,
    /// Energy variance at the optimum, `T²(x*² − 4)/4`.
    pub variance: f64,
    pub qfi_at_optimum: f64,
    /// `e^{x*} − ((N−N₀)/N₀)(x*+2)/(x*−2)`.
    pub residual: f64,
}

impl OptimalGapResult {
    pub fn spectrum(&self) -> EffectiveTwoLevelSpectrum {
        EffectiveTwoLevelSpectrum::new(self.gap, self.n, self.n0).expect("validated in optimal_gap")
    }
}

/// Residual of the stationarity condition `e^x = r (x+2)/(x−2)`.
pub(crate) fn gap_equation_residual(x: f64, ratio: f64) -> f64 {
    x.exp() - ratio * (x + 2.0) / (x - 2.0)
}

/// Solves `e^x = ((N−N₀)/N₀)(x+2)/(x−2)` for the gap maximizing the energy
/// variance of an effective two-level spectrum.
///
/// The root is found on the monotone, pole-free rewrite
/// `(x − 2) − r (x + 2) e^{−x} = 0`.
pub fn optimal_gap(n: usize, n0: usize, temperature: f64) -> Result<OptimalGapResult> {
    let t = error::temperature(temperature)?;
    if n < 2 {
        return Err(Error::DimensionTooSmall { dimension: n, minimum: 2 });
    }
    if n0 == 0 || n0 >= n {
        return Err(Error::InvalidDegeneracy { n, n0, max: n - 1 });
    }
    let ratio = (n - n0) as f64 / n0 as f64;
    let hi = 2.0 + ((4.0 * ratio).ln() + 10.0).max(1.0);
    let root = find_root(|x| (x - 2.0) - ratio * (x + 2.0) * (-x).exp(), GAP_BRACKET_FLOOR, hi, GAP_TOLERANCE)?;
    let x = root.root;
    let variance = t * t * two_level_variance_ratio(x, n, n0);
    Ok(OptimalGapResult {
        x_star: x,
        gap: x * t,
        n,
        n0,
        temperature: t,
        variance,
        qfi_at_optimum: variance / t.powi(4),
        residual: gap_equation_residual(x, ratio),
    })
}

/// Closed-form QFI of the optimal family (non-degenerate ground level) at
/// ratio `x = Ω/T`:  `x⁴ eˣ (N−1) / (Ω² (N−1+eˣ)²)`.
pub fn qfi_optimal_probe(n: usize, x: f64, gap: f64) -> f64 {
    let m = (n - 1) as f64;
    let w = (-x).exp();
    x.powi(4) * m * w / (gap * gap * (m * w + 1.0).powi(2))
}

/// Optimal-variance comparison between ground degeneracies `N₀ − 1` and `N₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegeneracyGain {
    pub n: usize,
    pub n0: usize,
    /// `ΔĤ²(x*_{N,N₀−1}) − ΔĤ²(x*_{N,N₀})` from the two optima.
    pub variance_gain: f64,
    /// `T² (x*²_{N,N₀−1} − x*²_{N,N₀}) / 4`.
    pub predicted_gain: f64,
}

pub fn degeneracy_gain(n: usize, n0: usize, temperature: f64) -> Result<DegeneracyGain> {
    if n0 < 2 {
        return Err(Error::InvalidDegeneracy { n, n0, max: n.saturating_sub(1) });
    }
    let less = optimal_gap(n, n0 - 1, temperature)?;
    let more = optimal_gap(n, n0, temperature)?;
    let t = less.temperature;
    Ok(DegeneracyGain {
        n,
        n0,
        variance_gain: less.variance - more.variance,
        predicted_gain: t * t * (less.x_star.powi(2) - more.x_star.powi(2)) / 4.0,
    })
}

/// `(ε_i − ε_j)[ε_i + ε_j − 2(⟨Ĥ⟩ + T)]` for every pair `i < j`, row-major.
pub fn stationarity_residual(spectrum: &Spectrum, temperature: f64) -> Result<Vec<f64>> {
    let ens = spectrum.thermalize(temperature)?;
    let pivot = 2.0 * (ens.mean_energy() + ens.temperature());
    let e = spectrum.energies();
    let mut out = Vec::with_capacity(e.len() * (e.len() - 1) / 2);
    for i in 0..e.len() {
        for j in (i + 1)..e.len() {
            out.push((e[i] - e[j]) * (e[i] + e[j] - pivot));
        }
    }
    Ok(out)
}

/// `∂ΔĤ²/∂ε_i` for every level.
pub fn variance_gradient(ensemble: &ThermalEnsemble) -> Vec<f64> {
    let t = ensemble.temperature();
    let h1 = ensemble.mean_energy();
    let h2 = ensemble.mean_square_energy();
    ensemble
        .populations()
        .iter()
        .zip(ensemble.spectrum().energies())
        .map(|(&p, &e)| p * ((h2 - 2.0 * h1 * h1) / t + e * (2.0 - e / t) + 2.0 * h1 * (e / t - 1.0)))
        .collect()
}

/// Hessian `∂²ΔĤ²/∂ε_i∂ε_j` of the thermal energy variance.
pub fn variance_hessian(ensemble: &ThermalEnsemble) -> SymmetricMatrix {
    let t = ensemble.temperature();
    let h1 = ensemble.mean_energy();
    let h2 = ensemble.mean_square_energy();
    let p = ensemble.populations();
    let e = ensemble.spectrum().energies();
    SymmetricMatrix::from_fn(e.len(), |i, j| {
        if i == j {
            let ei = e[i];
            let bulk = 2.0 * (h2 - 3.0 * h1 * h1 - 4.0 * t * h1 - t * t) + 8.0 * (t + h1) * ei - 4.0 * ei * ei;
            let own = 2.0 * t * t + 2.0 * h1 * (2.0 * t + h1) - h2 - 2.0 * (2.0 * t + h1) * ei + ei * ei;
            (p[i] / t).powi(2) * bulk + p[i] / (t * t) * own
        } else {
            let s = e[i] + e[j];
            p[i] * p[j] / (t * t) * (4.0 * h1 * (s - 2.0 * t) + s * (4.0 * t - s) + 2.0 * h2 - 6.0 * h1 * h1 - 2.0 * t * t)
        }
    })
}
