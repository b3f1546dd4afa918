//! Single-mode Gaussian probes with vanishing first moments. Covariances use
//! the convention in which the vacuum is the identity.

use serde::{Deserialize, Serialize};

use crate::dynamics::DissipationModel;
use crate::equilibrium::{qfi_bures_oracle, Probe, QfiValue, TemperatureFamily};
use crate::error::{self, Error, Result};

const PHYSICALITY_SLACK: f64 = 1e-10;

/// Symmetric 2×2 covariance matrix `[[a, b], [b, c]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[[f64; 2]; 2]", into = "[[f64; 2]; 2]")]
pub struct CovarianceMatrix {
    a: f64,
    b: f64,
    c: f64,
}

impl CovarianceMatrix {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::UnphysicalCovariance(format!("non-finite entries [[{a}, {b}], [{b}, {c}]]")));
        }
        let m = CovarianceMatrix { a, b, c };
        if a <= 0.0 || c <= 0.0 || m.det() < 1.0 - PHYSICALITY_SLACK {
            return Err(Error::UnphysicalCovariance(format!(
                "[[{a}, {b}], [{b}, {c}]] violates det >= 1 (det = {})",
                m.det()
            )));
        }
        Ok(m)
    }

    pub fn vacuum() -> Self {
        CovarianceMatrix { a: 1.0, b: 0.0, c: 1.0 }
    }

    /// `coth(x/2)·𝟙` with `x = Ω/T`.
    pub fn thermal(x: f64) -> Result<Self> {
        let x = error::positive("x", x)?;
        let n = coth_half(x);
        Ok(CovarianceMatrix { a: n, b: 0.0, c: n })
    }

    /// Squeezed vacuum `diag(s, 1/s)`.
    pub fn squeezed(s: f64) -> Result<Self> {
        let s = error::positive("squeezing", s)?;
        Ok(CovarianceMatrix { a: s, b: 0.0, c: s.recip() })
    }

    pub fn entries(&self) -> [[f64; 2]; 2] {
        [[self.a, self.b], [self.b, self.c]]
    }

    pub fn det(&self) -> f64 {
        self.a * self.c - self.b * self.b
    }

    pub fn trace(&self) -> f64 {
        self.a + self.c
    }

    pub fn is_pure(&self, tolerance: f64) -> bool {
        (self.det() - 1.0).abs() <= tolerance
    }

    /// `w·self + (1 − w)·other`.
    fn mix(&self, other: &Self, w: f64) -> Self {
        let v = 1.0 - w;
        CovarianceMatrix { a: w * self.a + v * other.a, b: w * self.b + v * other.b, c: w * self.c + v * other.c }
    }
}

impl TryFrom<[[f64; 2]; 2]> for CovarianceMatrix {
    type Error = Error;

    fn try_from(m: [[f64; 2]; 2]) -> Result<Self> {
        if m[0][1] != m[1][0] {
            return Err(Error::UnphysicalCovariance(format!("not symmetric: {} != {}", m[0][1], m[1][0])));
        }
        CovarianceMatrix::new(m[0][0], m[0][1], m[1][1])
    }
}

impl From<CovarianceMatrix> for [[f64; 2]; 2] {
    fn from(m: CovarianceMatrix) -> Self {
        m.entries()
    }
}

/// An oscillator of frequency `Ω` in a zero-mean Gaussian state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianProbe {
    pub covariance: CovarianceMatrix,
    pub frequency: f64,
}

impl GaussianProbe {
    pub fn new(covariance: CovarianceMatrix, frequency: f64) -> Result<Self> {
        Ok(GaussianProbe { covariance, frequency: error::positive("frequency", frequency)? })
    }

    pub fn ground(frequency: f64) -> Result<Self> {
        Self::new(CovarianceMatrix::vacuum(), frequency)
    }

    pub fn thermal(frequency: f64, temperature: f64) -> Result<Self> {
        let t = error::temperature(temperature)?;
        Self::new(CovarianceMatrix::thermal(frequency / t)?, frequency)
    }
}

fn coth_half(x: f64) -> f64 {
    let e = (-x).exp();
    (1.0 + e) / -(-x).exp_m1()
}

/// Uhlmann fidelity `2/(√(Δ+Λ) − √Λ)` with `Δ = det(σ₁+σ₂)` and
/// `Λ = (det σ₁ − 1)(det σ₂ − 1)`.
pub fn fidelity_gaussian(s1: &CovarianceMatrix, s2: &CovarianceMatrix) -> f64 {
    let sum = CovarianceMatrix { a: s1.a + s2.a, b: s1.b + s2.b, c: s1.c + s2.c };
    let delta = sum.det();
    let lambda = ((s1.det() - 1.0) * (s2.det() - 1.0)).max(0.0);
    (2.0 / ((delta + lambda).sqrt() - lambda.sqrt())).min(1.0)
}

/// `1 − 𝔽` for Gaussian states, written in terms of `σ₂ − σ₁` so that it keeps
/// relative precision when the two states are close.
pub fn infidelity_gaussian(s1: &CovarianceMatrix, s2: &CovarianceMatrix) -> f64 {
    let (ea, eb, ec) = (s2.a - s1.a, s2.b - s1.b, s2.c - s1.c);
    let det_e = ea * ec - eb * eb;
    let d1 = s1.det();
    // tr(adj(σ₁)·E)/2
    let t = 0.5 * (s1.c * ea + s1.a * ec) - s1.b * eb;
    let u = (d1 - 1.0).max(0.0).sqrt();
    let v = (s2.det() - 1.0).max(0.0).sqrt();
    let sqrt_lambda = u * v;
    let delta = 4.0 * d1 + 4.0 * t + det_e;

    let u_minus_v = if u + v > 0.0 { -(2.0 * t + det_e) / (u + v) } else { 0.0 };
    let w1 = d1 - 1.0 + t;
    let den = w1 + sqrt_lambda;
    let excess = if den > 0.0 {
        let q = t * t + det_e * (1.0 - d1);
        q / den
    } else {
        w1 - sqrt_lambda
    };
    // Δ − 4 − 4√Λ
    let d = u_minus_v * u_minus_v + 2.0 * excess;
    let root = (delta + sqrt_lambda * sqrt_lambda).sqrt();
    let a = delta / (root + sqrt_lambda);
    (d / ((root + sqrt_lambda + 2.0) * a)).clamp(0.0, 1.0)
}

/// `Ω²/(4T⁴)·csch²(Ω/2T)`, computed from `x = Ω/T`.
pub(crate) fn harmonic_qfi(x: f64, temperature: f64) -> f64 {
    let em = (-x).exp_m1();
    x * x * (-x).exp() / (em * em * temperature * temperature)
}

/// Equilibrium Fisher information of a harmonic oscillator of frequency `Ω`.
pub fn qfi_harmonic_equilibrium(gap: f64, temperature: f64) -> Result<QfiValue> {
    let gap = error::positive("gap", gap)?;
    let t = error::temperature(temperature)?;
    Ok(QfiValue { value: harmonic_qfi(gap / t, t), temperature: t, probe: Probe::Harmonic })
}

/// Thermal states `σ_T` of an oscillator of frequency `gap`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalCovarianceFamily {
    pub gap: f64,
}

impl TemperatureFamily for ThermalCovarianceFamily {
    fn probe(&self) -> Probe {
        Probe::Harmonic
    }

    fn infidelity(&self, temperature: f64, other: f64) -> Result<f64> {
        let s1 = CovarianceMatrix::thermal(self.gap / error::temperature(temperature)?)?;
        let s2 = CovarianceMatrix::thermal(self.gap / error::temperature(other)?)?;
        Ok(infidelity_gaussian(&s1, &s2))
    }
}

/// `σ(t) = e^{−κt}σ₀ + (1 − e^{−κt})σ_T`.
///
/// `κ` is [`DissipationModel::covariance_damping_rate`], the rate at which
/// the mean occupation relaxes under the oscillator's master equation.
pub fn evolve_covariance(initial: &CovarianceMatrix, model: &DissipationModel, t: f64) -> Result<CovarianceMatrix> {
    let t = error::elapsed(t)?;
    relax(initial, model.covariance_damping_rate(), model.ratio(), t)
}

fn relax(initial: &CovarianceMatrix, rate: f64, x: f64, t: f64) -> Result<CovarianceMatrix> {
    let target = CovarianceMatrix::thermal(x)?;
    let moved = -(-rate * t).exp_m1();
    Ok(target.mix(initial, moved))
}

/// Transient Fisher information of an oscillator after contact time `Δt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicTransientQfi {
    /// Every temperature dependence of the model kept.
    pub full: QfiValue,
    /// Damping rate frozen at the working point; only `σ_T` varies.
    pub frozen: QfiValue,
}

struct TransientCovarianceFamily<'a> {
    initial: &'a CovarianceMatrix,
    model: &'a DissipationModel,
    dt: f64,
    frozen: bool,
}

impl TransientCovarianceFamily<'_> {
    fn state(&self, temperature: f64) -> Result<CovarianceMatrix> {
        let model = self.model.at_temperature(temperature)?;
        let rate = if self.frozen { self.model.covariance_damping_rate() } else { model.covariance_damping_rate() };
        relax(self.initial, rate, model.ratio(), self.dt)
    }
}

impl TemperatureFamily for TransientCovarianceFamily<'_> {
    fn probe(&self) -> Probe {
        Probe::Harmonic
    }

    fn infidelity(&self, temperature: f64, other: f64) -> Result<f64> {
        Ok(infidelity_gaussian(&self.state(temperature)?, &self.state(other)?))
    }
}

pub fn qfi_harmonic_transient(
    initial: &CovarianceMatrix,
    model: &DissipationModel,
    dt: f64,
) -> Result<HarmonicTransientQfi> {
    let dt = error::positive("dt", dt)?;
    let t = model.temperature();
    let full = qfi_bures_oracle(&TransientCovarianceFamily { initial, model, dt, frozen: false }, t)?;
    let frozen = qfi_bures_oracle(&TransientCovarianceFamily { initial, model, dt, frozen: true }, t)?;
    Ok(HarmonicTransientQfi { full, frozen })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::ultimate_rate;
    use approx::assert_relative_eq;

    fn fock_fidelity(x1: f64, x2: f64) -> f64 {
        let (q1, q2) = ((-x1).exp(), (-x2).exp());
        let overlap: f64 = (0..200).map(|n| ((1.0 - q1) * q1.powi(n) * (1.0 - q2) * q2.powi(n)).sqrt()).sum();
        overlap * overlap
    }

    #[test]
    fn vacuum_with_itself() {
        let v = CovarianceMatrix::vacuum();
        assert_eq!(fidelity_gaussian(&v, &v), 1.0);
        assert_eq!(infidelity_gaussian(&v, &v), 0.0);
    }

    #[test]
    fn mixed_state_with_itself() {
        let s = CovarianceMatrix::thermal(0.7).unwrap();
        assert!((fidelity_gaussian(&s, &s) - 1.0).abs() < 1e-10);
        assert_eq!(infidelity_gaussian(&s, &s), 0.0);
    }

    #[test]
    fn vacuum_against_thermal() {
        let x = 1.3;
        let s = CovarianceMatrix::thermal(x).unwrap();
        let f = fidelity_gaussian(&CovarianceMatrix::vacuum(), &s);
        assert_relative_eq!(f, -(-x).exp_m1(), max_relative = 1e-14);
        assert_relative_eq!(f, fock_fidelity(x, 60.0), max_relative = 1e-12);
    }

    #[test]
    fn thermal_pairs_match_fock_basis() {
        for (x1, x2) in [(0.2, 0.3), (1.0, 4.0), (2.5, 2.6), (0.25, 9.0)] {
            let s1 = CovarianceMatrix::thermal(x1).unwrap();
            let s2 = CovarianceMatrix::thermal(x2).unwrap();
            let oracle = fock_fidelity(x1, x2);
            assert!((fidelity_gaussian(&s1, &s2) - oracle).abs() < 1e-12);
            assert_relative_eq!(infidelity_gaussian(&s1, &s2), 1.0 - oracle, max_relative = 1e-8);
        }
    }

    #[test]
    fn stable_infidelity_on_general_pairs() {
        let pairs = [
            (CovarianceMatrix::new(2.0, 0.3, 1.5).unwrap(), CovarianceMatrix::new(1.1, -0.2, 1.4).unwrap()),
            (CovarianceMatrix::squeezed(2.0).unwrap(), CovarianceMatrix::vacuum()),
            (CovarianceMatrix::squeezed(3.0).unwrap(), CovarianceMatrix::squeezed(0.5).unwrap()),
        ];
        for (s1, s2) in pairs {
            let naive = 1.0 - fidelity_gaussian(&s1, &s2);
            assert_relative_eq!(infidelity_gaussian(&s1, &s2), naive, max_relative = 1e-12);
            assert_relative_eq!(infidelity_gaussian(&s2, &s1), naive, max_relative = 1e-12);
            assert_eq!(fidelity_gaussian(&s1, &s2), fidelity_gaussian(&s2, &s1));
        }
    }

    #[test]
    fn fidelity_falls_with_temperature_gap() {
        let s = CovarianceMatrix::thermal(1.0).unwrap();
        let mut last = 1.0;
        for x in [0.95, 0.8, 0.6, 0.3] {
            let f = fidelity_gaussian(&s, &CovarianceMatrix::thermal(x).unwrap());
            assert!(f < last);
            last = f;
        }
    }

    #[test]
    fn oracle_matches_closed_form() {
        for x in [0.2, 0.5, 1.0, 2.4, 5.0, 10.0] {
            let t = 1.0 / x;
            let oracle = qfi_bures_oracle(&ThermalCovarianceFamily { gap: 1.0 }, t).unwrap();
            let closed = qfi_harmonic_equilibrium(1.0, t).unwrap();
            assert_relative_eq!(oracle.value, closed.value, max_relative = 1e-6);
        }
    }

    #[test]
    fn harmonic_limits() {
        let t = 1e4;
        assert_relative_eq!(qfi_harmonic_equilibrium(1.0, t).unwrap().value * t * t, 1.0, max_relative = 1e-8);
        assert_eq!(qfi_harmonic_equilibrium(1.0, 1e-3).unwrap().value, 0.0);
        let closed = 2.4f64.powi(2) / (4.0 * 1.2f64.sinh().powi(2));
        assert_relative_eq!(qfi_harmonic_equilibrium(2.4, 1.0).unwrap().value, closed, max_relative = 1e-14);
    }

    #[test]
    fn covariance_relaxes_to_thermal() {
        let m = DissipationModel::new(1.5, 0.8, 1e-2).unwrap();
        let k = m.covariance_damping_rate();
        let s0 = CovarianceMatrix::new(3.0, 1.0, 1.0).unwrap();
        assert_eq!(evolve_covariance(&s0, &m, 0.0).unwrap(), s0);
        let target = CovarianceMatrix::thermal(m.ratio()).unwrap();
        let late = evolve_covariance(&s0, &m, 50.0 / k).unwrap();
        for (r, e) in late.entries().iter().flatten().zip(target.entries().iter().flatten()) {
            assert!((r - e).abs() < 1e-10);
        }
        let half = evolve_covariance(&CovarianceMatrix::vacuum(), &m, 2f64.ln() / k).unwrap();
        assert_relative_eq!(half.entries()[0][0], (1.0 + target.entries()[0][0]) / 2.0, max_relative = 1e-14);
        assert!(evolve_covariance(&s0, &m, -1.0).is_err());
    }

    #[test]
    fn evolution_stays_physical() {
        let m = DissipationModel::new(1.0, 2.0, 1e-3).unwrap();
        let s0 = CovarianceMatrix::squeezed(5.0).unwrap();
        for k in 0..50 {
            let t = k as f64 * 50.0;
            assert!(evolve_covariance(&s0, &m, t).unwrap().det() >= 1.0 - 1e-12);
        }
    }

    #[test]
    fn transient_rate_reaches_short_time_limit() {
        let m = DissipationModel::new(2.0, 1.0, 1e-3).unwrap();
        let dt = 1e-4 / m.covariance_damping_rate();
        let q = qfi_harmonic_transient(&CovarianceMatrix::vacuum(), &m, dt).unwrap();
        let limit = ultimate_rate(2, m.ratio(), m.gamma(), m.temperature()).unwrap();
        assert_relative_eq!(q.frozen.value / dt, limit, max_relative = 1e-3);
        assert_eq!(q.full.value, q.frozen.value);
    }

    #[test]
    fn transient_settles_at_equilibrium() {
        let m = DissipationModel::new(2.0, 1.0, 1e-3).unwrap();
        let q = qfi_harmonic_transient(&CovarianceMatrix::vacuum(), &m, 60.0 / m.covariance_damping_rate()).unwrap();
        assert_relative_eq!(q.full.value, qfi_harmonic_equilibrium(2.0, 1.0).unwrap().value, max_relative = 1e-6);
    }

    #[test]
    fn squeezing_does_not_beat_ground() {
        let m = DissipationModel::new(2.0, 1.0, 1e-3).unwrap();
        let sq = CovarianceMatrix::squeezed(2.0).unwrap();
        for k in [0.01, 0.1, 0.5] {
            let dt = k / m.covariance_damping_rate();
            let g = qfi_harmonic_transient(&CovarianceMatrix::vacuum(), &m, dt).unwrap().full.value;
            let s = qfi_harmonic_transient(&sq, &m, dt).unwrap().full.value;
            assert!(g > s, "dt = {dt}: {g} <= {s}");
        }
    }

    #[test]
    fn rejects_unphysical() {
        assert!(CovarianceMatrix::new(0.5, 0.0, 0.5).is_err());
        assert!(CovarianceMatrix::new(1.0, 0.5, 1.0).is_err());
        assert!(CovarianceMatrix::try_from([[2.0, 0.1], [0.2, 2.0]]).is_err());
        assert!(CovarianceMatrix::new(f64::NAN, 0.0, 1.0).is_err());
    }

    #[test]
    fn serde_as_nested_array() {
        let m = CovarianceMatrix::new(2.0, 0.5, 1.5).unwrap();
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, "[[2.0,0.5],[0.5,1.5]]");
        assert_eq!(serde_json::from_str::<CovarianceMatrix>(&json).unwrap(), m);
        assert!(serde_json::from_str::<CovarianceMatrix>("[[0.1,0],[0,0.1]]").is_err());
    }
}
