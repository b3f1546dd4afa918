use crate::error::{self, Error, Result};
use crate::gaussian::harmonic_qfi;
use crate::numerics::find_root;

use super::optimum::qfi_optimal_probe;

/// One curve of the equilibrium scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Series {
    /// Optimal effective two-level probe with `n` levels.
    Optimal { n: usize },
    Harmonic,
}

impl Series {
    fn qfi(&self, x: f64, gap: f64) -> f64 {
        match *self {
            Series::Optimal { n } => qfi_optimal_probe(n, x, gap),
            Series::Harmonic => harmonic_qfi(x, gap / x),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub series: Series,
    pub ratio: f64,
    pub temperature: f64,
    pub qfi: f64,
    /// `qfi` divided by the curve's maximum over temperature.
    pub qfi_normalized: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesPeak {
    pub series: Series,
    pub ratio: f64,
    pub temperature: f64,
    pub qfi: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumScan {
    pub gap: f64,
    pub peaks: Vec<SeriesPeak>,
    pub rows: Vec<ScanRow>,
}

impl EquilibriumScan {
    pub fn series(&self) -> impl Iterator<Item = Series> + '_ {
        self.peaks.iter().map(|p| p.series)
    }

    pub fn rows_of(&self, series: Series) -> impl Iterator<Item = &ScanRow> + '_ {
        self.rows.iter().filter(move |r| r.series == series)
    }

    pub fn peak(&self, series: Series) -> Option<&SeriesPeak> {
        self.peaks.iter().find(|p| p.series == series)
    }

    /// Full width at half maximum in temperature, interpolated linearly on
    /// the scanned grid. `None` if the curve does not fall below one half on
    /// both sides within the grid.
    pub fn fwhm(&self, series: Series) -> Option<f64> {
        let mut pts: Vec<(f64, f64)> = self.rows_of(series).map(|r| (r.temperature, r.qfi_normalized)).collect();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let top = (0..pts.len()).max_by(|&i, &j| pts[i].1.total_cmp(&pts[j].1))?;
        let crossing = |i: usize, j: usize| {
            let ((t0, y0), (t1, y1)) = (pts[i], pts[j]);
            t0 + (0.5 - y0) * (t1 - t0) / (y1 - y0)
        };
        let left = (1..=top).rev().find(|&i| pts[i - 1].1 < 0.5).map(|i| crossing(i - 1, i))?;
        let right = (top..pts.len() - 1).find(|&i| pts[i + 1].1 < 0.5).map(|i| crossing(i, i + 1))?;
        Some(right - left)
    }
}

/// Ratio `x = Ω/T` at which a curve peaks as a function of `T` at fixed `Ω`.
///
/// For the optimal probes this solves `4/x + 1 − 2eˣ/(N−1+eˣ) = 0`; for the
/// oscillator `4/x = coth(x/2)`. Note this differs from `x*`, which maximizes
/// over `Ω` at fixed `T`.
pub fn fixed_gap_peak_ratio(series: Series) -> Result<f64> {
    let tol = 1e-14;
    match series {
        Series::Optimal { n } => {
            if n < 2 {
                return Err(Error::DimensionTooSmall { dimension: n, minimum: 2 });
            }
            let m = (n - 1) as f64;
            let f = |x: f64| 4.0 / x + 1.0 - 2.0 / (m * (-x).exp() + 1.0);
            Ok(find_root(f, 1e-3, 60.0 + m.ln(), tol)?.root)
        }
        Series::Harmonic => {
            let f = |x: f64| 4.0 / x - (1.0 + (-x).exp()) / (-(-x).exp_m1());
            Ok(find_root(f, 1e-3, 60.0, tol)?.root)
        }
    }
}

/// QFI versus temperature for optimized probes of each dimension in
/// `dimensions` plus the harmonic oscillator, on temperatures `T = Ω/x`.
pub fn qfi_equilibrium_scan(dimensions: &[usize], ratios: &[f64], gap: f64) -> Result<EquilibriumScan> {
    let gap = error::positive("gap", gap)?;
    if let Some(&bad) = ratios.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
        return Err(Error::InvalidParameter { name: "x_grid", reason: format!("ratios must be positive, got {bad}") });
    }
    let mut series: Vec<Series> = dimensions.iter().map(|&n| Series::Optimal { n }).collect();
    series.push(Series::Harmonic);

    let mut peaks = Vec::with_capacity(series.len());
    let mut rows = Vec::with_capacity(series.len() * ratios.len());
    for s in series {
        let x_peak = fixed_gap_peak_ratio(s)?;
        let peak = s.qfi(x_peak, gap);
        peaks.push(SeriesPeak { series: s, ratio: x_peak, temperature: gap / x_peak, qfi: peak });
        rows.extend(ratios.iter().map(|&x| {
            let qfi = s.qfi(x, gap);
            ScanRow { series: s, ratio: x, temperature: gap / x, qfi, qfi_normalized: qfi / peak }
        }));
    }
    Ok(EquilibriumScan { gap, peaks, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::optimal_gap;

    fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n).map(|k| lo * (hi / lo).powf(k as f64 / (n - 1) as f64)).collect()
    }

    #[test]
    fn grid_argmax_matches_fixed_gap_peak() {
        let grid = log_grid(0.5, 20.0, 20001);
        let scan = qfi_equilibrium_scan(&[2, 6], &grid, 1.0).unwrap();
        for s in [Series::Optimal { n: 2 }, Series::Optimal { n: 6 }, Series::Harmonic] {
            let best = scan.rows_of(s).max_by(|a, b| a.qfi.total_cmp(&b.qfi)).unwrap();
            let x_peak = scan.peak(s).unwrap().ratio;
            // log-grid spacing at x ~ 4 is about 7.4e-4
            assert!((best.ratio - x_peak).abs() < 1e-3, "{s:?}: {} vs {x_peak}", best.ratio);
            assert!(best.qfi_normalized <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn fixed_temperature_argmax_is_x_star() {
        // at fixed T the QFI is ΔĤ²(x)/T⁴, maximal at x*
        let t = 1.0;
        let grid = log_grid(1.0, 8.0, 200001);
        let f = |x: f64| qfi_optimal_probe(2, x, x * t);
        let best = grid.iter().copied().max_by(|a, b| f(*a).total_cmp(&f(*b))).unwrap();
        assert!((best - optimal_gap(2, 1, t).unwrap().x_star).abs() < 2e-5);
    }

    #[test]
    fn fixed_gap_peak_is_not_x_star() {
        let x = fixed_gap_peak_ratio(Series::Optimal { n: 2 }).unwrap();
        assert!((x * (x / 2.0).tanh() - 4.0).abs() < 1e-12);
        assert!(x > optimal_gap(2, 1, 1.0).unwrap().x_star + 1.0);
    }

    #[test]
    fn composition() {
        let scan = qfi_equilibrium_scan(&[2, 4, 6, 8, 10], &[1.0, 2.0], 1.0).unwrap();
        assert_eq!(scan.series().count(), 6);
        assert_eq!(scan.rows.len(), 12);
        let only2 = qfi_equilibrium_scan(&[2], &[1.0], 1.0).unwrap();
        assert_eq!(only2.series().count(), 2);
    }

    #[test]
    fn rejects_bad_grid() {
        assert!(qfi_equilibrium_scan(&[2], &[0.0], 1.0).is_err());
        assert!(qfi_equilibrium_scan(&[2], &[1.0], -1.0).is_err());
        assert!(qfi_equilibrium_scan(&[1], &[1.0], 1.0).is_err());
    }
}
