use rayon::prelude::*;

use thermoprobe_core::dynamics::{
    optimal_short_time_ratio, transient_scan, ultimate_rate, DissipationModel, Preparation, TransientSeries,
};
use thermoprobe_core::equilibrium::{hessian_certificate, optimal_gap, qfi_equilibrium_scan, Series};
use thermoprobe_core::gaussian::{qfi_harmonic_transient, CovarianceMatrix};
use thermoprobe_core::numerics::log_space;

use crate::config::{EquilibriumScanConfig, HessianConfig, LimitsConfig, OptimalGapConfig, TransientConfig};
use crate::error::CliError;
use crate::output::{Cell, Table};

const HARMONIC: &str = "harmonic";

pub fn cmd_equilibrium_scan(c: &EquilibriumScanConfig) -> Result<Table, CliError> {
    let grid = log_space(c.x_min, c.x_max, c.points);
    let scan = qfi_equilibrium_scan(&c.n, &grid, c.gap)?;
    let mut table = Table::new(vec!["N", "T", "qfi", "qfi_normalized"]);
    for row in &scan.rows {
        let label = match row.series {
            Series::Optimal { n } => Cell::from(n),
            Series::Harmonic => Cell::from(HARMONIC),
        };
        table.push(vec![label, row.temperature.into(), row.qfi.into(), row.qfi_normalized.into()]);
    }
    Ok(table)
}

pub fn cmd_optimal_gap(c: &OptimalGapConfig) -> Result<Table, CliError> {
    let mut table = Table::new(vec!["N", "N0", "x_star", "gap", "variance", "qfi", "variance_drop"]);
    for &n in &c.n {
        for &n0 in &c.n0 {
            let opt = optimal_gap(n, n0, c.temperature)?;
            // variance lost by moving one level from the excited to the ground manifold
            let drop = if n0 >= 2 { Some(optimal_gap(n, n0 - 1, c.temperature)?.variance - opt.variance) } else { None };
            table.push(vec![
                n.into(),
                n0.into(),
                opt.x_star.into(),
                opt.gap.into(),
                opt.variance.into(),
                opt.qfi_at_optimum.into(),
                drop.into(),
            ]);
        }
    }
    Ok(table)
}

pub fn cmd_hessian_check(c: &HessianConfig) -> Result<Table, CliError> {
    let mut table = Table::new(vec![
        "N",
        "x_star",
        "lambda1",
        "lambda2",
        "lambda3",
        "max_deviation",
        "zero_mode_alignment",
        "certified",
    ]);
    for &n in &c.n {
        let cert = hessian_certificate(n, c.temperature)?;
        let lambda1 = if cert.analytic.lambda1_multiplicity > 0 { Some(cert.analytic.lambda1) } else { None };
        table.push(vec![
            n.into(),
            cert.x_star.into(),
            lambda1.into(),
            cert.analytic.lambda2.into(),
            cert.analytic.lambda3.into(),
            cert.max_eigenvalue_deviation.into(),
            cert.zero_mode_alignment.into(),
            cert.certifies_maximum(1e-8).into(),
        ]);
    }
    Ok(table)
}

pub fn cmd_transient_scan(c: &TransientConfig) -> Result<Table, CliError> {
    let model = DissipationModel::new(c.gap, c.temperature, c.gamma)?;
    let tau = model.relaxation_time();
    let grid = log_space(c.dt_min * tau, c.dt_max * tau, c.points);

    let mut series: Vec<TransientSeries> =
        c.n.iter().map(|&n| TransientSeries { preparation: Preparation::Ground, levels: n }).collect();
    series.extend(c.thermal.iter().map(|&t| TransientSeries { preparation: Preparation::Thermal { temperature: t }, levels: 2 }));
    if c.include_plus {
        series.push(TransientSeries { preparation: Preparation::PlusState, levels: 2 });
    }

    let mut table = Table::new(vec!["prep", "N", "dt", "fisher_rate"]);
    for row in transient_scan(&series, &model, &grid)? {
        table.push(vec![row.preparation.to_string().into(), row.levels.into(), row.dt.into(), row.fisher_rate.into()]);
    }
    if c.include_harmonic {
        let vacuum = CovarianceMatrix::vacuum();
        let rates = grid
            .par_iter()
            .map(|&dt| Ok(qfi_harmonic_transient(&vacuum, &model, dt)?.full.value / dt))
            .collect::<Result<Vec<f64>, CliError>>()?;
        for (&dt, rate) in grid.iter().zip(rates) {
            table.push(vec![Preparation::Ground.to_string().into(), HARMONIC.into(), dt.into(), rate.into()]);
        }
    }
    Ok(table)
}

pub fn cmd_limits(c: &LimitsConfig) -> Result<Table, CliError> {
    let x = optimal_short_time_ratio()?.root;
    let mut table = Table::new(vec!["N", "x_tilde", "rate"]);
    for &n in &c.n {
        table.push(vec![n.into(), x.into(), ultimate_rate(n, x, c.gamma, c.temperature)?.into()]);
    }
    Ok(table)
}
