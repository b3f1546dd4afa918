use crate::error::{Error, Result};
use crate::numerics::{eigen_symmetric, SymmetricMatrix};

use super::optimum::{optimal_gap, variance_hessian};

/// Distinct entries of the variance Hessian at the optimal spectrum
/// `{0, Ω*, …, Ω*}`: `a` (ground diagonal), `b` (excited diagonal),
/// `c` (ground-excited) and `d` (excited-excited).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HessianCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl HessianCoefficients {
    /// Closed forms in terms of `x* = x*_{N,1}`.
    pub fn closed_form(x_star: f64, n: usize) -> Self {
        let m = (n - 1) as f64;
        let x = x_star;
        Self {
            a: -(x * x - 4.0) / 8.0,
            b: -(x - 2.0) * (4.0 * n as f64 - 6.0 + x) / (8.0 * m * m),
            c: (x * x - 4.0) / (8.0 * m),
            d: -(x - 2.0).powi(2) / (8.0 * m * m),
        }
    }

    /// Bordered matrix with `a` in the corner, `c` on the border, `b` on the
    /// remaining diagonal and `d` elsewhere.
    pub fn assemble(&self, n: usize) -> SymmetricMatrix {
        SymmetricMatrix::from_fn(n, |i, j| match (i, j) {
            (0, 0) => self.a,
            (0, _) => self.c,
            _ if i == j => self.b,
            _ => self.d,
        })
    }
}

/// Closed-form eigenvalues of the optimal-spectrum Hessian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticHessianSpectrum {
    /// `−(x*−2)/(2(N−1))`, repeated `N−2` times.
    pub lambda1: f64,
    pub lambda1_multiplicity: usize,
    /// `a − c = −N(x*²−4)/(8(N−1))`.
    pub lambda2: f64,
    /// Uniform-shift mode.
    pub lambda3: f64,
}

impl AnalyticHessianSpectrum {
    pub fn new(x_star: f64, n: usize) -> Self {
        let m = (n - 1) as f64;
        Self {
            lambda1: -(x_star - 2.0) / (2.0 * m),
            lambda1_multiplicity: n - 2,
            lambda2: -(n as f64) * (x_star * x_star - 4.0) / (8.0 * m),
            lambda3: 0.0,
        }
    }

    pub fn sorted(&self) -> Vec<f64> {
        let mut v = vec![self.lambda1; self.lambda1_multiplicity];
        v.push(self.lambda2);
        v.push(self.lambda3);
        v.sort_by(f64::total_cmp);
        v
    }
}

/// Second-order check that the effective two-level spectrum with a
/// non-degenerate ground level maximizes the energy variance.
#[derive(Debug, Clone)]
pub struct HessianCertificate {
    pub n: usize,
    pub x_star: f64,
    /// Read off the general Hessian evaluated at the optimum.
    pub coefficients: HessianCoefficients,
    pub hessian: SymmetricMatrix,
    /// Largest gap between the general Hessian and the assembled block form.
    pub structure_deviation: f64,
    /// Ascending, from the Jacobi solver.
    pub eigenvalues: Vec<f64>,
    pub analytic: AnalyticHessianSpectrum,
    pub max_eigenvalue_deviation: f64,
    /// `|v₀·1|/√N` for the eigenvector of the eigenvalue closest to zero.
    pub zero_mode_alignment: f64,
}

impl HessianCertificate {
    /// Negative semi-definite with exactly one zero mode along the uniform
    /// shift, and numeric eigenvalues matching the closed forms.
    pub fn certifies_maximum(&self, tolerance: f64) -> bool {
        let zeros = self.eigenvalues.iter().filter(|v| v.abs() <= tolerance).count();
        zeros == 1
            && self.eigenvalues.iter().all(|&v| v <= tolerance)
            && self.max_eigenvalue_deviation <= tolerance
            && (1.0 - self.zero_mode_alignment).abs() <= tolerance
    }
}

/// Builds the Hessian at the `N₀ = 1` optimum and diagonalizes it.
///
/// Entries are dimensionless and independent of `T`.
pub fn hessian_certificate(n: usize, temperature: f64) -> Result<HessianCertificate> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { dimension: n, minimum: 2 });
    }
    let opt = optimal_gap(n, 1, temperature)?;
    let ensemble = opt.spectrum().expand().thermalize(opt.temperature)?;
    let general = variance_hessian(&ensemble);
    let coefficients = HessianCoefficients {
        a: general.get(0, 0),
        b: general.get(1, 1),
        c: general.get(0, 1),
        d: if n > 2 { general.get(1, 2) } else { 0.0 },
    };
    let hessian = coefficients.assemble(n);
    let mut structure_deviation: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            structure_deviation = structure_deviation.max((general.get(i, j) - hessian.get(i, j)).abs());
        }
    }

    let eigen = eigen_symmetric(&hessian)?;
    let analytic = AnalyticHessianSpectrum::new(opt.x_star, n);
    let max_eigenvalue_deviation =
        eigen.values.iter().zip(analytic.sorted()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let zero = (0..n).min_by(|&i, &j| eigen.values[i].abs().total_cmp(&eigen.values[j].abs())).expect("n >= 2");
    let zero_mode_alignment = eigen.vectors[zero].iter().sum::<f64>().abs() / (n as f64).sqrt();

    Ok(HessianCertificate {
        n,
        x_star: opt.x_star,
        coefficients,
        hessian,
        structure_deviation,
        eigenvalues: eigen.values,
        analytic,
        max_eigenvalue_deviation,
        zero_mode_alignment,
    })
}
