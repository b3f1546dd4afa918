//! Scalar and small dense numerical kernels shared by the physics modules.
//!
//! Everything here is a pure function of its inputs.

mod diff;
mod eigen;
mod ode;
mod root;

pub use diff::{central_diff, central_diff_with, Derivative};
pub use eigen::{eigen_symmetric, eigenvalues_symmetric, SymmetricEigen, SymmetricMatrix, MAX_DENSE_DIMENSION};
pub use ode::{integrate_ode, integrate_ode_steps, steps_for};
pub use root::{find_root, BracketedRoot};

/// `n` points spaced evenly in `ln` between `lo` and `hi`, both included.
pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            let mut v: Vec<f64> = (0..n).map(|k| (a + (b - a) * k as f64 / (n - 1) as f64).exp()).collect();
            v[n - 1] = hi;
            v[0] = lo;
            v
        }
    }
}
