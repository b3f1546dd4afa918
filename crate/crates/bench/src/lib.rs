//! Shared inputs for the criterion benches.

use thermoprobe_core::dynamics::optimal_short_time_ratio;
use thermoprobe_core::numerics::log_space;
use thermoprobe_core::DissipationModel;

/// Working point of the transient benches: `Ω = x̃T`, `γ = 1e-3`, `T = 1`.
pub fn transient_model() -> DissipationModel {
    let x = optimal_short_time_ratio().expect("x̃ bracket is fixed").root;
    DissipationModel::new(x, 1.0, 1e-3).expect("valid parameters")
}

/// `n` contact times spread logarithmically over `[1e-3τ, 20τ]`.
pub fn contact_times(model: &DissipationModel, n: usize) -> Vec<f64> {
    let tau = model.relaxation_time();
    log_space(1e-3 * tau, 20.0 * tau, n)
}
