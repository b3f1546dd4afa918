//! Partly thermalized probes: dissipative evolution towards the sample's
//! Gibbs state and the Fisher information gathered per unit contact time.

mod evolve;
mod model;
mod transient;

pub use evolve::{
    evolve_nlevel, evolve_qubit, evolve_qubit_interaction, DiagonalState, Preparation, QubitState,
    STEPS_PER_RELAXATION_TIME,
};
pub use model::DissipationModel;
pub use transient::{
    bloch_qfi, classical_fisher, infidelity_qubit, optimal_short_time_ratio, optimize_protocol, qfi_transient,
    qfi_transient_closed_form_qubit, transient_scan, ultimate_rate, ProtocolConfig, ProtocolOptimum,
    TransientFamily, TransientRow, TransientSeries,
};
