//! Statevector simulation of shared-parameter ansatzes and the gradient
//! variance experiment on graph-state classification data.

mod circuit;
mod data;
mod experiment;
mod gradient;
mod state;

pub use circuit::{
    apply_gate, build_ansatz, build_ansatz_with, layers_for_target, probe_slot, slots_per_layer, AnsatzKind,
    AnsatzOptions, Circuit, Gate, GateKind,
};
pub use data::{balanced_graph_dataset, graph_state, uniform, Dataset, Graph, LabeledState, DEFAULT_RETRY_CAP};
pub use experiment::{
    fit_slope, rows_to_csv, run_variance_experiment, sample_variance, ExperimentConfig, ExperimentRow, ProbePolicy,
    CSV_HEADER,
};
pub use gradient::{expectation_parity, finite_difference_gradient, gradient, mse_loss};
pub use state::StateVector;
