use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::circuit::{build_ansatz_with, layers_for_target, probe_slot, AnsatzKind, AnsatzOptions};
use super::data::{balanced_graph_dataset, uniform, DEFAULT_RETRY_CAP};
use super::gradient::gradient;

/// Which parameter(s) the variance is measured on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbePolicy {
    /// First slot of layer `ceil(L/2)`.
    MiddleLayer,
    /// Every slot, one row each.
    AllSlots,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub qubits: Vec<usize>,
    pub ansatzes: Vec<AnsatzKind>,
    pub samples_per_point: usize,
    pub dataset_size: usize,
    pub edge_probability: f64,
    pub parameter_range: (f64, f64),
    pub seed: u64,
    /// Fixed layer count; otherwise chosen from `target_slots_per_qubit`.
    pub layers: Option<usize>,
    pub target_slots_per_qubit: usize,
    pub options: AnsatzOptions,
    pub probe: ProbePolicy,
    pub retry_cap: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let two_pi = 2.0 * std::f64::consts::PI;
        ExperimentConfig {
            qubits: vec![4, 6, 8, 10],
            ansatzes: AnsatzKind::ALL.to_vec(),
            samples_per_point: 200,
            dataset_size: 50,
            edge_probability: 0.4,
            parameter_range: (-two_pi, two_pi),
            seed: 0,
            layers: None,
            target_slots_per_qubit: 6,
            options: AnsatzOptions::default(),
            probe: ProbePolicy::MiddleLayer,
            retry_cap: DEFAULT_RETRY_CAP,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.qubits.is_empty() || self.ansatzes.is_empty() {
            return bad("need at least one qubit count and one ansatz".into());
        }
        if let Some(&n) = self.qubits.iter().find(|&&n| !(2..=20).contains(&n)) {
            return bad(format!("qubit count {n} outside 2..=20"));
        }
        if self.samples_per_point < 2 {
            return bad(format!("need at least 2 samples for a variance, got {}", self.samples_per_point));
        }
        if self.dataset_size == 0 || self.retry_cap == 0 || self.target_slots_per_qubit == 0 || self.layers == Some(0) {
            return bad("counts must be positive".into());
        }
        if !(self.edge_probability > 0.0 && self.edge_probability < 1.0) {
            return bad(format!("edge probability {} not in (0, 1)", self.edge_probability));
        }
        let (lo, hi) = self.parameter_range;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return bad(format!("bad parameter range [{lo}, {hi}]"));
        }
        Ok(())
    }

    pub fn layers_for(&self, kind: AnsatzKind, n: usize) -> usize {
        self.layers
            .unwrap_or_else(|| layers_for_target(kind, n, self.target_slots_per_qubit * n, self.options))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub qubits: usize,
    pub ansatz: AnsatzKind,
    pub variance: f64,
    pub samples: usize,
    pub seed: u64,
    pub slot: usize,
    pub layers: usize,
    pub n_params: usize,
}

const DATASET_STREAM: u64 = 1 << 63;

fn sample_stream(n: usize, index: usize) -> u64 {
    ((n as u64) << 32) | index as u64
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Unbiased sample variance.
pub fn sample_variance(xs: &[f64]) -> f64 {
    let m = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / m;
    xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0)
}

/// Least-squares slope of `ys` against `xs`.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// Gradient variance per (qubit count, ansatz[, slot]).
///
/// Parameter vectors come from a ChaCha8 stream keyed by `(seed, n, sample)`,
/// so results do not depend on the number of worker threads. The dataset for
/// each `n` is shared by all ansatzes.
pub fn run_variance_experiment(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRow>> {
    cfg.validate()?;
    let (lo, hi) = cfg.parameter_range;
    let mut rows = Vec::new();
    for &n in &cfg.qubits {
        let mut data_rng = rng_for(cfg.seed, DATASET_STREAM | n as u64);
        let data = balanced_graph_dataset(n, cfg.dataset_size, cfg.edge_probability, cfg.retry_cap, &mut data_rng)?;
        for &kind in &cfg.ansatzes {
            let layers = cfg.layers_for(kind, n);
            let circuit = build_ansatz_with(kind, n, layers, cfg.options)?;
            let slots: Vec<usize> = match cfg.probe {
                ProbePolicy::MiddleLayer => vec![probe_slot(&circuit)],
                ProbePolicy::AllSlots => (0..circuit.n_params()).collect(),
            };
            let grads: Vec<Vec<f64>> = (0..cfg.samples_per_point)
                .into_par_iter()
                .map(|i| {
                    let mut rng = rng_for(cfg.seed, sample_stream(n, i));
                    let params: Vec<f64> =
                        (0..circuit.n_params()).map(|_| lo + (hi - lo) * uniform(&mut rng)).collect();
                    slots.iter().map(|&s| gradient(&circuit, &params, &data, s)).collect::<Result<Vec<f64>>>()
                })
                .collect::<Result<_>>()?;
            for (k, &slot) in slots.iter().enumerate() {
                let xs: Vec<f64> = grads.iter().map(|g| g[k]).collect();
                rows.push(ExperimentRow {
                    qubits: n,
                    ansatz: kind,
                    variance: sample_variance(&xs),
                    samples: cfg.samples_per_point,
                    seed: cfg.seed,
                    slot,
                    layers,
                    n_params: circuit.n_params(),
                });
            }
        }
    }
    Ok(rows)
}

pub const CSV_HEADER: &str = "qubits;ansatz;variance;samples;seed";

/// Semicolon CSV; a `slot` column is appended when `with_slot` is set.
pub fn rows_to_csv(rows: &[ExperimentRow], with_slot: bool) -> String {
    let mut out = String::from(CSV_HEADER);
    if with_slot {
        out.push_str(";slot");
    }
    out.push('\n');
    for r in rows {
        let _ = write!(out, "{};{};{:e};{};{}", r.qubits, r.ansatz, r.variance, r.samples, r.seed);
        if with_slot {
            let _ = write!(out, ";{}", r.slot);
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> ExperimentConfig {
        ExperimentConfig { qubits: vec![3, 4], samples_per_point: 8, dataset_size: 6, seed: 5, ..Default::default() }
    }

    #[test]
    fn deterministic_under_fixed_seed() {
        let a = run_variance_experiment(&small()).unwrap();
        let b = run_variance_experiment(&small()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 6);
        let other = run_variance_experiment(&ExperimentConfig { seed: 6, ..small() }).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn independent_of_thread_count() {
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let three = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let a = one.install(|| run_variance_experiment(&small())).unwrap();
        let b = three.install(|| run_variance_experiment(&small())).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn invalid_configs() {
        for cfg in [
            ExperimentConfig { samples_per_point: 0, ..small() },
            ExperimentConfig { samples_per_point: 1, ..small() },
            ExperimentConfig { edge_probability: 1.0, ..small() },
            ExperimentConfig { dataset_size: 0, ..small() },
            ExperimentConfig { qubits: vec![], ..small() },
            ExperimentConfig { qubits: vec![1], ..small() },
            ExperimentConfig { parameter_range: (1.0, 1.0), ..small() },
            ExperimentConfig { layers: Some(0), ..small() },
        ] {
            assert!(matches!(run_variance_experiment(&cfg), Err(Error::InvalidConfig(_))), "{cfg:?}");
        }
    }

    #[test]
    fn all_slots_policy() {
        let cfg = ExperimentConfig {
            qubits: vec![3],
            ansatzes: vec![AnsatzKind::PermutationSymmetric],
            layers: Some(2),
            probe: ProbePolicy::AllSlots,
            ..small()
        };
        let rows = run_variance_experiment(&cfg).unwrap();
        assert_eq!(rows.iter().map(|r| r.slot).collect::<Vec<_>>(), (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn csv_layout() {
        let rows = run_variance_experiment(&small()).unwrap();
        let csv = rows_to_csv(&rows, false);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let first: Vec<&str> = lines.next().unwrap().split(';').collect();
        assert_eq!(first[0], "3");
        assert_eq!(first[1], "permutation");
        assert_eq!(first[3], "8");
        assert_eq!(first[4], "5");
        assert_eq!(first[2].parse::<f64>().unwrap(), rows[0].variance);
    }

    #[test]
    fn variance_and_slope_helpers() {
        assert!((sample_variance(&[1.0, 2.0, 3.0, 4.0]) - 5.0 / 3.0).abs() < 1e-15);
        assert!((fit_slope(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]) - 2.0).abs() < 1e-15);
    }
}
