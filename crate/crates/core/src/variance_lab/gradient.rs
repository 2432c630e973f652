use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

use super::circuit::{Circuit, Shift};
use super::data::Dataset;
use super::state::StateVector;

/// `<Z^{⊗n}>`: even-weight probability minus odd-weight probability.
pub fn expectation_parity(s: &StateVector) -> f64 {
    s.amplitudes()
        .iter()
        .enumerate()
        .map(|(b, a)| if b.count_ones() % 2 == 0 { a.norm_sqr() } else { -a.norm_sqr() })
        .sum()
}

fn check(circuit: &Circuit, params: &[f64], data: &Dataset) -> Result<()> {
    circuit.check_params(params)?;
    if data.is_empty() {
        return Err(Error::PreconditionViolated("empty dataset".into()));
    }
    for item in &data.items {
        if item.label != 1.0 && item.label != -1.0 {
            return Err(Error::PreconditionViolated(format!("label {} is not ±1", item.label)));
        }
        if item.state.n_qubits() != circuit.n_qubits() {
            return Err(Error::DimensionMismatch(format!(
                "{}-qubit data for a {}-qubit circuit",
                item.state.n_qubits(),
                circuit.n_qubits()
            )));
        }
    }
    Ok(())
}

/// Mean squared error between parity expectation and label.
pub fn mse_loss(circuit: &Circuit, params: &[f64], data: &Dataset) -> Result<f64> {
    check(circuit, params, data)?;
    let total: f64 = data
        .items
        .iter()
        .map(|item| {
            let mut s = item.state.clone();
            circuit.run_steps(&mut s, params, 0..circuit.step_count(), None);
            (expectation_parity(&s) - item.label).powi(2)
        })
        .sum();
    Ok(total / data.len() as f64)
}

/// `d(mse_loss)/dθ_slot` by the parameter-shift rule, summed over every
/// gate that reads the slot.
pub fn gradient(circuit: &Circuit, params: &[f64], data: &Dataset, slot: usize) -> Result<f64> {
    check(circuit, params, data)?;
    if slot >= circuit.n_params() {
        return Err(Error::PreconditionViolated(format!("slot {slot} out of range")));
    }
    let occ = circuit.occurrences(slot);
    let end = circuit.step_count();
    let cut = circuit.step_of(occ[0].0);
    let mut total = 0.0;
    for item in &data.items {
        let mut prefix = item.state.clone();
        circuit.run_steps(&mut prefix, params, 0..cut, None);
        let mut full = prefix.clone();
        circuit.run_steps(&mut full, params, cut..end, None);
        let ell = expectation_parity(&full);
        let mut d_ell = 0.0;
        for &(gate, angle) in &occ {
            let mut terms = [0.0; 2];
            for (t, delta) in terms.iter_mut().zip([FRAC_PI_2, -FRAC_PI_2]) {
                let mut s = prefix.clone();
                circuit.run_steps(&mut s, params, cut..end, Some(Shift { gate, angle, delta }));
                *t = expectation_parity(&s);
            }
            d_ell += (terms[0] - terms[1]) / 2.0;
        }
        total += 2.0 * (ell - item.label) * d_ell;
    }
    Ok(total / data.len() as f64)
}

/// Central difference of [`mse_loss`] in one slot.
pub fn finite_difference_gradient(circuit: &Circuit, params: &[f64], data: &Dataset, slot: usize, h: f64) -> Result<f64> {
    if slot >= circuit.n_params() {
        return Err(Error::PreconditionViolated(format!("slot {slot} out of range")));
    }
    let mut p = params.to_vec();
    p[slot] = params[slot] + h;
    let up = mse_loss(circuit, &p, data)?;
    p[slot] = params[slot] - h;
    let down = mse_loss(circuit, &p, data)?;
    Ok((up - down) / (2.0 * h))
}
