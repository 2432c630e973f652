use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{check_matrix_cap, DenseOperator};
use crate::pauli_orbits::PauliString;

use super::state::StateVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    RX,
    RY,
    RZ,
    ZZ,
    CZ,
    CNOT,
    H,
    /// Euler rotation with slots `(φ, θ, ω)` and matrix `RZ(ω) RY(θ) RZ(φ)`,
    /// so the first slot is the first rotation applied (PennyLane's `Rot`).
    ROT3,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::ZZ | GateKind::CZ | GateKind::CNOT => 2,
            _ => 1,
        }
    }

    pub fn param_count(self) -> usize {
        match self {
            GateKind::RX | GateKind::RY | GateKind::RZ | GateKind::ZZ => 1,
            GateKind::ROT3 => 3,
            GateKind::CZ | GateKind::CNOT | GateKind::H => 0,
        }
    }
}

/// A gate with its target qubits and the parameter slots it reads.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub targets: Vec<usize>,
    pub slots: Vec<usize>,
}

impl Gate {
    pub fn new(kind: GateKind, targets: Vec<usize>, slots: Vec<usize>) -> Self {
        Gate { kind, targets, slots }
    }

    pub fn rx(q: usize, slot: usize) -> Self {
        Gate::new(GateKind::RX, vec![q], vec![slot])
    }
    pub fn ry(q: usize, slot: usize) -> Self {
        Gate::new(GateKind::RY, vec![q], vec![slot])
    }
    pub fn rz(q: usize, slot: usize) -> Self {
        Gate::new(GateKind::RZ, vec![q], vec![slot])
    }
    pub fn zz(a: usize, b: usize, slot: usize) -> Self {
        Gate::new(GateKind::ZZ, vec![a, b], vec![slot])
    }
    pub fn cz(a: usize, b: usize) -> Self {
        Gate::new(GateKind::CZ, vec![a, b], vec![])
    }
    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::new(GateKind::CNOT, vec![control, target], vec![])
    }
    pub fn h(q: usize) -> Self {
        Gate::new(GateKind::H, vec![q], vec![])
    }
    pub fn rot3(q: usize, slots: [usize; 3]) -> Self {
        Gate::new(GateKind::ROT3, vec![q], slots.to_vec())
    }

    fn validate(&self, n_qubits: usize) -> Result<()> {
        let k = self.kind;
        if self.targets.len() != k.arity() || self.slots.len() != k.param_count() {
            return Err(Error::InvalidConfig(format!(
                "{k:?} takes {} targets and {} slots, got {} and {}",
                k.arity(),
                k.param_count(),
                self.targets.len(),
                self.slots.len()
            )));
        }
        if self.targets.iter().any(|&q| q >= n_qubits) {
            return Err(Error::InvalidConfig(format!("{k:?} target out of range for {n_qubits} qubits")));
        }
        if self.targets.len() == 2 && self.targets[0] == self.targets[1] {
            return Err(Error::InvalidConfig(format!("{k:?} targets must be distinct")));
        }
        Ok(())
    }
}

fn rot_x(theta: f64) -> [[Complex64; 2]; 2] {
    let (s, c) = (theta / 2.0).sin_cos();
    let c = Complex64::new(c, 0.0);
    let ms = Complex64::new(0.0, -s);
    [[c, ms], [ms, c]]
}

fn rot_y(theta: f64) -> [[Complex64; 2]; 2] {
    let (s, c) = (theta / 2.0).sin_cos();
    [[Complex64::new(c, 0.0), Complex64::new(-s, 0.0)], [Complex64::new(s, 0.0), Complex64::new(c, 0.0)]]
}

fn half_phase(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, -theta / 2.0)
}

/// Applies `kind` with explicit angles (not slot lookups).
pub(crate) fn apply_kind(state: &mut StateVector, kind: GateKind, targets: &[usize], angles: &[f64]) {
    match kind {
        GateKind::RX => state.apply_single(targets[0], rot_x(angles[0])),
        GateKind::RY => state.apply_single(targets[0], rot_y(angles[0])),
        GateKind::RZ => {
            let p = half_phase(angles[0]);
            state.apply_diagonal_single(targets[0], p, p.conj())
        }
        GateKind::ZZ => {
            let p = half_phase(angles[0]);
            state.apply_parity_phase(targets[0], targets[1], p, p.conj())
        }
        GateKind::CZ => state.apply_cz(targets[0], targets[1]),
        GateKind::CNOT => state.apply_cnot(targets[0], targets[1]),
        GateKind::H => {
            let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            state.apply_single(targets[0], [[h, h], [h, -h]])
        }
        GateKind::ROT3 => {
            let q = targets[0];
            let p = half_phase(angles[0]);
            state.apply_diagonal_single(q, p, p.conj());
            state.apply_single(q, rot_y(angles[1]));
            let p = half_phase(angles[2]);
            state.apply_diagonal_single(q, p, p.conj());
        }
    }
}

/// Applies `gate` in place, reading its angles from `params` by slot.
pub fn apply_gate(state: &mut StateVector, gate: &Gate, params: &[f64]) -> Result<()> {
    gate.validate(state.n_qubits())?;
    if let Some(&s) = gate.slots.iter().find(|&&s| s >= params.len()) {
        return Err(Error::DimensionMismatch(format!("slot {s} but only {} parameters", params.len())));
    }
    let angles: Vec<f64> = gate.slots.iter().map(|&s| params[s]).collect();
    apply_kind(state, gate.kind, &gate.targets, &angles);
    Ok(())
}

/// A shift of one angle of one gate, used by the parameter-shift rule.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Shift {
    pub gate: usize,
    pub angle: usize,
    pub delta: f64,
}

/// Consecutive ZZ gates sharing a slot are applied as one diagonal pass.
#[derive(Clone, Debug)]
enum Step {
    Gate(usize),
    ZzBlock { gates: Range<usize>, slot: usize, max_energy: i32, energies: Vec<i32> },
}

#[derive(Clone, Debug)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
    n_params: usize,
    layers: Vec<Range<usize>>,
    steps: Vec<Step>,
    step_of_gate: Vec<usize>,
}

impl Circuit {
    /// Validates gates and slot numbering; the whole circuit is one layer.
    pub fn new(n_qubits: usize, gates: Vec<Gate>, n_params: usize) -> Result<Self> {
        Self::with_layers(n_qubits, gates, n_params, vec![0..n_params])
    }

    /// Like [`Circuit::new`] with explicit slot ranges per layer.
    pub fn with_layers(
        n_qubits: usize,
        gates: Vec<Gate>,
        n_params: usize,
        layers: Vec<Range<usize>>,
    ) -> Result<Self> {
        if n_qubits == 0 || n_qubits > 30 {
            return Err(Error::InvalidConfig(format!("unsupported qubit count {n_qubits}")));
        }
        let mut used = vec![false; n_params];
        for g in &gates {
            g.validate(n_qubits)?;
            for &s in &g.slots {
                if s >= n_params {
                    return Err(Error::InvalidConfig(format!("slot {s} >= n_params {n_params}")));
                }
                used[s] = true;
            }
        }
        if let Some(s) = used.iter().position(|u| !u) {
            return Err(Error::InvalidConfig(format!("slot {s} is never used")));
        }
        let mut c = Circuit { n_qubits, gates, n_params, layers, steps: Vec::new(), step_of_gate: Vec::new() };
        c.plan();
        Ok(c)
    }

    fn plan(&mut self) {
        let dim = 1usize << self.n_qubits;
        let mut steps = Vec::new();
        let mut step_of_gate = vec![0; self.gates.len()];
        let mut i = 0;
        while i < self.gates.len() {
            let g = &self.gates[i];
            let mut j = i + 1;
            if g.kind == GateKind::ZZ {
                while j < self.gates.len() && self.gates[j].kind == GateKind::ZZ && self.gates[j].slots == g.slots {
                    j += 1;
                }
            }
            if j - i >= 2 {
                let mut energies = vec![0i32; dim];
                for g in &self.gates[i..j] {
                    let m1 = 1usize << (self.n_qubits - 1 - g.targets[0]);
                    let m2 = 1usize << (self.n_qubits - 1 - g.targets[1]);
                    for (b, e) in energies.iter_mut().enumerate() {
                        *e += if ((b & m1) != 0) == ((b & m2) != 0) { 1 } else { -1 };
                    }
                }
                step_of_gate[i..j].fill(steps.len());
                steps.push(Step::ZzBlock { gates: i..j, slot: g.slots[0], max_energy: (j - i) as i32, energies });
            } else {
                step_of_gate[i] = steps.len();
                steps.push(Step::Gate(i));
            }
            i = j;
        }
        self.steps = steps;
        self.step_of_gate = step_of_gate;
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn n_params(&self) -> usize {
        self.n_params
    }

    /// Slot ranges of each layer.
    pub fn layers(&self) -> &[Range<usize>] {
        &self.layers
    }

    /// `(gate index, angle index)` of every use of `slot`, in circuit order.
    pub fn occurrences(&self, slot: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (gi, g) in self.gates.iter().enumerate() {
            for (ai, &s) in g.slots.iter().enumerate() {
                if s == slot {
                    out.push((gi, ai));
                }
            }
        }
        out
    }

    pub(crate) fn check_params(&self, params: &[f64]) -> Result<()> {
        if params.len() != self.n_params {
            return Err(Error::DimensionMismatch(format!(
                "circuit has {} parameters, got {}",
                self.n_params,
                params.len()
            )));
        }
        Ok(())
    }

    /// Applies the whole circuit in place.
    pub fn run(&self, state: &mut StateVector, params: &[f64]) -> Result<()> {
        self.check_params(params)?;
        if state.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "{}-qubit state for a {}-qubit circuit",
                state.n_qubits(),
                self.n_qubits
            )));
        }
        self.run_steps(state, params, 0..self.steps.len(), None);
        Ok(())
    }

    pub(crate) fn step_count(&self) -> usize {
        self.steps.len()
    }

    /// Index of the step that contains gate `gate`.
    pub(crate) fn step_of(&self, gate: usize) -> usize {
        self.step_of_gate[gate]
    }

    pub(crate) fn run_steps(&self, state: &mut StateVector, params: &[f64], steps: Range<usize>, shift: Option<Shift>) {
        let mut angles = [0.0f64; 3];
        for step in &self.steps[steps] {
            match step {
                Step::Gate(gi) => {
                    let g = &self.gates[*gi];
                    for (a, &s) in angles.iter_mut().zip(&g.slots) {
                        *a = params[s];
                    }
                    if let Some(sh) = shift.filter(|sh| sh.gate == *gi) {
                        angles[sh.angle] += sh.delta;
                    }
                    apply_kind(state, g.kind, &g.targets, &angles[..g.slots.len()]);
                }
                Step::ZzBlock { gates, slot, max_energy, energies } => {
                    let theta = params[*slot];
                    let table: Vec<Complex64> =
                        (-max_energy..=*max_energy).map(|e| half_phase(theta * e as f64)).collect();
                    for (a, &e) in state.amplitudes_mut().iter_mut().zip(energies) {
                        *a *= table[(e + max_energy) as usize];
                    }
                    if let Some(sh) = shift.filter(|sh| gates.contains(&sh.gate)) {
                        let g = &self.gates[sh.gate];
                        apply_kind(state, GateKind::ZZ, &g.targets, &[sh.delta]);
                    }
                }
            }
        }
    }

    /// Dense `U(θ)`, assembled column by column from basis states.
    pub fn unitary(&self, params: &[f64], matrix_cap: usize) -> Result<DenseOperator> {
        self.check_params(params)?;
        let dim = check_matrix_cap(self.n_qubits, matrix_cap)?;
        let mut m = nalgebra::DMatrix::<Complex64>::zeros(dim, dim);
        for col in 0..dim {
            let mut s = StateVector::basis(self.n_qubits, col);
            self.run_steps(&mut s, params, 0..self.steps.len(), None);
            for (row, &a) in s.amplitudes().iter().enumerate() {
                m[(row, col)] = a;
            }
        }
        Ok(DenseOperator::from_matrix_unchecked(self.n_qubits, m))
    }

    /// Hermitian generator `H` of `slot` as a Pauli sum, so that the slot's
    /// gates combine to `exp(-iθH)`. `None` if the slot is used by a gate
    /// that is not a single Pauli rotation.
    pub fn slot_generator(&self, slot: usize) -> Option<Vec<(PauliString, f64)>> {
        let mut terms = Vec::new();
        for (gi, _) in self.occurrences(slot) {
            let g = &self.gates[gi];
            let mut digits = vec![0u8; self.n_qubits];
            match g.kind {
                GateKind::RX => digits[g.targets[0]] = 1,
                GateKind::RY => digits[g.targets[0]] = 2,
                GateKind::RZ => digits[g.targets[0]] = 3,
                GateKind::ZZ => {
                    digits[g.targets[0]] = 3;
                    digits[g.targets[1]] = 3;
                }
                _ => return None,
            }
            terms.push((PauliString::new(digits).ok()?, 0.5));
        }
        Some(terms)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnsatzKind {
    PermutationSymmetric,
    CyclicSymmetric,
    StronglyEntangling,
}

impl AnsatzKind {
    pub const ALL: [AnsatzKind; 3] =
        [AnsatzKind::PermutationSymmetric, AnsatzKind::CyclicSymmetric, AnsatzKind::StronglyEntangling];

    pub fn name(self) -> &'static str {
        match self {
            AnsatzKind::PermutationSymmetric => "permutation",
            AnsatzKind::CyclicSymmetric => "cyclic",
            AnsatzKind::StronglyEntangling => "strongly_entangling",
        }
    }
}

impl fmt::Display for AnsatzKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AnsatzKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "permutation" | "permutation_symmetric" | "perm" | "s" => Ok(AnsatzKind::PermutationSymmetric),
            "cyclic" | "cyclic_symmetric" | "c" => Ok(AnsatzKind::CyclicSymmetric),
            "strongly_entangling" | "strong" | "sel" => Ok(AnsatzKind::StronglyEntangling),
            _ => Err(Error::InvalidConfig(format!("unknown ansatz {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnsatzOptions {
    /// Include the distance-2 ZZ ring in the cyclic ansatz.
    pub cyclic_theta4: bool,
}

impl Default for AnsatzOptions {
    fn default() -> Self {
        AnsatzOptions { cyclic_theta4: true }
    }
}

pub fn slots_per_layer(kind: AnsatzKind, n: usize, opts: AnsatzOptions) -> usize {
    match kind {
        AnsatzKind::PermutationSymmetric => 3,
        AnsatzKind::CyclicSymmetric => {
            if opts.cyclic_theta4 {
                4
            } else {
                3
            }
        }
        AnsatzKind::StronglyEntangling => 3 * n,
    }
}

/// Layer count whose slot total is closest to `target_slots`, at least 1.
pub fn layers_for_target(kind: AnsatzKind, n: usize, target_slots: usize, opts: AnsatzOptions) -> usize {
    let per = slots_per_layer(kind, n, opts);
    ((target_slots + per / 2) / per).max(1)
}

/// Unordered pairs `{q, q+d mod n}` without duplicates or self-loops.
fn ring_pairs(n: usize, d: usize) -> Vec<(usize, usize)> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for q in 0..n {
        let r = (q + d) % n;
        if r != q && seen.insert((q.min(r), q.max(r))) {
            out.push((q, r));
        }
    }
    out
}

pub fn build_ansatz(kind: AnsatzKind, n: usize, layers: usize) -> Result<Circuit> {
    build_ansatz_with(kind, n, layers, AnsatzOptions::default())
}

pub fn build_ansatz_with(kind: AnsatzKind, n: usize, layers: usize, opts: AnsatzOptions) -> Result<Circuit> {
    if n < 2 {
        return Err(Error::InvalidConfig(format!("ansatz needs at least 2 qubits, got {n}")));
    }
    if layers == 0 {
        return Err(Error::InvalidConfig("ansatz needs at least one layer".into()));
    }
    let per = slots_per_layer(kind, n, opts);
    let mut gates = Vec::new();
    let mut ranges = Vec::with_capacity(layers);
    for l in 0..layers {
        let base = l * per;
        ranges.push(base..base + per);
        match kind {
            AnsatzKind::PermutationSymmetric => {
                gates.extend((0..n).map(|q| Gate::rx(q, base)));
                gates.extend((0..n).map(|q| Gate::ry(q, base + 1)));
                for a in 0..n {
                    gates.extend((a + 1..n).map(|b| Gate::zz(a, b, base + 2)));
                }
            }
            AnsatzKind::CyclicSymmetric => {
                gates.extend((0..n).map(|q| Gate::rx(q, base)));
                gates.extend((0..n).map(|q| Gate::ry(q, base + 1)));
                gates.extend(ring_pairs(n, 1).into_iter().map(|(a, b)| Gate::zz(a, b, base + 2)));
                if opts.cyclic_theta4 {
                    let pairs = ring_pairs(n, 2);
                    if pairs.is_empty() {
                        return Err(Error::InvalidConfig("distance-2 ring needs at least 3 qubits".into()));
                    }
                    gates.extend(pairs.into_iter().map(|(a, b)| Gate::zz(a, b, base + 3)));
                }
            }
            AnsatzKind::StronglyEntangling => {
                gates.extend((0..n).map(|q| Gate::rot3(q, [base + 3 * q, base + 3 * q + 1, base + 3 * q + 2])));
                let r = l % (n - 1) + 1;
                gates.extend((0..n).map(|q| Gate::cnot(q, (q + r) % n)));
            }
        }
    }
    Circuit::with_layers(n, gates, layers * per, ranges)
}

/// First slot of layer `ceil(L/2)`.
pub fn probe_slot(circuit: &Circuit) -> usize {
    let layers = circuit.layers();
    layers[layers.len().div_ceil(2) - 1].start
}
