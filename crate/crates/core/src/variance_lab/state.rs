use num_complex::Complex64;

use crate::error::{Error, Result};

/// A pure state on `n_qubits` qubits; qubit 0 is the most significant bit.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0...0⟩`.
    pub fn zero(n_qubits: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        StateVector { n_qubits, amps }
    }

    /// `|+⟩^{⊗n}`.
    pub fn plus(n_qubits: usize) -> Self {
        let dim = 1 << n_qubits;
        let a = Complex64::new((dim as f64).sqrt().recip(), 0.0);
        StateVector { n_qubits, amps: vec![a; dim] }
    }

    pub fn basis(n_qubits: usize, index: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        StateVector { n_qubits, amps }
    }

    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != 1 << n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for {n_qubits} qubits",
                amps.len()
            )));
        }
        let s = StateVector { n_qubits, amps };
        if (s.norm_sqr() - 1.0).abs() > 1e-10 {
            return Err(Error::PreconditionViolated(format!("state has squared norm {}", s.norm_sqr())));
        }
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    pub(crate) fn mask(&self, qubit: usize) -> usize {
        1 << (self.n_qubits - 1 - qubit)
    }

    /// Applies the 2x2 matrix `[[a, b], [c, d]]` to `qubit`.
    pub(crate) fn apply_single(&mut self, qubit: usize, m: [[Complex64; 2]; 2]) {
        let mask = self.mask(qubit);
        let dim = self.amps.len();
        let mut base = 0;
        while base < dim {
            for i in base..base + mask {
                let (x, y) = (self.amps[i], self.amps[i | mask]);
                self.amps[i] = m[0][0] * x + m[0][1] * y;
                self.amps[i | mask] = m[1][0] * x + m[1][1] * y;
            }
            base += 2 * mask;
        }
    }

    /// Multiplies amplitudes with qubit bit 0 by `p0` and bit 1 by `p1`.
    pub(crate) fn apply_diagonal_single(&mut self, qubit: usize, p0: Complex64, p1: Complex64) {
        let mask = self.mask(qubit);
        for (i, a) in self.amps.iter_mut().enumerate() {
            *a *= if i & mask == 0 { p0 } else { p1 };
        }
    }

    /// Multiplies amplitudes by `same` when the two qubits agree, else by `differ`.
    pub(crate) fn apply_parity_phase(&mut self, q1: usize, q2: usize, same: Complex64, differ: Complex64) {
        let (m1, m2) = (self.mask(q1), self.mask(q2));
        for (i, a) in self.amps.iter_mut().enumerate() {
            let differs = ((i & m1) != 0) != ((i & m2) != 0);
            *a *= if differs { differ } else { same };
        }
    }

    pub(crate) fn apply_cz(&mut self, q1: usize, q2: usize) {
        let both = self.mask(q1) | self.mask(q2);
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & both == both {
                *a = -*a;
            }
        }
    }

    pub(crate) fn apply_cnot(&mut self, control: usize, target: usize) {
        let (mc, mt) = (self.mask(control), self.mask(target));
        for i in 0..self.amps.len() {
            if i & mc != 0 && i & mt == 0 {
                self.amps.swap(i, i | mt);
            }
        }
    }
}
