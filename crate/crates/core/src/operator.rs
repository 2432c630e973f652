//! Dense `2^N x 2^N` complex operators.

use nalgebra::DMatrix;
use num_bigint::BigUint;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// A square complex matrix acting on `n_qubits` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    n_qubits: usize,
    matrix: DMatrix<Complex64>,
}

/// Checks `2^n <= cap` before anything of that size is allocated.
pub(crate) fn check_matrix_cap(n_qubits: usize, cap: usize) -> Result<usize> {
    let dim = 1usize.checked_shl(n_qubits as u32).filter(|_| n_qubits < usize::BITS as usize);
    match dim {
        Some(d) if d <= cap => Ok(d),
        _ => Err(Error::MatrixCapExceeded { dim: BigUint::from(2u32).pow(n_qubits as u32), cap }),
    }
}

impl DenseOperator {
    pub fn new(n_qubits: usize, matrix: DMatrix<Complex64>) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "{} qubits need a {dim}x{dim} matrix, got {}x{}",
                n_qubits,
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::PreconditionViolated("operator has non-finite entries".into()));
        }
        Ok(DenseOperator { n_qubits, matrix })
    }

    pub fn zeros(n_qubits: usize) -> Self {
        let d = 1 << n_qubits;
        DenseOperator { n_qubits, matrix: DMatrix::zeros(d, d) }
    }

    pub fn identity(n_qubits: usize) -> Self {
        let d = 1 << n_qubits;
        DenseOperator { n_qubits, matrix: DMatrix::identity(d, d) }
    }

    pub fn from_diagonal(n_qubits: usize, diag: &[Complex64]) -> Self {
        let d = 1 << n_qubits;
        assert_eq!(diag.len(), d);
        let mut matrix = DMatrix::zeros(d, d);
        for (i, &v) in diag.iter().enumerate() {
            matrix[(i, i)] = v;
        }
        DenseOperator { n_qubits, matrix }
    }

    pub(crate) fn from_matrix_unchecked(n_qubits: usize, matrix: DMatrix<Complex64>) -> Self {
        debug_assert_eq!(matrix.nrows(), 1 << n_qubits);
        DenseOperator { n_qubits, matrix }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        DenseOperator { n_qubits: self.n_qubits, matrix: self.matrix.adjoint() }
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        DenseOperator { n_qubits: self.n_qubits, matrix: &self.matrix * s }
    }

    pub fn add(&self, other: &Self) -> Self {
        DenseOperator { n_qubits: self.n_qubits, matrix: &self.matrix + &other.matrix }
    }

    pub fn sub(&self, other: &Self) -> Self {
        DenseOperator { n_qubits: self.n_qubits, matrix: &self.matrix - &other.matrix }
    }

    pub fn mul(&self, other: &Self) -> Self {
        DenseOperator { n_qubits: self.n_qubits, matrix: &self.matrix * &other.matrix }
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        DenseOperator {
            n_qubits: self.n_qubits,
            matrix: &self.matrix * &other.matrix - &other.matrix * &self.matrix,
        }
    }

    /// `U A U†` for unitary `self`.
    pub fn conjugate(&self, a: &Self) -> Self {
        DenseOperator {
            n_qubits: self.n_qubits,
            matrix: &self.matrix * &a.matrix * self.matrix.adjoint(),
        }
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.matrix
            .iter()
            .zip(other.matrix.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    pub fn is_skew_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint().scale(Complex64::new(-1.0, 0.0))) <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        let prod = &self.matrix * self.matrix.adjoint();
        let id = DMatrix::<Complex64>::identity(self.dim(), self.dim());
        (prod - id).iter().all(|z| z.norm() <= tol)
    }

    pub fn determinant(&self) -> Complex64 {
        self.matrix.clone().determinant()
    }
}
