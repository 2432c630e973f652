//! Numerical cross-checks that do not go through any counting argument.
//!
//! The commutant of a set of matrices `{B}` inside `su(2^N)` is the null space
//! of the real-linear map `c ↦ ([B, Σ_j c_j i P_j])_B` written in the Pauli
//! basis. Its dimension is read off the singular values of that map; a
//! mandatory gap test refuses to report a rank when the spectrum has no clear
//! split. Commuting with a generating set is the same as commuting with the
//! whole group, so only generator matrices are needed.

use nalgebra::{DMatrix, SymmetricEigen, SVD};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use crate::operator::DenseOperator;

use crate::combinatorics::ProductGroupSpec;
use crate::error::{Error, Result};
use crate::operator::check_matrix_cap;
use crate::pauli_orbits::PauliString;
use crate::permutation_rep::{enumerate_elements, generators, qubit_permutation_matrix};

/// Rank-detection settings.
#[derive(Clone, Copy, Debug)]
pub struct CommutantOptions {
    /// Singular values below `relative_tolerance * σ_max` count as zero.
    pub relative_tolerance: f64,
    /// Required ratio between the smallest accepted and largest rejected singular value.
    pub min_gap_ratio: f64,
    /// Largest qubit count accepted; 5 by default, 6 is possible but slow.
    pub max_qubits: usize,
}

impl Default for CommutantOptions {
    fn default() -> Self {
        CommutantOptions { relative_tolerance: 1e-8, min_gap_ratio: 10.0, max_qubits: 5 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommutantReport {
    pub n_qubits: usize,
    pub generator_count: usize,
    /// Number of real linear constraints (rows of the constraint matrix).
    pub constraint_count: usize,
    /// `4^N - 1`, the number of unknowns.
    pub basis_size: usize,
    pub rank: usize,
    /// Nullity of the constraint map: `basis_size - rank`.
    pub dimension: usize,
    /// Absolute threshold actually applied to the singular values.
    pub tolerance: f64,
    pub smallest_accepted: Option<f64>,
    pub largest_rejected: Option<f64>,
    /// `smallest_accepted / largest_rejected`; `None` when unbounded.
    pub gap_ratio: Option<f64>,
    pub indeterminate: bool,
}

struct Decomposition {
    report: CommutantReport,
    null_space: Vec<Vec<f64>>,
}

/// Real constraint matrix: for each generator `B` and basis word `P_j`, the
/// real and imaginary parts of `[B, i P_j]` stacked into column `j`.
fn constraint_matrix(gens: &[DenseOperator], n: usize) -> DMatrix<f64> {
    let dim = 1usize << n;
    let cols = dim * dim - 1;
    let rows_per_gen = 2 * dim * dim;
    let mut m = DMatrix::<f64>::zeros(rows_per_gen * gens.len(), cols);
    let i = Complex64::new(0.0, 1.0);
    let words: Vec<Vec<(usize, Complex64)>> = (1..(dim * dim) as u64)
        .map(|w| {
            let s = PauliString::from_index(w, n);
            (0..dim).map(|r| s.row_entry(r)).collect()
        })
        .collect();
    for (g, b) in gens.iter().enumerate() {
        let b = b.matrix();
        let base = g * rows_per_gen;
        for (j, p) in words.iter().enumerate() {
            // p[r] = (r ^ x, P[r, r ^ x]); x is the same for every row.
            for r in 0..dim {
                let (pr_col, pr_val) = p[r];
                for c in 0..dim {
                    // (B P)[r, c] = B[r, c ^ x] P[c ^ x, c]
                    let (_, pcx_val) = p[pr_col ^ r ^ c];
                    let bp = b[(r, pr_col ^ r ^ c)] * pcx_val;
                    // (P B)[r, c] = P[r, r ^ x] B[r ^ x, c]
                    let pb = pr_val * b[(pr_col, c)];
                    let entry = i * (bp - pb);
                    let row = base + 2 * (r * dim + c);
                    m[(row, j)] = entry.re;
                    m[(row + 1, j)] = entry.im;
                }
            }
        }
    }
    m
}

fn decompose(gens: &[DenseOperator], n: usize, opts: &CommutantOptions, want_null: bool) -> Result<Decomposition> {
    if n > opts.max_qubits {
        return Err(Error::PreconditionViolated(format!(
            "commutant oracle is limited to {} qubits, got {n}",
            opts.max_qubits
        )));
    }
    let dim = 1usize << n;
    if let Some(bad) = gens.iter().find(|g| g.dim() != dim) {
        return Err(Error::DimensionMismatch(format!("generator is {}x{}, expected {dim}x{dim}", bad.dim(), bad.dim())));
    }
    let basis_size = dim * dim - 1;
    if gens.is_empty() {
        let null_space = if want_null {
            (0..basis_size).map(|j| (0..basis_size).map(|k| if j == k { 1.0 } else { 0.0 }).collect()).collect()
        } else {
            Vec::new()
        };
        let report = CommutantReport {
            n_qubits: n,
            generator_count: 0,
            constraint_count: 0,
            basis_size,
            rank: 0,
            dimension: basis_size,
            tolerance: 0.0,
            smallest_accepted: None,
            largest_rejected: None,
            gap_ratio: None,
            indeterminate: false,
        };
        return Ok(Decomposition { report, null_space });
    }

    let m = constraint_matrix(gens, n);
    let constraint_count = m.nrows();
    let svd = SVD::new(m, false, want_null);
    let sigma = &svd.singular_values;
    let sigma_max = sigma.iter().cloned().fold(0.0, f64::max);
    let tolerance = opts.relative_tolerance * sigma_max;
    let accepted: Vec<f64> = sigma.iter().cloned().filter(|&s| s > tolerance).collect();
    let rejected: Vec<f64> = sigma.iter().cloned().filter(|&s| s <= tolerance).collect();
    let smallest_accepted = accepted.iter().cloned().reduce(f64::min);
    let largest_rejected = rejected.iter().cloned().reduce(f64::max);
    let gap_ratio = match (smallest_accepted, largest_rejected) {
        (Some(a), Some(r)) if r > 0.0 => Some(a / r),
        _ => None,
    };
    let indeterminate = match (smallest_accepted, largest_rejected) {
        (Some(_), Some(_)) => gap_ratio.is_some_and(|g| g < opts.min_gap_ratio),
        (Some(a), None) => a < opts.min_gap_ratio * tolerance,
        _ => false,
    };
    let rank = accepted.len();
    let null_space = if want_null {
        let v_t = svd.v_t.as_ref().expect("requested V^T");
        sigma
            .iter()
            .enumerate()
            .filter(|(_, &s)| s <= tolerance)
            .map(|(row, _)| v_t.row(row).iter().cloned().collect())
            .collect()
    } else {
        Vec::new()
    };
    let report = CommutantReport {
        n_qubits: n,
        generator_count: gens.len(),
        constraint_count,
        basis_size,
        rank,
        dimension: basis_size - rank,
        tolerance,
        smallest_accepted,
        largest_rejected,
        gap_ratio,
        indeterminate,
    };
    Ok(Decomposition { report, null_space })
}

/// Dimension of `{a ∈ su(2^N) : B a = a B for all generators B}`, with the
/// indeterminate flag set instead of failing when the gap test does not pass.
pub fn commutant_report(gens: &[DenseOperator], n: usize, opts: &CommutantOptions) -> Result<CommutantReport> {
    decompose(gens, n, opts, false).map(|d| d.report)
}

/// Like [`commutant_report`] but fails with [`Error::IndeterminateRank`]
/// when the singular-value gap test does not pass.
pub fn commutant_dimension(gens: &[DenseOperator], n: usize) -> Result<CommutantReport> {
    commutant_dimension_with(gens, n, &CommutantOptions::default())
}

pub fn commutant_dimension_with(
    gens: &[DenseOperator],
    n: usize,
    opts: &CommutantOptions,
) -> Result<CommutantReport> {
    let report = commutant_report(gens, n, opts)?;
    if report.indeterminate {
        return Err(Error::IndeterminateRank {
            smallest_accepted: report.smallest_accepted.unwrap_or(f64::NAN),
            largest_rejected: report.largest_rejected.unwrap_or(f64::NAN),
            tolerance: report.tolerance,
        });
    }
    Ok(report)
}

/// Report plus an orthonormal basis of the commutant, as real coefficient
/// vectors over the Pauli basis `i P_1, ..., i P_{4^N - 1}` (see
/// [`crate::pauli_orbits::su_element`]).
pub fn commutant_basis(
    gens: &[DenseOperator],
    n: usize,
    opts: &CommutantOptions,
) -> Result<(CommutantReport, Vec<Vec<f64>>)> {
    let d = decompose(gens, n, opts, true)?;
    Ok((d.report, d.null_space))
}

/// `U_α` for each generator of the group.
pub fn group_generator_matrices(spec: &ProductGroupSpec, matrix_cap: usize) -> Result<Vec<DenseOperator>> {
    check_matrix_cap(spec.degree(), matrix_cap)?;
    generators(spec).iter().map(|g| qubit_permutation_matrix(g, matrix_cap)).collect()
}

/// `U_α` for every non-identity group element; the slow path used to
/// double-check that generator constraints suffice.
pub fn group_element_matrices(
    spec: &ProductGroupSpec,
    order_cap: u64,
    matrix_cap: usize,
) -> Result<Vec<DenseOperator>> {
    check_matrix_cap(spec.degree(), matrix_cap)?;
    enumerate_elements(spec, order_cap)?
        .elements()
        .iter()
        .filter(|p| !p.is_identity())
        .map(|p| qubit_permutation_matrix(p, matrix_cap))
        .collect()
}

/// `H^(N) = Σ_j σ_0 ⊗ ... ⊗ H ⊗ ... ⊗ σ_0` with `H = (σ_0 - σ_3)/2`: the
/// diagonal matrix of Hamming weights of the basis bit strings.
pub fn energy_hamiltonian(n: usize, matrix_cap: usize) -> Result<DenseOperator> {
    let dim = check_matrix_cap(n, matrix_cap)?;
    let diag: Vec<Complex64> = (0..dim).map(|b| Complex64::new(b.count_ones() as f64, 0.0)).collect();
    Ok(DenseOperator::from_diagonal(n, &diag))
}

/// Sizes of the energy eigenspaces: `[C(N,0), ..., C(N,N)]`.
pub fn block_profile(n: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(n + 1);
    let mut c = 1usize;
    for i in 0..=n {
        out.push(c);
        c = c * (n - i) / (i + 1);
    }
    out
}

/// Basis indices sorted by Hamming weight (stable in index order).
pub fn weight_order(n: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..1usize << n).collect();
    idx.sort_by_key(|&b| b.count_ones());
    idx
}

/// Re-expresses `a` in the weight-ordered basis, where operators that
/// commute with `H^(N)` become block diagonal with [`block_profile`] blocks.
pub fn to_weight_order(a: &DenseOperator) -> DenseOperator {
    let order = weight_order(a.n_qubits());
    let m = a.matrix();
    let d = a.dim();
    DenseOperator::from_matrix_unchecked(a.n_qubits(), DMatrix::from_fn(d, d, |i, j| m[(order[i], order[j])]))
}

/// `true` iff every entry outside the diagonal blocks has magnitude `<= tol`.
pub fn is_block_diagonal(a: &DenseOperator, profile: &[usize], tol: f64) -> Result<bool> {
    if profile.iter().sum::<usize>() != a.dim() {
        return Err(Error::DimensionMismatch(format!(
            "block profile sums to {}, operator has dimension {}",
            profile.iter().sum::<usize>(),
            a.dim()
        )));
    }
    let mut block_of = Vec::with_capacity(a.dim());
    for (b, &size) in profile.iter().enumerate() {
        block_of.extend(std::iter::repeat_n(b, size));
    }
    let m = a.matrix();
    Ok((0..a.dim())
        .all(|i| (0..a.dim()).all(|j| block_of[i] == block_of[j] || m[(i, j)].norm() <= tol)))
}

/// `exp(a)` for skew-Hermitian `a`, via the eigendecomposition of the
/// Hermitian matrix `-i a`.
pub fn expm_skew_hermitian(a: &DenseOperator) -> DenseOperator {
    let h = a.matrix() * Complex64::new(0.0, -1.0);
    // Symmetrise away rounding so the Hermitian solver sees an exact Hermitian input.
    let h = (&h + h.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(h);
    let phases = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex64::new(0.0, l).exp()));
    let v = eig.eigenvectors;
    DenseOperator::from_matrix_unchecked(a.n_qubits(), &v * phases * v.adjoint())
}

fn max_commutator(a: &DenseOperator, b: &DenseOperator) -> f64 {
    a.commutator(b).matrix().iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Checks that `exp(a)` lies in the invariant group: unitary, determinant 1
/// and commuting with every generator, all to `tol`.
///
/// `a` must be skew-Hermitian, traceless and commute with the generators;
/// otherwise this fails with [`Error::PreconditionViolated`].
pub fn exp_membership_check(a: &DenseOperator, gens: &[DenseOperator], tol: f64) -> Result<bool> {
    if !a.is_skew_hermitian(tol) {
        return Err(Error::PreconditionViolated("element is not skew-Hermitian".into()));
    }
    if a.trace().norm() > tol {
        return Err(Error::PreconditionViolated(format!("element has trace {}", a.trace())));
    }
    for (k, g) in gens.iter().enumerate() {
        if g.dim() != a.dim() {
            return Err(Error::DimensionMismatch(format!("generator {k} has the wrong size")));
        }
        let c = max_commutator(g, a);
        if c > tol {
            return Err(Error::PreconditionViolated(format!(
                "element does not commute with generator {k} (max |[B, a]| = {c:e})"
            )));
        }
    }
    let e = expm_skew_hermitian(a);
    let unitary = e.is_unitary(tol);
    let det_one = (e.determinant() - Complex64::new(1.0, 0.0)).norm() <= tol;
    let commutes = gens.iter().all(|g| max_commutator(g, &e) <= tol);
    Ok(unitary && det_one && commutes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::GroupSpec;
    use crate::pauli_orbits::{pauli_matrix, su_element};
    use crate::permutation_rep::Permutation;

    const CAP: usize = 1 << 12;

    fn swap() -> DenseOperator {
        qubit_permutation_matrix(&Permutation::transposition(2, 0, 1), CAP).unwrap()
    }

    #[test]
    fn swap_commutant_has_dimension_nine() {
        let r = commutant_dimension(&[swap()], 2).unwrap();
        assert_eq!(r.dimension, 9);
        assert_eq!(r.rank, 6);
        assert!(!r.indeterminate);
        assert!(r.gap_ratio.is_none_or(|g| g >= 10.0));
    }

    #[test]
    fn empty_generators_give_everything() {
        for n in 1..=3 {
            let r = commutant_dimension(&[], n).unwrap();
            assert_eq!(r.dimension, 4usize.pow(n as u32) - 1);
        }
    }

    #[test]
    fn energy_two_qubits_is_five() {
        let h = energy_hamiltonian(2, CAP).unwrap();
        assert_eq!(commutant_dimension(&[h], 2).unwrap().dimension, 5);
    }

    #[test]
    fn energy_hamiltonian_matches_kronecker_sum() {
        // Σ_j σ_0 ⊗ .. ⊗ (σ_0 - σ_3)/2 ⊗ .. ⊗ σ_0 built from Pauli strings.
        for n in 1..=4 {
            let mut sum = DenseOperator::zeros(n);
            for j in 0..n {
                let mut digits = vec![0u8; n];
                let id = pauli_matrix(&PauliString::new(digits.clone()).unwrap()).unwrap();
                digits[j] = 3;
                let z = pauli_matrix(&PauliString::new(digits).unwrap()).unwrap();
                sum = sum.add(&id.sub(&z).scale(Complex64::new(0.5, 0.0)));
            }
            assert_eq!(sum, energy_hamiltonian(n, CAP).unwrap());
        }
        let h3 = energy_hamiltonian(3, CAP).unwrap();
        let diag: Vec<f64> = (0..8).map(|i| h3.get(i, i).re).collect();
        assert_eq!(diag, vec![0.0, 1.0, 1.0, 2.0, 1.0, 2.0, 2.0, 3.0]);
    }

    #[test]
    fn block_profiles() {
        assert_eq!(block_profile(1), vec![1, 1]);
        assert_eq!(block_profile(2), vec![1, 2, 1]);
        let p4 = block_profile(4);
        assert_eq!(p4, vec![1, 4, 6, 4, 1]);
        assert_eq!(p4.iter().map(|s| s * s).sum::<usize>() - 1, 69);
    }

    #[test]
    fn block_diagonal_examples() {
        let profile = [1, 2, 1];
        assert!(is_block_diagonal(&DenseOperator::identity(2), &profile, 1e-12).unwrap());
        assert!(is_block_diagonal(&swap(), &profile, 1e-12).unwrap());
        let x0 = pauli_matrix(&"10".parse().unwrap()).unwrap();
        assert!(!is_block_diagonal(&x0, &profile, 1e-12).unwrap());
        assert!(is_block_diagonal(&x0, &[1, 2], 1e-12).is_err());
    }

    #[test]
    fn energy_commutant_is_block_diagonal() {
        for n in 1..=3 {
            let h = energy_hamiltonian(n, CAP).unwrap();
            let (report, null) = commutant_basis(&[h], n, &CommutantOptions::default()).unwrap();
            assert_eq!(null.len(), report.dimension);
            for v in &null {
                let a = to_weight_order(&su_element(n, v));
                assert!(is_block_diagonal(&a, &block_profile(n), 1e-10).unwrap());
            }
        }
    }

    #[test]
    fn generator_and_full_group_constraints_agree() {
        for s in ["S:3", "D:4", "A:4", "C:3xE:1"] {
            let spec: ProductGroupSpec = s.parse().unwrap();
            let n = spec.degree();
            let by_gens = commutant_dimension(&group_generator_matrices(&spec, CAP).unwrap(), n).unwrap();
            let by_all =
                commutant_dimension(&group_element_matrices(&spec, 1_000_000, CAP).unwrap(), n).unwrap();
            assert_eq!(by_gens.dimension, by_all.dimension, "{s}");
        }
    }

    #[test]
    fn oracle_matches_cycle_index_small() {
        for fam in crate::combinatorics::GroupFamily::ALL {
            for n in 1..=3 {
                let g = GroupSpec::new(fam, n).unwrap();
                let gens = group_generator_matrices(&g.into(), CAP).unwrap();
                let r = commutant_dimension(&gens, n).unwrap();
                let expect = crate::combinatorics::dim_invariant_algebra(&g, 4).unwrap();
                assert_eq!(num_bigint::BigUint::from(r.dimension), expect, "{g}");
            }
        }
    }

    #[test]
    fn qubit_limit() {
        assert!(matches!(
            commutant_dimension(&[DenseOperator::identity(6)], 6),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let zero = DenseOperator::zeros(2);
        assert_eq!(expm_skew_hermitian(&zero).max_abs_diff(&DenseOperator::identity(2)), 0.0);
        assert!(exp_membership_check(&zero, &[swap()], 1e-12).unwrap());
    }

    #[test]
    fn exp_matches_pade() {
        let coeffs: Vec<f64> = (0..15).map(|i| ((i * 7 % 5) as f64 - 2.0) * 0.3).collect();
        let a = su_element(2, &coeffs);
        let ours = expm_skew_hermitian(&a);
        let pade = a.matrix().exp();
        let diff = (ours.matrix() - pade).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(diff < 1e-12, "{diff}");
    }

    #[test]
    fn non_commuting_element_is_a_precondition_violation() {
        let x0 = pauli_matrix(&"10".parse().unwrap()).unwrap().scale(Complex64::new(0.0, 1.0));
        assert!(matches!(exp_membership_check(&x0, &[swap()], 1e-9), Err(Error::PreconditionViolated(_))));
        let not_skew = pauli_matrix(&"13".parse().unwrap()).unwrap();
        assert!(matches!(exp_membership_check(&not_skew, &[], 1e-9), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn report_serialises() {
        let r = commutant_dimension(&[swap()], 2).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["dimension"], 9);
        let back: CommutantReport = serde_json::from_value(json).unwrap();
        assert_eq!(back, r);
    }
}
