//! Pauli strings and the orbit basis of the invariant subalgebra.
//!
//! A word `μ ∈ {0,1,2,3}^N` stands for `σ_{μ_1} ⊗ ... ⊗ σ_{μ_N}` (Kronecker
//! product, first factor most significant). With the prefactor `i` these
//! words, minus the all-identity one, span `su(2^N)`. Under a permutation
//! group, invariant elements have equal coefficients along each orbit of
//! words, so one basis element per non-trivial orbit spans `G su(2^N)`.
//! Orbit sums are left unnormalised; rescaling does not change the span.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinatorics::ProductGroupSpec;
use crate::error::{Error, Result};
use crate::operator::{check_matrix_cap, DenseOperator};
use crate::permutation_rep::{apply_to_tuple, orbit_classes, Permutation};
use crate::DEFAULT_MATRIX_CAP;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A word over `{0,1,2,3}`; digit `k` selects `σ_k` (`σ_0` is the identity).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    digits: Vec<u8>,
}

impl PauliString {
    pub fn new(digits: Vec<u8>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::PreconditionViolated("a Pauli string needs at least one factor".into()));
        }
        if let Some(d) = digits.iter().find(|&&d| d > 3) {
            return Err(Error::PreconditionViolated(format!("Pauli digit {d} is not in 0..=3")));
        }
        Ok(PauliString { digits })
    }

    pub fn identity(n: usize) -> Self {
        PauliString { digits: vec![0; n] }
    }

    /// Decodes a base-4 index with position 0 most significant.
    pub fn from_index(mut index: u64, n: usize) -> Self {
        let mut digits = vec![0u8; n];
        for d in digits.iter_mut().rev() {
            *d = (index % 4) as u8;
            index /= 4;
        }
        PauliString { digits }
    }

    pub fn index(&self) -> u64 {
        self.digits.iter().fold(0, |acc, &d| acc * 4 + d as u64)
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    pub fn permuted(&self, p: &Permutation) -> Self {
        PauliString { digits: apply_to_tuple(p, &self.digits) }
    }

    /// Bit masks `(x, y|z)` and the constant phase such that
    /// `P[r, r ^ x] = phase * (-1)^popcount(r & yz)` and all other entries vanish.
    fn row_action(&self) -> (usize, usize, Complex64) {
        let n = self.len();
        let (mut x, mut yz, mut ny) = (0usize, 0usize, 0u32);
        for (j, &d) in self.digits.iter().enumerate() {
            let bit = 1 << (n - 1 - j);
            match d {
                1 => x |= bit,
                2 => {
                    x |= bit;
                    yz |= bit;
                    ny += 1;
                }
                3 => yz |= bit,
                _ => {}
            }
        }
        // σ_2 = [[0, -i], [i, 0]] contributes -i on row bit 0 and +i = -(-i) on row bit 1.
        let phase = match ny % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, -1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, 1.0),
        };
        (x, yz, phase)
    }

    /// The single non-zero entry `(column, value)` of row `r`.
    pub(crate) fn row_entry(&self, r: usize) -> (usize, Complex64) {
        let (x, yz, phase) = self.row_action();
        (r ^ x, signed(phase, r & yz))
    }
}

#[inline]
fn signed(v: Complex64, bits: usize) -> Complex64 {
    if bits.count_ones() % 2 == 1 {
        -v
    } else {
        v
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0'..='3' => Ok(c as u8 - b'0'),
                _ => Err(Error::PreconditionViolated(format!("`{s}` is not a word over 0..=3"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        PauliString::new(digits)
    }
}

impl Serialize for PauliString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `σ_{μ_1} ⊗ ... ⊗ σ_{μ_N}` as a dense matrix (no `i` prefactor).
pub fn pauli_matrix(s: &PauliString) -> Result<DenseOperator> {
    pauli_matrix_capped(s, DEFAULT_MATRIX_CAP)
}

pub fn pauli_matrix_capped(s: &PauliString, matrix_cap: usize) -> Result<DenseOperator> {
    let n = s.len();
    let dim = check_matrix_cap(n, matrix_cap)?;
    let (x, yz, phase) = s.row_action();
    let mut m = DMatrix::zeros(dim, dim);
    for r in 0..dim {
        m[(r, r ^ x)] = signed(phase, r & yz);
    }
    Ok(DenseOperator::from_matrix_unchecked(n, m))
}

/// Coefficients `c_s = Tr(P_s A) / 2^N` for every word `s` in index order,
/// so that `A = Σ_s c_s P_s`.
pub fn pauli_coefficients(a: &DenseOperator) -> Vec<Complex64> {
    let n = a.n_qubits();
    let dim = a.dim();
    let m = a.matrix();
    (0..(dim * dim) as u64)
        .map(|idx| {
            let s = PauliString::from_index(idx, n);
            let (x, yz, phase) = s.row_action();
            // Tr(P A) = Σ_r P[r, r^x] A[r^x, r]
            let tr: Complex64 = (0..dim).map(|r| signed(phase, r & yz) * m[(r ^ x, r)]).sum();
            tr / dim as f64
        })
        .collect()
}

/// One element of the orbit basis: a G-necklace of Pauli words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitBasisElement {
    pub representative: PauliString,
    pub weight: usize,
    pub members: Vec<PauliString>,
}

/// One basis element per orbit of `{0..3}^N ∖ {0^N}`, ordered by
/// representative (the lexicographically smallest member).
pub fn enumerate_invariant_basis(spec: &ProductGroupSpec, space_cap: u64) -> Result<Vec<OrbitBasisElement>> {
    let n = spec.degree();
    let classes = orbit_classes(spec, 4, space_cap)?;
    Ok(classes
        .into_iter()
        .skip(1) // the orbit of 0^N is {0^N}
        .map(|class| {
            let members: Vec<PauliString> =
                class.iter().map(|&i| PauliString::from_index(i as u64, n)).collect();
            OrbitBasisElement { representative: members[0].clone(), weight: members.len(), members }
        })
        .collect())
}

/// `i Σ_{s ∈ orbit} P_s`.
pub fn symmetrized_generator(e: &OrbitBasisElement) -> Result<DenseOperator> {
    symmetrized_generator_capped(e, DEFAULT_MATRIX_CAP)
}

pub fn symmetrized_generator_capped(e: &OrbitBasisElement, matrix_cap: usize) -> Result<DenseOperator> {
    let n = e.representative.len();
    let dim = check_matrix_cap(n, matrix_cap)?;
    let mut m = DMatrix::zeros(dim, dim);
    for s in &e.members {
        let (x, yz, phase) = s.row_action();
        for r in 0..dim {
            m[(r, r ^ x)] += I * signed(phase, r & yz);
        }
    }
    Ok(DenseOperator::from_matrix_unchecked(n, m))
}

/// Real combination `Σ_j c_j · i P_{basis[j]}` of the Pauli basis of `su(2^N)`
/// (word indices `1..4^N`, i.e. skipping the identity).
pub fn su_element(n: usize, coefficients: &[f64]) -> DenseOperator {
    let dim = 1usize << n;
    assert_eq!(coefficients.len(), dim * dim - 1);
    let mut m = DMatrix::zeros(dim, dim);
    for (j, &c) in coefficients.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let s = PauliString::from_index(j as u64 + 1, n);
        let (x, yz, phase) = s.row_action();
        for r in 0..dim {
            m[(r, r ^ x)] += I * signed(phase, r & yz) * c;
        }
    }
    DenseOperator::from_matrix_unchecked(n, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{dim_invariant_algebra, GroupSpec};
    use crate::permutation_rep::{enumerate_elements, qubit_permutation_matrix};
    use num_bigint::BigUint;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    // Test-side Kronecker product of 2x2 Pauli matrices.
    fn kron_oracle(s: &PauliString) -> DMatrix<Complex64> {
        let sigma = |d: u8| -> DMatrix<Complex64> {
            let z = c(0.0, 0.0);
            let o = c(1.0, 0.0);
            match d {
                0 => DMatrix::from_row_slice(2, 2, &[o, z, z, o]),
                1 => DMatrix::from_row_slice(2, 2, &[z, o, o, z]),
                2 => DMatrix::from_row_slice(2, 2, &[z, c(0.0, -1.0), c(0.0, 1.0), z]),
                _ => DMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
            }
        };
        s.digits().iter().fold(DMatrix::from_element(1, 1, c(1.0, 0.0)), |acc, &d| acc.kronecker(&sigma(d)))
    }

    #[test]
    fn matrices_match_kronecker_products() {
        for n in 1..=3 {
            for idx in 0..4u64.pow(n as u32) {
                let s = PauliString::from_index(idx, n);
                assert_eq!(pauli_matrix(&s).unwrap().matrix(), &kron_oracle(&s), "{s}");
            }
        }
    }

    #[test]
    fn hand_examples() {
        assert_eq!(pauli_matrix(&ps("0")).unwrap(), DenseOperator::identity(1));
        let zz = pauli_matrix(&ps("33")).unwrap();
        let diag = [1.0, -1.0, -1.0, 1.0];
        for r in 0..4 {
            for col in 0..4 {
                let expect = if r == col { diag[r] } else { 0.0 };
                assert_eq!(zz.get(r, col), c(expect, 0.0));
            }
        }
        // σ_1 ⊗ σ_0 = [[0, I], [I, 0]]
        let x0 = pauli_matrix(&ps("10")).unwrap();
        for r in 0..4 {
            for col in 0..4 {
                let expect = if col == (r ^ 2) { 1.0 } else { 0.0 };
                assert_eq!(x0.get(r, col), c(expect, 0.0));
            }
        }
    }

    #[test]
    fn pauli_matrices_are_hermitian_involutions() {
        for idx in 0..64u64 {
            let s = PauliString::from_index(idx, 3);
            let p = pauli_matrix(&s).unwrap();
            assert!(p.is_hermitian(0.0));
            assert_eq!(p.mul(&p), DenseOperator::identity(3));
            let expected_trace = if s.is_identity() { 8.0 } else { 0.0 };
            assert_eq!(p.trace(), c(expected_trace, 0.0));
        }
    }

    #[test]
    fn coefficients_roundtrip() {
        let a = su_element(2, &(1..16).map(|i| i as f64 * 0.1).collect::<Vec<_>>());
        let coeffs = pauli_coefficients(&a);
        assert!(coeffs[0].norm() < 1e-14);
        for (j, cf) in coeffs.iter().enumerate().skip(1) {
            assert!((cf - c(0.0, j as f64 * 0.1)).norm() < 1e-14);
        }
    }

    #[test]
    fn string_format() {
        let s = ps("0312");
        assert_eq!(s.to_string(), "0312");
        assert_eq!(PauliString::from_index(s.index(), 4), s);
        assert!("0412".parse::<PauliString>().is_err());
        assert!("".parse::<PauliString>().is_err());
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "\"0312\"");
        assert_eq!(serde_json::from_str::<PauliString>(&json).unwrap(), s);
    }

    #[test]
    fn symmetric_two_basis() {
        let basis = enumerate_invariant_basis(&GroupSpec::symmetric(2).into(), 1 << 24).unwrap();
        assert_eq!(basis.len(), 9);
        assert_eq!(basis[0].representative, ps("01"));
        assert_eq!(basis[0].members, vec![ps("01"), ps("10")]);
        let json = serde_json::to_value(&basis[0]).unwrap();
        assert_eq!(json["representative"], "01");
        assert_eq!(json["weight"], 2);
        assert_eq!(json["members"][1], "10");
    }

    #[test]
    fn trivial_and_cyclic_bases() {
        for n in 1..=4 {
            let basis = enumerate_invariant_basis(&GroupSpec::trivial(n).into(), 1 << 24).unwrap();
            assert_eq!(basis.len(), 4usize.pow(n as u32) - 1);
            assert!(basis.iter().all(|e| e.weight == 1));
        }
        let c4 = enumerate_invariant_basis(&GroupSpec::cyclic(4).into(), 1 << 24).unwrap();
        assert_eq!(c4.len(), 69);
    }

    #[test]
    fn orbits_partition_and_count() {
        for s in ["S:3", "A:4", "D:5", "C:6", "E:3", "S:2xC:3"] {
            let spec: ProductGroupSpec = s.parse().unwrap();
            let basis = enumerate_invariant_basis(&spec, 1 << 24).unwrap();
            let total: usize = basis.iter().map(|e| e.weight).sum();
            assert_eq!(total, 4usize.pow(spec.degree() as u32) - 1, "{s}");
            if let Some(g) = spec.as_single() {
                assert_eq!(BigUint::from(basis.len()), dim_invariant_algebra(&g, 4).unwrap());
            }
            let g = enumerate_elements(&spec, 1_000_000).unwrap();
            for e in &basis {
                assert!(e.members.contains(&e.representative));
                assert!(e.members.iter().all(|m| *m >= e.representative));
                for m in &e.members {
                    for a in g.elements() {
                        assert!(e.members.binary_search(&m.permuted(a)).is_ok(), "{s}: orbit not closed");
                    }
                }
            }
        }
    }

    #[test]
    fn symmetrized_examples() {
        let basis = enumerate_invariant_basis(&GroupSpec::symmetric(2).into(), 1 << 24).unwrap();
        let find = |r: &str| basis.iter().find(|e| e.representative == ps(r)).unwrap();
        // i(σ_0⊗σ_3 + σ_3⊗σ_0) = i·diag(2, 0, 0, -2)
        let g03 = symmetrized_generator(find("03")).unwrap();
        let expected = DenseOperator::from_diagonal(2, &[c(0.0, 2.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -2.0)]);
        assert_eq!(g03, expected);
        let g33 = symmetrized_generator(find("33")).unwrap();
        let expected = DenseOperator::from_diagonal(2, &[c(0.0, 1.0), c(0.0, -1.0), c(0.0, -1.0), c(0.0, 1.0)]);
        assert_eq!(g33, expected);
        for e in &basis {
            let g = symmetrized_generator(e).unwrap();
            assert_eq!(g.trace(), c(0.0, 0.0));
            assert!(g.is_skew_hermitian(0.0));
        }
    }

    #[test]
    fn generators_commute_with_group_matrices() {
        for s in ["S:3", "C:4", "D:4", "A:4", "S:2xE:1"] {
            let spec: ProductGroupSpec = s.parse().unwrap();
            let group = enumerate_elements(&spec, 1_000_000).unwrap();
            let us: Vec<_> =
                group.elements().iter().map(|a| qubit_permutation_matrix(a, 1 << 12).unwrap()).collect();
            for e in enumerate_invariant_basis(&spec, 1 << 24).unwrap() {
                let g = symmetrized_generator(&e).unwrap();
                for u in &us {
                    let comm = u.commutator(&g).frobenius_norm();
                    assert!(comm <= 1e-12 * u.frobenius_norm() * g.frobenius_norm(), "{s}");
                }
            }
        }
    }
}
