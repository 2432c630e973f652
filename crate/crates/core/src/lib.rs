//! Exact dimensions and explicit bases of symmetry-restricted subalgebras of
//! `su(2^N)`, together with the numerical machinery used to cross-check them.
//!
//! The crate is organised around five layers:
//!
//! * [`combinatorics`]: cycle-index polynomials over exact rationals and the
//!   closed-form dimension formulas derived from them.
//! * [`permutation_rep`]: explicit permutation groups, their action on index
//!   tuples and the qubit-permutation matrices `U_α`.
//! * [`pauli_orbits`]: Pauli strings, their Kronecker-product matrices and the
//!   orbit (G-necklace) basis of the invariant subalgebra.
//! * [`dense_oracle`]: commutant dimensions by singular values, the Hamming
//!   weight Hamiltonian and exponential-map membership checks.
//! * [`variance_lab`]: a small statevector simulator and the gradient-variance
//!   experiment comparing symmetric and unstructured ansatzes.
//!
//! Conventions used throughout: qubit 0 is the most significant bit of a
//! basis index (lexicographic Kronecker ordering), and a permutation `α`
//! acts on a word `t` by `(α·t)[j] = t[α(j)]`.

pub mod combinatorics;
pub mod dense_oracle;
mod error;
pub mod operator;
pub mod pauli_orbits;
pub mod permutation_rep;
pub mod variance_lab;

pub use combinatorics::{
    cycle_index, dim_energy_preserving, dim_invariant_algebra, dim_product,
    dim_symmetric_closed_form, euler_totient, evaluate, CycleIndex, CycleType, GroupFamily,
    GroupSpec, ProductGroupSpec,
};
pub use dense_oracle::{commutant_dimension, CommutantReport};
pub use error::{Error, Result};
pub use operator::DenseOperator;
pub use pauli_orbits::{OrbitBasisElement, PauliString};
pub use permutation_rep::{GroupElements, Permutation};

/// Default limit on the number of explicitly enumerated group elements.
pub const DEFAULT_ORDER_CAP: u64 = 1_000_000;
/// Default limit on the number of tuples scanned when counting orbits (`4^12`).
pub const DEFAULT_SPACE_CAP: u64 = 1 << 24;
/// Default limit on the dimension of dense `2^N x 2^N` matrices (`2^12`).
pub const DEFAULT_MATRIX_CAP: usize = 1 << 12;
