//! Explicit permutation groups and their actions.
//!
//! A [`Permutation`] `α` on `N` symbols acts on a length-`N` word by
//! `(α·t)[j] = t[α(j)]`. The same action on qubit labels gives the 0/1
//! matrix `U_α` that sends the basis state with bits `(b_0, ..., b_{N-1})`
//! to the one whose bit `j` is `b_{α(j)}`; with this choice
//! `U_α P(s) U_α† = P(α·s)` for every Pauli string `s`.

use std::collections::HashSet;
use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigUint;
use num_complex::Complex64;

use crate::combinatorics::{CycleType, GroupFamily, GroupSpec, ProductGroupSpec};
use crate::error::{Error, Result};
use crate::operator::{check_matrix_cap, DenseOperator};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::PreconditionViolated(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// `j -> (j + shift) mod n`.
    pub fn rotation(n: usize, shift: usize) -> Self {
        Permutation { images: (0..n).map(|j| (j + shift) % n).collect() }
    }

    /// `j -> (shift - j) mod n`.
    pub fn reflection(n: usize, shift: usize) -> Self {
        Permutation { images: (0..n).map(|j| (shift + n - j % n) % n).collect() }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Permutation { images }
    }

    /// The cycle `c[0] -> c[1] -> ... -> c[last] -> c[0]`.
    pub fn cycle(n: usize, cycle: &[usize]) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        for (i, &from) in cycle.iter().enumerate() {
            images[from] = cycle[(i + 1) % cycle.len()];
        }
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, j: usize) -> usize {
        self.images[j]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// The element acting on words as `self` after `other`:
    /// `apply_to_tuple(p.compose(q), t) == apply_to_tuple(p, &apply_to_tuple(q, t))`,
    /// and correspondingly `U_{p.compose(q)} = U_p U_q`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation { images: self.images.iter().map(|&j| other.images[j]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn cycle_type(&self) -> CycleType {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.images[j];
                len += 1;
            }
            lengths.push(len);
        }
        CycleType::new(lengths)
    }

    pub fn is_even(&self) -> bool {
        self.cycle_type().is_even()
    }

    /// Places `self` on symbols `offset..offset+len` of a permutation of `n` symbols.
    fn embed(&self, n: usize, offset: usize) -> Permutation {
        let mut images: Vec<usize> = (0..n).collect();
        for (i, &j) in self.images.iter().enumerate() {
            images[offset + i] = offset + j;
        }
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

/// `out[j] = t[α(j)]`.
pub fn apply_to_tuple<T: Copy>(p: &Permutation, t: &[T]) -> Vec<T> {
    assert_eq!(p.len(), t.len(), "permutation and word lengths differ");
    p.images.iter().map(|&src| t[src]).collect()
}

/// The basis index reached from `index` by `U_α` on `n` qubits
/// (qubit 0 is the most significant bit).
pub fn permute_basis_index(p: &Permutation, index: usize) -> usize {
    let n = p.len();
    let mut out = 0;
    for j in 0..n {
        let bit = (index >> (n - 1 - p.images[j])) & 1;
        out |= bit << (n - 1 - j);
    }
    out
}

/// Element list of a group together with the spec it was built from.
#[derive(Clone, Debug)]
pub struct GroupElements {
    spec: ProductGroupSpec,
    elements: Vec<Permutation>,
}

impl GroupElements {
    pub fn spec(&self) -> &ProductGroupSpec {
        &self.spec
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.spec.degree()
    }
}

fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![Permutation { images: current.clone() }];
    // Lexicographic successor until the sequence is decreasing.
    loop {
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).expect("pivot exists");
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(Permutation { images: current.clone() });
    }
}

fn part_elements(spec: &GroupSpec) -> Vec<Permutation> {
    let n = spec.size();
    match spec.family() {
        GroupFamily::Symmetric => all_permutations(n),
        GroupFamily::Alternating => all_permutations(n).into_iter().filter(Permutation::is_even).collect(),
        GroupFamily::Dihedral => {
            let mut seen = HashSet::new();
            (0..n)
                .flat_map(|r| [Permutation::rotation(n, r), Permutation::reflection(n, r)])
                .filter(|p| seen.insert(p.clone()))
                .collect()
        }
        GroupFamily::Cyclic => (0..n).map(|r| Permutation::rotation(n, r)).collect(),
        GroupFamily::Trivial => vec![Permutation::identity(n)],
    }
}

/// Lists every element of the group. Fails with
/// [`Error::OrderCapExceeded`] before enumerating if the order exceeds `order_cap`.
pub fn enumerate_elements(spec: &ProductGroupSpec, order_cap: u64) -> Result<GroupElements> {
    let order = spec.order();
    if order > BigUint::from(order_cap) {
        return Err(Error::OrderCapExceeded { order, cap: order_cap });
    }
    let n = spec.degree();
    let mut elements = vec![Permutation::identity(n)];
    for (part, offset) in spec.parts().iter().zip(spec.offsets()) {
        let local: Vec<Permutation> = part_elements(part).iter().map(|p| p.embed(n, offset)).collect();
        elements = elements
            .iter()
            .flat_map(|g| local.iter().map(move |h| g.compose(h)))
            .collect();
    }
    Ok(GroupElements { spec: spec.clone(), elements })
}

fn part_generators(spec: &GroupSpec) -> Vec<Permutation> {
    let n = spec.size();
    match spec.family() {
        GroupFamily::Symmetric if n >= 3 => {
            vec![Permutation::transposition(n, 0, 1), Permutation::rotation(n, 1)]
        }
        GroupFamily::Symmetric | GroupFamily::Dihedral if n == 2 => vec![Permutation::transposition(2, 0, 1)],
        // The 3-cycles (0 1 i), i = 2..n-1, generate A_n.
        GroupFamily::Alternating if n >= 3 => (2..n).map(|i| Permutation::cycle(n, &[0, 1, i])).collect(),
        GroupFamily::Dihedral if n >= 3 => vec![Permutation::rotation(n, 1), Permutation::reflection(n, 0)],
        GroupFamily::Cyclic if n >= 2 => vec![Permutation::rotation(n, 1)],
        _ => Vec::new(),
    }
}

/// A generating set of the group (empty for trivial groups).
///
/// `S_n`: adjacent transposition and `n`-cycle; `A_n`: the 3-cycles
/// `(0 1 i)`; `D_n`: rotation and reflection; `C_n`: rotation.
pub fn generators(spec: &ProductGroupSpec) -> Vec<Permutation> {
    let n = spec.degree();
    spec.parts()
        .iter()
        .zip(spec.offsets())
        .flat_map(|(part, offset)| part_generators(part).into_iter().map(move |g| g.embed(n, offset)))
        .collect()
}

fn check_space_cap(n: usize, k: u64, cap: u64) -> Result<usize> {
    match k.checked_pow(n as u32) {
        Some(size) if size <= cap && size <= u32::MAX as u64 => Ok(size as usize),
        _ => Err(Error::StateSpaceCapExceeded { size: BigUint::from(k).pow(n as u32), cap }),
    }
}

/// Union-find over all `k^N` words, joined along the generator action. Each
/// root is the numerically (hence lexicographically) smallest word of its
/// orbit, so canonical representatives are exactly the fixed points of `find`.
struct OrbitForest {
    parent: Vec<u32>,
}

impl OrbitForest {
    fn build(spec: &ProductGroupSpec, k: u64, space_cap: u64) -> Result<Self> {
        let n = spec.degree();
        let size = check_space_cap(n, k, space_cap)?;
        let mut forest = OrbitForest { parent: (0..size as u32).collect() };
        let gens = generators(spec);
        if gens.is_empty() {
            return Ok(forest);
        }
        // Word position j carries weight k^(n-1-j): digit 0 is most significant.
        let weights: Vec<u64> = (0..n).map(|j| k.pow((n - 1 - j) as u32)).collect();
        let mut digits = vec![0u64; n];
        for idx in 0..size {
            let mut r = idx as u64;
            for j in (0..n).rev() {
                digits[j] = r % k;
                r /= k;
            }
            for g in &gens {
                let image: u64 = g.images.iter().zip(&weights).map(|(&src, &w)| digits[src] * w).sum();
                forest.union(idx as u32, image as u32);
            }
        }
        Ok(forest)
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// Number of orbits of `{0..k-1}^N` under the group, by scanning every word
/// and counting those that are the lexicographic minimum of their orbit.
pub fn count_orbits_bruteforce(spec: &ProductGroupSpec, k: u64, space_cap: u64) -> Result<u64> {
    let mut forest = OrbitForest::build(spec, k, space_cap)?;
    let size = forest.parent.len() as u32;
    Ok((0..size).filter(|&i| forest.find(i) == i).count() as u64)
}

/// All orbits of `{0..k-1}^N` as sorted lists of word indices, ordered by
/// their minimum (the canonical representative). Word index `i` encodes the
/// word in base `k` with position 0 most significant.
pub fn orbit_classes(spec: &ProductGroupSpec, k: u64, space_cap: u64) -> Result<Vec<Vec<u32>>> {
    let mut forest = OrbitForest::build(spec, k, space_cap)?;
    let size = forest.parent.len() as u32;
    let mut slot_of_root = vec![u32::MAX; size as usize];
    let mut classes: Vec<Vec<u32>> = Vec::new();
    for i in 0..size {
        let root = forest.find(i);
        if slot_of_root[root as usize] == u32::MAX {
            // Roots are minima, and i scans upward, so the root is seen first.
            slot_of_root[root as usize] = classes.len() as u32;
            classes.push(Vec::new());
        }
        classes[slot_of_root[root as usize] as usize].push(i);
    }
    Ok(classes)
}

/// The 0/1 unitary `U_α` on `N = α.len()` qubits.
pub fn qubit_permutation_matrix(p: &Permutation, matrix_cap: usize) -> Result<DenseOperator> {
    let n = p.len();
    let dim = check_matrix_cap(n, matrix_cap)?;
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for col in 0..dim {
        m[(permute_basis_index(p, col), col)] = Complex64::new(1.0, 0.0);
    }
    Ok(DenseOperator::from_matrix_unchecked(n, m))
}
