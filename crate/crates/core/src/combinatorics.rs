//! Cycle-index polynomials of the five named permutation-group families and
//! the dimension formulas built on top of them.
//!
//! Everything here is exact: coefficients are [`BigRational`]s and all
//! dimensions are [`BigUint`]s, so results stay correct far beyond the range
//! where the dense oracle can follow.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The permutation-group families acting on `size` symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupFamily {
    Symmetric,
    Alternating,
    Dihedral,
    Cyclic,
    Trivial,
}

impl GroupFamily {
    pub const ALL: [GroupFamily; 5] = [
        GroupFamily::Symmetric,
        GroupFamily::Alternating,
        GroupFamily::Dihedral,
        GroupFamily::Cyclic,
        GroupFamily::Trivial,
    ];

    pub fn letter(self) -> char {
        match self {
            GroupFamily::Symmetric => 'S',
            GroupFamily::Alternating => 'A',
            GroupFamily::Dihedral => 'D',
            GroupFamily::Cyclic => 'C',
            GroupFamily::Trivial => 'E',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'S' => Some(GroupFamily::Symmetric),
            'A' => Some(GroupFamily::Alternating),
            'D' => Some(GroupFamily::Dihedral),
            'C' => Some(GroupFamily::Cyclic),
            'E' => Some(GroupFamily::Trivial),
            _ => None,
        }
    }
}

/// A named permutation group acting on `size` symbols.
///
/// `D_1` and `D_2` are taken to be `S_1` and `S_2` (the symmetry groups of a
/// point and of a segment), and `A_1` is the trivial group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    family: GroupFamily,
    size: usize,
}

impl GroupSpec {
    pub fn new(family: GroupFamily, size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidGroupSpec(format!(
                "{}:0 acts on no symbols; size must be at least 1",
                family.letter()
            )));
        }
        Ok(GroupSpec { family, size })
    }

    pub fn symmetric(size: usize) -> Self {
        Self::new(GroupFamily::Symmetric, size).expect("size must be positive")
    }

    pub fn alternating(size: usize) -> Self {
        Self::new(GroupFamily::Alternating, size).expect("size must be positive")
    }

    pub fn dihedral(size: usize) -> Self {
        Self::new(GroupFamily::Dihedral, size).expect("size must be positive")
    }

    pub fn cyclic(size: usize) -> Self {
        Self::new(GroupFamily::Cyclic, size).expect("size must be positive")
    }

    pub fn trivial(size: usize) -> Self {
        Self::new(GroupFamily::Trivial, size).expect("size must be positive")
    }

    pub fn family(&self) -> GroupFamily {
        self.family
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of group elements.
    pub fn order(&self) -> BigUint {
        let n = self.size;
        match self.family {
            GroupFamily::Symmetric => factorial(n),
            GroupFamily::Alternating if n <= 1 => BigUint::one(),
            GroupFamily::Alternating => factorial(n) / 2u32,
            GroupFamily::Dihedral if n <= 2 => factorial(n),
            GroupFamily::Dihedral => BigUint::from(2 * n),
            GroupFamily::Cyclic => BigUint::from(n),
            GroupFamily::Trivial => BigUint::one(),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.family.letter(), self.size)
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Parses `FAMILY:SIZE`, e.g. `C:4`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (fam, size) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidGroupSpec(format!("expected FAMILY:SIZE, got `{s}`")))?;
        let mut chars = fam.trim().chars();
        let family = match (chars.next(), chars.next()) {
            (Some(c), None) => GroupFamily::from_letter(c),
            _ => None,
        }
        .ok_or_else(|| {
            Error::InvalidGroupSpec(format!("unknown family `{fam}` (expected one of S, A, D, C, E)"))
        })?;
        let size: usize = size
            .trim()
            .parse()
            .map_err(|_| Error::InvalidGroupSpec(format!("invalid size `{size}` in `{s}`")))?;
        GroupSpec::new(family, size)
    }
}

/// A direct product `G_1 x ... x G_k` where `G_i` permutes its own block of
/// `λ_i` consecutive symbols. Parts are kept with non-increasing sizes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProductGroupSpec {
    parts: Vec<GroupSpec>,
}

impl ProductGroupSpec {
    /// Builds a product from its parts. The parts are stably reordered so
    /// that their sizes are non-increasing; this only relabels symbols.
    pub fn new(mut parts: Vec<GroupSpec>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidGroupSpec("a product needs at least one factor".into()));
        }
        parts.sort_by(|a, b| b.size.cmp(&a.size));
        Ok(ProductGroupSpec { parts })
    }

    pub fn parts(&self) -> &[GroupSpec] {
        &self.parts
    }

    /// Total number of symbols `N = Σ λ_i`.
    pub fn degree(&self) -> usize {
        self.parts.iter().map(|p| p.size).sum()
    }

    pub fn order(&self) -> BigUint {
        self.parts.iter().map(GroupSpec::order).product()
    }

    /// Offset of the first symbol of each part.
    pub fn offsets(&self) -> Vec<usize> {
        self.parts
            .iter()
            .scan(0, |acc, p| {
                let start = *acc;
                *acc += p.size;
                Some(start)
            })
            .collect()
    }

    /// The product of a single group, if this is one.
    pub fn as_single(&self) -> Option<GroupSpec> {
        match self.parts.as_slice() {
            [one] => Some(*one),
            _ => None,
        }
    }
}

impl From<GroupSpec> for ProductGroupSpec {
    fn from(spec: GroupSpec) -> Self {
        ProductGroupSpec { parts: vec![spec] }
    }
}

impl fmt::Display for ProductGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for ProductGroupSpec {
    type Err = Error;

    /// Parses `S:3xE:2`-style products (a single `C:4` is a one-part product).
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(['x', 'X', '*'])
            .map(str::parse)
            .collect::<Result<Vec<GroupSpec>>>()?;
        ProductGroupSpec::new(parts)
    }
}

/// A cycle type: the multiset of cycle lengths of a permutation, stored in
/// non-increasing order. Stands for the monomial `Π a_len`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn new(mut lengths: Vec<usize>) -> Self {
        lengths.retain(|&l| l > 0);
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(lengths)
    }

    pub fn lengths(&self) -> &[usize] {
        &self.0
    }

    /// Number of cycles, i.e. the total degree of the monomial.
    pub fn cycle_count(&self) -> usize {
        self.0.len()
    }

    /// Sum of the cycle lengths.
    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    /// Sign of any permutation of this cycle type.
    pub fn is_even(&self) -> bool {
        self.0.iter().map(|l| l - 1).sum::<usize>() % 2 == 0
    }

    fn with_cycle(&self, len: usize) -> Self {
        let mut v = self.0.clone();
        v.push(len);
        CycleType::new(v)
    }

    fn repeated(len: usize, times: usize) -> Self {
        CycleType::new(vec![len; times])
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let len = self.0[i];
            let run = self.0[i..].iter().take_while(|&&l| l == len).count();
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if run == 1 {
                write!(f, "a{len}")?;
            } else {
                write!(f, "a{len}^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// A cycle-index polynomial `Z[G] = (1/|G|) Σ_g Π a_len` in exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleIndex {
    degree: usize,
    terms: BTreeMap<CycleType, BigRational>,
}

impl CycleIndex {
    fn from_terms(degree: usize, terms: BTreeMap<CycleType, BigRational>) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        CycleIndex { degree, terms }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<CycleType, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, cycle_type: &CycleType) -> BigRational {
        self.terms.get(cycle_type).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coefficient_sum(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |acc, c| acc + c)
    }

    /// Substitutes `a_len -> value(len)` and returns the exact rational.
    pub fn evaluate_with<F>(&self, mut value: F) -> BigRational
    where
        F: FnMut(usize) -> BigRational,
    {
        let mut total = BigRational::zero();
        for (ct, coef) in &self.terms {
            let mut term = coef.clone();
            for &len in ct.lengths() {
                term *= value(len);
            }
            total += term;
        }
        total
    }
}

impl fmt::Display for CycleIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (ct, coef)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{coef} {ct}")?;
        }
        Ok(())
    }
}

fn ratio(num: usize, den: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn add_term(terms: &mut BTreeMap<CycleType, BigRational>, ct: CycleType, coef: BigRational) {
    *terms.entry(ct).or_insert_with(BigRational::zero) += coef;
}

/// `Z[S_n]` for every `n <= max`, via `Z[S_n] = (1/n) Σ_l a_l Z[S_{n-l}]`.
fn symmetric_tower(max: usize) -> Vec<BTreeMap<CycleType, BigRational>> {
    let mut tower: Vec<BTreeMap<CycleType, BigRational>> = Vec::with_capacity(max + 1);
    tower.push(BTreeMap::from([(CycleType::new(vec![]), BigRational::one())]));
    for n in 1..=max {
        let mut terms = BTreeMap::new();
        let scale = ratio(1, n);
        for l in 1..=n {
            for (ct, coef) in &tower[n - l] {
                add_term(&mut terms, ct.with_cycle(l), coef * &scale);
            }
        }
        tower.push(terms);
    }
    tower
}

fn cyclic_terms(n: usize) -> BTreeMap<CycleType, BigRational> {
    let mut terms = BTreeMap::new();
    for d in divisors(n) {
        let phi = euler_totient(d as u64) as usize;
        add_term(&mut terms, CycleType::repeated(d, n / d), ratio(phi, n));
    }
    terms
}

/// Builds the cycle-index polynomial of a named group.
pub fn cycle_index(spec: &GroupSpec) -> CycleIndex {
    let n = spec.size;
    let terms = match spec.family {
        GroupFamily::Symmetric => symmetric_tower(n).pop().expect("tower has n+1 levels"),
        // A_1 has the single element id; the even/odd split below would count it twice.
        GroupFamily::Alternating if n == 1 => BTreeMap::from([(CycleType::new(vec![1]), BigRational::one())]),
        GroupFamily::Alternating => {
            // Z[S_n](a_i) + Z[S_n]((-1)^(i-1) a_i): odd classes cancel, even ones double.
            let two = BigRational::from_integer(BigInt::from(2));
            symmetric_tower(n)
                .pop()
                .expect("tower has n+1 levels")
                .into_iter()
                .filter(|(ct, _)| ct.is_even())
                .map(|(ct, c)| (ct, c * &two))
                .collect()
        }
        GroupFamily::Dihedral => {
            let half = ratio(1, 2);
            let mut terms: BTreeMap<_, _> =
                cyclic_terms(n).into_iter().map(|(ct, c)| (ct, c * &half)).collect();
            if n % 2 == 0 {
                let quarter = ratio(1, 4);
                let mut axis_through_vertices = vec![2; (n - 2) / 2];
                axis_through_vertices.extend([1, 1]);
                add_term(&mut terms, CycleType::new(axis_through_vertices), quarter.clone());
                add_term(&mut terms, CycleType::repeated(2, n / 2), quarter);
            } else {
                let mut axis = vec![2; (n - 1) / 2];
                axis.push(1);
                add_term(&mut terms, CycleType::new(axis), half);
            }
            terms
        }
        GroupFamily::Cyclic => cyclic_terms(n),
        GroupFamily::Trivial => BTreeMap::from([(CycleType::repeated(1, n), BigRational::one())]),
    };
    CycleIndex::from_terms(n, terms)
}

/// Evaluates `Z[G]` at `a_i = k` for all `i`. By Burnside's lemma this is the
/// number of orbits of `{0..k-1}^N`, so a non-integer result means the
/// polynomial is corrupt.
pub fn evaluate(ci: &CycleIndex, k: u64) -> Result<BigUint> {
    let k = BigRational::from_integer(BigInt::from(k));
    let value = ci.evaluate_with(|_| k.clone());
    if !value.is_integer() || value.is_negative() {
        return Err(Error::NonIntegralEvaluation { value: value.to_string() });
    }
    Ok(value.to_integer().to_biguint().expect("checked non-negative"))
}

fn minus_one(v: BigUint) -> BigUint {
    if v.is_zero() {
        v
    } else {
        v - 1u32
    }
}

/// `dim_R G su(2^N) = Z[G](k, ..., k) - 1`, with `k = 4` for qubits.
pub fn dim_invariant_algebra(spec: &GroupSpec, alphabet: u64) -> Result<BigUint> {
    evaluate(&cycle_index(spec), alphabet).map(minus_one)
}

/// Dimension for a product group: per-part evaluations multiplied together,
/// then the single global identity string removed.
pub fn dim_product(spec: &ProductGroupSpec) -> Result<BigUint> {
    dim_product_with_alphabet(spec, 4)
}

pub fn dim_product_with_alphabet(spec: &ProductGroupSpec, alphabet: u64) -> Result<BigUint> {
    let mut total = BigUint::one();
    for part in spec.parts() {
        total *= evaluate(&cycle_index(part), alphabet)?;
    }
    Ok(minus_one(total))
}

/// `C(N+3, N) - 1`: multisets of size `N` over the four Pauli letters.
pub fn dim_symmetric_closed_form(n: u64) -> BigUint {
    minus_one(binomial(BigUint::from(n + 3), BigUint::from(n)))
}

/// `C(2N, N) - 1`, the dimension of the energy-preserving subalgebra.
pub fn dim_energy_preserving(n: u64) -> BigUint {
    minus_one(binomial(BigUint::from(2 * n), BigUint::from(n)))
}

/// Number of integers in `[1, d]` coprime to `d`.
pub fn euler_totient(d: u64) -> u64 {
    assert!(d >= 1, "totient is defined for positive integers");
    let mut n = d;
    let mut result = d;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub(crate) fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Lossy conversion used by the ratio columns of the scaling report.
pub fn to_f64(v: &BigUint) -> f64 {
    v.to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn monomial(lengths: &[usize]) -> CycleType {
        CycleType::new(lengths.to_vec())
    }

    // Test-only orbit counter: explicit element lists written out by hand
    // (rotations and reflections as index maps), canonical form = lexicographic
    // minimum over the whole group. Independent of the cycle-index path.
    fn orbit_count_by_hand(elements: &[Vec<usize>], k: u64) -> u64 {
        let n = elements[0].len();
        let mut seen = HashSet::new();
        let total = k.pow(n as u32);
        for idx in 0..total {
            let mut word = vec![0u64; n];
            let mut r = idx;
            for j in (0..n).rev() {
                word[j] = r % k;
                r /= k;
            }
            let canon = elements
                .iter()
                .map(|g| g.iter().map(|&src| word[src]).collect::<Vec<_>>())
                .min()
                .unwrap();
            seen.insert(canon);
        }
        seen.len() as u64
    }

    fn dihedral_by_hand(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for r in 0..n {
            out.push((0..n).map(|j| (j + r) % n).collect());
            out.push((0..n).map(|j| (r + n - j) % n).collect());
        }
        out
    }

    #[test]
    fn cyclic_four_matches_worked_example() {
        let ci = cycle_index(&GroupSpec::cyclic(4));
        assert_eq!(ci.terms().len(), 3);
        assert_eq!(ci.coefficient(&monomial(&[1, 1, 1, 1])), ratio(1, 4));
        assert_eq!(ci.coefficient(&monomial(&[2, 2])), ratio(1, 4));
        assert_eq!(ci.coefficient(&monomial(&[4])), ratio(2, 4));
        assert_eq!(evaluate(&ci, 4).unwrap(), big(70));
        assert_eq!(dim_invariant_algebra(&GroupSpec::cyclic(4), 4).unwrap(), big(69));
    }

    #[test]
    fn trivial_group_is_a1_to_the_n() {
        for n in 1..8 {
            let ci = cycle_index(&GroupSpec::trivial(n));
            assert_eq!(ci.terms().len(), 1);
            assert_eq!(ci.coefficient(&CycleType::repeated(1, n)), BigRational::one());
            assert_eq!(evaluate(&ci, 4).unwrap(), big(4u64.pow(n as u32)));
            assert_eq!(dim_invariant_algebra(&GroupSpec::trivial(n), 4).unwrap(), big(4u64.pow(n as u32) - 1));
        }
    }

    #[test]
    fn alternating_three_equals_cyclic_three() {
        let a3 = cycle_index(&GroupSpec::alternating(3));
        assert_eq!(a3.coefficient(&monomial(&[1, 1, 1])), ratio(1, 3));
        assert_eq!(a3.coefficient(&monomial(&[3])), ratio(2, 3));
        assert_eq!(a3.terms().len(), 2);
        assert_eq!(a3.terms(), cycle_index(&GroupSpec::cyclic(3)).terms());
    }

    #[test]
    fn dihedral_three_counts_twenty() {
        let hand = orbit_count_by_hand(&dihedral_by_hand(3), 4);
        assert_eq!(hand, 20);
        assert_eq!(evaluate(&cycle_index(&GroupSpec::dihedral(3)), 4).unwrap(), big(hand));
    }

    #[test]
    fn dihedral_matches_hand_enumeration() {
        for n in 3..=7 {
            for k in 2..=4 {
                let hand = orbit_count_by_hand(&dihedral_by_hand(n), k);
                let ci = evaluate(&cycle_index(&GroupSpec::dihedral(n)), k).unwrap();
                assert_eq!(ci, big(hand), "D_{n}, k={k}");
            }
        }
    }

    #[test]
    fn degenerate_sizes() {
        // D_1 = S_1 = A_1 = C_1 = E_1, D_2 = S_2.
        for fam in GroupFamily::ALL {
            let ci = cycle_index(&GroupSpec::new(fam, 1).unwrap());
            assert_eq!(ci.terms().len(), 1, "{fam:?}");
            assert_eq!(evaluate(&ci, 4).unwrap(), big(4));
        }
        assert_eq!(cycle_index(&GroupSpec::dihedral(2)), cycle_index(&GroupSpec::symmetric(2)));
        assert_eq!(cycle_index(&GroupSpec::alternating(2)), cycle_index(&GroupSpec::trivial(2)));
        assert!(GroupSpec::new(GroupFamily::Cyclic, 0).is_err());
    }

    #[test]
    fn symmetric_two_is_nine() {
        assert_eq!(dim_invariant_algebra(&GroupSpec::symmetric(2), 4).unwrap(), big(9));
        assert_eq!(dim_symmetric_closed_form(2), big(9));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(dim_symmetric_closed_form(1), big(3));
        assert_eq!(dim_symmetric_closed_form(4), big(34));
        assert_eq!(dim_energy_preserving(1), big(1));
        assert_eq!(dim_energy_preserving(2), big(5));
        let by_sum: u64 = (0..=3u64).map(|i| binomial(3u64, i).pow(2)).sum::<u64>() - 1;
        assert_eq!(by_sum, 19);
        assert_eq!(dim_energy_preserving(3), big(by_sum));
    }

    #[test]
    fn totient_values() {
        assert_eq!(euler_totient(1), 1);
        assert_eq!(euler_totient(4), 2);
        assert_eq!(euler_totient(12), 4);
        for d in 1..200u64 {
            let brute = (1..=d).filter(|i| num_integer::gcd(*i, d) == 1).count() as u64;
            assert_eq!(euler_totient(d), brute, "phi({d})");
        }
    }

    #[test]
    fn coefficients_are_a_probability_distribution() {
        for fam in GroupFamily::ALL {
            for n in 1..=12 {
                let ci = cycle_index(&GroupSpec::new(fam, n).unwrap());
                assert_eq!(ci.coefficient_sum(), BigRational::one(), "{fam:?} {n}");
                assert!(ci.terms().values().all(|c| c.is_positive()));
                assert!(ci.terms().keys().all(|ct| ct.degree() == n));
                assert_eq!(evaluate(&ci, 1).unwrap(), big(1));
            }
        }
    }

    #[test]
    fn coefficients_times_order_are_class_sizes() {
        // |G| * coefficient counts the elements of that cycle type.
        for fam in GroupFamily::ALL {
            for n in 1..=9 {
                let spec = GroupSpec::new(fam, n).unwrap();
                let order = BigRational::from_integer(BigInt::from(spec.order()));
                for c in cycle_index(&spec).terms().values() {
                    assert!((c * &order).is_integer(), "{spec}");
                }
            }
        }
    }

    #[test]
    fn coarser_groups_fix_more() {
        for n in 3..=20 {
            let dim = |fam| dim_invariant_algebra(&GroupSpec::new(fam, n).unwrap(), 4).unwrap();
            assert!(dim(GroupFamily::Alternating) >= dim(GroupFamily::Symmetric));
            assert!(dim(GroupFamily::Cyclic) >= dim(GroupFamily::Dihedral));
        }
    }

    #[test]
    fn figure_one_ordering() {
        for n in 4..=14 {
            let dim = |fam| dim_invariant_algebra(&GroupSpec::new(fam, n).unwrap(), 4).unwrap();
            let unrestricted = big(4).pow(n as u32) - 1u32;
            assert!(unrestricted > dim(GroupFamily::Cyclic));
            assert!(dim(GroupFamily::Cyclic) >= dim(GroupFamily::Dihedral));
            assert!(dim(GroupFamily::Dihedral) > dim(GroupFamily::Alternating));
            assert!(dim(GroupFamily::Alternating) >= dim(GroupFamily::Symmetric));
        }
    }

    #[test]
    fn closed_form_equals_cycle_index_up_to_thirty() {
        for n in 1..=30u64 {
            let via_ci = dim_invariant_algebra(&GroupSpec::symmetric(n as usize), 4).unwrap();
            assert_eq!(via_ci, dim_symmetric_closed_form(n), "N={n}");
        }
    }

    #[test]
    fn products() {
        let s2 = GroupSpec::symmetric(2);
        for m in 1..=6u32 {
            let spec = ProductGroupSpec::new(vec![s2; m as usize]).unwrap();
            assert_eq!(dim_product(&spec).unwrap(), big(10).pow(m) - 1u32);
        }
        for m in 1..=10u64 {
            let spec = ProductGroupSpec::new(vec![GroupSpec::symmetric(m as usize); 2]).unwrap();
            let c = binomial(m + 3, 3);
            assert_eq!(dim_product(&spec).unwrap(), big(c * c - 1));
        }
        for n in 1..=9 {
            let single: ProductGroupSpec = GroupSpec::symmetric(n).into();
            assert_eq!(
                dim_product(&single).unwrap(),
                dim_invariant_algebra(&GroupSpec::symmetric(n), 4).unwrap()
            );
        }
        let all_trivial =
            ProductGroupSpec::new(vec![GroupSpec::trivial(3), GroupSpec::trivial(2), GroupSpec::trivial(1)]).unwrap();
        assert_eq!(dim_product(&all_trivial).unwrap(), big(4u64.pow(6) - 1));
    }

    #[test]
    fn parses_spec_grammar() {
        let p: ProductGroupSpec = "S:3xE:2".parse().unwrap();
        assert_eq!(p.degree(), 5);
        assert_eq!(p.to_string(), "S:3xE:2");
        let p: ProductGroupSpec = "E:2xS:3".parse().unwrap();
        assert_eq!(p.parts()[0], GroupSpec::symmetric(3));
        assert_eq!(p.offsets(), vec![0, 3]);
        assert!("Q:3".parse::<GroupSpec>().is_err());
        assert!("C4".parse::<GroupSpec>().is_err());
        assert!("C:0".parse::<GroupSpec>().is_err());
        assert!("C:x".parse::<ProductGroupSpec>().is_err());
    }

    #[test]
    fn non_integral_evaluation_is_rejected() {
        let mut terms = BTreeMap::new();
        terms.insert(CycleType::new(vec![1, 1]), ratio(1, 3));
        let bogus = CycleIndex::from_terms(2, terms);
        assert!(matches!(evaluate(&bogus, 2), Err(Error::NonIntegralEvaluation { .. })));
    }

    #[test]
    fn display_is_readable() {
        let ci = cycle_index(&GroupSpec::cyclic(4));
        let s = ci.to_string();
        assert!(s.contains("1/4 a1^4"), "{s}");
        assert!(s.contains("1/2 a4"), "{s}");
    }
}
