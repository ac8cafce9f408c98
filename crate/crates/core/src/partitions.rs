//! Partitions of the cover degree, the transposition-product criterion and
//! a counting oracle over the class algebra of the symmetric group.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{input, Error, Result};
use crate::scalar::Scalar;

pub const MAX_PARTITION_WEIGHT: u32 = 64;
pub const MAX_ORACLE_WEIGHT: u32 = 20;
pub const MAX_ORACLE_STEPS: u32 = 64;

/// A weakly decreasing tuple of positive integers.
///
/// `Ord` is reverse-lexicographic: `(4) < (3,1) < (2,2) < (2,1,1) < (1,1,1,1)`,
/// so sorting a list puts larger leading parts first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return input("a partition needs at least one part");
        }
        if parts.contains(&0) {
            return input(format!("partition parts must be positive: {parts:?}"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return input(format!("partition parts must be weakly decreasing: {parts:?}"));
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts before validating.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    /// The partition `(1^k)`.
    pub fn ones(k: u32) -> Self {
        Partition { parts: vec![1; k as usize] }
    }

    /// The partition `(2^a, 1^(k-2a))`.
    pub fn twos(a: u32, k: u32) -> Result<Self> {
        if 2 * a > k {
            return input(format!("(2^{a}) does not fit in weight {k}"));
        }
        let mut parts = vec![2; a as usize];
        parts.extend(std::iter::repeat_n(1, (k - 2 * a) as usize));
        Self::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn length(&self) -> u32 {
        self.parts.len() as u32
    }

    /// Number of parts equal to `value`.
    pub fn multiplicity(&self, value: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == value).count() as u32
    }

    pub fn is_all_ones(&self) -> bool {
        self.parts[0] == 1
    }

    /// `Some(a)` when the partition is `(2^a, 1^(k-2a))` with `a >= 1`.
    pub fn two_cycle_count(&self) -> Option<u32> {
        if self.parts[0] == 2 && self.parts.iter().all(|&p| p <= 2) {
            Some(self.multiplicity(2))
        } else {
            None
        }
    }

    /// Least common multiple of the parts, the ramification order of the
    /// branch map along the corresponding boundary divisor.
    pub fn lcm(&self) -> u64 {
        self.parts.iter().fold(1u64, |acc, &p| acc.lcm(&u64::from(p)))
    }

    /// The harmonic sum of reciprocals of the parts.
    pub fn harmonic_inverse<T: Scalar>(&self) -> T {
        self.parts
            .iter()
            .fold(T::zero(), |acc, &p| acc + T::from_ratio(1, i64::from(p)))
    }

    /// Multiset containment of `sub` in `self`.
    pub fn contains(&self, sub: &Partition) -> bool {
        let mut have = BTreeMap::new();
        for &p in &self.parts {
            *have.entry(p).or_insert(0u32) += 1;
        }
        sub.parts.iter().all(|p| match have.get_mut(p) {
            Some(n) if *n > 0 => {
                *n -= 1;
                true
            }
            _ => false,
        })
    }

    /// Size of the conjugacy class of this cycle type in `S_k`, `k!/z_mu`.
    pub fn class_size(&self) -> BigUint {
        let k = self.weight();
        let mut centralizer = BigUint::one();
        let mut counts = BTreeMap::new();
        for &p in &self.parts {
            *counts.entry(p).or_insert(0u32) += 1;
        }
        for (&part, &count) in &counts {
            centralizer *= BigUint::from(part).pow(count);
            centralizer *= factorial(count);
        }
        factorial(k) / centralizer
    }
}

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, j| acc * BigUint::from(j))
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (n, p) in self.parts.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Parses the comma-separated command-line form, e.g. `2,1,1`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad partition part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `k` in reverse-lexicographic order.
pub fn partitions_of(k: u32) -> Result<Vec<Partition>> {
    if k == 0 || k > MAX_PARTITION_WEIGHT {
        return input(format!("partition weight must lie in 1..={MAX_PARTITION_WEIGHT}, got {k}"));
    }
    let mut out = Vec::new();
    let mut current = vec![k];
    loop {
        out.push(Partition { parts: current.clone() });
        // Next partition in reverse-lex order: strip trailing ones, lower the
        // last part above one and refill greedily.
        let ones = current.iter().rev().take_while(|&&p| p == 1).count();
        if ones == current.len() {
            break;
        }
        current.truncate(current.len() - ones);
        let last = current.pop().expect("non-one part present");
        let mut rest = ones as u32 + last;
        let cap = last - 1;
        while rest > 0 {
            let take = rest.min(cap);
            current.push(take);
            rest -= take;
        }
    }
    Ok(out)
}

/// Whether a permutation of cycle type `mu` is a product of exactly `i`
/// transpositions: `i >= k - l(mu)` with matching parity. `S_1` has no
/// transpositions, so there only the empty product exists.
pub fn transposition_feasible(mu: &Partition, i: u32) -> bool {
    if mu.weight() == 1 {
        return i == 0;
    }
    let min = mu.weight() - mu.length();
    i >= min && (i - min) % 2 == 0
}

/// Counts of tuples indexed by the cycle type of their product.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CycleTypeVector {
    entries: BTreeMap<Partition, BigUint>,
}

impl CycleTypeVector {
    pub fn identity(k: u32) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(Partition::ones(k), BigUint::one());
        CycleTypeVector { entries }
    }

    pub fn get(&self, mu: &Partition) -> BigUint {
        self.entries.get(mu).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &BigUint)> {
        self.entries.iter()
    }

    pub fn total(&self) -> BigUint {
        self.entries.values().sum()
    }

    fn add(&mut self, mu: Partition, count: BigUint) {
        if count.is_zero() {
            return;
        }
        *self.entries.entry(mu).or_default() += count;
    }

    /// Right multiplication of every counted permutation by every transposition.
    pub fn step(&self) -> Self {
        let mut next = CycleTypeVector::default();
        for (mu, count) in &self.entries {
            for (target, ways) in transposition_moves(mu) {
                next.add(target, count * BigUint::from(ways));
            }
        }
        next
    }
}

/// For a permutation of type `mu`, the cycle types reachable by multiplying
/// with one transposition, with the number of transpositions leading there.
fn transposition_moves(mu: &Partition) -> Vec<(Partition, u64)> {
    let parts = mu.parts();
    let mut moves: BTreeMap<Partition, u64> = BTreeMap::new();
    let rebuild = |drop: &[usize], add: &[u32]| {
        let mut v: Vec<u32> = parts
            .iter()
            .enumerate()
            .filter(|(n, _)| !drop.contains(n))
            .map(|(_, &p)| p)
            .collect();
        v.extend_from_slice(add);
        Partition::from_unsorted(v).expect("cycle lengths stay positive")
    };
    for (x, &a) in parts.iter().enumerate() {
        // both points in one cycle of length a: split into (d, a-d)
        for d in 1..=a / 2 {
            let ways = if 2 * d == a { u64::from(a) / 2 } else { u64::from(a) };
            *moves.entry(rebuild(&[x], &[d, a - d])).or_default() += ways;
        }
        // points in two different cycles: join
        for (y, &b) in parts.iter().enumerate().skip(x + 1) {
            *moves.entry(rebuild(&[x, y], &[a + b])).or_default() += u64::from(a) * u64::from(b);
        }
    }
    moves.into_iter().collect()
}

/// Distribution over cycle types of all `i`-tuples of transpositions in `S_k`.
pub fn transposition_walk(k: u32, i: u32) -> Result<CycleTypeVector> {
    check_oracle_limits(k, i)?;
    let mut state = CycleTypeVector::identity(k);
    for _ in 0..i {
        state = state.step();
    }
    Ok(state)
}

fn check_oracle_limits(k: u32, i: u32) -> Result<()> {
    if k == 0 || k > MAX_ORACLE_WEIGHT {
        return Err(Error::Resource(format!(
            "counting oracle supports 1 <= k <= {MAX_ORACLE_WEIGHT}, got {k}"
        )));
    }
    if i > MAX_ORACLE_STEPS {
        return Err(Error::Resource(format!(
            "counting oracle supports i <= {MAX_ORACLE_STEPS}, got {i}"
        )));
    }
    Ok(())
}

/// Number of `i`-tuples of transpositions whose product is one fixed
/// permutation of cycle type `mu`.
pub fn count_transposition_factorizations(mu: &Partition, i: u32) -> Result<BigUint> {
    let walk = transposition_walk(mu.weight(), i)?;
    let (quotient, remainder) = walk.get(mu).div_rem(&mu.class_size());
    debug_assert!(remainder.is_zero(), "class counts are divisible by class sizes");
    Ok(quotient)
}

/// A boundary divisor label `E_{i:mu}`. With `prime` set it denotes the
/// sub-divisor `E'_{i:mu}` whose covers carry a degree-two component over
/// the base for each 2-cycle; only meaningful when `mu` has a part equal to 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryIndex {
    pub i: u32,
    pub mu: Partition,
    pub prime: bool,
}

impl BoundaryIndex {
    pub fn new(i: u32, mu: Partition) -> Self {
        BoundaryIndex { i, mu, prime: false }
    }

    pub fn primed(&self) -> Result<Self> {
        if self.mu.multiplicity(2) == 0 || self.i < 1 {
            return input(format!("E' component needs a 2-part in mu, got {}", self.mu));
        }
        Ok(BoundaryIndex { prime: true, ..self.clone() })
    }

    pub fn unprimed(&self) -> Self {
        BoundaryIndex { prime: false, ..self.clone() }
    }
}

impl fmt::Display for BoundaryIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tick = if self.prime { "'" } else { "" };
        write!(f, "E{tick}[{}:{}]", self.i, self.mu)
    }
}

/// Validates `(g, k)` for a Hurwitz space and returns `b = 2g + 2k - 2`.
pub fn branch_point_count(g: u32, k: u32) -> Result<u32> {
    if g < 2 || k < 3 {
        return input(format!("Hurwitz space needs g >= 2 and k >= 3, got g={g}, k={k}"));
    }
    if k > MAX_PARTITION_WEIGHT {
        return input(format!("degree k={k} exceeds {MAX_PARTITION_WEIGHT}"));
    }
    Ok(2 * g + 2 * k - 2)
}

/// All `(i, mu)` with `2 <= i <= b/2` such that both sides of the node
/// admit transposition products of type `mu`, sorted by `(i, mu)`.
pub fn boundary_index_set(g: u32, k: u32) -> Result<Vec<BoundaryIndex>> {
    let b = branch_point_count(g, k)?;
    let mus = partitions_of(k)?;
    let mut out = Vec::new();
    for i in 2..=b / 2 {
        for mu in &mus {
            if transposition_feasible(mu, i) && transposition_feasible(mu, b - i) {
                out.push(BoundaryIndex::new(i, mu.clone()));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn enumerates_small_weights() {
        assert_eq!(partitions_of(1).unwrap(), vec![p(&[1])]);
        let four = partitions_of(4).unwrap();
        assert_eq!(four, vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]);
        assert_eq!(partitions_of(6).unwrap().len(), 11);
        assert!(partitions_of(0).is_err());
        assert!(partitions_of(65).is_err());
    }

    #[test]
    fn enumeration_is_sorted() {
        let ten = partitions_of(10).unwrap();
        assert!(ten.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn lcm_and_harmonic() {
        assert_eq!(p(&[1, 1, 1]).lcm(), 1);
        assert_eq!(p(&[3, 2]).lcm(), 6);
        assert_eq!(p(&[2, 2, 1]).lcm(), 2);
        let h: crate::Rational = p(&[3, 2]).harmonic_inverse();
        assert_eq!(h, crate::Rational::from_ratio(5, 6));
        let h: crate::Rational = Partition::ones(7).harmonic_inverse();
        assert_eq!(h, crate::Rational::from_int(7));
        // (2^a, 1^(k-2a)) gives k - 3a/2
        let h: crate::Rational = Partition::twos(2, 5).unwrap().harmonic_inverse();
        assert_eq!(h, crate::Rational::from_int(2));
    }

    #[test]
    fn containment() {
        assert!(p(&[2, 2, 1]).contains(&p(&[2, 2])));
        assert!(!p(&[2, 1, 1]).contains(&p(&[2, 2])));
        assert!(p(&[4, 2, 1]).contains(&p(&[4, 1])));
    }

    #[test]
    fn rejects_malformed() {
        assert!(Partition::new(vec![]).is_err());
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!("2,x".parse::<Partition>().is_err());
        assert_eq!("2,1,1".parse::<Partition>().unwrap(), p(&[2, 1, 1]));
    }

    #[test]
    fn feasibility_examples() {
        assert!(transposition_feasible(&Partition::ones(5), 2));
        assert!(!transposition_feasible(&p(&[2, 1]), 2));
        let feasible: Vec<_> = partitions_of(4)
            .unwrap()
            .into_iter()
            .filter(|mu| transposition_feasible(mu, 2))
            .collect();
        assert_eq!(feasible, vec![p(&[3, 1]), p(&[2, 2]), p(&[1, 1, 1, 1])]);
    }

    #[test]
    fn counting_examples() {
        assert_eq!(count_transposition_factorizations(&Partition::ones(4), 0).unwrap(), BigUint::one());
        assert_eq!(count_transposition_factorizations(&p(&[3]), 2).unwrap(), BigUint::from(3u32));
        assert!(count_transposition_factorizations(&p(&[2, 1]), 2).unwrap().is_zero());
        assert!(matches!(
            count_transposition_factorizations(&Partition::ones(21), 1),
            Err(Error::Resource(_))
        ));
        assert!(matches!(
            count_transposition_factorizations(&Partition::ones(3), 65),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn class_sizes() {
        assert_eq!(p(&[3]).class_size(), BigUint::from(2u32));
        assert_eq!(p(&[2, 2]).class_size(), BigUint::from(3u32));
        assert_eq!(p(&[2, 1, 1]).class_size(), BigUint::from(6u32));
        let total: BigUint = partitions_of(6).unwrap().iter().map(|m| m.class_size()).sum();
        assert_eq!(total, BigUint::from(720u32));
    }

    #[test]
    fn boundary_indices_genus_two_trigonal() {
        let set = boundary_index_set(2, 3).unwrap();
        assert!(!set.contains(&BoundaryIndex::new(2, p(&[2, 1]))));
        assert!(set.contains(&BoundaryIndex::new(2, p(&[1, 1, 1]))));
        assert!(set.contains(&BoundaryIndex::new(2, p(&[3]))));
        assert_eq!(set.iter().map(|x| x.i).max(), Some(4));
        assert!(set.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn primed_requires_two_part() {
        assert!(BoundaryIndex::new(3, p(&[2, 1])).primed().is_ok());
        assert!(BoundaryIndex::new(2, p(&[3])).primed().is_err());
    }
}
