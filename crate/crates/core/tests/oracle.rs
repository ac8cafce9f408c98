//! Cross-checks of the cycle-type walk against a walk on actual permutations.

use std::collections::HashMap;

use hurwitz_core::partitions::{
    count_transposition_factorizations, partitions_of, transposition_feasible, transposition_walk,
};
use hurwitz_core::Partition;
use num_bigint::BigUint;

type Perm = Vec<u8>;

fn cycle_type(p: &Perm) -> Partition {
    let mut seen = vec![false; p.len()];
    let mut parts = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        parts.push(len);
    }
    Partition::from_unsorted(parts).unwrap()
}

fn transpositions(k: usize) -> Vec<(usize, usize)> {
    (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect()
}

/// Number of `i`-tuples of transpositions with product `p`, for every `p`.
fn permutation_walk(k: usize, i: u32) -> HashMap<Perm, u64> {
    let mut state: HashMap<Perm, u64> = HashMap::new();
    state.insert((0..k as u8).collect(), 1);
    let ts = transpositions(k);
    for _ in 0..i {
        let mut next = HashMap::new();
        for (p, c) in &state {
            for &(a, b) in &ts {
                let mut q = p.clone();
                q.swap(a, b);
                *next.entry(q).or_insert(0) += c;
            }
        }
        state = next;
    }
    state
}

fn representative(mu: &Partition) -> Perm {
    let mut p = Vec::new();
    let mut start = 0u8;
    for &len in mu.parts() {
        let len = len as u8;
        for j in 0..len {
            p.push(start + (j + 1) % len);
        }
        start += len;
    }
    p
}

#[test]
fn counts_match_permutation_walk() {
    for k in 1..=5usize {
        for i in 0..=6 {
            let walk = permutation_walk(k, i);
            for mu in partitions_of(k as u32).unwrap() {
                let rep = representative(&mu);
                assert_eq!(cycle_type(&rep), mu);
                let naive = walk.get(&rep).copied().unwrap_or(0);
                let dp = count_transposition_factorizations(&mu, i).unwrap();
                assert_eq!(dp, BigUint::from(naive), "k={k} mu={mu} i={i}");
            }
        }
    }
}

#[test]
fn counts_are_class_functions() {
    for k in 3..=4usize {
        let walk = permutation_walk(k, 4);
        let mut per_type: HashMap<Partition, u64> = HashMap::new();
        for (p, c) in &walk {
            let t = cycle_type(p);
            if let Some(prev) = per_type.insert(t.clone(), *c) {
                assert_eq!(prev, *c, "count not constant on class {t}");
            }
        }
    }
}

/// Feasibility by brute force on `S_4`: does any product of `i` transpositions have type `mu`?
#[test]
fn feasibility_brute_force_s4() {
    for i in 0..=8 {
        let walk = permutation_walk(4, i);
        for mu in partitions_of(4).unwrap() {
            let reached = walk.keys().any(|p| cycle_type(p) == mu);
            assert_eq!(reached, transposition_feasible(&mu, i), "mu={mu} i={i}");
        }
    }
}

fn pentagonal_partition_count(n: usize) -> Vec<u64> {
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut total = 0i64;
        for j in 1.. {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if j % 2 == 1 { 1 } else { -1 };
            total += sign * p[m - g1];
            let g2 = j * (3 * j + 1) / 2;
            if g2 <= m {
                total += sign * p[m - g2];
            }
        }
        p[m] = total;
    }
    p.into_iter().map(|x| x as u64).collect()
}

#[test]
fn partition_counts() {
    let expected = pentagonal_partition_count(30);
    for k in 1..=30u32 {
        let all = partitions_of(k).unwrap();
        assert_eq!(all.len() as u64, expected[k as usize], "p({k})");
        assert!(all.windows(2).all(|w| w[0] < w[1]), "order for k={k}");
        assert!(all.iter().all(|mu| mu.weight() == k));
    }
}

#[test]
fn class_sizes_sum_to_factorial() {
    for k in 1..=12u32 {
        let total: BigUint = partitions_of(k).unwrap().iter().map(|m| m.class_size()).sum();
        let fact: BigUint = (1..=k).map(BigUint::from).product();
        assert_eq!(total, fact);
    }
}

#[test]
fn feasibility_matches_counts_and_totals() {
    for k in 1..=6u32 {
        for i in 0..=12u32 {
            let walk = transposition_walk(k, i).unwrap();
            let transp = BigUint::from(k * (k - 1) / 2);
            assert_eq!(walk.total(), transp.pow(i), "k={k} i={i}");
            let mut weighted = BigUint::from(0u32);
            for mu in partitions_of(k).unwrap() {
                let n = count_transposition_factorizations(&mu, i).unwrap();
                assert_eq!(n > BigUint::from(0u32), transposition_feasible(&mu, i), "k={k} mu={mu} i={i}");
                weighted += n * mu.class_size();
            }
            assert_eq!(weighted, transp.pow(i));
        }
    }
}

#[test]
fn oracle_limits() {
    assert!(count_transposition_factorizations(&Partition::ones(21), 2).is_err());
    assert!(transposition_walk(4, 65).is_err());
}
