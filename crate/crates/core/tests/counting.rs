use std::collections::HashMap;

use asmgrid_core::{count_asms, enumerate_asms, partial_sums, Asm};
use num_bigint::BigUint;

/// Row-by-row DP over the set of columns whose running sum is 1.
fn count_by_transfer(n: usize) -> u128 {
    fn rows(n: usize, state: u32, j: usize, run: i8, next: u32, out: &mut Vec<u32>) {
        if j == n {
            if run == 1 {
                out.push(next);
            }
            return;
        }
        let open = state >> j & 1 == 1;
        rows(n, state, j + 1, run, next, out);
        if !open && run == 0 {
            rows(n, state, j + 1, 1, next | 1 << j, out);
        }
        if open && run == 1 {
            rows(n, state, j + 1, 0, next & !(1 << j), out);
        }
    }
    let mut layer: HashMap<u32, u128> = HashMap::from([(0, 1)]);
    for _ in 0..n {
        let mut step = HashMap::new();
        for (&s, &c) in &layer {
            let mut out = Vec::new();
            rows(n, s, 0, 0, s, &mut out);
            for t in out {
                *step.entry(t).or_insert(0) += c;
            }
        }
        layer = step;
    }
    layer.get(&((1u32 << n) - 1)).copied().unwrap_or(0)
}

fn product_formula(n: usize) -> BigUint {
    let fact = |m: usize| (1..=m).fold(BigUint::from(1u8), |a, k| a * BigUint::from(k));
    let (mut num, mut den) = (BigUint::from(1u8), BigUint::from(1u8));
    for k in 0..n {
        num *= fact(3 * k + 1);
        den *= fact(n + k);
    }
    num / den
}

#[test]
fn counts_match_transfer_matrix_and_product_formula() {
    for n in 1..=10 {
        let c = count_asms(n);
        assert_eq!(c, product_formula(n), "n = {n}");
        assert_eq!(c, BigUint::from(count_by_transfer(n)), "n = {n}");
    }
    assert_eq!(count_asms(7), BigUint::from(218_348u32));
}

#[test]
fn enumeration_sizes_match_counts() {
    for n in 1..=6 {
        assert_eq!(BigUint::from(enumerate_asms(n).unwrap().len()), count_asms(n));
    }
}

#[test]
fn partial_sums_agree_with_direct_sums() {
    for a in enumerate_asms(5).unwrap() {
        let ps = partial_sums(&a);
        for i in 0..5 {
            for j in 0..5 {
                let west: i8 = (0..=j).map(|k| a.get(i, k)).sum();
                let east: i8 = (j..5).map(|k| a.get(i, k)).sum();
                let north: i8 = (0..=i).map(|k| a.get(k, j)).sum();
                let south: i8 = (i..5).map(|k| a.get(k, j)).sum();
                assert_eq!(ps.west(i, j) as i8, west);
                assert_eq!(ps.east(i, j) as i8, east);
                assert_eq!(ps.north(i, j) as i8, north);
                assert_eq!(ps.south(i, j) as i8, south);
                assert_eq!(west + east - a.get(i, j), 1);
                assert_eq!(north + south - a.get(i, j), 1);
            }
        }
    }
}

#[test]
fn permutation_matrices_are_asms() {
    let all = enumerate_asms(4).unwrap();
    let perms: Vec<&Asm> = all.iter().filter(|a| a.is_permutation()).collect();
    assert_eq!(perms.len(), 24);
    for p in &perms {
        assert!(p.entries().iter().all(|&x| x >= 0));
    }
}
