//! Exact integer linear algebra for small dense matrices.

use alloc::vec::Vec;

use num_rational::Ratio;
use num_traits::{One, Zero};

/// Rank by fraction-free (Bareiss) elimination in checked `i128`.
///
/// # Panics
/// On `i128` overflow, which needs entries far beyond anything a grid
/// of order below 64 produces.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let Some(width) = rows.first().map(|r| r.len()) else { return 0 };
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut prev: i128 = 1;
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..m.len()).find(|&k| m[k][c] != 0) else { continue };
        m.swap(r, p);
        for k in r + 1..m.len() {
            for j in c + 1..width {
                let v = m[r][c]
                    .checked_mul(m[k][j])
                    .and_then(|a| m[k][c].checked_mul(m[r][j]).and_then(|b| a.checked_sub(b)))
                    .expect("overflow in exact rank");
                m[k][j] = v / prev;
            }
            m[k][c] = 0;
        }
        prev = m[r][c];
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Coefficients `x` with `sum x[k] * basis[k] == target`, if any. The basis
/// must be linearly independent.
pub fn solve_in_span(basis: &[Vec<i64>], target: &[i64]) -> Option<Vec<Ratio<i128>>> {
    let k = basis.len();
    let width = target.len();
    // augmented system: one row per coordinate, columns = basis vectors + target
    let mut m: Vec<Vec<Ratio<i128>>> = (0..width)
        .map(|j| {
            let mut row: Vec<Ratio<i128>> = basis.iter().map(|b| Ratio::from_integer(b[j] as i128)).collect();
            row.push(Ratio::from_integer(target[j] as i128));
            row
        })
        .collect();
    let mut pivots = Vec::with_capacity(k);
    let mut r = 0;
    for c in 0..k {
        let p = (r..width).find(|&i| !m[i][c].is_zero())?;
        m.swap(r, p);
        let inv = Ratio::one() / m[r][c];
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..width {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in 0..=k {
                    let t = m[r][j] * f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(r);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&p| m[p][k]).collect())
}

/// True iff `target` is an integer combination of the independent `basis`.
pub fn in_integer_span(basis: &[Vec<i64>], target: &[i64]) -> bool {
    solve_in_span(basis, target).is_some_and(|x| x.iter().all(|c| c.is_integer()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn rational_rank(rows: &[Vec<i64>]) -> usize {
        let mut m: Vec<Vec<Ratio<i128>>> =
            rows.iter().map(|r| r.iter().map(|&x| Ratio::from_integer(x as i128)).collect()).collect();
        let width = m.first().map_or(0, |r| r.len());
        let mut r = 0;
        for c in 0..width {
            if let Some(p) = (r..m.len()).find(|&k| !m[k][c].is_zero()) {
                m.swap(r, p);
                for k in r + 1..m.len() {
                    let f = m[k][c] / m[r][c];
                    for j in c..width {
                        let t = m[r][j] * f;
                        m[k][j] -= t;
                    }
                }
                r += 1;
            }
        }
        r
    }

    #[test]
    fn known_ranks() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[vec![0, 0]]), 0);
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]), 3);
    }

    #[test]
    fn span_membership() {
        let basis = vec![vec![2, 0], vec![0, 1]];
        assert!(in_integer_span(&basis, &[4, -3]));
        assert!(!in_integer_span(&basis, &[1, 0]));
        assert!(solve_in_span(&[vec![1, 0, 0]], &[0, 1, 0]).is_none());
    }

    proptest! {
        #[test]
        fn bareiss_matches_rational_elimination(
            rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 6), 0..7)
        ) {
            prop_assert_eq!(rank(&rows), rational_rank(&rows));
        }
    }
}
