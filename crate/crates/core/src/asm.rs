//! Alternating sign matrices: validation, enumeration, counting and the
//! four partial-sum arrays.
//!
//! Coordinates in documentation and error messages are 1-based `(i, j)`;
//! storage and accessors are 0-based.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::Limits;

/// An `n x n` alternating sign matrix, stored row-major.
///
/// Ordering is lexicographic by rows (entries compared as integers), which
/// is also the order produced by [`enumerate_asms`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Asm {
    n: usize,
    entries: Vec<i8>,
}

impl Asm {
    /// Validates `rows` and builds the matrix.
    pub fn from_rows<T>(rows: &[Vec<T>]) -> Result<Asm>
    where
        T: Copy + Into<i64>,
    {
        let n = check_square(rows)?;
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            for &x in row {
                let x: i64 = x.into();
                if !(-1..=1).contains(&x) {
                    return Err(Error::Domain(format!(
                        "not an alternating sign matrix: entry {x} outside {{-1, 0, 1}}"
                    )));
                }
                entries.push(x as i8);
            }
        }
        let asm = Asm { n, entries };
        match asm.violation() {
            None => Ok(asm),
            Some(why) => Err(Error::Domain(format!("not an alternating sign matrix: {why}"))),
        }
    }

    /// Builds from row-major entries without checking the ASM invariants.
    pub(crate) fn from_entries_unchecked(n: usize, entries: Vec<i8>) -> Asm {
        debug_assert_eq!(entries.len(), n * n);
        Asm { n, entries }
    }

    pub fn identity(n: usize) -> Asm {
        Asm::permutation(&(0..n).collect::<Vec<_>>()).expect("identity is a permutation")
    }

    /// Permutation matrix with a 1 at `(i, perm[i])` (0-based).
    pub fn permutation(perm: &[usize]) -> Result<Asm> {
        let n = perm.len();
        let mut seen = vec![false; n];
        let mut entries = vec![0i8; n * n];
        for (i, &p) in perm.iter().enumerate() {
            if p >= n || seen[p] {
                return Err(Error::Structure(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
            entries[i * n + p] = 1;
        }
        Ok(Asm { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 0-based `(i, j)`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i8]> + '_ {
        self.entries.chunks(self.n.max(1))
    }

    pub fn to_rows(&self) -> Vec<Vec<i8>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    pub fn is_permutation(&self) -> bool {
        self.entries.iter().all(|&x| x >= 0)
    }

    /// Image under a symmetry of the square; ASMs are closed under all eight.
    pub fn transform(&self, sym: Symmetry) -> Asm {
        let n = self.n;
        let mut entries = vec![0i8; n * n];
        for i in 0..n {
            for j in 0..n {
                let (a, b) = sym.apply(n, i, j);
                entries[a * n + b] = self.get(i, j);
            }
        }
        Asm { n, entries }
    }

    /// First violated invariant, as a human-readable message.
    fn violation(&self) -> Option<String> {
        let n = self.n;
        for i in 0..n {
            if let Some(why) = line_violation((0..n).map(|j| self.get(i, j))) {
                return Some(format!("row {}: {why}", i + 1));
            }
        }
        for j in 0..n {
            if let Some(why) = line_violation((0..n).map(|i| self.get(i, j))) {
                return Some(format!("column {}: {why}", j + 1));
            }
        }
        None
    }
}

impl fmt::Debug for Asm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl fmt::Display for Asm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.rows().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            for (c, x) in row.iter().enumerate() {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x:>2}")?;
            }
        }
        Ok(())
    }
}

// Prefix sums of a row or column must stay in {0, 1} and end at 1.
fn line_violation(line: impl Iterator<Item = i8>) -> Option<String> {
    let mut sum = 0i64;
    for x in line {
        sum += i64::from(x);
        if !(0..=1).contains(&sum) {
            return Some(String::from("nonzero entries do not alternate starting with +1"));
        }
    }
    if sum != 1 {
        return Some(format!("sums to {sum}, not 1"));
    }
    None
}

fn check_square<T>(rows: &[Vec<T>]) -> Result<usize> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::Structure("empty matrix".into()));
    }
    if let Some((k, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(Error::Structure(format!(
            "matrix is not square: row {} has {} entries, expected {n}",
            k + 1,
            r.len()
        )));
    }
    Ok(n)
}

/// True iff `m` is an alternating sign matrix.
///
/// Non-square or empty input is a structural error rather than `false`.
pub fn validate_asm<T>(m: &[Vec<T>]) -> Result<bool>
where
    T: Copy + Into<i64>,
{
    check_square(m)?;
    match Asm::from_rows(m) {
        Ok(_) => Ok(true),
        Err(Error::Domain(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// All `n x n` ASMs in lexicographic row order, guarded by the default
/// enumeration limit.
pub fn enumerate_asms(n: usize) -> Result<Vec<Asm>> {
    enumerate_asms_limited(n, Limits::default().max_enumeration_n)
}

/// Row-by-row depth-first search over column prefix-sum vectors.
///
/// The state after row `i` is the bitmask of columns whose prefix sum
/// `N[i][j]` is 1. A row is admissible from state `p` when every new column
/// prefix stays in {0, 1} and its own prefix sums stay in {0, 1} ending at 1.
pub fn enumerate_asms_limited(n: usize, max_n: usize) -> Result<Vec<Asm>> {
    if n == 0 {
        return Err(Error::Structure("order must be at least 1".into()));
    }
    if n > max_n {
        return Err(Error::ResourceGuard { what: "n", value: n, limit: max_n });
    }
    if n > 16 {
        return Err(Error::ResourceGuard { what: "n", value: n, limit: 16 });
    }
    let transitions = RowTransitions::new(n);
    let mut out = Vec::new();
    let mut entries = Vec::with_capacity(n * n);
    let full = (1u32 << n) - 1;
    fn go(
        t: &RowTransitions,
        n: usize,
        row: usize,
        state: u32,
        full: u32,
        entries: &mut Vec<i8>,
        out: &mut Vec<Asm>,
    ) {
        if row == n {
            if state == full {
                out.push(Asm::from_entries_unchecked(n, entries.clone()));
            }
            return;
        }
        // Each remaining row adds exactly one to the number of ones.
        if (state.count_ones() as usize) != row {
            return;
        }
        for (entries_row, next) in &t.rows[state as usize] {
            entries.extend_from_slice(entries_row);
            go(t, n, row + 1, *next, full, entries, out);
            entries.truncate(entries.len() - n);
        }
    }
    go(&transitions, n, 0, 0, full, &mut entries, &mut out);
    Ok(out)
}

/// Admissible rows from each column-prefix state, in lexicographic order.
struct RowTransitions {
    rows: Vec<Vec<(Vec<i8>, u32)>>,
}

impl RowTransitions {
    fn new(n: usize) -> Self {
        let mut rows = Vec::with_capacity(1 << n);
        for p in 0..(1u32 << n) {
            let mut acc = Vec::new();
            let mut cur = Vec::with_capacity(n);
            Self::extend(n, p, 0, 0, 0, &mut cur, &mut acc);
            rows.push(acc);
        }
        RowTransitions { rows }
    }

    fn extend(
        n: usize,
        p: u32,
        col: usize,
        w: i8,
        next: u32,
        cur: &mut Vec<i8>,
        acc: &mut Vec<(Vec<i8>, u32)>,
    ) {
        if col == n {
            if w == 1 {
                acc.push((cur.clone(), next));
            }
            return;
        }
        let above = ((p >> col) & 1) as i8;
        for a in [-1i8, 0, 1] {
            let q = above + a;
            let w2 = w + a;
            if !(0..=1).contains(&q) || !(0..=1).contains(&w2) {
                continue;
            }
            cur.push(a);
            Self::extend(n, p, col + 1, w2, next | ((q as u32) << col), cur, acc);
            cur.pop();
        }
    }
}

/// `prod_{j=0}^{n-1} (3j+1)! / (n+j)!` in exact integer arithmetic.
pub fn count_asms(n: usize) -> BigUint {
    // Multiply all numerator factors and all denominator factors, then divide
    // once; the quotient is exact.
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for j in 0..n {
        num *= factorial(3 * j + 1);
        den *= factorial(n + j);
    }
    num / den
}

fn factorial(k: usize) -> BigUint {
    (2..=k as u64).fold(BigUint::one(), |acc, x| acc * x)
}

/// The four partial-sum arrays of an ASM, each in {0, 1}.
///
/// `north[i][j]` sums column `j` from the top through row `i`, `south` from
/// row `i` to the bottom, `west` sums row `i` from the left through column
/// `j`, `east` from column `j` to the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialSums {
    n: usize,
    north: Vec<u8>,
    south: Vec<u8>,
    east: Vec<u8>,
    west: Vec<u8>,
}

impl PartialSums {
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn north(&self, i: usize, j: usize) -> u8 {
        self.north[i * self.n + j]
    }
    pub fn south(&self, i: usize, j: usize) -> u8 {
        self.south[i * self.n + j]
    }
    pub fn east(&self, i: usize, j: usize) -> u8 {
        self.east[i * self.n + j]
    }
    pub fn west(&self, i: usize, j: usize) -> u8 {
        self.west[i * self.n + j]
    }
}

pub fn partial_sums(a: &Asm) -> PartialSums {
    let n = a.n();
    let mut north = vec![0u8; n * n];
    let mut south = vec![0u8; n * n];
    let mut east = vec![0u8; n * n];
    let mut west = vec![0u8; n * n];
    for j in 0..n {
        let mut s = 0i8;
        for i in 0..n {
            s += a.get(i, j);
            north[i * n + j] = s as u8;
        }
        s = 0;
        for i in (0..n).rev() {
            s += a.get(i, j);
            south[i * n + j] = s as u8;
        }
    }
    for i in 0..n {
        let mut s = 0i8;
        for j in 0..n {
            s += a.get(i, j);
            west[i * n + j] = s as u8;
        }
        s = 0;
        for j in (0..n).rev() {
            s += a.get(i, j);
            east[i * n + j] = s as u8;
        }
    }
    PartialSums { n, north, south, east, west }
}

/// The eight symmetries of the square grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Identity,
    Rotate90,
    Rotate180,
    Rotate270,
    /// Reverse the column order.
    FlipColumns,
    /// Reverse the row order.
    FlipRows,
    Transpose,
    AntiTranspose,
}

impl Symmetry {
    pub const ALL: [Symmetry; 8] = [
        Symmetry::Identity,
        Symmetry::Rotate90,
        Symmetry::Rotate180,
        Symmetry::Rotate270,
        Symmetry::FlipColumns,
        Symmetry::FlipRows,
        Symmetry::Transpose,
        Symmetry::AntiTranspose,
    ];

    /// Where 0-based cell `(i, j)` goes.
    pub fn apply(self, n: usize, i: usize, j: usize) -> (usize, usize) {
        let m = n - 1;
        match self {
            Symmetry::Identity => (i, j),
            Symmetry::Rotate90 => (j, m - i),
            Symmetry::Rotate180 => (m - i, m - j),
            Symmetry::Rotate270 => (m - j, i),
            Symmetry::FlipColumns => (i, m - j),
            Symmetry::FlipRows => (m - i, j),
            Symmetry::Transpose => (j, i),
            Symmetry::AntiTranspose => (m - j, m - i),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn d3() -> Asm {
        Asm::from_rows(&[vec![0i64, 1, 0], vec![1, -1, 1], vec![0, 1, 0]]).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(validate_asm(&[vec![0i64, 1, 0], vec![1, -1, 1], vec![0, 1, 0]]).unwrap());
        assert!(validate_asm(&Asm::identity(3).to_rows()).unwrap());
        assert!(!validate_asm(&[vec![1i64, 1], vec![0, 0]]).unwrap());
        assert!(!validate_asm(&[vec![-1i64, 1, 1], vec![1, 0, 0], vec![1, 0, 0]]).unwrap());
        assert!(!validate_asm(&[vec![2i64]]).unwrap());
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(
            validate_asm(&[vec![1i64, 0], vec![0]]),
            Err(Error::Structure(_))
        ));
        let empty: [Vec<i64>; 0] = [];
        assert!(matches!(validate_asm(&empty), Err(Error::Structure(_))));
        assert!(matches!(enumerate_asms(0), Err(Error::Structure(_))));
    }

    #[test]
    fn enumeration_guard() {
        assert!(matches!(
            enumerate_asms(8),
            Err(Error::ResourceGuard { value: 8, limit: 7, .. })
        ));
        assert_eq!(enumerate_asms_limited(2, 2).unwrap().len(), 2);
    }

    #[test]
    fn small_enumerations() {
        let one = enumerate_asms(1).unwrap();
        assert_eq!(one, vec![Asm::identity(1)]);
        let three = enumerate_asms(3).unwrap();
        assert_eq!(three.len(), 7);
        assert_eq!(three.iter().filter(|a| a.is_permutation()).count(), 6);
        assert!(three.contains(&d3()));
        assert!(three.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn counts() {
        let expect = [1u32, 2, 7, 42, 429, 7436, 218348, 10850216];
        for (k, &c) in expect.iter().enumerate() {
            assert_eq!(count_asms(k + 1), BigUint::from(c));
        }
    }

    #[test]
    fn partial_sums_examples() {
        let ps = partial_sums(&d3());
        assert_eq!((ps.north(1, 1), ps.south(1, 1)), (0, 0));
        assert_eq!((ps.east(1, 1), ps.west(1, 1)), (0, 0));
        assert_eq!(ps.north(0, 1), 1);
        let id = partial_sums(&Asm::identity(3));
        assert_eq!(
            (id.north(0, 0), id.south(0, 0), id.east(0, 0), id.west(0, 0)),
            (1, 1, 1, 1)
        );
    }

    #[test]
    fn symmetries_preserve_asms() {
        for a in enumerate_asms(4).unwrap() {
            for s in Symmetry::ALL {
                let b = a.transform(s);
                assert!(validate_asm(&b.to_rows()).unwrap(), "{s:?}");
            }
        }
    }
}
