//! Canonical labeling of vertex-facet incidence structures.
//!
//! Colour refinement on the bipartite incidence graph, then individualize
//! each member of the first non-singleton cell in turn and keep the smallest
//! certificate over all discrete leaves. Sizes here are tiny (at most 64
//! vertices), so no automorphism pruning is attempted.

use alloc::vec;
use alloc::vec::Vec;

/// Isomorphism-invariant certificate: the incidence rows of the facets in
/// canonical order, each a bitmask over canonically ordered vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub num_vertices: usize,
    pub num_facets: usize,
    pub rows: Vec<u64>,
}

impl CanonicalForm {
    /// FNV-1a over the certificate; short label for unnamed types.
    pub fn hash64(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |x: u64| {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        };
        eat(self.num_vertices as u64);
        eat(self.num_facets as u64);
        for &r in &self.rows {
            eat(r);
        }
        h
    }
}

struct Graph {
    nv: usize,
    adj: Vec<Vec<usize>>,
}

fn refine(g: &Graph, colors: &mut Vec<usize>) {
    let mut classes = count_classes(colors);
    loop {
        let mut sigs: Vec<(usize, Vec<usize>, usize)> = (0..colors.len())
            .map(|x| {
                let mut nb: Vec<usize> = g.adj[x].iter().map(|&y| colors[y]).collect();
                nb.sort_unstable();
                (colors[x], nb, x)
            })
            .collect();
        sigs.sort();
        let mut next = vec![0; colors.len()];
        let mut c = 0;
        for k in 0..sigs.len() {
            if k > 0 && (sigs[k].0 != sigs[k - 1].0 || sigs[k].1 != sigs[k - 1].1) {
                c += 1;
            }
            next[sigs[k].2] = c;
        }
        *colors = next;
        let now = c + 1;
        if now == classes {
            return;
        }
        classes = now;
    }
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn certificate(g: &Graph, colors: &[usize]) -> Vec<u64> {
    let nf = colors.len() - g.nv;
    let mut rows = vec![0u64; nf];
    for f in g.nv..colors.len() {
        let mut r = 0u64;
        for &v in &g.adj[f] {
            r |= 1 << colors[v];
        }
        rows[colors[f] - g.nv] = r;
    }
    rows
}

fn search(g: &Graph, mut colors: Vec<usize>, best: &mut Option<Vec<u64>>) {
    refine(g, &mut colors);
    let n = colors.len();
    let mut size = vec![0usize; n];
    for &c in &colors {
        size[c] += 1;
    }
    let Some(target) = (0..n).find(|&c| size[c] > 1) else {
        let cert = certificate(g, &colors);
        if best.as_ref().is_none_or(|b| cert < *b) {
            *best = Some(cert);
        }
        return;
    };
    for x in 0..n {
        if colors[x] != target {
            continue;
        }
        // split x off in front of its cell; later colours shift by one
        let next: Vec<usize> = colors
            .iter()
            .enumerate()
            .map(|(y, &c)| if c > target || (c == target && y != x) { c + 1 } else { c })
            .collect();
        search(g, next, best);
    }
}

/// Canonical form of an incidence structure given as one vertex list per
/// facet.
///
/// # Panics
/// If there are more than 64 vertices.
pub fn canonical_form(num_vertices: usize, facets: &[Vec<usize>]) -> CanonicalForm {
    assert!(num_vertices <= 64, "canonical forms support at most 64 vertices");
    let nv = num_vertices;
    let mut adj = vec![Vec::new(); nv + facets.len()];
    for (k, f) in facets.iter().enumerate() {
        for &v in f {
            adj[nv + k].push(v);
            adj[v].push(nv + k);
        }
    }
    let g = Graph { nv, adj };
    let colors: Vec<usize> = (0..nv + facets.len()).map(|x| usize::from(x >= nv)).collect();
    let mut best = None;
    search(&g, colors, &mut best);
    let rows = best.unwrap_or_default();
    CanonicalForm { num_vertices, num_facets: facets.len(), rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn permutations(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in permutations(k - 1) {
            for pos in 0..k {
                let mut q = p.clone();
                q.insert(pos, k - 1);
                out.push(q);
            }
        }
        out
    }

    /// Isomorphic iff some facet permutation makes the vertex columns agree
    /// as multisets.
    fn brute_isomorphic(nv: usize, a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
        if a.len() != b.len() {
            return false;
        }
        let columns = |fs: &[Vec<usize>], perm: &[usize]| {
            let mut cols: Vec<Vec<usize>> = (0..nv)
                .map(|v| {
                    let mut c: Vec<usize> = (0..fs.len()).filter(|&k| fs[k].contains(&v)).map(|k| perm[k]).collect();
                    c.sort_unstable();
                    c
                })
                .collect();
            cols.sort();
            cols
        };
        let id: Vec<usize> = (0..a.len()).collect();
        let target = columns(b, &id);
        permutations(a.len()).iter().any(|p| columns(a, p) == target)
    }

    fn incidence() -> impl Strategy<Value = (usize, Vec<Vec<usize>>)> {
        (2usize..7).prop_flat_map(|nv| {
            (Just(nv), prop::collection::vec(prop::collection::btree_set(0..nv, 1..=nv), 1..6))
                .prop_map(|(nv, fs)| (nv, fs.into_iter().map(|s| s.into_iter().collect()).collect()))
        })
    }

    #[test]
    fn square_and_triangle_differ() {
        let square = canonical_form(4, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]);
        let square2 = canonical_form(4, &[vec![0, 2], vec![2, 1], vec![1, 3], vec![3, 0]]);
        let triangle = canonical_form(3, &[vec![0, 1], vec![1, 2], vec![2, 0]]);
        assert_eq!(square, square2);
        assert_ne!(square, triangle);
    }

    proptest! {
        #[test]
        fn relabeling_preserves_form(
            (nv, fs) in incidence(),
            seed in any::<u64>(),
        ) {
            // permute vertices and facets deterministically from the seed
            let mut vperm: Vec<usize> = (0..nv).collect();
            let mut s = seed;
            for k in (1..nv).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                vperm.swap(k, (s >> 33) as usize % (k + 1));
            }
            let mut g: Vec<Vec<usize>> = fs.iter().map(|f| f.iter().map(|&v| vperm[v]).collect()).collect();
            g.rotate_left((seed % fs.len() as u64) as usize);
            prop_assert_eq!(canonical_form(nv, &fs), canonical_form(nv, &g));
        }

        #[test]
        fn agrees_with_brute_force((nv, a) in incidence(), (_, b) in incidence()) {
            let b: Vec<Vec<usize>> = b.into_iter().map(|f| f.into_iter().filter(|&v| v < nv).collect()).collect();
            let same = canonical_form(nv, &a) == canonical_form(nv, &b);
            prop_assert_eq!(same, brute_isomorphic(nv, &a, &b));
        }
    }
}
