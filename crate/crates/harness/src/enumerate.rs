//! Labelled triangle-free graphs on a fixed vertex set.

use rainbow_forge::Graph;

trait EdgeSink: FnMut(&[(usize, usize)]) {}
impl<F: FnMut(&[(usize, usize)])> EdgeSink for F {}

/// Calls `f` with the edge list of every labelled triangle-free graph on `n`
/// vertices. Pairs are decided in lexicographic order and a pair is only
/// added if its endpoints have no common neighbour yet.
pub fn for_each_triangle_free(n: usize, mut f: impl FnMut(&[(usize, usize)])) {
    assert!(n <= 16, "labelled enumeration is limited to 16 vertices");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut rows = vec![0u16; n];
    let mut edges = Vec::new();
    fn rec(
        i: usize,
        pairs: &[(usize, usize)],
        rows: &mut [u16],
        edges: &mut Vec<(usize, usize)>,
        f: &mut dyn EdgeSink,
    ) {
        if i == pairs.len() {
            f(edges);
            return;
        }
        rec(i + 1, pairs, rows, edges, f);
        let (u, v) = pairs[i];
        if rows[u] & rows[v] == 0 {
            rows[u] |= 1 << v;
            rows[v] |= 1 << u;
            edges.push((u, v));
            rec(i + 1, pairs, rows, edges, f);
            edges.pop();
            rows[u] &= !(1 << v);
            rows[v] &= !(1 << u);
        }
    }
    rec(0, &pairs, &mut rows, &mut edges, &mut f);
}

/// Every labelled triangle-free graph on `n` vertices.
pub fn triangle_free_graphs(n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for_each_triangle_free(n, |edges| {
        out.push(Graph::new(n, edges.iter().copied()).expect("simple"))
    });
    out
}

/// Independent count: every subset of the pairs, tested by scanning all
/// vertex triples.
pub fn count_triangle_free_by_subsets(n: usize) -> u64 {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    assert!(pairs.len() < 32, "subset count is limited to 7 vertices");
    let index = |u: usize, v: usize| pairs.iter().position(|&p| p == (u, v)).unwrap();
    let mut triangles = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                triangles.push((1u32 << index(a, b)) | (1 << index(a, c)) | (1 << index(b, c)));
            }
        }
    }
    (0u32..1 << pairs.len())
        .filter(|&s| triangles.iter().all(|&t| s & t != t))
        .count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| triangle_free_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 7, 41, 388]);
        for n in 1..=5 {
            assert_eq!(count_triangle_free_by_subsets(n), counts[n - 1] as u64);
        }
    }

    #[test]
    fn enumerated_graphs_are_triangle_free_and_distinct() {
        let gs = triangle_free_graphs(5);
        assert!(gs.iter().all(|g| g.is_kr_free(3)));
        let distinct: std::collections::BTreeSet<Vec<(usize, usize)>> =
            gs.iter().map(|g| g.edges().collect()).collect();
        assert_eq!(distinct.len(), gs.len());
    }
}
