//! Named graph families, the Mycielskian, and seeded random generators.
//!
//! Random generators draw from SplitMix64 (increment `0x9e3779b97f4a7c15`,
//! multipliers `0xbf58476d1ce4e5b9` and `0x94d049bb133111eb`, shifts 30/27/31),
//! seeded with the raw 64-bit seed as the initial state. Derived quantities:
//!
//! * uniform integer below `b`: `(next_u64() as u128 * b as u128) >> 64`
//! * uniform real in `[0, 1)`: `(next_u64() >> 11) as f64 * 2^-53`
//!
//! Vertex pairs are listed lexicographically, `(0,1), (0,2), ..., (n-2,n-1)`.
//! The edge processes shuffle that list with a descending Fisher-Yates pass
//! (`for i in (1..len).rev() { swap(i, below(i + 1)) }`) and then visit it in
//! order. G(n, p) draws one real per pair in lexicographic order.

use std::fmt;
use std::str::FromStr;

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::graph::{has_clique_within, Graph, GraphBuilder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct Seed(pub u64);

impl Seed {
    /// Independent child seed for the `index`-th trial.
    pub fn derive(self, index: u64) -> Seed {
        let mut rng = SplitMix64::seed_from_u64(self.0 ^ index.wrapping_mul(0xd1b5_4a32_d192_ed03));
        Seed(rng.next_u64())
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The documented random stream shared by every seeded operation.
#[derive(Debug, Clone)]
pub struct SeededRng(SplitMix64);

impl SeededRng {
    pub fn new(seed: Seed) -> Self {
        SeededRng(SplitMix64::seed_from_u64(seed.0))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    pub fn below(&mut self, bound: usize) -> usize {
        ((self.next_u64() as u128 * bound as u128) >> 64) as usize
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("unknown graph family `{0}`")]
    UnknownName(String),
    #[error("invalid parameters for {family}: {msg}")]
    BadParameters { family: &'static str, msg: String },
}

/// Deterministic families with fixed labelings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NamedGraph {
    /// `i ~ i+1 (mod n)`.
    Cycle(usize),
    /// `i ~ i+1`.
    Path(usize),
    Complete(usize),
    /// Parts `0..a` and `a..a+b`.
    CompleteBipartite(usize, usize),
    /// `n` isolated vertices.
    Empty(usize),
    /// Outer cycle `0..5`, spokes `i ~ i+5`, inner pentagram `5+i ~ 5+(i+2)%5`.
    Petersen,
    /// 14-cycle with chords `i ~ i+5` for even `i` (LCF `[5,-5]^7`).
    Heawood,
    /// Mycielskian of the 5-cycle.
    Grotzsch,
    /// `h`-fold Mycielskian of `K2`; chromatic number `h + 2`.
    MycielskiTower(usize),
}

impl FromStr for NamedGraph {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, GenError> {
        let s = s.trim().to_ascii_lowercase();
        let (name, args) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], &s[i + 1..s.len() - 1]),
            Some(_) => return Err(GenError::UnknownName(s.clone())),
            None => (s.as_str(), ""),
        };
        let nums = args
            .split(',')
            .filter(|a| !a.trim().is_empty())
            .map(|a| a.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| GenError::UnknownName(s.clone()))?;
        let one = |family: &'static str| match nums.as_slice() {
            [x] => Ok(*x),
            _ => Err(GenError::BadParameters {
                family,
                msg: "expected one integer argument".into(),
            }),
        };
        Ok(match name {
            "cycle" | "c" => NamedGraph::Cycle(one("cycle")?),
            "path" | "p" => NamedGraph::Path(one("path")?),
            "complete" | "k" => NamedGraph::Complete(one("complete")?),
            "empty" => NamedGraph::Empty(one("empty")?),
            "complete_bipartite" | "kab" => match nums.as_slice() {
                [a, b] => NamedGraph::CompleteBipartite(*a, *b),
                _ => {
                    return Err(GenError::BadParameters {
                        family: "complete_bipartite",
                        msg: "expected two integer arguments".into(),
                    })
                }
            },
            "mycielski" | "mycielski_tower" => NamedGraph::MycielskiTower(one("mycielski")?),
            "petersen" if nums.is_empty() => NamedGraph::Petersen,
            "heawood" if nums.is_empty() => NamedGraph::Heawood,
            "grotzsch" | "groetzsch" if nums.is_empty() => NamedGraph::Grotzsch,
            _ => return Err(GenError::UnknownName(s.clone())),
        })
    }
}

fn positive(family: &'static str, ok: bool, msg: &str) -> Result<(), GenError> {
    if ok {
        Ok(())
    } else {
        Err(GenError::BadParameters {
            family,
            msg: msg.into(),
        })
    }
}

pub fn named(which: &NamedGraph) -> Result<Graph, GenError> {
    let edges_of = |n: usize, edges: Vec<(usize, usize)>| {
        Graph::new(n, edges).expect("family edges are simple")
    };
    Ok(match *which {
        NamedGraph::Cycle(n) => {
            positive("cycle", n >= 3, "need n >= 3")?;
            edges_of(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
        }
        NamedGraph::Path(n) => {
            positive("path", n >= 1, "need n >= 1")?;
            edges_of(n, (1..n).map(|i| (i - 1, i)).collect())
        }
        NamedGraph::Complete(n) => {
            positive("complete", n >= 1, "need n >= 1")?;
            edges_of(
                n,
                (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .collect(),
            )
        }
        NamedGraph::CompleteBipartite(a, b) => {
            positive("complete_bipartite", a >= 1 && b >= 1, "need a, b >= 1")?;
            edges_of(
                a + b,
                (0..a)
                    .flat_map(|u| (a..a + b).map(move |v| (u, v)))
                    .collect(),
            )
        }
        NamedGraph::Empty(n) => Graph::empty(n),
        NamedGraph::Petersen => {
            let mut e = Vec::new();
            for i in 0..5 {
                e.push((i, (i + 1) % 5));
                e.push((i, i + 5));
                e.push((5 + i, 5 + (i + 2) % 5));
            }
            edges_of(10, e)
        }
        NamedGraph::Heawood => {
            let mut e: Vec<_> = (0..14).map(|i| (i, (i + 1) % 14)).collect();
            e.extend((0..14).step_by(2).map(|i| (i, (i + 5) % 14)));
            edges_of(14, e)
        }
        NamedGraph::Grotzsch => mycielskian(&named(&NamedGraph::Cycle(5))?),
        NamedGraph::MycielskiTower(h) => mycielski_tower(h),
    })
}

/// Originals `0..n`, shadows `n..2n` (shadow `n+i` joined to `N(i)`), apex
/// `2n` joined to every shadow.
pub fn mycielskian(g: &Graph) -> Graph {
    let n = g.n();
    let mut b = GraphBuilder::new(2 * n + 1);
    for (u, v) in g.edges() {
        b.add_edge(u, v);
        b.add_edge(n + u, v);
        b.add_edge(u, n + v);
    }
    for i in 0..n {
        b.add_edge(n + i, 2 * n);
    }
    b.build()
}

pub fn mycielski_tower(height: usize) -> Graph {
    let mut g = Graph::new(2, [(0, 1)]).unwrap();
    for _ in 0..height {
        g = mycielskian(&g);
    }
    g
}

fn lexicographic_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

/// All vertex pairs in the seeded process order.
pub fn shuffled_pairs(n: usize, seed: Seed) -> Vec<(usize, usize)> {
    let mut pairs = lexicographic_pairs(n);
    let mut rng = SeededRng::new(seed);
    for i in (1..pairs.len()).rev() {
        let j = rng.below(i + 1);
        pairs.swap(i, j);
    }
    pairs
}

/// Binomial random graph.
pub fn gnp(n: usize, p: f64, seed: Seed) -> Result<Graph, GenError> {
    positive("gnp", (0.0..=1.0).contains(&p), "need 0 <= p <= 1")?;
    let mut rng = SeededRng::new(seed);
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.unit() < p {
                b.add_edge(u, v);
            }
        }
    }
    Ok(b.build())
}

/// The K_r-free process: visit the shuffled pairs, keeping an edge unless the
/// common neighbourhood of its ends already holds a `K_{r-2}`.
pub fn kr_free_process(n: usize, r: usize, seed: Seed) -> Result<Graph, GenError> {
    positive("kr_free_process", r >= 3, "need r >= 3")?;
    positive("kr_free_process", n >= 1, "need n >= 1")?;
    let mut b = GraphBuilder::new(n);
    let mut common = BitSet::new(n);
    for (u, v) in shuffled_pairs(n, seed) {
        let blocked = if r == 3 {
            b.row(u).intersects(b.row(v))
        } else {
            common.clone_from(b.row(u));
            common.intersect_with(b.row(v));
            has_clique_within(b.rows(), &common, r - 2)
        };
        if !blocked {
            b.add_edge(u, v);
        }
    }
    Ok(b.build())
}

/// The C4-free process. With `girth5` set, triangles are rejected as well,
/// so the output has girth at least 5.
pub fn c4_free_process(n: usize, seed: Seed, girth5: bool) -> Result<Graph, GenError> {
    positive("c4_free_process", n >= 1, "need n >= 1")?;
    let mut b = GraphBuilder::new(n);
    for (u, v) in shuffled_pairs(n, seed) {
        if girth5 && b.row(u).intersects(b.row(v)) {
            continue;
        }
        // a new 4-cycle through uv is a path u-a-w-v
        let closes_c4 = b
            .neighbors(u)
            .iter()
            .any(|&a| b.row(a).intersects(b.row(v)));
        if !closes_c4 {
            b.add_edge(u, v);
        }
    }
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::to_graph6;

    #[test]
    fn splitmix_reference_stream() {
        // http://xoshiro.di.unimi.it/splitmix64.c, seed 1477776061723855037
        let mut rng = SeededRng::new(Seed(1477776061723855037));
        assert_eq!(rng.next_u64(), 1985237415132408290);
        assert_eq!(rng.next_u64(), 2979275885539914483);
    }

    #[test]
    fn named_families() {
        let c5 = named(&"cycle(5)".parse().unwrap()).unwrap();
        assert_eq!((c5.n(), c5.m()), (5, 5));
        let p = named(&NamedGraph::Petersen).unwrap();
        assert_eq!((p.n(), p.m()), (10, 15));
        assert!(p.vertices().all(|v| p.degree(v) == 3));
        let h = named(&NamedGraph::Heawood).unwrap();
        assert_eq!((h.n(), h.m()), (14, 21));
        // networkx.heawood_graph() uses the same labeling
        assert_eq!(to_graph6(&h), "MhEGHC@AI?_PC@_G_");
        let gr = named(&NamedGraph::Grotzsch).unwrap();
        assert_eq!((gr.n(), gr.m()), (11, 20));
        assert!(gr.is_kr_free(3));
        let kab = named(&"complete_bipartite(3,3)".parse().unwrap()).unwrap();
        assert_eq!((kab.n(), kab.m()), (6, 9));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            "dodecahedron".parse::<NamedGraph>(),
            Err(GenError::UnknownName(_))
        ));
        assert!("cycle(2,3)".parse::<NamedGraph>().is_err());
        assert!(named(&NamedGraph::Cycle(2)).is_err());
        assert!("petersen(3)".parse::<NamedGraph>().is_err());
    }

    #[test]
    fn mycielskian_counts() {
        let k2 = named(&NamedGraph::Complete(2)).unwrap();
        let c5 = mycielskian(&k2);
        assert_eq!((c5.n(), c5.m()), (5, 5));
        assert!(c5.vertices().all(|v| c5.degree(v) == 2));
        assert_eq!(c5.components().len(), 1);
        let g = mycielskian(&named(&NamedGraph::Cycle(5)).unwrap());
        assert_eq!((g.n(), g.m()), (11, 20));
        for h in 0..=3 {
            let t = mycielski_tower(h);
            assert!(t.is_kr_free(3), "height {h}");
        }
        assert_eq!(mycielski_tower(3).n(), 23);
    }

    #[test]
    fn gnp_extremes() {
        assert_eq!(gnp(10, 0.0, Seed(7)).unwrap().m(), 0);
        assert_eq!(gnp(10, 1.0, Seed(7)).unwrap().m(), 45);
        assert!(gnp(10, 1.5, Seed(7)).is_err());
    }

    #[test]
    fn gnp_edge_count_concentrates() {
        // binomial(4950, 0.1): mean 495, sd sqrt(445.5); the mean of 1000
        // draws has sd ~0.667, so 3 sd of a single draw is very loose
        let total: usize = (0..1000).map(|s| gnp(100, 0.1, Seed(s)).unwrap().m()).sum();
        let mean = total as f64 / 1000.0;
        let sigma = (4950.0f64 * 0.1 * 0.9).sqrt();
        assert!((mean - 495.0).abs() <= 3.0 * sigma, "mean {mean}");
        assert!((mean - 495.0).abs() <= 3.0, "mean {mean}");
    }

    #[test]
    fn triangle_process_small() {
        for s in 0..20 {
            assert_eq!(kr_free_process(3, 3, Seed(s)).unwrap().m(), 2);
        }
    }

    fn maximal_wrt(g: &Graph, creates: impl Fn(&Graph, usize, usize) -> bool) -> bool {
        (0..g.n()).all(|u| (u + 1..g.n()).all(|v| g.adjacent(u, v) || creates(g, u, v)))
    }

    #[test]
    fn kr_free_process_is_free_and_maximal() {
        for s in 0..10 {
            let g = kr_free_process(50, 3, Seed(s)).unwrap();
            assert!(g.is_kr_free(3));
            assert!(maximal_wrt(&g, |g, u, v| g.common_neighbors(u, v) > 0));
        }
        let g = kr_free_process(200, 3, Seed(99)).unwrap();
        assert!(g.is_kr_free(3));
        assert!(maximal_wrt(&g, |g, u, v| g.common_neighbors(u, v) > 0));
        for s in 0..4 {
            let g = kr_free_process(30, 4, Seed(s)).unwrap();
            assert!(g.is_kr_free(4));
            assert!(maximal_wrt(&g, |g, u, v| {
                // adding uv creates a K4 iff two adjacent common neighbours exist
                let common: Vec<usize> = (0..g.n())
                    .filter(|&w| g.adjacent(u, w) && g.adjacent(v, w))
                    .collect();
                common
                    .iter()
                    .any(|&a| common.iter().any(|&b| g.adjacent(a, b)))
            }));
        }
    }

    #[test]
    fn c4_process_properties() {
        for s in 0..5 {
            let g = c4_free_process(4, Seed(s), false).unwrap();
            assert!(g.is_k2t_free(2));
            let g = c4_free_process(100, Seed(s), false).unwrap();
            assert!(g.is_k2t_free(2));
            let g5 = c4_free_process(100, Seed(s), true).unwrap();
            assert!(g5.is_k2t_free(2));
            assert!(g5.girth().at_least(5));
        }
    }

    #[test]
    fn determinism() {
        for s in [0u64, 1, 12345] {
            assert_eq!(
                to_graph6(&kr_free_process(60, 3, Seed(s)).unwrap()),
                to_graph6(&kr_free_process(60, 3, Seed(s)).unwrap())
            );
            assert_eq!(
                gnp(60, 0.2, Seed(s)).unwrap(),
                gnp(60, 0.2, Seed(s)).unwrap()
            );
            assert_eq!(
                c4_free_process(60, Seed(s), true).unwrap(),
                c4_free_process(60, Seed(s), true).unwrap()
            );
        }
        assert_ne!(
            kr_free_process(60, 3, Seed(1)).unwrap(),
            kr_free_process(60, 3, Seed(2)).unwrap()
        );
    }
}
