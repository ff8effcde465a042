use std::collections::{BTreeMap, VecDeque};

use super::StructureError;
use crate::bitset::BitSet;
use crate::certificate::{InducedCycleCert, InducedPathCert};
use crate::graph::Graph;

/// Grows an induced path from `start`, first at the front and then at the
/// back, always taking the least admissible vertex. The result cannot be
/// extended at either end.
pub fn maximal_induced_path(g: &Graph, start: usize) -> InducedPathCert {
    let mut path = VecDeque::from([start]);
    let mut on_path = BitSet::new(g.n());
    on_path.insert(start);
    for front in [true, false] {
        loop {
            let end = if front { path[0] } else { path[path.len() - 1] };
            let next = g
                .neighbors(end)
                .iter()
                .copied()
                .find(|&w| !on_path.contains(w) && g.row(w).intersection_len(&on_path) == 1);
            match next {
                Some(w) => {
                    on_path.insert(w);
                    if front {
                        path.push_front(w);
                    } else {
                        path.push_back(w);
                    }
                }
                None => break,
            }
        }
    }
    InducedPathCert::new(path.into())
}

/// True if no outside vertex is adjacent to an endpoint and to nothing else
/// on the path.
pub fn is_non_extendable(g: &Graph, path: &[usize]) -> bool {
    let on_path = BitSet::from_iter_with_capacity(g.n(), path.iter().copied());
    let ends = [path.first(), path.last()];
    ends.into_iter().flatten().all(|&e| {
        g.neighbors(e)
            .iter()
            .all(|&w| on_path.contains(w) || g.row(w).intersection_len(&on_path) != 1)
    })
}

/// First-neighbour position (0-based index on `path`) of each pending
/// vertex, with the least pending vertex kept per position, and the cycle
/// it closes: `w, p_1, ..., p_j`.
pub(crate) fn pending_cycles(g: &Graph, path: &[usize]) -> BTreeMap<usize, InducedCycleCert> {
    let mut index = vec![usize::MAX; g.n()];
    for (i, &p) in path.iter().enumerate() {
        index[p] = i;
    }
    let mut out = BTreeMap::new();
    for &w in g.neighbors(path[0]) {
        if index[w] != usize::MAX {
            continue;
        }
        let first = g
            .neighbors(w)
            .iter()
            .map(|&x| index[x])
            .filter(|&i| i != usize::MAX && i >= 1)
            .min();
        if let Some(j) = first {
            out.entry(j).or_insert_with(|| {
                let mut cycle = vec![w];
                cycle.extend_from_slice(&path[..=j]);
                InducedCycleCert::new(cycle)
            });
        }
    }
    out
}

/// Induced cycles of pairwise distinct lengths through the first vertex of
/// a maximal induced path from `start`, one per first-neighbour position.
/// Sorted by length.
pub fn cycles_from_pending(
    g: &Graph,
    t: usize,
    start: usize,
) -> Result<Vec<InducedCycleCert>, StructureError> {
    if start >= g.n() {
        return Err(StructureError::PreconditionFailed(format!(
            "start {start} is not a vertex"
        )));
    }
    if t < 2 {
        return Err(StructureError::PreconditionFailed(format!(
            "t = {t} must be at least 2"
        )));
    }
    if g.min_degree() < 2 {
        return Err(StructureError::PreconditionFailed(format!(
            "minimum degree {} is below 2",
            g.min_degree()
        )));
    }
    if let Some((u, v)) = g.find_k2t(t) {
        return Err(StructureError::PreconditionFailed(format!(
            "vertices {u} and {v} have {t} common neighbours"
        )));
    }
    let path = maximal_induced_path(g, start);
    let cycles: Vec<InducedCycleCert> = pending_cycles(g, &path.vertices).into_values().collect();
    for c in &cycles {
        c.validate(g).map_err(StructureError::Invalid)?;
    }
    Ok(cycles)
}

/// `ceil((d-1)/(t-1))`, the number of distinct cycle lengths guaranteed for
/// minimum degree `d` and no `K_{2,t}`.
pub fn pending_cycle_count_bound(d: usize, t: usize) -> usize {
    (d.saturating_sub(1)).div_ceil(t - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{named, NamedGraph};
    use crate::oracles::{longest_induced_cycle, SearchBudget};

    #[test]
    fn maximal_paths() {
        let p4 = named(&NamedGraph::Path(4)).unwrap();
        assert_eq!(maximal_induced_path(&p4, 0).vertices, vec![3, 2, 1, 0]);
        let c5 = named(&NamedGraph::Cycle(5)).unwrap();
        let p = maximal_induced_path(&c5, 0);
        assert_eq!(p.order(), 4);
        let pet = named(&NamedGraph::Petersen).unwrap();
        let p = maximal_induced_path(&pet, 0);
        assert!(p.validate(&pet).is_ok());
        assert!(is_non_extendable(&pet, &p.vertices));
        assert!(!is_non_extendable(&pet, &[0, 1]));
    }

    #[test]
    fn cycles_on_named_graphs() {
        let c5 = named(&NamedGraph::Cycle(5)).unwrap();
        let cs = cycles_from_pending(&c5, 2, 0).unwrap();
        assert_eq!(cs.iter().map(|c| c.length()).collect::<Vec<_>>(), vec![5]);

        for g in [NamedGraph::Petersen, NamedGraph::Heawood] {
            let g = named(&g).unwrap();
            let cs = cycles_from_pending(&g, 2, 0).unwrap();
            assert!(cs.len() >= 2);
            let lengths: std::collections::BTreeSet<_> = cs.iter().map(|c| c.length()).collect();
            assert_eq!(lengths.len(), cs.len());
            let longest = longest_induced_cycle(&g, &SearchBudget::default())
                .unwrap()
                .unwrap();
            for c in &cs {
                assert!(c.validate(&g).is_ok());
                assert!(c.length() <= longest.length());
            }
            assert!(cs.iter().any(|c| c.length() >= 4));
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let k23 = named(&NamedGraph::CompleteBipartite(2, 3)).unwrap();
        assert!(cycles_from_pending(&k23, 2, 0).is_err());
        assert!(cycles_from_pending(&k23, 4, 0).is_ok());
        let p4 = named(&NamedGraph::Path(4)).unwrap();
        assert!(cycles_from_pending(&p4, 2, 0).is_err());
    }

    #[test]
    fn count_bound() {
        assert_eq!(pending_cycle_count_bound(3, 2), 2);
        assert_eq!(pending_cycle_count_bound(2, 2), 1);
        assert_eq!(pending_cycle_count_bound(6, 3), 3);
    }
}
