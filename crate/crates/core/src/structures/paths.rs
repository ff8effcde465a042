use crate::bitset::BitSet;
use crate::certificate::InducedPathCert;
use crate::graph::Graph;
use crate::oracles::{Meter, SearchBudget, SearchError};

/// Depth-first stream of every induced path of a given order starting at a
/// vertex. Candidates are tried in increasing index order, so the stream
/// order is lexicographic. After a budget error the stream ends.
pub struct InducedPaths<'g> {
    g: &'g Graph,
    order: usize,
    path: Vec<usize>,
    on_path: BitSet,
    /// `frames[i]`: remaining extension candidates after `path[..=i]`.
    frames: Vec<Vec<usize>>,
    meter: Meter,
    done: bool,
    /// The single-vertex path is complete before any extension.
    unreported_root: bool,
}

/// All induced paths of `order` vertices whose first vertex is `v`.
pub fn induced_paths_from<'g>(
    g: &'g Graph,
    v: usize,
    order: usize,
    budget: &SearchBudget,
) -> InducedPaths<'g> {
    let mut it = InducedPaths {
        g,
        order,
        path: Vec::new(),
        on_path: BitSet::new(g.n()),
        frames: Vec::new(),
        meter: budget.meter(),
        done: order == 0 || v >= g.n(),
        unreported_root: order == 1,
    };
    if !it.done {
        it.push(v);
    }
    it
}

impl InducedPaths<'_> {
    fn push(&mut self, w: usize) {
        self.path.push(w);
        self.on_path.insert(w);
        let cands = if self.path.len() < self.order {
            self.g
                .neighbors(w)
                .iter()
                .rev()
                .copied()
                .filter(|&x| {
                    !self.on_path.contains(x) && self.g.row(x).intersection_len(&self.on_path) == 1
                })
                .collect()
        } else {
            Vec::new()
        };
        self.frames.push(cands);
    }

    fn pop(&mut self) {
        let w = self.path.pop().unwrap();
        self.on_path.remove(w);
        self.frames.pop();
    }
}

impl Iterator for InducedPaths<'_> {
    type Item = Result<InducedPathCert, SearchError>;

    fn next(&mut self) -> Option<Self::Item> {
        if std::mem::take(&mut self.unreported_root) && !self.done {
            return Some(Ok(InducedPathCert::new(self.path.clone())));
        }
        // a complete path from the previous call sits on top of the stack
        if !self.done && self.path.len() == self.order {
            self.pop();
        }
        while !self.done {
            if let Err(e) = self.meter.tick() {
                self.done = true;
                return Some(Err(e));
            }
            match self.frames.last_mut() {
                None => self.done = true,
                Some(frame) => match frame.pop() {
                    Some(w) => {
                        self.push(w);
                        if self.path.len() == self.order {
                            return Some(Ok(InducedPathCert::new(self.path.clone())));
                        }
                    }
                    None => self.pop(),
                },
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{named, NamedGraph};

    fn collect(g: &Graph, v: usize, order: usize) -> Vec<Vec<usize>> {
        induced_paths_from(g, v, order, &SearchBudget::default())
            .map(|p| p.unwrap().vertices)
            .collect()
    }

    #[test]
    fn examples() {
        let c5 = named(&NamedGraph::Cycle(5)).unwrap();
        assert_eq!(collect(&c5, 0, 4), vec![vec![0, 1, 2, 3], vec![0, 4, 3, 2]]);
        let pet = named(&NamedGraph::Petersen).unwrap();
        assert!(collect(&pet, 0, 5).len() >= 6);
        let k4 = named(&NamedGraph::Complete(4)).unwrap();
        assert!(collect(&k4, 0, 3).is_empty());
        assert_eq!(collect(&k4, 0, 2).len(), 3);
        assert_eq!(collect(&k4, 2, 1), vec![vec![2]]);
        assert!(collect(&k4, 0, 0).is_empty());
    }

    #[test]
    fn budget_ends_stream() {
        let pet = named(&NamedGraph::Petersen).unwrap();
        let mut it = induced_paths_from(&pet, 0, 6, &SearchBudget::nodes(2));
        let first = it.next();
        assert!(matches!(first, Some(Err(SearchError::NodeLimit { .. }))));
        assert!(it.next().is_none());
    }
}
