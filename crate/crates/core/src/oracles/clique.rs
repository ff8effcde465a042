use serde::Serialize;

use super::{all_below, bit, limits, masks, Mask, Meter, SearchBudget, SearchError};
use crate::certificate::RainbowSetCert;
use crate::coloring::ProperColoring;
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndependentSet {
    pub size: usize,
    pub witness: VertexSet,
}

/// Maximum clique by branch and bound with greedy colouring bounds.
pub fn max_clique(g: &Graph, budget: &SearchBudget) -> Result<VertexSet, SearchError> {
    budget.admit_masked(g, limits::INDEPENDENCE)?;
    let adj = masks(g);
    Ok(VertexSet::new(clique_on_masks(
        &adj,
        g.n(),
        &mut budget.meter(),
    )?))
}

/// Independence number with a witness, as a maximum clique of the complement.
pub fn independence_number(
    g: &Graph,
    budget: &SearchBudget,
) -> Result<IndependentSet, SearchError> {
    budget.admit_masked(g, limits::INDEPENDENCE)?;
    let n = g.n();
    let full = all_below(n);
    let comp: Vec<Mask> = masks(g)
        .into_iter()
        .enumerate()
        .map(|(v, m)| full & !m & !bit(v))
        .collect();
    let best = clique_on_masks(&comp, n, &mut budget.meter())?;
    Ok(IndependentSet {
        size: best.len(),
        witness: VertexSet::new(best),
    })
}

/// Largest independent set with pairwise distinct colours: a maximum
/// independent set of the graph with every colour class made a clique.
pub fn max_rainbow_independent_set(
    g: &Graph,
    c: &ProperColoring,
    budget: &SearchBudget,
) -> Result<RainbowSetCert, SearchError> {
    budget.admit_masked(g, limits::INDEPENDENCE)?;
    let n = g.n();
    let full = all_below(n);
    let mut same_color = vec![0 as Mask; n];
    for class in c.classes().values() {
        let m = class.iter().fold(0, |m, &v| m | bit(v));
        for &v in class {
            same_color[v] = m;
        }
    }
    // complement of the augmented graph
    let comp: Vec<Mask> = masks(g)
        .into_iter()
        .enumerate()
        .map(|(v, m)| full & !(m | same_color[v]) & !bit(v))
        .collect();
    let best = clique_on_masks(&comp, n, &mut budget.meter())?;
    Ok(RainbowSetCert::new(VertexSet::new(best), c))
}

fn clique_on_masks(adj: &[Mask], n: usize, meter: &mut Meter) -> Result<Vec<usize>, SearchError> {
    let mut best = Vec::new();
    let mut cur = Vec::new();
    if n > 0 {
        expand(adj, all_below(n), &mut cur, &mut best, meter)?;
    }
    Ok(best)
}

/// Greedy sequential colouring of `p`; returns vertices in colour order with
/// the colour number of each (an upper bound on cliques among the prefix).
fn color_sort(adj: &[Mask], p: Mask) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::with_capacity(p.count_ones() as usize);
    let mut bounds = Vec::with_capacity(order.capacity());
    let mut uncolored = p;
    let mut k = 0;
    while uncolored != 0 {
        k += 1;
        let mut q = uncolored;
        while q != 0 {
            let v = q.trailing_zeros() as usize;
            q &= !bit(v) & !adj[v];
            uncolored &= !bit(v);
            order.push(v);
            bounds.push(k);
        }
    }
    (order, bounds)
}

fn expand(
    adj: &[Mask],
    p: Mask,
    cur: &mut Vec<usize>,
    best: &mut Vec<usize>,
    meter: &mut Meter,
) -> Result<(), SearchError> {
    meter.tick()?;
    let (order, bounds) = color_sort(adj, p);
    let mut remaining = p;
    for i in (0..order.len()).rev() {
        if cur.len() + bounds[i] <= best.len() {
            return Ok(());
        }
        let v = order[i];
        cur.push(v);
        let next = remaining & adj[v];
        if next == 0 {
            if cur.len() > best.len() {
                best.clone_from(cur);
            }
        } else {
            expand(adj, next, cur, best, meter)?;
        }
        cur.pop();
        remaining &= !bit(v);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gnp, named, NamedGraph, Seed};

    fn brute_alpha(g: &Graph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|&s| {
                let vs: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
                g.is_independent(&vs)
            })
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn alpha_examples() {
        let b = SearchBudget::default();
        assert_eq!(
            independence_number(&named(&NamedGraph::Cycle(5)).unwrap(), &b)
                .unwrap()
                .size,
            2
        );
        let p = named(&NamedGraph::Petersen).unwrap();
        let a = independence_number(&p, &b).unwrap();
        assert_eq!(a.size, 4);
        assert_eq!(brute_alpha(&p), 4);
        assert!(p.is_independent(a.witness.as_slice()));
        assert_eq!(
            independence_number(&named(&NamedGraph::Complete(7)).unwrap(), &b)
                .unwrap()
                .size,
            1
        );
        assert_eq!(independence_number(&Graph::empty(0), &b).unwrap().size, 0);
    }

    #[test]
    fn alpha_matches_brute_force() {
        for s in 0..40 {
            let g = gnp(11, 0.35, Seed(s)).unwrap();
            let a = independence_number(&g, &SearchBudget::default()).unwrap();
            assert_eq!(a.size, brute_alpha(&g), "seed {s}");
        }
    }

    #[test]
    fn clique_number() {
        let k5 = named(&NamedGraph::Complete(5)).unwrap();
        assert_eq!(max_clique(&k5, &SearchBudget::default()).unwrap().len(), 5);
        let p = named(&NamedGraph::Petersen).unwrap();
        assert_eq!(max_clique(&p, &SearchBudget::default()).unwrap().len(), 2);
    }

    #[test]
    fn rainbow_examples() {
        let b = SearchBudget::default();
        let c5 = named(&NamedGraph::Cycle(5)).unwrap();
        let col = ProperColoring::new(&c5, vec![1, 2, 1, 2, 3]).unwrap();
        let r = max_rainbow_independent_set(&c5, &col, &b).unwrap();
        assert_eq!(r.size(), 2);
        assert!(r.validate(&c5, &col).is_ok());
        let k4 = named(&NamedGraph::Complete(4)).unwrap();
        let col = ProperColoring::new(&k4, vec![1, 2, 3, 4]).unwrap();
        assert_eq!(
            max_rainbow_independent_set(&k4, &col, &b).unwrap().size(),
            1
        );
        let e5 = Graph::empty(5);
        let col = ProperColoring::new(&e5, vec![1, 2, 3, 4, 5]).unwrap();
        assert_eq!(
            max_rainbow_independent_set(&e5, &col, &b).unwrap().size(),
            5
        );
    }

    #[test]
    fn admission_limits() {
        let g = Graph::empty(41);
        assert!(matches!(
            independence_number(&g, &SearchBudget::default()),
            Err(SearchError::TooLarge { .. })
        ));
        let g = Graph::empty(129);
        assert!(matches!(
            independence_number(&g, &SearchBudget::default().with_max_n(500)),
            Err(SearchError::TooLarge { max_n: 128, .. })
        ));
    }
}
