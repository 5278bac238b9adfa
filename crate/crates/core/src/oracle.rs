//! Exponential-time reference solvers over an explicit edge list.

use crate::error::{Error, Result};
use crate::tpig::{Edge, OrderIndex};

pub const DEFAULT_EDGE_LIMIT: usize = 64;

/// The graph with every edge listed and all pairwise relations as bitmasks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseTpig {
    pub edges: Vec<Edge>,
    /// `covers[g]` has bit `e` set iff edge `g` as an r-guard sees edge `e`.
    pub covers: Vec<u64>,
    /// `dependent[a]` has bit `b` set iff `a` and `b` are r-dependent.
    pub dependent: Vec<u64>,
}

pub fn densify(order: &OrderIndex, limit: usize) -> Result<DenseTpig> {
    let edges = order.edges();
    let limit_cap = limit.min(64);
    if edges.len() > limit_cap {
        return Err(Error::LimitExceeded { edges: edges.len(), limit: limit_cap });
    }
    let mask = |f: &dyn Fn(Edge) -> bool| {
        edges
            .iter()
            .enumerate()
            .filter(|&(_, &e)| f(e))
            .fold(0u64, |m, (k, _)| m | 1 << k)
    };
    let covers = edges.iter().map(|&g| mask(&|e| order.rguard_covers(g, e))).collect();
    let dependent = edges.iter().map(|&a| mask(&|b| order.r_dependent(a, b))).collect();
    Ok(DenseTpig { edges, covers, dependent })
}

impl DenseTpig {
    fn full(&self) -> u64 {
        if self.edges.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.edges.len()) - 1
        }
    }
}

/// Smallest set of r-guard edges covering every edge, by iterative deepening.
/// Each level branches on the guards that see the lowest uncovered edge.
pub fn min_cover_bruteforce(d: &DenseTpig) -> (usize, Vec<Edge>) {
    fn search(d: &DenseTpig, covered: u64, budget: usize, chosen: &mut Vec<usize>) -> bool {
        let open = d.full() & !covered;
        if open == 0 {
            return true;
        }
        if budget == 0 {
            return false;
        }
        let target = open.trailing_zeros();
        for g in 0..d.edges.len() {
            if d.covers[g] >> target & 1 == 1 {
                chosen.push(g);
                if search(d, covered | d.covers[g], budget - 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    for r in 0..=d.edges.len() {
        if search(d, 0, r, &mut chosen) {
            return (r, chosen.iter().map(|&g| d.edges[g]).collect());
        }
    }
    unreachable!("every edge covers itself")
}

/// Largest pairwise r-independent edge set, by branch and bound.
pub fn max_independent_bruteforce(d: &DenseTpig) -> (usize, Vec<Edge>) {
    fn search(d: &DenseTpig, cand: u64, current: &mut Vec<usize>, best: &mut Vec<usize>) {
        if current.len() + cand.count_ones() as usize <= best.len() {
            return;
        }
        if cand == 0 {
            *best = current.clone();
            return;
        }
        let v = cand.trailing_zeros() as usize;
        current.push(v);
        search(d, cand & !d.dependent[v] & !(1 << v), current, best);
        current.pop();
        search(d, cand & !(1 << v), current, best);
    }
    let mut best = Vec::new();
    search(d, d.full(), &mut Vec::new(), &mut best);
    (best.len(), best.iter().map(|&e| d.edges[e]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tpig::{RTree, SparseTpig};

    fn l6() -> OrderIndex {
        OrderIndex::new(&SparseTpig {
            t_h: RTree::from_edges(2, &[(0, 1)], 0).unwrap(),
            t_v: RTree::from_edges(2, &[(0, 1)], 0).unwrap(),
            boundary_gamma_h: vec![(0, 1), (0, 0)],
            boundary_gamma_v: vec![(0, 1), (0, 0)],
        })
    }

    #[test]
    fn l6_dense() {
        let d = densify(&l6(), DEFAULT_EDGE_LIMIT).unwrap();
        assert_eq!(d.edges.len(), 3);
        let g = d.edges.iter().position(|&e| e == Edge::new(0, 0)).unwrap();
        assert_eq!(d.covers[g], 0b111);
        assert_eq!(min_cover_bruteforce(&d).0, 1);
        assert_eq!(max_independent_bruteforce(&d).0, 1);
    }

    #[test]
    fn limit() {
        assert!(matches!(
            densify(&l6(), 2),
            Err(Error::LimitExceeded { edges: 3, limit: 2 })
        ));
    }

    #[test]
    fn independent_pair() {
        // Three edges, guard 0 sees 0 and 1, guard 2 sees 2; 0 and 2 independent.
        let d = DenseTpig {
            edges: vec![Edge::new(0, 0), Edge::new(1, 1), Edge::new(2, 2)],
            covers: vec![0b011, 0b011, 0b100],
            dependent: vec![0b011, 0b011, 0b100],
        };
        assert_eq!(min_cover_bruteforce(&d).0, 2);
        assert_eq!(max_independent_bruteforce(&d).0, 2);
    }
}
