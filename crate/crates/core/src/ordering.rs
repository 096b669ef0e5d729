//! Vertex orderings of a product and their feasibility.

use crate::error::{Error, Result};
use crate::product::{ProductGraph, ProductVertex, SectorRelation};

/// A permutation `z_0, ..., z_{p-1}` of the vertices of a product.
#[derive(Debug, Clone)]
pub struct VertexOrdering<'g> {
    graph: &'g ProductGraph,
    sequence: Vec<ProductVertex>,
}

/// Outcome of [`VertexOrdering::feasibility`]: `first_violation` is the
/// smallest `t` for which the pair `(z_t, z_{t+1})` breaks the rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Feasibility {
    pub feasible: bool,
    pub first_violation: Option<usize>,
}

impl<'g> VertexOrdering<'g> {
    pub fn new(graph: &'g ProductGraph, sequence: Vec<ProductVertex>) -> Result<Self> {
        let p = graph.order();
        if sequence.len() != p {
            return Err(Error::BadOrdering(format!(
                "{} vertices given, product has {p}",
                sequence.len()
            )));
        }
        let mut seen = vec![false; p];
        for &z in &sequence {
            if !graph.contains(z) {
                return Err(Error::BadOrdering(format!("{z} is not a product vertex")));
            }
            let id = graph.flat(z);
            if std::mem::replace(&mut seen[id], true) {
                return Err(Error::BadOrdering(format!("{z} appears twice")));
            }
        }
        Ok(Self { graph, sequence })
    }

    pub fn from_flat(graph: &'g ProductGraph, ids: &[usize]) -> Result<Self> {
        let p = graph.order();
        if let Some(&bad) = ids.iter().find(|&&id| id >= p) {
            return Err(Error::BadOrdering(format!("flat id {bad} out of range {p}")));
        }
        Self::new(graph, ids.iter().map(|&id| graph.vertex(id)).collect())
    }

    pub fn graph(&self) -> &'g ProductGraph {
        self.graph
    }

    pub fn sequence(&self) -> &[ProductVertex] {
        &self.sequence
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn flat_ids(&self) -> Vec<usize> {
        self.sequence.iter().map(|&z| self.graph.flat(z)).collect()
    }

    pub fn levels(&self) -> Vec<u32> {
        self.sequence.iter().map(|&z| self.graph.level(z)).collect()
    }

    /// `delta(z_t, z_{t+1})` for `t` in `0..p-1`.
    pub fn consecutive_deltas(&self) -> Vec<u32> {
        self.sequence
            .windows(2)
            .map(|w| self.graph.delta(w[0], w[1]))
            .collect()
    }

    /// Index of the one consecutive pair allowed to sit in opposite sectors
    /// when the product has four weight centers.
    pub fn middle_pair(&self) -> Option<usize> {
        (self.graph.center_count() == 4 && self.len() >= 2).then(|| self.len() / 2 - 1)
    }

    /// Every consecutive pair must be feasible, except that with four weight
    /// centers the pair at `p/2 - 1` must be in opposite sectors instead.
    pub fn feasibility(&self) -> Feasibility {
        let middle = self.middle_pair();
        let first_violation = (0..self.len().saturating_sub(1)).find(|&t| {
            let (a, b) = (self.sequence[t], self.sequence[t + 1]);
            if Some(t) == middle {
                self.graph.sector_relation(a, b) != SectorRelation::Opposite
            } else {
                !is_feasible_pair(self.graph, a, b)
            }
        });
        Feasibility {
            feasible: first_violation.is_none(),
            first_violation,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.feasibility().feasible
    }

    /// `L(z_0) + L(z_{p-1})` equals 1 for one weight center and 0 otherwise.
    pub fn satisfies_endpoint_condition(&self) -> bool {
        let (Some(&first), Some(&last)) = (self.sequence.first(), self.sequence.last()) else {
            return false;
        };
        let want = if self.graph.center_count() == 1 { 1 } else { 0 };
        self.len() >= 2 && self.graph.level(first) + self.graph.level(last) == want
    }

    /// Sum of `delta` over all consecutive pairs.
    pub fn delta_sum(&self) -> u64 {
        self.consecutive_deltas().iter().map(|&d| d as u64).sum()
    }
}

/// Consecutive-pair rule: different sectors with one weight center, opposite
/// with two, separate with four.
pub fn is_feasible_pair(graph: &ProductGraph, a: ProductVertex, b: ProductVertex) -> bool {
    let want = match graph.center_count() {
        1 => SectorRelation::Different,
        2 => SectorRelation::Opposite,
        _ => SectorRelation::Separate,
    };
    graph.sector_relation(a, b) == want
}

/// Whether a sequence of consecutive deltas attains `2p - 3` in the only way
/// possible: delta 1 at the middle pair and 2 everywhere else.
pub fn is_extremal_delta_pattern(deltas: &[u32]) -> bool {
    let p = deltas.len() + 1;
    p % 2 == 0
        && deltas
            .iter()
            .enumerate()
            .all(|(t, &d)| d == if t == p / 2 - 1 { 1 } else { 2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::Tree;

    fn z(x: usize, y: usize) -> ProductVertex {
        ProductVertex::new(x, y)
    }

    #[test]
    fn c4_ordering_is_feasible() {
        let g = ProductGraph::new(Tree::path(2).unwrap(), Tree::path(2).unwrap()).unwrap();
        let ord = VertexOrdering::new(&g, vec![z(0, 0), z(1, 1), z(1, 0), z(0, 1)]).unwrap();
        assert!(ord.is_feasible());
        assert!(ord.satisfies_endpoint_condition());
        assert_eq!(ord.consecutive_deltas(), vec![2, 1, 2]);
        assert_eq!(ord.delta_sum(), 5);
        assert!(is_extremal_delta_pattern(&ord.consecutive_deltas()));
    }

    #[test]
    fn same_sector_neighbors_flagged() {
        let g = ProductGraph::new(Tree::star(3).unwrap(), Tree::star(3).unwrap()).unwrap();
        assert!(is_feasible_pair(&g, z(1, 1), z(2, 2)));
        assert!(!is_feasible_pair(&g, z(1, 1), z(1, 2)));
        let mut seq: Vec<_> = g.vertices().collect();
        // (0,0),(0,1),... : (0,1),(0,2) share the hub coordinate -> different
        // sectors; (1,1),(1,2) share branch 1 of the first factor -> same.
        seq.swap(0, 15);
        let ord = VertexOrdering::new(&g, seq).unwrap();
        let f = ord.feasibility();
        assert!(!f.feasible);
        let t = f.first_violation.unwrap();
        let s = ord.sequence();
        assert!(!is_feasible_pair(&g, s[t], s[t + 1]));
        assert!((0..t).all(|u| is_feasible_pair(&g, s[u], s[u + 1])));
    }

    #[test]
    fn single_center_delta_sum_is_zero() {
        let g = ProductGraph::new(Tree::star(3).unwrap(), Tree::path(3).unwrap()).unwrap();
        let ord = VertexOrdering::new(&g, g.vertices().collect()).unwrap();
        assert_eq!(ord.delta_sum(), 0);
    }

    #[test]
    fn rejects_non_permutations() {
        let g = ProductGraph::new(Tree::path(2).unwrap(), Tree::path(2).unwrap()).unwrap();
        assert!(VertexOrdering::new(&g, vec![z(0, 0), z(0, 0), z(1, 0), z(0, 1)]).is_err());
        assert!(VertexOrdering::new(&g, vec![z(0, 0)]).is_err());
        assert!(VertexOrdering::from_flat(&g, &[0, 1, 2, 7]).is_err());
    }
}
