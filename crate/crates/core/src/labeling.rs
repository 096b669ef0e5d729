//! Radio labelings: the greedy recurrence along an ordering, the exhaustive
//! verifier, and the ordering induced by a labeling.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordering::VertexOrdering;
use crate::product::{ProductGraph, ProductVertex};

/// Labels indexed by flat vertex id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadioLabeling {
    labels: Vec<i64>,
    span: i64,
}

/// A pair violating `|f(u) - f(v)| >= d + 1 - d(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub u: ProductVertex,
    pub v: ProductVertex,
    pub gap: i64,
    pub required: i64,
}

impl RadioLabeling {
    pub fn new(labels: Vec<i64>) -> Self {
        let span = match (labels.iter().min(), labels.iter().max()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        };
        Self { labels, span }
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn label(&self, id: usize) -> i64 {
        self.labels[id]
    }

    pub fn span(&self) -> i64 {
        self.span
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Shifts the labels so the smallest one is zero.
    pub fn normalized(&self) -> Self {
        let lo = self.labels.iter().copied().min().unwrap_or(0);
        Self::new(self.labels.iter().map(|&l| l - lo).collect())
    }

    /// First pair of vertices (by flat id) that share a label.
    pub fn find_duplicate(&self) -> Option<Error> {
        let mut ids: Vec<usize> = (0..self.labels.len()).collect();
        ids.sort_by_key(|&i| (self.labels[i], i));
        ids.windows(2)
            .filter(|w| self.labels[w[0]] == self.labels[w[1]])
            .map(|w| Error::DuplicateLabel {
                first: w[0].min(w[1]),
                second: w[0].max(w[1]),
                label: self.labels[w[0]],
            })
            .min_by_key(|e| match e {
                Error::DuplicateLabel { first, second, .. } => (*first, *second),
                _ => unreachable!(),
            })
    }
}

/// Labels `z_0 = 0` and
/// `f(z_{i+1}) = f(z_i) + d + 1 - L(z_i) - L(z_{i+1}) - delta(z_i, z_{i+1})`.
///
/// Fails with [`Error::NegativeStep`] if an increment is not positive.
pub fn greedy_label(ordering: &VertexOrdering<'_>) -> Result<RadioLabeling> {
    let g = ordering.graph();
    let d = g.diameter() as i64;
    let seq = ordering.sequence();
    let mut labels = vec![0i64; g.order()];
    let mut current = 0i64;
    for (i, w) in seq.windows(2).enumerate() {
        let increment = d + 1 - g.level(w[0]) as i64 - g.level(w[1]) as i64 - g.delta(w[0], w[1]) as i64;
        if increment <= 0 {
            return Err(Error::NegativeStep {
                position: i,
                increment,
            });
        }
        current = current
            .checked_add(increment)
            .expect("label overflow");
        labels[g.flat(w[1])] = current;
    }
    Ok(RadioLabeling::new(labels))
}

/// Checks every pair of vertices. Violations are sorted by `(u, v)` flat ids.
pub fn verify(graph: &ProductGraph, labeling: &RadioLabeling) -> Result<Vec<Violation>> {
    let p = graph.order();
    if labeling.len() != p {
        return Err(Error::BadOrdering(format!(
            "labeling has {} entries, product has {p}",
            labeling.len()
        )));
    }
    if let Some(dup) = labeling.find_duplicate() {
        return Err(dup);
    }
    let d = graph.diameter() as i64;
    let violations = (0..p)
        .into_par_iter()
        .flat_map_iter(|a| {
            let u = graph.vertex(a);
            (a + 1..p).filter_map(move |b| {
                let v = graph.vertex(b);
                let gap = (labeling.label(a) - labeling.label(b)).abs();
                let required = d + 1 - graph.distance(u, v) as i64;
                (gap < required).then_some(Violation { u, v, gap, required })
            })
        })
        .collect();
    Ok(violations)
}

/// Vertices sorted by increasing label.
pub fn ordering_from_labeling<'g>(
    graph: &'g ProductGraph,
    labeling: &RadioLabeling,
) -> Result<VertexOrdering<'g>> {
    if let Some(dup) = labeling.find_duplicate() {
        return Err(dup);
    }
    let mut ids: Vec<usize> = (0..labeling.len()).collect();
    ids.sort_by_key(|&i| labeling.label(i));
    VertexOrdering::from_flat(graph, &ids)
}

/// `(p - 1)(d + 1) - sum_t [L(z_t) + L(z_{t+1}) + delta(z_t, z_{t+1})]`.
pub fn greedy_span_identity(ordering: &VertexOrdering<'_>) -> i64 {
    let g = ordering.graph();
    let p = ordering.len() as i64;
    let sum: i64 = ordering
        .sequence()
        .windows(2)
        .map(|w| (g.level(w[0]) + g.level(w[1]) + g.delta(w[0], w[1])) as i64)
        .sum();
    (p - 1) * (g.diameter() as i64 + 1) - sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::Tree;

    fn z(x: usize, y: usize) -> ProductVertex {
        ProductVertex::new(x, y)
    }

    #[test]
    fn c4_greedy() {
        let g = ProductGraph::new(Tree::path(2).unwrap(), Tree::path(2).unwrap()).unwrap();
        let ord = VertexOrdering::new(&g, vec![z(0, 0), z(1, 1), z(1, 0), z(0, 1)]).unwrap();
        let lab = greedy_label(&ord).unwrap();
        let seq_labels: Vec<i64> = ord.sequence().iter().map(|&v| lab.label(g.flat(v))).collect();
        assert_eq!(seq_labels, vec![0, 1, 3, 4]);
        assert_eq!(lab.span(), 4);
        assert_eq!(greedy_span_identity(&ord), 4);
        assert!(verify(&g, &lab).unwrap().is_empty());
    }

    #[test]
    fn single_vertex() {
        let g = ProductGraph::new(Tree::path(1).unwrap(), Tree::path(1).unwrap()).unwrap();
        let ord = VertexOrdering::new(&g, vec![z(0, 0)]).unwrap();
        let lab = greedy_label(&ord).unwrap();
        assert_eq!(lab.labels(), &[0]);
        assert_eq!(lab.span(), 0);
    }

    #[test]
    fn duplicate_and_violation() {
        let g = ProductGraph::new(Tree::star(3).unwrap(), Tree::star(3).unwrap()).unwrap();
        let zeros = RadioLabeling::new(vec![0; 16]);
        assert!(matches!(
            verify(&g, &zeros),
            Err(Error::DuplicateLabel { first: 0, second: 1, label: 0 })
        ));
        // (0,0) and (0,1) are adjacent: need a gap of 4
        let labels: Vec<i64> = (0..16).map(|i| i as i64).collect();
        let violations = verify(&g, &RadioLabeling::new(labels)).unwrap();
        assert_eq!(
            violations[0],
            Violation { u: z(0, 0), v: z(0, 1), gap: 1, required: 4 }
        );
    }

    #[test]
    fn non_positive_increment_is_an_error() {
        // Vertex 1 hangs off the weight center 0 and carries two leaves 2, 3
        // of level 2, while the diameter is only 3.
        let t = Tree::from_edges(7, &[(0, 1), (1, 2), (1, 3), (0, 4), (0, 5), (0, 6)]).unwrap();
        let g = ProductGraph::new(t, Tree::path(1).unwrap()).unwrap();
        assert_eq!(g.diameter(), 3);
        let ord = VertexOrdering::from_flat(&g, &[2, 3, 0, 1, 4, 5, 6]).unwrap();
        assert_eq!(greedy_label(&ord), Err(Error::NegativeStep { position: 0, increment: 0 }));
    }

    #[test]
    fn feasible_steps_are_positive() {
        // Consecutive vertices of a feasible ordering have phi = 0, so
        // L(u) + L(v) + delta(u, v) = d(u, v) <= d.
        for (a, b) in [(5, 5), (4, 4), (4, 5), (2, 6)] {
            let g = ProductGraph::new(Tree::path(a).unwrap(), Tree::path(b).unwrap()).unwrap();
            let d = g.diameter();
            for u in g.vertices() {
                for v in g.vertices() {
                    if u != v && g.phi(u, v) == 0 {
                        assert!(g.level(u) + g.level(v) + g.delta(u, v) <= d);
                    }
                }
            }
        }
    }

    #[test]
    fn induced_ordering_sorts_labels() {
        let g = ProductGraph::new(Tree::path(1).unwrap(), Tree::path(3).unwrap()).unwrap();
        let lab = RadioLabeling::new(vec![5, 0, 3]);
        let ord = ordering_from_labeling(&g, &lab).unwrap();
        assert_eq!(ord.flat_ids(), vec![1, 2, 0]);
        assert!(ordering_from_labeling(&g, &RadioLabeling::new(vec![1, 1, 2])).is_err());
    }
}
