//! The Cartesian product of two trees.
//!
//! Distances, levels, `phi` and `delta` are never computed on the product
//! itself; they are sums of the per-factor quantities. The product adjacency
//! is only materialized on request (DOT export, brute-force checks).

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::{BranchRelation, BranchTag, Tree};

/// Largest product order accepted by [`ProductGraph::new`].
pub const MAX_PRODUCT_ORDER: usize = 100_000;

/// A vertex `(x, y)` with `x` in the first factor and `y` in the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProductVertex {
    pub x: usize,
    pub y: usize,
}

impl ProductVertex {
    pub fn new(x: usize, y: usize) -> Self {
        Self { x, y }
    }
}

impl fmt::Display for ProductVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Sector of a product vertex. All vertices whose coordinates are both
/// weight centers share the single `Core` sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SectorId {
    Core,
    Cell(BranchTag, BranchTag),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SectorRelation {
    Same,
    Different,
    Opposite,
    Separate,
}

/// Distance between two product vertices together with its decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metrics {
    pub distance: u32,
    pub phi: u32,
    pub delta: u32,
}

#[derive(Debug, Clone)]
pub struct ProductGraph {
    t1: Tree,
    t2: Tree,
    diameter: u32,
    centers: Vec<ProductVertex>,
    level: Vec<u32>,
    sector: Vec<SectorId>,
}

impl ProductGraph {
    pub fn new(t1: Tree, t2: Tree) -> Result<Self> {
        let p = t1.order() * t2.order();
        if p > MAX_PRODUCT_ORDER {
            return Err(Error::SizeGuard {
                what: "product order",
                actual: p,
                limit: MAX_PRODUCT_ORDER,
            });
        }
        let n = t2.order();
        let centers = t1
            .weight_centers()
            .iter()
            .flat_map(|&x| t2.weight_centers().iter().map(move |&y| ProductVertex::new(x, y)))
            .collect();
        let level = (0..p).map(|id| t1.level(id / n) + t2.level(id % n)).collect();
        let sector = (0..p)
            .map(|id| match (t1.branch(id / n), t2.branch(id % n)) {
                (BranchTag::Center(_), BranchTag::Center(_)) => SectorId::Core,
                (a, b) => SectorId::Cell(a, b),
            })
            .collect();
        Ok(Self {
            diameter: t1.diameter() + t2.diameter(),
            t1,
            t2,
            centers,
            level,
            sector,
        })
    }

    pub fn t1(&self) -> &Tree {
        &self.t1
    }

    pub fn t2(&self) -> &Tree {
        &self.t2
    }

    /// Number of vertices `p = m n`.
    pub fn order(&self) -> usize {
        self.level.len()
    }

    /// `d = d1 + d2`.
    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    /// Weight centers: the Cartesian product of the factor center sets.
    pub fn weight_centers(&self) -> &[ProductVertex] {
        &self.centers
    }

    pub fn center_count(&self) -> usize {
        self.centers.len()
    }

    /// `|W(T1)| + |W(T2)| - 2`.
    pub fn xi(&self) -> u32 {
        (self.t1.weight_centers().len() + self.t2.weight_centers().len() - 2) as u32
    }

    pub fn flat(&self, z: ProductVertex) -> usize {
        z.x * self.t2.order() + z.y
    }

    pub fn vertex(&self, id: usize) -> ProductVertex {
        let n = self.t2.order();
        ProductVertex::new(id / n, id % n)
    }

    pub fn vertices(&self) -> impl Iterator<Item = ProductVertex> + '_ {
        (0..self.order()).map(|id| self.vertex(id))
    }

    pub fn contains(&self, z: ProductVertex) -> bool {
        z.x < self.t1.order() && z.y < self.t2.order()
    }

    pub fn level(&self, z: ProductVertex) -> u32 {
        self.level[self.flat(z)]
    }

    pub fn sector(&self, z: ProductVertex) -> SectorId {
        self.sector[self.flat(z)]
    }

    pub fn distance(&self, a: ProductVertex, b: ProductVertex) -> u32 {
        self.t1.distance(a.x, b.x) + self.t2.distance(a.y, b.y)
    }

    pub fn phi(&self, a: ProductVertex, b: ProductVertex) -> u32 {
        self.t1.phi(a.x, b.x) + self.t2.phi(a.y, b.y)
    }

    pub fn delta(&self, a: ProductVertex, b: ProductVertex) -> u32 {
        self.t1.delta(a.x, b.x) + self.t2.delta(a.y, b.y)
    }

    pub fn metrics(&self, a: ProductVertex, b: ProductVertex) -> Metrics {
        Metrics {
            distance: self.distance(a, b),
            phi: self.phi(a, b),
            delta: self.delta(a, b),
        }
    }

    pub fn sector_relation(&self, a: ProductVertex, b: ProductVertex) -> SectorRelation {
        use BranchRelation::*;
        match (
            self.t1.branch_relation(a.x, b.x),
            self.t2.branch_relation(a.y, b.y),
        ) {
            (Same, _) | (_, Same) => SectorRelation::Same,
            (Different, Different) => SectorRelation::Different,
            (Opposite, Opposite) => SectorRelation::Separate,
            _ => SectorRelation::Opposite,
        }
    }

    /// Number of distinct sectors,
    /// `|W1| b2 + b1 |W2| + b1 b2 + 1` with `b_i` the branch counts.
    pub fn sector_count(&self) -> usize {
        let (w1, w2) = (
            self.t1.weight_centers().len(),
            self.t2.weight_centers().len(),
        );
        let (b1, b2) = (self.t1.branch_count(), self.t2.branch_count());
        w1 * b2 + b1 * w2 + b1 * b2 + 1
    }

    /// Materialized adjacency lists over flat ids.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let n = self.t2.order();
        self.vertices()
            .map(|z| {
                let mut out: Vec<usize> = self
                    .t1
                    .neighbors(z.x)
                    .iter()
                    .map(|&x| x * n + z.y)
                    .chain(self.t2.neighbors(z.y).iter().map(|&y| z.x * n + y))
                    .collect();
                out.sort_unstable();
                out
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.t1.order() * (self.t2.order() - 1) + self.t2.order() * (self.t1.order() - 1)
    }

    /// Product edges as flat-id pairs `(a, b)` with `a < b`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adjacency()
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect()
    }
}

/// BFS distances over materialized adjacency lists.
pub fn bfs_distances(adjacency: &[Vec<usize>], source: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; adjacency.len()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &v in &adjacency[u] {
            if dist[v] == u32::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}
