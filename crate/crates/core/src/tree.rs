//! Trees rooted at their weight centers.
//!
//! A [`Tree`] is validated once at construction and then caches everything
//! the product machinery needs: the weight centers, the level of every vertex
//! (distance to the nearest weight center), the parent pointer toward that
//! center, the branch each vertex hangs in, and a binary-lifting table used to
//! find the deepest common ancestor of two vertices.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which part of a tree a vertex belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BranchTag {
    /// The vertex is a weight center; the index is its position in
    /// [`Tree::weight_centers`].
    Center(usize),
    /// The vertex lies in the branch with this id.
    Branch(usize),
}

/// How two vertices of one tree sit relative to the weight centers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchRelation {
    /// They share a common ancestor that is not a weight center.
    Same,
    /// Their only common ancestor is a weight center.
    Different,
    /// The tree has two weight centers and the vertices lie on different
    /// sides of the central edge.
    Opposite,
}

#[derive(Debug, Clone)]
pub struct Tree {
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    centers: Vec<usize>,
    level: Vec<u32>,
    parent: Vec<Option<usize>>,
    branch: Vec<BranchTag>,
    branch_count: usize,
    /// Index of the weight center whose side of the central edge holds the vertex.
    side: Vec<u8>,
    /// `lift[k][v]` is the 2^k-th ancestor of `v` (roots map to themselves).
    lift: Vec<Vec<usize>>,
    diameter: u32,
    total_level: u64,
}

impl Tree {
    /// Validates an edge list on `order` vertices and builds the rooted tree.
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if order == 0 {
            return Err(Error::NotATree("order must be positive".into()));
        }
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= order {
                    return Err(Error::BadIndex { index: w, order });
                }
            }
        }
        if edges.len() != order - 1 {
            return Err(Error::NotATree(format!(
                "{} edges on {} vertices",
                edges.len(),
                order
            )));
        }
        let mut adjacency = vec![Vec::new(); order];
        let mut seen = HashSet::new();
        for &(u, v) in edges {
            if u == v {
                return Err(Error::NotATree(format!("self-loop at {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::NotATree(format!("repeated edge {u}-{v}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let reached = bfs(&adjacency, 0).iter().filter(|d| d.is_some()).count();
        if reached != order {
            return Err(Error::NotATree(format!(
                "disconnected: {reached} of {order} vertices reachable"
            )));
        }
        Ok(Self::rooted(edges.to_vec(), adjacency))
    }

    /// The path `P_m` on vertices `0..m` with edges `i -- i+1`.
    pub fn path(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::NotATree("path order must be positive".into()));
        }
        let edges: Vec<_> = (1..m).map(|i| (i - 1, i)).collect();
        Self::from_edges(m, &edges)
    }

    /// The star `K_{1,n}`: hub `0` joined to leaves `1..=n`.
    pub fn star(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=n).map(|i| (0, i)).collect();
        Self::from_edges(n + 1, &edges)
    }

    /// Parses the text format: the order on the first line, then one
    /// whitespace-separated `u v` edge per line. Blank lines and `#` comments
    /// are ignored.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let first = lines
            .next()
            .ok_or_else(|| Error::Parse("empty tree description".into()))?;
        let order: usize = first
            .parse()
            .map_err(|_| Error::Parse(format!("bad order line {first:?}")))?;
        let mut edges = Vec::new();
        for line in lines {
            let nums: Vec<&str> = line.split_whitespace().collect();
            if nums.len() != 2 {
                return Err(Error::Parse(format!("bad edge line {line:?}")));
            }
            let parse = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad vertex {s:?}")))
            };
            edges.push((parse(nums[0])?, parse(nums[1])?));
        }
        Self::from_edges(order, &edges)
    }

    /// Parses a generator name: `path <m>`, `star <n>`, or the shorthand
    /// `path:<m>` / `star:<n>`. Returns `None` if `spec` is not a generator.
    pub fn from_generator(spec: &str) -> Option<Result<Self>> {
        let spec = spec.trim();
        let (kind, arg) = spec
            .split_once(':')
            .or_else(|| spec.split_once(char::is_whitespace))?;
        let arg = arg.trim();
        let parse = || {
            arg.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad generator size {arg:?}")))
        };
        match kind.trim() {
            "path" => Some(parse().and_then(Self::path)),
            "star" => Some(parse().and_then(Self::star)),
            _ => None,
        }
    }

    fn rooted(edges: Vec<(usize, usize)>, adjacency: Vec<Vec<usize>>) -> Self {
        let order = adjacency.len();
        let centers = weight_centers_of(&adjacency);

        // Multi-source BFS from the centers, never crossing the central edge.
        let mut level = vec![u32::MAX; order];
        let mut parent = vec![None; order];
        let mut side = vec![0u8; order];
        let mut queue = VecDeque::new();
        for (k, &c) in centers.iter().enumerate() {
            level[c] = 0;
            side[c] = k as u8;
            queue.push_back(c);
        }
        while let Some(u) = queue.pop_front() {
            for &v in &adjacency[u] {
                if level[v] == u32::MAX {
                    level[v] = level[u] + 1;
                    parent[v] = Some(u);
                    side[v] = side[u];
                    queue.push_back(v);
                }
            }
        }

        let mut heads: Vec<usize> = (0..order)
            .filter(|&v| level[v] == 1)
            .collect();
        heads.sort_unstable();
        let head_id: BTreeMap<usize, usize> =
            heads.iter().enumerate().map(|(i, &h)| (h, i)).collect();
        let mut branch = vec![BranchTag::Branch(0); order];
        let mut by_level: Vec<usize> = (0..order).collect();
        by_level.sort_by_key(|&v| level[v]);
        for &v in &by_level {
            branch[v] = match level[v] {
                0 => BranchTag::Center(centers.iter().position(|&c| c == v).unwrap()),
                1 => BranchTag::Branch(head_id[&v]),
                _ => branch[parent[v].unwrap()],
            };
        }

        let mut lift = vec![(0..order)
            .map(|v| parent[v].unwrap_or(v))
            .collect::<Vec<_>>()];
        let max_level = level.iter().copied().max().unwrap_or(0);
        let mut span = 1u32;
        while span < max_level {
            let prev = lift.last().unwrap();
            let next = (0..order).map(|v| prev[prev[v]]).collect();
            lift.push(next);
            span *= 2;
        }

        let diameter = {
            let far = farthest(&adjacency, 0).0;
            farthest(&adjacency, far).1
        };
        let total_level = level.iter().map(|&l| l as u64).sum();

        Self {
            edges,
            adjacency,
            centers,
            level,
            parent,
            branch,
            branch_count: heads.len(),
            side,
            lift,
            diameter,
            total_level,
        }
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    /// Weight centers, sorted by vertex index. Always one or two.
    pub fn weight_centers(&self) -> &[usize] {
        &self.centers
    }

    pub fn level(&self, v: usize) -> u32 {
        self.level[v]
    }

    pub fn levels(&self) -> &[u32] {
        &self.level
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn branch(&self, v: usize) -> BranchTag {
        self.branch[v]
    }

    /// Number of branches: subtrees hanging off a weight center, not
    /// counting the other center.
    pub fn branch_count(&self) -> usize {
        self.branch_count
    }

    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    /// Sum of all vertex levels.
    pub fn total_level(&self) -> u64 {
        self.total_level
    }

    pub fn is_center(&self, v: usize) -> bool {
        self.level[v] == 0
    }

    /// Maximum level over the common ancestors of `u` and `v`; zero when the
    /// two vertices hang off different weight centers.
    pub fn phi(&self, u: usize, v: usize) -> u32 {
        if self.side[u] != self.side[v] {
            return 0;
        }
        self.level[self.common_ancestor(u, v)]
    }

    /// One when the tree has two weight centers and `u`, `v` lie in different
    /// components of the tree minus the central edge.
    pub fn delta(&self, u: usize, v: usize) -> u32 {
        u32::from(self.side[u] != self.side[v])
    }

    /// Distance as `L(u) + L(v) + delta(u, v) - 2 phi(u, v)`.
    pub fn distance(&self, u: usize, v: usize) -> u32 {
        self.level[u] + self.level[v] + self.delta(u, v) - 2 * self.phi(u, v)
    }

    pub fn branch_relation(&self, u: usize, v: usize) -> BranchRelation {
        if self.delta(u, v) == 1 {
            BranchRelation::Opposite
        } else if self.phi(u, v) > 0 {
            BranchRelation::Same
        } else {
            BranchRelation::Different
        }
    }

    /// Deepest common ancestor of two vertices on the same side.
    fn common_ancestor(&self, mut u: usize, mut v: usize) -> usize {
        if self.level[u] < self.level[v] {
            std::mem::swap(&mut u, &mut v);
        }
        let mut gap = self.level[u] - self.level[v];
        let mut k = 0;
        while gap > 0 {
            if gap & 1 == 1 {
                u = self.lift[k][u];
            }
            gap >>= 1;
            k += 1;
        }
        if u == v {
            return u;
        }
        for k in (0..self.lift.len()).rev() {
            if self.lift[k][u] != self.lift[k][v] {
                u = self.lift[k][u];
                v = self.lift[k][v];
            }
        }
        self.lift[0][u]
    }

    /// BFS distances from `source`.
    pub fn bfs_distances(&self, source: usize) -> Vec<u32> {
        bfs(&self.adjacency, source)
            .into_iter()
            .map(|d| d.unwrap())
            .collect()
    }

    /// Isomorphism-invariant code of the tree rooted at `root`.
    pub fn rooted_code(&self, root: usize) -> String {
        rooted_code(&self.adjacency, root, usize::MAX)
    }

    /// Isomorphism-invariant code of the unrooted tree.
    pub fn canonical_code(&self) -> String {
        match self.centers[..] {
            [c] => rooted_code(&self.adjacency, c, usize::MAX),
            [a, b] => {
                let mut halves = [
                    rooted_code(&self.adjacency, a, b),
                    rooted_code(&self.adjacency, b, a),
                ];
                halves.sort();
                format!("{}|{}", halves[0], halves[1])
            }
            _ => unreachable!("a tree has one or two weight centers"),
        }
    }

    /// Orbit id of every vertex under the automorphism group. Two vertices
    /// share an id exactly when some automorphism maps one onto the other.
    /// Ids are assigned in order of first appearance.
    pub fn vertex_orbits(&self) -> Vec<usize> {
        let mut ids: BTreeMap<String, usize> = BTreeMap::new();
        (0..self.order())
            .map(|v| {
                let next = ids.len();
                *ids.entry(self.rooted_code(v)).or_insert(next)
            })
            .collect()
    }

    /// Text form accepted by [`Tree::parse_text`].
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.order());
        for (u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree(order={}, edges={:?})", self.order(), self.edges)
    }
}

/// Every unlabeled tree on `order` vertices, each exactly once.
pub fn enumerate_trees(order: usize) -> Vec<Tree> {
    if order == 0 {
        return Vec::new();
    }
    let mut layer = vec![Tree::path(1).unwrap()];
    for k in 2..=order {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for tree in &layer {
            for v in 0..tree.order() {
                let mut edges = tree.edges().to_vec();
                edges.push((v, k - 1));
                let grown = Tree::from_edges(k, &edges).unwrap();
                if seen.insert(grown.canonical_code()) {
                    next.push(grown);
                }
            }
        }
        layer = next;
    }
    layer
}

fn bfs(adjacency: &[Vec<usize>], source: usize) -> Vec<Option<u32>> {
    let mut dist = vec![None; adjacency.len()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &v in &adjacency[u] {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

fn farthest(adjacency: &[Vec<usize>], source: usize) -> (usize, u32) {
    bfs(adjacency, source)
        .into_iter()
        .enumerate()
        .map(|(v, d)| (v, d.unwrap()))
        .max_by_key(|&(v, d)| (d, std::cmp::Reverse(v)))
        .unwrap()
}

/// Weight centers by rerooting: moving the root from `u` to a child `c`
/// changes the total distance by `order - 2 * size(c)`.
fn weight_centers_of(adjacency: &[Vec<usize>]) -> Vec<usize> {
    let order = adjacency.len();
    let mut parent = vec![usize::MAX; order];
    let mut preorder = Vec::with_capacity(order);
    let mut depth = vec![0u64; order];
    let mut stack = vec![0];
    parent[0] = 0;
    while let Some(u) = stack.pop() {
        preorder.push(u);
        for &v in &adjacency[u] {
            if parent[v] == usize::MAX {
                parent[v] = u;
                depth[v] = depth[u] + 1;
                stack.push(v);
            }
        }
    }
    let mut size = vec![1u64; order];
    for &u in preorder.iter().rev().filter(|&&u| u != 0) {
        size[parent[u]] += size[u];
    }
    let mut weight = vec![0u64; order];
    weight[0] = depth.iter().sum();
    for &u in preorder.iter().filter(|&&u| u != 0) {
        weight[u] = weight[parent[u]] + order as u64 - 2 * size[u];
    }
    let best = *weight.iter().min().unwrap();
    (0..order).filter(|&v| weight[v] == best).collect()
}

fn rooted_code(adjacency: &[Vec<usize>], root: usize, blocked: usize) -> String {
    let mut children: Vec<String> = adjacency[root]
        .iter()
        .filter(|&&c| c != blocked)
        .map(|&c| rooted_code(adjacency, c, root))
        .collect();
    children.sort();
    format!("({})", children.concat())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(m: usize) -> Tree {
        Tree::path(m).unwrap()
    }

    #[test]
    fn path_four_has_two_middle_centers() {
        let t = Tree::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(t.weight_centers(), &[1, 2]);
        assert_eq!(t.levels(), &[1, 0, 0, 1]);
    }

    #[test]
    fn rejects_cycle_and_disconnected() {
        assert!(matches!(
            Tree::from_edges(3, &[(0, 1), (1, 2), (2, 0)]),
            Err(Error::NotATree(_))
        ));
        assert!(matches!(
            Tree::from_edges(4, &[(0, 1)]),
            Err(Error::NotATree(_))
        ));
        // right edge count but one component holds a cycle
        assert!(matches!(
            Tree::from_edges(4, &[(0, 1), (1, 2), (2, 0)]),
            Err(Error::NotATree(_))
        ));
        assert_eq!(
            Tree::from_edges(3, &[(0, 1), (1, 5)]).unwrap_err(),
            Error::BadIndex { index: 5, order: 3 }
        );
    }

    #[test]
    fn weight_centers_of_small_families() {
        assert_eq!(p(5).weight_centers(), &[2]);
        assert_eq!(p(4).weight_centers(), &[1, 2]);
        assert_eq!(Tree::star(5).unwrap().weight_centers(), &[0]);
        assert_eq!(p(1).weight_centers(), &[0]);
        assert_eq!(p(2).weight_centers(), &[0, 1]);
        assert_eq!(p(2).levels(), &[0, 0]);
        assert_eq!(p(1).total_level(), 0);
    }

    #[test]
    fn total_levels() {
        for n in 2..8 {
            assert_eq!(Tree::star(n).unwrap().total_level(), n as u64);
        }
        assert_eq!(Tree::star(1).unwrap().total_level(), 0);
        assert_eq!(p(5).total_level(), 6);
        assert_eq!(p(4).total_level(), 2);
        for m in 1..20u64 {
            let expect = if m % 2 == 1 { (m * m - 1) / 4 } else { m * (m - 2) / 4 };
            assert_eq!(p(m as usize).total_level(), expect);
        }
    }

    #[test]
    fn branch_relations() {
        let s = Tree::star(3).unwrap();
        assert_eq!(s.branch_relation(1, 2), BranchRelation::Different);
        assert_eq!(s.branch_relation(0, 2), BranchRelation::Different);
        assert_eq!(p(4).branch_relation(0, 3), BranchRelation::Opposite);
        assert_eq!(p(4).branch_relation(1, 2), BranchRelation::Opposite);
        assert_eq!(p(5).branch_relation(0, 1), BranchRelation::Same);
        assert_eq!(p(5).branch_relation(0, 0), BranchRelation::Same);
        assert_eq!(p(5).branch_relation(0, 4), BranchRelation::Different);
    }

    #[test]
    fn phi_delta_distance_examples() {
        let s = Tree::star(3).unwrap();
        assert_eq!(s.phi(1, 2), 0);
        // P5 with vertices 0..5, center 2: x1 -> 0, x2 -> 1
        assert_eq!(p(5).phi(0, 1), 1);
        assert_eq!(p(4).phi(0, 3), 0);
        assert_eq!(p(4).delta(0, 3), 1);
        assert_eq!(p(4).delta(0, 1), 0);
        assert_eq!(p(5).delta(0, 4), 0);
        assert_eq!(p(4).distance(0, 3), 3);
        assert_eq!(p(5).distance(0, 1), 1);
        for v in 0..5 {
            assert_eq!(p(5).distance(v, v), 0);
        }
    }

    #[test]
    fn branches_numbered_by_head_index() {
        let t = Tree::from_edges(6, &[(0, 3), (0, 1), (0, 5), (5, 2), (1, 4)]).unwrap();
        assert_eq!(t.weight_centers(), &[0]);
        assert_eq!(t.branch(0), BranchTag::Center(0));
        assert_eq!(t.branch(1), BranchTag::Branch(0));
        assert_eq!(t.branch(4), BranchTag::Branch(0));
        assert_eq!(t.branch(3), BranchTag::Branch(1));
        assert_eq!(t.branch(2), BranchTag::Branch(2));
        assert_eq!(t.branch_count(), 3);
        assert_eq!(p(6).branch_count(), 2);
    }

    #[test]
    fn text_and_generators() {
        let t = Tree::parse_text("4\n0 1\n# comment\n1 2\n2 3\n").unwrap();
        assert_eq!(t.weight_centers(), &[1, 2]);
        assert_eq!(Tree::parse_text(&t.to_text()).unwrap().edges(), t.edges());
        assert_eq!(Tree::from_generator("path:5").unwrap().unwrap().order(), 5);
        assert_eq!(Tree::from_generator("star 4").unwrap().unwrap().order(), 5);
        assert!(Tree::from_generator("trees/foo.txt").is_none());
        assert!(matches!(Tree::parse_text("3\n0 1 2\n"), Err(Error::Parse(_))));
    }

    #[test]
    fn unlabeled_tree_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| enumerate_trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
    }

    #[test]
    fn orbits_of_path_and_star() {
        assert_eq!(p(4).vertex_orbits(), vec![0, 1, 1, 0]);
        assert_eq!(p(5).vertex_orbits(), vec![0, 1, 2, 1, 0]);
        assert_eq!(Tree::star(3).unwrap().vertex_orbits(), vec![0, 1, 1, 1]);
    }
}
