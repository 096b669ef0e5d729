//! Exact radio number by exhaustive search.
//!
//! # Reduction
//!
//! Sort the vertices of any radio labeling by label and, walking left to
//! right, lower each label to the smallest value its predecessors allow.
//! Constraints towards later vertices only get looser, the order is kept
//! (every predecessor forces a gap of at least one), and the span does not
//! grow. So some optimal labeling is *tight*: each label is the least value
//! admissible given all earlier vertices. The search enumerates orderings and
//! assigns tight labels, which leaves at most `p!` candidates.
//!
//! # Search
//!
//! Iterative deepening on a target span `T`: for `T` from a root lower bound
//! upwards, decide whether some tight labeling has span at most `T`. The
//! first feasible `T` is the radio number. Pruning uses two bounds that only
//! rely on graph distances:
//!
//! * every unplaced vertex must be labeled at least its current requirement;
//! * for any vertex `c`, the triangle inequality bounds each remaining step
//!   `d(z_t, z_{t+1}) <= r_c(z_t) + r_c(z_{t+1})` with `r_c = d(c, .)`, so the
//!   remaining labels need at least `k(d+1) - r_c(last) - 2 sum r_c + min r_c`.
//!
//! A placed vertex whose label trails the last label by `d - 1` or more can
//! no longer bind any future vertex, so the remaining subproblem depends only
//! on the placed set and the recent window. Failed subproblems are remembered
//! in a per-branch transposition table keyed on that pair.
//!
//! The first vertex is restricted to one representative per orbit of the
//! factor automorphism groups, and the last vertex to an orbit no smaller
//! than the first (reversing a labeling keeps its span).

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering as AtomicOrdering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labeling::RadioLabeling;
use crate::product::{bfs_distances, ProductGraph, ProductVertex};

/// Hard limit on the product order for [`exact_rn`].
pub const MAX_ORACLE_ORDER: usize = 20;
/// Hard limit for [`naive_rn`].
pub const MAX_NAIVE_ORDER: usize = 6;
/// Hard limit for [`brute_force_weight_centers`].
pub const MAX_BRUTE_CENTER_ORDER: usize = 4096;

const MEMO_CAPACITY: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_seconds: u64,
    /// A known attainable span, used as the upper end of a bracket when the
    /// budget runs out before the search finds anything better.
    pub initial_upper_bound: Option<i64>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_nodes: u64::MAX,
            max_seconds: 600,
            initial_upper_bound: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Restrict the first and last vertices using factor automorphisms.
    pub symmetry_breaking: bool,
    /// Worker threads for the top-level branches; 0 uses the rayon default.
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            symmetry_breaking: true,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleStatus {
    Exact,
    Bracket,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub status: OracleStatus,
    /// Largest span proven infeasible, plus one.
    pub lo: i64,
    /// Smallest span realized by a known labeling (or the caller's bound).
    pub hi: i64,
    pub nodes_explored: u64,
    /// A labeling of span `hi`, when one was constructed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labeling: Option<RadioLabeling>,
}

impl OracleResult {
    /// The radio number, when the search completed.
    pub fn value(&self) -> Option<i64> {
        (self.status == OracleStatus::Exact).then_some(self.lo)
    }
}

/// Exact radio number with default options.
pub fn exact_rn(g: &ProductGraph, budget: SearchBudget) -> Result<OracleResult> {
    exact_rn_with(g, budget, SearchOptions::default())
}

pub fn exact_rn_with(
    g: &ProductGraph,
    budget: SearchBudget,
    options: SearchOptions,
) -> Result<OracleResult> {
    let p = g.order();
    if p > MAX_ORACLE_ORDER {
        return Err(Error::SizeGuard {
            what: "product order for exact search",
            actual: p,
            limit: MAX_ORACLE_ORDER,
        });
    }
    if p == 1 {
        return Ok(OracleResult {
            status: OracleStatus::Exact,
            lo: 0,
            hi: 0,
            nodes_explored: 0,
            labeling: Some(RadioLabeling::new(vec![0])),
        });
    }
    let problem = Problem::new(g, options.symmetry_breaking);
    let (mut best_span, mut best_labels) = problem.greedy_incumbent();
    let mut hi = best_span;
    if let Some(ub) = budget.initial_upper_bound {
        hi = hi.min(ub);
    }

    let deadline = Instant::now() + Duration::from_secs(budget.max_seconds);
    let shared = Shared {
        nodes: AtomicU64::new(0),
        max_nodes: budget.max_nodes,
        deadline,
        aborted: AtomicBool::new(false),
    };
    let mut branches: Vec<Branch> = problem
        .starts
        .iter()
        .map(|&s| Branch::new(&problem, s))
        .collect();
    let mut target = branches
        .iter()
        .map(|b| b.root_bound)
        .min()
        .unwrap_or(0);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs)
        .build()
        .map_err(|e| Error::BadParams(format!("thread pool: {e}")))?;

    while target < best_span {
        let outcomes: Vec<Option<Vec<i64>>> = pool.install(|| {
            branches
                .par_iter_mut()
                .map(|b| b.decide(&problem, target, &shared))
                .collect()
        });
        // Every smaller target was refuted, so any solution here is optimal.
        if let Some(labels) = outcomes.into_iter().flatten().next() {
            best_span = target;
            best_labels = labels;
            break;
        }
        if shared.aborted.load(AtomicOrdering::Relaxed) {
            return Ok(OracleResult {
                status: OracleStatus::Bracket,
                lo: target,
                hi,
                nodes_explored: shared.nodes.load(AtomicOrdering::Relaxed),
                labeling: (hi == best_span).then(|| RadioLabeling::new(best_labels)),
            });
        }
        target += 1;
    }
    Ok(OracleResult {
        status: OracleStatus::Exact,
        lo: best_span,
        hi: best_span,
        nodes_explored: shared.nodes.load(AtomicOrdering::Relaxed),
        labeling: Some(RadioLabeling::new(best_labels)),
    })
}

struct Shared {
    nodes: AtomicU64,
    max_nodes: u64,
    deadline: Instant,
    aborted: AtomicBool,
}

impl Shared {
    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, AtomicOrdering::Relaxed);
        if n >= self.max_nodes || (n % 4096 == 0 && Instant::now() >= self.deadline) {
            self.aborted.store(true, AtomicOrdering::Relaxed);
        }
        self.aborted.load(AtomicOrdering::Relaxed)
    }
}

struct Problem {
    p: usize,
    /// `d + 1`.
    reach: i64,
    dist: Vec<Vec<i64>>,
    orbit: Vec<usize>,
    starts: Vec<usize>,
    symmetry: bool,
}

impl Problem {
    fn new(g: &ProductGraph, symmetry: bool) -> Self {
        let p = g.order();
        let adjacency = g.adjacency();
        let dist: Vec<Vec<i64>> = (0..p)
            .map(|s| bfs_distances(&adjacency, s).into_iter().map(i64::from).collect())
            .collect();
        let reach = dist.iter().flatten().copied().max().unwrap_or(0) + 1;
        let (o1, o2) = (g.t1().vertex_orbits(), g.t2().vertex_orbits());
        let k2 = o2.iter().max().map_or(1, |m| m + 1);
        let orbit: Vec<usize> = (0..p)
            .map(|id| {
                let z = g.vertex(id);
                o1[z.x] * k2 + o2[z.y]
            })
            .collect();
        let starts = if symmetry {
            let mut seen = std::collections::HashSet::new();
            (0..p).filter(|&v| seen.insert(orbit[v])).collect()
        } else {
            (0..p).collect()
        };
        Self {
            p,
            reach,
            dist,
            orbit,
            starts,
            symmetry,
        }
    }

    /// Best tight labeling over the greedy "smallest next label" orderings
    /// from every start vertex.
    fn greedy_incumbent(&self) -> (i64, Vec<i64>) {
        let mut best: Option<(i64, Vec<i64>)> = None;
        for start in 0..self.p {
            let mut labels = vec![i64::MIN; self.p];
            let mut req = vec![0i64; self.p];
            let mut placed = vec![false; self.p];
            let mut v = start;
            let mut f = 0;
            for _ in 0..self.p {
                labels[v] = f;
                placed[v] = true;
                for u in 0..self.p {
                    req[u] = req[u].max(f + self.reach - self.dist[v][u]);
                }
                match (0..self.p).filter(|&u| !placed[u]).min_by_key(|&u| (req[u], u)) {
                    Some(u) => {
                        v = u;
                        f = req[u];
                    }
                    None => break,
                }
            }
            if best.as_ref().map_or(true, |(s, _)| f < *s) {
                best = Some((f, labels));
            }
        }
        best.unwrap()
    }
}

struct Branch {
    start: usize,
    root_bound: i64,
    memo: HashMap<(u32, u128), i64>,
}

struct Frame {
    placed: u32,
    last: usize,
    label: i64,
    req: Vec<i64>,
    /// `sum_{v unplaced} d(c, v)` for every `c`.
    radius_sums: Vec<i64>,
}

impl Branch {
    fn new(problem: &Problem, start: usize) -> Self {
        let frame = Frame::root(problem, start);
        let root_bound = frame.lower_bound(problem);
        Self {
            start,
            root_bound,
            memo: HashMap::new(),
        }
    }

    /// Searches for a tight labeling starting at `self.start` with span at
    /// most `target`; returns labels by vertex id.
    fn decide(&mut self, problem: &Problem, target: i64, shared: &Shared) -> Option<Vec<i64>> {
        let mut labels = vec![0i64; problem.p];
        let root = Frame::root(problem, self.start);
        if self.dfs(problem, &root, target, shared, &mut labels) {
            Some(labels)
        } else {
            None
        }
    }

    fn dfs(
        &mut self,
        problem: &Problem,
        frame: &Frame,
        target: i64,
        shared: &Shared,
        labels: &mut [i64],
    ) -> bool {
        if shared.tick() {
            return false;
        }
        labels[frame.last] = frame.label;
        let full = if problem.p == 32 { u32::MAX } else { (1u32 << problem.p) - 1 };
        if frame.placed == full {
            return !problem.symmetry || problem.orbit[frame.last] >= problem.orbit[self.start];
        }
        if frame.lower_bound(problem) > target {
            return false;
        }
        let key = frame.window_key(problem, labels);
        let budget = target - frame.label;
        if let Some(k) = key {
            if self.memo.get(&k).is_some_and(|&failed| failed >= budget) {
                return false;
            }
        }
        let mut children: Vec<usize> = (0..problem.p)
            .filter(|&v| frame.placed & (1 << v) == 0 && frame.req[v] <= target)
            .collect();
        children.sort_by_key(|&v| (frame.req[v], v));
        for v in children {
            let child = frame.place(problem, v);
            if self.dfs(problem, &child, target, shared, labels) {
                return true;
            }
            if shared.aborted.load(AtomicOrdering::Relaxed) {
                return false;
            }
        }
        if let Some(k) = key {
            if self.memo.len() < MEMO_CAPACITY || self.memo.contains_key(&k) {
                let entry = self.memo.entry(k).or_insert(budget);
                *entry = (*entry).max(budget);
            }
        }
        false
    }
}

impl Frame {
    fn root(problem: &Problem, start: usize) -> Self {
        let p = problem.p;
        let radius_sums = (0..p)
            .map(|c| (0..p).filter(|&v| v != start).map(|v| problem.dist[c][v]).sum())
            .collect();
        let req = (0..p)
            .map(|u| problem.reach - problem.dist[start][u])
            .collect();
        Self {
            placed: 1 << start,
            last: start,
            label: 0,
            req,
            radius_sums,
        }
    }

    fn place(&self, problem: &Problem, v: usize) -> Self {
        let label = self.req[v];
        let req = (0..problem.p)
            .map(|u| self.req[u].max(label + problem.reach - problem.dist[v][u]))
            .collect();
        let radius_sums = self
            .radius_sums
            .iter()
            .enumerate()
            .map(|(c, s)| s - problem.dist[c][v])
            .collect();
        Self {
            placed: self.placed | (1 << v),
            last: v,
            label,
            req,
            radius_sums,
        }
    }

    fn lower_bound(&self, problem: &Problem) -> i64 {
        let p = problem.p;
        let remaining: Vec<usize> = (0..p).filter(|&v| self.placed & (1 << v) == 0).collect();
        let k = remaining.len() as i64;
        if k == 0 {
            return self.label;
        }
        let by_requirement = remaining.iter().map(|&v| self.req[v]).max().unwrap();
        let mut best_path = i64::MAX;
        for c in 0..p {
            let row = &problem.dist[c];
            let min_r = remaining.iter().map(|&v| row[v]).min().unwrap();
            best_path = best_path.min(row[self.last] + 2 * self.radius_sums[c] - min_r);
        }
        let by_triangle = self.label + k * problem.reach - best_path;
        by_requirement.max(by_triangle).max(self.label + k)
    }

    /// Placed set plus every placed vertex within `d - 2` of the last label,
    /// packed as `(gap, vertex)` pairs. `None` if the window is too wide to pack.
    fn window_key(&self, problem: &Problem, labels: &[i64]) -> Option<(u32, u128)> {
        let horizon = problem.reach - 3;
        let mut entries: Vec<(i64, usize)> = (0..problem.p)
            .filter(|&u| self.placed & (1 << u) != 0)
            .map(|u| (self.label - labels[u], u))
            .filter(|&(gap, _)| gap <= horizon)
            .collect();
        if entries.len() > 11 {
            return None;
        }
        entries.sort_unstable();
        // 11 bits per entry: a marker bit, 5 bits of gap, 5 bits of vertex.
        let mut packed = 0u128;
        for (gap, u) in entries {
            packed = (packed << 11) | (1 << 10) | ((gap as u128) << 5) | u as u128;
        }
        Some((self.placed, packed))
    }
}

/// Radio number by direct search over label assignments, without orderings
/// or bounds. Only for tiny products; used to cross-check [`exact_rn`].
pub fn naive_rn(g: &ProductGraph) -> Result<(i64, RadioLabeling)> {
    let p = g.order();
    if p > MAX_NAIVE_ORDER {
        return Err(Error::SizeGuard {
            what: "product order for naive search",
            actual: p,
            limit: MAX_NAIVE_ORDER,
        });
    }
    let d = g.diameter() as i64;
    let verts: Vec<ProductVertex> = g.vertices().collect();
    let need: Vec<Vec<i64>> = verts
        .iter()
        .map(|&a| verts.iter().map(|&b| d + 1 - g.distance(a, b) as i64).collect())
        .collect();

    fn assign(i: usize, span: i64, need: &[Vec<i64>], labels: &mut Vec<i64>) -> bool {
        if i == need.len() {
            return labels.contains(&0);
        }
        for f in 0..=span {
            if (0..i).all(|j| (labels[j] - f).abs() >= need[i][j]) {
                labels.push(f);
                if assign(i + 1, span, need, labels) {
                    return true;
                }
                labels.pop();
            }
        }
        false
    }

    let mut span = 0;
    loop {
        let mut labels = Vec::with_capacity(p);
        if assign(0, span, &need, &mut labels) {
            return Ok((span, RadioLabeling::new(labels)));
        }
        span += 1;
    }
}

/// Weight centers of the materialized product by summing BFS distances.
pub fn brute_force_weight_centers(g: &ProductGraph) -> Result<Vec<ProductVertex>> {
    let p = g.order();
    if p > MAX_BRUTE_CENTER_ORDER {
        return Err(Error::SizeGuard {
            what: "product order for brute-force centers",
            actual: p,
            limit: MAX_BRUTE_CENTER_ORDER,
        });
    }
    let adjacency = g.adjacency();
    let weights: Vec<u64> = (0..p)
        .map(|s| bfs_distances(&adjacency, s).iter().map(|&d| d as u64).sum())
        .collect();
    let best = *weights.iter().min().unwrap();
    Ok((0..p)
        .filter(|&v| weights[v] == best)
        .map(|v| g.vertex(v))
        .collect())
}
