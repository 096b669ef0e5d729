#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

use radiotree::ordering::is_feasible_pair;
use radiotree::product::{ProductGraph, ProductVertex, SectorRelation};
use radiotree::tree::{enumerate_trees, Tree};

/// Uniform labeled tree on `order` vertices from a random Pruefer sequence.
pub fn random_tree<R: Rng>(rng: &mut R, order: usize) -> Tree {
    if order <= 2 {
        return Tree::path(order).unwrap();
    }
    let code: Vec<usize> = (0..order - 2).map(|_| rng.gen_range(0..order)).collect();
    let mut degree = vec![1usize; order];
    for &c in &code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(order - 1);
    for &c in &code {
        let leaf = (0..order).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..order).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Tree::from_edges(order, &edges).unwrap()
}

/// Every ordered pair of unlabeled trees whose product has between 2 and
/// `max_p` vertices.
pub fn tree_pairs_up_to(max_p: usize) -> Vec<(Tree, Tree)> {
    let mut out = Vec::new();
    for a in 1..=max_p {
        for b in 1..=max_p / a {
            if a * b < 2 {
                continue;
            }
            for t1 in enumerate_trees(a) {
                for t2 in enumerate_trees(b) {
                    out.push((t1.clone(), t2));
                }
            }
        }
    }
    out
}

/// BFS distances in the materialized product, as a full matrix.
pub fn product_bfs(g: &ProductGraph) -> Vec<Vec<u32>> {
    let adj = g.adjacency();
    (0..g.order())
        .map(|s| radiotree::product::bfs_distances(&adj, s))
        .collect()
}

fn pair_allowed(g: &ProductGraph, t: usize, a: ProductVertex, b: ProductVertex) -> bool {
    let p = g.order();
    if g.center_count() == 4 && t + 1 == p / 2 {
        g.sector_relation(a, b) == SectorRelation::Opposite
    } else {
        is_feasible_pair(g, a, b)
    }
}

/// A random ordering whose consecutive pairs follow the sector rule and whose
/// endpoints satisfy the level condition, found by randomized backtracking.
pub fn random_feasible_ordering<R: Rng>(g: &ProductGraph, rng: &mut R) -> Option<Vec<ProductVertex>> {
    let p = g.order();
    let want_end = if g.center_count() == 1 { 1 } else { 0 };
    let verts: Vec<ProductVertex> = g.vertices().collect();
    for _attempt in 0..200 {
        let mut starts: Vec<ProductVertex> = verts
            .iter()
            .copied()
            .filter(|&z| g.level(z) <= want_end)
            .collect();
        starts.shuffle(rng);
        let start = starts[0];
        let mut seq = vec![start];
        let mut used = vec![false; p];
        used[g.flat(start)] = true;
        let mut budget = 20_000usize;
        if extend(g, rng, &verts, &mut seq, &mut used, want_end, &mut budget) {
            return Some(seq);
        }
    }
    None
}

fn extend<R: Rng>(
    g: &ProductGraph,
    rng: &mut R,
    verts: &[ProductVertex],
    seq: &mut Vec<ProductVertex>,
    used: &mut Vec<bool>,
    want_end: u32,
    budget: &mut usize,
) -> bool {
    let p = g.order();
    if seq.len() == p {
        return g.level(seq[0]) + g.level(seq[p - 1]) == want_end;
    }
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    let last = *seq.last().unwrap();
    let t = seq.len() - 1;
    let mut cands: Vec<ProductVertex> = verts
        .iter()
        .copied()
        .filter(|&z| !used[g.flat(z)] && pair_allowed(g, t, last, z))
        .collect();
    cands.shuffle(rng);
    for z in cands {
        if seq.len() + 1 == p && g.level(seq[0]) + g.level(z) != want_end {
            continue;
        }
        used[g.flat(z)] = true;
        seq.push(z);
        if extend(g, rng, verts, seq, used, want_end, budget) {
            return true;
        }
        seq.pop();
        used[g.flat(z)] = false;
    }
    false
}
