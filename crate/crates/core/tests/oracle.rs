mod common;

use radiotree::bounds::lower_bound;
use radiotree::labeling::verify;
use radiotree::oracle::{
    exact_rn, exact_rn_with, naive_rn, OracleStatus, SearchBudget, SearchOptions,
};
use radiotree::product::ProductGraph;
use radiotree::tree::Tree;

/// Every pair with `p <= 10`, plus the pairs with `p` in 11..=12 where both
/// factors are nontrivial.
fn pairs() -> Vec<(Tree, Tree)> {
    common::tree_pairs_up_to(12)
        .into_iter()
        .filter(|(a, b)| a.order() * b.order() <= 10 || (a.order() > 1 && b.order() > 1))
        .collect()
}

fn budget() -> SearchBudget {
    SearchBudget { max_nodes: u64::MAX, max_seconds: 120, initial_upper_bound: None }
}

/// Minimum span over all vertex orders with tight labels, by plain
/// enumeration of permutations on BFS distances.
fn permutation_rn(g: &ProductGraph) -> i64 {
    let dist = common::product_bfs(g);
    let d = g.diameter() as i64;
    let p = g.order();
    let mut best = i64::MAX;
    let mut order: Vec<usize> = Vec::with_capacity(p);
    let mut labels: Vec<i64> = Vec::with_capacity(p);
    let mut used = vec![false; p];
    fn rec(
        dist: &[Vec<u32>],
        d: i64,
        order: &mut Vec<usize>,
        labels: &mut Vec<i64>,
        used: &mut [bool],
        best: &mut i64,
    ) {
        let p = used.len();
        if let Some(&last) = labels.last() {
            if last >= *best {
                return;
            }
        }
        if order.len() == p {
            *best = *labels.last().unwrap();
            return;
        }
        for v in 0..p {
            if used[v] {
                continue;
            }
            let f = order
                .iter()
                .zip(labels.iter())
                .map(|(&u, &fu)| fu + d + 1 - dist[u][v] as i64)
                .max()
                .unwrap_or(0);
            used[v] = true;
            order.push(v);
            labels.push(f);
            rec(dist, d, order, labels, used, best);
            labels.pop();
            order.pop();
            used[v] = false;
        }
    }
    rec(&dist, d, &mut order, &mut labels, &mut used, &mut best);
    best
}

#[test]
fn agrees_with_naive_label_search() {
    for (t1, t2) in common::tree_pairs_up_to(6) {
        let g = ProductGraph::new(t1, t2).unwrap();
        let exact = exact_rn(&g, budget()).unwrap();
        let (naive, lab) = naive_rn(&g).unwrap();
        assert_eq!(exact.value(), Some(naive), "{} x {}", g.t1(), g.t2());
        assert!(verify(&g, &lab).unwrap().is_empty());
    }
}

#[test]
fn agrees_with_permutation_enumeration() {
    for (t1, t2) in common::tree_pairs_up_to(8) {
        if t1.order() * t2.order() < 7 {
            continue;
        }
        let g = ProductGraph::new(t1, t2).unwrap();
        let exact = exact_rn(&g, budget()).unwrap();
        assert_eq!(exact.value(), Some(permutation_rn(&g)), "{} x {}", g.t1(), g.t2());
    }
}

#[test]
fn labelings_verify_and_respect_bound() {
    for (t1, t2) in pairs() {
        let g = ProductGraph::new(t1, t2).unwrap();
        let r = exact_rn(&g, budget()).unwrap();
        let lab = r.labeling.clone().unwrap();
        assert!(verify(&g, &lab).unwrap().is_empty());
        assert_eq!(lab.span(), r.value().unwrap());
        assert!(r.lo >= lower_bound(&g).value || g.order() == 1);
    }
}

#[test]
fn symmetry_breaking_and_swap_do_not_change_value() {
    let off = SearchOptions { symmetry_breaking: false, jobs: 1 };
    for (t1, t2) in pairs() {
        let g = ProductGraph::new(t1.clone(), t2.clone()).unwrap();
        let swapped = ProductGraph::new(t2, t1).unwrap();
        let a = exact_rn(&g, budget()).unwrap().value();
        let b = exact_rn_with(&g, budget(), off).unwrap().value();
        let c = exact_rn(&swapped, budget()).unwrap().value();
        assert_eq!(a, b, "{} x {}", g.t1(), g.t2());
        assert_eq!(a, c, "{} x {}", g.t1(), g.t2());
    }
}

#[test]
fn deterministic_across_worker_counts() {
    let g = ProductGraph::new(Tree::path(4).unwrap(), Tree::path(4).unwrap()).unwrap();
    let one = exact_rn_with(&g, budget(), SearchOptions { symmetry_breaking: true, jobs: 1 }).unwrap();
    let four = exact_rn_with(&g, budget(), SearchOptions { symmetry_breaking: true, jobs: 4 }).unwrap();
    assert_eq!(one, four);
    assert_eq!(one.value(), Some(46));
}

#[test]
fn exhausted_budget_reports_bracket() {
    let g = ProductGraph::new(Tree::path(4).unwrap(), Tree::path(4).unwrap()).unwrap();
    let tight = SearchBudget { max_nodes: 500, max_seconds: 60, initial_upper_bound: None };
    let r = exact_rn(&g, tight).unwrap();
    assert_eq!(r.status, OracleStatus::Bracket);
    assert!(r.lo <= 46 && 46 <= r.hi, "{r:?}");
    assert!(r.lo >= lower_bound(&g).value);
    if let Some(lab) = &r.labeling {
        assert_eq!(lab.span(), r.hi);
        assert!(verify(&g, lab).unwrap().is_empty());
    }
}
