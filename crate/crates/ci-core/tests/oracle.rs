//! Naive-oracle equivalence for the intensity components.
//!
//! The oracle materialises both circles as explicit sets and evaluates the
//! four component formulas with literal double loops over ordered pairs,
//! sharing no code with the production path.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ci_core::{ci_components, Graph, NodeId};

fn naive_circle(g: &Graph, i: NodeId, j: NodeId) -> BTreeSet<NodeId> {
    let mut set: BTreeSet<NodeId> = g.neighbors(i).iter().copied().collect();
    set.insert(i);
    set.remove(&j);
    set
}

struct NaiveComponents {
    actual: f64,
    actual_overlap: f64,
    expected: f64,
    expected_overlap: f64,
    /// Uncorrected difference: cross-circle count minus plain expectation.
    raw: f64,
}

fn naive_components(g: &Graph, i: NodeId, j: NodeId) -> NaiveComponents {
    let si = naive_circle(g, i, j);
    let sj = naive_circle(g, j, i);
    let inter: BTreeSet<NodeId> = si.intersection(&sj).copied().collect();
    let adj = |u: NodeId, v: NodeId| if g.has_edge(u, v) { 1.0 } else { 0.0 };
    let k = |u: NodeId| g.degree(u) as f64;
    let two_m = 2.0 * g.edge_count() as f64;

    let mut actual = 0.0;
    for &u in &si {
        for &v in &sj {
            actual += adj(u, v);
        }
    }
    let mut actual_overlap = 0.0;
    for &u in &inter {
        for &v in &inter {
            actual_overlap += adj(u, v);
        }
    }
    actual_overlap *= 0.5;

    let ks_i: f64 = si.iter().map(|&u| k(u)).sum();
    let ks_j: f64 = sj.iter().map(|&u| k(u)).sum();
    let expected = ks_i * ks_j / two_m;

    let mut squares = 0.0;
    for &u in &inter {
        squares += k(u) * k(u);
    }
    let mut cross = 0.0;
    for &u in &inter {
        for &v in &inter {
            if u != v {
                cross += k(u) * k(v);
            }
        }
    }
    let expected_overlap = (squares + 0.5 * cross) / two_m;

    NaiveComponents {
        actual,
        actual_overlap,
        expected,
        expected_overlap,
        raw: actual - expected,
    }
}

/// Number of distinct edges `{u, v}` admitting an assignment with one
/// endpoint in each circle, found by brute-force set scan.
fn assignable_edges(g: &Graph, i: NodeId, j: NodeId) -> usize {
    let si = naive_circle(g, i, j);
    let sj = naive_circle(g, j, i);
    g.edges()
        .iter()
        .filter(|&&(u, v)| {
            (si.contains(&u) && sj.contains(&v)) || (si.contains(&v) && sj.contains(&u))
        })
        .count()
}

fn connected(g: &Graph) -> bool {
    if g.node_count() == 0 {
        return false;
    }
    let mut seen = vec![false; g.node_count()];
    let mut stack = vec![0 as NodeId];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &v in g.neighbors(u) {
            if !seen[v as usize] {
                seen[v as usize] = true;
                stack.push(v);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn random_graph(rng: &mut ChaCha8Rng, n: u32, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_numeric_edges(n, &edges).unwrap()
}

#[test]
fn components_match_naive_oracle_on_small_connected_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC1);
    let mut checked = 0usize;
    while checked < 300 {
        let n = rng.gen_range(2..=8);
        let p = rng.gen_range(0.25..0.9);
        let g = random_graph(&mut rng, n, p);
        if g.edge_count() == 0 || !connected(&g) {
            continue;
        }
        checked += 1;
        for &(u, v) in g.edges() {
            let got = ci_components(&g, u, v).unwrap();
            let want = naive_components(&g, u, v);
            assert!((got.actual - want.actual).abs() < 1e-12);
            assert!((got.actual_overlap - want.actual_overlap).abs() < 1e-12);
            assert!((got.expected - want.expected).abs() < 1e-12);
            assert!((got.expected_overlap - want.expected_overlap).abs() < 1e-12);
            // corrected score equals raw score plus the two overlap terms
            let corrected =
                (got.actual - got.actual_overlap) - (got.expected - got.expected_overlap);
            let raw_adjusted = want.raw + want.expected_overlap - want.actual_overlap;
            assert!((corrected - raw_adjusted).abs() < 1e-12);
        }
    }
}

#[test]
fn actual_minus_overlap_counts_assignable_edges() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xE5);
    let mut checked = 0usize;
    while checked < 150 {
        let n = rng.gen_range(3..=8);
        let g = random_graph(&mut rng, n, 0.5);
        if g.edge_count() == 0 {
            continue;
        }
        checked += 1;
        for &(u, v) in g.edges() {
            let c = ci_components(&g, u, v).unwrap();
            let count = assignable_edges(&g, u, v) as f64;
            assert!(
                (c.actual - c.actual_overlap - count).abs() < 1e-12,
                "edge ({u},{v}): E_a={} E_ra={} assignable={count}",
                c.actual,
                c.actual_overlap
            );
        }
    }
}

#[test]
fn component_bounds_hold() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xB0);
    for _ in 0..100 {
        let n = rng.gen_range(2..=8);
        let g = random_graph(&mut rng, n, 0.5);
        for &(u, v) in g.edges() {
            let c = ci_components(&g, u, v).unwrap();
            assert!(c.actual >= 0.0 && c.actual_overlap >= 0.0);
            assert!(c.actual_overlap <= c.actual + 1e-12);
            assert!(c.expected_overlap <= c.expected + 1e-12);
        }
    }
}
