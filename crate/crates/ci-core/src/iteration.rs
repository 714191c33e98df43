//! Iteratively reweighted connect intensity.
//!
//! Each round turns the previous round's scores into directed weights
//! (negative scores clip to zero, the rest normalise per node) and re-scores
//! every edge with weighted versions of the four components. The loop stops
//! once the descending edge order and the per-edge signs both repeat, or at
//! the round cap.
//!
//! Weighted component semantics, pinned by the worked golden tables:
//! - a member `u` of circle `S_{i→j}` participates with weight `w_{u→i}`
//!   (the anchor participates with weight 1);
//! - the overlap corrections run over the *effective* overlap: members with
//!   positive weight in both circles — a zero-weight side drops the node
//!   from the overlap entirely;
//! - the overlap expectation uses the product `w_{u→i}·w_{u→j}·k_u²` on the
//!   diagonal and the average `(w_{u→i}w_{v→j} + w_{v→i}w_{u→j})/2 · k_u k_v`
//!   on cross pairs.
//!
//! With all weights equal to 1 every formula reduces exactly to the
//! unweighted ones.

use alloc::vec::Vec;

use crate::error::Error;
use crate::graph::{Graph, NodeId};
use crate::intensity::{ci_all, sort_scores, CiComponents, EdgeScore};

/// Directed per-ordered-pair weights on adjacent pairs.
///
/// `w_{u→v}` is stored per node `u`, aligned with `Graph::neighbors(u)`.
/// Every node's outgoing weights sum to 1, or to 0 when all of its incident
/// scores were clipped.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMap {
    weights: Vec<Vec<f64>>,
    /// Round the weights were derived from (0 = unweighted scores).
    pub round: usize,
}

impl WeightMap {
    /// Weight of the ordered adjacent pair `(u, v)`.
    pub fn get(&self, g: &Graph, u: NodeId, v: NodeId) -> f64 {
        match g.neighbors(u).binary_search(&v) {
            Ok(pos) => self.weights[u as usize][pos],
            Err(_) => 0.0,
        }
    }

    /// All-ones weights; `weighted_ci_edge` then reproduces the unweighted
    /// scores exactly.
    pub fn uniform(g: &Graph) -> WeightMap {
        let weights = (0..g.node_count())
            .map(|u| alloc::vec![1.0; g.neighbors(u as NodeId).len()])
            .collect();
        WeightMap { weights, round: 0 }
    }

    /// Sum of a node's outgoing weights.
    pub fn out_sum(&self, u: NodeId) -> f64 {
        self.weights[u as usize].iter().sum()
    }
}

/// Clips scores at zero and normalises per node:
/// `w_{u→i} = max(ci_{ui}, 0) / Σ_{v∈∂u} max(ci_{uv}, 0)`, all zero when the
/// denominator vanishes.
pub fn weights_from_scores(g: &Graph, scores: &[EdgeScore]) -> WeightMap {
    let mut clipped: alloc::collections::BTreeMap<(NodeId, NodeId), f64> =
        alloc::collections::BTreeMap::new();
    for s in scores {
        clipped.insert((s.u, s.v), if s.ci > 0.0 { s.ci } else { 0.0 });
    }
    let lookup = |u: NodeId, v: NodeId| clipped[&(u.min(v), u.max(v))];
    let weights = (0..g.node_count() as NodeId)
        .map(|u| {
            let total: f64 = g.neighbors(u).iter().map(|&v| lookup(u, v)).sum();
            g.neighbors(u)
                .iter()
                .map(|&v| {
                    if total > 0.0 {
                        lookup(u, v) / total
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect();
    WeightMap { weights, round: 0 }
}

/// Weighted score of edge `(i, j)` under `w`.
pub fn weighted_ci_edge(
    g: &Graph,
    w: &WeightMap,
    i: NodeId,
    j: NodeId,
) -> Result<EdgeScore, Error> {
    if !g.has_edge(i, j) {
        return Err(Error::NotAnEdge(i, j));
    }
    let si = weighted_circle(g, w, i, j);
    let sj = weighted_circle(g, w, j, i);
    let components = weighted_components(g, &si, &sj);
    Ok(EdgeScore {
        u: i.min(j),
        v: i.max(j),
        components,
        ci: components.ci(),
    })
}

/// Circle members with their weight towards the anchor; sorted by id.
struct WeightedCircle {
    members: Vec<NodeId>,
    toward_anchor: Vec<f64>,
}

impl WeightedCircle {
    fn weight_of(&self, u: NodeId) -> Option<f64> {
        self.members
            .binary_search(&u)
            .ok()
            .map(|pos| self.toward_anchor[pos])
    }
}

fn weighted_circle(g: &Graph, w: &WeightMap, i: NodeId, j: NodeId) -> WeightedCircle {
    let mut members = Vec::with_capacity(g.degree(i) as usize);
    for &u in g.neighbors(i) {
        if u != j {
            members.push((u, w.get(g, u, i)));
        }
    }
    // Anchor belongs fully to its own circle.
    let pos = members.partition_point(|&(u, _)| u < i);
    members.insert(pos, (i, 1.0));
    WeightedCircle {
        toward_anchor: members.iter().map(|&(_, wt)| wt).collect(),
        members: members.into_iter().map(|(u, _)| u).collect(),
    }
}

fn weighted_components(g: &Graph, si: &WeightedCircle, sj: &WeightedCircle) -> CiComponents {
    let two_m = 2.0 * g.edge_count() as f64;

    let (small, large) = if si.members.len() <= sj.members.len() {
        (si, sj)
    } else {
        (sj, si)
    };
    let mut actual = 0.0;
    for (pos, &u) in small.members.iter().enumerate() {
        let wu = small.toward_anchor[pos];
        if wu == 0.0 {
            continue;
        }
        for &x in g.neighbors(u) {
            if let Some(wx) = large.weight_of(x) {
                actual += wu * wx;
            }
        }
    }

    // Effective overlap: positive weight in both circles.
    let mut inter: Vec<(NodeId, f64, f64)> = Vec::new();
    for (pos, &u) in si.members.iter().enumerate() {
        let wi = si.toward_anchor[pos];
        if wi <= 0.0 {
            continue;
        }
        if let Some(wj) = sj.weight_of(u) {
            if wj > 0.0 {
                inter.push((u, wi, wj));
            }
        }
    }

    let mut actual_overlap = 0.0;
    let mut cross = 0.0;
    for (idx, &(u, ui, uj)) in inter.iter().enumerate() {
        for &(v, vi, vj) in &inter[idx + 1..] {
            let avg = (ui * vj + vi * uj) / 2.0;
            if g.has_edge(u, v) {
                actual_overlap += avg;
            }
            cross += avg * g.degree(u) as f64 * g.degree(v) as f64;
        }
    }

    let strength = |c: &WeightedCircle| -> f64 {
        c.members
            .iter()
            .zip(&c.toward_anchor)
            .map(|(&u, &wt)| wt * g.degree(u) as f64)
            .sum()
    };
    let expected = strength(si) * strength(sj) / two_m;

    let diag: f64 = inter
        .iter()
        .map(|&(u, ui, uj)| {
            let k = g.degree(u) as f64;
            ui * uj * k * k
        })
        .sum();
    let expected_overlap = (diag + cross) / two_m;

    CiComponents {
        actual,
        actual_overlap,
        expected,
        expected_overlap,
    }
}

/// Weighted scores for every edge, sorted like [`ci_all`].
pub fn weighted_ci_all(g: &Graph, w: &WeightMap) -> Vec<EdgeScore> {
    let mut scores: Vec<EdgeScore> = g
        .edges()
        .iter()
        .map(|&(u, v)| weighted_ci_edge(g, w, u, v).expect("edge list entry is an edge"))
        .collect();
    sort_scores(g, &mut scores);
    scores
}

/// One round of the trace: the descending edge order with scores and signs.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundTrace {
    /// Edges in descending score order.
    pub order: Vec<(NodeId, NodeId)>,
    /// Scores in the same order.
    pub scores: Vec<f64>,
    /// Per-edge signum in the same order (-1, 0, +1).
    pub signs: Vec<i8>,
}

impl RoundTrace {
    fn from_scores(scores: &[EdgeScore]) -> RoundTrace {
        RoundTrace {
            order: scores.iter().map(|s| (s.u, s.v)).collect(),
            scores: scores.iter().map(|s| s.ci).collect(),
            signs: scores
                .iter()
                .map(|s| {
                    if s.ci > 0.0 {
                        1
                    } else if s.ci < 0.0 {
                        -1
                    } else {
                        0
                    }
                })
                .collect(),
        }
    }

    fn stable_against(&self, prev: &RoundTrace) -> bool {
        self.order == prev.order && self.signs == prev.signs
    }
}

/// Full refinement trace.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace {
    /// Round 0 (unweighted) followed by the weighted rounds; length ≤ cap.
    pub rounds: Vec<RoundTrace>,
    pub converged: bool,
    /// First round whose order and signs matched the previous round.
    pub convergence_round: Option<usize>,
}

/// Runs round 0 (unweighted), then reweights and re-scores until the order
/// and sign vector repeat, or until `cap` rounds (including round 0) have
/// run. Non-convergence is reported in the trace, never an error; the
/// returned scores are always the last computed round's.
pub fn iterate_to_fixpoint(g: &Graph, cap: usize) -> (Vec<EdgeScore>, IterationTrace) {
    assert!(cap >= 1, "round cap must be at least 1");
    let mut scores = ci_all(g);
    let mut rounds = alloc::vec![RoundTrace::from_scores(&scores)];
    let mut converged = false;
    let mut convergence_round = None;
    for round in 1..cap {
        let weights = weights_from_scores(g, &scores);
        scores = weighted_ci_all(g, &weights);
        let trace = RoundTrace::from_scores(&scores);
        let stable = trace.stable_against(&rounds[round - 1]);
        rounds.push(trace);
        if stable {
            converged = true;
            convergence_round = Some(round);
            break;
        }
    }
    (
        scores,
        IterationTrace {
            rounds,
            converged,
            convergence_round,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intensity::ci_edge;
    use crate::testutil::{ex2, fig1};

    #[test]
    fn clip_and_normalise() {
        // star: u-a 2.0, u-b 2.0, u-c -1.0
        let g = Graph::parse_edgelist("u a\nu b\nu c\n").unwrap();
        let u = g.node_id("u").unwrap();
        let mk = |a: &str, b: &str, ci: f64| {
            let (ia, ib) = (g.node_id(a).unwrap(), g.node_id(b).unwrap());
            EdgeScore {
                u: ia.min(ib),
                v: ia.max(ib),
                components: CiComponents {
                    actual: 0.0,
                    actual_overlap: 0.0,
                    expected: 0.0,
                    expected_overlap: 0.0,
                },
                ci,
            }
        };
        let scores = [mk("u", "a", 2.0), mk("u", "b", 2.0), mk("u", "c", -1.0)];
        let w = weights_from_scores(&g, &scores);
        assert_eq!(w.get(&g, u, g.node_id("a").unwrap()), 0.5);
        assert_eq!(w.get(&g, u, g.node_id("b").unwrap()), 0.5);
        assert_eq!(w.get(&g, u, g.node_id("c").unwrap()), 0.0);
        // leaves have a single incident edge each
        assert_eq!(w.get(&g, g.node_id("c").unwrap(), u), 0.0);
        assert_eq!(w.get(&g, g.node_id("a").unwrap(), u), 1.0);
    }

    #[test]
    fn all_negative_row_clips_to_zero() {
        let g = Graph::parse_edgelist("u a\nu b\n").unwrap();
        let scores: Vec<EdgeScore> = ci_all(&g)
            .into_iter()
            .map(|mut s| {
                s.ci = -1.0;
                s
            })
            .collect();
        let w = weights_from_scores(&g, &scores);
        let u = g.node_id("u").unwrap();
        assert_eq!(w.out_sum(u), 0.0);
    }

    #[test]
    fn row_sums_are_zero_or_one() {
        let g = fig1();
        let w = weights_from_scores(&g, &ci_all(&g));
        for u in 0..g.node_count() as NodeId {
            let s = w.out_sum(u);
            assert!(s.abs() < 1e-12 || (s - 1.0).abs() < 1e-12, "node {u}: {s}");
        }
    }

    #[test]
    fn uniform_weights_reduce_to_unweighted() {
        let g = fig1();
        let w = WeightMap::uniform(&g);
        for &(u, v) in g.edges() {
            let plain = ci_edge(&g, u, v).unwrap();
            let weighted = weighted_ci_edge(&g, &w, u, v).unwrap();
            assert!((plain.ci - weighted.ci).abs() < 1e-12);
            assert!((plain.components.actual - weighted.components.actual).abs() < 1e-12);
            assert!(
                (plain.components.expected_overlap - weighted.components.expected_overlap).abs()
                    < 1e-12
            );
        }
    }

    #[test]
    fn ex2_first_round_spot_value() {
        let g = ex2();
        let w = weights_from_scores(&g, &ci_all(&g));
        let s = weighted_ci_edge(&g, &w, g.node_id("7").unwrap(), g.node_id("8").unwrap()).unwrap();
        assert!((s.ci - 0.3901).abs() < 5e-5, "got {}", s.ci);
    }

    #[test]
    fn converged_trace_ends_with_a_repeat() {
        let g = ex2();
        let (_, trace) = iterate_to_fixpoint(&g, 50);
        assert!(trace.converged);
        let last = trace.rounds.last().unwrap();
        let prev = &trace.rounds[trace.rounds.len() - 2];
        assert_eq!(last.order, prev.order);
        assert_eq!(last.signs, prev.signs);
        assert_eq!(trace.convergence_round, Some(trace.rounds.len() - 1));
    }

    #[test]
    fn ex2_trace_spot_values() {
        let g = ex2();
        let (_, trace) = iterate_to_fixpoint(&g, 50);
        assert!(trace.converged);
        let at = |round: usize, a: &str, b: &str| {
            let r = &trace.rounds[round];
            let (ia, ib) = (g.node_id(a).unwrap(), g.node_id(b).unwrap());
            let key = (ia.min(ib), ia.max(ib));
            let pos = r.order.iter().position(|&e| e == key).unwrap();
            r.scores[pos]
        };
        assert!((at(1, "7", "8") - 0.3901).abs() < 5e-5);
        assert!((at(2, "7", "8") - 0.29974).abs() < 5e-6);
        assert!((at(3, "7", "8") - 0.30419).abs() < 5e-6);
    }

    #[test]
    fn weighted_score_symmetric() {
        let g = ex2();
        let w = weights_from_scores(&g, &ci_all(&g));
        for &(u, v) in g.edges() {
            let a = weighted_ci_edge(&g, &w, u, v).unwrap().ci;
            let b = weighted_ci_edge(&g, &w, v, u).unwrap().ci;
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn cap_one_returns_unweighted_round() {
        let g = ex2();
        let (scores, trace) = iterate_to_fixpoint(&g, 1);
        assert!(!trace.converged);
        assert_eq!(trace.rounds.len(), 1);
        let plain = ci_all(&g);
        assert_eq!(scores.len(), plain.len());
        for (a, b) in scores.iter().zip(&plain) {
            assert_eq!(a.ci, b.ci);
        }
    }

    #[test]
    fn symmetric_positive_scores_stabilise_after_one_round() {
        // vertex-transitive with all round-0 scores equal and positive, so
        // the first reweighting round keeps both order and signs.
        let g = Graph::parse_edgelist("a b\nb c\nc a\n").unwrap();
        let (_, trace) = iterate_to_fixpoint(&g, 50);
        assert!(trace.converged);
        assert_eq!(trace.convergence_round, Some(1));
    }

    #[test]
    fn cycle_converges() {
        // C5 round-0 scores are all negative (-0.6); one round of all-zero
        // weights flips them positive and the order then repeats.
        let g = Graph::parse_edgelist("a b\nb c\nc d\nd e\ne a\n").unwrap();
        let (_, trace) = iterate_to_fixpoint(&g, 50);
        assert!(trace.converged);
        assert_eq!(trace.convergence_round, Some(2));
    }

    #[test]
    fn reruns_are_identical() {
        let g = ex2();
        let (s1, t1) = iterate_to_fixpoint(&g, 50);
        let (s2, t2) = iterate_to_fixpoint(&g, 50);
        assert_eq!(t1, t2);
        for (a, b) in s1.iter().zip(&s2) {
            assert_eq!(a.ci.to_bits(), b.ci.to_bits());
        }
    }

    #[test]
    fn trace_length_capped() {
        let g = fig1();
        let (_, trace) = iterate_to_fixpoint(&g, 3);
        assert!(trace.rounds.len() <= 3);
    }
}
