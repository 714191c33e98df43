//! Greedy community merging along the descending score order.
//!
//! Starting from all-singletons, the walk visits edges from the strongest
//! score down and merges the two endpoint communities whenever the
//! modularity gain is positive. Negative-gain edges are skipped by default
//! (the walk continues); a policy knob switches to halting the entire walk
//! instead. Edges internal to an existing community are no-ops.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::graph::{Graph, NodeId};
use crate::intensity::{ci_all, EdgeScore};
use crate::iteration::{iterate_to_fixpoint, IterationTrace};
use crate::partition::{merge_gain, modularity, Partition};

/// What to do when an edge's merge gain is negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopRule {
    /// Skip the edge and keep walking (default; reproduces the published
    /// results on the real networks).
    SkipEdge,
    /// Stop the entire walk at the first negative gain.
    HaltWalk,
}

/// What to do when an edge's merge gain is exactly zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroGainRule {
    /// Skip the edge, walk continues (default).
    Skip,
    /// Accept the merge.
    Accept,
    /// Stop the walk.
    Halt,
}

/// Ordering among equal scores.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieBreak {
    /// Ascending `(min label, max label)` edge key (default, reproducible).
    Lexicographic,
    /// Seeded shuffle among equal-score runs, for comparison runs.
    Seeded(u64),
}

/// Merge policy; the default configuration is fixed and documented.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MergePolicy {
    pub stop: StopRule,
    pub zero_gain: ZeroGainRule,
    pub tie_break: TieBreak,
}

impl Default for MergePolicy {
    fn default() -> Self {
        MergePolicy {
            stop: StopRule::SkipEdge,
            zero_gain: ZeroGainRule::Skip,
            tie_break: TieBreak::Lexicographic,
        }
    }
}

/// One step of the merge log.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MergeStep {
    pub edge: (NodeId, NodeId),
    pub gain: f64,
    pub accepted: bool,
}

/// Walks `scores` (already sorted descending) and merges endpoint
/// communities by the policy. Returns the final partition and the ordered
/// log of every cross-community edge visited. An empty score list yields
/// the all-singletons partition.
pub fn greedy_merge(
    g: &Graph,
    scores: &[EdgeScore],
    policy: &MergePolicy,
) -> (Partition, Vec<MergeStep>) {
    let mut partition = Partition::singletons(g);
    let mut log = Vec::new();
    let order: Vec<(NodeId, NodeId)> = match policy.tie_break {
        TieBreak::Lexicographic => scores.iter().map(|s| (s.u, s.v)).collect(),
        TieBreak::Seeded(seed) => shuffled_ties(g, scores, seed),
    };
    for (u, v) in order {
        let (ca, cb) = (partition.community_of(u), partition.community_of(v));
        if ca == cb {
            continue;
        }
        let gain = merge_gain(g, &partition, ca, cb).expect("distinct communities");
        if gain > 0.0 {
            partition
                .merge_into(g, ca, cb)
                .expect("distinct communities");
            log.push(MergeStep {
                edge: (u, v),
                gain,
                accepted: true,
            });
        } else if gain < 0.0 {
            log.push(MergeStep {
                edge: (u, v),
                gain,
                accepted: false,
            });
            if policy.stop == StopRule::HaltWalk {
                break;
            }
        } else {
            log.push(MergeStep {
                edge: (u, v),
                gain,
                accepted: false,
            });
            match policy.zero_gain {
                ZeroGainRule::Skip => {}
                ZeroGainRule::Accept => {
                    partition
                        .merge_into(g, ca, cb)
                        .expect("distinct communities");
                    if let Some(last) = log.last_mut() {
                        last.accepted = true;
                    }
                }
                ZeroGainRule::Halt => break,
            }
        }
    }
    (partition, log)
}

/// Re-orders runs of equal scores with a seeded shuffle.
fn shuffled_ties(g: &Graph, scores: &[EdgeScore], seed: u64) -> Vec<(NodeId, NodeId)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<(NodeId, NodeId)> = Vec::with_capacity(scores.len());
    let mut start = 0;
    while start < scores.len() {
        let mut end = start + 1;
        while end < scores.len() && scores[end].ci == scores[start].ci {
            end += 1;
        }
        let mut run: Vec<(NodeId, NodeId)> =
            scores[start..end].iter().map(|s| (s.u, s.v)).collect();
        run.shuffle(&mut rng);
        order.extend(run);
        start = end;
    }
    let _ = g;
    order
}

/// Which scoring pass drives the merge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    /// Single unweighted scoring pass.
    Ci,
    /// Iteratively reweighted scoring.
    Ciia,
}

/// Detection configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectConfig {
    /// Round cap for the reweighting loop, counting the unweighted round.
    pub max_rounds: usize,
    pub policy: MergePolicy,
}

impl Default for DetectConfig {
    fn default() -> Self {
        DetectConfig {
            max_rounds: 50,
            policy: MergePolicy::default(),
        }
    }
}

/// Outcome of a scoring + merge run.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectOutcome {
    pub algo: Algo,
    pub partition: Partition,
    pub modularity: f64,
    /// Present for [`Algo::Ciia`].
    pub trace: Option<IterationTrace>,
    /// Weighted rounds performed (0 for [`Algo::Ci`]).
    pub rounds: usize,
    pub merge_log: Vec<MergeStep>,
}

/// Scores the graph (once, or iterated to the fixpoint) and merges greedily.
pub fn detect(g: &Graph, algo: Algo, config: &DetectConfig) -> Result<DetectOutcome, Error> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let (scores, trace) = match algo {
        Algo::Ci => (ci_all(g), None),
        Algo::Ciia => {
            let (scores, trace) = iterate_to_fixpoint(g, config.max_rounds);
            (scores, Some(trace))
        }
    };
    let (partition, merge_log) = greedy_merge(g, &scores, &config.policy);
    let q = modularity(g, &partition)?;
    let rounds = trace.as_ref().map(|t| t.rounds.len() - 1).unwrap_or(0);
    Ok(DetectOutcome {
        algo,
        partition,
        modularity: q,
        trace,
        rounds,
        merge_log,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{ex2, fig1};

    #[test]
    fn triangle_merges_to_one_community() {
        let g = Graph::parse_edgelist("a b\nb c\nc a\n").unwrap();
        let (p, log) = greedy_merge(&g, &ci_all(&g), &MergePolicy::default());
        assert_eq!(p.community_count(), 1);
        let gains: Vec<f64> = log.iter().filter(|s| s.accepted).map(|s| s.gain).collect();
        assert_eq!(gains.len(), 2);
        assert!((gains[0] - 1.0 / 9.0).abs() < 1e-15);
        assert!((gains[1] - 2.0 / 9.0).abs() < 1e-15);
        assert_eq!(modularity(&g, &p).unwrap(), 0.0);
    }

    #[test]
    fn empty_scores_stay_singletons() {
        let g = Graph::parse_edgelist("a b\n").unwrap();
        let (p, log) = greedy_merge(&g, &[], &MergePolicy::default());
        assert_eq!(p.community_count(), 2);
        assert!(log.is_empty());
    }

    #[test]
    fn fig1_walk_reaches_published_q() {
        let g = fig1();
        let (p, _) = greedy_merge(&g, &ci_all(&g), &MergePolicy::default());
        assert!((modularity(&g, &p).unwrap() - 0.398750).abs() < 1e-9);
        assert_eq!(p.community_count(), 3);
    }

    #[test]
    fn fig1_gain_sum_matches_q_delta() {
        let g = fig1();
        let (p, log) = greedy_merge(&g, &ci_all(&g), &MergePolicy::default());
        let q0 = modularity(&g, &Partition::singletons(&g)).unwrap();
        let total: f64 = log.iter().filter(|s| s.accepted).map(|s| s.gain).sum();
        assert!((q0 + total - modularity(&g, &p).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn accepted_gains_strictly_positive() {
        let g = ex2();
        let (_, log) = greedy_merge(&g, &ci_all(&g), &MergePolicy::default());
        assert!(log.iter().filter(|s| s.accepted).all(|s| s.gain > 0.0));
    }

    #[test]
    fn halt_policy_stops_at_first_negative() {
        let g = fig1();
        let policy = MergePolicy {
            stop: StopRule::HaltWalk,
            ..MergePolicy::default()
        };
        let (_, log) = greedy_merge(&g, &ci_all(&g), &policy);
        let first_negative = log.iter().position(|s| s.gain < 0.0);
        if let Some(pos) = first_negative {
            assert_eq!(pos, log.len() - 1, "no entry may follow a negative gain");
        }
    }

    #[test]
    fn fig1_halt_and_skip_agree() {
        // On this network the first negative gain occurs after every useful
        // merge, so both policies land on the same partition.
        let g = fig1();
        let halt = MergePolicy {
            stop: StopRule::HaltWalk,
            ..MergePolicy::default()
        };
        let (p_halt, _) = greedy_merge(&g, &ci_all(&g), &halt);
        let (p_skip, _) = greedy_merge(&g, &ci_all(&g), &MergePolicy::default());
        assert_eq!(p_halt.assignment(), p_skip.assignment());
    }

    #[test]
    fn ex2_post_iteration_q_and_split() {
        let g = ex2();
        let out = detect(&g, Algo::Ciia, &DetectConfig::default()).unwrap();
        assert!((out.modularity - 0.283203125).abs() < 1e-9);
        let intra = out.partition.intra_edge_count(&g);
        assert_eq!((intra, g.edge_count() - intra), (10, 6));
        assert!(out.trace.unwrap().converged);
    }

    #[test]
    fn detect_ci_reports_recomputable_q() {
        let g = fig1();
        let out = detect(&g, Algo::Ci, &DetectConfig::default()).unwrap();
        let q = modularity(&g, &out.partition).unwrap();
        assert!((q - out.modularity).abs() < 1e-12);
        assert_eq!(out.rounds, 0);
    }

    #[test]
    fn detect_empty_graph_errors() {
        let g = Graph::from_numeric_edges(2, &[]).unwrap();
        assert_eq!(
            detect(&g, Algo::Ci, &DetectConfig::default()).unwrap_err(),
            Error::EmptyGraph
        );
    }

    #[test]
    fn seeded_tie_break_is_reproducible() {
        let g = Graph::parse_edgelist("hub a\nhub b\nhub c\nhub d\n").unwrap();
        let scores = ci_all(&g);
        let policy = MergePolicy {
            tie_break: TieBreak::Seeded(11),
            ..MergePolicy::default()
        };
        let (p1, l1) = greedy_merge(&g, &scores, &policy);
        let (p2, l2) = greedy_merge(&g, &scores, &policy);
        assert_eq!(p1.assignment(), p2.assignment());
        assert_eq!(l1, l2);
    }
}
