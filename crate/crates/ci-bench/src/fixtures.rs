//! Embedded golden fixtures and the selftest that replays them.
//!
//! Two small networks ship inside the binary: the 15-node/20-edge network
//! whose per-edge scores are fully tabulated (FIG1 — the Florentine
//! marriage network with anonymised numeric labels), and a 10-node/16-edge
//! example (EX2) whose scores are tabulated across three reweighting rounds.

use ci_core::{ci_all, detect, weighted_ci_all, weights_from_scores};
use ci_core::{Algo, DetectConfig, EdgeScore, Graph};

pub const FIG1_EDGELIST: &str = "\
7 8
6 7
14 7
6 8
14 8
13 5
12 15
10 11
1 2
2 4
3 4
2 5
10 12
9 6
2 3
12 2
9 2
10 4
14 10
3 8
";

pub const EX2_EDGELIST: &str = "\
5 6
0 8
6 9
0 1
1 8
4 7
1 2
0 7
3 4
5 9
3 7
7 8
3 5
1 9
8 9
1 4
";

/// Published per-edge scores for FIG1.
pub const TABLE1: [((&str, &str), f64); 20] = [
    (("7", "8"), 2.75),
    (("6", "7"), 2.15),
    (("14", "7"), 1.65),
    (("6", "8"), 1.625),
    (("14", "8"), 0.975),
    (("13", "5"), 0.8),
    (("12", "15"), 0.675),
    (("10", "11"), 0.675),
    (("1", "2"), 0.525),
    (("2", "4"), -0.025),
    (("3", "4"), -0.325),
    (("2", "5"), -0.35),
    (("10", "12"), -0.75),
    (("9", "6"), -1.0),
    (("2", "3"), -1.025),
    (("9", "2"), -1.25),
    (("10", "4"), -1.3),
    (("12", "2"), -1.4),
    (("14", "10"), -1.75),
    (("3", "8"), -2.9),
];

/// Published EX2 scores before reweighting.
pub const TABLE2_ORIGINAL: [((&str, &str), f64); 16] = [
    (("5", "6"), 1.625),
    (("0", "8"), 1.53125),
    (("6", "9"), 0.78125),
    (("0", "1"), 0.65625),
    (("1", "8"), 0.65625),
    (("4", "7"), 0.46875),
    (("1", "2"), 0.40625),
    (("0", "7"), 0.25),
    (("3", "4"), -0.25),
    (("5", "9"), -0.625),
    (("3", "7"), -0.65625),
    (("7", "8"), -1.21875),
    (("3", "5"), -1.8125),
    (("1", "9"), -2.0),
    (("8", "9"), -2.21875),
    (("1", "4"), -2.3125),
];

/// Published EX2 scores after one reweighting round (4-dp prints).
#[allow(clippy::approx_constant)] // 0.6931 is the published table value
pub const TABLE2_ROUND1: [((&str, &str), f64); 16] = [
    (("5", "6"), 1.4375),
    (("5", "9"), 1.3953),
    (("6", "9"), 1.375),
    (("3", "7"), 1.3149),
    (("3", "4"), 1.1264),
    (("0", "8"), 1.0619),
    (("1", "2"), 0.781),
    (("1", "8"), 0.6931),
    (("4", "7"), 0.5962),
    (("3", "5"), 0.5921),
    (("0", "1"), 0.5913),
    (("0", "7"), 0.3955),
    (("7", "8"), 0.3901),
    (("8", "9"), 0.2495),
    (("1", "9"), 0.1365),
    (("1", "4"), -0.0323),
];

/// Published EX2 scores after two rounds.
pub const TABLE2_ROUND2: [((&str, &str), f64); 16] = [
    (("5", "6"), 1.3478),
    (("6", "9"), 1.2693),
    (("5", "9"), 1.2098),
    (("3", "4"), 1.0987),
    (("4", "7"), 1.0104),
    (("0", "8"), 1.0026),
    (("3", "7"), 0.99),
    (("1", "2"), 0.7751),
    (("0", "1"), 0.6307),
    (("1", "8"), 0.6045),
    (("0", "7"), 0.443),
    (("7", "8"), 0.2997),
    (("8", "9"), -0.1438),
    (("1", "4"), -0.1525),
    (("1", "9"), -0.2203),
    (("3", "5"), -0.2508),
];

/// Published EX2 scores after three rounds.
pub const TABLE2_ROUND3: [((&str, &str), f64); 16] = [
    (("5", "6"), 1.4985),
    (("6", "9"), 1.4637),
    (("5", "9"), 1.4053),
    (("3", "4"), 1.1745),
    (("3", "7"), 1.114),
    (("4", "7"), 1.1129),
    (("0", "8"), 1.0255),
    (("1", "2"), 0.7756),
    (("0", "1"), 0.6716),
    (("1", "8"), 0.5899),
    (("0", "7"), 0.3627),
    (("7", "8"), 0.3042),
    (("3", "5"), -0.1228),
    (("8", "9"), -0.1746),
    (("1", "9"), -0.3161),
    (("1", "4"), -0.3181),
];

/// Published greedy-merge modularity on FIG1 scores.
pub const Q_FIG1: f64 = 0.398750;
/// Published EX2 modularity before reweighting. Known-unreachable: the
/// documented walk yields 0.216796875, and the selftest reports the
/// divergence (the unique partition with this value requires rejecting a
/// positive-gain merge).
pub const Q_EX2_PRE: f64 = 0.21875;
/// Published EX2 modularity after reweighting.
pub const Q_EX2_POST: f64 = 0.283203125;

pub fn fig1() -> Graph {
    Graph::parse_edgelist(FIG1_EDGELIST).expect("embedded fixture parses")
}

pub fn ex2() -> Graph {
    Graph::parse_edgelist(EX2_EDGELIST).expect("embedded fixture parses")
}

/// Looks up the score of the edge labelled `(a, b)`.
pub fn score_of(g: &Graph, scores: &[EdgeScore], a: &str, b: &str) -> f64 {
    let (ia, ib) = (g.node_id(a).expect("label"), g.node_id(b).expect("label"));
    let key = (ia.min(ib), ia.max(ib));
    scores
        .iter()
        .find(|s| (s.u, s.v) == key)
        .unwrap_or_else(|| panic!("no score for edge ({a}, {b})"))
        .ci
}

/// One replayed fixture.
#[derive(Debug, Clone)]
pub struct FixtureCheck {
    pub name: String,
    pub expected: f64,
    pub actual: f64,
    pub tolerance: f64,
}

impl FixtureCheck {
    pub fn passed(&self) -> bool {
        (self.expected - self.actual).abs() <= self.tolerance
    }
}

/// Golden-table tolerances: exact tables at 1e-9, 4-dp reweighted prints at
/// one print quantum.
pub const EXACT_TOL: f64 = 1e-9;
pub const PRINTED_TOL: f64 = 1e-4;

/// Replays every embedded fixture and reports each comparison.
pub fn run_selftest() -> Vec<FixtureCheck> {
    let mut checks = Vec::new();

    let g1 = fig1();
    let t1 = ci_all(&g1);
    for ((a, b), want) in TABLE1 {
        checks.push(FixtureCheck {
            name: format!("table1 ci({a},{b})"),
            expected: want,
            actual: score_of(&g1, &t1, a, b),
            tolerance: EXACT_TOL,
        });
    }

    let g2 = ex2();
    let mut scores = ci_all(&g2);
    for ((a, b), want) in TABLE2_ORIGINAL {
        checks.push(FixtureCheck {
            name: format!("table2 original ci({a},{b})"),
            expected: want,
            actual: score_of(&g2, &scores, a, b),
            tolerance: EXACT_TOL,
        });
    }
    let columns = [
        ("round1", TABLE2_ROUND1),
        ("round2", TABLE2_ROUND2),
        ("round3", TABLE2_ROUND3),
    ];
    for (label, table) in columns {
        let weights = weights_from_scores(&g2, &scores);
        scores = weighted_ci_all(&g2, &weights);
        for ((a, b), want) in table {
            checks.push(FixtureCheck {
                name: format!("table2 {label} ci({a},{b})"),
                expected: want,
                actual: score_of(&g2, &scores, a, b),
                tolerance: PRINTED_TOL,
            });
        }
    }

    let config = DetectConfig::default();
    let q_fig1 = detect(&g1, Algo::Ci, &config)
        .expect("fig1 detect")
        .modularity;
    checks.push(FixtureCheck {
        name: "q fig1 greedy(ci)".into(),
        expected: Q_FIG1,
        actual: q_fig1,
        tolerance: EXACT_TOL,
    });
    let q_pre = detect(&g2, Algo::Ci, &config)
        .expect("ex2 detect")
        .modularity;
    checks.push(FixtureCheck {
        name: "q ex2 greedy(pre-iteration)".into(),
        expected: Q_EX2_PRE,
        actual: q_pre,
        tolerance: EXACT_TOL,
    });
    let q_post = detect(&g2, Algo::Ciia, &config)
        .expect("ex2 ciia")
        .modularity;
    checks.push(FixtureCheck {
        name: "q ex2 greedy(post-iteration)".into(),
        expected: Q_EX2_POST,
        actual: q_post,
        tolerance: EXACT_TOL,
    });

    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use ci_core::modularity;

    #[test]
    fn fixture_graphs_have_published_sizes() {
        let g1 = fig1();
        assert_eq!((g1.node_count(), g1.edge_count()), (15, 20));
        let g2 = ex2();
        assert_eq!((g2.node_count(), g2.edge_count()), (10, 16));
    }

    #[test]
    fn selftest_flags_only_the_known_divergence() {
        let checks = run_selftest();
        let failed: Vec<&FixtureCheck> = checks.iter().filter(|c| !c.passed()).collect();
        assert_eq!(failed.len(), 1, "unexpected failures: {failed:?}");
        assert_eq!(failed[0].name, "q ex2 greedy(pre-iteration)");
        assert!((failed[0].actual - 0.216796875).abs() < 1e-12);
    }

    #[test]
    fn modularity_of_embedded_graphs_recomputable() {
        let g = fig1();
        let out = detect(&g, Algo::Ci, &DetectConfig::default()).unwrap();
        let q = modularity(&g, &out.partition).unwrap();
        assert!((q - out.modularity).abs() < 1e-12);
    }
}
