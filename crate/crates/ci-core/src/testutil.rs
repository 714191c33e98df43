//! Shared unit-test graphs.

use crate::graph::Graph;

pub(crate) const FIG1_EDGES: &[(&str, &str)] = &[
    ("7", "8"),
    ("6", "7"),
    ("14", "7"),
    ("6", "8"),
    ("14", "8"),
    ("13", "5"),
    ("12", "15"),
    ("10", "11"),
    ("1", "2"),
    ("2", "4"),
    ("3", "4"),
    ("2", "5"),
    ("10", "12"),
    ("9", "6"),
    ("2", "3"),
    ("12", "2"),
    ("9", "2"),
    ("10", "4"),
    ("14", "10"),
    ("3", "8"),
];

pub(crate) const EX2_EDGES: &[(&str, &str)] = &[
    ("5", "6"),
    ("0", "8"),
    ("6", "9"),
    ("0", "1"),
    ("1", "8"),
    ("4", "7"),
    ("1", "2"),
    ("0", "7"),
    ("3", "4"),
    ("5", "9"),
    ("3", "7"),
    ("7", "8"),
    ("3", "5"),
    ("1", "9"),
    ("8", "9"),
    ("1", "4"),
];

pub(crate) fn fig1() -> Graph {
    Graph::from_label_edges(FIG1_EDGES).unwrap()
}

pub(crate) fn ex2() -> Graph {
    Graph::from_label_edges(EX2_EDGES).unwrap()
}
