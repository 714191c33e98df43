//! Immutable simple undirected graph with string labels and dense ids.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::Error;

/// Dense internal node id, `0..n`.
pub type NodeId = u32;

/// Simple undirected graph.
///
/// Nodes carry arbitrary string labels; internal ids are assigned in
/// first-appearance order so that construction is deterministic. The
/// adjacency lists are sorted, self-loops are rejected and duplicate edges
/// collapse silently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    label_ids: BTreeMap<String, NodeId>,
    adjacency: Vec<Vec<NodeId>>,
    edges: Vec<(NodeId, NodeId)>,
}

impl Graph {
    /// Parses the plain edge-list format: two whitespace-separated labels per
    /// line, `#` starts a comment, blank lines are ignored.
    pub fn parse_edgelist(text: &str) -> Result<Graph, Error> {
        let mut builder = Builder::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let mut tokens = line.split_whitespace();
            let (a, b) = match (tokens.next(), tokens.next()) {
                (None, _) => continue,
                (Some(a), Some(b)) => (a, b),
                (Some(_), None) => {
                    return Err(Error::TokenCount {
                        line: idx + 1,
                        found: 1,
                    })
                }
            };
            let extra = tokens.count();
            if extra > 0 {
                return Err(Error::TokenCount {
                    line: idx + 1,
                    found: 2 + extra,
                });
            }
            if a == b {
                return Err(Error::SelfLoop {
                    line: idx + 1,
                    label: a.to_string(),
                });
            }
            builder.push(a, b);
        }
        Ok(builder.finish())
    }

    /// Builds a graph from labelled edges; duplicates collapse, self-loops error.
    pub fn from_label_edges<S: AsRef<str>>(edges: &[(S, S)]) -> Result<Graph, Error> {
        let mut builder = Builder::default();
        for (idx, (a, b)) in edges.iter().enumerate() {
            let (a, b) = (a.as_ref(), b.as_ref());
            if a == b {
                return Err(Error::SelfLoop {
                    line: idx + 1,
                    label: a.to_string(),
                });
            }
            builder.push(a, b);
        }
        Ok(builder.finish())
    }

    /// Builds a graph over `n` nodes labelled `"0"..."n-1"`, allowing isolated
    /// nodes. Used by the generators.
    pub fn from_numeric_edges(n: u32, edges: &[(u32, u32)]) -> Result<Graph, Error> {
        let mut builder = Builder::default();
        for i in 0..n {
            builder.intern(&i.to_string());
        }
        for (idx, &(a, b)) in edges.iter().enumerate() {
            if a == b {
                return Err(Error::SelfLoop {
                    line: idx + 1,
                    label: a.to_string(),
                });
            }
            if a >= n || b >= n {
                return Err(Error::InvalidConfig(
                    "edge endpoint out of range".to_string(),
                ));
            }
            builder.push(&a.to_string(), &b.to_string());
        }
        Ok(builder.finish())
    }

    /// Node count.
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    /// Edge count.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Degree `k_i`.
    pub fn degree(&self, u: NodeId) -> u32 {
        self.adjacency[u as usize].len() as u32
    }

    /// Sorted neighbour ids of `u`.
    pub fn neighbors(&self, u: NodeId) -> &[NodeId] {
        &self.adjacency[u as usize]
    }

    /// Whether `{u, v}` is an edge.
    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    /// Edges as `(min id, max id)` pairs in first-appearance order.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    /// Label of node `u`.
    pub fn label(&self, u: NodeId) -> &str {
        &self.labels[u as usize]
    }

    /// Id of `label`, if present.
    pub fn node_id(&self, label: &str) -> Option<NodeId> {
        self.label_ids.get(label).copied()
    }

    /// Serialises back to the edge-list format; re-parsing yields an
    /// identical graph (labels keep their first-appearance order).
    pub fn to_edgelist(&self) -> String {
        let mut out = String::new();
        for &(u, v) in &self.edges {
            out.push_str(self.label(u));
            out.push(' ');
            out.push_str(self.label(v));
            out.push('\n');
        }
        out
    }
}

#[derive(Default)]
struct Builder {
    labels: Vec<String>,
    label_ids: BTreeMap<String, NodeId>,
    edge_order: Vec<(NodeId, NodeId)>,
    seen: alloc::collections::BTreeSet<(NodeId, NodeId)>,
}

impl Builder {
    fn intern(&mut self, label: &str) -> NodeId {
        if let Some(&id) = self.label_ids.get(label) {
            return id;
        }
        let id = self.labels.len() as NodeId;
        self.labels.push(label.to_string());
        self.label_ids.insert(label.to_string(), id);
        id
    }

    fn push(&mut self, a: &str, b: &str) {
        let ia = self.intern(a);
        let ib = self.intern(b);
        let key = (ia.min(ib), ia.max(ib));
        if self.seen.insert(key) {
            self.edge_order.push(key);
        }
    }

    fn finish(self) -> Graph {
        let mut adjacency = alloc::vec![Vec::new(); self.labels.len()];
        for &(u, v) in &self.edge_order {
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph {
            labels: self.labels,
            label_ids: self.label_ids,
            adjacency,
            edges: self.edge_order,
        }
    }
}
