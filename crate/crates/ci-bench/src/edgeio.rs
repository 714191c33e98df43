//! File-level graph IO.

use std::fs;
use std::path::Path;

use anyhow::Context;

use ci_core::{Graph, Partition};

use crate::report::write_atomic;

/// Reads and parses an edge-list file.
pub fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Graph::parse_edgelist(&text).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))
}

/// Writes a graph in the edge-list format.
pub fn write_edgelist(path: &Path, g: &Graph) -> anyhow::Result<()> {
    write_atomic(path, &g.to_edgelist())
}

/// Writes a ground-truth partition as `label community_id` lines.
pub fn write_ground_truth(path: &Path, g: &Graph, truth: &Partition) -> anyhow::Result<()> {
    let mut out = String::new();
    for u in 0..g.node_count() as u32 {
        out.push_str(g.label(u));
        out.push(' ');
        out.push_str(&truth.community_of(u).to_string());
        out.push('\n');
    }
    write_atomic(path, &out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn read_write_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.edges");
        let g = Graph::parse_edgelist("a b\nb c\n").unwrap();
        write_edgelist(&path, &g).unwrap();
        assert_eq!(read_graph(&path).unwrap(), g);
    }

    #[test]
    fn missing_file_errors() {
        assert!(read_graph(Path::new("/nonexistent/x.edges")).is_err());
    }
}
