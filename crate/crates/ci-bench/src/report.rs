//! Machine-readable run reports: JSON documents and benchmark CSV rows.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::Context;
use serde::{Deserialize, Serialize};

use ci_core::{Graph, Partition};

/// One detection run, serialised as a JSON document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgoReport {
    pub algorithm: String,
    /// Input path or generator descriptor.
    pub input: String,
    pub n: usize,
    pub m: usize,
    pub modularity: f64,
    pub community_count: usize,
    /// Communities as label lists, ordered by their smallest internal id.
    pub communities: Vec<Vec<String>>,
    /// Reweighting rounds performed (0 unless the algorithm iterates).
    pub iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub converged: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub time_ms: f64,
    pub version: String,
}

impl AlgoReport {
    pub fn communities_from(g: &Graph, p: &Partition) -> Vec<Vec<String>> {
        p.community_members()
            .into_iter()
            .map(|members| {
                members
                    .into_iter()
                    .map(|u| g.label(u).to_string())
                    .collect()
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serialises");
        text.push('\n');
        text
    }
}

/// Fixed benchmark CSV header.
pub const CSV_HEADER: &str = "family,n,m,algo,seed,modularity,time_ms,iterations";

/// One `(graph, algorithm, seed)` benchmark cell.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub family: String,
    pub n: usize,
    pub m: usize,
    pub algo: String,
    pub seed: u64,
    pub modularity: f64,
    pub time_ms: f64,
    pub iterations: usize,
}

impl BenchRow {
    pub fn to_csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.family,
            self.n,
            self.m,
            self.algo,
            self.seed,
            self.modularity,
            self.time_ms,
            self.iterations
        )
    }
}

/// Renders the full CSV document with rows sorted deterministically.
pub fn render_csv(mut rows: Vec<BenchRow>) -> String {
    rows.sort_by(|a, b| (a.n, &a.algo, a.seed, &a.family).cmp(&(b.n, &b.algo, b.seed, &b.family)));
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv_line());
        out.push('\n');
    }
    out
}

/// Writes through a temporary sibling and renames, so failures never leave a
/// partial output file behind.
pub fn write_atomic(path: &Path, content: &str) -> anyhow::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let tmp = match dir {
        Some(parent) => parent.join(format!(
            ".{}.tmp",
            path.file_name().and_then(|n| n.to_str()).unwrap_or("out")
        )),
        None => Path::new(&format!(
            ".{}.tmp",
            path.file_name().and_then(|n| n.to_str()).unwrap_or("out")
        ))
        .to_path_buf(),
    };
    {
        let mut file =
            fs::File::create(&tmp).with_context(|| format!("creating {}", tmp.display()))?;
        file.write_all(content.as_bytes())
            .with_context(|| format!("writing {}", tmp.display()))?;
        file.sync_all().ok();
    }
    fs::rename(&tmp, path)
        .with_context(|| format!("renaming {} to {}", tmp.display(), path.display()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_rows_sorted_and_headed() {
        let row = |n: usize, algo: &str, seed: u64| BenchRow {
            family: "ba".into(),
            n,
            m: n - 1,
            algo: algo.into(),
            seed,
            modularity: 0.5,
            time_ms: 1.0,
            iterations: 0,
        };
        let csv = render_csv(vec![
            row(200, "ci", 1),
            row(100, "ci", 1),
            row(100, "ci", 0),
        ]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert!(lines[1].starts_with("ba,100,99,ci,0"));
        assert!(lines[2].starts_with("ba,100,99,ci,1"));
        assert!(lines[3].starts_with("ba,200,199,ci,1"));
    }

    #[test]
    fn atomic_write_replaces_content() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_atomic(&path, "one\n").unwrap();
        write_atomic(&path, "two\n").unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "two\n");
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn report_json_roundtrip() {
        let report = AlgoReport {
            algorithm: "ci".into(),
            input: "x.edges".into(),
            n: 2,
            m: 1,
            modularity: 0.0,
            community_count: 1,
            communities: vec![vec!["a".into(), "b".into()]],
            iterations: 0,
            converged: None,
            seed: None,
            time_ms: 0.1,
            version: "0.1.0".into(),
        };
        let parsed: AlgoReport = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(parsed.communities, report.communities);
        assert_eq!(parsed.modularity, report.modularity);
    }
}
