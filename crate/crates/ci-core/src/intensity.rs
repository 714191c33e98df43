//! Unweighted connect-intensity scoring.
//!
//! Each edge `(i, j)` is scored from the two endpoint *circles*: the circle
//! of `i` towards `j` is `i` together with its neighbours, minus `j`. The
//! score is the number of edges actually crossing the two circles minus the
//! number expected if edges were placed at random, both corrected for the
//! circles' overlap:
//!
//! `ci = (actual − actual_overlap) − (expected − expected_overlap)`

use alloc::vec::Vec;

use crate::error::Error;
use crate::graph::{Graph, NodeId};

/// The circle `S_{i→j}`: node `i` plus its neighbours, excluding `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circle {
    pub anchor: NodeId,
    pub excluded: NodeId,
    /// Member ids, sorted.
    pub members: Vec<NodeId>,
}

/// The four edge-count quantities behind a connect-intensity score.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CiComponents {
    /// Cross-circle edge count over ordered member pairs (`E_a`).
    pub actual: f64,
    /// Repeatedly counted actual edges inside the overlap (`E_ra`).
    pub actual_overlap: f64,
    /// Random-placement expectation (`E_p`).
    pub expected: f64,
    /// Repeatedly counted expectation inside the overlap (`E_rp`).
    pub expected_overlap: f64,
}

impl CiComponents {
    /// `ci = (E_a − E_ra) − (E_p − E_rp)`.
    pub fn ci(&self) -> f64 {
        (self.actual - self.actual_overlap) - (self.expected - self.expected_overlap)
    }
}

/// A scored edge; `u < v` by internal id.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeScore {
    pub u: NodeId,
    pub v: NodeId,
    pub components: CiComponents,
    pub ci: f64,
}

/// Builds `S_{i→j}`. Errors unless `(i, j)` is an edge: circles are only
/// evaluated per existing edge.
pub fn circle(g: &Graph, i: NodeId, j: NodeId) -> Result<Circle, Error> {
    if !g.has_edge(i, j) {
        return Err(Error::NotAnEdge(i, j));
    }
    Ok(circle_unchecked(g, i, j))
}

fn circle_unchecked(g: &Graph, i: NodeId, j: NodeId) -> Circle {
    let mut members: Vec<NodeId> = Vec::with_capacity(g.degree(i) as usize);
    for &u in g.neighbors(i) {
        if u != j {
            members.push(u);
        }
    }
    match members.binary_search(&i) {
        Ok(_) => {}
        Err(pos) => members.insert(pos, i),
    }
    Circle {
        anchor: i,
        excluded: j,
        members,
    }
}

/// Sorted intersection of two circles' member lists.
fn overlap(a: &[NodeId], b: &[NodeId]) -> Vec<NodeId> {
    let mut out = Vec::new();
    let (mut x, mut y) = (0, 0);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            core::cmp::Ordering::Less => x += 1,
            core::cmp::Ordering::Greater => y += 1,
            core::cmp::Ordering::Equal => {
                out.push(a[x]);
                x += 1;
                y += 1;
            }
        }
    }
    out
}

/// The four components for edge `(i, j)`.
pub fn ci_components(g: &Graph, i: NodeId, j: NodeId) -> Result<CiComponents, Error> {
    let si = circle(g, i, j)?;
    let sj = circle_unchecked(g, j, i);
    Ok(components_from_circles(g, &si, &sj))
}

fn components_from_circles(g: &Graph, si: &Circle, sj: &Circle) -> CiComponents {
    let two_m = 2.0 * g.edge_count() as f64;

    // E_a sums A_uv over ordered pairs; iterating edges incident to the
    // smaller circle keeps the cost at O(Σ_{u∈S} k_u).
    let (small, large) = if si.members.len() <= sj.members.len() {
        (&si.members, &sj.members)
    } else {
        (&sj.members, &si.members)
    };
    let mut actual = 0u64;
    for &u in small {
        for &x in g.neighbors(u) {
            if large.binary_search(&x).is_ok() {
                actual += 1;
            }
        }
    }

    let inter = overlap(&si.members, &sj.members);
    let mut overlap_edges = 0u64;
    for (idx, &u) in inter.iter().enumerate() {
        for &v in &inter[idx + 1..] {
            if g.has_edge(u, v) {
                overlap_edges += 1;
            }
        }
    }

    let deg_sum = |members: &[NodeId]| -> f64 { members.iter().map(|&u| g.degree(u) as f64).sum() };
    let expected = deg_sum(&si.members) * deg_sum(&sj.members) / two_m;

    // Σ k_u² + ½ Σ_{u≠v} k_u k_v  ==  (Σ k_u² + (Σ k_u)²) / 2
    let k_inter: f64 = inter.iter().map(|&u| g.degree(u) as f64).sum();
    let k2_inter: f64 = inter
        .iter()
        .map(|&u| {
            let k = g.degree(u) as f64;
            k * k
        })
        .sum();
    let expected_overlap = (k2_inter + k_inter * k_inter) / 2.0 / two_m;

    CiComponents {
        actual: actual as f64,
        actual_overlap: overlap_edges as f64,
        expected,
        expected_overlap,
    }
}

/// Scores a single edge.
pub fn ci_edge(g: &Graph, i: NodeId, j: NodeId) -> Result<EdgeScore, Error> {
    let components = ci_components(g, i, j)?;
    Ok(EdgeScore {
        u: i.min(j),
        v: i.max(j),
        components,
        ci: components.ci(),
    })
}

/// Scores every edge once and sorts by descending ci; ties break by the
/// ascending lexicographic `(min label, max label)` edge key.
pub fn ci_all(g: &Graph) -> Vec<EdgeScore> {
    let mut scores: Vec<EdgeScore> = g
        .edges()
        .iter()
        .map(|&(u, v)| ci_edge(g, u, v).expect("edge list entry is an edge"))
        .collect();
    sort_scores(g, &mut scores);
    scores
}

/// Descending-ci sort with the deterministic label tie-break.
pub(crate) fn sort_scores(g: &Graph, scores: &mut [EdgeScore]) {
    scores.sort_by(|a, b| {
        b.ci.total_cmp(&a.ci)
            .then_with(|| label_key(g, a).cmp(&label_key(g, b)))
    });
}

fn label_key<'g>(g: &'g Graph, s: &EdgeScore) -> (&'g str, &'g str) {
    let (a, b) = (g.label(s.u), g.label(s.v));
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}
