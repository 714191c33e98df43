//! Seeded synthetic graph generators.
//!
//! Both generators run on an explicit ChaCha8 stream so that a (config,
//! seed) pair produces the same graph on every platform.

use alloc::string::ToString;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::graph::Graph;
use crate::partition::Partition;

/// Preferential-attachment configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BaConfig {
    /// Final node count.
    pub n: u32,
    /// Edges added per new node.
    pub m_attach: u32,
    pub seed: u64,
}

/// Planted-partition configuration. The groups are the ground-truth
/// communities; intra-group pairs connect with `p_in`, inter-group pairs
/// with `p_out`. (The literature sometimes files these under "ER networks";
/// the planted-partition name is used throughout this crate.)
#[derive(Debug, Clone, PartialEq)]
pub struct PlantedConfig {
    pub sizes: Vec<u32>,
    pub p_in: f64,
    pub p_out: f64,
    pub seed: u64,
}

/// Grows a preferential-attachment graph: starts from a single node, the
/// first newcomer attaches deterministically, every later newcomer draws
/// degree-proportional targets (with replacement) until it has collected
/// `m_attach` distinct ones — or as many as exist. With `m_attach = 1` the
/// result is a tree.
pub fn gen_ba(config: &BaConfig) -> Result<Graph, Error> {
    if config.m_attach < 1 || config.m_attach >= config.n {
        return Err(Error::InvalidConfig(alloc::format!(
            "preferential attachment needs 1 <= m_attach < n, got m_attach={} n={}",
            config.m_attach,
            config.n
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut edges: Vec<(u32, u32)> = Vec::new();
    // One entry per edge endpoint; sampling an index uniformly is sampling a
    // node with probability proportional to its degree.
    let mut endpoints: Vec<u32> = Vec::new();

    edges.push((0, 1));
    endpoints.extend([0, 1]);

    for t in 2..config.n {
        let want = (config.m_attach as usize).min(t as usize);
        let mut targets: Vec<u32> = Vec::with_capacity(want);
        while targets.len() < want {
            let pick = endpoints[rng.gen_range(0..endpoints.len())];
            if !targets.contains(&pick) {
                targets.push(pick);
            }
        }
        for target in targets {
            edges.push((target, t));
            endpoints.extend([target, t]);
        }
    }
    Graph::from_numeric_edges(config.n, &edges)
}

/// Solves for `(p_in, p_out)` such that `p_in = ratio·p_out` and the
/// expected degree `(n/groups − 1)·p_in + (n − n/groups)·p_out` equals
/// `avg_degree`.
pub fn planted_params(
    n: u32,
    groups: u32,
    avg_degree: f64,
    ratio: f64,
) -> Result<(f64, f64), Error> {
    if groups == 0 || !n.is_multiple_of(groups) {
        return Err(Error::InvalidConfig(alloc::format!(
            "{groups} does not divide {n}"
        )));
    }
    if ratio < 1.0 {
        return Err(Error::InvalidConfig("ratio must be >= 1".to_string()));
    }
    if avg_degree < 0.0 {
        return Err(Error::InvalidConfig(
            "average degree must be >= 0".to_string(),
        ));
    }
    if avg_degree == 0.0 {
        return Ok((0.0, 0.0));
    }
    let size = (n / groups) as f64;
    let denom = (size - 1.0) * ratio + (n as f64 - size);
    if denom <= 0.0 {
        return Err(Error::InvalidConfig(
            "no pair to place an edge on".to_string(),
        ));
    }
    let p_out = avg_degree / denom;
    let p_in = ratio * p_out;
    if p_in > 1.0 {
        return Err(Error::InvalidConfig(alloc::format!(
            "infeasible: p_in = {p_in} exceeds 1"
        )));
    }
    Ok((p_in, p_out))
}

/// Samples a planted-partition graph and returns it with the ground-truth
/// partition. Isolated nodes are permitted.
pub fn gen_planted(config: &PlantedConfig) -> Result<(Graph, Partition), Error> {
    if config.sizes.is_empty() || config.sizes.contains(&0) {
        return Err(Error::InvalidConfig(
            "group sizes must be positive".to_string(),
        ));
    }
    let valid = |p: f64| (0.0..=1.0).contains(&p);
    if !valid(config.p_in) || !valid(config.p_out) || config.p_out > config.p_in {
        return Err(Error::InvalidConfig(alloc::format!(
            "need 0 <= p_out <= p_in <= 1, got p_in={} p_out={}",
            config.p_in,
            config.p_out
        )));
    }
    let n: u32 = config.sizes.iter().sum();
    let mut block = Vec::with_capacity(n as usize);
    for (b, &size) in config.sizes.iter().enumerate() {
        block.extend(core::iter::repeat_n(b as u32, size as usize));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let p = if block[u as usize] == block[v as usize] {
                config.p_in
            } else {
                config.p_out
            };
            if p > 0.0 && rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    let graph = Graph::from_numeric_edges(n, &edges)?;
    let truth = Partition::from_assignment(&graph, block);
    Ok((graph, truth))
}
