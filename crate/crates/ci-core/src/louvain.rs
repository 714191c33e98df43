//! From-scratch Louvain: local moving plus graph aggregation.
//!
//! The working graph carries accumulated edge weights and self-loops so that
//! levels can be aggregated; self-loop weights are stored already doubled
//! (a community's internal weight ends up as a self-loop of weight twice the
//! internal edge sum), which keeps node strengths and the total weight
//! conserved across levels.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::graph::Graph;
use crate::partition::{modularity, Partition};

/// Louvain configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LouvainConfig {
    /// Seed for the per-sweep node-visit shuffle.
    pub seed: u64,
    /// Minimal gain for a node move to be accepted.
    pub min_gain: f64,
    /// Sweep cap per level.
    pub max_passes: usize,
}

impl Default for LouvainConfig {
    fn default() -> Self {
        LouvainConfig {
            seed: 0,
            min_gain: 0.0,
            max_passes: 100,
        }
    }
}

/// Result of a Louvain run, flattened onto the original nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct LouvainOutcome {
    pub partition: Partition,
    pub modularity: f64,
    /// Modularity after each level's local-moving phase; non-decreasing.
    pub level_modularity: Vec<f64>,
    pub seed: u64,
}

/// Weighted undirected graph with (doubled) self-loop weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WorkingGraph {
    adj: Vec<BTreeMap<u32, f64>>,
    self_loops: Vec<f64>,
    total_weight: f64,
}

impl WorkingGraph {
    /// Unit-weight copy of a simple graph.
    pub fn from_graph(g: &Graph) -> WorkingGraph {
        let mut adj = alloc::vec![BTreeMap::new(); g.node_count()];
        for &(u, v) in g.edges() {
            adj[u as usize].insert(v, 1.0);
            adj[v as usize].insert(u, 1.0);
        }
        WorkingGraph {
            adj,
            self_loops: alloc::vec![0.0; g.node_count()],
            total_weight: g.edge_count() as f64,
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    /// Total edge weight (undirected edges once, plus half of each doubled
    /// self-loop).
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    /// Node strength: incident edge weight plus the doubled self-loop.
    pub fn strength(&self, u: u32) -> f64 {
        self.adj[u as usize].values().sum::<f64>() + self.self_loops[u as usize]
    }

    /// Modularity of an assignment over this working graph.
    pub fn modularity(&self, assignment: &[u32]) -> f64 {
        let w = self.total_weight;
        let mut internal: BTreeMap<u32, f64> = BTreeMap::new();
        let mut degree: BTreeMap<u32, f64> = BTreeMap::new();
        for u in 0..self.adj.len() {
            let cu = assignment[u];
            *degree.entry(cu).or_default() += self.strength(u as u32);
            *internal.entry(cu).or_default() += self.self_loops[u] / 2.0;
            for (&v, &wt) in &self.adj[u] {
                if (v as usize) > u && assignment[v as usize] == cu {
                    *internal.entry(cu).or_default() += wt;
                }
            }
        }
        degree
            .iter()
            .map(|(c, &d)| {
                let frac = d / (2.0 * w);
                internal.get(c).copied().unwrap_or(0.0) / w - frac * frac
            })
            .sum()
    }
}

/// One local-moving phase: sweeps nodes in seeded shuffled order, moving each
/// to the neighbouring community with maximal positive gain, until a sweep
/// changes nothing. Returns the assignment and whether anything moved.
pub fn local_move_pass(
    wg: &WorkingGraph,
    rng: &mut ChaCha8Rng,
    config: &LouvainConfig,
) -> (Vec<u32>, bool) {
    let n = wg.node_count();
    let two_w = 2.0 * wg.total_weight();
    let mut assignment: Vec<u32> = (0..n as u32).collect();
    let mut sigma_tot: Vec<f64> = (0..n as u32).map(|u| wg.strength(u)).collect();
    let mut improved = false;

    let mut visit: Vec<u32> = (0..n as u32).collect();
    for _ in 0..config.max_passes {
        visit.shuffle(rng);
        let mut moved = false;
        for &u in &visit {
            let current = assignment[u as usize];
            let k_u = wg.strength(u);
            sigma_tot[current as usize] -= k_u;

            // Edge weight from u into each neighbouring community.
            let mut k_in: BTreeMap<u32, f64> = BTreeMap::new();
            k_in.insert(current, 0.0);
            for (&v, &wt) in &wg.adj[u as usize] {
                *k_in.entry(assignment[v as usize]).or_default() += wt;
            }

            let gain = |c: u32, k: f64| {
                k / wg.total_weight() - sigma_tot[c as usize] * k_u / (two_w * wg.total_weight())
            };
            let stay = gain(current, k_in[&current]);
            let mut best = (current, stay);
            for (&c, &k) in &k_in {
                if c == current {
                    continue;
                }
                let d = gain(c, k);
                if d > best.1 + config.min_gain {
                    best = (c, d);
                }
            }
            if best.0 != current {
                moved = true;
                improved = true;
            }
            assignment[u as usize] = best.0;
            sigma_tot[best.0 as usize] += k_u;
        }
        if !moved {
            break;
        }
    }
    (renumber(&assignment), improved)
}

fn renumber(assignment: &[u32]) -> Vec<u32> {
    let mut remap: BTreeMap<u32, u32> = BTreeMap::new();
    let mut next = 0u32;
    assignment
        .iter()
        .map(|&c| {
            *remap.entry(c).or_insert_with(|| {
                let id = next;
                next += 1;
                id
            })
        })
        .collect()
}

/// Collapses each community into one node; inter-community weights sum,
/// intra-community weight doubles into the self-loop.
pub fn aggregate_graph(wg: &WorkingGraph, assignment: &[u32]) -> WorkingGraph {
    let count = assignment.iter().copied().max().map(|c| c + 1).unwrap_or(0) as usize;
    let mut adj = alloc::vec![BTreeMap::new(); count];
    let mut self_loops = alloc::vec![0.0; count];
    for u in 0..wg.node_count() {
        let cu = assignment[u];
        self_loops[cu as usize] += wg.self_loops[u];
        for (&v, &wt) in &wg.adj[u] {
            if (v as usize) < u {
                continue;
            }
            let cv = assignment[v as usize];
            if cu == cv {
                self_loops[cu as usize] += 2.0 * wt;
            } else {
                *adj[cu as usize].entry(cv).or_default() += wt;
                *adj[cv as usize].entry(cu).or_default() += wt;
            }
        }
    }
    WorkingGraph {
        adj,
        self_loops,
        total_weight: wg.total_weight,
    }
}

/// Full Louvain: alternates local moving and aggregation until a level makes
/// no further improvement; the partition is reported on the original nodes.
pub fn louvain(g: &Graph, config: &LouvainConfig) -> Result<LouvainOutcome, Error> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut wg = WorkingGraph::from_graph(g);
    // node -> current supernode, flattened across levels
    let mut flat: Vec<u32> = (0..g.node_count() as u32).collect();
    let mut level_modularity = Vec::new();

    loop {
        let (assignment, improved) = local_move_pass(&wg, &mut rng, config);
        if !improved {
            break;
        }
        for slot in flat.iter_mut() {
            *slot = assignment[*slot as usize];
        }
        let partition = Partition::from_assignment(g, flat.clone());
        level_modularity.push(modularity(g, &partition)?);
        wg = aggregate_graph(&wg, &assignment);
    }

    let partition = Partition::from_assignment(g, flat);
    let q = modularity(g, &partition)?;
    Ok(LouvainOutcome {
        partition,
        modularity: q,
        level_modularity,
        seed: config.seed,
    })
}
