//! Partition bookkeeping: community assignments, modularity and merge gains.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::Error;
use crate::graph::{Graph, NodeId};

/// Per-community aggregates tracked incrementally across merges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Community {
    /// Members, kept sorted by node id.
    pub members: Vec<NodeId>,
    /// Number of edges with both endpoints inside the community (`e_c`).
    pub internal_edges: u64,
    /// Sum of member degrees (`d_c`).
    pub total_degree: u64,
}

/// Node-to-community assignment with per-community edge/degree aggregates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    assignment: Vec<u32>,
    communities: BTreeMap<u32, Community>,
}

impl Partition {
    /// All-singletons partition: community id = node id.
    pub fn singletons(g: &Graph) -> Partition {
        let n = g.node_count();
        let assignment: Vec<u32> = (0..n as u32).collect();
        let communities = (0..n as u32)
            .map(|u| {
                (
                    u,
                    Community {
                        members: alloc::vec![u],
                        internal_edges: 0,
                        total_degree: g.degree(u) as u64,
                    },
                )
            })
            .collect();
        Partition {
            assignment,
            communities,
        }
    }

    /// Builds a partition from an explicit assignment vector.
    pub fn from_assignment(g: &Graph, assignment: Vec<u32>) -> Partition {
        assert_eq!(assignment.len(), g.node_count());
        let mut communities: BTreeMap<u32, Community> = BTreeMap::new();
        for (u, &c) in assignment.iter().enumerate() {
            let entry = communities.entry(c).or_insert_with(|| Community {
                members: Vec::new(),
                internal_edges: 0,
                total_degree: 0,
            });
            entry.members.push(u as NodeId);
            entry.total_degree += g.degree(u as NodeId) as u64;
        }
        for &(u, v) in g.edges() {
            if assignment[u as usize] == assignment[v as usize] {
                communities
                    .get_mut(&assignment[u as usize])
                    .unwrap()
                    .internal_edges += 1;
            }
        }
        Partition {
            assignment,
            communities,
        }
    }

    /// Community id of node `u`.
    pub fn community_of(&self, u: NodeId) -> u32 {
        self.assignment[u as usize]
    }

    /// The assignment vector, indexed by node id.
    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    /// Number of communities.
    pub fn community_count(&self) -> usize {
        self.communities.len()
    }

    /// Iterates `(community id, aggregates)` in ascending id order.
    pub fn communities(&self) -> impl Iterator<Item = (u32, &Community)> {
        self.communities.iter().map(|(&c, comm)| (c, comm))
    }

    /// Aggregates of one community.
    pub fn community(&self, c: u32) -> Option<&Community> {
        self.communities.get(&c)
    }

    /// Member node ids per community, communities ordered by smallest member.
    pub fn community_members(&self) -> Vec<Vec<NodeId>> {
        let mut groups: Vec<Vec<NodeId>> = self
            .communities
            .values()
            .map(|c| c.members.clone())
            .collect();
        groups.sort_by_key(|g| g[0]);
        groups
    }

    /// Counts edges with both endpoints in the same community.
    pub fn intra_edge_count(&self, g: &Graph) -> usize {
        g.edges()
            .iter()
            .filter(|&&(u, v)| self.assignment[u as usize] == self.assignment[v as usize])
            .count()
    }

    /// Reassigns all members of `absorbed` into `kept`, updating aggregates
    /// incrementally.
    pub fn merge_into(&mut self, g: &Graph, kept: u32, absorbed: u32) -> Result<(), Error> {
        if kept == absorbed {
            return Err(Error::InvalidMerge(kept));
        }
        if !self.communities.contains_key(&kept) {
            return Err(Error::UnknownCommunity(kept));
        }
        let cross = self.cross_edges(g, kept, absorbed)?;
        let removed = self.communities.remove(&absorbed).unwrap();
        for &u in &removed.members {
            self.assignment[u as usize] = kept;
        }
        let target = self.communities.get_mut(&kept).unwrap();
        target.members.extend_from_slice(&removed.members);
        target.members.sort_unstable();
        target.internal_edges += removed.internal_edges + cross;
        target.total_degree += removed.total_degree;
        Ok(())
    }

    /// Number of edges running between two distinct communities.
    pub fn cross_edges(&self, g: &Graph, ca: u32, cb: u32) -> Result<u64, Error> {
        if ca == cb {
            return Err(Error::InvalidMerge(ca));
        }
        let a = self
            .communities
            .get(&ca)
            .ok_or(Error::UnknownCommunity(ca))?;
        let b = self
            .communities
            .get(&cb)
            .ok_or(Error::UnknownCommunity(cb))?;
        let (small, other) = if a.members.len() <= b.members.len() {
            (a, cb)
        } else {
            (b, ca)
        };
        let count = small
            .members
            .iter()
            .flat_map(|&u| g.neighbors(u))
            .filter(|&&v| self.assignment[v as usize] == other)
            .count();
        Ok(count as u64)
    }
}

/// Newman modularity `Q = Σ_c [e_c/m − (d_c/2m)²]`.
pub fn modularity(g: &Graph, p: &Partition) -> Result<f64, Error> {
    let m = g.edge_count() as f64;
    if g.edge_count() == 0 {
        return Err(Error::UndefinedModularity);
    }
    let two_m = 2.0 * m;
    let q = p
        .communities
        .values()
        .map(|c| {
            let frac = c.total_degree as f64 / two_m;
            c.internal_edges as f64 / m - frac * frac
        })
        .sum();
    Ok(q)
}

/// Gain of merging communities `ca` and `cb`:
/// `ΔQ = e_AB/m − d_A·d_B/(2m²)`, exact in the sense that
/// `Q(after) = Q(before) + ΔQ` up to float rounding.
pub fn merge_gain(g: &Graph, p: &Partition, ca: u32, cb: u32) -> Result<f64, Error> {
    let cross = p.cross_edges(g, ca, cb)? as f64;
    let da = p.communities[&ca].total_degree as f64;
    let db = p.communities[&cb].total_degree as f64;
    let m = g.edge_count() as f64;
    Ok(cross / m - da * db / (2.0 * m * m))
}

/// Functional form of [`Partition::merge_into`]: returns the merged partition.
pub fn apply_merge(g: &Graph, p: &Partition, ca: u32, cb: u32) -> Result<Partition, Error> {
    let mut next = p.clone();
    next.merge_into(g, ca, cb)?;
    Ok(next)
}
