//! Shared runners behind the subcommands.

use std::time::Instant;

use anyhow::{bail, Context};

use ci_core::{
    detect, gen_ba, gen_planted, louvain, planted_params, Algo, BaConfig, DetectConfig, Graph,
    LouvainConfig, LouvainOutcome, PlantedConfig,
};

use crate::report::{AlgoReport, BenchRow};

/// Algorithm selector shared by `detect` and `bench`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Ci,
    Ciia,
    Louvain,
}

impl Algorithm {
    pub fn parse(name: &str) -> anyhow::Result<Algorithm> {
        match name {
            "ci" => Ok(Algorithm::Ci),
            "ciia" => Ok(Algorithm::Ciia),
            "louvain" => Ok(Algorithm::Louvain),
            other => bail!("unknown algorithm {other:?} (expected ci, ciia or louvain)"),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Ci => "ci",
            Algorithm::Ciia => "ciia",
            Algorithm::Louvain => "louvain",
        }
    }
}

/// Per-run options.
#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    /// Louvain shuffle seed.
    pub seed: u64,
    /// Reweighting round cap (counting the unweighted round).
    pub max_rounds: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: 0,
            max_rounds: 50,
        }
    }
}

/// Runs one algorithm on a graph and assembles the report, timing the run.
pub fn run_algorithm(
    g: &Graph,
    algo: Algorithm,
    opts: &RunOptions,
    input: &str,
) -> anyhow::Result<AlgoReport> {
    let start = Instant::now();
    let (partition, modularity, iterations, converged, seed) = match algo {
        Algorithm::Ci | Algorithm::Ciia => {
            let kind = if algo == Algorithm::Ci {
                Algo::Ci
            } else {
                Algo::Ciia
            };
            let config = DetectConfig {
                max_rounds: opts.max_rounds,
                ..DetectConfig::default()
            };
            let out = detect(g, kind, &config).with_context(|| format!("{} run", algo.name()))?;
            let converged = out.trace.as_ref().map(|t| t.converged);
            (out.partition, out.modularity, out.rounds, converged, None)
        }
        Algorithm::Louvain => {
            let config = LouvainConfig {
                seed: opts.seed,
                ..LouvainConfig::default()
            };
            let out = louvain(g, &config).context("louvain run")?;
            (out.partition, out.modularity, 0, None, Some(opts.seed))
        }
    };
    let time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(AlgoReport {
        algorithm: algo.name().to_string(),
        input: input.to_string(),
        n: g.node_count(),
        m: g.edge_count(),
        modularity,
        community_count: partition.community_count(),
        communities: AlgoReport::communities_from(g, &partition),
        iterations,
        converged,
        seed,
        time_ms,
        version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

/// Best-of-k Louvain by modularity; ties keep the smallest seed.
pub fn louvain_best_of(
    g: &Graph,
    seeds: impl Iterator<Item = u64>,
) -> anyhow::Result<LouvainOutcome> {
    let mut best: Option<LouvainOutcome> = None;
    for seed in seeds {
        let out = louvain(
            g,
            &LouvainConfig {
                seed,
                ..LouvainConfig::default()
            },
        )?;
        if best.as_ref().is_none_or(|b| out.modularity > b.modularity) {
            best = Some(out);
        }
    }
    best.ok_or_else(|| anyhow::anyhow!("no seeds supplied"))
}

/// `start:end:step` inclusive size range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeRange {
    pub start: u32,
    pub end: u32,
    pub step: u32,
}

impl SizeRange {
    pub fn parse(spec: &str) -> anyhow::Result<SizeRange> {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            bail!("size range must be start:end:step, got {spec:?}");
        }
        let parse = |s: &str| {
            s.parse::<u32>()
                .with_context(|| format!("bad number {s:?}"))
        };
        let range = SizeRange {
            start: parse(parts[0])?,
            end: parse(parts[1])?,
            step: parse(parts[2])?,
        };
        if range.step == 0 || range.start == 0 || range.end < range.start {
            bail!("size range must satisfy 0 < start <= end and step > 0, got {spec:?}");
        }
        Ok(range)
    }

    pub fn sizes(&self) -> Vec<u32> {
        (self.start..=self.end)
            .step_by(self.step as usize)
            .collect()
    }
}

/// Benchmark families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Ba,
    Planted,
}

impl Family {
    pub fn parse(name: &str) -> anyhow::Result<Family> {
        match name {
            "ba" => Ok(Family::Ba),
            "planted" => Ok(Family::Planted),
            other => bail!("unknown family {other:?} (expected ba or planted)"),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Ba => "ba",
            Family::Planted => "planted",
        }
    }
}

/// Full sweep specification.
#[derive(Debug, Clone)]
pub struct BenchSpec {
    pub family: Family,
    pub sizes: SizeRange,
    pub algos: Vec<Algorithm>,
    pub seeds: u64,
    pub m_attach: u32,
    pub groups: u32,
    pub avg_degree: f64,
    pub ratio: f64,
    pub max_rounds: usize,
}

/// Generates one graph per `(size, seed)` cell and runs each algorithm on
/// it; the seed doubles as the Louvain shuffle seed.
pub fn run_bench(spec: &BenchSpec) -> anyhow::Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for n in spec.sizes.sizes() {
        for seed in 0..spec.seeds {
            let graph = match spec.family {
                Family::Ba => gen_ba(&BaConfig {
                    n,
                    m_attach: spec.m_attach,
                    seed,
                })
                .map_err(|e| anyhow::anyhow!("ba n={n}: {e}"))?,
                Family::Planted => {
                    let (p_in, p_out) = planted_params(n, spec.groups, spec.avg_degree, spec.ratio)
                        .map_err(|e| anyhow::anyhow!("planted n={n}: {e}"))?;
                    let sizes = vec![n / spec.groups; spec.groups as usize];
                    let (g, _) = gen_planted(&PlantedConfig {
                        sizes,
                        p_in,
                        p_out,
                        seed,
                    })
                    .map_err(|e| anyhow::anyhow!("planted n={n}: {e}"))?;
                    g
                }
            };
            for &algo in &spec.algos {
                let opts = RunOptions {
                    seed,
                    max_rounds: spec.max_rounds,
                };
                let report = run_algorithm(&graph, algo, &opts, spec.family.name())?;
                rows.push(BenchRow {
                    family: spec.family.name().to_string(),
                    n: report.n,
                    m: report.m,
                    algo: algo.name().to_string(),
                    seed,
                    modularity: report.modularity,
                    time_ms: report.time_ms,
                    iterations: report.iterations,
                });
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_range_parses() {
        let r = SizeRange::parse("500:3000:500").unwrap();
        assert_eq!(r.sizes(), [500, 1000, 1500, 2000, 2500, 3000]);
        assert!(SizeRange::parse("10:5:1").is_err());
        assert!(SizeRange::parse("1:2").is_err());
        assert!(SizeRange::parse("1:2:0").is_err());
    }

    #[test]
    fn algorithm_names_roundtrip() {
        for name in ["ci", "ciia", "louvain"] {
            assert_eq!(Algorithm::parse(name).unwrap().name(), name);
        }
        assert!(Algorithm::parse("gn").is_err());
    }

    #[test]
    fn bench_row_count_matches_grid() {
        let spec = BenchSpec {
            family: Family::Ba,
            sizes: SizeRange::parse("40:80:40").unwrap(),
            algos: vec![Algorithm::Ci, Algorithm::Louvain],
            seeds: 2,
            m_attach: 1,
            groups: 10,
            avg_degree: 6.0,
            ratio: 100.0,
            max_rounds: 50,
        };
        let rows = run_bench(&spec).unwrap();
        assert_eq!(rows.len(), 2 * 2 * 2); // sizes x seeds x algos
        assert!(rows.iter().all(|r| r.m == r.n - 1)); // trees
    }

    #[test]
    fn bench_ba_populates_every_algorithm_column() {
        let spec = BenchSpec {
            family: Family::Ba,
            sizes: SizeRange::parse("30:60:30").unwrap(),
            algos: vec![Algorithm::Ci, Algorithm::Ciia, Algorithm::Louvain],
            seeds: 1,
            m_attach: 1,
            groups: 10,
            avg_degree: 6.0,
            ratio: 100.0,
            max_rounds: 50,
        };
        let rows = run_bench(&spec).unwrap();
        for n in [30usize, 60] {
            for algo in ["ci", "ciia", "louvain"] {
                let row = rows
                    .iter()
                    .find(|r| r.n == n && r.algo == algo)
                    .unwrap_or_else(|| panic!("missing row n={n} algo={algo}"));
                assert!(row.modularity.is_finite());
            }
        }
        assert!(rows.iter().any(|r| r.algo == "ciia" && r.iterations > 0));
    }
}
