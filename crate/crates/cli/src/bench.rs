use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use rayon::prelude::*;
use sbesbh_core::datasets::{generate_random, ExtensionMode, RandomSpec};
use sbesbh_core::solvers::solve_with;
use sbesbh_core::{Algorithm, DegreeMode, InstanceSpectra, ProblemInstance, SolverConfig};

use crate::io::{parse_probes, write_output};

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Comma-separated pool counts.
    #[arg(long)]
    pools: String,
    /// Comma-separated probe spaces, one output column each.
    #[arg(long)]
    probes: String,
    /// Comma-separated redundancy values.
    #[arg(long, default_value = "1")]
    redundancy: String,
    /// Comma-separated algorithms.
    #[arg(long, default_value = "seq,minprimer,minprobe")]
    algorithm: String,
    #[arg(long, default_value = "total")]
    degree: DegreeMode,
    #[arg(long, default_value_t = 20)]
    primer_length: usize,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=2))]
    primers_per_pool: u32,
    #[arg(long, default_value = "all4")]
    extensions: ExtensionMode,
    /// Replicate i uses seed + i.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    replicates: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    s.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|e| anyhow::anyhow!("bad {what} {t:?}: {e}")))
        .collect()
}

pub fn run(a: BenchArgs) -> Result<()> {
    let ns: Vec<usize> = list(&a.pools, "pool count")?;
    let rs: Vec<u32> = list(&a.redundancy, "redundancy")?;
    let algs: Vec<Algorithm> = list(&a.algorithm, "algorithm")?;
    let probe_args: Vec<String> = a.probes.split(',').map(|s| s.trim().to_string()).collect();
    let spaces = probe_args
        .iter()
        .map(|p| parse_probes(p))
        .collect::<Result<Vec<_>>>()
        .context("parsing --probes")?;
    if a.replicates == 0 {
        anyhow::bail!("--replicates must be at least 1");
    }

    let cells: Vec<(usize, usize, u64)> = ns
        .iter()
        .flat_map(|&n| (0..spaces.len()).flat_map(move |s| (0..a.replicates).map(move |rep| (n, s, rep))))
        .collect();

    // (n, space, rep) -> [(r, algorithm, selected)]
    let results: Vec<((usize, usize), Vec<(u32, Algorithm, usize)>)> = cells
        .par_iter()
        .map(|&(n, s, rep)| -> Result<_> {
            let pools = generate_random(&RandomSpec {
                n_pools: n,
                primers_per_pool: a.primers_per_pool,
                primer_length: a.primer_length,
                extension_mode: a.extensions,
                rng_seed: a.seed.wrapping_add(rep),
            })?;
            let base = ProblemInstance::new(pools, spaces[s].clone(), 1)?;
            let spectra = InstanceSpectra::compute(&base);
            let mut out = Vec::new();
            for &r in &rs {
                let inst = ProblemInstance { redundancy: r, ..base.clone() };
                for &alg in &algs {
                    let cfg = SolverConfig {
                        algorithm: alg,
                        degree_mode: a.degree,
                    };
                    out.push((r, alg, solve_with(&inst, &spectra, cfg).len()));
                }
            }
            Ok(((n, s), out))
        })
        .collect::<Result<_>>()?;

    let mut sums: BTreeMap<(u32, usize, usize, usize), usize> = BTreeMap::new();
    for ((n, s), rows) in results {
        for (r, alg, selected) in rows {
            let ai = algs.iter().position(|&x| x == alg).unwrap();
            *sums.entry((r, n, ai, s)).or_default() += selected;
        }
    }

    let mut out = String::new();
    for (k, v) in [
        ("tool", concat!("sbesbh ", env!("CARGO_PKG_VERSION")).to_string()),
        ("command", "bench".into()),
        ("pools", a.pools.clone()),
        ("probes", a.probes.clone()),
        ("redundancy", a.redundancy.clone()),
        ("algorithm", a.algorithm.clone()),
        ("degree", a.degree.to_string()),
        ("primer-length", a.primer_length.to_string()),
        ("primers-per-pool", a.primers_per_pool.to_string()),
        ("extensions", a.extensions.to_string()),
        ("seed", a.seed.to_string()),
        ("replicates", a.replicates.to_string()),
        ("statistic", "mean selected pools".into()),
    ] {
        out.push_str(&format!("# {k}\t{v}\n"));
    }
    out.push_str("r\tpools\talgorithm");
    for p in &probe_args {
        out.push('\t');
        out.push_str(p);
    }
    out.push('\n');
    for &r in &rs {
        for &n in &ns {
            for (ai, alg) in algs.iter().enumerate() {
                out.push_str(&format!("{r}\t{n}\t{alg}"));
                for s in 0..spaces.len() {
                    let mean = sums[&(r, n, ai, s)] as f64 / a.replicates as f64;
                    out.push_str(&format!("\t{mean:.1}"));
                }
                out.push('\n');
            }
        }
    }
    write_output(a.out.as_deref(), &out)
}
