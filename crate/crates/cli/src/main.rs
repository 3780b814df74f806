mod bench;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use sbesbh_core::datasets::{generate_random, load_snp_table, ExtensionMode, RandomSpec};
use sbesbh_core::oracles::{reduce_mim_to_mdpsp, BipartiteGraph};
use sbesbh_core::report::{design_to_text, parse_report, partition_to_text, Manifest};
use sbesbh_core::solvers::solve_with;
use sbesbh_core::{partition, verify_design, Algorithm, DegreeMode, InstanceSpectra, SolverConfig};

use crate::io::{load_instance, parse_probes, read_input, write_output};

#[derive(Parser, Debug)]
#[command(name = "sbesbh", version, about = "Design decodable probe arrays for multiplexed SNP genotyping")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Summarize a probe space, optionally listing every probe.
    Probes(ProbesArgs),
    /// Generate a random instance.
    Gen(GenArgs),
    /// Turn a SNP flank table into two-primer pools.
    Ingest(IngestArgs),
    /// Select a maximum decodable subset of pools.
    Solve(SolveArgs),
    /// Split all pools across arrays.
    Partition(PartitionArgs),
    /// Check a design or partition report against its instance.
    Verify(VerifyArgs),
    /// Reduce a bipartite graph (induced matching) to a design instance.
    Reduce(ReduceArgs),
    /// Mean selected-pool counts over a grid of random instances.
    Bench(bench::BenchArgs),
}

#[derive(Args, Debug)]
struct ProbesArgs {
    #[arg(long)]
    probes: String,
    /// Print `id<TAB>sequence` for every probe.
    #[arg(long)]
    roster: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    pools: usize,
    #[arg(long, default_value_t = 20)]
    primer_length: usize,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=2))]
    primers_per_pool: u32,
    #[arg(long, default_value = "all4")]
    extensions: ExtensionMode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct IngestArgs {
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 20)]
    primer_length: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct InstanceArgs {
    /// Instance file; standard input when absent.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    probes: String,
    #[arg(long, default_value_t = 1)]
    redundancy: u32,
}

#[derive(Args, Debug, Clone, Copy)]
struct SolverArgs {
    #[arg(long, default_value = "seq")]
    algorithm: Algorithm,
    #[arg(long, default_value = "total")]
    degree: DegreeMode,
}

impl SolverArgs {
    fn config(self) -> SolverConfig {
        SolverConfig {
            algorithm: self.algorithm,
            degree_mode: self.degree,
        }
    }
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PartitionArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long)]
    max_arrays: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Design or partition report to check.
    design: PathBuf,
    /// Instance file; standard input when absent.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Defaults to the report's `probes` header.
    #[arg(long)]
    probes: Option<String>,
    /// Defaults to the report's `redundancy` header.
    #[arg(long)]
    redundancy: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    /// Edge list, `u<TAB>v` per line; standard input when absent.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Where to write the probe list the instance refers to.
    #[arg(long)]
    probe_list: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Outcome of a subcommand that ran to completion.
enum Status {
    Ok,
    VerificationFailed,
}

fn manifest(command: &str) -> Manifest {
    let mut m = Manifest::new();
    m.push("tool", concat!("sbesbh ", env!("CARGO_PKG_VERSION"))).push("command", command);
    m
}

fn run_probes(a: ProbesArgs) -> Result<Status> {
    let space = parse_probes(&a.probes)?;
    let mut m = manifest("probes");
    m.push("probes", &a.probes);
    let mut out = m.to_text();
    out.push_str("space\tsize\tmin_length\n");
    out.push_str(&format!("{}\t{}\t{}\n", a.probes, space.size(), space.min_probe_len()));
    if a.roster {
        out.push_str("# roster\n");
        for (id, p) in space.roster() {
            out.push_str(&format!("{}\t{p}\n", id.0));
        }
    }
    write_output(a.out.as_deref(), &out)?;
    Ok(Status::Ok)
}

fn run_gen(a: GenArgs) -> Result<Status> {
    let spec = RandomSpec {
        n_pools: a.pools,
        primers_per_pool: a.primers_per_pool,
        primer_length: a.primer_length,
        extension_mode: a.extensions,
        rng_seed: a.seed,
    };
    let pools = generate_random(&spec)?;
    let mut m = manifest("gen");
    m.push("pools", a.pools.to_string())
        .push("primer-length", a.primer_length.to_string())
        .push("primers-per-pool", a.primers_per_pool.to_string())
        .push("extensions", a.extensions.to_string())
        .push("seed", a.seed.to_string())
        .push("rng", "xoshiro256++/splitmix64")
        .push("instance", sbesbh_core::instance::fingerprint(&pools));
    let mut out = m.to_text();
    out.push_str(&sbesbh_core::instance::pools_to_text(&pools));
    write_output(a.out.as_deref(), &out)?;
    Ok(Status::Ok)
}

fn run_ingest(a: IngestArgs) -> Result<Status> {
    let ing = match &a.input {
        Some(p) => load_snp_table(p, a.primer_length)?,
        None => sbesbh_core::datasets::parse_snp_table(&read_input(None)?, a.primer_length)?,
    };
    let mut m = manifest("ingest");
    m.push("primer-length", a.primer_length.to_string())
        .push("pools", ing.pools.len().to_string())
        .push("skipped", ing.skipped.len().to_string())
        .push("instance", sbesbh_core::instance::fingerprint(&ing.pools));
    let mut out = m.to_text();
    out.push_str(&ing.to_text());
    write_output(a.out.as_deref(), &out)?;
    Ok(Status::Ok)
}

fn instance_manifest(command: &str, a: &InstanceArgs, inst: &sbesbh_core::ProblemInstance) -> Manifest {
    let mut m = manifest(command);
    m.push("probes", &a.probes)
        .push("probe-space", inst.space.descriptor())
        .push("redundancy", a.redundancy.to_string())
        .push("instance", inst.fingerprint())
        .push("pools", inst.n_pools().to_string());
    m
}

fn run_solve(a: SolveArgs) -> Result<Status> {
    let inst = load_instance(a.instance.input.as_deref(), &a.instance.probes, a.instance.redundancy)?;
    let spectra = InstanceSpectra::compute(&inst);
    let design = solve_with(&inst, &spectra, a.solver.config());
    let mut m = instance_manifest("solve", &a.instance, &inst);
    m.push("algorithm", a.solver.algorithm.to_string())
        .push("degree", a.solver.degree.to_string())
        .push("pruned-primers", spectra.pruned_primers().to_string());
    write_output(a.out.as_deref(), &design_to_text(&m, &design, &inst))?;
    Ok(Status::Ok)
}

fn run_partition(a: PartitionArgs) -> Result<Status> {
    let inst = load_instance(a.instance.input.as_deref(), &a.instance.probes, a.instance.redundancy)?;
    let report = partition(&inst, a.solver.config(), a.max_arrays);
    let mut m = instance_manifest("partition", &a.instance, &inst);
    m.push("algorithm", a.solver.algorithm.to_string())
        .push("degree", a.solver.degree.to_string());
    if let Some(n) = a.max_arrays {
        m.push("max-arrays", n.to_string());
    }
    write_output(a.out.as_deref(), &partition_to_text(&m, &report, &inst))?;
    Ok(Status::Ok)
}

fn run_verify(a: VerifyArgs) -> Result<Status> {
    let text = std::fs::read_to_string(&a.design).with_context(|| format!("reading {}", a.design.display()))?;
    let parsed = parse_report(&text)?;
    let probes = match (&a.probes, parsed.manifest.get("probes")) {
        (Some(p), _) => p.clone(),
        (None, Some(p)) => p.to_string(),
        (None, None) => bail!("--probes not given and the report has no probes header"),
    };
    let redundancy = match (a.redundancy, parsed.manifest.get("redundancy")) {
        (Some(r), _) => r,
        (None, Some(r)) => r.parse().context("bad redundancy header")?,
        (None, None) => bail!("--redundancy not given and the report has no redundancy header"),
    };
    let inst = load_instance(a.input.as_deref(), &probes, redundancy)?;

    let mut out = manifest("verify").to_text();
    let mut violations = 0;
    let mut seen = std::collections::HashMap::new();
    for (i, d) in parsed.designs.iter().enumerate() {
        let rep = verify_design(d, &inst);
        if parsed.designs.len() > 1 {
            out.push_str(&format!("# array\t{}\n", i + 1));
        }
        for v in &rep.violations {
            let pool = v.pool_id.map(|p| p.to_string()).unwrap_or_else(|| "-".into());
            out.push_str(&format!("{pool}\t{}\t{}\n", v.kind, v.detail));
        }
        violations += rep.violations.len();
        for p in d.pool_ids() {
            if let Some(prev) = seen.insert(p, i + 1) {
                out.push_str(&format!("{p}\tduplicate-pool\talso in array {prev}\n"));
                violations += 1;
            }
        }
    }
    out.push_str(&format!("# designs: {}\n# violations: {violations}\n", parsed.designs.len()));
    write_output(a.out.as_deref(), &out)?;
    Ok(if violations == 0 { Status::Ok } else { Status::VerificationFailed })
}

fn run_reduce(a: ReduceArgs) -> Result<Status> {
    let g = BipartiteGraph::parse_edge_list(&read_input(a.input.as_deref())?)?;
    let red = reduce_mim_to_mdpsp(&g)?;
    let mut list = String::new();
    for (v, x) in red.probe_assignment.iter().enumerate() {
        list.push_str(&format!("# v{v}\t{x}\n"));
    }
    for x in &red.probe_assignment {
        list.push_str(&format!("{}\n", x.reverse_complement()));
    }
    write_output(Some(&a.probe_list), &list)?;

    let mut m = manifest("reduce");
    m.push("probes", format!("list:{}", a.probe_list.display()))
        .push("redundancy", "1")
        .push("left", g.n_left().to_string())
        .push("right", g.n_right().to_string())
        .push("l", red.l.to_string())
        .push("instance", red.instance.fingerprint());
    let mut out = m.to_text();
    out.push_str(&red.instance.to_text());
    write_output(a.out.as_deref(), &out)?;
    Ok(Status::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let result = match cli.command {
        Command::Probes(a) => run_probes(a),
        Command::Gen(a) => run_gen(a),
        Command::Ingest(a) => run_ingest(a),
        Command::Solve(a) => run_solve(a),
        Command::Partition(a) => run_partition(a),
        Command::Verify(a) => run_verify(a),
        Command::Reduce(a) => run_reduce(a),
        Command::Bench(a) => bench::run(a).map(|_| Status::Ok),
    };
    eprintln!("# elapsed\t{:.3}s", started.elapsed().as_secs_f64());
    match result {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::VerificationFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
