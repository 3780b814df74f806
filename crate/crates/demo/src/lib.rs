//! Browser bindings for the demo page in `www/`.
//!
//! Each exported function takes plain arguments and returns a JSON string;
//! failures come back as `{"error": "..."}` so the page never has to catch.

use sbesbh_core::datasets::{generate_random, ExtensionMode, RandomSpec};
use sbesbh_core::partitioner::{coverage_curve, coverage_curve_decodable};
use sbesbh_core::solvers::solve_with;
use sbesbh_core::{
    partition, Algorithm, DegreeMode, DnaString, InstanceSpectra, ProbeSpace, ProbeSpaceKind, ProblemInstance,
    SolverConfig,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Keeps the page responsive; larger runs belong on the command line.
pub const MAX_POOLS: usize = 20_000;
const MAX_LISTED: usize = 200;

#[derive(Serialize, Debug, PartialEq)]
pub struct SpaceInfo {
    pub space: String,
    pub size: u64,
    pub min_length: usize,
    pub sequence_length: usize,
    /// Number of probes hybridizing with the query sequence.
    pub spectrum_size: usize,
    /// First few of them as `(id, sequence)`.
    pub spectrum: Vec<(u32, String)>,
}

#[derive(Serialize, Debug, PartialEq)]
pub struct AlgorithmRun {
    pub algorithm: String,
    pub selected: usize,
}

#[derive(Serialize, Debug, PartialEq)]
pub struct SolveSummary {
    pub pools: usize,
    pub fingerprint: String,
    pub pruned_primers: usize,
    pub runs: Vec<AlgorithmRun>,
}

#[derive(Serialize, Debug, PartialEq)]
pub struct CurvePoint {
    pub array: usize,
    pub size: usize,
    pub fraction: f64,
    pub fraction_decodable: f64,
}

#[derive(Serialize, Debug, PartialEq)]
pub struct PartitionSummary {
    pub pools: usize,
    pub uncovered: usize,
    pub curve: Vec<CurvePoint>,
}

/// Parameters shared by the two random-instance operations.
#[derive(Clone, Debug)]
pub struct RandomInstance {
    pub pools: usize,
    pub primers_per_pool: u32,
    pub extensions: String,
    pub probes: String,
    pub redundancy: u32,
    pub seed: u64,
}

impl RandomInstance {
    fn build(&self) -> Result<ProblemInstance, String> {
        if self.pools > MAX_POOLS {
            return Err(format!("at most {MAX_POOLS} pools in the browser"));
        }
        let extension_mode: ExtensionMode = self.extensions.parse().map_err(|e| format!("{e}"))?;
        let pools = generate_random(&RandomSpec {
            n_pools: self.pools,
            primers_per_pool: self.primers_per_pool,
            primer_length: 20,
            extension_mode,
            rng_seed: self.seed,
        })
        .map_err(|e| e.to_string())?;
        let space = parse_space(&self.probes)?;
        ProblemInstance::new(pools, space, self.redundancy).map_err(|e| e.to_string())
    }
}

fn parse_space(s: &str) -> Result<ProbeSpace, String> {
    let kind: ProbeSpaceKind = s.parse().map_err(|e| format!("{e}"))?;
    ProbeSpace::new(kind).map_err(|e| e.to_string())
}

pub fn space_info(probes: &str, sequence: &str) -> Result<SpaceInfo, String> {
    let space = parse_space(probes)?;
    let seq: DnaString = sequence.trim().parse().map_err(|e| format!("{e}"))?;
    let spectrum = space.spectrum(seq.bases());
    Ok(SpaceInfo {
        space: probes.to_string(),
        size: space.size(),
        min_length: space.min_probe_len(),
        sequence_length: seq.len(),
        spectrum_size: spectrum.len(),
        spectrum: spectrum
            .iter()
            .take(MAX_LISTED)
            .map(|&id| (id.0, space.probe(id).map(|p| p.to_string()).unwrap_or_default()))
            .collect(),
    })
}

pub fn solve_all(params: &RandomInstance, degree: &str) -> Result<SolveSummary, String> {
    let inst = params.build()?;
    let degree_mode: DegreeMode = degree.parse().map_err(|e| format!("{e}"))?;
    let spectra = InstanceSpectra::compute(&inst);
    let runs = Algorithm::ALL
        .iter()
        .map(|&algorithm| AlgorithmRun {
            algorithm: algorithm.to_string(),
            selected: solve_with(&inst, &spectra, SolverConfig { algorithm, degree_mode }).len(),
        })
        .collect();
    Ok(SolveSummary {
        pools: inst.n_pools(),
        fingerprint: inst.fingerprint(),
        pruned_primers: spectra.pruned_primers(),
        runs,
    })
}

pub fn partition_summary(params: &RandomInstance, algorithm: &str) -> Result<PartitionSummary, String> {
    let inst = params.build()?;
    let algorithm: Algorithm = algorithm.parse().map_err(|e| format!("{e}"))?;
    let report = partition(&inst, SolverConfig::new(algorithm), None);
    let curve = coverage_curve(&report)
        .into_iter()
        .zip(coverage_curve_decodable(&report))
        .zip(report.array_sizes())
        .map(|(((array, fraction), (_, fraction_decodable)), size)| CurvePoint {
            array,
            size,
            fraction,
            fraction_decodable,
        })
        .collect();
    Ok(PartitionSummary {
        pools: report.n_pools,
        uncovered: report.uncovered.len(),
        curve,
    })
}

fn to_json<T: Serialize>(r: Result<T, String>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v).unwrap_or_else(|e| error_json(&e.to_string())),
        Err(e) => error_json(&e),
    }
}

fn error_json(msg: &str) -> String {
    serde_json::json!({ "error": msg }).to_string()
}

#[wasm_bindgen(js_name = probeSpaceInfo)]
pub fn probe_space_info(probes: &str, sequence: &str) -> String {
    to_json(space_info(probes, sequence))
}

#[wasm_bindgen(js_name = solveRandom)]
#[allow(clippy::too_many_arguments)]
pub fn solve_random(
    pools: usize,
    primers_per_pool: u32,
    extensions: &str,
    probes: &str,
    redundancy: u32,
    degree: &str,
    seed: u64,
) -> String {
    let params = RandomInstance {
        pools,
        primers_per_pool,
        extensions: extensions.into(),
        probes: probes.into(),
        redundancy,
        seed,
    };
    to_json(solve_all(&params, degree))
}

#[wasm_bindgen(js_name = partitionCurve)]
pub fn partition_curve(
    pools: usize,
    primers_per_pool: u32,
    extensions: &str,
    probes: &str,
    redundancy: u32,
    algorithm: &str,
    seed: u64,
) -> String {
    let params = RandomInstance {
        pools,
        primers_per_pool,
        extensions: extensions.into(),
        probes: probes.into(),
        redundancy,
        seed,
    };
    to_json(partition_summary(&params, algorithm))
}
