//! Heuristics for the maximum decodable pool subset problem.
//!
//! All three are deterministic given the instance order. The vertex removal
//! routines they share live on [`HybridizationGraph`](crate::graph::HybridizationGraph)
//! (`remove_primer`, `remove_probe`).

mod bucket;
mod min_greedy;
mod sequential;

use std::fmt;
use std::str::FromStr;

pub use bucket::BucketQueue;
pub use min_greedy::{min_primer_greedy, min_primer_greedy_with, min_probe_greedy, min_probe_greedy_with};
pub use sequential::{sequential_greedy, sequential_greedy_with};

use crate::decodability::DesignResult;
use crate::error::{Error, Result};
pub use crate::graph::DegreeMode;
use crate::instance::{InstanceSpectra, ProblemInstance};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Algorithm {
    #[default]
    Sequential,
    MinPrimer,
    MinProbe,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Sequential, Algorithm::MinPrimer, Algorithm::MinProbe];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Sequential => "seq",
            Algorithm::MinPrimer => "minprimer",
            Algorithm::MinProbe => "minprobe",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "seq" => Ok(Algorithm::Sequential),
            "minprimer" => Ok(Algorithm::MinPrimer),
            "minprobe" => Ok(Algorithm::MinProbe),
            _ => Err(Error::Config(format!("unknown algorithm {s:?}; expected seq, minprimer or minprobe"))),
        }
    }
}

impl fmt::Display for DegreeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DegreeMode::Total => "total",
            DegreeMode::PositiveOnly => "positive",
        })
    }
}

impl FromStr for DegreeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "total" => Ok(DegreeMode::Total),
            "positive" => Ok(DegreeMode::PositiveOnly),
            _ => Err(Error::Config(format!("unknown degree mode {s:?}; expected total or positive"))),
        }
    }
}

/// `degree_mode` only affects the two min-degree algorithms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct SolverConfig {
    pub algorithm: Algorithm,
    pub degree_mode: DegreeMode,
}

impl SolverConfig {
    pub fn new(algorithm: Algorithm) -> Self {
        SolverConfig {
            algorithm,
            degree_mode: DegreeMode::Total,
        }
    }
}

pub fn solve(instance: &ProblemInstance, config: SolverConfig) -> DesignResult {
    solve_with(instance, &InstanceSpectra::compute(instance), config)
}

/// As [`solve`], reusing precomputed spectra.
pub fn solve_with(instance: &ProblemInstance, spectra: &InstanceSpectra, config: SolverConfig) -> DesignResult {
    match config.algorithm {
        Algorithm::Sequential => sequential_greedy_with(instance, spectra),
        Algorithm::MinPrimer => min_primer_greedy_with(instance, spectra, config.degree_mode),
        Algorithm::MinProbe => min_probe_greedy_with(instance, spectra, config.degree_mode),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decodability::verify_design;
    use crate::dnaseq::BaseSet;
    use crate::instance::{Pool, Primer, Strand};
    use crate::probespace::{ProbeSpace, ProbeSpaceKind};

    fn single_primer_pools(primers: &[(&str, &str)]) -> Vec<Pool> {
        primers
            .iter()
            .enumerate()
            .map(|(i, (s, e))| {
                let p = Primer::new(s.parse().unwrap(), e.parse::<BaseSet>().unwrap(), i as u32, Strand::Forward).unwrap();
                Pool::new(i as u32, vec![p]).unwrap()
            })
            .collect()
    }

    fn inst(primers: &[(&str, &str)], k: u32, r: u32) -> ProblemInstance {
        ProblemInstance::new(single_primer_pools(primers), ProbeSpace::new(ProbeSpaceKind::AllKmers(k)).unwrap(), r).unwrap()
    }

    fn all_configs() -> Vec<SolverConfig> {
        let mut v = Vec::new();
        for a in Algorithm::ALL {
            for m in [DegreeMode::Total, DegreeMode::PositiveOnly] {
                v.push(SolverConfig { algorithm: a, degree_mode: m });
            }
        }
        v
    }

    #[test]
    fn empty_instance_gives_empty_result() {
        let i = inst(&[], 2, 1);
        for c in all_configs() {
            assert!(solve(&i, c).is_empty());
        }
    }

    #[test]
    fn non_interacting_pools_are_all_selected() {
        // k = 3; the three primers share no 3-mer in any extended form
        let i = inst(&[("AAAAA", "C"), ("CCCCC", "A"), ("GTGTG", "T")], 3, 1);
        for c in all_configs() {
            let d = solve(&i, c);
            assert_eq!(d.len(), 3, "{c:?}");
            assert!(verify_design(&d, &i).is_ok());
        }
    }

    #[test]
    fn sequential_skips_duplicate_primer() {
        // pool 1 duplicates pool 0; pool 2 is independent
        let i = inst(&[("AACAA", "G"), ("AACAA", "G"), ("GGTGG", "C")], 2, 1);
        let d = sequential_greedy(&i);
        assert_eq!(d.pool_ids().collect::<Vec<_>>(), vec![0, 2]);
        assert!(verify_design(&d, &i).is_ok());
    }

    #[test]
    fn sequential_prefers_second_primer_when_first_conflicts() {
        let space = ProbeSpace::new(ProbeSpaceKind::AllKmers(2)).unwrap();
        let p = |s: &str, e: &str, pool, strand| Primer::new(s.parse().unwrap(), e.parse().unwrap(), pool, strand).unwrap();
        let pools = vec![
            Pool::new(0, vec![p("AACAA", "G", 0, Strand::Forward)]).unwrap(),
            Pool::new(1, vec![p("AACAA", "G", 1, Strand::Forward), p("GGTGG", "C", 1, Strand::Reverse)]).unwrap(),
        ];
        let i = ProblemInstance::new(pools, space, 1).unwrap();
        let d = sequential_greedy(&i);
        assert_eq!(d.len(), 2);
        assert_eq!(d.selected[1].primer_index, 1);
        assert!(verify_design(&d, &i).is_ok());
    }

    #[test]
    fn one_conflicting_pair_and_two_independent() {
        // pools 0 and 1 conflict (identical), 2 and 3 are independent of everything
        let i = inst(&[("AACAA", "G"), ("AACAA", "G"), ("GGTGG", "C"), ("TCTCT", "A")], 2, 1);
        for c in all_configs() {
            let d = solve(&i, c);
            assert_eq!(d.len(), 3, "{c:?}");
            assert!(verify_design(&d, &i).is_ok());
        }
    }

    #[test]
    fn single_primer_gets_r_witnesses() {
        let i = inst(&[("ACGTTGCA", "AC")], 2, 3);
        for c in all_configs() {
            let d = solve(&i, c);
            assert_eq!(d.len(), 1);
            assert_eq!(d.selected[0].witnesses.len(), 3);
            assert!(verify_design(&d, &i).is_ok());
        }
    }

    #[test]
    fn parse_names() {
        assert_eq!("minprobe".parse::<Algorithm>().unwrap(), Algorithm::MinProbe);
        assert!("greedy".parse::<Algorithm>().is_err());
        assert_eq!("positive".parse::<DegreeMode>().unwrap(), DegreeMode::PositiveOnly);
        assert_eq!(Algorithm::MinPrimer.to_string(), "minprimer");
    }
}
