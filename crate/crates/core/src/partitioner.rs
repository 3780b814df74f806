//! Iterated extraction of decodable pool subsets, one per array.

use crate::decodability::{DesignResult, Selection};
use crate::instance::{InstanceSpectra, PoolId, ProblemInstance};
use crate::solvers::{solve_with, SolverConfig};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PartitionReport {
    /// One design per array, pool ids referring to the full instance.
    pub arrays: Vec<DesignResult>,
    /// Pools with no primer decodable even on its own.
    pub uncovered: Vec<PoolId>,
    /// Pools never assigned because the array limit was reached.
    pub unassigned: Vec<PoolId>,
    pub n_pools: usize,
}

impl PartitionReport {
    pub fn array_sizes(&self) -> Vec<usize> {
        self.arrays.iter().map(DesignResult::len).collect()
    }

    pub fn covered(&self) -> usize {
        self.arrays.iter().map(DesignResult::len).sum()
    }
}

/// Repeatedly solves the residual instance and moves the selected pools into
/// a new array. Stops when the residual is empty or `max_arrays` is reached.
///
/// When the solver selects nothing, each residual pool is tested on its own:
/// pools that are undecodable even alone go to `uncovered`; if any decodable
/// pool remains, the lowest-id one forms a singleton array so that progress
/// is guaranteed.
pub fn partition(instance: &ProblemInstance, config: SolverConfig, max_arrays: Option<usize>) -> PartitionReport {
    let fingerprint = instance.fingerprint();
    let mut report = PartitionReport {
        n_pools: instance.n_pools(),
        ..Default::default()
    };
    let mut residual: Vec<PoolId> = (0..instance.n_pools() as PoolId).collect();

    while !residual.is_empty() && max_arrays.is_none_or(|m| report.arrays.len() < m) {
        let (sub, original) = instance.restrict(&residual);
        let spectra = InstanceSpectra::compute(&sub);
        let design = solve_with(&sub, &spectra, config);

        let array = if !design.is_empty() {
            translate(&design, &original, &fingerprint)
        } else {
            let r = sub.redundancy as usize;
            let mut fallback = None;
            let mut primer = 0usize;
            for pool in &sub.pools {
                let best = (0..pool.primers.len())
                    .map(|i| (spectra.plus[primer + i].len(), i))
                    .max_by_key(|&(n, i)| (n, std::cmp::Reverse(i)))
                    .expect("pools are non-empty");
                primer += pool.primers.len();
                if best.0 < r {
                    report.uncovered.push(original[pool.id as usize]);
                } else if fallback.is_none() {
                    let witnesses = spectra.plus[primer - pool.primers.len() + best.1][..r].to_vec();
                    fallback = Some(Selection {
                        pool_id: original[pool.id as usize],
                        primer_index: best.1 as u32,
                        witnesses,
                    });
                }
            }
            report.uncovered.sort_unstable();
            match fallback {
                Some(sel) => DesignResult::new(vec![sel], fingerprint.clone()),
                None => {
                    residual.clear();
                    break;
                }
            }
        };

        let taken: std::collections::HashSet<PoolId> = array.pool_ids().collect();
        residual.retain(|p| !taken.contains(p) && report.uncovered.binary_search(p).is_err());
        report.arrays.push(array);
    }
    report.unassigned = residual;
    report
}

fn translate(design: &DesignResult, original: &[PoolId], fingerprint: &str) -> DesignResult {
    DesignResult::new(
        design
            .selected
            .iter()
            .map(|s| Selection {
                pool_id: original[s.pool_id as usize],
                ..s.clone()
            })
            .collect(),
        fingerprint.to_string(),
    )
}

/// Cumulative covered-pool fraction after each array, over all pools.
pub fn coverage_curve(report: &PartitionReport) -> Vec<(usize, f64)> {
    cumulative(report, report.n_pools)
}

/// As [`coverage_curve`], but excluding uncovered pools from the denominator.
pub fn coverage_curve_decodable(report: &PartitionReport) -> Vec<(usize, f64)> {
    cumulative(report, report.n_pools - report.uncovered.len())
}

fn cumulative(report: &PartitionReport, denominator: usize) -> Vec<(usize, f64)> {
    let mut covered = 0usize;
    report
        .arrays
        .iter()
        .enumerate()
        .map(|(i, a)| {
            covered += a.len();
            let frac = if denominator == 0 { 1.0 } else { covered as f64 / denominator as f64 };
            (i + 1, frac)
        })
        .collect()
}

/// Number of leading arrays needed to reach `fraction` coverage of all pools.
pub fn arrays_to_cover(report: &PartitionReport, fraction: f64) -> Option<usize> {
    coverage_curve(report).into_iter().find(|&(_, f)| f + 1e-12 >= fraction).map(|(i, _)| i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decodability::verify_design;
    use crate::dnaseq::BaseSet;
    use crate::instance::{Pool, Primer, Strand};
    use crate::probespace::{ProbeSpace, ProbeSpaceKind};
    use crate::solvers::Algorithm;

    fn inst(primers: &[(&str, &str)], k: u32, r: u32) -> ProblemInstance {
        let pools = primers
            .iter()
            .enumerate()
            .map(|(i, (s, e))| {
                let p = Primer::new(s.parse().unwrap(), e.parse::<BaseSet>().unwrap(), i as u32, Strand::Forward).unwrap();
                Pool::new(i as u32, vec![p]).unwrap()
            })
            .collect();
        ProblemInstance::new(pools, ProbeSpace::new(ProbeSpaceKind::AllKmers(k)).unwrap(), r).unwrap()
    }

    #[test]
    fn non_interacting_pools_fit_one_array() {
        let i = inst(&[("AAAAA", "C"), ("CCCCC", "A"), ("GTGTG", "T")], 3, 1);
        let rep = partition(&i, SolverConfig::default(), None);
        assert_eq!(rep.array_sizes(), vec![3]);
        assert_eq!(coverage_curve(&rep), vec![(1, 1.0)]);
    }

    #[test]
    fn identical_pools_need_two_arrays() {
        let i = inst(&[("AACAA", "G"), ("AACAA", "G")], 2, 1);
        for a in Algorithm::ALL {
            let rep = partition(&i, SolverConfig::new(a), None);
            assert_eq!(rep.array_sizes(), vec![1, 1]);
            assert!(rep.uncovered.is_empty());
            for arr in &rep.arrays {
                assert!(verify_design(arr, &i).is_ok());
            }
        }
    }

    #[test]
    fn short_primers_are_uncovered() {
        let i = inst(&[("AAAAA", "C"), ("AC", "G")], 3, 1);
        let rep = partition(&i, SolverConfig::default(), None);
        assert_eq!(rep.uncovered, vec![1]);
        assert_eq!(rep.covered(), 1);
        let curve = coverage_curve(&rep);
        assert!(curve.last().unwrap().1 < 1.0);
        assert_eq!(coverage_curve_decodable(&rep).last().unwrap().1, 1.0);
    }

    #[test]
    fn coverage_arithmetic() {
        let sel = |n: u32| DesignResult::new(
            (0..n).map(|i| Selection { pool_id: i, primer_index: 0, witnesses: vec![] }).collect(),
            String::new(),
        );
        let rep = PartitionReport {
            arrays: vec![sel(6), sel(4)],
            n_pools: 10,
            ..Default::default()
        };
        assert_eq!(coverage_curve(&rep), vec![(1, 0.6), (2, 1.0)]);
        assert_eq!(arrays_to_cover(&rep, 0.9), Some(2));
        assert_eq!(arrays_to_cover(&rep, 0.5), Some(1));
    }

    #[test]
    fn max_arrays_limits_iterations() {
        let i = inst(&[("AACAA", "G"), ("AACAA", "G"), ("AACAA", "G")], 2, 1);
        let rep = partition(&i, SolverConfig::default(), Some(1));
        assert_eq!(rep.arrays.len(), 1);
        assert_eq!(rep.unassigned.len(), 2);
    }
}
