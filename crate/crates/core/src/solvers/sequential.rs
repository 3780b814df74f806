use crate::decodability::{DesignResult, Selection};
use crate::graph::localize;
use crate::instance::{InstanceSpectra, ProblemInstance};

const NO_OWNER: u32 = u32::MAX;

/// Scans pools in input order and primers within a pool in input order,
/// accepting the first primer that keeps the selected set strongly
/// r-decodable.
pub fn sequential_greedy(instance: &ProblemInstance) -> DesignResult {
    sequential_greedy_with(instance, &InstanceSpectra::compute(instance))
}

/// Each candidate is checked incrementally: per probe we track how many
/// selected extended spectra contain it and, when exactly one does, which
/// primer that is and whether the probe is informative for it.
pub fn sequential_greedy_with(instance: &ProblemInstance, spectra: &InstanceSpectra) -> DesignResult {
    let r = instance.redundancy;
    let (probe_ids, plus, minus) = localize(spectra);
    let n_probes = probe_ids.len();

    let mut hits = vec![0u32; n_probes];
    let mut owner = vec![NO_OWNER; n_probes];
    let mut owner_informative = vec![false; n_probes];
    let mut informative = vec![0u32; spectra.refs.len()];
    let mut selected: Vec<u32> = Vec::new();
    let mut losses: Vec<(u32, u32)> = Vec::new();

    let mut primer = 0usize;
    for pool in &instance.pools {
        let first = primer;
        primer += pool.primers.len();
        for p in first..primer {
            let own = plus[p].iter().filter(|&&x| hits[x as usize] == 0).count() as u32;
            if own < r {
                continue;
            }
            losses.clear();
            for &x in plus[p].iter().chain(&minus[p]) {
                let x = x as usize;
                if hits[x] == 1 && owner_informative[x] {
                    match losses.iter_mut().find(|(o, _)| *o == owner[x]) {
                        Some((_, n)) => *n += 1,
                        None => losses.push((owner[x], 1)),
                    }
                }
            }
            if losses.iter().any(|&(o, n)| informative[o as usize] - n < r) {
                continue;
            }
            for &(o, n) in &losses {
                informative[o as usize] -= n;
            }
            for (list, is_plus) in [(&plus[p], true), (&minus[p], false)] {
                for &x in list {
                    let x = x as usize;
                    if hits[x] == 0 {
                        owner[x] = p as u32;
                        owner_informative[x] = is_plus;
                    }
                    hits[x] += 1;
                }
            }
            informative[p] = own;
            selected.push(p as u32);
            break;
        }
    }

    let selections = selected
        .iter()
        .map(|&p| {
            let witnesses = plus[p as usize]
                .iter()
                .filter(|&&x| hits[x as usize] == 1)
                .take(r as usize)
                .map(|&x| probe_ids[x as usize])
                .collect();
            let rf = spectra.refs[p as usize];
            Selection {
                pool_id: rf.pool,
                primer_index: rf.index,
                witnesses,
            }
        })
        .collect();
    DesignResult::new(selections, instance.fingerprint())
}
