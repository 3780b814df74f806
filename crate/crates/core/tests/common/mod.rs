#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use sbesbh_core::{BaseSet, DnaString, Pool, Primer, ProbeSpace, ProbeSpaceKind, ProblemInstance, Strand};

/// Reverse complement on plain text.
pub fn rc(s: &str) -> String {
    s.chars()
        .rev()
        .map(|c| match c {
            'A' => 'T',
            'C' => 'G',
            'G' => 'C',
            'T' => 'A',
            _ => panic!("{c}"),
        })
        .collect()
}

/// Base-4 ordinal of a k-mer written as text.
pub fn kmer_id(s: &str) -> u32 {
    s.chars().fold(0, |acc, c| acc * 4 + "ACGT".find(c).unwrap() as u32)
}

/// Spec over all k-mers by direct substring enumeration.
pub fn naive_spec(y: &str, k: usize) -> BTreeSet<u32> {
    if y.len() < k {
        return BTreeSet::new();
    }
    (0..=y.len() - k).map(|i| kmer_id(&rc(&y[i..i + k]))).collect()
}

pub fn naive_ext_spec(y: &str, ext: &str, k: usize) -> BTreeSet<u32> {
    ext.chars().flat_map(|e| naive_spec(&format!("{y}{e}"), k)).collect()
}

/// Quadratic decodability check over (sequence, extensions) pairs.
pub fn naive_decodable(primers: &[(String, String)], k: usize, r: usize) -> bool {
    primers.iter().enumerate().all(|(i, (p, _))| {
        let informative = naive_spec(p, k)
            .into_iter()
            .filter(|x| {
                primers
                    .iter()
                    .enumerate()
                    .all(|(j, (q, e))| j == i || !naive_ext_spec(q, e, k).contains(x))
            })
            .count();
        informative >= r
    })
}

pub fn random_seq(rng: &mut impl Rng, len: usize) -> String {
    (0..len).map(|_| b"ACGT"[rng.gen_range(0..4)] as char).collect()
}

pub fn random_ext(rng: &mut impl Rng) -> String {
    loop {
        let e: String = "ACGT".chars().filter(|_| rng.gen_bool(0.5)).collect();
        if !e.is_empty() {
            return e;
        }
    }
}

/// Small random instance: up to `max_pools` pools of 1-2 primers, lengths 1..=max_len.
pub fn small_instance(seed: u64, max_pools: usize, max_len: usize, k: u32, r: u32) -> ProblemInstance {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let n = rng.gen_range(0..=max_pools);
    let pools = (0..n as u32)
        .map(|id| {
            let m = rng.gen_range(1..=2);
            let primers = (0..m)
                .map(|i| {
                    let len = rng.gen_range(1..=max_len);
                    let strand = if i == 0 { Strand::Forward } else { Strand::Reverse };
                    Primer::new(
                        random_seq(&mut rng, len).parse::<DnaString>().unwrap(),
                        random_ext(&mut rng).parse::<BaseSet>().unwrap(),
                        id,
                        strand,
                    )
                    .unwrap()
                })
                .collect();
            Pool::new(id, primers).unwrap()
        })
        .collect();
    ProblemInstance::new(pools, ProbeSpace::new(ProbeSpaceKind::AllKmers(k)).unwrap(), r).unwrap()
}

pub fn as_text_pairs(primers: &[&Primer]) -> Vec<(String, String)> {
    primers.iter().map(|p| (p.sequence.to_string(), p.extensions.to_string())).collect()
}
