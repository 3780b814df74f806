//! Test-side reference implementations, written independently of the
//! library: spectra by direct substring enumeration, exhaustive counting.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use sbesbh_core::oracles::BipartiteGraph;
use sbesbh_core::{BaseSet, DesignResult, DnaString, Pool, Primer, ProbeSpace, ProbeSpaceKind, ProblemInstance, Strand};

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

pub fn kmer_id(s: &str) -> u32 {
    s.chars().fold(0, |acc, c| acc * 4 + "ACGT".find(c).unwrap() as u32)
}

pub fn naive_spec(y: &str, k: usize) -> BTreeSet<u32> {
    if y.len() < k {
        return BTreeSet::new();
    }
    (0..=y.len() - k).map(|i| kmer_id(&rc(&y[i..i + k]))).collect()
}

pub fn naive_ext_spec(y: &str, ext: &str, k: usize) -> BTreeSet<u32> {
    ext.chars().flat_map(|e| naive_spec(&format!("{y}{e}"), k)).collect()
}

struct NaivePrimer {
    spec: BTreeSet<u32>,
    ext: BTreeSet<u32>,
}

fn naive_primer(p: &Primer, k: usize) -> NaivePrimer {
    let s = p.sequence.to_string();
    NaivePrimer {
        spec: naive_spec(&s, k),
        ext: naive_ext_spec(&s, &p.extensions.to_string(), k),
    }
}

fn informative(i: usize, chosen: &[&NaivePrimer]) -> Vec<u32> {
    chosen[i]
        .spec
        .iter()
        .copied()
        .filter(|x| chosen.iter().enumerate().all(|(j, q)| j == i || !q.ext.contains(x)))
        .collect()
}

/// Optimum by enumerating every (pool subset, representative) choice.
pub fn naive_optimum(inst: &ProblemInstance, k: usize, r: usize) -> usize {
    let table: Vec<Vec<NaivePrimer>> = inst
        .pools
        .iter()
        .map(|pool| pool.primers.iter().map(|p| naive_primer(p, k)).collect())
        .collect();
    let radix: Vec<usize> = table.iter().map(|t| t.len() + 1).collect();
    let total: usize = radix.iter().product();
    let mut best = 0;
    for mut code in 0..total {
        let mut chosen = Vec::new();
        for (pool, &m) in radix.iter().enumerate() {
            let c = code % m;
            code /= m;
            if c > 0 {
                chosen.push(&table[pool][c - 1]);
            }
        }
        if chosen.len() > best && (0..chosen.len()).all(|i| informative(i, &chosen).len() >= r) {
            best = chosen.len();
        }
    }
    best
}

/// Full validity of a design under the definitions, without the library's verifier.
pub fn naive_design_valid(d: &DesignResult, inst: &ProblemInstance, k: usize) -> bool {
    if d.fingerprint != inst.fingerprint() {
        return false;
    }
    let mut pools = HashSet::new();
    let mut reps = Vec::new();
    for s in &d.selected {
        if !pools.insert(s.pool_id) {
            return false;
        }
        match inst.pools.get(s.pool_id as usize).and_then(|p| p.primers.get(s.primer_index as usize)) {
            Some(p) => reps.push(naive_primer(p, k)),
            None => return false,
        }
    }
    let refs: Vec<&NaivePrimer> = reps.iter().collect();
    let mut used = HashSet::new();
    for (i, s) in d.selected.iter().enumerate() {
        if s.witnesses.len() < inst.redundancy as usize {
            return false;
        }
        let inf: HashSet<u32> = informative(i, &refs).into_iter().collect();
        for w in &s.witnesses {
            if !inf.contains(&w.0) || !used.insert(w.0) {
                return false;
            }
        }
    }
    true
}

fn random_seq(rng: &mut impl Rng, len: usize) -> String {
    (0..len).map(|_| b"ACGT"[rng.gen_range(0..4)] as char).collect()
}

fn random_ext(rng: &mut impl Rng) -> String {
    loop {
        let e: String = "ACGT".chars().filter(|_| rng.gen_bool(0.5)).collect();
        if !e.is_empty() {
            return e;
        }
    }
}

/// Up to `max_pools` pools of 1-2 primers with lengths 1..=max_len over all k-mers.
pub fn small_instance(seed: u64, max_pools: usize, max_len: usize, k: u32, r: u32) -> ProblemInstance {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_pools);
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

/// t(c) = 4 N(c-1) + 2 N(c-2), N(w) = number of strings of weight exactly w.
pub fn ctoken_count_recurrence(c: u32) -> u64 {
    let mut n = vec![1u64, 2];
    while n.len() < c as usize {
        let w = n.len();
        n.push(2 * n[w - 1] + 2 * n[w - 2]);
    }
    let c = c as usize;
    4 * n[c - 1] + 2 * n[c - 2]
}

/// Counts strings s with weight(s) >= c and weight(s[1..]) < c by growing
/// light suffixes leftwards.
pub fn ctoken_count_exhaustive(c: u32) -> u64 {
    fn grow(suffix_weight: u32, c: u32) -> u64 {
        let mut count = 0;
        for w in [1u32, 2, 2, 1] {
            let total = suffix_weight + w;
            if total >= c {
                count += 1;
            } else {
                count += grow(total, c);
            }
        }
        count
    }
    grow(0, c)
}

/// Bipartite graph with |U|, |V| in 1..=6 and every degree in 1..=3.
pub fn random_bipartite(rng: &mut impl Rng) -> BipartiteGraph {
    loop {
        let nu = rng.gen_range(1..=6u32);
        let nv = rng.gen_range(1..=6u32);
        let mut edges = BTreeSet::new();
        let (mut du, mut dv) = (vec![0; nu as usize], vec![0; nv as usize]);
        for _ in 0..rng.gen_range(1..=30) {
            let (u, v) = (rng.gen_range(0..nu), rng.gen_range(0..nv));
            if du[u as usize] < 3 && dv[v as usize] < 3 && edges.insert((u, v)) {
                du[u as usize] += 1;
                dv[v as usize] += 1;
            }
        }
        if du.iter().chain(&dv).all(|&d| d >= 1) {
            return BipartiteGraph::new(nu, nv, edges.into_iter().collect()).unwrap();
        }
    }
}

/// Maximum induced matching by checking every edge subset.
pub fn naive_mim(g: &BipartiteGraph) -> usize {
    let e = g.edges();
    let adj: HashSet<(u32, u32)> = e.iter().copied().collect();
    let m = e.len();
    assert!(m <= 20);
    let mut best = 0;
    for mask in 0u32..(1 << m) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let chosen: Vec<(u32, u32)> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| e[i]).collect();
        let ok = chosen.iter().enumerate().all(|(i, &(u1, v1))| {
            chosen[i + 1..]
                .iter()
                .all(|&(u2, v2)| u1 != u2 && v1 != v2 && !adj.contains(&(u1, v2)) && !adj.contains(&(u2, v1)))
        });
        if ok {
            best = size;
        }
    }
    best
}
