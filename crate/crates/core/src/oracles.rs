//! Exhaustive reference solvers and the induced-matching reduction.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::decodability::{is_strongly_r_decodable, DesignResult, Selection};
use crate::dnaseq::{Base, BaseSet, DnaString};
use crate::error::{Error, Result};
use crate::instance::{Pool, PoolId, Primer, ProblemInstance, Strand};
use crate::probespace::ProbeSpace;

/// Default cap on pool-subset × representative combinations.
pub const MDPSP_CAP: u64 = 2_000_000;
pub const MIM_MAX_VERTICES: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    n_left: u32,
    n_right: u32,
    edges: Vec<(u32, u32)>,
}

impl BipartiteGraph {
    pub fn new(n_left: u32, n_right: u32, edges: Vec<(u32, u32)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for &(u, v) in &edges {
            if u >= n_left || v >= n_right {
                return Err(Error::Graph(format!("edge ({u}, {v}) out of range")));
            }
            if !seen.insert((u, v)) {
                return Err(Error::Graph(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(BipartiteGraph { n_left, n_right, edges })
    }

    /// `u<TAB>v` per line, `#` comments. Vertex counts are one past the
    /// largest index on each side.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let f: Vec<&str> = line.split('\t').collect();
            let parse = |s: &str| s.trim().parse::<u32>().map_err(|_| Error::parse(i + 1, format!("bad vertex index {s:?}")));
            match f.as_slice() {
                [u, v] => edges.push((parse(u)?, parse(v)?)),
                _ => return Err(Error::parse(i + 1, "expected u<TAB>v")),
            }
        }
        let n_left = edges.iter().map(|e| e.0 + 1).max().unwrap_or(0);
        let n_right = edges.iter().map(|e| e.1 + 1).max().unwrap_or(0);
        Self::new(n_left, n_right, edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in &self.edges {
            writeln!(out, "{u}\t{v}").unwrap();
        }
        out
    }

    pub fn n_left(&self) -> u32 {
        self.n_left
    }

    pub fn n_right(&self) -> u32 {
        self.n_right
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn left_degrees(&self) -> Vec<u32> {
        let mut d = vec![0; self.n_left as usize];
        for &(u, _) in &self.edges {
            d[u as usize] += 1;
        }
        d
    }

    pub fn right_degrees(&self) -> Vec<u32> {
        let mut d = vec![0; self.n_right as usize];
        for &(_, v) in &self.edges {
            d[v as usize] += 1;
        }
        d
    }

    pub fn max_degree(&self) -> u32 {
        self.left_degrees().into_iter().chain(self.right_degrees()).max().unwrap_or(0)
    }

    /// Neighbours of left vertex `u`, ascending.
    pub fn neighbors(&self, u: u32) -> Vec<u32> {
        let mut n: Vec<u32> = self.edges.iter().filter(|e| e.0 == u).map(|e| e.1).collect();
        n.sort_unstable();
        n
    }
}

/// Fixed-width bitset over edge indices.
#[derive(Clone, Copy, PartialEq, Eq)]
struct Bits([u64; 3]);

impl Bits {
    const CAPACITY: usize = 192;

    fn empty() -> Self {
        Bits([0; 3])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn without(&self, other: &Bits) -> Bits {
        Bits([self.0[0] & !other.0[0], self.0[1] & !other.0[1], self.0[2] & !other.0[2]])
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }
}

/// Size of a maximum induced matching, by branch and bound over the edges.
pub fn brute_force_mim(g: &BipartiteGraph) -> Result<usize> {
    if (g.n_left + g.n_right) as usize > MIM_MAX_VERTICES {
        return Err(Error::TooLarge(format!(
            "{} vertices exceeds the exhaustive limit of {MIM_MAX_VERTICES}",
            g.n_left + g.n_right
        )));
    }
    let m = g.edges.len();
    debug_assert!(m <= Bits::CAPACITY);
    let adjacent: HashSet<(u32, u32)> = g.edges.iter().copied().collect();
    // closed conflict neighbourhood of each edge
    let conflicts: Vec<Bits> = (0..m)
        .map(|i| {
            let (u1, v1) = g.edges[i];
            let mut b = Bits::empty();
            for (j, &(u2, v2)) in g.edges.iter().enumerate() {
                if u1 == u2 || v1 == v2 || adjacent.contains(&(u1, v2)) || adjacent.contains(&(u2, v1)) {
                    b.set(j);
                }
            }
            b
        })
        .collect();
    let mut all = Bits::empty();
    for i in 0..m {
        all.set(i);
    }
    let mut best = 0;
    max_independent(&conflicts, all, 0, &mut best);
    Ok(best)
}

fn max_independent(conflicts: &[Bits], candidates: Bits, size: usize, best: &mut usize) {
    *best = (*best).max(size);
    if size + candidates.count() as usize <= *best {
        return;
    }
    let Some(e) = candidates.first() else { return };
    max_independent(conflicts, candidates.without(&conflicts[e]), size + 1, best);
    let mut rest = candidates;
    rest.clear(e);
    max_independent(conflicts, rest, size, best);
}

/// Maximum strongly r-decodable selection found by exhaustive search over
/// pool subsets and representatives. Returns the optimum and one optimal design.
pub fn brute_force_mdpsp(instance: &ProblemInstance) -> Result<(usize, DesignResult)> {
    brute_force_mdpsp_capped(instance, MDPSP_CAP)
}

pub fn brute_force_mdpsp_capped(instance: &ProblemInstance, cap: u64) -> Result<(usize, DesignResult)> {
    let mut combos: u64 = 1;
    for pool in &instance.pools {
        combos = combos.saturating_mul(1 + pool.primers.len() as u64);
        if combos > cap {
            return Err(Error::TooLarge(format!("more than {cap} selections to enumerate")));
        }
    }
    let mut search = Search {
        instance,
        chosen: Vec::new(),
        best: Vec::new(),
    };
    search.run(0);
    let best = search.best;
    let primers: Vec<&Primer> = best.iter().map(|&(pool, i)| &instance.pools[pool as usize].primers[i as usize]).collect();
    let check = is_strongly_r_decodable(&primers, instance.redundancy, &instance.space);
    let witnesses = check.witnesses.expect("optimum is decodable");
    let selected = best
        .iter()
        .zip(witnesses)
        .map(|(&(pool_id, primer_index), witnesses)| Selection {
            pool_id,
            primer_index,
            witnesses,
        })
        .collect();
    Ok((best.len(), DesignResult::new(selected, instance.fingerprint())))
}

struct Search<'a> {
    instance: &'a ProblemInstance,
    chosen: Vec<(PoolId, u32)>,
    best: Vec<(PoolId, u32)>,
}

impl Search<'_> {
    fn decodable(&self) -> bool {
        let primers: Vec<&Primer> = self
            .chosen
            .iter()
            .map(|&(pool, i)| &self.instance.pools[pool as usize].primers[i as usize])
            .collect();
        is_strongly_r_decodable(&primers, self.instance.redundancy, &self.instance.space).decodable
    }

    // Subsets of decodable sets stay decodable, so an undecodable partial
    // selection prunes its whole subtree.
    fn run(&mut self, pool: usize) {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        let n = self.instance.pools.len();
        if pool == n || self.chosen.len() + (n - pool) <= self.best.len() {
            return;
        }
        for i in 0..self.instance.pools[pool].primers.len() as u32 {
            self.chosen.push((pool as PoolId, i));
            if self.decodable() {
                self.run(pool + 1);
            }
            self.chosen.pop();
        }
        self.run(pool + 1);
    }
}

#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub instance: ProblemInstance,
    pub l: usize,
    /// x_v for each right vertex v, indexed by v.
    pub probe_assignment: Vec<DnaString>,
}

/// Builds an MDPSP instance whose optimum equals the maximum induced
/// matching of `g`. Each right vertex v gets a distinct word x_v over {A, T};
/// each left vertex u becomes a one-primer pool joining the words of its
/// neighbours with C separators, extended by {G, C}. The probe list holds the
/// reverse complements of the x_v, so probe id v matches exactly where x_v
/// occurs in a primer.
pub fn reduce_mim_to_mdpsp(g: &BipartiteGraph) -> Result<ReductionOutput> {
    let left = g.left_degrees();
    let right = g.right_degrees();
    if let Some(u) = left.iter().position(|&d| d > 3) {
        return Err(Error::Graph(format!("left vertex {u} has degree {} > 3", left[u])));
    }
    if let Some(u) = left.iter().position(|&d| d == 0) {
        return Err(Error::Graph(format!("left vertex {u} is isolated")));
    }
    if let Some(v) = right.iter().position(|&d| d == 0) {
        return Err(Error::Graph(format!("right vertex {v} is isolated")));
    }
    let n_v = g.n_right as usize;
    let l = (usize::BITS - n_v.saturating_sub(1).leading_zeros()).max(1) as usize;
    let words: Vec<DnaString> = (0..n_v)
        .map(|v| {
            DnaString::from_bases((0..l).rev().map(|bit| if (v >> bit) & 1 == 1 { Base::T } else { Base::A }).collect())
        })
        .collect();
    let space = ProbeSpace::from_list(words.iter().map(DnaString::reverse_complement).collect())?;
    let ext = BaseSet::from_bases([Base::G, Base::C]);
    let mut pools = Vec::with_capacity(g.n_left as usize);
    for u in 0..g.n_left {
        let mut seq = DnaString::new();
        for (i, v) in g.neighbors(u).into_iter().enumerate() {
            if i > 0 {
                seq.push(Base::C);
            }
            seq = seq.concat(&words[v as usize]);
        }
        pools.push(Pool::new(u, vec![Primer::new(seq, ext, u, Strand::Forward)?])?);
    }
    Ok(ReductionOutput {
        instance: ProblemInstance::new(pools, space, 1)?,
        l,
        probe_assignment: words,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::InstanceSpectra;
    use crate::probespace::{ProbeId, ProbeSpaceKind};

    fn graph(n_left: u32, n_right: u32, edges: &[(u32, u32)]) -> BipartiteGraph {
        BipartiteGraph::new(n_left, n_right, edges.to_vec()).unwrap()
    }

    fn c6() -> BipartiteGraph {
        graph(3, 3, &[(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)])
    }

    #[test]
    fn mim_small_graphs() {
        assert_eq!(brute_force_mim(&graph(1, 1, &[(0, 0)])).unwrap(), 1);
        assert_eq!(brute_force_mim(&graph(1, 3, &[(0, 0), (0, 1), (0, 2)])).unwrap(), 1);
        // u1 - v1 - u2 - v2
        assert_eq!(brute_force_mim(&graph(2, 2, &[(0, 0), (1, 0), (1, 1)])).unwrap(), 1);
        // opposite edges of the 6-cycle are not joined by any edge
        assert_eq!(brute_force_mim(&c6()).unwrap(), 2);
        assert_eq!(brute_force_mim(&graph(2, 2, &[(0, 0), (1, 1)])).unwrap(), 2);
        assert_eq!(brute_force_mim(&graph(0, 0, &[])).unwrap(), 0);
    }

    #[test]
    fn mim_refuses_large_graphs() {
        assert!(matches!(brute_force_mim(&graph(13, 12, &[])), Err(Error::TooLarge(_))));
    }

    #[test]
    fn graph_validation() {
        assert!(BipartiteGraph::new(1, 1, vec![(0, 0), (0, 0)]).is_err());
        assert!(BipartiteGraph::new(1, 1, vec![(0, 1)]).is_err());
        let g = BipartiteGraph::parse_edge_list("# c\n0\t1\n2\t0\n").unwrap();
        assert_eq!((g.n_left(), g.n_right()), (3, 2));
        assert_eq!(BipartiteGraph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
        assert!(BipartiteGraph::parse_edge_list("0 1\n").is_err());
    }

    #[test]
    fn mdpsp_trivial_cases() {
        let space = ProbeSpace::new(ProbeSpaceKind::AllKmers(2)).unwrap();
        let empty = ProblemInstance::new(vec![], space.clone(), 1).unwrap();
        assert_eq!(brute_force_mdpsp(&empty).unwrap().0, 0);

        let p = |pool| Primer::new("AACAA".parse().unwrap(), "G".parse().unwrap(), pool, Strand::Forward).unwrap();
        let pools = vec![Pool::new(0, vec![p(0)]).unwrap(), Pool::new(1, vec![p(1)]).unwrap()];
        let twin = ProblemInstance::new(pools, space, 1).unwrap();
        let (opt, design) = brute_force_mdpsp(&twin).unwrap();
        assert_eq!(opt, 1);
        assert!(crate::decodability::verify_design(&design, &twin).is_ok());
    }

    #[test]
    fn mdpsp_cap() {
        let space = ProbeSpace::new(ProbeSpaceKind::AllKmers(2)).unwrap();
        let pools = (0..5)
            .map(|i| Pool::new(i, vec![Primer::new("ACGT".parse().unwrap(), BaseSet::ALL, i, Strand::Forward).unwrap()]).unwrap())
            .collect();
        let inst = ProblemInstance::new(pools, space, 1).unwrap();
        assert!(matches!(brute_force_mdpsp_capped(&inst, 16), Err(Error::TooLarge(_))));
        assert!(brute_force_mdpsp_capped(&inst, 32).is_ok());
    }

    #[test]
    fn reduction_shapes() {
        let r = reduce_mim_to_mdpsp(&graph(2, 2, &[(0, 0), (1, 1)])).unwrap();
        assert_eq!(r.l, 1);
        assert_eq!(r.probe_assignment[0].to_string(), "A");
        assert_eq!(r.probe_assignment[1].to_string(), "T");
        // single neighbour: no separator
        assert_eq!(r.instance.pools[1].primers[0].sequence.to_string(), "T");

        let star = graph(1, 4, &[(0, 0), (0, 1), (0, 2), (0, 3)]);
        assert!(reduce_mim_to_mdpsp(&star).is_err());
        let isolated = graph(1, 5, &[(0, 1), (0, 4), (0, 3)]);
        assert!(reduce_mim_to_mdpsp(&isolated).is_err());

        let g = graph(2, 5, &[(0, 1), (0, 4), (0, 3), (1, 0), (1, 2)]);
        let r = reduce_mim_to_mdpsp(&g).unwrap();
        assert_eq!(r.l, 3);
        assert_eq!(r.instance.pools[0].primers[0].sequence.to_string(), "AATCATTCTAA");
        assert!(r.instance.pools[0].primers[0].sequence.len() <= 3 * r.l + 2);
    }

    #[test]
    fn reduced_spectra_are_neighbourhoods() {
        let g = c6();
        let r = reduce_mim_to_mdpsp(&g).unwrap();
        let s = InstanceSpectra::compute(&r.instance);
        for u in 0..g.n_left() {
            let expect: Vec<ProbeId> = g.neighbors(u).into_iter().map(ProbeId).collect();
            assert_eq!(s.plus[u as usize], expect);
            assert!(s.minus[u as usize].is_empty());
        }
        assert_eq!(brute_force_mdpsp(&r.instance).unwrap().0, 2);
    }
}
