//! Bipartite hybridization graph between primers and probes.
//!
//! Primer `p` is joined to probe `x` by an N⁺ edge when `x ∈ Spec_X(p)` and by
//! an N⁻ edge when `x` only appears once `p` is extended. Adjacency is stored
//! once in CSR form; deletions flip liveness flags and maintain live-neighbour
//! counters, so a vertex's lists are scanned only when it dies or is selected.
//!
//! Primers are indexed in global instance order (pool id, then position).
//! Probes are indexed locally in increasing [`ProbeId`] order, and only probes
//! with at least one incident edge are materialized.

use std::fmt;

use crate::error::{Error, Result};
use crate::instance::{InstanceSpectra, PoolId, PrimerRef, ProblemInstance};
use crate::probespace::ProbeId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Vertex {
    Primer(u32),
    Probe(u32),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Primer(i) => write!(f, "primer #{i}"),
            Vertex::Probe(i) => write!(f, "probe #{i}"),
        }
    }
}

/// Which edges count towards a vertex's degree in the selection steps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum DegreeMode {
    /// |N⁺| + |N⁻|
    #[default]
    Total,
    /// |N⁺| only
    PositiveOnly,
}

#[derive(Clone, Debug, Default)]
struct Csr {
    offsets: Vec<u32>,
    targets: Vec<u32>,
}

impl Csr {
    fn from_lists(lists: impl Iterator<Item = Vec<u32>>) -> Self {
        let mut csr = Csr {
            offsets: vec![0],
            targets: Vec::new(),
        };
        for l in lists {
            csr.targets.extend(l);
            csr.offsets.push(csr.targets.len() as u32);
        }
        csr
    }

    /// Inverse adjacency over `n` targets; each row lists sources in increasing order.
    fn transpose(&self, n: usize) -> Self {
        let mut counts = vec![0u32; n + 1];
        for &t in &self.targets {
            counts[t as usize + 1] += 1;
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let mut fill = counts.clone();
        let mut targets = vec![0u32; self.targets.len()];
        for src in 0..self.offsets.len() - 1 {
            for &t in self.row(src as u32) {
                targets[fill[t as usize] as usize] = src as u32;
                fill[t as usize] += 1;
            }
        }
        Csr {
            offsets: counts,
            targets,
        }
    }

    #[inline]
    fn row(&self, i: u32) -> &[u32] {
        &self.targets[self.offsets[i as usize] as usize..self.offsets[i as usize + 1] as usize]
    }
}

/// Maps every primer's spectra onto dense local probe indices.
///
/// Returns the sorted probe roster and the localized N⁺ / N⁻ lists.
pub(crate) fn localize(spectra: &InstanceSpectra) -> (Vec<ProbeId>, Vec<Vec<u32>>, Vec<Vec<u32>>) {
    // One sort of (probe id, flat position) keys replaces a lookup per entry.
    let lists: Vec<&Vec<ProbeId>> = spectra.plus.iter().chain(spectra.minus.iter()).collect();
    let mut keys: Vec<u64> = Vec::with_capacity(lists.iter().map(|l| l.len()).sum());
    for list in &lists {
        for id in list.iter() {
            keys.push(((id.0 as u64) << 32) | keys.len() as u64);
        }
    }
    keys.sort_unstable();
    let mut probe_ids = Vec::new();
    let mut flat = vec![0u32; keys.len()];
    for key in keys {
        let id = ProbeId((key >> 32) as u32);
        if probe_ids.last() != Some(&id) {
            probe_ids.push(id);
        }
        flat[(key & 0xffff_ffff) as usize] = probe_ids.len() as u32 - 1;
    }
    let mut rest = flat.as_slice();
    let mut out: Vec<Vec<u32>> = lists
        .iter()
        .map(|l| {
            let (head, tail) = rest.split_at(l.len());
            rest = tail;
            head.to_vec()
        })
        .collect();
    let minus = out.split_off(spectra.plus.len());
    (probe_ids, out, minus)
}

#[derive(Clone, Debug)]
pub struct HybridizationGraph {
    redundancy: u32,
    refs: Vec<PrimerRef>,
    pool_offsets: Vec<u32>,
    probe_ids: Vec<ProbeId>,
    primer_plus: Csr,
    primer_minus: Csr,
    probe_plus: Csr,
    probe_minus: Csr,
    primer_live: Vec<bool>,
    probe_live: Vec<bool>,
    primer_plus_deg: Vec<u32>,
    primer_minus_deg: Vec<u32>,
    probe_plus_deg: Vec<u32>,
    probe_minus_deg: Vec<u32>,
    live_primers: usize,
    live_probes: usize,
    pruned_primers: usize,
    touched: Vec<Vertex>,
    stack: Vec<Vertex>,
}

pub fn build_graph(instance: &ProblemInstance) -> HybridizationGraph {
    HybridizationGraph::build(instance, &InstanceSpectra::compute(instance))
}

impl HybridizationGraph {
    pub fn build(instance: &ProblemInstance, spectra: &InstanceSpectra) -> Self {
        let (probe_ids, plus, minus) = localize(spectra);
        let n_primers = spectra.refs.len();
        let n_probes = probe_ids.len();

        let mut pool_offsets = Vec::with_capacity(instance.pools.len() + 1);
        pool_offsets.push(0u32);
        for pool in &instance.pools {
            pool_offsets.push(pool_offsets.last().unwrap() + pool.primers.len() as u32);
        }

        let primer_plus = Csr::from_lists(plus.into_iter());
        let primer_minus = Csr::from_lists(minus.into_iter());
        let probe_plus = primer_plus.transpose(n_probes);
        let probe_minus = primer_minus.transpose(n_probes);

        let row_lens = |c: &Csr| c.offsets.windows(2).map(|w| w[1] - w[0]).collect::<Vec<u32>>();
        let primer_plus_deg = row_lens(&primer_plus);
        let pruned_primers = primer_plus_deg.iter().filter(|&&d| d == 0).count();

        HybridizationGraph {
            redundancy: instance.redundancy,
            refs: spectra.refs.clone(),
            pool_offsets,
            probe_ids,
            primer_minus_deg: row_lens(&primer_minus),
            probe_plus_deg: row_lens(&probe_plus),
            probe_minus_deg: row_lens(&probe_minus),
            primer_plus_deg,
            primer_plus,
            primer_minus,
            probe_plus,
            probe_minus,
            primer_live: vec![true; n_primers],
            probe_live: vec![true; n_probes],
            live_primers: n_primers,
            live_probes: n_probes,
            pruned_primers,
            touched: Vec::new(),
            stack: Vec::new(),
        }
    }

    pub fn redundancy(&self) -> u32 {
        self.redundancy
    }

    pub fn n_primers(&self) -> usize {
        self.refs.len()
    }

    pub fn n_probes(&self) -> usize {
        self.probe_ids.len()
    }

    pub fn live_primers(&self) -> usize {
        self.live_primers
    }

    pub fn live_probes(&self) -> usize {
        self.live_probes
    }

    pub fn is_empty(&self) -> bool {
        self.live_primers == 0 && self.live_probes == 0
    }

    /// Primers whose unextended spectrum was empty at build time.
    pub fn pruned_primers(&self) -> usize {
        self.pruned_primers
    }

    pub fn primer_ref(&self, p: u32) -> PrimerRef {
        self.refs[p as usize]
    }

    pub fn probe_id(&self, x: u32) -> ProbeId {
        self.probe_ids[x as usize]
    }

    /// Local index of a probe, if it is materialized.
    pub fn probe_index(&self, id: ProbeId) -> Option<u32> {
        self.probe_ids.binary_search(&id).ok().map(|i| i as u32)
    }

    /// Global primer indices belonging to `pool`.
    pub fn pool_primers(&self, pool: PoolId) -> std::ops::Range<u32> {
        self.pool_offsets[pool as usize]..self.pool_offsets[pool as usize + 1]
    }

    pub fn is_live(&self, v: Vertex) -> bool {
        match v {
            Vertex::Primer(p) => self.primer_live[p as usize],
            Vertex::Probe(x) => self.probe_live[x as usize],
        }
    }

    /// Full (static) adjacency, including dead neighbours.
    pub fn plus_neighbors(&self, v: Vertex) -> &[u32] {
        match v {
            Vertex::Primer(p) => self.primer_plus.row(p),
            Vertex::Probe(x) => self.probe_plus.row(x),
        }
    }

    pub fn minus_neighbors(&self, v: Vertex) -> &[u32] {
        match v {
            Vertex::Primer(p) => self.primer_minus.row(p),
            Vertex::Probe(x) => self.probe_minus.row(x),
        }
    }

    /// Live neighbours on the N⁺ side.
    pub fn live_plus(&self, v: Vertex) -> impl Iterator<Item = u32> + '_ {
        let other_live = self.other_side_live(v);
        self.plus_neighbors(v).iter().copied().filter(move |&u| other_live[u as usize])
    }

    pub fn live_minus(&self, v: Vertex) -> impl Iterator<Item = u32> + '_ {
        let other_live = self.other_side_live(v);
        self.minus_neighbors(v).iter().copied().filter(move |&u| other_live[u as usize])
    }

    fn other_side_live(&self, v: Vertex) -> &[bool] {
        match v {
            Vertex::Primer(_) => &self.probe_live,
            Vertex::Probe(_) => &self.primer_live,
        }
    }

    /// (|N⁺(v)|, |N⁻(v)|) over live neighbours, without a liveness check.
    #[inline]
    pub fn live_counts(&self, v: Vertex) -> (u32, u32) {
        match v {
            Vertex::Primer(p) => (self.primer_plus_deg[p as usize], self.primer_minus_deg[p as usize]),
            Vertex::Probe(x) => (self.probe_plus_deg[x as usize], self.probe_minus_deg[x as usize]),
        }
    }

    #[inline]
    pub(crate) fn degree_unchecked(&self, v: Vertex, mode: DegreeMode) -> u32 {
        let (plus, minus) = self.live_counts(v);
        match mode {
            DegreeMode::Total => plus + minus,
            DegreeMode::PositiveOnly => plus,
        }
    }

    /// |N⁺(v)| + |N⁻(v)| over live neighbours. Dead vertices are rejected.
    pub fn degree(&self, v: Vertex) -> Result<u32> {
        self.degree_with(v, DegreeMode::Total)
    }

    pub fn degree_with(&self, v: Vertex, mode: DegreeMode) -> Result<u32> {
        if !self.is_live(v) {
            return Err(Error::DeadVertex(v.to_string()));
        }
        Ok(self.degree_unchecked(v, mode))
    }

    /// Vertices whose counters or liveness changed since the last call.
    pub fn take_touched(&mut self) -> Vec<Vertex> {
        std::mem::take(&mut self.touched)
    }

    pub(crate) fn drain_touched(&mut self, mut f: impl FnMut(&Self, Vertex)) {
        let touched = std::mem::take(&mut self.touched);
        for &v in &touched {
            f(self, v);
        }
        self.touched = touched;
        self.touched.clear();
    }

    /// Deletes primer `p`, detaching it from its probes. Probes whose N⁺
    /// becomes empty are removed in turn, which may remove further primers
    /// whose N⁺ drops below the redundancy.
    pub fn remove_primer(&mut self, p: u32) -> Result<()> {
        if !self.primer_live[p as usize] {
            return Err(Error::DeadVertex(Vertex::Primer(p).to_string()));
        }
        self.kill(Vertex::Primer(p));
        self.cascade();
        Ok(())
    }

    /// Deletes probe `x`. Primers whose N⁺ drops below the redundancy are
    /// removed in turn.
    pub fn remove_probe(&mut self, x: u32) -> Result<()> {
        if !self.probe_live[x as usize] {
            return Err(Error::DeadVertex(Vertex::Probe(x).to_string()));
        }
        self.kill(Vertex::Probe(x));
        self.cascade();
        Ok(())
    }

    /// Marks a selected primer as gone without touching its neighbours'
    /// counters. Callers must delete all of its probes afterwards.
    pub(crate) fn retire_primer(&mut self, p: u32) {
        debug_assert!(self.primer_live[p as usize]);
        self.primer_live[p as usize] = false;
        self.live_primers -= 1;
        self.touched.push(Vertex::Primer(p));
    }

    /// Removes every primer with |N⁺| < r and every probe with empty N⁺.
    pub fn establish_invariants(&mut self) {
        let r = self.redundancy;
        for p in 0..self.n_primers() as u32 {
            if self.primer_live[p as usize] && self.primer_plus_deg[p as usize] < r {
                self.kill(Vertex::Primer(p));
            }
        }
        self.cascade();
        for x in 0..self.n_probes() as u32 {
            if self.probe_live[x as usize] && self.probe_plus_deg[x as usize] == 0 {
                self.kill(Vertex::Probe(x));
            }
        }
        self.cascade();
    }

    fn kill(&mut self, v: Vertex) {
        match v {
            Vertex::Primer(p) => {
                self.primer_live[p as usize] = false;
                self.live_primers -= 1;
            }
            Vertex::Probe(x) => {
                self.probe_live[x as usize] = false;
                self.live_probes -= 1;
            }
        }
        self.touched.push(v);
        self.stack.push(v);
    }

    fn cascade(&mut self) {
        let r = self.redundancy;
        while let Some(v) = self.stack.pop() {
            match v {
                Vertex::Primer(p) => {
                    for i in self.primer_plus.offsets[p as usize]..self.primer_plus.offsets[p as usize + 1] {
                        let x = self.primer_plus.targets[i as usize];
                        if self.probe_live[x as usize] {
                            self.probe_plus_deg[x as usize] -= 1;
                            self.touched.push(Vertex::Probe(x));
                            if self.probe_plus_deg[x as usize] == 0 {
                                self.kill(Vertex::Probe(x));
                            }
                        }
                    }
                    for i in self.primer_minus.offsets[p as usize]..self.primer_minus.offsets[p as usize + 1] {
                        let x = self.primer_minus.targets[i as usize];
                        if self.probe_live[x as usize] {
                            self.probe_minus_deg[x as usize] -= 1;
                            self.touched.push(Vertex::Probe(x));
                        }
                    }
                }
                Vertex::Probe(x) => {
                    for i in self.probe_plus.offsets[x as usize]..self.probe_plus.offsets[x as usize + 1] {
                        let p = self.probe_plus.targets[i as usize];
                        if self.primer_live[p as usize] {
                            self.primer_plus_deg[p as usize] -= 1;
                            self.touched.push(Vertex::Primer(p));
                            if self.primer_plus_deg[p as usize] < r {
                                self.kill(Vertex::Primer(p));
                            }
                        }
                    }
                    for i in self.probe_minus.offsets[x as usize]..self.probe_minus.offsets[x as usize + 1] {
                        let p = self.probe_minus.targets[i as usize];
                        if self.primer_live[p as usize] {
                            self.primer_minus_deg[p as usize] -= 1;
                            self.touched.push(Vertex::Primer(p));
                        }
                    }
                }
            }
        }
    }
}
