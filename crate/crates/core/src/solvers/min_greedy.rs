use crate::decodability::{DesignResult, Selection};
use crate::graph::{DegreeMode, HybridizationGraph, Vertex};
use crate::instance::{InstanceSpectra, ProblemInstance};

use super::bucket::BucketQueue;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Primers,
    Probes,
}

/// Min-degree greedy on the hybridization graph. The queue tracks whichever
/// side the algorithm picks from first.
struct MinGreedy {
    graph: HybridizationGraph,
    queue: BucketQueue,
    side: Side,
    mode: DegreeMode,
    selected: Vec<Selection>,
}

impl MinGreedy {
    fn new(instance: &ProblemInstance, spectra: &InstanceSpectra, side: Side, mode: DegreeMode) -> Self {
        let mut graph = HybridizationGraph::build(instance, spectra);
        graph.establish_invariants();
        graph.take_touched();
        let n = match side {
            Side::Primers => graph.n_primers(),
            Side::Probes => graph.n_probes(),
        };
        let mut queue = BucketQueue::new(n);
        for i in 0..n as u32 {
            let v = vertex(side, i);
            if graph.is_live(v) {
                queue.set(i, graph.degree_unchecked(v, mode));
            }
        }
        MinGreedy {
            graph,
            queue,
            side,
            mode,
            selected: Vec::new(),
        }
    }

    fn sync_queue(&mut self) {
        let (queue, side, mode) = (&mut self.queue, self.side, self.mode);
        self.graph.drain_touched(|g, v| {
            let i = match (side, v) {
                (Side::Primers, Vertex::Primer(i)) | (Side::Probes, Vertex::Probe(i)) => i,
                _ => return,
            };
            if g.is_live(v) {
                queue.set(i, g.degree_unchecked(v, mode));
            } else {
                queue.remove(i);
            }
        });
    }

    fn remove_primer(&mut self, p: u32) {
        if self.graph.is_live(Vertex::Primer(p)) {
            self.graph.remove_primer(p).expect("live primer");
        }
    }

    fn remove_probe(&mut self, x: u32) {
        if self.graph.is_live(Vertex::Probe(x)) {
            self.graph.remove_probe(x).expect("live probe");
        }
    }

    /// Makes `p` the representative of its pool and deletes everything that
    /// could interfere with its witnesses.
    fn select(&mut self, p: u32) {
        let r = self.graph.redundancy() as usize;
        let rf = self.graph.primer_ref(p);

        for q in self.graph.pool_primers(rf.pool) {
            if q != p {
                self.remove_primer(q);
            }
        }

        // witness order is fixed here, before any of the deletions below
        let mut probes: Vec<(u32, u32)> = self
            .graph
            .live_plus(Vertex::Primer(p))
            .map(|x| (self.graph.degree_unchecked(Vertex::Probe(x), self.mode), x))
            .collect();
        probes.sort_unstable();
        debug_assert!(probes.len() >= r, "selected primer violates |N+| >= r");
        let (witnesses, rest) = probes.split_at(r.min(probes.len()));

        for &(_, x) in witnesses {
            let neighbours: Vec<u32> = self
                .graph
                .live_plus(Vertex::Probe(x))
                .chain(self.graph.live_minus(Vertex::Probe(x)))
                .filter(|&q| q != p)
                .collect();
            for q in neighbours {
                self.remove_primer(q);
            }
        }

        let minus: Vec<u32> = self.graph.live_minus(Vertex::Primer(p)).collect();
        self.graph.retire_primer(p);
        for &(_, x) in witnesses.iter().chain(rest) {
            self.remove_probe(x);
        }
        for x in minus {
            self.remove_probe(x);
        }
        self.sync_queue();

        let mut witness_ids: Vec<_> = witnesses.iter().map(|&(_, x)| self.graph.probe_id(x)).collect();
        witness_ids.sort_unstable();
        self.selected.push(Selection {
            pool_id: rf.pool,
            primer_index: rf.index,
            witnesses: witness_ids,
        });
    }

    fn run(mut self, fingerprint: String) -> DesignResult {
        loop {
            let p = match self.side {
                Side::Primers => match self.queue.pop_min() {
                    Some((_, p)) => p,
                    None => break,
                },
                Side::Probes => match self.queue.peek_min() {
                    Some((_, x)) => self.min_primer_of(x),
                    None => break,
                },
            };
            self.select(p);
        }
        debug_assert!(self.graph.is_empty());
        DesignResult::new(self.selected, fingerprint)
    }

    fn min_primer_of(&self, x: u32) -> u32 {
        self.graph
            .live_plus(Vertex::Probe(x))
            .min_by_key(|&p| (self.graph.degree_unchecked(Vertex::Primer(p), self.mode), p))
            .expect("live probe keeps |N+| >= 1")
    }
}

fn vertex(side: Side, i: u32) -> Vertex {
    match side {
        Side::Primers => Vertex::Primer(i),
        Side::Probes => Vertex::Probe(i),
    }
}

/// Repeatedly picks a live minimum-degree primer (lowest index on ties) and
/// its `r` lowest-degree N⁺ probes as witnesses.
pub fn min_primer_greedy(instance: &ProblemInstance, mode: DegreeMode) -> DesignResult {
    min_primer_greedy_with(instance, &InstanceSpectra::compute(instance), mode)
}

pub fn min_primer_greedy_with(instance: &ProblemInstance, spectra: &InstanceSpectra, mode: DegreeMode) -> DesignResult {
    MinGreedy::new(instance, spectra, Side::Primers, mode).run(instance.fingerprint())
}

/// Repeatedly picks a live minimum-degree probe (lowest id on ties), then a
/// minimum-degree primer among its N⁺ neighbours.
pub fn min_probe_greedy(instance: &ProblemInstance, mode: DegreeMode) -> DesignResult {
    min_probe_greedy_with(instance, &InstanceSpectra::compute(instance), mode)
}

pub fn min_probe_greedy_with(instance: &ProblemInstance, spectra: &InstanceSpectra, mode: DegreeMode) -> DesignResult {
    MinGreedy::new(instance, spectra, Side::Probes, mode).run(instance.fingerprint())
}
