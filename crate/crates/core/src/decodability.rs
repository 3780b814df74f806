//! Strong r-decodability: informative probes, the per-set test, and the
//! from-scratch design verifier.
//!
//! A probe is informative for `p` within a set of representatives when it is
//! in Spec_X(p) and in no other representative's extended spectrum
//! Spec_X(p', E_p'). A set is strongly r-decodable when every member has at
//! least `r` informative probes.

use std::collections::{HashMap, HashSet};
use std::fmt::{self, Write as _};

use crate::instance::{PoolId, Primer, ProblemInstance};
use crate::probespace::{ProbeId, ProbeSpace};

/// One selected pool, its representative primer and its witness probes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Selection {
    pub pool_id: PoolId,
    pub primer_index: u32,
    pub witnesses: Vec<ProbeId>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DesignResult {
    /// Sorted by pool id.
    pub selected: Vec<Selection>,
    /// Fingerprint of the instance the design was computed for.
    pub fingerprint: String,
}

impl DesignResult {
    pub fn new(mut selected: Vec<Selection>, fingerprint: String) -> Self {
        selected.sort_by_key(|s| s.pool_id);
        DesignResult { selected, fingerprint }
    }

    pub fn len(&self) -> usize {
        self.selected.len()
    }

    pub fn is_empty(&self) -> bool {
        self.selected.is_empty()
    }

    pub fn pool_ids(&self) -> impl Iterator<Item = PoolId> + '_ {
        self.selected.iter().map(|s| s.pool_id)
    }
}

/// Spec_X(p) minus the extended spectra of `others`.
pub fn informative_probes(p: &Primer, others: &[&Primer], space: &ProbeSpace) -> Vec<ProbeId> {
    let mut covered: HashSet<ProbeId> = HashSet::new();
    for o in others {
        covered.extend(space.extended_spectrum(o.sequence.bases(), o.extensions));
    }
    space
        .spectrum(p.sequence.bases())
        .into_iter()
        .filter(|x| !covered.contains(x))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodabilityCheck {
    pub decodable: bool,
    /// All informative probes of each primer, sorted.
    pub informative: Vec<Vec<ProbeId>>,
    /// On success, the `r` lowest informative probe ids of each primer.
    pub witnesses: Option<Vec<Vec<ProbeId>>>,
}

/// Tests Eq. (3)-style strong r-decodability of `primers` in one pass over
/// their spectra: a probe of Spec_X(p) is informative iff exactly one primer's
/// extended spectrum contains it (necessarily `p`'s own).
pub fn is_strongly_r_decodable(primers: &[&Primer], r: u32, space: &ProbeSpace) -> DecodabilityCheck {
    let spectra: Vec<(Vec<ProbeId>, Vec<ProbeId>)> = primers
        .iter()
        .map(|p| space.primer_spectra(p.sequence.bases(), p.extensions))
        .collect();
    let mut multiplicity: HashMap<ProbeId, u32> = HashMap::new();
    for (plus, minus) in &spectra {
        for x in plus.iter().chain(minus) {
            *multiplicity.entry(*x).or_default() += 1;
        }
    }
    let informative: Vec<Vec<ProbeId>> = spectra
        .iter()
        .map(|(plus, _)| plus.iter().copied().filter(|x| multiplicity[x] == 1).collect())
        .collect();
    let decodable = informative.iter().all(|inf| inf.len() >= r as usize);
    let witnesses = decodable.then(|| informative.iter().map(|inf| inf[..r as usize].to_vec()).collect());
    DecodabilityCheck {
        decodable,
        informative,
        witnesses,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    Fingerprint,
    Dangling,
    DuplicatePool,
    Undecodable,
    TooFewWitnesses,
    WitnessNotInSpectrum,
    WitnessNotInformative,
    SharedWitness,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::Fingerprint => "fingerprint",
            ViolationKind::Dangling => "dangling",
            ViolationKind::DuplicatePool => "duplicate-pool",
            ViolationKind::Undecodable => "undecodable",
            ViolationKind::TooFewWitnesses => "too-few-witnesses",
            ViolationKind::WitnessNotInSpectrum => "witness-not-in-spectrum",
            ViolationKind::WitnessNotInformative => "witness-not-informative",
            ViolationKind::SharedWitness => "shared-witness",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub pool_id: Option<PoolId>,
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, pool_id: Option<PoolId>, kind: ViolationKind, detail: String) {
        self.violations.push(Violation { pool_id, kind, detail });
    }

    /// `pool_id<TAB>kind<TAB>detail` per violation, then `# violations: N`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.violations {
            let pool = v.pool_id.map(|p| p.to_string()).unwrap_or_else(|| "-".into());
            writeln!(out, "{pool}\t{}\t{}", v.kind, v.detail).unwrap();
        }
        writeln!(out, "# violations: {}", self.violations.len()).unwrap();
        out
    }
}

/// Rechecks `result` against `instance` from scratch: references, Eq. (3)
/// for every representative at the instance's redundancy, and validity and
/// disjointness of every witness. No solver state is consulted.
pub fn verify_design(result: &DesignResult, instance: &ProblemInstance) -> VerificationReport {
    let mut report = VerificationReport::default();
    let r = instance.redundancy as usize;
    let space = &instance.space;

    if !result.fingerprint.is_empty() && result.fingerprint != instance.fingerprint() {
        report.push(
            None,
            ViolationKind::Fingerprint,
            format!("design is for instance {}, not {}", result.fingerprint, instance.fingerprint()),
        );
    }

    let mut seen_pools = HashSet::new();
    let mut reps: Vec<(&crate::decodability::Selection, &Primer)> = Vec::new();
    for sel in &result.selected {
        if !seen_pools.insert(sel.pool_id) {
            report.push(Some(sel.pool_id), ViolationKind::DuplicatePool, "pool selected more than once".into());
            continue;
        }
        let primer = instance
            .pools
            .get(sel.pool_id as usize)
            .and_then(|pool| pool.primers.get(sel.primer_index as usize));
        match primer {
            Some(p) => reps.push((sel, p)),
            None => report.push(
                Some(sel.pool_id),
                ViolationKind::Dangling,
                format!("no primer {} in pool {}", sel.primer_index, sel.pool_id),
            ),
        }
    }

    let plain: Vec<Vec<ProbeId>> = reps.iter().map(|(_, p)| space.spectrum(p.sequence.bases())).collect();
    let extended: Vec<Vec<ProbeId>> = reps
        .iter()
        .map(|(_, p)| space.extended_spectrum(p.sequence.bases(), p.extensions))
        .collect();
    let mut hybridizing: HashMap<ProbeId, Vec<usize>> = HashMap::new();
    for (i, ext) in extended.iter().enumerate() {
        for &x in ext {
            hybridizing.entry(x).or_default().push(i);
        }
    }

    let mut witness_owner: HashMap<ProbeId, PoolId> = HashMap::new();
    for (i, (sel, _)) in reps.iter().enumerate() {
        let pool = Some(sel.pool_id);
        let informative = plain[i].iter().filter(|x| hybridizing[x].len() == 1).count();
        if informative < r {
            report.push(
                pool,
                ViolationKind::Undecodable,
                format!("{informative} informative probes, need {r}"),
            );
        }

        let mut distinct: Vec<ProbeId> = sel.witnesses.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() < r {
            report.push(
                pool,
                ViolationKind::TooFewWitnesses,
                format!("{} distinct witnesses, need {r}", distinct.len()),
            );
        }
        for &x in &distinct {
            if plain[i].binary_search(&x).is_err() {
                report.push(
                    pool,
                    ViolationKind::WitnessNotInSpectrum,
                    format!("probe {x} does not hybridize to the representative"),
                );
            } else if let Some(&j) = hybridizing[&x].iter().find(|&&j| j != i) {
                report.push(
                    pool,
                    ViolationKind::WitnessNotInformative,
                    format!("probe {x} also hybridizes to pool {}", reps[j].0.pool_id),
                );
            }
            if let Some(&other) = witness_owner.get(&x) {
                report.push(pool, ViolationKind::SharedWitness, format!("probe {x} is also a witness of pool {other}"));
            } else {
                witness_owner.insert(x, sel.pool_id);
            }
        }
    }
    report
}
