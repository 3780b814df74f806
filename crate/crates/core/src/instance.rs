//! Primers, pools and problem instances, plus the instance text format.
//!
//! Instance text has one primer per line:
//!
//! ```text
//! pool_id<TAB>strand<TAB>sequence<TAB>extensions
//! ```
//!
//! `strand` is `+`, `-` or `.`; `extensions` is a string over ACGT. Lines
//! starting with `#` are comments. Pool ids must be `0..n-1`, each pool's lines
//! contiguous and in increasing id order.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::dnaseq::{BaseSet, DnaString};
use crate::error::{Error, Result};
use crate::probespace::{ProbeId, ProbeSpace};

pub type PoolId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strand {
    Forward,
    Reverse,
    Unspecified,
}

impl fmt::Display for Strand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strand::Forward => "+",
            Strand::Reverse => "-",
            Strand::Unspecified => ".",
        })
    }
}

impl FromStr for Strand {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" => Ok(Strand::Forward),
            "-" => Ok(Strand::Reverse),
            "." => Ok(Strand::Unspecified),
            _ => Err(Error::Config(format!("bad strand {s:?}; expected +, - or ."))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Primer {
    pub sequence: DnaString,
    pub extensions: BaseSet,
    pub pool_id: PoolId,
    pub strand: Strand,
}

impl Primer {
    pub fn new(sequence: DnaString, extensions: BaseSet, pool_id: PoolId, strand: Strand) -> Result<Self> {
        if extensions.is_empty() {
            return Err(Error::Config("primer extension set is empty".into()));
        }
        Ok(Primer {
            sequence,
            extensions,
            pool_id,
            strand,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pool {
    pub id: PoolId,
    pub primers: Vec<Primer>,
}

impl Pool {
    pub fn new(id: PoolId, primers: Vec<Primer>) -> Result<Self> {
        if primers.is_empty() || primers.len() > 2 {
            return Err(Error::Config(format!("pool {id} has {} primers; expected 1 or 2", primers.len())));
        }
        if let Some(p) = primers.iter().find(|p| p.pool_id != id) {
            return Err(Error::Config(format!("primer tagged with pool {} placed in pool {id}", p.pool_id)));
        }
        if primers.len() == 2 && primers[0].strand == primers[1].strand && primers[0].strand != Strand::Unspecified {
            return Err(Error::Config(format!("pool {id} has two primers on strand {}", primers[0].strand)));
        }
        Ok(Pool { id, primers })
    }
}

/// Global position of a primer: pool id and index within the pool.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimerRef {
    pub pool: PoolId,
    pub index: u32,
}

#[derive(Clone, Debug)]
pub struct ProblemInstance {
    pub pools: Vec<Pool>,
    pub space: ProbeSpace,
    pub redundancy: u32,
}

impl ProblemInstance {
    pub fn new(pools: Vec<Pool>, space: ProbeSpace, redundancy: u32) -> Result<Self> {
        if redundancy == 0 {
            return Err(Error::Config("redundancy must be at least 1".into()));
        }
        for (i, pool) in pools.iter().enumerate() {
            if pool.id as usize != i {
                return Err(Error::Config(format!("pool ids must be dense; found {} at position {i}", pool.id)));
            }
        }
        Ok(ProblemInstance {
            pools,
            space,
            redundancy,
        })
    }

    pub fn n_pools(&self) -> usize {
        self.pools.len()
    }

    pub fn n_primers(&self) -> usize {
        self.pools.iter().map(|p| p.primers.len()).sum()
    }

    pub fn primer(&self, r: PrimerRef) -> Option<&Primer> {
        self.pools.get(r.pool as usize)?.primers.get(r.index as usize)
    }

    /// Primer references in global order (pool id, then position).
    pub fn primer_refs(&self) -> impl Iterator<Item = PrimerRef> + '_ {
        self.pools.iter().flat_map(|pool| {
            (0..pool.primers.len() as u32).map(move |index| PrimerRef { pool: pool.id, index })
        })
    }

    pub fn to_text(&self) -> String {
        pools_to_text(&self.pools)
    }

    pub fn fingerprint(&self) -> String {
        fingerprint(&self.pools)
    }

    /// Sub-instance over `ids` (in the given order), renumbered densely.
    /// Returns the instance and the original id of each new pool.
    pub fn restrict(&self, ids: &[PoolId]) -> (ProblemInstance, Vec<PoolId>) {
        let pools = ids
            .iter()
            .enumerate()
            .map(|(new_id, &old)| {
                let new_id = new_id as PoolId;
                let primers = self.pools[old as usize]
                    .primers
                    .iter()
                    .map(|p| Primer {
                        pool_id: new_id,
                        ..p.clone()
                    })
                    .collect();
                Pool { id: new_id, primers }
            })
            .collect();
        (
            ProblemInstance {
                pools,
                space: self.space.clone(),
                redundancy: self.redundancy,
            },
            ids.to_vec(),
        )
    }
}

pub fn pools_to_text(pools: &[Pool]) -> String {
    let mut out = String::new();
    for pool in pools {
        for p in &pool.primers {
            writeln!(out, "{}\t{}\t{}\t{}", pool.id, p.strand, p.sequence, p.extensions).unwrap();
        }
    }
    out
}

/// First 16 hex digits of the SHA-256 of the canonical instance text.
pub fn fingerprint(pools: &[Pool]) -> String {
    let digest = Sha256::digest(pools_to_text(pools).as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

pub fn parse_pools(text: &str) -> Result<Vec<Pool>> {
    let mut pools: Vec<Pool> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 {
            return Err(Error::parse(line_no, format!("expected 4 tab-separated fields, found {}", fields.len())));
        }
        let err = |e: Error| Error::parse(line_no, e.to_string());
        let pool_id: PoolId = fields[0]
            .trim()
            .parse()
            .map_err(|_| Error::parse(line_no, format!("bad pool id {:?}", fields[0])))?;
        let strand: Strand = fields[1].trim().parse().map_err(err)?;
        let sequence: DnaString = fields[2].trim().parse().map_err(err)?;
        let extensions: BaseSet = fields[3].trim().parse().map_err(err)?;
        let primer = Primer::new(sequence, extensions, pool_id, strand).map_err(err)?;
        match pools.last_mut() {
            Some(last) if last.id == pool_id => {
                if last.primers.len() >= 2 {
                    return Err(Error::parse(line_no, format!("pool {pool_id} has more than 2 primers")));
                }
                if primer.strand != Strand::Unspecified && last.primers.iter().any(|p| p.strand == primer.strand) {
                    return Err(Error::parse(line_no, format!("pool {pool_id} repeats strand {}", primer.strand)));
                }
                last.primers.push(primer);
            }
            _ => {
                if pool_id as usize != pools.len() {
                    return Err(Error::parse(
                        line_no,
                        format!("pool id {pool_id} out of order; expected {}", pools.len()),
                    ));
                }
                pools.push(Pool {
                    id: pool_id,
                    primers: vec![primer],
                });
            }
        }
    }
    Ok(pools)
}

/// Per-primer N⁺ and N⁻ probe sets for a whole instance, in global primer order.
#[derive(Clone, Debug)]
pub struct InstanceSpectra {
    pub refs: Vec<PrimerRef>,
    /// Spec_X(p)
    pub plus: Vec<Vec<ProbeId>>,
    /// Spec_X(p, E_p) \ Spec_X(p)
    pub minus: Vec<Vec<ProbeId>>,
}

impl InstanceSpectra {
    pub fn compute(instance: &ProblemInstance) -> Self {
        let refs: Vec<PrimerRef> = instance.primer_refs().collect();
        let space = &instance.space;
        let one = |r: &PrimerRef| {
            let p = instance.primer(*r).expect("ref from instance");
            space.primer_spectra(p.sequence.bases(), p.extensions)
        };
        #[cfg(feature = "parallel")]
        let pairs: Vec<_> = {
            use rayon::prelude::*;
            refs.par_iter().map(one).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let pairs: Vec<_> = refs.iter().map(one).collect();
        let (plus, minus) = pairs.into_iter().unzip();
        InstanceSpectra { refs, plus, minus }
    }

    /// Primers with an empty unextended spectrum; they can never be selected.
    pub fn pruned_primers(&self) -> usize {
        self.plus.iter().filter(|s| s.is_empty()).count()
    }
}
