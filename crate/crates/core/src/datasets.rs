//! Seeded random instances and SNP flank-table ingestion.
//!
//! The random generator is Xoshiro256++ seeded through SplitMix64
//! (`seed_from_u64`). Bases are `next_u64() % 4` in A, C, G, T order; an
//! allele pair is `next_u64() % 6` over AC, AG, AT, CG, CT, GT. Per pool the
//! allele pair (if any) is drawn first, then primer 1's bases, then primer 2's.

use std::fmt::Write as _;
use std::path::Path;

use rand_xoshiro::rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::dnaseq::{Base, BaseSet, DnaString};
use crate::error::{Error, Result};
use crate::instance::{Pool, PoolId, Primer, Strand};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ExtensionMode {
    #[default]
    AllFour,
    AllelePair,
}

impl std::str::FromStr for ExtensionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all4" => Ok(ExtensionMode::AllFour),
            "pair" => Ok(ExtensionMode::AllelePair),
            _ => Err(Error::Config(format!("unknown extension mode {s:?}; expected all4 or pair"))),
        }
    }
}

impl std::fmt::Display for ExtensionMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ExtensionMode::AllFour => "all4",
            ExtensionMode::AllelePair => "pair",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RandomSpec {
    pub n_pools: usize,
    pub primers_per_pool: u32,
    pub primer_length: usize,
    pub extension_mode: ExtensionMode,
    pub rng_seed: u64,
}

impl RandomSpec {
    pub fn validate(&self) -> Result<()> {
        if !(1..=2).contains(&self.primers_per_pool) {
            return Err(Error::Config(format!("primers per pool must be 1 or 2, got {}", self.primers_per_pool)));
        }
        if self.primer_length == 0 {
            return Err(Error::Config("primer length must be at least 1".into()));
        }
        Ok(())
    }
}

const ALLELE_PAIRS: [(Base, Base); 6] = [
    (Base::A, Base::C),
    (Base::A, Base::G),
    (Base::A, Base::T),
    (Base::C, Base::G),
    (Base::C, Base::T),
    (Base::G, Base::T),
];

/// Pools for a random instance. Combine with a probe space and redundancy
/// via [`ProblemInstance::new`](crate::instance::ProblemInstance::new).
pub fn generate_random(spec: &RandomSpec) -> Result<Vec<Pool>> {
    spec.validate()?;
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(spec.rng_seed);
    let mut pools = Vec::with_capacity(spec.n_pools);
    for id in 0..spec.n_pools as PoolId {
        let alleles = match spec.extension_mode {
            ExtensionMode::AllFour => None,
            ExtensionMode::AllelePair => {
                let (a, b) = ALLELE_PAIRS[(rng.next_u64() % 6) as usize];
                Some(BaseSet::from_bases([a, b]))
            }
        };
        let mut primers = Vec::with_capacity(spec.primers_per_pool as usize);
        for i in 0..spec.primers_per_pool {
            let seq: Vec<Base> = (0..spec.primer_length)
                .map(|_| Base::from_code((rng.next_u64() % 4) as u8))
                .collect();
            let (strand, ext) = match (i, alleles) {
                (0, Some(al)) => (Strand::Forward, al.complement()),
                (_, Some(al)) => (Strand::Reverse, al),
                (0, None) => (Strand::Forward, BaseSet::ALL),
                (_, None) => (Strand::Reverse, BaseSet::ALL),
            };
            primers.push(Primer::new(DnaString::from_bases(seq), ext, id, strand)?);
        }
        pools.push(Pool::new(id, primers)?);
    }
    Ok(pools)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnpRecord {
    pub id: String,
    pub left_flank: String,
    pub alleles: BaseSet,
    pub right_flank: String,
}

/// A record that produced no pool, with the reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skipped {
    pub id: String,
    pub reason: String,
}

pub const FLANK_TOO_SHORT: &str = "flank too short";
pub const DEGENERATE_IN_WINDOW: &str = "degenerate base in primer window";

pub fn parse_snp_records(text: &str) -> Result<Vec<SnpRecord>> {
    let mut out = Vec::new();
    let mut seen_data = false;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 4 {
            return Err(Error::parse(line_no, format!("expected 4 tab-separated fields, found {}", f.len())));
        }
        if !seen_data && f[0].eq_ignore_ascii_case("id") && f[2].eq_ignore_ascii_case("alleles") {
            seen_data = true;
            continue;
        }
        seen_data = true;
        let alleles: BaseSet = f[2]
            .trim()
            .parse()
            .map_err(|e: Error| Error::parse(line_no, format!("alleles: {e}")))?;
        if alleles.len() < 2 || alleles.len() != f[2].trim().len() {
            return Err(Error::parse(line_no, format!("alleles must be 2-4 distinct bases, got {:?}", f[2])));
        }
        for (name, flank) in [("left flank", f[1]), ("right flank", f[3])] {
            if let Some(c) = flank.trim().chars().find(|c| !crate::dnaseq::is_iupac(*c)) {
                return Err(Error::parse(line_no, format!("{name}: invalid character {c:?}")));
            }
        }
        out.push(SnpRecord {
            id: f[0].trim().to_string(),
            left_flank: f[1].trim().to_ascii_uppercase(),
            alleles,
            right_flank: f[3].trim().to_ascii_uppercase(),
        });
    }
    Ok(out)
}

fn window(flank: &str, from_end: bool, len: usize) -> std::result::Result<DnaString, &'static str> {
    let chars: Vec<char> = flank.chars().collect();
    if chars.len() < len {
        return Err(FLANK_TOO_SHORT);
    }
    let w = if from_end { &chars[chars.len() - len..] } else { &chars[..len] };
    let mut s = DnaString::new();
    for &c in w {
        s.push(Base::from_char(c).map_err(|_| DEGENERATE_IN_WINDOW)?);
    }
    Ok(s)
}

/// Turns SNP records into two-primer pools. Pool ids are dense in record order.
pub fn snp_pools(records: &[SnpRecord], primer_length: usize) -> Result<(Vec<Pool>, Vec<(PoolId, String)>, Vec<Skipped>)> {
    if primer_length == 0 {
        return Err(Error::Config("primer length must be at least 1".into()));
    }
    let mut pools = Vec::new();
    let mut ids = Vec::new();
    let mut skipped = Vec::new();
    for rec in records {
        let fwd = window(&rec.left_flank, true, primer_length);
        let rev = window(&rec.right_flank, false, primer_length);
        match (fwd, rev) {
            (Ok(fwd), Ok(rev)) => {
                let id = pools.len() as PoolId;
                let primers = vec![
                    Primer::new(fwd, rec.alleles.complement(), id, Strand::Forward)?,
                    Primer::new(rev.reverse_complement(), rec.alleles, id, Strand::Reverse)?,
                ];
                pools.push(Pool::new(id, primers)?);
                ids.push((id, rec.id.clone()));
            }
            (Err(reason), _) | (_, Err(reason)) => skipped.push(Skipped {
                id: rec.id.clone(),
                reason: reason.to_string(),
            }),
        }
    }
    Ok((pools, ids, skipped))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ingested {
    pub pools: Vec<Pool>,
    /// SNP id of each pool.
    pub snp_ids: Vec<(PoolId, String)>,
    pub skipped: Vec<Skipped>,
}

impl Ingested {
    /// Instance text preceded by `# snp` lines mapping pools to SNP ids and
    /// `# skipped` lines for records that produced no pool.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (id, snp) in &self.snp_ids {
            writeln!(out, "# snp\t{id}\t{snp}").unwrap();
        }
        for s in &self.skipped {
            writeln!(out, "# skipped\t{}\t{}", s.id, s.reason).unwrap();
        }
        out.push_str(&crate::instance::pools_to_text(&self.pools));
        out
    }
}

pub fn parse_snp_table(text: &str, primer_length: usize) -> Result<Ingested> {
    let records = parse_snp_records(text)?;
    let (pools, snp_ids, skipped) = snp_pools(&records, primer_length)?;
    Ok(Ingested { pools, snp_ids, skipped })
}

pub fn load_snp_table(path: &Path, primer_length: usize) -> Result<Ingested> {
    parse_snp_table(&std::fs::read_to_string(path)?, primer_length)
}
