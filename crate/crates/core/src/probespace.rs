//! Universal probe sets and spectrum computation.
//!
//! Probe identifiers are dense integers:
//! - k-mers use the base-4 ordinal of the sequence (first base most significant);
//! - c-tokens use their rank in lexicographic order (A<C<G<T, a proper prefix
//!   sorting before its extensions), computed combinatorially so no roster is
//!   stored;
//! - explicit lists use the order in which probes were supplied.
//!
//! A probe `x` hybridizes with `y` when the reverse complement of `x` occurs
//! in `y`. Spectra are returned as sorted, duplicate-free vectors.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::dnaseq::{reverse_complement, weight, Base, BaseSet, DnaString};
use crate::error::{Error, Result};

pub const MAX_K: u32 = 16;
pub const MIN_C: u32 = 2;
pub const MAX_C: u32 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProbeSpaceKind {
    AllKmers(u32),
    AllCTokens(u32),
}

impl ProbeSpaceKind {
    pub fn validate(self) -> Result<Self> {
        match self {
            ProbeSpaceKind::AllKmers(k) if !(1..=MAX_K).contains(&k) => {
                Err(Error::Config(format!("k-mer length {k} outside 1..={MAX_K}")))
            }
            ProbeSpaceKind::AllCTokens(c) if !(MIN_C..=MAX_C).contains(&c) => {
                Err(Error::Config(format!("c-token weight {c} outside {MIN_C}..={MAX_C}")))
            }
            kind => Ok(kind),
        }
    }
}

impl FromStr for ProbeSpaceKind {
    type Err = Error;

    /// Accepts `kmer:<k>` or `ctoken:<c>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("bad probe space {s:?}; expected kmer:<k> or ctoken:<c>"));
        let (family, n) = s.split_once(':').ok_or_else(bad)?;
        let n: u32 = n.trim().parse().map_err(|_| bad())?;
        let kind = match family.trim() {
            "kmer" => ProbeSpaceKind::AllKmers(n),
            "ctoken" => ProbeSpaceKind::AllCTokens(n),
            _ => return Err(bad()),
        };
        kind.validate()
    }
}

impl fmt::Display for ProbeSpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbeSpaceKind::AllKmers(k) => write!(f, "kmer:{k}"),
            ProbeSpaceKind::AllCTokens(c) => write!(f, "ctoken:{c}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProbeId(pub u32);

impl fmt::Display for ProbeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// True iff `s` has weight at least `c` and every proper suffix weighs less.
pub fn is_ctoken(s: &[Base], c: u32) -> bool {
    match s.split_first() {
        None => false,
        Some((_, rest)) => weight(s) >= c && weight(rest) < c,
    }
}

/// Number of strings of exact weight `w`, for `w` in `0..=max_w`.
pub fn exact_weight_counts(max_w: u32) -> Vec<u64> {
    let mut n = vec![0u64; max_w as usize + 1];
    n[0] = 1;
    if max_w >= 1 {
        n[1] = 2;
    }
    for w in 2..=max_w as usize {
        n[w] = 2 * n[w - 1] + 2 * n[w - 2];
    }
    n
}

/// Ranking tables for the all-c-token family.
#[derive(Debug)]
struct TokenTable {
    c: u32,
    /// `prefix[w]` = number of strings of weight < w, for w in 0..=c.
    prefix: Vec<u64>,
    size: u64,
}

impl TokenTable {
    fn new(c: u32) -> Self {
        let n = exact_weight_counts(c);
        let mut prefix = vec![0u64; c as usize + 1];
        for w in 1..=c as usize {
            prefix[w] = prefix[w - 1] + n[w - 1];
        }
        let size = 4 * n[c as usize - 1] + 2 * n[c as usize - 2];
        TokenTable { c, prefix, size }
    }

    /// Number of tokens starting with a prefix whose first base is `first`
    /// and whose total weight is `w`.
    #[inline]
    fn count_with_prefix(&self, first: Base, w: u32) -> u64 {
        let c = self.c as i64;
        let hi = c + first.weight() as i64 - 1 - w as i64;
        if hi < 0 {
            return 0;
        }
        let lo = (c - w as i64).max(0);
        self.prefix[hi as usize + 1] - self.prefix[lo as usize]
    }

    fn rank(&self, s: &[Base]) -> Option<u64> {
        if !is_ctoken(s, self.c) {
            return None;
        }
        let mut rank = 0u64;
        let mut w = 0u32;
        for (i, &b) in s.iter().enumerate() {
            if i > 0 && w >= self.c && w - s[0].weight() < self.c {
                // the proper prefix s[..i] is itself a token
                rank += 1;
            }
            for smaller in Base::ALL.into_iter().take(b.code() as usize) {
                let first = if i == 0 { smaller } else { s[0] };
                rank += self.count_with_prefix(first, w + smaller.weight());
            }
            w += b.weight();
        }
        Some(rank)
    }

    fn unrank(&self, mut id: u64) -> Option<Vec<Base>> {
        if id >= self.size {
            return None;
        }
        let mut out: Vec<Base> = Vec::with_capacity(self.c as usize + 1);
        let mut w = 0u32;
        loop {
            if !out.is_empty() && w >= self.c && w - out[0].weight() < self.c {
                if id == 0 {
                    return Some(out);
                }
                id -= 1;
            }
            let mut advanced = false;
            for b in Base::ALL {
                let first = out.first().copied().unwrap_or(b);
                let cnt = self.count_with_prefix(first, w + b.weight());
                if id < cnt {
                    out.push(b);
                    w += b.weight();
                    advanced = true;
                    break;
                }
                id -= cnt;
            }
            if !advanced {
                return None;
            }
        }
    }
}

/// Depth-first enumeration of all c-tokens in lexicographic order.
///
/// Independent of the counting tables: it only applies the suffix-weight test.
pub fn enumerate_ctokens(c: u32, mut visit: impl FnMut(&[Base])) {
    fn go(prefix: &mut Vec<Base>, w: u32, c: u32, visit: &mut dyn FnMut(&[Base])) {
        if let Some(first) = prefix.first() {
            if w - first.weight() >= c {
                return;
            }
            if w >= c {
                visit(prefix);
            }
        }
        for b in Base::ALL {
            prefix.push(b);
            go(prefix, w + b.weight(), c, visit);
            prefix.pop();
        }
    }
    let mut prefix = Vec::with_capacity(c as usize + 1);
    go(&mut prefix, 0, c, &mut visit);
}

#[derive(Debug)]
struct ProbeList {
    probes: Vec<DnaString>,
    by_seq: HashMap<Vec<Base>, ProbeId>,
    /// keyed by the reverse complement, i.e. the substring a target must contain
    by_target: HashMap<Vec<Base>, ProbeId>,
    lengths: Vec<usize>,
}

#[derive(Clone, Debug)]
enum Repr {
    Kmers { k: u32 },
    CTokens(Arc<TokenTable>),
    List(Arc<ProbeList>),
}

/// An immutable universal probe set with dense integer indexing.
#[derive(Clone, Debug)]
pub struct ProbeSpace {
    repr: Repr,
}

/// Builds the probe space for `kind`. Construction is cheap: members are
/// indexed arithmetically and never materialized.
pub fn enumerate_probes(kind: ProbeSpaceKind) -> Result<ProbeSpace> {
    ProbeSpace::new(kind)
}

impl ProbeSpace {
    pub fn new(kind: ProbeSpaceKind) -> Result<Self> {
        let repr = match kind.validate()? {
            ProbeSpaceKind::AllKmers(k) => Repr::Kmers { k },
            ProbeSpaceKind::AllCTokens(c) => Repr::CTokens(Arc::new(TokenTable::new(c))),
        };
        Ok(ProbeSpace { repr })
    }

    /// An explicit finite probe set. IDs follow the input order.
    pub fn from_list(probes: Vec<DnaString>) -> Result<Self> {
        if probes.len() > u32::MAX as usize {
            return Err(Error::Config("probe list too large".into()));
        }
        let mut by_seq = HashMap::with_capacity(probes.len());
        let mut by_target = HashMap::with_capacity(probes.len());
        let mut lengths = Vec::new();
        for (i, p) in probes.iter().enumerate() {
            if p.is_empty() {
                return Err(Error::Config(format!("probe {i} is empty")));
            }
            let id = ProbeId(i as u32);
            if by_seq.insert(p.bases().to_vec(), id).is_some() {
                return Err(Error::Config(format!("duplicate probe {p}")));
            }
            by_target.insert(reverse_complement(p.bases()), id);
            lengths.push(p.len());
        }
        lengths.sort_unstable();
        lengths.dedup();
        Ok(ProbeSpace {
            repr: Repr::List(Arc::new(ProbeList {
                probes,
                by_seq,
                by_target,
                lengths,
            })),
        })
    }

    /// Parses a probe list: one probe per line, optionally preceded by an
    /// ID column (`id<TAB>sequence`, as printed by the roster). `#` lines are
    /// comments. IDs are reassigned in file order.
    pub fn parse_list(text: &str) -> Result<Self> {
        let mut probes = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let seq = line.rsplit('\t').next().unwrap_or(line);
            let p: DnaString = seq.parse().map_err(|e| Error::parse(i + 1, format!("{e}")))?;
            probes.push(p);
        }
        Self::from_list(probes)
    }

    pub fn kind(&self) -> Option<ProbeSpaceKind> {
        match &self.repr {
            Repr::Kmers { k } => Some(ProbeSpaceKind::AllKmers(*k)),
            Repr::CTokens(t) => Some(ProbeSpaceKind::AllCTokens(t.c)),
            Repr::List(_) => None,
        }
    }

    /// Short textual form used in report headers.
    pub fn descriptor(&self) -> String {
        match &self.repr {
            Repr::List(l) => format!("list({} probes)", l.probes.len()),
            _ => self.kind().map(|k| k.to_string()).unwrap_or_default(),
        }
    }

    pub fn size(&self) -> u64 {
        match &self.repr {
            Repr::Kmers { k } => 1u64 << (2 * k),
            Repr::CTokens(t) => t.size,
            Repr::List(l) => l.probes.len() as u64,
        }
    }

    /// Length of the shortest member.
    pub fn min_probe_len(&self) -> usize {
        match &self.repr {
            Repr::Kmers { k } => *k as usize,
            Repr::CTokens(t) => t.c.div_ceil(2) as usize,
            Repr::List(l) => l.lengths.first().copied().unwrap_or(0),
        }
    }

    pub fn id_of(&self, probe: &[Base]) -> Option<ProbeId> {
        match &self.repr {
            Repr::Kmers { k } => {
                (probe.len() == *k as usize).then(|| ProbeId(probe.iter().fold(0u64, |acc, b| acc * 4 + b.code() as u64) as u32))
            }
            Repr::CTokens(t) => t.rank(probe).map(|r| ProbeId(r as u32)),
            Repr::List(l) => l.by_seq.get(probe).copied(),
        }
    }

    pub fn probe(&self, id: ProbeId) -> Option<DnaString> {
        match &self.repr {
            Repr::Kmers { k } => {
                if id.0 as u64 >= self.size() {
                    return None;
                }
                let k = *k as usize;
                let bases = (0..k).map(|i| Base::from_code((id.0 >> (2 * (k - 1 - i))) as u8)).collect();
                Some(DnaString::from_bases(bases))
            }
            Repr::CTokens(t) => t.unrank(id.0 as u64).map(DnaString::from_bases),
            Repr::List(l) => l.probes.get(id.0 as usize).cloned(),
        }
    }

    /// Calls `f` for every window `y[i..j]` with `j >= min_end` whose reverse
    /// complement is a probe. May report the same probe more than once.
    pub fn for_each_match(&self, y: &[Base], min_end: usize, mut f: impl FnMut(ProbeId)) {
        match &self.repr {
            Repr::Kmers { k } => {
                let k = *k as usize;
                if y.len() < k {
                    return;
                }
                let top = 2 * (k - 1);
                let mut rc: u64 = 0;
                for (j, b) in y.iter().enumerate() {
                    rc = (rc >> 2) | ((b.complement().code() as u64) << top);
                    let end = j + 1;
                    if end >= k && end >= min_end {
                        f(ProbeId(rc as u32));
                    }
                }
            }
            Repr::CTokens(t) => {
                let c = t.c;
                let mut buf = [Base::A; (MAX_C + 1) as usize];
                let mut j = 0;
                let mut w = 0u32;
                for i in 0..y.len() {
                    while w < c && j < y.len() {
                        w += y[j].weight();
                        j += 1;
                    }
                    if w < c {
                        break;
                    }
                    if j >= min_end {
                        let len = j - i;
                        for (slot, b) in buf.iter_mut().zip(y[i..j].iter().rev()) {
                            *slot = b.complement();
                        }
                        let rank = t.rank(&buf[..len]).expect("prefix-minimal window is a token");
                        f(ProbeId(rank as u32));
                    }
                    w -= y[i].weight();
                }
            }
            Repr::List(l) => {
                for &len in &l.lengths {
                    for end in len.max(min_end)..=y.len() {
                        if let Some(&id) = l.by_target.get(&y[end - len..end]) {
                            f(id);
                        }
                    }
                }
            }
        }
    }

    /// Spec_X(y): probes whose reverse complement is a substring of `y`.
    pub fn spectrum(&self, y: &[Base]) -> Vec<ProbeId> {
        let mut out = Vec::new();
        self.for_each_match(y, 0, |id| out.push(id));
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Spec_X(p, E): union of the spectra of `p·e` over `e` in `ext`.
    pub fn extended_spectrum(&self, p: &[Base], ext: BaseSet) -> Vec<ProbeId> {
        let (mut plus, minus) = self.primer_spectra(p, ext);
        plus.extend(minus);
        plus.sort_unstable();
        plus
    }

    /// `(Spec_X(p), Spec_X(p, E) \ Spec_X(p))`, both sorted.
    pub fn primer_spectra(&self, p: &[Base], ext: BaseSet) -> (Vec<ProbeId>, Vec<ProbeId>) {
        let plus = self.spectrum(p);
        let mut minus = Vec::new();
        let mut extended = Vec::with_capacity(p.len() + 1);
        extended.extend_from_slice(p);
        extended.push(Base::A);
        for e in ext.iter() {
            *extended.last_mut().unwrap() = e;
            // only windows touching the extension base are new
            self.for_each_match(&extended, p.len() + 1, |id| {
                if plus.binary_search(&id).is_err() {
                    minus.push(id);
                }
            });
        }
        minus.sort_unstable();
        minus.dedup();
        (plus, minus)
    }

    /// Every member with its ID, in ID order.
    pub fn roster(&self) -> Box<dyn Iterator<Item = (ProbeId, DnaString)> + '_> {
        match &self.repr {
            Repr::CTokens(t) => {
                let mut all = Vec::with_capacity(t.size as usize);
                enumerate_ctokens(t.c, |s| all.push(DnaString::from(s)));
                Box::new(all.into_iter().enumerate().map(|(i, s)| (ProbeId(i as u32), s)))
            }
            _ => Box::new((0..self.size()).map(|i| {
                let id = ProbeId(i as u32);
                (id, self.probe(id).expect("id within size"))
            })),
        }
    }
}
