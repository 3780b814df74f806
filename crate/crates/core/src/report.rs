//! Text serialization of designs and partition reports.
//!
//! A report starts with `#`-prefixed manifest lines (`# key<TAB>value`).
//! Each design block is introduced by `# array<TAB>i` (omitted for a single
//! design), carries `# fingerprint<TAB>hex`, then one row per selected pool:
//!
//! ```text
//! pool_id  primer_index  primer_sequence  witness_ids  witness_sequences
//! ```
//!
//! with comma-separated witness columns, and ends with `# selected: N`.
//! Partition reports append a `# coverage` section holding a TSV curve and a
//! `# uncovered<TAB>ids` line.

use std::fmt::Write as _;

use crate::decodability::{DesignResult, Selection};
use crate::error::{Error, Result};
use crate::instance::{PoolId, ProblemInstance};
use crate::partitioner::{coverage_curve, coverage_curve_decodable, PartitionReport};
use crate::probespace::ProbeId;

/// Ordered `key<TAB>value` header lines.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Manifest {
    pub entries: Vec<(String, String)>,
}

impl Manifest {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<String>) -> &mut Self {
        self.entries.push((key.into(), value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            writeln!(out, "# {k}\t{v}").unwrap();
        }
        out
    }

    /// Collects leading `# key<TAB>value` lines; stops at the first other line.
    pub fn parse(text: &str) -> Self {
        let mut m = Manifest::new();
        for line in text.lines() {
            let Some(rest) = line.strip_prefix("# ") else { break };
            let Some((k, v)) = rest.split_once('\t') else { break };
            if k == "array" || k == "fingerprint" {
                break;
            }
            m.push(k, v);
        }
        m
    }
}

fn join_ids(ids: &[ProbeId]) -> String {
    ids.iter().map(|x| x.0.to_string()).collect::<Vec<_>>().join(",")
}

/// Appends one design block. `instance` supplies the sequence columns.
pub fn write_design(out: &mut String, design: &DesignResult, instance: &ProblemInstance) {
    writeln!(out, "# fingerprint\t{}", design.fingerprint).unwrap();
    writeln!(out, "# pool\tprimer\tsequence\twitnesses\twitness_sequences").unwrap();
    for s in &design.selected {
        let seq = instance
            .pools
            .get(s.pool_id as usize)
            .and_then(|p| p.primers.get(s.primer_index as usize))
            .map(|p| p.sequence.to_string())
            .unwrap_or_default();
        let wseq: Vec<String> = s
            .witnesses
            .iter()
            .map(|&x| instance.space.probe(x).map(|p| p.to_string()).unwrap_or_default())
            .collect();
        writeln!(out, "{}\t{}\t{seq}\t{}\t{}", s.pool_id, s.primer_index, join_ids(&s.witnesses), wseq.join(",")).unwrap();
    }
    writeln!(out, "# selected: {}", design.len()).unwrap();
}

pub fn design_to_text(manifest: &Manifest, design: &DesignResult, instance: &ProblemInstance) -> String {
    let mut out = manifest.to_text();
    write_design(&mut out, design, instance);
    out
}

fn fmt_fraction(f: f64) -> String {
    format!("{f:.6}")
}

pub fn partition_to_text(manifest: &Manifest, report: &PartitionReport, instance: &ProblemInstance) -> String {
    let mut out = manifest.to_text();
    for (i, a) in report.arrays.iter().enumerate() {
        writeln!(out, "# array\t{}", i + 1).unwrap();
        write_design(&mut out, a, instance);
    }
    writeln!(out, "# coverage").unwrap();
    writeln!(out, "array\tsize\tcumulative_fraction\tcumulative_fraction_decodable").unwrap();
    let all = coverage_curve(report);
    let dec = coverage_curve_decodable(report);
    for ((i, f), (_, g)) in all.iter().zip(&dec) {
        writeln!(out, "{i}\t{}\t{}\t{}", report.arrays[i - 1].len(), fmt_fraction(*f), fmt_fraction(*g)).unwrap();
    }
    let ids = |v: &[PoolId]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
    writeln!(out, "# uncovered\t{}", ids(&report.uncovered)).unwrap();
    if !report.unassigned.is_empty() {
        writeln!(out, "# unassigned\t{}", ids(&report.unassigned)).unwrap();
    }
    writeln!(
        out,
        "# summary\tarrays={}\tcovered={}\tuncovered={}\tunassigned={}\tpools={}",
        report.arrays.len(),
        report.covered(),
        report.uncovered.len(),
        report.unassigned.len(),
        report.n_pools
    )
    .unwrap();
    out
}

/// Designs (and any partition extras) read back from report text.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParsedReport {
    pub manifest: Manifest,
    pub designs: Vec<DesignResult>,
    pub uncovered: Vec<PoolId>,
    pub unassigned: Vec<PoolId>,
}

fn parse_id_list<T: std::str::FromStr>(s: &str, line: usize) -> Result<Vec<T>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| Error::parse(line, format!("bad id {t:?}"))))
        .collect()
}

pub fn parse_report(text: &str) -> Result<ParsedReport> {
    let mut out = ParsedReport {
        manifest: Manifest::parse(text),
        ..Default::default()
    };
    let mut current: Option<DesignResult> = None;
    let mut in_coverage = false;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim_start();
            let (key, value) = rest.split_once('\t').unwrap_or((rest, ""));
            match key {
                "array" => {
                    out.designs.extend(current.take());
                    in_coverage = false;
                }
                "fingerprint" => {
                    out.designs.extend(current.take());
                    current = Some(DesignResult::new(Vec::new(), value.trim().to_string()));
                    in_coverage = false;
                }
                "coverage" => {
                    out.designs.extend(current.take());
                    in_coverage = true;
                }
                "uncovered" => out.uncovered = parse_id_list(value, line_no)?,
                "unassigned" => out.unassigned = parse_id_list(value, line_no)?,
                _ => {}
            }
            continue;
        }
        if in_coverage {
            continue;
        }
        let Some(design) = current.as_mut() else {
            return Err(Error::parse(line_no, "selection row before any fingerprint line"));
        };
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() < 4 {
            return Err(Error::parse(line_no, format!("expected at least 4 fields, found {}", f.len())));
        }
        let num = |s: &str, what: &str| s.trim().parse::<u32>().map_err(|_| Error::parse(line_no, format!("bad {what} {s:?}")));
        design.selected.push(Selection {
            pool_id: num(f[0], "pool id")?,
            primer_index: num(f[1], "primer index")?,
            witnesses: parse_id_list::<u32>(f[3], line_no)?.into_iter().map(ProbeId).collect(),
        });
    }
    out.designs.extend(current);
    Ok(out)
}
