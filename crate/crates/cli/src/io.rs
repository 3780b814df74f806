use std::io::{Read, Write};
use std::path::Path;

use anyhow::{Context, Result};
use sbesbh_core::instance::parse_pools;
use sbesbh_core::{ProbeSpace, ProbeSpaceKind, ProblemInstance};

/// `kmer:<k>`, `ctoken:<c>` or `list:<path>`.
pub fn parse_probes(arg: &str) -> Result<ProbeSpace> {
    if let Some(path) = arg.strip_prefix("list:") {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading probe list {path}"))?;
        return ProbeSpace::parse_list(&text).with_context(|| format!("probe list {path}"));
    }
    let kind: ProbeSpaceKind = arg.parse()?;
    Ok(ProbeSpace::new(kind)?)
}

pub fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
            Ok(s)
        }
    }
}

pub fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

pub fn load_instance(path: Option<&Path>, probes: &str, redundancy: u32) -> Result<ProblemInstance> {
    let text = read_input(path)?;
    let pools = parse_pools(&text).context("parsing instance")?;
    Ok(ProblemInstance::new(pools, parse_probes(probes)?, redundancy)?)
}
