//! Probe-array design for multiplexed SBE/SBH genotyping.
//!
//! Given primer pools (one per SNP locus), a universal probe space and a
//! redundancy `r`, select a large set of pools, one representative primer
//! each, such that every representative keeps at least `r` informative
//! probes. Large instances are split across several arrays.

pub mod datasets;
pub mod decodability;
pub mod dnaseq;
pub mod error;
pub mod graph;
pub mod instance;
pub mod oracles;
pub mod partitioner;
pub mod probespace;
pub mod report;
pub mod solvers;

pub use decodability::{informative_probes, is_strongly_r_decodable, verify_design, DesignResult, Selection, VerificationReport};
pub use dnaseq::{Base, BaseSet, DnaString};
pub use error::{Error, Result};
pub use graph::{build_graph, DegreeMode, HybridizationGraph};
pub use instance::{InstanceSpectra, Pool, PoolId, Primer, ProblemInstance, Strand};
pub use partitioner::{coverage_curve, partition, PartitionReport};
pub use probespace::{enumerate_probes, ProbeId, ProbeSpace, ProbeSpaceKind};
pub use solvers::{solve, Algorithm, SolverConfig};
