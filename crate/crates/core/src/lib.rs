//! Coupling-graph extraction and power-law analysis for Java class
//! structures.
//!
//! The crate is `no_std` and needs only `alloc`. File-system access, the
//! interchange format and the command-line front end live in the `couplaw`
//! crate.
#![no_std]

extern crate alloc;

pub mod corpus;
pub mod graphs;
pub mod parse;
pub mod rng;
pub mod robustness;
pub mod stats;
pub mod synth;

pub use corpus::{ClassSummary, Corpus, CorpusError, Resolved, SourceUnit, TypeKind, Unresolved};
pub use graphs::{
    build_graphs, CouplingGraphs, CouplingType, DegreeSeries, GraphOptions, Relationship,
};
pub use parse::{parse_source, ParseError};
