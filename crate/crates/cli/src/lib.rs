//! Command-line front end for corona quantum-walk analysis: graph-spec
//! grammar, edge-list files and deterministic reports.

pub mod commands;
pub mod config;
pub mod edgelist;
pub mod report;
pub mod spec;

pub use commands::run;
