//! File formats, scenario configuration and command implementations for the
//! `mmv2v` tool. The numerics live in `mmv2v-core`.

pub mod commands;
pub mod config;
pub mod io;
pub mod report;
