//! File formats, scenario registry and command-line surface for `nqh-core`.

pub mod cli;
pub mod commands;
pub mod expr;
pub mod format;
pub mod report;
pub mod scenario;
