//! File formats, bundled catalog, reports and the command-line tool on top of
//! `hullcohom-core`.

pub mod analysis;
pub mod catalog;
pub mod cli;
pub mod format;
pub mod report;
