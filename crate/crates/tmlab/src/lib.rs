//! File formats, reports, the fixture corpus and the command line built on
//! `tmlab-core`.

pub mod cli;
pub mod corpus;
pub mod format;
pub mod report;
