//! File formats, experiment reports and the `cloudqc` command line on top
//! of [`cloudqc_core`].

pub mod cli;
pub mod formats;
pub mod report;
