//! File formats, renderings, parallel audits and the command-line driver
//! for [`asmgrid_core`].

pub mod audit;
pub mod cli;
pub mod config;
pub mod formats;
pub mod render;
pub mod report;

pub use asmgrid_core as core;
