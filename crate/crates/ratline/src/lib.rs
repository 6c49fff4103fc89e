//! Oracles, error reports, file formats and the command line driver built on
//! [`ratline_core`].

pub use ratline_core as core;

pub mod cli;
mod error;
pub mod io;
pub mod oracle;
pub mod report;
pub mod testfn;

pub use error::HarnessError;
