//! Library side of the `paracons` command: structure files, reports and the
//! built-in reproduction checklist.

pub mod analysis;
pub mod report;
pub mod structure;
pub mod reproduce;
pub mod app;
