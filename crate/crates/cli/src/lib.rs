//! File formats, commands and stored reproductions behind the `maxout` binary.

pub mod commands;
pub mod format;
pub mod report;
pub mod reproduce;
