//! File formats, the fixture corpus, reports and the command
//! implementations behind the `acyc` binary.
//!
//! - [`formats`]: JSON input files (complexes, actions, mirrored complexes,
//!   groups) and their loaders.
//! - [`corpus`]: generators for the shipped fixtures.
//! - [`report`]: report payloads, provenance and text rendering.
//! - [`commands`]: one function per CLI command, and exit statuses.

#![forbid(unsafe_code)]

pub mod commands;
pub mod corpus;
pub mod formats;
pub mod report;
