//! Command-line front end: JSON in, JSON out, and the verification suites.

pub mod commands;
pub mod config;
pub mod output;
pub mod suites;
