//! Experiment configuration, command entry points and serialization for the
//! `rrh-select` binary. Every command is a pure function of its resolved
//! configuration: rerunning one reproduces the CSV body byte for byte.

pub mod commands;
pub mod config;
pub mod report;
