//! Experiment harness around the `xorsat` crate: instance generation, exact
//! solvers, DQI and QAOA evaluation, threshold tables, landscape scans and the
//! acceptance self-test.

pub mod args;
pub mod commands;
pub mod output;
pub mod selftest;
