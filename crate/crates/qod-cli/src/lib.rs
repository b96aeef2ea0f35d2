//! File formats and report rendering for the optical knapsack CLI.

pub mod device;
pub mod instance;
pub mod report;
