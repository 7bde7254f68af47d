//! Scenario files, sweeps and figure recipes for the `cascade-fading` tool.

pub mod config;
pub mod eval;
pub mod model;
pub mod recipes;
pub mod run;
