//! Generators, classical oracles and named verification suites.

pub mod gen;
pub mod oracle;
pub mod suite;
