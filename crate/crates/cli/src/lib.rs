//! Fixture schema and verification suites behind the `modact` binary.
//!
//! Exposed as a library so integration tests can resolve fixtures
//! directly and cross-check them against programmatic constructions.

pub mod fixture;
pub mod suites;
