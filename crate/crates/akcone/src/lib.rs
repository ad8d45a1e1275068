//! Command-line front end, table cache and property suites for `akcone-core`.

pub mod cache;
pub mod cli;
pub mod json;
pub mod report;
pub mod verify;
