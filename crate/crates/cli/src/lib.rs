//! Library surface of the congruence-forge command-line tool: the product
//! spec DSL (parser and canonical printer) and settings resolution.  The
//! binary in `main.rs` wires these to the engine; integration tests use
//! them directly.

pub mod config;
pub mod dsl;
