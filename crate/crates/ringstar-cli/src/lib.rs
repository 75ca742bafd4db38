//! Parsing and command dispatch for the `ringstar` binary.

pub mod commands;
pub mod error;
pub mod expr;
pub mod ring_syntax;
