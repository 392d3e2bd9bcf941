//! Source-driven OpenAPI 3.1.1 generation for REST API projects.
//!
//! The pipeline finds endpoint entry files with per-framework criteria,
//! packages each with the project files it imports, asks a chat model three
//! narrowing questions (endpoints; parameters and responses; parameter
//! constraints) and assembles the answers into a validated document. The
//! `eval` module scores documents against ground truth.

pub mod config;
pub mod criteria;
pub mod diag;
pub mod error;
pub mod eval;
pub mod extract;
pub mod generate;
pub mod llm;
pub mod oas;
pub mod scan;

pub use generate::{generate, GenerateOutcome, RunConfig};
