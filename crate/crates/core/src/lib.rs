//! Malware threat-intelligence knowledge graphs.
//!
//! The engine loads and validates ontology schemas, ingests brat-annotated
//! threat reports into a provenance-tracked quad store, materializes
//! implicit facts by forward chaining, and answers competency questions
//! through a small SPARQL-subset query engine. N-Quads import/export keeps
//! graphs on disk in a deterministic, diffable form.

pub mod ingest;
pub mod nquads;
pub mod ontology;
pub mod quad;
pub mod query;
pub mod reasoner;
pub mod store;
pub mod term;
#[cfg(test)]
pub(crate) mod testutil;
pub mod vocab;

pub use quad::{Provenance, Quad};
pub use store::{QuadPattern, StatsReport, Store};
pub use term::{Iri, Literal, Term};
