//! Rule-based reader for written car-accident reports.
//!
//! The pipeline segments a report into clauses, extracts referring
//! expressions, resolves them into a minimal set of discourse entities,
//! builds clause events, reconstructs the impact and tags the writer's
//! argumentative devices.

pub mod argumentation;
pub mod coref;
pub mod corpus;
pub mod error;
pub mod events;
pub mod knowledge;
pub mod lexeme;
pub mod mentions;
pub mod report;

pub use error::{Error, Result};
pub use knowledge::{load_knowledge, ConceptId, KnowledgeBase, Language};
pub use report::{analyze, analyze_with, render_json, AnalysisReport, AnalyzeOptions};
