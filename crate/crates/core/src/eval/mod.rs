//! Entity-level scoring of generated documents against ground truth, and
//! coverage comparison against developer-written documents.

pub mod diff;
pub mod entities;
pub mod score;

pub use diff::{
    bundled_comparison, diff_against_developer, load_comparison, summarize, ClassCounts, ComparisonRow,
    ComparisonSummary, Coverage, DiffClass, DiffReport,
};
pub use entities::{
    extract_entities, extract_entities_with, load_ground_truth, normalize_path, parse_document, EntitySets,
    ExtractOptions as EntityOptions, GroundTruth, CONSTRAINT_KEYWORDS,
};
pub use score::{score, ClassReport, EntityClass, EvalReport, Metrics};
