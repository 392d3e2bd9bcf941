//! Dependency closure, cleaning and packaging of endpoint entry files.

pub mod clean;
pub mod context;
pub mod lang;
pub mod symbols;

pub use clean::{clean_code, Cleaner};
pub use context::{build_contexts, dump_contexts, estimate_tokens, EndpointContext, ExtractOptions};
pub use lang::Language;
pub use symbols::{build_symbol_map, resolve_imports, resolve_imports_transitive, SymbolMap};
