use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::clean::Cleaner;
use super::lang::Language;
use super::symbols::{build_symbol_map_with, resolve_imports_transitive, SymbolMap};
use crate::criteria::CompiledCriteria;
use crate::diag::Diagnostic;
use crate::error::ScanError;
use crate::scan::{read_lossy, ScanOptions, ScanResult};

/// Tokens held back for the model's reply when budgeting a context.
pub const DEFAULT_RESPONSE_RESERVE: usize = 4096;

/// Rough prompt-token cost: one token per four characters, rounded up.
pub fn estimate_tokens(text: &str) -> usize {
    text.chars().count().div_ceil(4)
}

/// One entry file and the cleaned project files it depends on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndpointContext {
    pub root: PathBuf,
    pub entry_file: PathBuf,
    pub cleaned_entry: String,
    pub related: BTreeMap<PathBuf, String>,
    /// Routing configuration files included in `related`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub configuration_files: Vec<PathBuf>,
    pub token_estimate: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<Diagnostic>,
}

impl EndpointContext {
    pub fn relative<'p>(&self, path: &'p Path) -> &'p Path {
        path.strip_prefix(&self.root).unwrap_or(path)
    }

    fn recompute_tokens(&mut self) {
        self.token_estimate =
            estimate_tokens(&self.cleaned_entry) + self.related.values().map(|t| estimate_tokens(t)).sum::<usize>();
    }
}

#[derive(Debug, Clone)]
pub struct ExtractOptions {
    /// Import hops followed from each entry file; 1 means direct imports.
    pub import_depth: usize,
    /// Maximum prompt tokens per context, if any.
    pub token_budget: Option<usize>,
    pub scan: ScanOptions,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        Self {
            import_depth: 1,
            token_budget: None,
            scan: ScanOptions::default(),
        }
    }
}

/// Builds one [`EndpointContext`] per entry file of `scan`.
pub fn build_contexts(
    scan: &ScanResult,
    criteria: &CompiledCriteria,
    opts: &ExtractOptions,
) -> Result<Vec<EndpointContext>, ScanError> {
    if scan.entry_files.is_empty() {
        return Ok(Vec::new());
    }
    let language = Language::from_name(&criteria.criteria().language);
    let symbols = build_symbol_map_with(&scan.root, language, &opts.scan)?;
    let contexts = scan
        .entry_files
        .par_iter()
        .map(|entry| build_one(scan, criteria, &symbols, entry, opts))
        .collect();
    Ok(contexts)
}

fn clean_file(path: &Path, symbols: &SymbolMap, criteria: &CompiledCriteria) -> std::io::Result<String> {
    let text = read_lossy(path)?;
    Ok(Cleaner::new(symbols.language())
        .project_imports_only(symbols, path)
        .protect(criteria)
        .clean(&text))
}

fn build_one(
    scan: &ScanResult,
    criteria: &CompiledCriteria,
    symbols: &SymbolMap,
    entry: &Path,
    opts: &ExtractOptions,
) -> EndpointContext {
    let mut ctx = EndpointContext {
        root: scan.root.clone(),
        entry_file: entry.to_path_buf(),
        cleaned_entry: String::new(),
        related: BTreeMap::new(),
        configuration_files: Vec::new(),
        token_estimate: 0,
        diagnostics: Vec::new(),
    };
    match clean_file(entry, symbols, criteria) {
        Ok(text) => ctx.cleaned_entry = text,
        Err(e) => ctx.diagnostics.push(Diagnostic::unreadable(entry, &e)),
    }

    // Hop count per related file; configuration files get 0 and are never evicted.
    let mut depth_of: BTreeMap<PathBuf, usize> = BTreeMap::new();
    for config in scan.configuration_files_for(entry) {
        depth_of.insert(config.to_path_buf(), 0);
        ctx.configuration_files.push(config.to_path_buf());
    }
    for (path, hops) in resolve_imports_transitive(entry, &scan.root, symbols, opts.import_depth.max(1)) {
        depth_of.entry(path).or_insert(hops);
    }
    depth_of.remove(entry);

    for path in depth_of.keys() {
        match clean_file(path, symbols, criteria) {
            Ok(text) => {
                ctx.related.insert(path.clone(), text);
            }
            Err(e) => ctx.diagnostics.push(Diagnostic::unreadable(path, &e)),
        }
    }
    ctx.recompute_tokens();

    if let Some(budget) = opts.token_budget {
        evict_over_budget(&mut ctx, &depth_of, budget);
    }
    ctx
}

/// Drops related files until the context fits: deeper hops first, larger
/// files before smaller ones within a hop.
fn evict_over_budget(ctx: &mut EndpointContext, depth_of: &BTreeMap<PathBuf, usize>, budget: usize) {
    if ctx.token_estimate <= budget {
        return;
    }
    let mut candidates: Vec<(usize, usize, PathBuf)> = ctx
        .related
        .iter()
        .filter(|(p, _)| depth_of.get(*p).copied().unwrap_or(1) > 0)
        .map(|(p, t)| (depth_of.get(p).copied().unwrap_or(1), estimate_tokens(t), p.clone()))
        .collect();
    // Highest hop count, then largest, first; path breaks ties.
    candidates.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)).then(a.2.cmp(&b.2)));
    for (hops, tokens, path) in candidates {
        if ctx.token_estimate <= budget {
            break;
        }
        ctx.related.remove(&path);
        ctx.token_estimate -= tokens;
        ctx.diagnostics.push(Diagnostic::new(
            Some(&path),
            format!(
                "dropped from context of {} to fit token budget {budget} (hop {hops}, ~{tokens} tokens)",
                ctx.entry_file.display()
            ),
        ));
    }
    if ctx.token_estimate > budget {
        ctx.diagnostics.push(Diagnostic::new(
            Some(&ctx.entry_file.clone()),
            format!(
                "context still exceeds token budget {budget} (~{} tokens)",
                ctx.token_estimate
            ),
        ));
    }
}

/// Writes each context as `<relative entry path with '/' → '__'>.json`.
pub fn dump_contexts(dir: &Path, contexts: &[EndpointContext]) -> std::io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for ctx in contexts {
        let rel = ctx
            .relative(&ctx.entry_file)
            .to_string_lossy()
            .replace(['/', '\\'], "__");
        let path = dir.join(format!("{rel}.json"));
        let json = serde_json::to_string_pretty(ctx).map_err(std::io::Error::other)?;
        std::fs::write(&path, json + "\n")?;
        written.push(path);
    }
    Ok(written)
}
