//! Endpoint entry-file discovery.
//!
//! Annotation-based frameworks: every suffix-matching file whose content
//! matches any criteria pattern is an entry file. Configuration-based
//! frameworks: files named in `configuration_files` whose content matches are
//! routing tables, and the handler references inside their `urlpatterns`
//! blocks are resolved to the source files that become the entry files.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use rayon::prelude::*;
use regex::Regex;
use serde::{Deserialize, Serialize};
use walkdir::WalkDir;

use crate::criteria::{CompiledCriteria, FrameworkKind};
use crate::diag::Diagnostic;
use crate::error::ScanError;
use crate::extract::lang::{self, Language};
use crate::extract::symbols::{build_symbol_map_with, SymbolMap};

/// Directory names skipped unless `ScanOptions::skip_default_dirs` is off.
pub const DEFAULT_SKIPPED_DIRS: [&str; 8] = [
    ".git",
    "node_modules",
    "target",
    "build",
    "venv",
    "__pycache__",
    "bin",
    "obj",
];

#[derive(Debug, Clone)]
pub struct ScanOptions {
    /// Skip hidden directories and [`DEFAULT_SKIPPED_DIRS`].
    pub skip_default_dirs: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            skip_default_dirs: true,
        }
    }
}

/// A handler reference found in a routing configuration file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteReference {
    pub configuration_file: PathBuf,
    pub handler: String,
    pub resolved: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanResult {
    pub framework: String,
    pub root: PathBuf,
    pub entry_files: Vec<PathBuf>,
    pub configuration_files_found: Vec<PathBuf>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub routes: Vec<RouteReference>,
    #[serde(default)]
    pub diagnostics: Vec<Diagnostic>,
}

impl ScanResult {
    /// Configuration files whose routes resolved to `entry`.
    pub fn configuration_files_for(&self, entry: &Path) -> Vec<&Path> {
        let set: BTreeSet<&Path> = self
            .routes
            .iter()
            .filter(|r| r.resolved.as_deref() == Some(entry))
            .map(|r| r.configuration_file.as_path())
            .collect();
        set.into_iter().collect()
    }
}

pub(crate) fn canonical_root(root: &Path) -> Result<PathBuf, ScanError> {
    match std::fs::canonicalize(root) {
        Ok(p) if p.is_dir() => Ok(p),
        _ => Err(ScanError::RootNotFound(root.to_path_buf())),
    }
}

/// Reads a file as text, replacing invalid UTF-8 sequences.
pub fn read_lossy(path: &Path) -> std::io::Result<String> {
    let bytes = std::fs::read(path)?;
    Ok(match String::from_utf8(bytes) {
        Ok(s) => s,
        Err(e) => String::from_utf8_lossy(e.as_bytes()).into_owned(),
    })
}

fn is_skipped_dir(name: &str) -> bool {
    name.starts_with('.') || DEFAULT_SKIPPED_DIRS.contains(&name)
}

/// All regular files under `root` whose names end with `suffix`, sorted.
/// Symbolic links are never followed.
pub fn walk_files(root: &Path, suffix: &str) -> Result<Vec<PathBuf>, ScanError> {
    walk_files_with(root, suffix, &ScanOptions::default())
}

pub fn walk_files_with(root: &Path, suffix: &str, opts: &ScanOptions) -> Result<Vec<PathBuf>, ScanError> {
    let root = canonical_root(root)?;
    let mut files: Vec<PathBuf> = WalkDir::new(&root)
        .follow_links(false)
        .into_iter()
        .filter_entry(|e| {
            e.depth() == 0
                || !opts.skip_default_dirs
                || !e.file_type().is_dir()
                || !is_skipped_dir(&e.file_name().to_string_lossy())
        })
        .filter_map(Result::ok)
        .filter(|e| e.file_type().is_file() && e.file_name().to_string_lossy().ends_with(suffix))
        .map(|e| e.into_path())
        .collect();
    files.sort();
    Ok(files)
}

fn read_all(files: &[PathBuf]) -> Vec<(PathBuf, std::io::Result<String>)> {
    files.par_iter().map(|f| (f.clone(), read_lossy(f))).collect()
}

/// Finds the endpoint entry files of `root` for one framework.
pub fn identify_entry_files(root: &Path, criteria: &CompiledCriteria) -> Result<ScanResult, ScanError> {
    identify_entry_files_with(root, criteria, &ScanOptions::default())
}

pub fn identify_entry_files_with(
    root: &Path,
    criteria: &CompiledCriteria,
    opts: &ScanOptions,
) -> Result<ScanResult, ScanError> {
    let root = canonical_root(root)?;
    let files = walk_files_with(&root, criteria.suffix(), opts)?;
    let mut result = ScanResult {
        framework: criteria.name().to_string(),
        root: root.clone(),
        entry_files: Vec::new(),
        configuration_files_found: Vec::new(),
        routes: Vec::new(),
        diagnostics: Vec::new(),
    };
    let contents = read_all(&files);

    match criteria.kind() {
        FrameworkKind::AnnotationBased => {
            for (path, content) in contents {
                match content {
                    Ok(text) if criteria.matches(&text) => result.entry_files.push(path),
                    Ok(_) => {}
                    Err(e) => result.diagnostics.push(Diagnostic::unreadable(&path, &e)),
                }
            }
        }
        FrameworkKind::ConfigurationBased => {
            let language = Language::from_name(&criteria.criteria().language);
            let symbols = build_symbol_map_with(&root, language, opts)?;
            let mut entries = BTreeSet::new();
            for (path, content) in contents {
                let basename = path
                    .file_name()
                    .map(|n| n.to_string_lossy().into_owned())
                    .unwrap_or_default();
                if !criteria.is_configuration_file(&basename) {
                    continue;
                }
                let text = match content {
                    Ok(t) => t,
                    Err(e) => {
                        result.diagnostics.push(Diagnostic::unreadable(&path, &e));
                        continue;
                    }
                };
                if !criteria.matches(&text) {
                    continue;
                }
                result.configuration_files_found.push(path.clone());
                for handler in handler_references(criteria, &text) {
                    let resolved = resolve_handler(&handler, &path, &text, &symbols);
                    match &resolved {
                        Some(file) if file.to_string_lossy().ends_with(criteria.suffix()) => {
                            entries.insert(file.clone());
                        }
                        Some(_) => {}
                        None => result.diagnostics.push(Diagnostic::new(
                            Some(&path),
                            format!("route handler `{handler}` could not be resolved to a project file"),
                        )),
                    }
                    result.routes.push(RouteReference {
                        configuration_file: path.clone(),
                        handler,
                        resolved,
                    });
                }
            }
            result.entry_files = entries.into_iter().collect();
        }
    }
    Ok(result)
}

fn route_entry_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(r#"(?:re_)?path\(\s*r?['"][^'"]*['"]\s*,\s*([A-Za-z_][\w.]*)"#).expect("static pattern")
    })
}

/// Dotted handler references inside every block the criteria patterns match.
/// `include(...)` entries point at other routing files and are skipped.
pub fn handler_references(criteria: &CompiledCriteria, text: &str) -> Vec<String> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for re in criteria.patterns() {
        for block in re.find_iter(text) {
            for caps in route_entry_regex().captures_iter(block.as_str()) {
                let handler = caps[1].trim_end_matches(".as_view").to_string();
                if handler == "include" {
                    continue;
                }
                if seen.insert(handler.clone()) {
                    out.push(handler);
                }
            }
        }
    }
    out
}

fn resolve_handler(handler: &str, config_file: &Path, config_text: &str, symbols: &SymbolMap) -> Option<PathBuf> {
    let mut parts: Vec<&str> = handler.split('.').collect();
    let name = parts.pop()?;
    let declaring = |files: Vec<PathBuf>| -> Option<PathBuf> { files.into_iter().find(|f| symbols.declares(f, name)) };

    let imports = lang::parse_imports(symbols.language(), config_text);
    // The first segment (or the bare name) usually comes from an import in
    // the routing file: `from . import views` / `from .views import home`.
    let head = parts.first().copied().unwrap_or(name);
    for stmt in &imports {
        if stmt.names.iter().any(|n| n == head) {
            let narrowed = crate::extract::lang::ImportStatement {
                names: vec![head.to_string()],
                ..stmt.clone()
            };
            if let Some(found) = declaring(symbols.resolve_statement(&narrowed, config_file)) {
                return Some(found);
            }
        }
    }
    if !parts.is_empty() {
        let module = parts.join(".");
        if let Some(found) = declaring(symbols.files_in_module(&module)) {
            return Some(found);
        }
        // Sibling module of the routing file.
        if let Some(q) = symbols.qualifier_of(config_file) {
            if let Some((package, _)) = q.rsplit_once('.') {
                if let Some(found) = declaring(symbols.files_in_module(&format!("{package}.{module}"))) {
                    return Some(found);
                }
            }
        }
    }
    symbols.get(name).cloned()
}
