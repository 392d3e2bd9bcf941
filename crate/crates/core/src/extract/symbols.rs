//! Type/function-name to file mapping and import resolution.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::lang::{self, ImportStatement, Language};
use crate::diag::Diagnostic;
use crate::error::ScanError;
use crate::scan::{read_lossy, walk_files_with, ScanOptions};

#[derive(Debug, Clone, Default, Serialize)]
struct FileInfo {
    qualifier: Option<String>,
    names: Vec<String>,
}

/// Maps declared names to the project file that declares them.
#[derive(Debug, Clone, Serialize)]
pub struct SymbolMap {
    root: PathBuf,
    #[serde(skip)]
    language: Language,
    symbols: BTreeMap<String, PathBuf>,
    #[serde(skip)]
    files: BTreeMap<PathBuf, FileInfo>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Builds the symbol map for every `language` source file under `root`.
///
/// Files are visited in lexicographic order, so when two files declare the
/// same name the later file wins and a diagnostic records the collision.
pub fn build_symbol_map(root: &Path, language: Language) -> Result<SymbolMap, ScanError> {
    build_symbol_map_with(root, language, &ScanOptions::default())
}

pub fn build_symbol_map_with(root: &Path, language: Language, opts: &ScanOptions) -> Result<SymbolMap, ScanError> {
    let root = crate::scan::canonical_root(root)?;
    let mut map = SymbolMap {
        root: root.clone(),
        language,
        symbols: BTreeMap::new(),
        files: BTreeMap::new(),
        diagnostics: Vec::new(),
    };
    let Some(suffix) = language.suffix() else {
        return Ok(map);
    };
    for file in walk_files_with(&root, suffix, opts)? {
        let content = match read_lossy(&file) {
            Ok(c) => c,
            Err(e) => {
                map.diagnostics.push(Diagnostic::unreadable(&file, &e));
                continue;
            }
        };
        let rel = file.strip_prefix(&root).unwrap_or(&file).to_path_buf();
        let qualifier = lang::module_qualifier(language, &content, &rel);
        let names = lang::declared_names(language, &content);
        for name in &names {
            if let Some(previous) = map.symbols.insert(name.clone(), file.clone()) {
                if previous != file {
                    map.diagnostics.push(Diagnostic::new(
                        Some(&file),
                        format!("`{name}` is also declared in {}; using this file", previous.display()),
                    ));
                }
            }
        }
        map.files.insert(file, FileInfo { qualifier, names });
    }
    Ok(map)
}

impl SymbolMap {
    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn language(&self) -> Language {
        self.language
    }

    pub fn get(&self, name: &str) -> Option<&PathBuf> {
        self.symbols.get(name)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &PathBuf)> {
        self.symbols.iter()
    }

    pub fn qualifier_of(&self, file: &Path) -> Option<&str> {
        self.files.get(file).and_then(|f| f.qualifier.as_deref())
    }

    pub fn declares(&self, file: &Path, name: &str) -> bool {
        self.files.get(file).is_some_and(|f| f.names.iter().any(|n| n == name))
    }

    fn qualifier_matches(&self, qualifier: &str, module: &str) -> bool {
        if module.is_empty() {
            return false;
        }
        match self.language {
            // Python modules are addressed relative to whichever source root
            // the project uses, so match on a dotted suffix.
            Language::Python => qualifier == module || qualifier.ends_with(&format!(".{module}")),
            _ => qualifier == module,
        }
    }

    /// Files whose package/namespace/module is `module`.
    pub fn files_in_module(&self, module: &str) -> Vec<PathBuf> {
        self.files
            .iter()
            .filter(|(_, info)| {
                info.qualifier
                    .as_deref()
                    .is_some_and(|q| self.qualifier_matches(q, module))
            })
            .map(|(p, _)| p.clone())
            .collect()
    }

    fn absolute_module(&self, stmt: &ImportStatement, importing_file: &Path) -> String {
        if stmt.relative_level == 0 {
            return stmt.module.clone();
        }
        let rel = importing_file.strip_prefix(&self.root).unwrap_or(importing_file);
        let mut package: Vec<String> = rel
            .parent()
            .map(|p| {
                p.components()
                    .map(|c| c.as_os_str().to_string_lossy().into_owned())
                    .collect()
            })
            .unwrap_or_default();
        for _ in 1..stmt.relative_level {
            package.pop();
        }
        if !stmt.module.is_empty() {
            package.push(stmt.module.clone());
        }
        package.join(".")
    }

    /// Project files referenced by one import statement of `importing_file`.
    pub fn resolve_statement(&self, stmt: &ImportStatement, importing_file: &Path) -> Vec<PathBuf> {
        let module = self.absolute_module(stmt, importing_file);
        let mut out = BTreeSet::new();
        if stmt.wildcard || stmt.names.is_empty() {
            out.extend(self.files_in_module(&module));
        }
        for name in &stmt.names {
            let in_module: Vec<PathBuf> = self
                .files_in_module(&module)
                .into_iter()
                .filter(|f| self.declares(f, name))
                .collect();
            if !in_module.is_empty() {
                out.extend(in_module);
                continue;
            }
            let submodule = if module.is_empty() {
                name.clone()
            } else {
                format!("{module}.{name}")
            };
            let as_module = self.files_in_module(&submodule);
            if !as_module.is_empty() {
                out.extend(as_module);
                continue;
            }
            if let Some(file) = self.symbols.get(name) {
                out.insert(file.clone());
            }
        }
        out.into_iter().filter(|p| p.starts_with(&self.root)).collect()
    }

    /// True when the statement resolves to at least one project file.
    pub fn is_project_import(&self, stmt: &ImportStatement, importing_file: &Path) -> bool {
        !self.resolve_statement(stmt, importing_file).is_empty()
    }
}

/// Direct project-local imports of `entry_file`, sorted and without the
/// entry itself.
pub fn resolve_imports(entry_file: &Path, root: &Path, symbols: &SymbolMap) -> Vec<PathBuf> {
    resolve_imports_transitive(entry_file, root, symbols, 1)
        .into_keys()
        .collect()
}

/// Breadth-first import closure up to `depth` hops. Values are the hop count
/// at which each file was first reached.
pub fn resolve_imports_transitive(
    entry_file: &Path,
    root: &Path,
    symbols: &SymbolMap,
    depth: usize,
) -> BTreeMap<PathBuf, usize> {
    let root = std::fs::canonicalize(root).unwrap_or_else(|_| root.to_path_buf());
    let entry = std::fs::canonicalize(entry_file).unwrap_or_else(|_| entry_file.to_path_buf());
    let mut reached: BTreeMap<PathBuf, usize> = BTreeMap::new();
    let mut queue = VecDeque::from([(entry.clone(), 0usize)]);
    let mut visited = BTreeSet::from([entry.clone()]);
    while let Some((file, hops)) = queue.pop_front() {
        if hops >= depth {
            continue;
        }
        let Ok(content) = read_lossy(&file) else { continue };
        for stmt in lang::parse_imports(symbols.language(), &content) {
            for target in symbols.resolve_statement(&stmt, &file) {
                if !target.starts_with(&root) || target == entry {
                    continue;
                }
                if visited.insert(target.clone()) {
                    reached.insert(target.clone(), hops + 1);
                    queue.push_back((target, hops + 1));
                }
            }
        }
    }
    reached
}
