//! Lexical knowledge about the supported source languages: declarations,
//! module qualifiers, import statements and comment syntax.

use std::path::Path;
use std::sync::OnceLock;

use regex::Regex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Language {
    Java,
    Python,
    CSharp,
    Unknown,
}

impl Language {
    pub fn from_name(name: &str) -> Self {
        match name.to_ascii_lowercase().as_str() {
            "java" | "kotlin" => Language::Java,
            "python" | "py" => Language::Python,
            "csharp" | "c#" | "cs" => Language::CSharp,
            _ => Language::Unknown,
        }
    }

    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("java") | Some("kt") => Language::Java,
            Some("py") => Language::Python,
            Some("cs") => Language::CSharp,
            _ => Language::Unknown,
        }
    }

    pub fn suffix(self) -> Option<&'static str> {
        match self {
            Language::Java => Some(".java"),
            Language::Python => Some(".py"),
            Language::CSharp => Some(".cs"),
            Language::Unknown => None,
        }
    }

    pub fn line_comment(self) -> &'static str {
        match self {
            Language::Python => "#",
            _ => "//",
        }
    }

    pub fn has_block_comments(self) -> bool {
        self != Language::Python
    }
}

/// One import/using statement, reduced to what resolution needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImportStatement {
    /// Package, module or namespace the statement refers to.
    pub module: String,
    /// Names imported from `module`; empty for a plain module import.
    pub names: Vec<String>,
    pub wildcard: bool,
    /// Leading-dot count of a relative Python import.
    pub relative_level: usize,
}

macro_rules! lazy_regex {
    ($name:ident, $pat:expr) => {
        fn $name() -> &'static Regex {
            static RE: OnceLock<Regex> = OnceLock::new();
            RE.get_or_init(|| Regex::new($pat).expect("static pattern"))
        }
    };
}

lazy_regex!(java_package, r"(?m)^\s*package\s+([\w.]+)\s*;");
lazy_regex!(
    java_decl,
    r"(?m)^\s*(?:(?:public|protected|private|abstract|final|static|sealed|non-sealed|strictfp)\s+)*(?:class|interface|enum|record|@interface)\s+([A-Za-z_]\w*)"
);
lazy_regex!(java_import, r"^\s*import\s+(static\s+)?([\w.]+?)(\.\*)?\s*;");
lazy_regex!(
    py_def,
    r"(?m)^(?:async\s+)?def\s+([A-Za-z_]\w*)|^class\s+([A-Za-z_]\w*)|^([A-Z][A-Z0-9_]*)\s*(?::[^=\n]*)?="
);
lazy_regex!(py_import, r"^\s*import\s+(.+)$");
lazy_regex!(py_from, r"^\s*from\s+(\.*)([\w.]*)\s+import\s+(.+)$");
lazy_regex!(cs_namespace, r"(?m)^\s*namespace\s+([\w.]+)");
lazy_regex!(
    cs_decl,
    r"(?m)^\s*(?:(?:public|internal|protected|private|abstract|sealed|static|partial|readonly|file)\s+)*(?:class|interface|enum|record|struct)\s+([A-Za-z_]\w*)"
);
lazy_regex!(
    cs_using,
    r"^\s*(?:global\s+)?using\s+(static\s+)?(?:(\w+)\s*=\s*)?([\w.]+)\s*;"
);

/// Names declared at file scope (types for Java/C#, top-level classes,
/// functions and constants for Python).
pub fn declared_names(lang: Language, content: &str) -> Vec<String> {
    let mut names = Vec::new();
    match lang {
        Language::Java => {
            names.extend(java_decl().captures_iter(content).map(|c| c[1].to_string()));
        }
        Language::CSharp => {
            names.extend(cs_decl().captures_iter(content).map(|c| c[1].to_string()));
        }
        Language::Python => {
            for caps in py_def().captures_iter(content) {
                if let Some(m) = caps.get(1).or_else(|| caps.get(2)).or_else(|| caps.get(3)) {
                    names.push(m.as_str().to_string());
                }
            }
        }
        Language::Unknown => {}
    }
    let mut seen = std::collections::HashSet::new();
    names.retain(|n| seen.insert(n.clone()));
    names
}

/// The package (Java), namespace (C#) or dotted module path (Python) of a file.
pub fn module_qualifier(lang: Language, content: &str, rel_path: &Path) -> Option<String> {
    match lang {
        Language::Java => java_package().captures(content).map(|c| c[1].to_string()),
        Language::CSharp => cs_namespace().captures(content).map(|c| c[1].to_string()),
        Language::Python => python_module_path(rel_path),
        Language::Unknown => None,
    }
}

/// `app/views.py` → `app.views`, `app/__init__.py` → `app`.
pub fn python_module_path(rel_path: &Path) -> Option<String> {
    let mut parts: Vec<String> = rel_path
        .components()
        .map(|c| c.as_os_str().to_string_lossy().into_owned())
        .collect();
    let last = parts.pop()?;
    let stem = last.strip_suffix(".py")?;
    if stem != "__init__" {
        parts.push(stem.to_string());
    }
    if parts.is_empty() {
        None
    } else {
        Some(parts.join("."))
    }
}

/// Recognizes an import statement starting on `line`. Returns `None` for
/// non-import lines. Multi-line Python imports should be joined first.
pub fn parse_import(lang: Language, line: &str) -> Option<ImportStatement> {
    match lang {
        Language::Java => {
            let caps = java_import().captures(line)?;
            let is_static = caps.get(1).is_some();
            let path = caps[2].to_string();
            let wildcard = caps.get(3).is_some();
            let mut segments: Vec<&str> = path.split('.').collect();
            if is_static && !wildcard {
                // import static pkg.Class.member;
                segments.pop();
            }
            if wildcard && !is_static {
                return Some(ImportStatement {
                    module: path,
                    names: vec![],
                    wildcard: true,
                    relative_level: 0,
                });
            }
            let name = segments.pop()?.to_string();
            Some(ImportStatement {
                module: segments.join("."),
                names: vec![name],
                wildcard: false,
                relative_level: 0,
            })
        }
        Language::CSharp => {
            let caps = cs_using().captures(line)?;
            let path = caps[3].to_string();
            if caps.get(1).is_some() || caps.get(2).is_some() {
                let (module, name) = match path.rsplit_once('.') {
                    Some((m, n)) => (m.to_string(), n.to_string()),
                    None => (String::new(), path),
                };
                Some(ImportStatement {
                    module,
                    names: vec![name],
                    wildcard: false,
                    relative_level: 0,
                })
            } else {
                Some(ImportStatement {
                    module: path,
                    names: vec![],
                    wildcard: true,
                    relative_level: 0,
                })
            }
        }
        Language::Python => {
            if let Some(caps) = py_from().captures(line) {
                let level = caps[1].len();
                let module = caps[2].to_string();
                let rest = caps[3].trim().trim_start_matches('(').trim_end_matches(')');
                if rest.trim() == "*" {
                    return Some(ImportStatement {
                        module,
                        names: vec![],
                        wildcard: true,
                        relative_level: level,
                    });
                }
                let names = rest
                    .split(',')
                    .filter_map(|item| item.split_whitespace().next())
                    .map(|n| n.trim_matches(|c: char| c == '(' || c == ')').to_string())
                    .filter(|n| !n.is_empty() && n != "\\")
                    .collect();
                return Some(ImportStatement {
                    module,
                    names,
                    wildcard: false,
                    relative_level: level,
                });
            }
            let caps = py_import().captures(line)?;
            let first = caps[1].split(',').next()?.split_whitespace().next()?.to_string();
            Some(ImportStatement {
                module: first,
                names: vec![],
                wildcard: false,
                relative_level: 0,
            })
        }
        Language::Unknown => None,
    }
}

/// Collects every import statement in `content`, joining parenthesized
/// multi-line Python imports.
pub fn parse_imports(lang: Language, content: &str) -> Vec<ImportStatement> {
    import_spans(lang, content)
        .into_iter()
        .map(|span| span.statement)
        .collect()
}

/// An import statement and the (inclusive) line range it occupies.
#[derive(Debug, Clone)]
pub struct ImportSpan {
    pub first_line: usize,
    pub last_line: usize,
    pub statement: ImportStatement,
}

pub fn import_spans(lang: Language, content: &str) -> Vec<ImportSpan> {
    let lines: Vec<&str> = content.lines().collect();
    let mut spans = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let line = lines[i];
        let mut last = i;
        let mut joined = line.to_string();
        if lang == Language::Python && is_python_import_start(line) {
            if line.contains('(') && !line.contains(')') {
                while last + 1 < lines.len() {
                    last += 1;
                    joined.push(' ');
                    joined.push_str(lines[last].trim());
                    if lines[last].contains(')') {
                        break;
                    }
                }
            } else {
                while joined.trim_end().ends_with('\\') && last + 1 < lines.len() {
                    last += 1;
                    joined = joined.trim_end().trim_end_matches('\\').to_string();
                    joined.push(' ');
                    joined.push_str(lines[last].trim());
                }
            }
        }
        if let Some(statement) = parse_import(lang, &joined) {
            spans.push(ImportSpan {
                first_line: i,
                last_line: last,
                statement,
            });
            i = last + 1;
        } else {
            i += 1;
        }
    }
    spans
}

fn is_python_import_start(line: &str) -> bool {
    let t = line.trim_start();
    t.starts_with("import ") || t.starts_with("from ")
}
