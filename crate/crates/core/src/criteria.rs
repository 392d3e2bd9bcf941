//! Per-framework rules for recognizing endpoint entry files.
//!
//! Every builtin pattern is written in the dialect accepted by the `regex`
//! crate: no backreferences and no lookaround. User criteria files must stay
//! inside the same dialect.
//!
//! Only the Spring Boot and Django records come from published criteria. The
//! Jersey, Flask, Web.py and ASP.NET Core records are reconstructed from each
//! framework's routing idiom; see `docs/criteria.md`.

use std::collections::BTreeMap;

use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::error::CriteriaError;

/// Detection rules for one web framework.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameworkCriteria {
    pub name: String,
    pub language: String,
    pub suffix: String,
    pub regex: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub configuration_files: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameworkKind {
    AnnotationBased,
    ConfigurationBased,
}

/// Spring Boot mapping annotations.
pub const SPRING_BOOT_REGEX: &str = r"@(GetMapping|PostMapping|PutMapping|DeleteMapping|PatchMapping|RequestMapping|Controller|RestController)\([^)]*\)";

/// A Django `urlpatterns` table with at least one `path(...)`/`re_path(...)` entry.
pub const DJANGO_URLPATTERNS_REGEX: &str =
    r#"urlpatterns\s*=\s*\[[^\]]*(path\(['"]([^'"]+)['"],\s*([^,]+)\)|re_path\(['"]([^'"]+)['"],\s*([^,]+)\))[^\]]*\]"#;

// JAX-RS resource classes and methods.
const JERSEY_REGEX: [&str; 2] = [
    r#"@Path\s*\(\s*"[^"]*"\s*\)"#,
    r"@(GET|POST|PUT|DELETE|PATCH|HEAD|OPTIONS)\b",
];

// `@app.route(...)`, `@bp.get(...)`, `@api.route(...)` style decorators.
const FLASK_REGEX: [&str; 2] = [
    r"@\w+(\.\w+)*\.route\(",
    r"@\w+\.(get|post|put|delete|patch)\(\s*['\x22]",
];

// The `urls = (...)` tuple table that maps regex paths to handler classes.
const WEBPY_REGEX: [&str; 1] = [r"urls\s*=\s*\(\s*(r?['\x22][^'\x22]*['\x22]\s*,\s*['\x22][\w.]+['\x22]\s*,?\s*)+\)"];

const ASPNET_REGEX: [&str; 3] = [
    r"\[(Api)?Controller\]",
    r"\[Route\([^)]*\)\]",
    r"\[Http(Get|Post|Put|Delete|Patch|Head|Options)(\([^)]*\))?\]",
];

impl FrameworkCriteria {
    pub fn kind(&self) -> FrameworkKind {
        if self.configuration_files.is_some() {
            FrameworkKind::ConfigurationBased
        } else {
            FrameworkKind::AnnotationBased
        }
    }

    /// Checks the record invariants and compiles its patterns.
    pub fn compile(&self) -> Result<CompiledCriteria, CriteriaError> {
        let malformed = |field: &str, reason: String| CriteriaError::Malformed {
            record: self.name.clone(),
            field: field.to_string(),
            reason,
        };
        if self.name.trim().is_empty() {
            return Err(malformed("name", "must not be empty".into()));
        }
        if self.language.trim().is_empty() {
            return Err(malformed("language", "must not be empty".into()));
        }
        if !self.suffix.starts_with('.') || self.suffix.len() < 2 {
            return Err(malformed(
                "suffix",
                format!("{:?} must start with '.' and name an extension", self.suffix),
            ));
        }
        if self.regex.is_empty() {
            return Err(malformed("regex", "at least one pattern is required".into()));
        }
        let mut patterns = Vec::with_capacity(self.regex.len());
        for pattern in &self.regex {
            let re = Regex::new(pattern)
                .map_err(|e| malformed("regex", format!("pattern {pattern:?} does not compile: {e}")))?;
            patterns.push(re);
        }
        if let Some(files) = &self.configuration_files {
            if files.is_empty() {
                return Err(malformed(
                    "configuration_files",
                    "must not be empty when present".into(),
                ));
            }
            if let Some(bad) = files
                .iter()
                .find(|f| f.is_empty() || f.contains('/') || f.contains('\\'))
            {
                return Err(malformed(
                    "configuration_files",
                    format!("{bad:?} must be a bare file name"),
                ));
            }
        }
        Ok(CompiledCriteria {
            criteria: self.clone(),
            patterns,
        })
    }
}

/// A validated [`FrameworkCriteria`] with its patterns compiled.
#[derive(Debug, Clone)]
pub struct CompiledCriteria {
    criteria: FrameworkCriteria,
    patterns: Vec<Regex>,
}

impl CompiledCriteria {
    pub fn criteria(&self) -> &FrameworkCriteria {
        &self.criteria
    }

    pub fn name(&self) -> &str {
        &self.criteria.name
    }

    pub fn suffix(&self) -> &str {
        &self.criteria.suffix
    }

    pub fn kind(&self) -> FrameworkKind {
        self.criteria.kind()
    }

    pub fn patterns(&self) -> &[Regex] {
        &self.patterns
    }

    /// True when any pattern matches somewhere in `content`.
    pub fn matches(&self, content: &str) -> bool {
        self.patterns.iter().any(|re| re.is_match(content))
    }

    pub fn is_configuration_file(&self, basename: &str) -> bool {
        self.criteria
            .configuration_files
            .as_ref()
            .is_some_and(|files| files.iter().any(|f| f == basename))
    }
}

fn record(name: &str, language: &str, suffix: &str, regex: &[&str], config: Option<&[&str]>) -> FrameworkCriteria {
    FrameworkCriteria {
        name: name.into(),
        language: language.into(),
        suffix: suffix.into(),
        regex: regex.iter().map(|s| s.to_string()).collect(),
        configuration_files: config.map(|c| c.iter().map(|s| s.to_string()).collect()),
    }
}

/// The six builtin frameworks, in the order `auto` detection tries them.
pub fn builtin_criteria() -> Vec<FrameworkCriteria> {
    vec![
        record("spring_boot", "java", ".java", &[SPRING_BOOT_REGEX], None),
        record("jersey", "java", ".java", &JERSEY_REGEX, None),
        record("flask", "python", ".py", &FLASK_REGEX, None),
        record(
            "django",
            "python",
            ".py",
            &[DJANGO_URLPATTERNS_REGEX],
            Some(&["urls.py"]),
        ),
        record("webpy", "python", ".py", &WEBPY_REGEX, None),
        record("aspnet_core", "csharp", ".cs", &ASPNET_REGEX, None),
    ]
}

/// Parses a JSON list of criteria and merges it over the builtins.
///
/// A user record whose `name` matches a builtin replaces it in place; new
/// names are appended in document order. An empty or whitespace-only document
/// yields the builtins unchanged.
pub fn load_criteria(source: &str) -> Result<Vec<FrameworkCriteria>, CriteriaError> {
    let mut merged = builtin_criteria();
    if source.trim().is_empty() {
        return Ok(merged);
    }
    let raw: Vec<serde_json::Value> = serde_json::from_str(source).map_err(|e| CriteriaError::Parse(e.to_string()))?;
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    for (index, value) in raw.into_iter().enumerate() {
        let label = value
            .get("name")
            .and_then(|n| n.as_str())
            .map(str::to_string)
            .unwrap_or_else(|| format!("#{index}"));
        let user: FrameworkCriteria = serde_json::from_value(value).map_err(|e| CriteriaError::Malformed {
            record: label.clone(),
            field: missing_field(&e.to_string()).unwrap_or_else(|| "record".into()),
            reason: e.to_string(),
        })?;
        user.compile()?;
        if let Some(prev) = seen.insert(user.name.clone(), index) {
            log::warn!(
                "criteria record {} appears twice (#{prev} and #{index}); the later one wins",
                user.name
            );
        }
        match merged.iter_mut().find(|c| c.name == user.name) {
            Some(slot) => *slot = user,
            None => merged.push(user),
        }
    }
    Ok(merged)
}

fn missing_field(message: &str) -> Option<String> {
    let start = message.find("missing field `")? + "missing field `".len();
    let end = message[start..].find('`')?;
    Some(message[start..start + end].to_string())
}

/// Looks a framework up by name.
pub fn find_criteria<'a>(all: &'a [FrameworkCriteria], name: &str) -> Option<&'a FrameworkCriteria> {
    all.iter().find(|c| c.name == name)
}
