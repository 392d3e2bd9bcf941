//! End-to-end generation: scan, extract, interrogate, assemble.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::criteria::{builtin_criteria, find_criteria, load_criteria, CompiledCriteria, FrameworkCriteria};
use crate::diag::Diagnostic;
use crate::error::GenerateError;
use crate::eval::{extract_entities, ClassCounts};
use crate::extract::{build_contexts, dump_contexts, estimate_tokens, ExtractOptions};
use crate::llm::prompts::stage_c_prompt;
use crate::llm::{run_pipeline, ChatProvider, ProviderConfig};
use crate::oas::{assemble, validate_document, Info, OasDocument};
use crate::scan::{identify_entry_files_with, ScanOptions, ScanResult};

pub const AUTO_FRAMEWORK: &str = "auto";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub project_root: PathBuf,
    /// Framework name, or `auto` to take the first with an entry file.
    pub framework: String,
    /// Extra criteria merged over the builtins.
    pub criteria_file: Option<PathBuf>,
    pub provider: ProviderConfig,
    pub import_depth: usize,
    pub dump_contexts: Option<PathBuf>,
    pub title: Option<String>,
    pub api_version: String,
}

impl RunConfig {
    pub fn new(project_root: impl Into<PathBuf>) -> Self {
        Self {
            project_root: project_root.into(),
            framework: AUTO_FRAMEWORK.into(),
            criteria_file: None,
            provider: ProviderConfig::default(),
            import_depth: 1,
            dump_contexts: None,
            title: None,
            api_version: "1.0.0".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerateOutcome {
    pub document: OasDocument,
    /// Framework used, or `None` when no framework matched anything.
    pub framework: Option<String>,
    pub entry_files: Vec<PathBuf>,
    pub counts: ClassCounts,
    pub diagnostics: Vec<Diagnostic>,
    /// Meta-schema and structural problems; empty for a valid document.
    pub validation_problems: Vec<String>,
}

pub fn criteria_for(cfg: &RunConfig) -> Result<Vec<FrameworkCriteria>, GenerateError> {
    match &cfg.criteria_file {
        None => Ok(builtin_criteria()),
        Some(path) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| GenerateError::Io(format!("{}: {e}", path.display())))?;
            load_criteria(&text).map_err(|e| GenerateError::Scan(e.into()))
        }
    }
}

/// Scans with the requested framework, or with each candidate in order
/// until one yields an entry file.
pub fn scan_project(cfg: &RunConfig) -> Result<Option<(CompiledCriteria, ScanResult)>, GenerateError> {
    let all = criteria_for(cfg)?;
    let opts = ScanOptions::default();
    if cfg.framework != AUTO_FRAMEWORK {
        let c = find_criteria(&all, &cfg.framework)
            .ok_or_else(|| crate::error::ScanError::UnknownFramework(cfg.framework.clone()))?
            .compile()
            .map_err(crate::error::ScanError::from)?;
        let scan = identify_entry_files_with(&cfg.project_root, &c, &opts)?;
        return Ok(Some((c, scan)));
    }
    for criteria in &all {
        let c = criteria.compile().map_err(crate::error::ScanError::from)?;
        let scan = identify_entry_files_with(&cfg.project_root, &c, &opts)?;
        if !scan.entry_files.is_empty() {
            return Ok(Some((c, scan)));
        }
    }
    // Still fail on a missing root even when nothing matched.
    crate::scan::canonical_root(&cfg.project_root)?;
    Ok(None)
}

fn prompt_overhead() -> usize {
    estimate_tokens(&stage_c_prompt("", "parameter_name", "handlerName (GET /some/path)")) + 64
}

fn default_title(root: &Path) -> String {
    std::fs::canonicalize(root)
        .ok()
        .and_then(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()))
        .unwrap_or_else(|| "API".into())
}

pub fn generate(cfg: &RunConfig, provider: &dyn ChatProvider) -> Result<GenerateOutcome, GenerateError> {
    cfg.provider.validate().map_err(GenerateError::Config)?;
    if cfg.import_depth == 0 {
        return Err(GenerateError::Config("import depth must be at least 1".into()));
    }
    let info = Info {
        title: cfg.title.clone().unwrap_or_else(|| default_title(&cfg.project_root)),
        version: cfg.api_version.clone(),
        description: None,
    };
    let mut diagnostics = Vec::new();

    let Some((criteria, scan)) = scan_project(cfg)? else {
        diagnostics.push(Diagnostic::new(
            Some(&cfg.project_root),
            "no endpoint entry files found for any framework",
        ));
        let document = OasDocument::new(info);
        let validation_problems = validate_document(&document.to_value());
        return Ok(GenerateOutcome {
            document,
            framework: None,
            entry_files: Vec::new(),
            counts: ClassCounts::default(),
            diagnostics,
            validation_problems,
        });
    };
    diagnostics.extend(scan.diagnostics.iter().cloned());

    let opts = ExtractOptions {
        import_depth: cfg.import_depth,
        token_budget: Some(cfg.provider.token_budget().saturating_sub(prompt_overhead())),
        scan: ScanOptions::default(),
    };
    let contexts = build_contexts(&scan, &criteria, &opts)?;
    if let Some(dir) = &cfg.dump_contexts {
        dump_contexts(dir, &contexts).map_err(|e| GenerateError::Io(format!("{}: {e}", dir.display())))?;
    }

    let extraction = run_pipeline(&contexts, provider, &cfg.provider)?;
    diagnostics.extend(extraction.diagnostics);
    let assembly = assemble(&extraction.endpoints, info)?;
    diagnostics.extend(assembly.diagnostics);

    let value = assembly.document.to_value();
    let validation_problems = validate_document(&value);
    Ok(GenerateOutcome {
        counts: ClassCounts::of(&extract_entities(&value)),
        document: assembly.document,
        framework: Some(criteria.name().to_string()),
        entry_files: scan.entry_files,
        diagnostics,
        validation_problems,
    })
}
