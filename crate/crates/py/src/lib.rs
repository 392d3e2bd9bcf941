//! Python bindings: `import oasgen`.
//!
//! Structured results cross the boundary as JSON and come back as plain
//! dicts and lists.

use std::path::PathBuf;

use oasgen_core::config::{resolve, Settings};
use oasgen_core::criteria::builtin_criteria;
use oasgen_core::error::GenerateError;
use oasgen_core::eval::{
    bundled_comparison, diff_against_developer, extract_entities_with, load_ground_truth, parse_document, score,
    summarize, EntityOptions,
};
use oasgen_core::generate::scan_project;
use oasgen_core::llm::{ChatProvider, FixtureProvider, HttpProvider, ScriptedProvider};
use oasgen_core::oas::{to_json, to_yaml, validate_document};
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use serde::Serialize;
use serde_json::json;

create_exception!(oasgen, OasgenError, PyException, "Generation or evaluation failure.");

fn fail(category: &str, message: impl std::fmt::Display) -> PyErr {
    OasgenError::new_err(format!("[{category}] {message}"))
}

fn gen_err(e: GenerateError) -> PyErr {
    fail(e.category(), e.detail())
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| fail("io", e))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Names of the builtin frameworks, in auto-detection order.
#[pyfunction]
fn frameworks() -> Vec<String> {
    builtin_criteria().into_iter().map(|c| c.name).collect()
}

/// Entry files and configuration files of a project.
#[pyfunction]
#[pyo3(signature = (root, framework = None, criteria = None))]
fn scan<'py>(
    py: Python<'py>,
    root: PathBuf,
    framework: Option<String>,
    criteria: Option<PathBuf>,
) -> PyResult<Bound<'py, PyAny>> {
    let flags = Settings {
        framework,
        criteria_file: criteria,
        ..Settings::default()
    };
    let cfg = resolve(&root, flags, Settings::default()).map_err(gen_err)?;
    let found = py.detach(|| scan_project(&cfg)).map_err(gen_err)?;
    let value = match found {
        None => json!({"framework": null, "entry_files": [], "configuration_files": []}),
        Some((_, r)) => {
            let rel = |p: &PathBuf| {
                p.strip_prefix(&r.root)
                    .unwrap_or(p)
                    .to_string_lossy()
                    .replace('\\', "/")
            };
            json!({
                "framework": r.framework,
                "entry_files": r.entry_files.iter().map(rel).collect::<Vec<_>>(),
                "configuration_files": r.configuration_files_found.iter().map(rel).collect::<Vec<_>>(),
            })
        }
    };
    to_py(py, &value)
}

/// Generates an OpenAPI document for the project at `root`.
///
/// Replies come from recorded `fixtures`, from a reply `script` (JSON text),
/// or, with neither, from the configured OpenAI-compatible endpoint.
#[pyfunction]
#[pyo3(signature = (root, *, fixtures = None, script = None, framework = None, title = None, model = None, endpoint_url = None, yaml = false))]
#[allow(clippy::too_many_arguments)]
fn generate<'py>(
    py: Python<'py>,
    root: PathBuf,
    fixtures: Option<PathBuf>,
    script: Option<String>,
    framework: Option<String>,
    title: Option<String>,
    model: Option<String>,
    endpoint_url: Option<String>,
    yaml: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let flags = Settings {
        framework,
        title,
        model,
        endpoint_url,
        ..Settings::default()
    };
    let cfg = resolve(&root, flags, Settings::from_env().map_err(gen_err)?).map_err(gen_err)?;
    let provider: Box<dyn ChatProvider> = match (fixtures, script) {
        (Some(_), Some(_)) => return Err(fail("config", "pass either fixtures or script, not both")),
        (Some(dir), None) => {
            if !dir.is_dir() {
                return Err(fail(
                    "config",
                    format!("fixture directory {} does not exist", dir.display()),
                ));
            }
            Box::new(FixtureProvider::new(dir))
        }
        (None, Some(text)) => Box::new(ScriptedProvider::from_json(&text).map_err(|e| fail("provider", e))?),
        (None, None) => Box::new(HttpProvider::from_config(&cfg.provider).map_err(|e| fail("provider", e))?),
    };
    let outcome = py.detach(|| oasgen_core::generate(&cfg, &*provider)).map_err(gen_err)?;
    let text = if yaml {
        to_yaml(&outcome.document)
    } else {
        to_json(&outcome.document)
    };
    let value = json!({
        "document": outcome.document.to_value(),
        "text": text,
        "framework": outcome.framework,
        "entry_files": outcome.entry_files,
        "counts": outcome.counts,
        "diagnostics": outcome.diagnostics,
        "validation_problems": outcome.validation_problems,
    });
    to_py(py, &value)
}

/// OAS 3.1 problems of a JSON or YAML document; empty when valid.
#[pyfunction]
fn validate(document: &str) -> PyResult<Vec<String>> {
    let doc = parse_document(document, "document").map_err(|e| fail("input", e))?;
    Ok(validate_document(&doc))
}

/// Precision, recall and F1 per entity class against a ground-truth file.
#[pyfunction]
#[pyo3(signature = (document, truth, required_as_constraint = true))]
fn evaluate<'py>(
    py: Python<'py>,
    document: &str,
    truth: &str,
    required_as_constraint: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let doc = parse_document(document, "document").map_err(|e| fail("input", e))?;
    let identified = extract_entities_with(&doc, EntityOptions { required_as_constraint });
    let mut truth = load_ground_truth(truth).map_err(|e| fail("input", e))?;
    if !required_as_constraint {
        truth
            .parameter_constraints
            .retain(|(_, _, _, keyword, _)| keyword != "required");
    }
    to_py(py, &score(&identified, &truth))
}

/// Entities present in only one of a generated and a developer document.
#[pyfunction]
fn diff<'py>(py: Python<'py>, generated: &str, developer: &str) -> PyResult<Bound<'py, PyAny>> {
    let opts = EntityOptions::default();
    let g = parse_document(generated, "generated document").map_err(|e| fail("input", e))?;
    let d = parse_document(developer, "developer document").map_err(|e| fail("input", e))?;
    let report = diff_against_developer(&extract_entities_with(&g, opts), &extract_entities_with(&d, opts));
    to_py(py, &report)
}

/// Sums and coverage percentages of the bundled developer comparison table.
#[pyfunction]
fn comparison_summary(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &summarize(&bundled_comparison()))
}

#[pymodule]
fn oasgen(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("OasgenError", m.py().get_type::<OasgenError>())?;
    m.add_function(wrap_pyfunction!(frameworks, m)?)?;
    m.add_function(wrap_pyfunction!(scan, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(diff, m)?)?;
    m.add_function(wrap_pyfunction!(comparison_summary, m)?)?;
    Ok(())
}
