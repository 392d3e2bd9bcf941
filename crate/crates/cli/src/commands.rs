use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use oasgen_core::config::{resolve, Settings};
use oasgen_core::error::{EvalError, GenerateError, ProviderError};
use oasgen_core::eval::{
    bundled_comparison, diff_against_developer, extract_entities_with, load_comparison, load_ground_truth,
    parse_document, score, summarize, EntityOptions, EntitySets,
};
use oasgen_core::generate::scan_project;
use oasgen_core::llm::{ChatProvider, FixtureProvider, HttpProvider, RecordingProvider, ScriptedProvider};
use oasgen_core::oas::{to_json, to_yaml};
use oasgen_core::{GenerateOutcome, RunConfig};
use serde::Serialize;
use serde_json::json;

use crate::{DiffArgs, EvaluateArgs, Format, GenerateArgs, ModelArgs, OutputArgs, ProjectArgs, RecordArgs, ScanArgs};

#[derive(Debug)]
pub struct Failure {
    pub category: &'static str,
    pub message: String,
}

impl Failure {
    fn new(category: &'static str, message: impl Into<String>) -> Self {
        Self {
            category,
            message: message.into(),
        }
    }
}

impl From<GenerateError> for Failure {
    fn from(e: GenerateError) -> Self {
        Failure::new(e.category(), e.detail())
    }
}

impl From<ProviderError> for Failure {
    fn from(e: ProviderError) -> Self {
        Failure::new("provider", e.to_string())
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        Failure::new("input", e.to_string())
    }
}

pub fn exit_code(category: &str) -> u8 {
    match category {
        "config" => 3,
        "scan" => 4,
        "provider" => 5,
        "schema" => 6,
        "assembly" => 7,
        "input" => 8,
        _ => 1,
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new("io", format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::new("io", format!("{}: {e}", path.display())))
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("report serializes"));
}

fn flag_settings(project: &ProjectArgs, model: Option<&ModelArgs>) -> Settings {
    let mut s = Settings {
        framework: project.framework.clone(),
        criteria_file: project.criteria.clone(),
        ..Settings::default()
    };
    if let Some(m) = model {
        s.model = m.model.clone();
        s.endpoint_url = m.endpoint_url.clone();
        s.temperature = m.temperature;
        s.import_depth = m.import_depth;
        s.title = m.title.clone();
    }
    s
}

fn run_config(
    project: &ProjectArgs,
    model: Option<&ModelArgs>,
    output: Option<&OutputArgs>,
) -> Result<RunConfig, Failure> {
    let mut cfg = resolve(&project.root, flag_settings(project, model), Settings::from_env()?)?;
    cfg.dump_contexts = output.and_then(|o| o.dump_contexts.clone());
    Ok(cfg)
}

fn api_name(cfg: &RunConfig) -> String {
    let raw = cfg.title.clone().unwrap_or_else(|| {
        fs::canonicalize(&cfg.project_root)
            .ok()
            .and_then(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()))
            .unwrap_or_else(|| "api".into())
    });
    let name: String = raw
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '-'
            }
        })
        .collect();
    if name.trim_matches('-').is_empty() {
        "api".into()
    } else {
        name
    }
}

fn finish(cfg: &RunConfig, outcome: &GenerateOutcome, out: &OutputArgs, started: Instant) -> Outcome {
    let path = out.output.clone().unwrap_or_else(|| {
        let ext = if out.yaml { "yaml" } else { "json" };
        PathBuf::from(format!("{}.openapi.{ext}", api_name(cfg)))
    });
    let text = if out.yaml {
        to_yaml(&outcome.document)
    } else {
        to_json(&outcome.document)
    };
    write(&path, &text)?;
    for d in &outcome.diagnostics {
        log::warn!("{d}");
    }
    if outcome.framework.is_none() {
        log::warn!("no endpoint entry files found; the document has no paths");
    }
    let c = &outcome.counts;
    println!(
        "wrote {}: {} endpoint methods, {} parameters, {} constraints, {} responses",
        path.display(),
        c.endpoint_methods,
        c.endpoint_parameters,
        c.parameter_constraints,
        c.endpoint_responses
    );
    if let Some(report) = &out.report {
        let body = json!({
            "output": path,
            "framework": outcome.framework,
            "entry_files": outcome.entry_files,
            "counts": outcome.counts,
            "diagnostics": outcome.diagnostics,
            "validation_problems": outcome.validation_problems,
            "elapsed_ms": started.elapsed().as_millis() as u64,
        });
        write(
            report,
            &(serde_json::to_string_pretty(&body).expect("report serializes") + "\n"),
        )?;
    }
    if !outcome.validation_problems.is_empty() {
        return Err(Failure::new(
            "schema",
            format!(
                "generated document is not valid OAS 3.1: {}",
                outcome.validation_problems.join("; ")
            ),
        ));
    }
    Ok(())
}

pub fn generate(a: GenerateArgs) -> Outcome {
    let started = Instant::now();
    let cfg = run_config(&a.project, Some(&a.model), Some(&a.output))?;
    // Fail on a bad root or framework before asking for credentials; a
    // project without entry files never reaches the model.
    let provider: Box<dyn ChatProvider> = if scan_project(&cfg)?.is_none() {
        Box::new(ScriptedProvider::new(Default::default()))
    } else if a.offline {
        let dir = a.fixtures.clone().expect("clap requires --fixtures with --offline");
        if !dir.is_dir() {
            return Err(Failure::new(
                "config",
                format!("fixture directory {} does not exist", dir.display()),
            ));
        }
        Box::new(FixtureProvider::new(dir))
    } else {
        Box::new(HttpProvider::from_config(&cfg.provider)?)
    };
    let outcome = oasgen_core::generate(&cfg, &*provider)?;
    finish(&cfg, &outcome, &a.output, started)
}

pub fn record_fixtures(a: RecordArgs) -> Outcome {
    let started = Instant::now();
    let cfg = run_config(&a.project, Some(&a.model), Some(&a.output))?;
    let inner: Box<dyn ChatProvider> = match &a.script {
        Some(path) => Box::new(ScriptedProvider::from_json(&read(path)?)?),
        None => Box::new(HttpProvider::from_config(&cfg.provider)?),
    };
    let recorder = RecordingProvider::new(inner, FixtureProvider::new(&a.fixtures));
    let outcome = oasgen_core::generate(&cfg, &recorder)?;
    println!(
        "recorded {} exchanges into {}",
        recorder.recorded().len(),
        a.fixtures.display()
    );
    finish(&cfg, &outcome, &a.output, started)
}

pub fn scan(a: ScanArgs) -> Outcome {
    let cfg = run_config(&a.project, None, None)?;
    let found = scan_project(&cfg)?;
    let Some((_, result)) = found else {
        match a.format {
            Format::Json => print_json(&json!({"framework": null, "entry_files": [], "configuration_files": []})),
            Format::Table => println!("no endpoint entry files found"),
        }
        return Ok(());
    };
    let rel = |p: &Path| {
        p.strip_prefix(&result.root)
            .unwrap_or(p)
            .to_string_lossy()
            .replace('\\', "/")
    };
    let entries: Vec<String> = result.entry_files.iter().map(|p| rel(p)).collect();
    let configs: Vec<String> = result.configuration_files_found.iter().map(|p| rel(p)).collect();
    match a.format {
        Format::Json => print_json(&json!({
            "framework": result.framework,
            "root": result.root,
            "entry_files": entries,
            "configuration_files": configs,
            "routes": result.routes.iter().map(|r| json!({
                "configuration_file": rel(&r.configuration_file),
                "handler": r.handler,
                "resolved": r.resolved.as_deref().map(rel),
            })).collect::<Vec<_>>(),
            "diagnostics": result.diagnostics,
        })),
        Format::Table => {
            println!("framework: {}", result.framework);
            println!("entry files ({}):", entries.len());
            for e in &entries {
                println!("  {e}");
            }
            if !configs.is_empty() {
                println!("configuration files ({}):", configs.len());
                for c in &configs {
                    println!("  {c}");
                }
            }
            for d in &result.diagnostics {
                log::warn!("{d}");
            }
        }
    }
    Ok(())
}

fn load_entities(path: &Path, opts: EntityOptions) -> Result<EntitySets, Failure> {
    let doc = parse_document(&read(path)?, &path.display().to_string())?;
    Ok(extract_entities_with(&doc, opts))
}

pub fn evaluate(a: EvaluateArgs) -> Outcome {
    let opts = EntityOptions {
        required_as_constraint: a.required_as_constraint,
    };
    let evaluated = load_entities(&a.spec, opts)?;
    let mut truth = load_ground_truth(&read(&a.truth)?)?;
    if !a.required_as_constraint {
        truth
            .parameter_constraints
            .retain(|(_, _, _, keyword, _)| keyword != "required");
    }
    let report = score(&evaluated, &truth);
    match a.format {
        Format::Json => print_json(&report),
        Format::Table => print!("{}", report.to_table()),
    }
    Ok(())
}

pub fn diff(a: DiffArgs) -> Outcome {
    if a.summary {
        let rows = match &a.comparison {
            Some(path) => load_comparison(&read(path)?)?,
            None => bundled_comparison(),
        };
        let summary = summarize(&rows);
        match a.format {
            Format::Json => print_json(&summary),
            Format::Table => print!("{}", summary.to_table()),
        }
        return Ok(());
    }
    let opts = EntityOptions {
        required_as_constraint: a.required_as_constraint,
    };
    let generated = load_entities(a.generated.as_deref().expect("clap requires --generated"), opts)?;
    let developer = load_entities(a.developer.as_deref().expect("clap requires --developer"), opts)?;
    let report = diff_against_developer(&generated, &developer);
    match a.format {
        Format::Json => print_json(&report),
        Format::Table => print!("{}", report.to_table()),
    }
    Ok(())
}
