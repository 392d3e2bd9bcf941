//! Runs all three stages over a set of contexts with a bounded number of
//! concurrent requests.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use super::provider::{ChatProvider, ProviderConfig};
use super::records::{EndpointMethod, HttpMethod, ParameterSpec, ResponseSpec};
use super::stages::{stage_a_endpoints, stage_b_params_responses, stage_c_constraints};
use crate::diag::Diagnostic;
use crate::error::LlmError;
use crate::extract::EndpointContext;

/// Everything learned about one endpoint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EndpointRecord {
    pub method: EndpointMethod,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<String>,
    pub parameters: Vec<ParameterSpec>,
    pub responses: Vec<ResponseSpec>,
    /// Entry file the endpoint was found in.
    pub source: PathBuf,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Extraction {
    pub endpoints: Vec<EndpointRecord>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Applies `f` to every item on at most `workers` threads; results keep
/// input order.
pub fn bounded_map<T: Sync, R: Send>(items: &[T], workers: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let workers = workers.max(1).min(items.len());
    if workers <= 1 {
        return items.iter().map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let mut slots: Vec<Option<R>> = (0..items.len()).map(|_| None).collect();
    let produced: Vec<Vec<(usize, R)>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                s.spawn(|| {
                    let mut local = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= items.len() {
                            break;
                        }
                        local.push((i, f(&items[i])));
                    }
                    local
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|e| std::panic::resume_unwind(e)))
            .collect()
    });
    for (i, r) in produced.into_iter().flatten() {
        slots[i] = Some(r);
    }
    slots
        .into_iter()
        .map(|r| r.expect("every index is processed"))
        .collect()
}

fn endpoint_diag(ctx: &EndpointContext, ep: &EndpointMethod, message: impl std::fmt::Display) -> Diagnostic {
    Diagnostic::new(
        Some(&ctx.entry_file),
        format!("{} {}: {message}", ep.http_method, ep.endpoint_path),
    )
}

fn describe_endpoint(
    ctx: &EndpointContext,
    ep: &EndpointMethod,
    provider: &dyn ChatProvider,
    config: &ProviderConfig,
) -> Result<(EndpointRecord, Vec<Diagnostic>), LlmError> {
    let mut diagnostics = Vec::new();
    let mut record = EndpointRecord {
        method: ep.clone(),
        summary: None,
        parameters: Vec::new(),
        responses: Vec::new(),
        source: ctx.entry_file.clone(),
    };
    match stage_b_params_responses(ctx, ep, provider, config) {
        Ok(b) => {
            record.summary = b.summary;
            record.parameters = b.parameters;
            record.responses = b.responses;
        }
        Err(e @ LlmError::SchemaViolation { .. }) => {
            diagnostics.push(endpoint_diag(ctx, ep, format!("parameters and responses omitted: {e}")));
            return Ok((record, diagnostics));
        }
        Err(e) => return Err(e),
    }
    for param in &mut record.parameters {
        match stage_c_constraints(ctx, ep, param, provider, config) {
            Ok(c) => {
                param.constraints = c.constraints;
                diagnostics.extend(c.diagnostics);
            }
            Err(e @ LlmError::SchemaViolation { .. }) => {
                diagnostics.push(endpoint_diag(
                    ctx,
                    ep,
                    format!("constraints of `{}` omitted: {e}", param.name),
                ));
            }
            Err(e) => return Err(e),
        }
    }
    Ok((record, diagnostics))
}

/// Stage A for every context, then stages B and C for every endpoint found.
///
/// Provider failures abort the run. Replies that stay invalid after all
/// retries degrade the affected record and are reported as diagnostics.
/// An endpoint reported by several entry files is kept once, from the
/// first file in path order.
pub fn run_pipeline(
    contexts: &[EndpointContext],
    provider: &dyn ChatProvider,
    config: &ProviderConfig,
) -> Result<Extraction, LlmError> {
    let mut out = Extraction::default();
    for ctx in contexts {
        out.diagnostics.extend(ctx.diagnostics.iter().cloned());
    }
    let abort = AtomicBool::new(false);
    let workers = config.max_in_flight;

    let found = bounded_map(contexts, workers, |ctx| {
        if abort.load(Ordering::Relaxed) {
            return None;
        }
        let r = stage_a_endpoints(ctx, provider, config);
        if matches!(r, Err(LlmError::Provider(_))) {
            abort.store(true, Ordering::Relaxed);
        }
        Some(r)
    });

    let mut seen: BTreeMap<(String, HttpMethod), PathBuf> = BTreeMap::new();
    let mut jobs: Vec<(&EndpointContext, EndpointMethod)> = Vec::new();
    for (ctx, r) in contexts.iter().zip(found) {
        match r {
            Some(Ok(eps)) => {
                for ep in eps {
                    if let Some(first) = seen.get(&ep.key()) {
                        out.diagnostics.push(endpoint_diag(
                            ctx,
                            &ep,
                            format!("also declared in {}; keeping that one", first.display()),
                        ));
                        continue;
                    }
                    seen.insert(ep.key(), ctx.entry_file.clone());
                    jobs.push((ctx, ep));
                }
            }
            Some(Err(e @ LlmError::SchemaViolation { .. })) => {
                out.diagnostics.push(Diagnostic::new(
                    Some(&ctx.entry_file),
                    format!("no endpoints taken from this file: {e}"),
                ));
            }
            Some(Err(e)) => return Err(e),
            None => {}
        }
    }
    let described = bounded_map(&jobs, workers, |(ctx, ep)| {
        if abort.load(Ordering::Relaxed) {
            return None;
        }
        let r = describe_endpoint(ctx, ep, provider, config);
        if r.is_err() {
            abort.store(true, Ordering::Relaxed);
        }
        Some(r)
    });
    for r in described.into_iter().flatten() {
        let (record, diags) = r?;
        out.endpoints.push(record);
        out.diagnostics.extend(diags);
    }
    out.endpoints.sort_by(|a, b| {
        (&a.method.endpoint_path, a.method.http_method).cmp(&(&b.method.endpoint_path, b.method.http_method))
    });
    Ok(out)
}
