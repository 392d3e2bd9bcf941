//! The three interrogation stages. Each sends a fresh conversation, validates
//! the reply and, on a malformed reply, appends the reply plus a corrective
//! message and asks again, at most `max_retries` times.

use serde_json::Value;

use super::json::extract_json;
use super::prompts::{self, STAGE_A_EXAMPLE, STAGE_B_EXAMPLE, STAGE_C_EXAMPLE};
use super::provider::{ChatMessage, ChatProvider, ChatRequest, ProviderConfig};
use super::records::{
    parse_constraints, parse_endpoint_methods, parse_params_and_responses, ConstraintSet, EndpointMethod,
    ParameterSpec, ParamsAndResponses,
};
use crate::diag::Diagnostic;
use crate::error::LlmError;
use crate::extract::EndpointContext;

/// Reply accepted after validation, or the last parseable reply whose
/// remaining `problem` the caller must repair.
struct Accepted<T> {
    value: T,
    problem: Option<String>,
}

fn interrogate<T>(
    provider: &dyn ChatProvider,
    config: &ProviderConfig,
    stage: &'static str,
    prompt: String,
    example: &str,
    parse: impl Fn(&Value) -> Result<T, String>,
    check: impl Fn(&T) -> Option<String>,
) -> Result<Accepted<T>, LlmError> {
    let mut messages = vec![ChatMessage::user(prompt)];
    let mut salvage: Option<(T, String)> = None;
    let mut attempt = 0;
    loop {
        let reply = provider.complete(&ChatRequest::new(config, messages.clone()))?;
        let problem = match extract_json(&reply).map_err(|e| e.to_string()).and_then(|v| parse(&v)) {
            Ok(value) => match check(&value) {
                None => return Ok(Accepted { value, problem: None }),
                Some(p) => {
                    salvage = Some((value, p.clone()));
                    p
                }
            },
            Err(p) => p,
        };
        attempt += 1;
        if attempt > config.max_retries {
            return match salvage {
                Some((value, p)) => Ok(Accepted {
                    value,
                    problem: Some(p),
                }),
                None => Err(LlmError::SchemaViolation {
                    stage,
                    attempts: attempt,
                    detail: problem,
                }),
            };
        }
        log::debug!("{stage}: retry {attempt} after invalid reply: {problem}");
        messages.push(ChatMessage::assistant(reply));
        messages.push(ChatMessage::user(prompts::corrective_message(&problem, example)));
    }
}

/// Stage A: endpoint methods declared in the context's entry file.
pub fn stage_a_endpoints(
    ctx: &EndpointContext,
    provider: &dyn ChatProvider,
    config: &ProviderConfig,
) -> Result<Vec<EndpointMethod>, LlmError> {
    let accepted = interrogate(
        provider,
        config,
        "endpoint methods",
        prompts::stage_a_for(ctx),
        STAGE_A_EXAMPLE,
        parse_endpoint_methods,
        |_| None,
    )?;
    Ok(accepted.value)
}

/// Stage B: parameters and responses of one endpoint method.
pub fn stage_b_params_responses(
    ctx: &EndpointContext,
    ep: &EndpointMethod,
    provider: &dyn ChatProvider,
    config: &ProviderConfig,
) -> Result<ParamsAndResponses, LlmError> {
    let bundle = prompts::full_bundle(ctx);
    let accepted = interrogate(
        provider,
        config,
        "parameters and responses",
        prompts::stage_b_for(&bundle, ep),
        STAGE_B_EXAMPLE,
        |v| parse_params_and_responses(v, ep),
        |_| None,
    )?;
    Ok(accepted.value)
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConstraintOutcome {
    pub constraints: ConstraintSet,
    pub diagnostics: Vec<Diagnostic>,
}

/// Stage C: value constraints of one parameter. Contradictory bounds that
/// survive every retry are dropped and reported, not treated as fatal.
pub fn stage_c_constraints(
    ctx: &EndpointContext,
    ep: &EndpointMethod,
    param: &ParameterSpec,
    provider: &dyn ChatProvider,
    config: &ProviderConfig,
) -> Result<ConstraintOutcome, LlmError> {
    let bundle = prompts::full_bundle(ctx);
    let accepted = interrogate(
        provider,
        config,
        "parameter constraints",
        prompts::stage_c_for(&bundle, ep, param),
        STAGE_C_EXAMPLE,
        |v| parse_constraints(v, param),
        |c: &ConstraintSet| {
            let problems = c.problems();
            (!problems.is_empty()).then(|| problems.join("; "))
        },
    )?;
    let mut outcome = ConstraintOutcome {
        constraints: accepted.value,
        diagnostics: Vec::new(),
    };
    if accepted.problem.is_some() {
        for dropped in outcome.constraints.drop_contradictions() {
            outcome.diagnostics.push(Diagnostic::new(
                Some(&ctx.entry_file),
                format!(
                    "{} {}: dropped contradictory constraint on `{}` ({dropped})",
                    ep.http_method, ep.endpoint_path, param.name
                ),
            ));
        }
    }
    Ok(outcome)
}
