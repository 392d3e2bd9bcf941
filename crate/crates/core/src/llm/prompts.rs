//! Prompt templates for the three interrogation stages and the code bundles
//! interpolated into them.

use std::path::Path;

use crate::extract::{EndpointContext, Language};
use crate::llm::records::{EndpointMethod, ParameterSpec};

pub const STAGE_A_EXAMPLE: &str =
    r#"[{"endpoint_path": "/api/getUser", "http_method": "GET", "method_name": "getUser()"}]"#;

pub const STAGE_B_EXAMPLE: &str = r#"[{"endpoint_path": "/api/getUser", "endpoint_method": "GET", "description": "An Endpoint to Get User List", "parameters": [{"name": "str_param", "type": "string", "require": "true", "position": "query", "description": "some string parameter"}, {"name": "num_param", "type": "int", "require": "true", "position": "path", "description": "some number parameter"}, {"name": "bool_param", "type": "boolean", "require": "true", "position": "query", "description": "some boolean parameter"}], "response": {"status_code": 200, "return_schema": [{"userName": "u", "password": "p", "birthday": "1970-01-01"}, {"userName": "u", "password": "p", "birthday": "1970-01-01"}], "return_type": "List<User>", "exception": "NotFoundException", "description": "the list of users"}}]"#;

pub const STAGE_C_EXAMPLE: &str = r#"[{"name": "str_param", "type": "string", "require": "true", "position": "query", "description": "some string parameter", "max_length": "128", "min_length": "16", "enum": ["enum1", "enum2", "enum3"], "format": "yyyy-mm-dd hh24:mi:ss", "default_value": "hello world"}, {"name": "num_param", "type": "int", "require": "true", "position": "path", "description": "some number parameter", "min": 2, "max": 16, "default_value": 0}, {"name": "bool_param", "type": "boolean", "require": "true", "position": "query", "description": "some boolean parameter", "default_value": true}]"#;

pub fn stage_a_prompt(endpoint_code_lines: &str) -> String {
    format!(
        "Read the endpoint entry code (scoped from ## to ##): \
         ##{endpoint_code_lines}##, and following these steps: \
         1.How many endpoints are included in the code? \
         2.For each endpoint, what is its HTTP_METHOD (e.g., GET, POST, ...)? \
         3.For each endpoint, what is its URL path? \
         4.For each endpoint, what is its method name? \
         At last, provide the result in JSON format, please strictly follow the example: {STAGE_A_EXAMPLE}."
    )
}

pub fn stage_b_prompt(endpoint_code_lines: &str, endpoint_method_name: &str) -> String {
    format!(
        "Please read the endpoint codes (scoped from ## to ##): \
         ##{endpoint_code_lines}##, and following these steps:\
         For the specific endpoint method named: {endpoint_method_name}, how many parameters are there? \
         1.For each parameter, what is its name, and type (e.g., string, number, integer, object, array, boolean)? Is it required? \
         2.What is this parameter located in (e.g., query or path)? \
         3.What is this parameter represent for? \
         4.What is this endpoint's response? how many responses do this endpoint returned? \
         what is the return HTTP status code for each one? \
         If an exception occurs, what is the exception message? \
         If any data is returned, what is the specific schema of the data?\
         At last, provide the result in JSON format, please strictly follow the example: {STAGE_B_EXAMPLE}."
    )
}

pub fn stage_c_prompt(endpoint_code_lines: &str, endpoint_parameter_name: &str, endpoint_method_name: &str) -> String {
    format!(
        "Please read the endpoint codes (scoped from ## to ##): \
         ##{endpoint_code_lines}##, and following these steps:\
         For the specific parameter: {endpoint_parameter_name} in endpoint method named: {endpoint_method_name},\
         1.What is its type (e.g., string, number, integer, object, array, boolean)? Is it required? \
         2.For string type parameter, what is its minLength and maxLength? what is its default value? \
         If this string parameter is an enumeration, what is its enumeration? \
         If this string parameter is in date or pattern format, what is its date-time format or pattern?\
         3.For integer and number type parameter, what is its range? what is its default value? \
         4.For boolean type parameter, is it True or False? \
         5.For parameter in mapping, please read the endpoint codes and analyzed the above steps. \
         At last, provide the result in JSON format, please strictly follow the example: {STAGE_C_EXAMPLE}."
    )
}

/// Handler name as shown to the model, qualified with method and path so
/// that overloaded or same-named handlers stay distinguishable.
pub fn method_label(ep: &EndpointMethod) -> String {
    format!("{} ({} {})", ep.method_name, ep.http_method, ep.endpoint_path)
}

fn push_file(out: &mut String, ctx: &EndpointContext, path: &Path, text: &str) {
    let marker = Language::from_path(path).line_comment();
    let rel = ctx.relative(path).to_string_lossy().replace('\\', "/");
    if !out.is_empty() {
        out.push('\n');
    }
    out.push_str(marker);
    out.push_str(" File: ");
    out.push_str(&rel);
    out.push('\n');
    out.push_str(text);
    out.push('\n');
}

/// Entry file plus routing configuration files; the stage-A input.
pub fn entry_bundle(ctx: &EndpointContext) -> String {
    let mut out = String::new();
    push_file(&mut out, ctx, &ctx.entry_file, &ctx.cleaned_entry);
    for cfg in &ctx.configuration_files {
        if let Some(text) = ctx.related.get(cfg) {
            push_file(&mut out, ctx, cfg, text);
        }
    }
    out
}

/// Entry file plus every related file; the stage-B and stage-C input.
pub fn full_bundle(ctx: &EndpointContext) -> String {
    let mut out = String::new();
    push_file(&mut out, ctx, &ctx.entry_file, &ctx.cleaned_entry);
    for (path, text) in &ctx.related {
        push_file(&mut out, ctx, path, text);
    }
    out
}

pub fn stage_a_for(ctx: &EndpointContext) -> String {
    stage_a_prompt(&entry_bundle(ctx))
}

pub fn stage_b_for(bundle: &str, ep: &EndpointMethod) -> String {
    stage_b_prompt(bundle, &method_label(ep))
}

pub fn stage_c_for(bundle: &str, ep: &EndpointMethod, param: &ParameterSpec) -> String {
    stage_c_prompt(bundle, &param.name, &method_label(ep))
}

/// Follow-up sent after a reply that failed validation.
pub fn corrective_message(problem: &str, example: &str) -> String {
    format!(
        "Your previous answer could not be used: {problem}. \
         Reply again with only the JSON result, strictly following the example: {example}."
    )
}
