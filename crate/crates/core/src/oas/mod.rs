//! OpenAPI 3.1.1 document assembly, serialization and validation.

pub mod assemble;
pub mod model;
pub mod schema;
pub mod validate;

pub use assemble::{assemble, reason_phrase, to_json, to_yaml, Assembly, JSON_MEDIA_TYPE};
pub use model::{
    Components, Info, MediaType, OasDocument, Operation, Parameter, PathItem, RequestBody, Response, ResponseVariant,
    OPENAPI_VERSION,
};
pub use schema::{constraint_to_schema, constraints_schema, infer_schema, parse_type_name, TypeShape, KEYWORD_MAP};
pub use validate::validate_document;
