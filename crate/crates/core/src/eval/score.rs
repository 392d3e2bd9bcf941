use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::entities::EntitySets;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntityClass {
    EndpointMethods,
    EndpointParameters,
    ParameterConstraints,
    EndpointResponses,
}

impl EntityClass {
    pub const ALL: [EntityClass; 4] = [
        EntityClass::EndpointMethods,
        EntityClass::EndpointParameters,
        EntityClass::ParameterConstraints,
        EntityClass::EndpointResponses,
    ];

    pub fn label(self) -> &'static str {
        match self {
            EntityClass::EndpointMethods => "Endpoint methods",
            EntityClass::EndpointParameters => "Endpoint parameters",
            EntityClass::ParameterConstraints => "Parameter constraints",
            EntityClass::EndpointResponses => "Endpoint responses",
        }
    }
}

/// Precision, recall and F1 from raw counts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Nothing was identified; precision is reported as 1.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub no_identifications: bool,
    /// The reference set is empty; recall is reported as 1.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub no_truth: bool,
}

impl Metrics {
    pub fn from_counts(tp: usize, fp: usize, fn_: usize) -> Self {
        let identified = tp + fp;
        let relevant = tp + fn_;
        let precision = if identified == 0 {
            1.0
        } else {
            tp as f64 / identified as f64
        };
        let recall = if relevant == 0 {
            1.0
        } else {
            tp as f64 / relevant as f64
        };
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        Self {
            tp,
            fp,
            fn_,
            precision,
            recall,
            f1,
            no_identifications: identified == 0,
            no_truth: relevant == 0,
        }
    }

    /// From the usual reporting triple: identified, reference size, matches.
    pub fn from_totals(identified: usize, truth: usize, matched: usize) -> Self {
        Self::from_counts(
            matched,
            identified.saturating_sub(matched),
            truth.saturating_sub(matched),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub class: EntityClass,
    #[serde(flatten)]
    pub metrics: Metrics,
    /// Reference entities absent from the evaluated document.
    pub missed: Vec<Value>,
    /// Evaluated entities absent from the reference (the false positives).
    pub extra: Vec<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub classes: Vec<ClassReport>,
}

impl EvalReport {
    pub fn class(&self, class: EntityClass) -> &ClassReport {
        self.classes
            .iter()
            .find(|c| c.class == class)
            .expect("every class is reported")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<24}{:>6}{:>6}{:>6}{:>11}{:>8}{:>6}",
            "Entity class", "TP", "FP", "FN", "Precision", "Recall", "F1"
        );
        for c in &self.classes {
            let m = &c.metrics;
            let flag = if m.no_identifications {
                "  (no identifications)"
            } else {
                ""
            };
            let _ = writeln!(
                out,
                "{:<24}{:>6}{:>6}{:>6}{:>11.2}{:>8.2}{:>6.2}{flag}",
                c.class.label(),
                m.tp,
                m.fp,
                m.fn_,
                m.precision,
                m.recall,
                m.f1
            );
        }
        out
    }
}

fn compare<T: Ord + Serialize>(evaluated: &BTreeSet<T>, truth: &BTreeSet<T>, class: EntityClass) -> ClassReport {
    let tp = evaluated.intersection(truth).count();
    let to_values = |it: std::collections::btree_set::Difference<'_, T>| -> Vec<Value> {
        it.map(|e| serde_json::to_value(e).expect("entity serializes"))
            .collect()
    };
    let extra = to_values(evaluated.difference(truth));
    let missed = to_values(truth.difference(evaluated));
    ClassReport {
        class,
        metrics: Metrics::from_counts(tp, extra.len(), missed.len()),
        missed,
        extra,
    }
}

/// Exact set comparison per entity class.
pub fn score(evaluated: &EntitySets, truth: &EntitySets) -> EvalReport {
    EvalReport {
        classes: vec![
            compare(
                &evaluated.endpoint_methods,
                &truth.endpoint_methods,
                EntityClass::EndpointMethods,
            ),
            compare(
                &evaluated.endpoint_parameters,
                &truth.endpoint_parameters,
                EntityClass::EndpointParameters,
            ),
            compare(
                &evaluated.parameter_constraints,
                &truth.parameter_constraints,
                EntityClass::ParameterConstraints,
            ),
            compare(
                &evaluated.endpoint_responses,
                &truth.endpoint_responses,
                EntityClass::EndpointResponses,
            ),
        ],
    }
}
