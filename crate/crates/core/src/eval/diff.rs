//! Coverage comparison between a generated and a developer-written document,
//! and aggregation over per-API count tables.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::entities::EntitySets;
use super::score::EntityClass;
use crate::error::EvalError;

/// Entity counts per class for one specification.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ClassCounts {
    pub endpoint_methods: usize,
    pub endpoint_parameters: usize,
    pub parameter_constraints: usize,
    pub endpoint_responses: usize,
}

impl ClassCounts {
    pub fn of(sets: &EntitySets) -> Self {
        Self {
            endpoint_methods: sets.endpoint_methods.len(),
            endpoint_parameters: sets.endpoint_parameters.len(),
            parameter_constraints: sets.parameter_constraints.len(),
            endpoint_responses: sets.endpoint_responses.len(),
        }
    }

    pub fn get(&self, class: EntityClass) -> usize {
        match class {
            EntityClass::EndpointMethods => self.endpoint_methods,
            EntityClass::EndpointParameters => self.endpoint_parameters,
            EntityClass::ParameterConstraints => self.parameter_constraints,
            EntityClass::EndpointResponses => self.endpoint_responses,
        }
    }

    pub fn add(&mut self, other: &ClassCounts) {
        self.endpoint_methods += other.endpoint_methods;
        self.endpoint_parameters += other.endpoint_parameters;
        self.parameter_constraints += other.parameter_constraints;
        self.endpoint_responses += other.endpoint_responses;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiffClass {
    pub class: EntityClass,
    pub developer: usize,
    pub generated: usize,
    pub only_in_generated: Vec<Value>,
    pub only_in_developer: Vec<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiffReport {
    pub classes: Vec<DiffClass>,
}

fn diff_class<T: Ord + Serialize>(generated: &BTreeSet<T>, developer: &BTreeSet<T>, class: EntityClass) -> DiffClass {
    let values = |it: std::collections::btree_set::Difference<'_, T>| -> Vec<Value> {
        it.map(|e| serde_json::to_value(e).expect("entity serializes"))
            .collect()
    };
    DiffClass {
        class,
        developer: developer.len(),
        generated: generated.len(),
        only_in_generated: values(generated.difference(developer)),
        only_in_developer: values(developer.difference(generated)),
    }
}

pub fn diff_against_developer(generated: &EntitySets, developer: &EntitySets) -> DiffReport {
    DiffReport {
        classes: vec![
            diff_class(
                &generated.endpoint_methods,
                &developer.endpoint_methods,
                EntityClass::EndpointMethods,
            ),
            diff_class(
                &generated.endpoint_parameters,
                &developer.endpoint_parameters,
                EntityClass::EndpointParameters,
            ),
            diff_class(
                &generated.parameter_constraints,
                &developer.parameter_constraints,
                EntityClass::ParameterConstraints,
            ),
            diff_class(
                &generated.endpoint_responses,
                &developer.endpoint_responses,
                EntityClass::EndpointResponses,
            ),
        ],
    }
}

impl DiffReport {
    pub fn class(&self, class: EntityClass) -> &DiffClass {
        self.classes
            .iter()
            .find(|c| c.class == class)
            .expect("every class is reported")
    }

    pub fn is_identical(&self) -> bool {
        self.classes
            .iter()
            .all(|c| c.only_in_generated.is_empty() && c.only_in_developer.is_empty())
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<24}{:>11}{:>11}{:>18}{:>18}",
            "Entity class", "Developer", "Generated", "Only generated", "Only developer"
        );
        for c in &self.classes {
            let _ = writeln!(
                out,
                "{:<24}{:>11}{:>11}{:>18}{:>18}",
                c.class.label(),
                c.developer,
                c.generated,
                c.only_in_generated.len(),
                c.only_in_developer.len()
            );
        }
        out
    }
}

/// Entity counts of a developer-written and a generated specification of
/// one API, with known false positives of the generated one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub api: String,
    pub developer: ClassCounts,
    pub generated: ClassCounts,
    #[serde(default)]
    pub generated_false_positives: ClassCounts,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Coverage {
    pub class: EntityClass,
    pub developer: usize,
    pub generated: usize,
    /// Generated entities beyond the developer count.
    pub missed_by_developer: i64,
    /// `missed_by_developer` as a percentage of `generated`.
    pub missed_percent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonSummary {
    pub rows: Vec<ComparisonRow>,
    pub developer_sum: ClassCounts,
    pub generated_sum: ClassCounts,
    pub false_positive_sum: ClassCounts,
    pub coverage: Vec<Coverage>,
}

const BUNDLED_COMPARISON: &str = include_str!("../../data/developer_comparison.json");

/// Reference counts for 20 open-source APIs, each with a developer-written
/// specification and a source-generated one.
pub fn bundled_comparison() -> Vec<ComparisonRow> {
    serde_json::from_str(BUNDLED_COMPARISON).expect("bundled comparison table parses")
}

pub fn load_comparison(text: &str) -> Result<Vec<ComparisonRow>, EvalError> {
    serde_json::from_str(text).map_err(|e| EvalError::Parse {
        what: "comparison table".into(),
        reason: e.to_string(),
    })
}

pub fn summarize(rows: &[ComparisonRow]) -> ComparisonSummary {
    let mut developer_sum = ClassCounts::default();
    let mut generated_sum = ClassCounts::default();
    let mut false_positive_sum = ClassCounts::default();
    for r in rows {
        developer_sum.add(&r.developer);
        generated_sum.add(&r.generated);
        false_positive_sum.add(&r.generated_false_positives);
    }
    let coverage = EntityClass::ALL
        .into_iter()
        .map(|class| {
            let developer = developer_sum.get(class);
            let generated = generated_sum.get(class);
            let missed = generated as i64 - developer as i64;
            Coverage {
                class,
                developer,
                generated,
                missed_by_developer: missed,
                missed_percent: if generated == 0 {
                    0.0
                } else {
                    100.0 * missed as f64 / generated as f64
                },
            }
        })
        .collect();
    ComparisonSummary {
        rows: rows.to_vec(),
        developer_sum,
        generated_sum,
        false_positive_sum,
        coverage,
    }
}

impl ComparisonSummary {
    pub fn coverage_of(&self, class: EntityClass) -> &Coverage {
        self.coverage
            .iter()
            .find(|c| c.class == class)
            .expect("every class is covered")
    }

    pub fn to_table(&self) -> String {
        let cell = |dev: usize, gen: usize, fp: usize| {
            let g = if fp > 0 {
                format!("{gen} ({fp})")
            } else {
                gen.to_string()
            };
            format!("{dev:>7} {g:>10}")
        };
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<18}{:>18}{:>18}{:>18}{:>18}",
            "API", "Methods", "Parameters", "Constraints", "Responses"
        );
        let mut line = |name: &str, d: &ClassCounts, g: &ClassCounts, f: &ClassCounts| {
            let _ = write!(out, "{name:<18}");
            for class in EntityClass::ALL {
                let _ = write!(out, "{}", cell(d.get(class), g.get(class), f.get(class)));
            }
            out.push('\n');
        };
        for r in &self.rows {
            line(&r.api, &r.developer, &r.generated, &r.generated_false_positives);
        }
        line(
            "Sum",
            &self.developer_sum,
            &self.generated_sum,
            &self.false_positive_sum,
        );
        out.push('\n');
        for c in &self.coverage {
            let _ = writeln!(
                out,
                "{}: {} (out of {}, {:.2}%) missing from developer specifications",
                c.class.label(),
                c.missed_by_developer,
                c.generated,
                c.missed_percent
            );
        }
        out
    }
}
