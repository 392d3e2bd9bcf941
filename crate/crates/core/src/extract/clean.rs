//! Line-based source cleaning before LLM submission.
//!
//! Four kinds of lines are dropped: blank lines, logging/print statements
//! (including their continuation lines), the comment banner at the top of a
//! file, and import statements that do not resolve to a project file.
//! Everything else is kept verbatim apart from trailing whitespace.
//! Decorator and annotation lines are never dropped.

use std::path::Path;
use std::sync::OnceLock;

use regex::Regex;

use super::lang::{import_spans, Language};
use super::symbols::SymbolMap;
use crate::criteria::CompiledCriteria;

fn log_pattern(lang: Language) -> &'static Regex {
    static JAVA: OnceLock<Regex> = OnceLock::new();
    static PYTHON: OnceLock<Regex> = OnceLock::new();
    static CSHARP: OnceLock<Regex> = OnceLock::new();
    match lang {
        Language::Python => PYTHON.get_or_init(|| {
            Regex::new(
                r"^\s*(?:print\s*\(|(?:logging|log|logger|LOG|LOGGER|_log|_logger|self\.log|self\.logger|app\.logger|current_app\.logger)\.(?:debug|info|warning|warn|error|exception|critical)\s*\()",
            )
            .expect("static pattern")
        }),
        Language::CSharp => CSHARP.get_or_init(|| {
            Regex::new(
                r"^\s*(?:Console\.Write(?:Line)?\s*\(|(?:_?log|_?logger|Log|Logger|_?Logger)\.Log\w*\s*\(|(?:Debug|Trace)\.Write\w*\s*\()",
            )
            .expect("static pattern")
        }),
        Language::Java | Language::Unknown => JAVA.get_or_init(|| {
            Regex::new(
                r"^\s*(?:System\.(?:out|err)\.print\w*\s*\(|(?:log|logger|LOG|LOGGER|Log|Logger|_log|_logger)\.(?:trace|debug|info|warn|warning|error|fatal|severe|fine|finer|finest)\s*\(|\w+\.printStackTrace\s*\(\s*\))",
            )
            .expect("static pattern")
        }),
    }
}

/// Net parenthesis depth change of a line, ignoring string literal contents.
fn paren_delta(line: &str) -> i32 {
    let mut depth = 0;
    let mut quote: Option<char> = None;
    let mut escaped = false;
    for c in line.chars() {
        if let Some(q) = quote {
            if escaped {
                escaped = false;
            } else if c == '\\' {
                escaped = true;
            } else if c == q {
                quote = None;
            }
            continue;
        }
        match c {
            '"' | '\'' => quote = Some(c),
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
    }
    depth
}

fn is_decorator(line: &str) -> bool {
    let t = line.trim_start();
    t.starts_with('@') || (t.starts_with('[') && t.trim_end().ends_with(']') && !t.starts_with("[]"))
}

/// Which import statements survive cleaning.
#[derive(Clone, Copy)]
enum ImportPolicy<'a> {
    KeepAll,
    ProjectOnly { symbols: &'a SymbolMap, file: &'a Path },
}

/// Configurable cleaner; [`clean_code`] is the no-context shorthand.
#[derive(Clone, Copy)]
pub struct Cleaner<'a> {
    language: Language,
    imports: ImportPolicy<'a>,
    protect: Option<&'a CompiledCriteria>,
}

impl<'a> Cleaner<'a> {
    pub fn new(language: Language) -> Self {
        Self {
            language,
            imports: ImportPolicy::KeepAll,
            protect: None,
        }
    }

    /// Drop imports that do not resolve to a project file of `symbols`.
    pub fn project_imports_only(mut self, symbols: &'a SymbolMap, file: &'a Path) -> Self {
        self.imports = ImportPolicy::ProjectOnly { symbols, file };
        self
    }

    /// Never drop a line matched by any of the framework's patterns.
    pub fn protect(mut self, criteria: &'a CompiledCriteria) -> Self {
        self.protect = Some(criteria);
        self
    }

    fn protected(&self, line: &str) -> bool {
        is_decorator(line)
            || self
                .protect
                .is_some_and(|c| c.patterns().iter().any(|re| re.is_match(line)))
    }

    pub fn clean(&self, text: &str) -> String {
        let lines: Vec<&str> = text.lines().collect();
        let mut drop = vec![false; lines.len()];

        if let ImportPolicy::ProjectOnly { symbols, file } = self.imports {
            for span in import_spans(self.language, text) {
                let keep = span.statement.relative_level > 0 || symbols.is_project_import(&span.statement, file);
                if !keep {
                    for d in &mut drop[span.first_line..=span.last_line] {
                        *d = true;
                    }
                }
            }
        }

        let log = log_pattern(self.language);
        let mut i = 0;
        while i < lines.len() {
            if !drop[i] && log.is_match(lines[i]) {
                let mut depth = paren_delta(lines[i]);
                drop[i] = true;
                while depth > 0 && i + 1 < lines.len() {
                    i += 1;
                    depth += paren_delta(lines[i]);
                    drop[i] = true;
                }
            }
            i += 1;
        }

        for (line, d) in lines.iter().zip(drop.iter_mut()) {
            if line.trim().is_empty() {
                *d = true;
            }
        }

        // Leading comment banner: comment lines before the first kept code line.
        let comment = self.language.line_comment();
        let mut in_block = false;
        for (idx, line) in lines.iter().enumerate() {
            let t = line.trim();
            if in_block {
                drop[idx] = true;
                if t.contains("*/") {
                    in_block = false;
                }
                continue;
            }
            if drop[idx] {
                continue;
            }
            if t.starts_with(comment) && !self.protected(line) {
                drop[idx] = true;
                continue;
            }
            if self.language.has_block_comments() && t.starts_with("/*") && !self.protected(line) {
                drop[idx] = true;
                in_block = !t[2..].contains("*/");
                continue;
            }
            break;
        }

        for (idx, line) in lines.iter().enumerate() {
            if drop[idx] && self.protected(line) && !line.trim().is_empty() {
                drop[idx] = false;
            }
        }

        lines
            .iter()
            .zip(&drop)
            .filter(|(_, d)| !**d)
            .map(|(l, _)| l.trim_end())
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Cleans `text` keeping every import statement.
pub fn clean_code(text: &str, language: Language) -> String {
    Cleaner::new(language).clean(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::{builtin_criteria, find_criteria};
    use proptest::prelude::*;

    const SAMPLE: &str = r#"/*
 * Copyright 2015 Zalando SE
 * Licensed under the Apache License, Version 2.0
 */
package org.zalando.catwatch.backend.web;

import java.util.Date;
import org.zalando.catwatch.backend.util.Constants;

@RestController
@RequestMapping("/statistics")
public class StatisticsRestController {

    private static final Logger logger = LoggerFactory.getLogger(StatisticsRestController.class);

    // lists project statistics
    @RequestMapping(value = "/projects", method = RequestMethod.GET)
    public ResponseEntity<Collection<ProjectStats>> statisticsProjectGet(
            @RequestParam(value = Constants.API_REQUEST_PARAM_ORGANIZATIONS, required = false)
            String organizations,
            @RequestParam(value = Constants.API_REQUEST_PARAM_STARTDATE, required = false)
            String startDateString,
            @RequestParam(value = Constants.API_REQUEST_PARAM_ENDDATE, required = false)
            String endDateString
    ) throws java.text.ParseException {
        logger.info("fetching stats for {}",
                organizations);
        System.out.println("debug");
        Date now = new Date();
        return null;
    }
}
"#;

    #[test]
    fn keeps_annotations_and_drops_noise() {
        let out = clean_code(SAMPLE, Language::Java);
        assert!(out.contains(r#"@RequestMapping(value = "/projects", method = RequestMethod.GET)"#));
        assert_eq!(out.matches("@RequestParam(").count(), 3);
        assert!(!out.contains("Copyright"));
        assert!(!out.contains("logger.info"));
        assert!(!out.contains("organizations);\n        System"));
        assert!(!out.contains("System.out"));
        assert!(out.contains("// lists project statistics"));
        assert!(out.contains("Logger logger = LoggerFactory"));
        assert!(!out.lines().any(|l| l.trim().is_empty()));
        assert!(out.starts_with("package org.zalando"));
    }

    #[test]
    fn empty_text() {
        assert_eq!(clean_code("", Language::Java), "");
        assert_eq!(clean_code("\n\n   \n", Language::Python), "");
    }

    #[test]
    fn python_prints_and_banner() {
        let src = "#!/usr/bin/env python\n# Copyright x\n\nimport logging\n\n@app.route('/a')\ndef a():\n    print('x')\n    logging.info(\n        'multi'\n    )\n    return 1\n";
        let out = clean_code(src, Language::Python);
        assert_eq!(out, "import logging\n@app.route('/a')\ndef a():\n    return 1");
    }

    #[test]
    fn protected_comment_lines_survive() {
        let flask = find_criteria(&builtin_criteria(), "flask").unwrap().compile().unwrap();
        let src = "# @app.route('/legacy')\nx = 1\n";
        let out = Cleaner::new(Language::Python).protect(&flask).clean(src);
        assert!(out.contains("@app.route('/legacy')"));
    }

    fn java_line() -> impl Strategy<Value = String> {
        prop_oneof![
            Just("".to_string()),
            Just("   ".to_string()),
            Just("// comment".to_string()),
            Just("/* block".to_string()),
            Just(" * inner".to_string()),
            Just(" */".to_string()),
            Just("import java.util.List;".to_string()),
            Just("package a.b;".to_string()),
            Just("@GetMapping(\"/x\")".to_string()),
            Just("logger.info(\"a\",".to_string()),
            Just("    b);".to_string()),
            Just("System.out.println(x);".to_string()),
            Just("int x = (1 + 2);".to_string()),
            Just("}".to_string()),
            "[a-z(){};\" ]{0,12}",
        ]
    }

    proptest! {
        #[test]
        fn cleaning_is_idempotent_and_shrinks(lines in prop::collection::vec(java_line(), 0..25)) {
            let text = lines.join("\n");
            let once = clean_code(&text, Language::Java);
            let twice = clean_code(&once, Language::Java);
            prop_assert_eq!(&once, &twice);
            prop_assert!(once.len() <= text.len());
            prop_assert!(!once.lines().any(|l| l.trim().is_empty()));
            for l in text.lines().filter(|l| l.trim_start().starts_with("@GetMapping")) {
                prop_assert!(once.contains(l.trim_end()));
            }
        }

        #[test]
        fn python_cleaning_is_idempotent(lines in prop::collection::vec(
            prop_oneof![
                Just("# c".to_string()), Just("".to_string()), Just("import os".to_string()),
                Just("from a import (".to_string()), Just("    b,".to_string()), Just(")".to_string()),
                Just("print(1)".to_string()), Just("@bp.route('/x')".to_string()), Just("def f():".to_string()),
                "[a-z()# ]{0,10}",
            ], 0..25)) {
            let text = lines.join("\n");
            let once = clean_code(&text, Language::Python);
            prop_assert_eq!(&once, &clean_code(&once, Language::Python));
        }
    }
}
