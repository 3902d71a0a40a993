//! Line-oriented scenario files.
//!
//! ```text
//! # worked case
//! vars: x y
//! p: 1
//! f: x
//! fnext: y
//! order: 1
//! deform_g: 1/(x+y)
//! a: 1
//! b_decomp: 1
//! ```
//!
//! List values are separated by `|`; `#` starts a comment; values may be
//! wrapped in double quotes.

use std::collections::BTreeMap;
use std::path::Path;

use cyclift::algebra::{parse_fraction, parse_polynomial, Polynomial, Variables};
use cyclift::cycles::{Scenario, ScenarioSpec};
use serde::Serialize;
use thiserror::Error;

const KEYS: [&str; 8] = ["vars", "p", "f", "fnext", "order", "deform_g", "a", "b_decomp"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing key: {0}")]
    MissingKey(&'static str),
    #[error("line {line}, key {key}: {message}")]
    Value { line: usize, key: String, message: String },
    /// The data parsed but does not describe a valid scenario.
    #[error("{0}")]
    Invariant(String),
}

/// Scenario data as reported back to the user, in normalized form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScenarioEcho {
    pub vars: Vec<String>,
    pub p: usize,
    pub f: Vec<String>,
    pub fnext: String,
    pub order: usize,
    pub deform_g: String,
    pub a: Vec<String>,
    pub b_decomp: Option<Vec<String>>,
}

impl ScenarioEcho {
    pub fn of(s: &Scenario) -> Self {
        let strings = |v: &[Polynomial]| v.iter().map(ToString::to_string).collect();
        ScenarioEcho {
            vars: s.vars().names().to_vec(),
            p: s.p(),
            f: strings(s.f()),
            fnext: s.fnext().to_string(),
            order: s.order(),
            deform_g: s.deformation().to_string(),
            a: strings(s.a()),
            b_decomp: s.b_decomp().map(strings),
        }
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("vars: {}", self.vars.join(" ")),
            format!("p: {}", self.p),
            format!("f: {}", self.f.join(" | ")),
            format!("fnext: {}", self.fnext),
            format!("order: {}", self.order),
            format!("deform_g: {}", self.deform_g),
            format!("a: {}", self.a.join(" | ")),
        ];
        if let Some(d) = &self.b_decomp {
            out.push(format!("b_decomp: {}", d.join(" | ")));
        }
        out
    }
}

struct Entry {
    line: usize,
    value: String,
}

impl Entry {
    fn error(&self, key: &str, message: impl ToString) -> ScenarioError {
        ScenarioError::Value {
            line: self.line,
            key: key.to_string(),
            message: message.to_string(),
        }
    }
}

fn unquote(v: &str) -> &str {
    v.strip_prefix('"').and_then(|v| v.strip_suffix('"')).unwrap_or(v)
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse_vars(text: &str) -> Result<Variables, String> {
    let names: Vec<&str> = text.split([' ', '\t', ',']).filter(|s| !s.is_empty()).collect();
    if names.is_empty() {
        return Err("no variables declared".into());
    }
    for (i, n) in names.iter().enumerate() {
        if !is_identifier(n) {
            return Err(format!("`{n}` is not a variable name"));
        }
        if names[..i].contains(n) {
            return Err(format!("variable `{n}` declared twice"));
        }
    }
    Ok(Variables::new(names))
}

fn split_list(text: &str) -> Result<Vec<&str>, String> {
    let items: Vec<&str> = text.split('|').map(str::trim).collect();
    if items.iter().any(|s| s.is_empty()) {
        return Err("empty list entry".into());
    }
    Ok(items)
}

/// Parse scenario text; `Scenario::new` enforces the mathematical invariants.
pub fn parse_scenario_text(text: &str) -> Result<Scenario, ScenarioError> {
    let mut entries: BTreeMap<&'static str, Entry> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once(':') else {
            return Err(ScenarioError::Syntax {
                line,
                message: format!("expected `key: value`, found `{content}`"),
            });
        };
        let key = key.trim();
        let Some(&known) = KEYS.iter().find(|k| **k == key) else {
            return Err(ScenarioError::Syntax {
                line,
                message: format!("unknown key `{key}`"),
            });
        };
        if let Some(prev) = entries.get(known) {
            return Err(ScenarioError::Syntax {
                line,
                message: format!("key `{known}` already given on line {}", prev.line),
            });
        }
        let value = unquote(value.trim()).trim().to_string();
        entries.insert(known, Entry { line, value });
    }
    let take = |key: &'static str| entries.get(key).ok_or(ScenarioError::MissingKey(key));
    for key in KEYS.iter().filter(|k| **k != "b_decomp") {
        take(key)?;
    }

    let e = take("vars")?;
    let vars = parse_vars(&e.value).map_err(|m| e.error("vars", m))?;
    let poly = |key: &str, e: &Entry, text: &str| parse_polynomial(text, &vars).map_err(|m| e.error(key, m));
    let poly_list = |key: &'static str| -> Result<Vec<Polynomial>, ScenarioError> {
        let e = take(key)?;
        split_list(&e.value)
            .map_err(|m| e.error(key, m))?
            .into_iter()
            .map(|t| poly(key, e, t))
            .collect()
    };
    let count = |key: &'static str| -> Result<usize, ScenarioError> {
        let e = take(key)?;
        e.value.parse().map_err(|_| e.error(key, format!("`{}` is not a non-negative integer", e.value)))
    };

    let f = poly_list("f")?;
    let p = count("p")?;
    if p != f.len() {
        return Err(take("p")?.error("p", format!("p is {p} but f lists {} entries", f.len())));
    }
    let e = take("fnext")?;
    let fnext = poly("fnext", e, &e.value)?;
    let order = count("order")?;
    let e = take("deform_g")?;
    let (deform_num, deform_den) = parse_fraction(&e.value, &vars).map_err(|m| e.error("deform_g", m))?;
    let a = poly_list("a")?;
    let b_decomp = match entries.get("b_decomp") {
        Some(_) => Some(poly_list("b_decomp")?),
        None => None,
    };

    Scenario::new(ScenarioSpec {
        vars: vars.clone(),
        f,
        fnext,
        order,
        deform_num,
        deform_den,
        a,
        b_decomp,
    })
    .map_err(|e| ScenarioError::Invariant(e.to_string()))
}

pub fn parse_scenario(path: &Path) -> Result<Scenario, ScenarioError> {
    let text = std::fs::read_to_string(path).map_err(|e| ScenarioError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_scenario_text(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const WORKED: &str = "vars: x y\np: 1\nf: x\nfnext: y\norder: 1\ndeform_g: 1/(x+y)\na: 1\nb_decomp: 1\n";

    #[test]
    fn worked_case_parses() {
        let s = parse_scenario_text(WORKED).unwrap();
        assert_eq!(s.p(), 1);
        assert_eq!(s.deformation().to_string(), "1/(x + y)");
        assert_eq!(ScenarioEcho::of(&s).b_decomp, Some(vec!["1".to_string()]));
    }

    #[test]
    fn comments_quotes_and_blank_lines() {
        let text = "# header\n\nvars: \"x y\"   # two variables\np: 1\nf: \"x\"\nfnext: y\norder: 2\ndeform_g: x/(1+y)\na: 1 | y\n";
        let s = parse_scenario_text(text).unwrap();
        assert_eq!(s.a().len(), 2);
        assert!(s.b_decomp().is_none());
    }

    #[test]
    fn missing_key() {
        let text = WORKED.replace("fnext: y\n", "");
        assert_eq!(parse_scenario_text(&text).unwrap_err().to_string(), "missing key: fnext");
    }

    #[test]
    fn non_regular_sequence() {
        let text = WORKED.replace("p: 1", "p: 2").replace("f: x\n", "f: x | x*y\n");
        let err = parse_scenario_text(&text).unwrap_err();
        assert!(matches!(err, ScenarioError::Invariant(_)));
        assert!(err.to_string().contains("not a regular sequence"), "{err}");
    }

    #[test]
    fn diagnostics_name_line_and_key() {
        let text = WORKED.replace("fnext: y", "fnext: y + w");
        assert_eq!(
            parse_scenario_text(&text).unwrap_err(),
            ScenarioError::Value {
                line: 4,
                key: "fnext".into(),
                message: "unknown variable `w` at byte 4".into()
            }
        );
        let text = WORKED.replace("p: 1", "p: 2");
        let err = parse_scenario_text(&text).unwrap_err().to_string();
        assert_eq!(err, "line 2, key p: p is 2 but f lists 1 entries");
        let err = parse_scenario_text(&format!("{WORKED}colour: red\n")).unwrap_err();
        assert_eq!(err.to_string(), "line 9: unknown key `colour`");
        let err = parse_scenario_text(&format!("{WORKED}order: 2\n")).unwrap_err();
        assert_eq!(err.to_string(), "line 9: key `order` already given on line 5");
        let err = parse_scenario_text(&WORKED.replace("order: 1", "order: one")).unwrap_err();
        assert_eq!(err.to_string(), "line 5, key order: `one` is not a non-negative integer");
        let err = parse_scenario_text(&WORKED.replace("a: 1", "a: 1 |")).unwrap_err();
        assert_eq!(err.to_string(), "line 7, key a: empty list entry");
    }

    #[test]
    fn zero_order_is_an_invariant_violation() {
        let err = parse_scenario_text(&WORKED.replace("order: 1", "order: 0")).unwrap_err();
        assert!(matches!(err, ScenarioError::Invariant(_)));
    }

    #[test]
    fn variable_declarations() {
        assert!(parse_vars("x, y z").is_ok());
        assert!(parse_vars("x x").is_err());
        assert!(parse_vars("1x").is_err());
        assert!(parse_vars("  ").is_err());
    }
}
