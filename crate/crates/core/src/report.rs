//! Structured outcome of a verification run, shared by the CLI text and
//! JSON outputs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::expr::render;
use crate::ncalg::{Alphabet, NCElement};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: CoeffJson,
    pub word: Vec<String>,
}

/// Terms in display order with rendered numerator and denominator.
pub fn terms_json(e: &NCElement, alphabet: &Alphabet) -> Vec<TermJson> {
    e.display_terms()
        .into_iter()
        .map(|(w, c)| TermJson {
            coeff: CoeffJson {
                num: c.num().to_string(),
                den: c.den().to_string(),
            },
            word: w
                .letters()
                .iter()
                .map(|&g| alphabet.name(g).to_string())
                .collect(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<TermJson>>,
    pub checks: Vec<Check>,
    pub meta: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            pass: true,
            result: None,
            terms: None,
            checks: Vec::new(),
            meta: BTreeMap::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.pass &= pass;
        self.checks.push(Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn meta(&mut self, key: &str, value: impl Into<Value>) {
        self.meta.insert(key.to_string(), value.into());
    }

    pub fn set_element(&mut self, e: &NCElement, alphabet: &Alphabet) {
        self.result = Some(render(e, alphabet));
        self.terms = Some(terms_json(e, alphabet));
    }

    /// Appends another report's checks under a name prefix.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for c in other.checks {
            self.check(format!("{prefix}{}", c.name), c.pass, c.detail);
        }
        for (k, v) in other.meta {
            self.meta.insert(format!("{prefix}{k}"), v);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let status = if self.pass { "PASS" } else { "FAIL" };
        writeln!(s, "{}: {}", self.command, status).unwrap();
        if let Some(r) = &self.result {
            writeln!(s, "{r}").unwrap();
        }
        for c in &self.checks {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(s, "[{mark}] {}", c.name).unwrap();
            } else {
                writeln!(s, "[{mark}] {}: {}", c.name, c.detail).unwrap();
            }
        }
        for (k, v) in &self.meta {
            match v {
                Value::String(t) => writeln!(s, "# {k}: {t}").unwrap(),
                other => writeln!(s, "# {k}: {other}").unwrap(),
            }
        }
        s
    }
}
