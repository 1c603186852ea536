//! Structured records of checked inequalities.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::Rational;

/// A reported quantity. Rationals serialize as `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Int(i128),
    Rational(Rational),
    Text(String),
    Bool(bool),
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i128)
    }
}

impl From<i128> for Value {
    fn from(v: i128) -> Self {
        Value::Int(v)
    }
}

impl From<Rational> for Value {
    fn from(v: Rational) -> Self {
        Value::Rational(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl core::fmt::Display for Value {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Rational(r) => write!(f, "{r}"),
            Value::Text(t) => f.write_str(t),
            Value::Bool(b) => write!(f, "{b}"),
        }
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Value {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        match self {
            Value::Int(v) => s.serialize_i128(*v),
            Value::Rational(r) => s.serialize_str(&crate::rational_string(r)),
            Value::Text(t) => s.serialize_str(t),
            Value::Bool(b) => s.serialize_bool(*b),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Param {
    pub name: String,
    pub value: Value,
}

/// One inequality (or equality) and whether it held.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub observed: Value,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub bound: Option<Value>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct VerificationReport {
    /// Identifier of the result being checked, e.g. `"thm38"`.
    pub anchor: String,
    pub subject: String,
    pub passed: bool,
    pub params: Vec<Param>,
    pub checks: Vec<Check>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Vec::is_empty"))]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(anchor: &str, subject: impl Into<String>) -> Self {
        VerificationReport {
            anchor: anchor.to_string(),
            subject: subject.into(),
            passed: true,
            params: Vec::new(),
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn param(&mut self, name: &str, value: impl Into<Value>) -> &mut Self {
        self.params.push(Param { name: name.to_string(), value: value.into() });
        self
    }

    /// Records `observed <= bound` style checks; `holds` is computed by the caller.
    pub fn check(
        &mut self,
        name: &str,
        holds: bool,
        observed: impl Into<Value>,
        bound: Option<Value>,
        witness: Option<String>,
    ) -> bool {
        self.passed &= holds;
        self.checks.push(Check { name: name.to_string(), holds, observed: observed.into(), bound, witness });
        holds
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn passed(&self) -> bool {
        self.passed
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.holds)
    }

    pub fn find_check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn get_param(&self, name: &str) -> Option<&Value> {
        self.params.iter().find(|p| p.name == name).map(|p| &p.value)
    }
}
