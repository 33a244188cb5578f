//! Report types shared by every bound and criterion.

use std::cmp::Ordering;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::numeric::{self, Bracket, Rational};

/// Outcome of a bracket-certified comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certified {
    Holds,
    Violated,
    /// The enclosures overlap at the requested tolerance.
    Unknown,
}

/// Verdict attached to a [`BoundReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Satisfied,
    Unsatisfied,
    /// Only a threshold was requested; nothing to compare against.
    ThresholdOnly,
    Unknown,
}

/// A computed threshold. Serialized untagged: a bare integer, a
/// `{"num","den"}` rational, or a `{"lo","hi"}` bracket.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Threshold {
    Integer(#[serde(with = "numeric::bigint")] BigInt),
    Rational(Rational),
    Bracket(Bracket),
}

impl Threshold {
    /// Smallest enclosure of the value.
    pub fn bracket(&self) -> Bracket {
        match self {
            Threshold::Integer(n) => Bracket::exact(Rational::from(n.clone())),
            Threshold::Rational(q) => Bracket::exact(q.clone()),
            Threshold::Bracket(b) => b.clone(),
        }
    }

    /// Upper end; the safe side for "m must be at least this".
    pub fn hi(&self) -> Rational {
        self.bracket().hi().clone()
    }

    /// Least integer `m` with `m >= value` for every value in the enclosure.
    pub fn ceil(&self) -> BigInt {
        self.hi().ceil()
    }
}

impl From<BigInt> for Threshold {
    fn from(n: BigInt) -> Self {
        Threshold::Integer(n)
    }
}

impl From<Rational> for Threshold {
    fn from(q: Rational) -> Self {
        Threshold::Rational(q)
    }
}

impl From<Bracket> for Threshold {
    fn from(b: Bracket) -> Self {
        match b.exact_value() {
            Some(q) => Threshold::Rational(q.clone()),
            None => Threshold::Bracket(b),
        }
    }
}

/// One inequality inside a report: `lhs > rhs` or `lhs >= rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Threshold>,
    pub rhs: Threshold,
    pub strict: bool,
    pub outcome: Certified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundReport {
    pub theorem: String,
    pub inputs: serde_json::Map<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<Threshold>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl BoundReport {
    pub fn new(theorem: impl Into<String>) -> Self {
        BoundReport {
            theorem: theorem.into(),
            inputs: serde_json::Map::new(),
            threshold: None,
            verdict: Verdict::ThresholdOnly,
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn input(mut self, key: &str, value: impl Serialize) -> Self {
        let v = serde_json::to_value(value).unwrap_or(serde_json::Value::Null);
        self.inputs.insert(key.to_string(), v);
        self
    }

    pub fn with_threshold(mut self, t: impl Into<Threshold>) -> Self {
        self.threshold = Some(t.into());
        self
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }

    pub fn push_check(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Verdict from the checks: satisfied iff every check holds.
    pub fn conclude(mut self) -> Self {
        self.verdict = combine(self.checks.iter().map(|c| c.outcome));
        self
    }
}

/// Conjunction of certified outcomes.
pub fn combine(outcomes: impl IntoIterator<Item = Certified>) -> Verdict {
    let mut unknown = false;
    for o in outcomes {
        match o {
            Certified::Violated => return Verdict::Unsatisfied,
            Certified::Unknown => unknown = true,
            Certified::Holds => {}
        }
    }
    if unknown {
        Verdict::Unknown
    } else {
        Verdict::Satisfied
    }
}

/// Order of two enclosures when it is certain.
pub fn cmp_brackets(a: &Bracket, b: &Bracket) -> Option<Ordering> {
    if a.hi() < b.lo() {
        Some(Ordering::Less)
    } else if a.lo() > b.hi() {
        Some(Ordering::Greater)
    } else if a.is_exact() && b.is_exact() && a.lo() == b.lo() {
        Some(Ordering::Equal)
    } else {
        None
    }
}

/// Certifies `a > b` (strict) or `a >= b`.
pub fn certify_ge(a: &Bracket, b: &Bracket, strict: bool) -> Certified {
    if strict {
        if a.lo() > b.hi() {
            Certified::Holds
        } else if a.hi() <= b.lo() {
            Certified::Violated
        } else {
            Certified::Unknown
        }
    } else if a.lo() >= b.hi() {
        Certified::Holds
    } else if a.hi() < b.lo() {
        Certified::Violated
    } else {
        Certified::Unknown
    }
}

pub fn certified_from_bool(b: bool) -> Certified {
    if b {
        Certified::Holds
    } else {
        Certified::Violated
    }
}
