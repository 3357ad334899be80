//! Arithmetic certificates and their replayer.
//!
//! An identity is a relation between two sums of products of integers. A
//! certificate stores each identity with the verdict computed when the
//! check ran; [`replay`] recomputes every identity from the stored numbers
//! alone.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "!=")]
    Ne,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = ">=")]
    Ge,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Ne => "!=",
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Gt => ">",
            Relation::Ge => ">=",
        }
    }

    fn holds(self, a: &BigInt, b: &BigInt) -> bool {
        match self {
            Relation::Eq => a == b,
            Relation::Ne => a != b,
            Relation::Le => a <= b,
            Relation::Lt => a < b,
            Relation::Gt => a > b,
            Relation::Ge => a >= b,
        }
    }
}

/// `Σ Π lhs  relation  Σ Π rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Identity {
    pub label: String,
    pub lhs: Vec<Vec<i64>>,
    pub relation: Relation,
    pub rhs: Vec<Vec<i64>>,
    pub holds: bool,
}

fn sum_of_products(terms: &[Vec<i64>]) -> BigInt {
    terms
        .iter()
        .map(|t| t.iter().fold(BigInt::one(), |acc, x| acc * BigInt::from(*x)))
        .sum()
}

fn render_side(terms: &[Vec<i64>]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|t| t.iter().map(i64::to_string).collect::<Vec<_>>().join("·"))
        .collect::<Vec<_>>()
        .join(" + ")
}

impl Identity {
    pub fn new(label: impl Into<String>, lhs: Vec<Vec<i64>>, relation: Relation, rhs: Vec<Vec<i64>>) -> Self {
        let mut id = Identity {
            label: label.into(),
            lhs,
            relation,
            rhs,
            holds: false,
        };
        id.holds = id.evaluate();
        id
    }

    pub fn evaluate(&self) -> bool {
        self.relation
            .holds(&sum_of_products(&self.lhs), &sum_of_products(&self.rhs))
    }

    /// `2·64 + 1 = 129  [129 = 129]`-style rendering; the bracketed totals
    /// show `!` before the relation when it fails.
    pub fn render(&self) -> String {
        let mark = if self.evaluate() { "" } else { "!" };
        format!(
            "{} {} {}  [{} {mark}{} {}]",
            render_side(&self.lhs),
            self.relation.symbol(),
            render_side(&self.rhs),
            sum_of_products(&self.lhs),
            self.relation.symbol(),
            sum_of_products(&self.rhs)
        )
    }
}

/// A non-arithmetic assertion (a character equality, a verdict shape);
/// replay takes its recorded outcome as given.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub label: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub identities: Vec<Identity>,
    pub claims: Vec<Claim>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Certificate {
    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(|i| i.holds) && self.claims.iter().all(|c| c.holds)
    }
}

/// Recomputes every identity of a serialized report entry. Returns whether
/// each recorded outcome matches the recomputation and the recorded status
/// matches the outcomes.
pub fn replay(report: &Value) -> Result<bool> {
    let status = report
        .get("status")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::MissingData("status of a report entry".into()))?;
    let cert: Certificate = serde_json::from_value(report.get("certificate").cloned().unwrap_or(Value::Null))?;
    let mut consistent = true;
    for id in &cert.identities {
        if id.evaluate() != id.holds {
            consistent = false;
        }
    }
    let all_hold = cert.all_hold();
    let status_ok = match status {
        "pass" => all_hold && cert.error.is_none() && !cert.identities.is_empty(),
        "fail" => !all_hold || cert.error.is_some(),
        "data-missing" => cert.error.is_some(),
        _ => false,
    };
    Ok(consistent && status_ok)
}
