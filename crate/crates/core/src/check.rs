//! Outcome records for individual identity checks.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

use num_bigint::BigInt;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The smallest exponent at which two sides of a check disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub exponent: i64,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^{}: {} != {}", self.exponent, self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ParamValue {
    Int(i64),
    Text(String),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(v) => write!(f, "{v}"),
            ParamValue::Text(s) => f.write_str(s),
        }
    }
}

impl From<i64> for ParamValue {
    fn from(v: i64) -> Self {
        ParamValue::Int(v)
    }
}

impl From<&str> for ParamValue {
    fn from(v: &str) -> Self {
        ParamValue::Text(v.to_owned())
    }
}

impl From<String> for ParamValue {
    fn from(v: String) -> Self {
        ParamValue::Text(v)
    }
}

/// Result of one verification. A failing result always carries a
/// discrepancy; an erroring one carries a message in `detail`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub id: String,
    pub params: BTreeMap<String, ParamValue>,
    pub status: Status,
    pub first_discrepancy: Option<Discrepancy>,
    pub detail: Option<String>,
    pub elapsed: Duration,
}

impl CheckResult {
    pub fn pass(id: impl Into<String>) -> Self {
        Self::with_status(id, Status::Pass, None, None)
    }

    pub fn fail(id: impl Into<String>, discrepancy: Discrepancy) -> Self {
        Self::with_status(id, Status::Fail, Some(discrepancy), None)
    }

    pub fn error(id: impl Into<String>, err: &Error) -> Self {
        Self::with_status(id, Status::Error, None, Some(err.to_string()))
    }

    fn with_status(
        id: impl Into<String>,
        status: Status,
        first_discrepancy: Option<Discrepancy>,
        detail: Option<String>,
    ) -> Self {
        CheckResult {
            id: id.into(),
            params: BTreeMap::new(),
            status,
            first_discrepancy,
            detail,
            elapsed: Duration::ZERO,
        }
    }

    /// Converts a fallible check into a result, recording errors as `status=error`.
    pub fn from_outcome(id: &str, outcome: crate::Result<CheckResult>) -> Self {
        match outcome {
            Ok(r) => r.with_id(id),
            Err(e) => CheckResult::error(id, &e),
        }
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn with_param(mut self, key: &str, value: impl Into<ParamValue>) -> Self {
        self.params.insert(key.to_owned(), value.into());
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    /// Combines sub-checks: passes iff every part passes, otherwise reports
    /// the first non-passing part.
    pub fn all(id: &str, parts: impl IntoIterator<Item = CheckResult>) -> Self {
        for part in parts {
            if !part.is_pass() {
                let label = part.id.clone();
                let mut out = part.with_id(id);
                if out.detail.is_none() && !label.is_empty() && label != id {
                    out.detail = Some(label);
                }
                return out;
            }
        }
        CheckResult::pass(id)
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<5} {}", self.status.as_str().to_uppercase(), self.id)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        if let Some(d) = &self.first_discrepancy {
            write!(f, " [{d}]")?;
        }
        if let Some(msg) = &self.detail {
            write!(f, " ({msg})")?;
        }
        Ok(())
    }
}
