//! Verification records and their flat serialized form.

use std::fmt;

use dashu_float::DBig;
use serde::{Deserialize, Serialize};

use crate::rational::{format_rational, Rational};
use crate::verify::abel::format_decimal;
use crate::verify::theorems::TheoremId;
use crate::verify::EvalPoint;

/// Significant digits used when a decimal crosses the report boundary.
pub const DECIMAL_DIGITS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Abel,
}

/// Which reading of a statement a record checks, for statements whose
/// printed form and derivation disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Printed,
    Derived,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Printed => "printed",
            Variant::Derived => "derived",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(Rational),
    Decimal(DBig),
    /// The side could not be evaluated; the message says why.
    Unavailable(String),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(q) => f.write_str(&format_rational(q)),
            Value::Decimal(d) => f.write_str(&format_decimal(d, DECIMAL_DIGITS)),
            Value::Unavailable(why) => write!(f, "unavailable: {why}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub point_index: usize,
    pub point: EvalPoint,
    pub n: usize,
    /// Which equality of the statement this record checks.
    pub form: &'static str,
    pub variant: Option<Variant>,
    pub mode: Mode,
    pub lhs: Value,
    pub rhs: Value,
    /// `lhs - rhs` in exact mode, `|lhs - rhs|` in abel mode.
    pub residual: Value,
    pub tolerance: Option<DBig>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn record(&self) -> Record {
        Record {
            theorem: self.theorem.to_string(),
            point: self.point_index,
            lambda: format_rational(&self.point.lambda),
            x: format_rational(&self.point.x),
            dist: self.point.profile.to_string(),
            r: self.point.r,
            n: self.n,
            form: self.form.to_string(),
            variant: self.variant.map(|v| v.to_string()).unwrap_or_default(),
            mode: self.mode,
            lhs: self.lhs.to_string(),
            rhs: self.rhs.to_string(),
            residual: self.residual.to_string(),
            tolerance: self
                .tolerance
                .as_ref()
                .map_or_else(|| "0".to_string(), |t| format_decimal(t, 3)),
            pass: self.pass,
        }
    }
}

/// One flat row per check; rationals as `num/den`, decimals in scientific
/// notation with fixed significant digits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub theorem: String,
    pub point: usize,
    pub lambda: String,
    pub x: String,
    pub dist: String,
    pub r: usize,
    pub n: usize,
    pub form: String,
    pub variant: String,
    pub mode: Mode,
    pub lhs: String,
    pub rhs: String,
    pub residual: String,
    pub tolerance: String,
    pub pass: bool,
}

impl Record {
    pub const HEADER: [&'static str; 15] = [
        "theorem", "point", "lambda", "x", "dist", "r", "n", "form", "variant", "mode", "lhs", "rhs",
        "residual", "tolerance", "pass",
    ];
}

/// Summary of every record produced for one theorem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremVerdict {
    pub theorem: TheoremId,
    pub checks: usize,
    /// Failing records outside the variant sweep.
    pub failures: usize,
    /// Set when the theorem carries competing readings.
    pub swept: bool,
    /// The reading that held at every record, preferring the derivation's.
    pub canonical: Option<Variant>,
    pub pass: bool,
}

impl TheoremVerdict {
    pub fn from_reports(theorem: TheoremId, reports: &[VerificationReport]) -> Self {
        let failures = reports.iter().filter(|r| r.variant.is_none() && !r.pass).count();
        let holds = |v: Variant| {
            let mut seen = false;
            for r in reports.iter().filter(|r| r.variant == Some(v)) {
                seen = true;
                if !r.pass {
                    return false;
                }
            }
            seen
        };
        let swept = reports.iter().any(|r| r.variant.is_some());
        let canonical = if !swept {
            None
        } else if holds(Variant::Derived) {
            Some(Variant::Derived)
        } else if holds(Variant::Printed) {
            Some(Variant::Printed)
        } else {
            None
        };
        TheoremVerdict {
            theorem,
            checks: reports.len(),
            failures,
            swept,
            canonical,
            pass: failures == 0 && (!swept || canonical.is_some()),
        }
    }
}

impl fmt::Display for TheoremVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "theorem {}: {} ({} checks, {} failures",
            self.theorem,
            if self.pass { "pass" } else { "FAIL" },
            self.checks,
            self.failures
        )?;
        if self.swept {
            match self.canonical {
                Some(v) => write!(f, ", {v} variant holds")?,
                None => write!(f, ", no variant holds")?,
            }
        }
        f.write_str(")")
    }
}
