//! Identity verification: generating-function oracles, Abel summation, sample
//! points, per-theorem checks and report records.

pub mod abel;
pub mod oracle;
pub mod report;
pub mod sample;
pub mod theorems;

use crate::moments::MomentProfile;
use crate::rational::Rational;

pub use oracle::{gf_oracle, GfId};
pub use report::{Mode, Record, TheoremVerdict, Value, Variant, VerificationReport};
pub use sample::sample_points;
pub use theorems::{certify_grid, run_suite, verify_theorem, verify_theorem_with, TheoremId, TheoremRun, VerifyConfig};

/// Free variables of an identity. `r` is only read by the r-derangement
/// theorems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalPoint {
    pub lambda: Rational,
    pub x: Rational,
    pub profile: MomentProfile,
    pub r: usize,
}

impl EvalPoint {
    pub fn new(lambda: Rational, x: Rational, profile: MomentProfile) -> Self {
        EvalPoint { lambda, x, profile, r: 0 }
    }

    pub fn with_r(mut self, r: usize) -> Self {
        self.r = r;
        self
    }
}
