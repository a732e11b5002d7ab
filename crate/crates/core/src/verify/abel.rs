//! Abel summation of classically divergent series in high-precision decimal
//! arithmetic, with Richardson extrapolation toward radius 1.
//!
//! For each radius `r` the damped partial sums `Σ a_m r^m` are accumulated
//! until the damped terms fall below the tail threshold; the resulting values
//! `f(r)` are then extrapolated to `h = 1 - r = 0` by a polynomial fit.

use dashu_float::ops::Abs;
use dashu_float::DBig;
use dashu_int::IBig;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Environment variable overriding the working precision (decimal digits).
pub const PRECISION_ENV: &str = "PROBDERANGE_ABEL_DIGITS";
pub const DEFAULT_DIGITS: usize = 50;

/// Working precision: `PROBDERANGE_ABEL_DIGITS` when set to a positive
/// integer, else 50.
pub fn working_digits() -> usize {
    std::env::var(PRECISION_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&d| d > 0)
        .unwrap_or(DEFAULT_DIGITS)
}

/// Decimal with `digits` significant digits.
pub fn decimal(q: &Rational, digits: usize) -> DBig {
    let num: IBig = q.numer().to_string().parse().expect("integer text");
    let den: IBig = q.denom().to_string().parse().expect("integer text");
    let num = DBig::from(num).with_precision(digits).value();
    let den = DBig::from(den).with_precision(digits).value();
    num / den
}

/// Parses a decimal literal such as `0.999` or `1e-6` at the given precision.
pub fn parse_decimal(s: &str, digits: usize) -> Result<DBig> {
    let v: DBig = s
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("not a decimal: {s:?}")))?;
    Ok(v.with_precision(digits).value())
}

/// Scientific rendering with `sig` significant digits.
pub fn format_decimal(v: &DBig, sig: usize) -> String {
    format!("{:.*e}", sig.saturating_sub(1), v)
}

#[derive(Debug, Clone)]
pub struct AbelConfig {
    /// Strictly increasing radii in `(0, 1)`.
    pub radii: Vec<DBig>,
    /// Degree of the extrapolating polynomial in `1 - r`.
    pub extrapolation_order: usize,
    /// A radius is finished once this many consecutive damped terms lie below
    /// `tail`.
    pub tail: DBig,
    pub tail_window: usize,
    pub min_terms: usize,
    /// Hard cap per radius; reaching it at any radius is a summability failure.
    pub max_terms: usize,
    pub tolerance: DBig,
    pub digits: usize,
}

impl AbelConfig {
    pub fn with_digits(digits: usize) -> Self {
        let d = |s: &str| parse_decimal(s, digits).expect("literal");
        AbelConfig {
            // order 3 on 0.90/0.95/0.99/0.999 alone misses 1e-6 by n = 6
            radii: ["0.90", "0.95", "0.98", "0.99", "0.995", "0.999"].iter().map(|s| d(s)).collect(),
            extrapolation_order: 5,
            tail: d("1e-20"),
            tail_window: 16,
            min_terms: 64,
            max_terms: 5_000_000,
            tolerance: d("1e-6"),
            digits,
        }
    }

    fn validate(&self) -> Result<()> {
        let zero = DBig::ZERO;
        let one = DBig::ONE;
        if self.radii.iter().any(|r| *r <= zero || *r >= one) {
            return Err(Error::Config("abel radii must lie in (0, 1)".into()));
        }
        if self.radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("abel radii must be strictly increasing".into()));
        }
        if self.radii.len() < self.extrapolation_order + 1 {
            return Err(Error::Config(format!(
                "extrapolation order {} needs at least {} radii",
                self.extrapolation_order,
                self.extrapolation_order + 1
            )));
        }
        Ok(())
    }
}

impl Default for AbelConfig {
    fn default() -> Self {
        AbelConfig::with_digits(working_digits())
    }
}

#[derive(Debug, Clone)]
pub struct AbelEstimate {
    /// Extrapolated limit as `r → 1⁻`.
    pub value: DBig,
    /// Difference between the top two extrapolation orders.
    pub error: DBig,
    /// `f(r)` for each radius.
    pub damped_sums: Vec<DBig>,
    pub terms_used: Vec<usize>,
}

/// Abel-sums the sequence produced by `term(m)`, `m = 0, 1, 2, ...`. Terms are
/// requested once each and in order.
pub fn abel_sum<F>(mut term: F, cfg: &AbelConfig) -> Result<AbelEstimate>
where
    F: FnMut(usize) -> DBig,
{
    cfg.validate()?;
    let p = cfg.digits;
    let k = cfg.radii.len();
    let radii: Vec<DBig> = cfg.radii.iter().map(|r| r.clone().with_precision(p).value()).collect();
    let mut weight: Vec<DBig> = vec![DBig::ONE.with_precision(p).value(); k];
    let mut sums: Vec<DBig> = vec![DBig::ZERO.with_precision(p).value(); k];
    let mut quiet = vec![0usize; k];
    let mut done: Vec<Option<usize>> = vec![None; k];

    let mut m = 0usize;
    while done.iter().any(Option::is_none) {
        if m >= cfg.max_terms {
            return Err(Error::NonSummable(format!(
                "damped terms still above {} after {} terms at radius {}",
                format_decimal(&cfg.tail, 3),
                cfg.max_terms,
                radii[done.iter().position(Option::is_none).unwrap_or(k - 1)]
            )));
        }
        let a = term(m).with_precision(p).value();
        for i in 0..k {
            if done[i].is_some() {
                continue;
            }
            let damped = &a * &weight[i];
            let small = damped.clone().abs() < cfg.tail;
            sums[i] = &sums[i] + &damped;
            weight[i] = &weight[i] * &radii[i];
            quiet[i] = if small { quiet[i] + 1 } else { 0 };
            if m + 1 >= cfg.min_terms && quiet[i] >= cfg.tail_window {
                done[i] = Some(m + 1);
            }
        }
        m += 1;
    }

    let one = DBig::ONE.with_precision(p).value();
    let hs: Vec<DBig> = radii.iter().map(|r| &one - r).collect();
    let (value, error) = richardson(&hs, &sums, cfg.extrapolation_order);
    Ok(AbelEstimate {
        value,
        error,
        damped_sums: sums,
        terms_used: done.into_iter().map(|d| d.unwrap_or(0)).collect(),
    })
}

// Neville evaluation at h = 0 of the degree-`order` interpolant through the
// last `order + 1` samples (those closest to h = 0).
fn neville_at_zero(hs: &[DBig], values: &[DBig]) -> DBig {
    let mut p: Vec<DBig> = values.to_vec();
    let n = hs.len();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &hs[i - j] * &p[i] - &hs[i] * &p[i - 1];
            p[i] = num / (&hs[i - j] - &hs[i]);
        }
    }
    p[n - 1].clone()
}

/// Polynomial extrapolation of `values(h)` to `h = 0`; returns the estimate and
/// its distance from the next lower order.
pub fn richardson(hs: &[DBig], values: &[DBig], order: usize) -> (DBig, DBig) {
    let n = hs.len();
    let take = (order + 1).min(n);
    let hi = neville_at_zero(&hs[n - take..], &values[n - take..]);
    let error = if take >= 2 {
        let lo = neville_at_zero(&hs[n - take + 1..], &values[n - take + 1..]);
        (&hi - &lo).abs()
    } else {
        DBig::ZERO
    };
    (hi, error)
}

/// `|a - b|`.
pub fn abs_diff(a: &DBig, b: &DBig) -> DBig {
    (a - b).abs()
}
