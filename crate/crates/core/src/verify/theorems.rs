//! Per-theorem checks. Each routine evaluates both sides of an identity for
//! every `n` in `0..=n_max`, taking closed forms on one side and
//! generating-function oracles on the other wherever the statement allows.

use std::fmt;
use std::str::FromStr;

use dashu_float::ops::Abs;
use dashu_float::DBig;
use num_traits::{One, Zero};

use crate::combinatorics::{
    derangement_deg_poly, derangement_poly, falling_deg, triangle, TriangleKind,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::moments::{mgf_series, shifted_rising_moment, Sign};
use crate::prob::{unit_falling, unit_rising, ProbContext};
use crate::rational::{binomial_q, int, pow, ratio, sign, Rational};
use crate::series::{exp_series, Series};
use crate::verify::abel::{abel_sum, abs_diff, decimal, parse_decimal, AbelConfig};
use crate::verify::oracle::{gf_oracle, GfId};
use crate::verify::report::{Mode, Value, Variant, VerificationReport};
use crate::verify::sample::sample_points;
use crate::verify::EvalPoint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    ShiftedRecurrence,
    ExplicitSum,
    StirlingExpansion,
    FubiniExpansion,
    DerangementExpansion,
    AbelIdentity,
    RExplicit,
    RRecurrence,
    RInversion,
    SecondKindExplicit,
    SecondKindFubini,
    SecondKindLog,
    GammaExpansion,
}

impl TheoremId {
    pub const ALL: [TheoremId; 13] = [
        TheoremId::ShiftedRecurrence,
        TheoremId::ExplicitSum,
        TheoremId::StirlingExpansion,
        TheoremId::FubiniExpansion,
        TheoremId::DerangementExpansion,
        TheoremId::AbelIdentity,
        TheoremId::RExplicit,
        TheoremId::RRecurrence,
        TheoremId::RInversion,
        TheoremId::SecondKindExplicit,
        TheoremId::SecondKindFubini,
        TheoremId::SecondKindLog,
        TheoremId::GammaExpansion,
    ];

    /// Position in [`TheoremId::ALL`].
    pub fn ordinal(self) -> usize {
        self as usize
    }

    pub fn uses_r(self) -> bool {
        matches!(self, TheoremId::RExplicit | TheoremId::RRecurrence | TheoremId::RInversion)
    }

    /// Checks that only touch closed forms accept λ = 0.
    pub fn needs_nonzero_lambda(self) -> bool {
        self != TheoremId::GammaExpansion
    }

    /// Parses `2.7`, `t2.7` or `all`.
    pub fn parse_list(s: &str) -> Result<Vec<TheoremId>> {
        if s.trim().eq_ignore_ascii_case("all") {
            return Ok(TheoremId::ALL.to_vec());
        }
        s.split(',').map(|p| p.parse()).collect()
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2.{}", self.ordinal() + 1)
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches(['t', 'T']);
        TheoremId::ALL
            .into_iter()
            .find(|id| id.to_string() == t)
            .ok_or_else(|| Error::Unknown(format!("theorem {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub abel: AbelConfig,
    /// Largest `n` for which the Abel half of the Euler-Bell identity is attempted.
    pub abel_n_max: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            abel: AbelConfig::default(),
            abel_n_max: 6,
        }
    }
}

struct Check<'a> {
    id: TheoremId,
    index: usize,
    point: &'a EvalPoint,
    out: Vec<VerificationReport>,
}

impl Check<'_> {
    fn exact(&mut self, n: usize, form: &'static str, variant: Option<Variant>, lhs: Rational, rhs: Rational) {
        let residual = &lhs - &rhs;
        let pass = residual.is_zero();
        self.out.push(VerificationReport {
            theorem: self.id,
            point_index: self.index,
            point: self.point.clone(),
            n,
            form,
            variant,
            mode: Mode::Exact,
            lhs: Value::Exact(lhs),
            rhs: Value::Exact(rhs),
            residual: Value::Exact(residual),
            tolerance: None,
            pass,
        });
    }
}

// egf coefficients 0..=order of an oracle series
fn oracle_values(id: GfId, point: &EvalPoint, order: usize) -> Result<Vec<Rational>> {
    let s = gf_oracle(id, point, order)?;
    Ok((0..=order).map(|n| s.egf_coeff(n)).collect())
}

fn at_x(point: &EvalPoint, x: Rational) -> EvalPoint {
    EvalPoint { x, ..point.clone() }
}

/// Reports for one theorem at one point, `n = 0..=n_max`.
pub fn verify_theorem(id: TheoremId, point: &EvalPoint, n_max: usize) -> Result<Vec<VerificationReport>> {
    verify_theorem_with(id, point, n_max, 0, &VerifyConfig::default())
}

pub fn verify_theorem_with(
    id: TheoremId,
    point: &EvalPoint,
    n_max: usize,
    point_index: usize,
    cfg: &VerifyConfig,
) -> Result<Vec<VerificationReport>> {
    if id == TheoremId::GammaExpansion && !point.profile.is_unit_gamma() {
        return Err(Error::Precondition(format!(
            "theorem {id} requires Y ~ Gamma(1,1), got {}",
            point.profile
        )));
    }
    if id.needs_nonzero_lambda() && point.lambda.is_zero() {
        return Err(Error::Precondition(format!("theorem {id} is checked against series oracles and needs λ ≠ 0")));
    }
    let mut c = Check { id, index: point_index, point, out: Vec::new() };
    match id {
        TheoremId::ShiftedRecurrence => shifted_recurrence(&mut c, n_max)?,
        TheoremId::ExplicitSum => explicit_sum(&mut c, n_max)?,
        TheoremId::StirlingExpansion => stirling_expansion(&mut c, n_max)?,
        TheoremId::FubiniExpansion => fubini_expansion(&mut c, n_max)?,
        TheoremId::DerangementExpansion => derangement_expansion(&mut c, n_max)?,
        TheoremId::AbelIdentity => abel_identity(&mut c, n_max, cfg)?,
        TheoremId::RExplicit => r_explicit(&mut c, n_max)?,
        TheoremId::RRecurrence => r_recurrence(&mut c, n_max)?,
        TheoremId::RInversion => r_inversion(&mut c, n_max)?,
        TheoremId::SecondKindExplicit => second_kind_explicit(&mut c, n_max)?,
        TheoremId::SecondKindFubini => second_kind_fubini(&mut c, n_max)?,
        TheoremId::SecondKindLog => second_kind_log(&mut c, n_max)?,
        TheoremId::GammaExpansion => gamma_expansion(&mut c, n_max)?,
    }
    Ok(c.out)
}

fn context(p: &EvalPoint, n_max: usize) -> ProbContext {
    ProbContext::new(p.profile.clone(), p.lambda.clone(), n_max)
}

// E[(x-Y)_n] = d_n(x) - n d_{n-1}(x). The printed statement drops λ from the
// second term; that reading is evaluated with λ = 0 there.
fn shifted_recurrence(c: &mut Check, n_max: usize) -> Result<()> {
    let p = c.point;
    let ctx = context(p, n_max);
    let shifted = ctx.shifted_moments(&p.x);
    let d = oracle_values(GfId::DProb, p, n_max)?;
    let d0 = oracle_values(GfId::DProb, &at_x(p, int(0)), n_max)?;
    let classical = ProbContext::new(p.profile.clone(), Rational::zero(), n_max).derange_prob_all(&p.x);
    for n in 0..=n_max {
        let prev = |v: &[Rational]| if n == 0 { Rational::zero() } else { int(n as i64) * &v[n - 1] };
        c.exact(n, "recurrence", Some(Variant::Derived), shifted[n].clone(), &d[n] - prev(&d));
        c.exact(n, "recurrence", Some(Variant::Printed), shifted[n].clone(), &d[n] - prev(&classical));
        let lhs = sign(n) * ctx.rising_moment(n)?;
        c.exact(n, "recurrence x=0", None, lhs, &d0[n] - prev(&d0));
    }
    Ok(())
}

fn explicit_sum(c: &mut Check, n_max: usize) -> Result<()> {
    let p = c.point;
    let ctx = context(p, n_max);
    let d = oracle_values(GfId::DProb, p, n_max)?;
    let numbers = ctx.derange_prob_all(&Rational::zero());
    for n in 0..=n_max {
        let binomial: Rational = (0..=n)
            .map(|l| binomial_q(n, l) * &numbers[l] * falling_deg(&p.x, n - l, &p.lambda))
            .sum();
        c.exact(n, "binomial", None, d[n].clone(), binomial);
        c.exact(n, "moment sum", None, d[n].clone(), ctx.derange_prob(n, &p.x)?);
    }
    Ok(())
}

fn stirling_expansion(c: &mut Check, n_max: usize) -> Result<()> {
    let p = c.point;
    let ctx = context(p, n_max);
    let s2 = triangle(TriangleKind::Stirling2Degenerate, &p.lambda, n_max);
    let d = oracle_values(GfId::DProb, p, n_max)?;
    let shifted = ctx.shifted_moments(&p.x);
    for n in 0..=n_max {
        let mut lhs = Rational::zero();
        for j in 0..=n {
            let outer = binomial_q(n, j) * unit_falling(n - j, &p.lambda);
            for l in 0..=j {
                lhs += &outer * s2.get(j, l) * sign(l) * &d[l];
            }
        }
        let rhs: Rational = (0..=n).map(|k| &shifted[k] * sign(k) * s2.get(n, k)).sum();
        c.exact(n, "stirling expansion", None, lhs, rhs);
    }
    Ok(())
}

// {n brace k}_{Y,λ} for k = 0..=n_max from the oracle (E[e_λ^Y] - 1)^k / k!,
// indexed [n][k].
fn stirling2_prob_oracle(p: &EvalPoint, n_max: usize) -> Result<Vec<Vec<Rational>>> {
    let mut table = vec![vec![Rational::zero(); n_max + 1]; n_max + 1];
    for k in 0..=n_max {
        let s = gf_oracle(GfId::Stirling2Prob { k }, p, n_max)?;
        for (n, row) in table.iter_mut().enumerate() {
            row[k] = s.egf_coeff(n);
        }
    }
    Ok(table)
}

fn fubini_expansion(c: &mut Check, n_max: usize) -> Result<()> {
    let p = c.point;
    let ctx = context(p, n_max);
    let s2_oracle = stirling2_prob_oracle(p, n_max)?;
    let fubini_one = oracle_values(GfId::FubiniProb, &at_x(p, int(1)), n_max)?;
    let x1 = &p.x - Rational::one();
    for n in 0..=n_max {
        let lhs: Rational = (0..=n)
            .map(|l| derangement_deg_poly(l, &p.x, &p.lambda) * &s2_oracle[n][l])
            .sum();
        let mut rhs = Rational::zero();
        for j in 0..=n {
            let outer = binomial_q(n, j) * &fubini_one[n - j];
            for m in 0..=j {
                rhs += &outer * ctx.stirling2_prob(j, m)? * falling_deg(&x1, m, &p.lambda);
            }
        }
        c.exact(n, "fubini expansion", None, lhs, rhs);
    }
    Ok(())
}

fn derangement_expansion(c: &mut Check, n_max: usize) -> Result<()> {
    let p = c.point;
    let ctx = context(p, n_max);
    let s2_oracle = stirling2_prob_oracle(p, n_max)?;
    let falling = oracle_values_of(&mgf_series(&p.profile, &p.lambda, Sign::Plus, n_max));
    let d = oracle_values(GfId::DerangementDeg, p, n_max)?;
    let x1 = &p.x - Rational::one();
    for n in 0..=n_max {
        let mut lhs = Rational::zero();
        for k in 0..=n {
            lhs += sign(k) * ctx.stirling2_prob(n, k)? * falling_deg(&x1, k, &p.lambda);
        }
        let mut rhs = Rational::zero();
        for m in 0..=n {
            let outer = binomial_q(n, m) * &falling[n - m];
            for k in 0..=m {
                rhs += &outer * sign(k) * &s2_oracle[m][k] * &d[k];
            }
        }
        c.exact(n, "derangement expansion", None, lhs, rhs);
    }
    Ok(())
}

fn oracle_values_of(s: &Series) -> Vec<Rational> {
    (0..=s.order()).map(|n| s.egf_coeff(n)).collect()
}

/// `n!·[t^n]` of `2 exp((1-x)(u-1)) / (u+1)` with `u = E[e_λ^Y(t)]`, the
/// all-rational form of the Euler-Bell identity's right-hand side after `e^{1-x}` is factored
/// out.
pub fn restated_abel_target(p: &EvalPoint, n_max: usize) -> Result<Vec<Rational>> {
    let u = mgf_series(&p.profile, &p.lambda, Sign::Plus, n_max);
    let one = Series::one(n_max);
    let bell = exp_series(&(Rational::one() - &p.x), n_max).compose(&(&u - &one))?;
    let euler = Series::constant(int(2), n_max).div_series(&(&u + &one))?;
    Ok(oracle_values_of(&(&bell * &euler)))
}

fn abel_identity(c: &mut Check, n_max: usize, cfg: &VerifyConfig) -> Result<()> {
    let p = c.point;
    let ctx = context(p, n_max);
    let y = Rational::one() - &p.x;
    let restated = restated_abel_target(p, n_max)?;
    let mut lhs_all = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let lhs: Rational = (0..=n)
            .map(|m| Ok(binomial_q(n, m) * ctx.bell_prob(m, &y)? * ctx.euler_prob(n - m)?))
            .sum::<Result<Rational>>()?;
        c.exact(n, "restatement", None, lhs.clone(), restated[n].clone());
        lhs_all.push(lhs);
    }
    for n in 0..=n_max.min(cfg.abel_n_max) {
        let moments: Vec<Rational> = (0..=n).map(|m| ctx.iid_sum_moment(m, n).cloned()).collect::<Result<_>>()?;
        let target = decimal(&lhs_all[n], cfg.abel.digits);
        let (rhs, residual, pass) = match abel_rhs(&p.x, &moments, &cfg.abel) {
            Ok(rhs) => {
                let residual = abs_diff(&target, &rhs);
                let pass = residual <= cfg.abel.tolerance;
                (Value::Decimal(rhs), Value::Decimal(residual), pass)
            }
            Err(e) => (Value::Unavailable(e.to_string()), Value::Unavailable(e.to_string()), false),
        };
        c.out.push(VerificationReport {
            theorem: c.id,
            point_index: c.index,
            point: p.clone(),
            n,
            form: "abel",
            variant: None,
            mode: Mode::Abel,
            lhs: Value::Decimal(target),
            rhs,
            residual,
            tolerance: Some(cfg.abel.tolerance.clone()),
            pass,
        });
    }
    Ok(())
}

/// Forward differences `Δ^k P(0)` of the values `P(0..=n)`.
fn newton_coefficients(values: &[Rational]) -> Vec<Rational> {
    let mut row = values.to_vec();
    let mut out = Vec::with_capacity(values.len());
    while !row.is_empty() {
        out.push(row[0].clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    out
}

/// `2e^{x-1} Σ_m (-1)^m d_m(x)/m! · P(m)` by Abel summation, where `P(m)` is
/// the polynomial in `m` through `moments[m] = E[(S_m)_{n,λ}]`, `m = 0..=n`.
pub fn abel_rhs(x: &Rational, moments: &[Rational], cfg: &AbelConfig) -> Result<DBig> {
    let p = cfg.digits;
    let dec = |q: &Rational| decimal(q, p);
    let newton: Vec<DBig> = newton_coefficients(moments).iter().map(dec).collect();
    let shift = dec(&(x - Rational::one()));
    let one = DBig::ONE.with_precision(p).value();
    // running (x-1)^m/m! and its partial sums d_m(x)/m!
    let mut power = one.clone();
    let mut partial = DBig::ZERO.with_precision(p).value();
    // below this `power` no longer moves `partial`; adding it anyway aligns
    // mantissas across the whole exponent gap, which grows with m
    let negligible = parse_decimal(&format!("1e-{}", p + 10), p)?;
    let term = |m: usize| {
        if m > 0 && !power.repr().is_zero() {
            power = &power * &shift / DBig::from(m as u64).with_precision(p).value();
            if power.clone().abs() < negligible {
                power = DBig::ZERO.with_precision(p).value();
            }
        }
        partial = &partial + &power;
        // P(m) = c0 + m(c1 + (m-1)/2 (c2 + (m-2)/3 (c3 + ...)))
        let mut acc = newton.last().cloned().unwrap_or(DBig::ZERO);
        for k in (0..newton.len() - 1).rev() {
            let num = DBig::from(m as u64).with_precision(p).value() - DBig::from(k as u64);
            acc = &newton[k] + &(num * acc / DBig::from(k as u64 + 1));
        }
        let v = &partial * &acc;
        if m.is_multiple_of(2) { v } else { -v }
    };
    let est = abel_sum(term, cfg)?;
    let scale = (dec(&(x - Rational::one()))).exp();
    Ok(DBig::from(2u8) * scale * est.value)
}

fn r_explicit(c: &mut Check, n_max: usize) -> Result<()> {
    let p = c.point;
    let ctx = context(p, n_max);
    let d = oracle_values(GfId::DProbR { r: p.r }, p, n_max)?;
    for n in 0..=n_max {
        let form = if n < p.r { "vanishing" } else { "moment sum" };
        c.exact(n, form, None, ctx.derange_prob_r(p.r, n)?, d[n].clone());
    }
    Ok(())
}

// C(l-1, r-1) with the r = 0 convention C(l-1, -1) = [l = 0].
fn shifted_binomial(l: usize, r: usize) -> Rational {
    match (l, r) {
        (_, 0) => if l == 0 { Rational::one() } else { Rational::zero() },
        (0, _) => Rational::zero(),
        _ => binomial_q(l - 1, r - 1),
    }
}

fn r_recurrence(c: &mut Check, n_max: usize) -> Result<()> {
    let p = c.point;
    let r = p.r;
    let ctx = context(p, n_max);
    let d_r = oracle_values(GfId::DProbR { r }, p, n_max)?;
    let numbers = ctx.derange_prob_all(&Rational::zero());
    for n in 0..=n_max {
        let sum: Rational = (r..=n)
            .map(|l| shifted_binomial(l, r) * &numbers[n - l] / crate::rational::factorial_q(n - l))
            .sum();
        c.exact(n, "recurrence", None, d_r[n].clone(), sum * crate::rational::factorial_q(n));
    }
    Ok(())
}

fn r_inversion(c: &mut Check, n_max: usize) -> Result<()> {
    let p = c.point;
    let r = p.r;
    let ctx = context(p, n_max);
    let d_r = oracle_values(GfId::DProbR { r }, p, n_max + r)?;
    let fact = crate::rational::factorial_q;
    for n in 0..=n_max {
        let sum: Rational = (0..=n)
            .map(|k| &d_r[k + r] / fact(k + r) * sign(k) * binomial_q(r + 1, n - k))
            .sum();
        c.exact(n, "inversion", None, ctx.rising_moment(n)?.clone(), sum * fact(n));
    }
    Ok(())
}

fn second_kind_explicit(c: &mut Check, n_max: usize) -> Result<()> {
    let p = c.point;
    let ctx = context(p, n_max);
    let d = oracle_values(GfId::D2Prob, p, n_max)?;
    for n in 0..=n_max {
        c.exact(n, "moment sum", None, ctx.derange2_prob(n, &p.x)?, d[n].clone());
        let rec = if n == 0 {
            Rational::one()
        } else {
            int(n as i64) * &p.x * &d[n - 1] + sign(n) * ctx.rising_moment(n)?
        };
        c.exact(n, "recurrence", None, d[n].clone(), rec);
    }
    Ok(())
}

// The printed statement has (-1)^j; interchanging the sums in the derivation
// gives (-1)^l.
fn second_kind_fubini(c: &mut Check, n_max: usize) -> Result<()> {
    let p = c.point;
    let ctx = context(p, n_max);
    let s2 = triangle(TriangleKind::Stirling2Degenerate, &p.lambda, n_max);
    let d = oracle_values(GfId::D2Prob, p, n_max)?;
    let fubini = oracle_values(GfId::FubiniDeg, p, n_max)?;
    for n in 0..=n_max {
        let lhs: Rational = (0..=n).map(|m| &d[m] * s2.get(n, m)).sum();
        let mut printed = Rational::zero();
        let mut derived = Rational::zero();
        for j in 0..=n {
            let outer = binomial_q(n, j) * &fubini[n - j];
            for l in 0..=j {
                let core = &outer * ctx.rising_moment(l)? * s2.get(j, l);
                printed += sign(j) * &core;
                derived += sign(l) * core;
            }
        }
        c.exact(n, "fubini expansion", Some(Variant::Derived), lhs.clone(), derived);
        c.exact(n, "fubini expansion", Some(Variant::Printed), lhs, printed);
    }
    Ok(())
}

fn second_kind_log(c: &mut Check, n_max: usize) -> Result<()> {
    let p = c.point;
    let ctx = context(p, n_max);
    let s1 = triangle(TriangleKind::Stirling1UnsignedDegenerate, &p.lambda, n_max);
    let d = oracle_values(GfId::D2Prob, p, n_max)?;
    for n in 0..=n_max {
        let mut rhs = Rational::zero();
        for j in 0..=n {
            let outer = binomial_q(n, j) * sign(n - j) * ctx.rising_moment(n - j)? * pow(&p.x, j);
            for l in 0..=j {
                rhs += &outer * s1.get(j, l) * unit_rising(l, &p.lambda);
            }
        }
        c.exact(n, "log expansion", None, d[n].clone(), rhs);
    }
    Ok(())
}

// The printed statement has d_{k,λ}(x); the derivation expands in classical
// d_k(x).
fn gamma_expansion(c: &mut Check, n_max: usize) -> Result<()> {
    let p = c.point;
    let lambda = &p.lambda;
    let s1 = triangle(TriangleKind::Stirling1, &Rational::zero(), n_max);
    let minus_one = -Rational::one();
    let classical: Vec<Rational> = (0..=n_max).map(|k| derangement_poly(k, &p.x)).collect();
    let degenerate: Vec<Rational> = (0..=n_max).map(|k| derangement_deg_poly(k, &p.x, lambda)).collect();
    for n in 0..=n_max {
        let lhs = shifted_rising_moment(&p.x, &p.profile, n, lambda);
        let mut printed = Rational::zero();
        let mut derived = Rational::zero();
        for j in 0..=n {
            let outer = binomial_q(n, j) * falling_deg(&minus_one, n - j, lambda);
            for k in 0..=j {
                let core = &outer * sign(n - k) * pow(lambda, j - k) * s1.get(j, k);
                printed += &core * &degenerate[k];
                derived += core * &classical[k];
            }
        }
        c.exact(n, "gamma expansion", Some(Variant::Derived), lhs.clone(), derived);
        c.exact(n, "gamma expansion", Some(Variant::Printed), lhs, printed);
    }
    Ok(())
}

/// All records for one theorem, or the configuration error that stopped it.
#[derive(Debug, Clone)]
pub struct TheoremRun {
    pub theorem: TheoremId,
    pub reports: Vec<VerificationReport>,
    pub errors: Vec<(usize, Error)>,
}

/// Runs every theorem in `ids` at its sample points. Work is fanned out per
/// (theorem, point) and merged in theorem, point, n order.
pub fn run_suite(
    ids: &[TheoremId],
    points: &dyn Fn(TheoremId) -> Vec<EvalPoint>,
    n_max: usize,
    exec: Execution,
    cfg: &VerifyConfig,
) -> Vec<TheoremRun> {
    let jobs: Vec<(TheoremId, usize, EvalPoint)> = ids
        .iter()
        .flat_map(|&id| points(id).into_iter().enumerate().map(move |(i, p)| (id, i, p)))
        .collect();
    let results = exec.map(&jobs, |(id, i, p)| verify_theorem_with(*id, p, n_max, *i, cfg));
    let mut runs: Vec<TheoremRun> = ids
        .iter()
        .map(|&theorem| TheoremRun { theorem, reports: Vec::new(), errors: Vec::new() })
        .collect();
    for ((id, i, _), result) in jobs.iter().zip(results) {
        let run = runs.iter_mut().find(|r| r.theorem == *id).expect("registered theorem");
        match result {
            Ok(reports) => run.reports.extend(reports),
            Err(e) => run.errors.push((*i, e)),
        }
    }
    runs
}

/// Sampled points for [`run_suite`].
pub fn sampled(seed: u64, count: usize) -> impl Fn(TheoremId) -> Vec<EvalPoint> {
    move |id| sample_points(seed, count, id)
}

/// Checks `id` on the `(n+1)×(n+1)` grid of distinct `(x, λ)` values with
/// λ ≠ 0, for fixed `Y` and `r`. Both sides of every exact identity are
/// polynomials of degree at most `n` in each variable, so agreement on the
/// grid proves the identity for all `(x, λ)`.
pub fn certify_grid(
    id: TheoremId,
    profile: &crate::moments::MomentProfile,
    r: usize,
    n: usize,
    exec: Execution,
    cfg: &VerifyConfig,
) -> Result<Vec<VerificationReport>> {
    let side = n as i64 + 1;
    let points: Vec<EvalPoint> = (0..side)
        .flat_map(|i| {
            (0..side).map(move |j| {
                let x = ratio(2 * i - n as i64, 3);
                let lambda = sign(j as usize) * ratio(j + 1, side + 1);
                (x, lambda)
            })
        })
        .map(|(x, lambda)| EvalPoint::new(lambda, x, profile.clone()).with_r(r))
        .collect();
    let indexed: Vec<(usize, EvalPoint)> = points.into_iter().enumerate().collect();
    let results = exec.map(&indexed, |(i, p)| verify_theorem_with(id, p, n, *i, cfg));
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}
