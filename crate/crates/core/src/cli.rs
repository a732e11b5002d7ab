//! Command-line front end: value tables, generating-function coefficients and
//! the verification suite.
//!
//! Exit status: 0 when everything passes, 1 when an identity fails, 2 on
//! usage, parse or theorem-precondition errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde::Serialize;

use crate::combinatorics::{
    derangement2_deg_poly, derangement_deg_poly, derangement_poly, fubini_deg, triangle, TriangleKind,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::moments::MomentProfile;
use crate::prob::ProbContext;
use crate::rational::{format_rational, int, parse_rational, ratio, Rational};
use crate::verify::theorems::sampled;
use crate::verify::{
    certify_grid, gf_oracle, run_suite, EvalPoint, GfId, Record, TheoremId, TheoremVerdict, VerifyConfig,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "probderange", version, about = "Probabilistic degenerate derangement polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Values of a family for n = 0..=N.
    Table(TableArgs),
    /// Ordinary coefficients t^0..t^N of a generating function.
    Series(SeriesArgs),
    /// Verify the identities at sampled points.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// Random variable, e.g. `gamma:1,1` or `discrete:0=1/2,1=1/2`.
    #[arg(long, default_value = "constant:1")]
    pub dist: String,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub x: String,
    #[arg(long)]
    pub r: Option<usize>,
    /// Column index for the Stirling families.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long = "n", visible_aliases = ["nmax", "order"])]
    pub n: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub family: String,
    #[command(flatten)]
    pub common: FamilyArgs,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long)]
    pub gf: String,
    #[command(flatten)]
    pub common: FamilyArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// `all`, a theorem id such as `2.6`, or a comma-separated list.
    #[arg(long, default_value = "all")]
    pub theorem: String,
    /// Largest n checked; 12 by default, 6 with `--exhaustive`.
    #[arg(long = "nmax", visible_aliases = ["n", "order"])]
    pub n_max: Option<usize>,
    #[arg(long, default_value_t = 3)]
    pub samples: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Use this random variable at every point instead of the catalog rotation.
    #[arg(long)]
    pub dist: Option<String>,
    /// Use this r at every point of the r-derangement theorems.
    #[arg(long)]
    pub r: Option<usize>,
    /// Certify on the full (n+1)×(n+1) grid of (x, λ) values.
    #[arg(long)]
    pub exhaustive: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Run on one thread.
    #[arg(long)]
    pub sequential: bool,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let result = match &cli.command {
        Command::Table(a) => run_table(a, out),
        Command::Series(a) => run_series(a, out),
        Command::Verify(a) => run_verify(a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn io(e: impl std::fmt::Display) -> Error {
    Error::Config(format!("output failed: {e}"))
}

struct Parsed {
    point: EvalPoint,
    lambda_given: bool,
}

fn parse_common(a: &FamilyArgs) -> Result<Parsed> {
    let profile: MomentProfile = a.dist.parse()?;
    let x = parse_rational(&a.x)?;
    let lambda = a.lambda.as_deref().map(parse_rational).transpose()?;
    Ok(Parsed {
        lambda_given: lambda.is_some(),
        point: EvalPoint::new(lambda.unwrap_or_else(Rational::zero), x, profile).with_r(a.r.unwrap_or(0)),
    })
}

#[derive(Serialize)]
struct Row<'a> {
    family: &'a str,
    n: usize,
    value: String,
}

fn emit_rows(rows: &[Row], format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Json => {
            for row in rows {
                writeln!(out, "{}", serde_json::to_string(row).map_err(io)?).map_err(io)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["family", "n", "value"]).map_err(io)?;
            for row in rows {
                w.write_record([row.family, &row.n.to_string(), &row.value]).map_err(io)?;
            }
            w.flush().map_err(io)?;
        }
    }
    Ok(())
}

/// Family value at `n` by its closed form.
pub fn family_value(id: GfId, ctx: &ProbContext, point: &EvalPoint, n: usize) -> Result<Rational> {
    let (x, lambda) = (&point.x, &point.lambda);
    let entry = |kind: TriangleKind, k: usize| {
        if k > n { Rational::zero() } else { triangle(kind, lambda, n).get(n, k) }
    };
    Ok(match id {
        GfId::DProb => ctx.derange_prob(n, x)?,
        GfId::DProbR { r } => ctx.derange_prob_r(r, n)?,
        GfId::D2Prob => ctx.derange2_prob(n, x)?,
        GfId::FubiniProb => ctx.fubini_prob(n, x)?,
        GfId::BellProb => ctx.bell_prob(n, x)?,
        GfId::EulerProb => ctx.euler_prob(n)?,
        GfId::Stirling2Prob { k } => {
            if k > n { Rational::zero() } else { ctx.stirling2_prob(n, k)? }
        }
        GfId::Derangement => derangement_poly(n, x),
        GfId::DerangementDeg => derangement_deg_poly(n, x, lambda),
        GfId::Derangement2Deg => derangement2_deg_poly(n, x, lambda),
        GfId::FubiniDeg => fubini_deg(n, x, lambda),
        GfId::Stirling2Deg { k } => entry(TriangleKind::Stirling2Degenerate, k),
        GfId::Stirling1DegUnsigned { k } => entry(TriangleKind::Stirling1UnsignedDegenerate, k),
    })
}

fn run_table(a: &TableArgs, out: &mut dyn Write) -> Result<i32> {
    let id = GfId::from_name(&a.family, a.common.r, a.common.k)?;
    let parsed = parse_common(&a.common)?;
    if id.depends_on_lambda() && !parsed.lambda_given {
        return Err(Error::Parse(format!("family {} requires --lambda", id.name())));
    }
    let p = parsed.point;
    let ctx = ProbContext::new(p.profile.clone(), p.lambda.clone(), a.common.n);
    let rows = (0..=a.common.n)
        .map(|n| {
            Ok(Row {
                family: id.name(),
                n,
                value: format_rational(&family_value(id, &ctx, &p, n)?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    emit_rows(&rows, a.common.format, out)?;
    Ok(EXIT_PASS)
}

fn run_series(a: &SeriesArgs, out: &mut dyn Write) -> Result<i32> {
    let id = GfId::from_name(&a.gf, a.common.r, a.common.k)?;
    let parsed = parse_common(&a.common)?;
    if id.depends_on_lambda() && (!parsed.lambda_given || parsed.point.lambda.is_zero()) {
        return Err(Error::Parse(format!(
            "series {} needs a nonzero --lambda; at λ = 0 use `table` for the closed form",
            id.name()
        )));
    }
    let s = gf_oracle(id, &parsed.point, a.common.n)?;
    let rows: Vec<Row> = s
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| Row { family: id.name(), n, value: format_rational(c) })
        .collect();
    emit_rows(&rows, a.common.format, out)?;
    Ok(EXIT_PASS)
}

fn default_profile(id: TheoremId) -> MomentProfile {
    if id == TheoremId::GammaExpansion {
        MomentProfile::gamma(int(1), int(1)).expect("unit gamma")
    } else {
        MomentProfile::bernoulli(ratio(1, 2)).expect("p = 1/2")
    }
}

fn run_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let ids = TheoremId::parse_list(&a.theorem)?;
    if a.samples == 0 {
        return Err(Error::Parse("--samples must be at least 1".into()));
    }
    let dist: Option<MomentProfile> = a.dist.as_deref().map(str::parse).transpose()?;
    let exec = if a.sequential { Execution::Sequential } else { Execution::Parallel };
    let cfg = VerifyConfig::default();
    let n_max = a.n_max.unwrap_or(if a.exhaustive { 6 } else { 12 });

    let mut csv_writer = match a.format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            w.write_record(Record::HEADER).map_err(io)?;
            Some(w)
        }
        Format::Json => None,
    };
    let mut emit = |record: &Record, out: &mut dyn Write| -> Result<()> {
        match csv_writer.as_mut() {
            Some(w) => w.serialize(record).map_err(io),
            None => writeln!(out, "{}", serde_json::to_string(record).map_err(io)?).map_err(io),
        }
    };

    let mut any_fail = false;
    let mut any_error = false;
    let mut verdicts = Vec::new();
    if a.exhaustive {
        for &id in &ids {
            let profile = dist.clone().unwrap_or_else(|| default_profile(id));
            let r = a.r.unwrap_or(if id.uses_r() { 1 } else { 0 });
            match certify_grid(id, &profile, r, n_max, exec, &cfg) {
                Ok(reports) => {
                    for rep in &reports {
                        emit(&rep.record(), out)?;
                    }
                    verdicts.push(TheoremVerdict::from_reports(id, &reports));
                }
                Err(e) => {
                    any_error = true;
                    writeln!(err, "theorem {id}: {e}").map_err(io)?;
                }
            }
        }
    } else {
        let sample = sampled(a.seed, a.samples);
        let points = |id: TheoremId| {
            sample(id)
                .into_iter()
                .map(|mut p| {
                    if let Some(d) = &dist {
                        p.profile = d.clone();
                    }
                    if let (Some(r), true) = (a.r, id.uses_r()) {
                        p.r = r;
                    }
                    p
                })
                .collect()
        };
        for run in run_suite(&ids, &points, n_max, exec, &cfg) {
            for rep in &run.reports {
                emit(&rep.record(), out)?;
            }
            for (i, e) in &run.errors {
                any_error = true;
                writeln!(err, "theorem {} point {i}: {e}", run.theorem).map_err(io)?;
            }
            if !run.reports.is_empty() {
                verdicts.push(TheoremVerdict::from_reports(run.theorem, &run.reports));
            }
        }
    }
    if let Some(w) = csv_writer {
        let bytes = w.into_inner().map_err(io)?;
        out.write_all(&bytes).map_err(io)?;
    }

    let mut checks = 0;
    for v in &verdicts {
        checks += v.checks;
        any_fail |= !v.pass;
        writeln!(err, "{v}").map_err(io)?;
    }
    let passed = verdicts.iter().filter(|v| v.pass).count();
    writeln!(
        err,
        "summary: {passed}/{} theorems pass, {checks} checks{}",
        verdicts.len(),
        if any_error { ", configuration errors present" } else { "" }
    )
    .map_err(io)?;
    Ok(if any_fail {
        EXIT_FAIL
    } else if any_error {
        EXIT_USAGE
    } else {
        EXIT_PASS
    })
}
