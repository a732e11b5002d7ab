//! Defining generating functions, built only from series primitives and the
//! moment generating series. Coefficients are in the ordinary convention; use
//! [`Series::egf_coeff`] to read off the family values.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::moments::{mgf_series, Sign};
use crate::rational::{factorial_q, int, Rational};
use crate::series::{binomial_pow, deg_exp_series, deg_log_series, exp_series, Series};
use crate::verify::EvalPoint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GfId {
    /// `e_λ^{x-Y}(t) / (1-t)`
    DProb,
    /// `t^r (1-t)^{-(r+1)} E[e_λ^{-Y}(t)]`
    DProbR { r: usize },
    /// `E[e_λ^{-Y}(t)] / (1-xt)`
    D2Prob,
    /// `1 / (1 - x(E[e_λ^Y(t)] - 1))`
    FubiniProb,
    /// `exp(x(E[e_λ^Y(t)] - 1))`
    BellProb,
    /// `2 / (E[e_λ^Y(t)] + 1)`
    EulerProb,
    /// `(E[e_λ^Y(t)] - 1)^k / k!`
    Stirling2Prob { k: usize },
    /// `e^{(x-1)t} / (1-t)`
    Derangement,
    /// `e_λ^{x-1}(t) / (1-t)`
    DerangementDeg,
    /// `e_λ^{-1}(t) / (1-xt)`
    Derangement2Deg,
    /// `1 / (1 - x(e_λ(t) - 1))`
    FubiniDeg,
    /// `(e_λ(t) - 1)^k / k!`
    Stirling2Deg { k: usize },
    /// `(-log_λ(1-t))^k / k!`
    Stirling1DegUnsigned { k: usize },
}

impl GfId {
    pub const NAMES: [&'static str; 13] = [
        "d_prob",
        "d_prob_r",
        "D_prob",
        "fubini_prob",
        "bell_prob",
        "euler_prob",
        "stirling2_prob",
        "d",
        "d_deg",
        "D_deg",
        "fubini_deg",
        "stirling2_deg",
        "stirling1_deg_unsigned",
    ];

    /// Resolves a family name; `r` and `k` are required by the indexed
    /// families and ignored otherwise.
    pub fn from_name(name: &str, r: Option<usize>, k: Option<usize>) -> Result<GfId> {
        let need = |v: Option<usize>, flag: &str| {
            v.ok_or_else(|| Error::Parse(format!("family {name} requires --{flag}")))
        };
        Ok(match name {
            "d_prob" => GfId::DProb,
            "d_prob_r" => GfId::DProbR { r: need(r, "r")? },
            "D_prob" => GfId::D2Prob,
            "fubini_prob" => GfId::FubiniProb,
            "bell_prob" => GfId::BellProb,
            "euler_prob" => GfId::EulerProb,
            "stirling2_prob" => GfId::Stirling2Prob { k: need(k, "k")? },
            "d" => GfId::Derangement,
            "d_deg" => GfId::DerangementDeg,
            "D_deg" => GfId::Derangement2Deg,
            "fubini_deg" => GfId::FubiniDeg,
            "stirling2_deg" => GfId::Stirling2Deg { k: need(k, "k")? },
            "stirling1_deg_unsigned" => GfId::Stirling1DegUnsigned { k: need(k, "k")? },
            _ => return Err(Error::Unknown(format!("generating function {name:?}"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            GfId::DProb => "d_prob",
            GfId::DProbR { .. } => "d_prob_r",
            GfId::D2Prob => "D_prob",
            GfId::FubiniProb => "fubini_prob",
            GfId::BellProb => "bell_prob",
            GfId::EulerProb => "euler_prob",
            GfId::Stirling2Prob { .. } => "stirling2_prob",
            GfId::Derangement => "d",
            GfId::DerangementDeg => "d_deg",
            GfId::Derangement2Deg => "D_deg",
            GfId::FubiniDeg => "fubini_deg",
            GfId::Stirling2Deg { .. } => "stirling2_deg",
            GfId::Stirling1DegUnsigned { .. } => "stirling1_deg_unsigned",
        }
    }

    /// Whether the series involves the random variable `Y`.
    pub fn is_probabilistic(&self) -> bool {
        matches!(
            self,
            GfId::DProb
                | GfId::DProbR { .. }
                | GfId::D2Prob
                | GfId::FubiniProb
                | GfId::BellProb
                | GfId::EulerProb
                | GfId::Stirling2Prob { .. }
        )
    }

    pub fn depends_on_lambda(&self) -> bool {
        !matches!(self, GfId::Derangement)
    }
}

impl fmt::Display for GfId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GfId::DProbR { r } => write!(f, "{}[r={r}]", self.name()),
            GfId::Stirling2Prob { k } | GfId::Stirling2Deg { k } | GfId::Stirling1DegUnsigned { k } => {
                write!(f, "{}[k={k}]", self.name())
            }
            _ => f.write_str(self.name()),
        }
    }
}

// 1/(1 - ratio·t)
fn geometric(ratio: &Rational, order: usize) -> Series {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = Rational::one();
    for _ in 0..=order {
        coeffs.push(c.clone());
        c *= ratio;
    }
    Series::from_coeffs(coeffs)
}

fn minus_one_series(u: &Series) -> Series {
    u - &Series::one(u.order())
}

/// The truncated series of `id` at `point`, coefficients `t^0..t^order`.
pub fn gf_oracle(id: GfId, point: &EvalPoint, order: usize) -> Result<Series> {
    let lambda = &point.lambda;
    let x = &point.x;
    if id.depends_on_lambda() && lambda.is_zero() {
        return Err(Error::ZeroLambda("generating-function oracles"));
    }
    let y = &point.profile;
    let plus = || mgf_series(y, lambda, Sign::Plus, order);
    let minus = || mgf_series(y, lambda, Sign::Minus, order);
    let one = Series::one(order);

    let s = match id {
        GfId::DProb => {
            let num = &deg_exp_series(x, lambda, order)? * &minus();
            num.div_series(&(&one - &Series::variable(order)))?
        }
        GfId::DProbR { r } => {
            let minus_t = Series::monomial(-Rational::one(), 1, order);
            let inv = binomial_pow(&int(-(r as i64) - 1), order).compose(&minus_t)?;
            (&inv * &minus()).shift(r)
        }
        GfId::D2Prob => &minus() * &geometric(x, order),
        GfId::FubiniProb => {
            let denom = &one - &minus_one_series(&plus()).scale(x);
            one.div_series(&denom)?
        }
        GfId::BellProb => exp_series(x, order).compose(&minus_one_series(&plus()))?,
        GfId::EulerProb => Series::constant(int(2), order).div_series(&(&plus() + &one))?,
        GfId::Stirling2Prob { k } => power_over_factorial(&minus_one_series(&plus()), k),
        GfId::Derangement => {
            &exp_series(&(x - Rational::one()), order) * &geometric(&Rational::one(), order)
        }
        GfId::DerangementDeg => {
            &deg_exp_series(&(x - Rational::one()), lambda, order)? * &geometric(&Rational::one(), order)
        }
        GfId::Derangement2Deg => &deg_exp_series(&-Rational::one(), lambda, order)? * &geometric(x, order),
        GfId::FubiniDeg => {
            let e = minus_one_series(&deg_exp_series(&Rational::one(), lambda, order)?);
            one.div_series(&(&one - &e.scale(x)))?
        }
        GfId::Stirling2Deg { k } => {
            power_over_factorial(&minus_one_series(&deg_exp_series(&Rational::one(), lambda, order)?), k)
        }
        GfId::Stirling1DegUnsigned { k } => {
            let minus_t = Series::monomial(-Rational::one(), 1, order);
            let neg_log = -&deg_log_series(lambda, order)?.compose(&minus_t)?;
            power_over_factorial(&neg_log, k)
        }
    };
    Ok(s)
}

fn power_over_factorial(s: &Series, k: usize) -> Series {
    s.pow(k as u64).scale(&factorial_q(k).recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::MomentProfile;
    use crate::rational::ratio;

    fn point(lambda: Rational, x: Rational, dist: &str) -> EvalPoint {
        EvalPoint::new(lambda, x, dist.parse::<MomentProfile>().unwrap())
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&c| int(c)).collect()
    }

    #[test]
    fn d_prob_unit_lambda_one() {
        let s = gf_oracle(GfId::DProb, &point(int(1), int(0), "constant:1"), 4).unwrap();
        assert_eq!(s.coeffs(), &ints(&[1, 0, 1, 0, 1])[..]);
        assert_eq!(s.egf_coeff(2), int(2));
    }

    #[test]
    fn fubini_at_zero_is_one() {
        let s = gf_oracle(GfId::FubiniProb, &point(ratio(1, 3), int(0), "poisson:2"), 6).unwrap();
        assert_eq!(s, Series::one(6));
    }

    #[test]
    fn euler_unit() {
        // 2/(2+t)
        let s = gf_oracle(GfId::EulerProb, &point(int(1), int(0), "constant:1"), 2).unwrap();
        assert_eq!(s.coeffs(), &[int(1), ratio(-1, 2), ratio(1, 4)][..]);
        assert_eq!(s.egf_coeff(1), ratio(-1, 2));
    }

    #[test]
    fn r_derangement_leading_zeros() {
        let s = gf_oracle(GfId::DProbR { r: 3 }, &point(ratio(1, 2), int(0), "gamma:1,1"), 6).unwrap();
        assert!(s.coeffs()[..3].iter().all(Zero::is_zero));
        assert_eq!(s.coeffs()[3], int(1));
    }

    #[test]
    fn zero_lambda_rejected() {
        let p = point(int(0), int(0), "constant:1");
        assert!(matches!(gf_oracle(GfId::DProb, &p, 3), Err(Error::ZeroLambda(_))));
        assert!(gf_oracle(GfId::Derangement, &p, 3).is_ok());
    }

    #[test]
    fn names_round_trip() {
        for name in GfId::NAMES {
            let id = GfId::from_name(name, Some(1), Some(2)).unwrap();
            assert_eq!(id.name(), name);
        }
        assert!(matches!(GfId::from_name("nope", None, None), Err(Error::Unknown(_))));
        assert!(matches!(GfId::from_name("d_prob_r", None, None), Err(Error::Parse(_))));
    }
}
