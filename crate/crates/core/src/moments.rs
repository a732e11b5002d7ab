//! Random variables represented by their exact raw-moment sequences, plus the
//! degenerate factorial moments derived from them.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::combinatorics::{triangle, TriangleKind};
use crate::error::{Error, Result};
use crate::rational::{binomial_q, factorial_q, format_rational, int, parse_rational, pow, sign, Rational};
use crate::series::Series;

/// A catalog distribution. Construct through the checked constructors or
/// [`FromStr`]; the invariants (probabilities in `[0,1]`, Gamma parameters
/// positive) hold for every value built that way.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MomentProfile {
    Constant(Rational),
    Bernoulli(Rational),
    Discrete(Vec<(Rational, Rational)>),
    Poisson(Rational),
    Gamma { shape: Rational, rate: Rational },
    Uniform01,
}

fn is_probability(p: &Rational) -> bool {
    !p.is_negative() && *p <= Rational::one()
}

impl MomentProfile {
    pub fn constant(c: Rational) -> Self {
        MomentProfile::Constant(c)
    }

    pub fn bernoulli(p: Rational) -> Result<Self> {
        if !is_probability(&p) {
            return Err(Error::Profile(format!("bernoulli p = {p} outside [0,1]")));
        }
        Ok(MomentProfile::Bernoulli(p))
    }

    pub fn discrete(atoms: Vec<(Rational, Rational)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::Profile("discrete distribution needs at least one atom".into()));
        }
        if let Some((_, w)) = atoms.iter().find(|(_, w)| !is_probability(w)) {
            return Err(Error::Profile(format!("discrete weight {w} outside [0,1]")));
        }
        let total: Rational = atoms.iter().map(|(_, w)| w.clone()).sum();
        if !total.is_one() {
            return Err(Error::Profile(format!("discrete weights sum to {total}, not 1")));
        }
        Ok(MomentProfile::Discrete(atoms))
    }

    pub fn poisson(rate: Rational) -> Result<Self> {
        if rate.is_negative() {
            return Err(Error::Profile(format!("poisson rate {rate} is negative")));
        }
        Ok(MomentProfile::Poisson(rate))
    }

    pub fn gamma(shape: Rational, rate: Rational) -> Result<Self> {
        if !shape.is_positive() || !rate.is_positive() {
            return Err(Error::Profile(format!(
                "gamma parameters must be positive, got ({shape}, {rate})"
            )));
        }
        Ok(MomentProfile::Gamma { shape, rate })
    }

    pub fn uniform01() -> Self {
        MomentProfile::Uniform01
    }

    /// Gamma(1,1), the unit exponential.
    pub fn is_unit_gamma(&self) -> bool {
        matches!(self, MomentProfile::Gamma { shape, rate } if shape.is_one() && rate.is_one())
    }

    /// Support contained in `[0, ∞)`.
    pub fn is_nonnegative(&self) -> bool {
        match self {
            MomentProfile::Constant(c) => !c.is_negative(),
            MomentProfile::Discrete(atoms) => atoms
                .iter()
                .all(|(v, w)| !v.is_negative() || w.is_zero()),
            _ => true,
        }
    }

    /// `E[Y^n]`.
    pub fn raw_moment(&self, n: usize) -> Rational {
        match self {
            MomentProfile::Constant(c) => pow(c, n),
            MomentProfile::Bernoulli(p) => {
                if n == 0 {
                    Rational::one()
                } else {
                    p.clone()
                }
            }
            MomentProfile::Discrete(atoms) => atoms.iter().map(|(v, w)| w * pow(v, n)).sum(),
            MomentProfile::Poisson(rate) => {
                // Touchard polynomial: Σ_k {n brace k} α^k.
                let s2 = triangle(TriangleKind::Stirling2Degenerate, &Rational::zero(), n);
                (0..=n).map(|k| s2.get(n, k) * pow(rate, k)).sum()
            }
            MomentProfile::Gamma { shape, rate } => {
                let rising = (0..n).fold(Rational::one(), |acc, i| acc * (shape + int(i as i64)));
                rising / pow(rate, n)
            }
            MomentProfile::Uniform01 => Rational::new(1.into(), (n as i64 + 1).into()),
        }
    }

    /// `E[Y^k]` for `k = 0..=n_max`.
    pub fn raw_moments(&self, n_max: usize) -> Vec<Rational> {
        (0..=n_max).map(|k| self.raw_moment(k)).collect()
    }

    /// Raw moments of `x + Y`.
    pub fn shifted_raw_moments(&self, x: &Rational, n_max: usize) -> Vec<Rational> {
        let raw = self.raw_moments(n_max);
        (0..=n_max)
            .map(|k| {
                (0..=k)
                    .map(|i| binomial_q(k, i) * pow(x, k - i) * &raw[i])
                    .sum()
            })
            .collect()
    }
}

impl fmt::Display for MomentProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = format_rational;
        match self {
            MomentProfile::Constant(c) => write!(f, "constant:{}", q(c)),
            MomentProfile::Bernoulli(p) => write!(f, "bernoulli:{}", q(p)),
            MomentProfile::Discrete(atoms) => {
                let body: Vec<String> = atoms.iter().map(|(v, w)| format!("{}={}", q(v), q(w))).collect();
                write!(f, "discrete:{}", body.join(","))
            }
            MomentProfile::Poisson(a) => write!(f, "poisson:{}", q(a)),
            MomentProfile::Gamma { shape, rate } => write!(f, "gamma:{},{}", q(shape), q(rate)),
            MomentProfile::Uniform01 => write!(f, "uniform01"),
        }
    }
}

impl FromStr for MomentProfile {
    type Err = Error;

    /// `constant:c`, `bernoulli:p`, `discrete:v1=p1,v2=p2,...`, `poisson:a`,
    /// `gamma:a,b`, `uniform01`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, args) = match s.split_once(':') {
            Some((k, a)) => (k.trim(), Some(a.trim())),
            None => (s, None),
        };
        let need = |what: &str| {
            args.filter(|a| !a.is_empty())
                .ok_or_else(|| Error::Parse(format!("{kind} needs {what}")))
        };
        match kind {
            "constant" => Ok(MomentProfile::constant(parse_rational(need("a value")?)?)),
            "bernoulli" => MomentProfile::bernoulli(parse_rational(need("p")?)?),
            "poisson" => MomentProfile::poisson(parse_rational(need("a rate")?)?),
            "gamma" => {
                let body = need("shape,rate")?;
                let (a, b) = body
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("gamma expects a,b, got {body:?}")))?;
                MomentProfile::gamma(parse_rational(a)?, parse_rational(b)?)
            }
            "discrete" => {
                let atoms = need("v=p atoms")?
                    .split(',')
                    .map(|atom| {
                        let (v, w) = atom
                            .split_once('=')
                            .ok_or_else(|| Error::Parse(format!("discrete atom {atom:?} is not v=p")))?;
                        Ok((parse_rational(v)?, parse_rational(w)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                MomentProfile::discrete(atoms)
            }
            "uniform01" if args.is_none() => Ok(MomentProfile::Uniform01),
            _ => Err(Error::Parse(format!("unknown distribution {s:?}"))),
        }
    }
}

/// `E[Y^n]`.
pub fn raw_moment(y: &MomentProfile, n: usize) -> Rational {
    y.raw_moment(n)
}

// Σ_k S_1(n,k) λ^{n-k} m_k, with the sign (-1)^{n-k} for the rising variant.
fn factorial_moment(raw: &[Rational], n: usize, lambda: &Rational, rising: bool) -> Rational {
    let s1 = triangle(TriangleKind::Stirling1, lambda, n);
    (0..=n)
        .map(|k| {
            let mut term = s1.get(n, k) * pow(lambda, n - k) * &raw[k];
            if rising {
                term *= sign(n - k);
            }
            term
        })
        .sum()
}

/// `E[(Y)_{n,λ}]` for every `n = 0..=n_max`.
pub fn deg_falling_moments(y: &MomentProfile, n_max: usize, lambda: &Rational) -> Vec<Rational> {
    let raw = y.raw_moments(n_max);
    (0..=n_max).map(|n| factorial_moment(&raw, n, lambda, false)).collect()
}

/// `E[<Y>_{n,λ}]` for every `n = 0..=n_max`.
pub fn deg_rising_moments(y: &MomentProfile, n_max: usize, lambda: &Rational) -> Vec<Rational> {
    let raw = y.raw_moments(n_max);
    (0..=n_max).map(|n| factorial_moment(&raw, n, lambda, true)).collect()
}

/// `E[(Y)_{n,λ}]`.
pub fn deg_falling_moment(y: &MomentProfile, n: usize, lambda: &Rational) -> Rational {
    factorial_moment(&y.raw_moments(n), n, lambda, false)
}

/// `E[<Y>_{n,λ}]`.
pub fn deg_rising_moment(y: &MomentProfile, n: usize, lambda: &Rational) -> Rational {
    factorial_moment(&y.raw_moments(n), n, lambda, true)
}

/// `E[<x+Y>_{n,λ}]`, from the raw moments of the shifted variable.
pub fn shifted_rising_moment(x: &Rational, y: &MomentProfile, n: usize, lambda: &Rational) -> Rational {
    factorial_moment(&y.shifted_raw_moments(x, n), n, lambda, true)
}

/// `E[(x-Y)_{n,λ}]` for `n = 0..=n_max`, by the degenerate Vandermonde
/// expansion `Σ_j C(n,j) (x)_{j,λ} (-1)^{n-j} E[<Y>_{n-j,λ}]`.
pub fn shifted_deg_moments(x: &Rational, rising: &[Rational], lambda: &Rational) -> Vec<Rational> {
    let n_max = rising.len() - 1;
    let falling_x: Vec<Rational> = {
        let mut acc = Rational::one();
        let mut v = vec![acc.clone()];
        for i in 0..n_max {
            acc *= x - lambda * int(i as i64);
            v.push(acc.clone());
        }
        v
    };
    (0..=n_max)
        .map(|n| {
            (0..=n)
                .map(|j| binomial_q(n, j) * &falling_x[j] * sign(n - j) * &rising[n - j])
                .sum()
        })
        .collect()
}

/// `E[(x-Y)_{n,λ}]`.
pub fn shifted_deg_moment(x: &Rational, y: &MomentProfile, n: usize, lambda: &Rational) -> Rational {
    let rising = deg_rising_moments(y, n, lambda);
    shifted_deg_moments(x, &rising, lambda).pop().expect("non-empty")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// `E[e_λ^{±Y}(t)]` truncated at `order`; λ = 0 gives the classical moment
/// generating function.
pub fn mgf_series(y: &MomentProfile, lambda: &Rational, sign_: Sign, order: usize) -> Series {
    let coeffs = match sign_ {
        Sign::Plus => deg_falling_moments(y, order, lambda)
            .into_iter()
            .enumerate()
            .map(|(n, m)| m / factorial_q(n))
            .collect(),
        Sign::Minus => deg_rising_moments(y, order, lambda)
            .into_iter()
            .enumerate()
            .map(|(n, m)| m * sign(n) / factorial_q(n))
            .collect(),
    };
    Series::from_coeffs(coeffs)
}

/// `E[(S_m)_{n,λ}]` where `S_m` sums `m` independent copies of `Y`.
pub fn iid_sum_deg_moment(y: &MomentProfile, m: u64, n: usize, lambda: &Rational) -> Rational {
    mgf_series(y, lambda, Sign::Plus, n).pow(m).egf_coeff(n)
}
