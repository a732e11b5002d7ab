//! Probabilistic degenerate families attached to a random variable `Y`:
//! Stirling numbers, Bell, Fubini and Euler objects, and the three
//! derangement families.
//!
//! Every value here is the finite closed form over moments. The generating
//! function routes live in [`crate::verify::oracle`] and are used by the
//! test suite and the verification harness to cross-check these.

use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::combinatorics::falling_deg;
use crate::error::{Error, Result};
use crate::moments::{deg_falling_moments, deg_rising_moments, shifted_deg_moments, MomentProfile};
use crate::rational::{binomial_q, factorial_q, pow, ratio, sign, Rational};
use crate::series::Series;

/// Ambient data shared by every probabilistic object: the variable `Y`, the
/// degeneracy parameter λ and the largest index computed.
#[derive(Debug)]
pub struct ProbContext {
    profile: MomentProfile,
    lambda: Rational,
    n_max: usize,
    falling: Vec<Rational>,
    rising: Vec<Rational>,
    // sums[j][n] = E[(S_j)_{n,λ}]
    sums: OnceLock<Vec<Vec<Rational>>>,
    // stirling2[n][k] = {n brace k}_{Y,λ}
    stirling2: OnceLock<Vec<Vec<Rational>>>,
}

impl ProbContext {
    pub fn new(profile: MomentProfile, lambda: Rational, n_max: usize) -> Self {
        let falling = deg_falling_moments(&profile, n_max, &lambda);
        let rising = deg_rising_moments(&profile, n_max, &lambda);
        ProbContext {
            profile,
            lambda,
            n_max,
            falling,
            rising,
            sums: OnceLock::new(),
            stirling2: OnceLock::new(),
        }
    }

    /// Checked constructor for externally supplied sizes.
    pub fn try_new(profile: MomentProfile, lambda: Rational, n_max: i64) -> Result<Self> {
        let n_max = usize::try_from(n_max)
            .map_err(|_| Error::Index(format!("n_max must be nonnegative, got {n_max}")))?;
        Ok(ProbContext::new(profile, lambda, n_max))
    }

    pub fn profile(&self) -> &MomentProfile {
        &self.profile
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Truncation order of every series built for this context.
    pub fn order(&self) -> usize {
        self.n_max + 1
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.n_max {
            Err(Error::Index(format!("n = {n} exceeds context n_max = {}", self.n_max)))
        } else {
            Ok(())
        }
    }

    /// `E[(Y)_{n,λ}]`.
    pub fn falling_moment(&self, n: usize) -> Result<&Rational> {
        self.check(n)?;
        Ok(&self.falling[n])
    }

    /// `E[<Y>_{n,λ}]`.
    pub fn rising_moment(&self, n: usize) -> Result<&Rational> {
        self.check(n)?;
        Ok(&self.rising[n])
    }

    /// `E[(x-Y)_{k,λ}]` for `k = 0..=n_max`.
    pub fn shifted_moments(&self, x: &Rational) -> Vec<Rational> {
        shifted_deg_moments(x, &self.rising, &self.lambda)
    }

    fn sums(&self) -> &[Vec<Rational>] {
        self.sums.get_or_init(|| {
            let n = self.n_max;
            let u = Series::from_coeffs(
                self.falling.iter().enumerate().map(|(k, m)| m / factorial_q(k)).collect(),
            );
            let mut power = Series::one(n);
            (0..=n)
                .map(|_| {
                    let row = (0..=n).map(|k| power.egf_coeff(k)).collect();
                    power = &power * &u;
                    row
                })
                .collect()
        })
    }

    /// `E[(S_m)_{n,λ}]` for `m <= n_max`.
    pub fn iid_sum_moment(&self, m: usize, n: usize) -> Result<&Rational> {
        self.check(n)?;
        self.check(m)?;
        Ok(&self.sums()[m][n])
    }

    fn stirling2_table(&self) -> &[Vec<Rational>] {
        self.stirling2.get_or_init(|| {
            let sums = self.sums();
            (0..=self.n_max)
                .map(|n| {
                    (0..=n)
                        .map(|k| {
                            let alt: Rational = (0..=k)
                                .map(|j| binomial_q(k, j) * sign(k - j) * &sums[j][n])
                                .sum();
                            alt / factorial_q(k)
                        })
                        .collect()
                })
                .collect()
        })
    }

    /// `{n brace k}_{Y,λ} = (1/k!) Σ_j C(k,j) (-1)^{k-j} E[(S_j)_{n,λ}]`.
    pub fn stirling2_prob(&self, n: usize, k: usize) -> Result<Rational> {
        self.check(n)?;
        if k > n {
            return Err(Error::Index(format!("k = {k} exceeds n = {n}")));
        }
        Ok(self.stirling2_table()[n][k].clone())
    }

    fn s2(&self, n: usize, k: usize) -> Rational {
        if k > n {
            Rational::zero()
        } else {
            self.stirling2_table()[n][k].clone()
        }
    }

    /// Bell polynomial `φ^Y_{n,λ}(x) = Σ_k {n brace k}_{Y,λ} x^k`.
    pub fn bell_prob(&self, n: usize, x: &Rational) -> Result<Rational> {
        self.check(n)?;
        Ok((0..=n).map(|k| self.s2(n, k) * pow(x, k)).sum())
    }

    /// Fubini polynomial `F^Y_{n,λ}(x) = Σ_k {n brace k}_{Y,λ} k! x^k`.
    pub fn fubini_prob(&self, n: usize, x: &Rational) -> Result<Rational> {
        self.check(n)?;
        Ok((0..=n).map(|k| self.s2(n, k) * factorial_q(k) * pow(x, k)).sum())
    }

    /// Euler numbers of `2/(E[e_λ^Y(t)]+1)`; expanding in powers of
    /// `(E[e_λ^Y(t)]-1)/2` gives `Σ_k (-1)^k k! 2^{-k} {n brace k}_{Y,λ}`.
    pub fn euler_prob(&self, n: usize) -> Result<Rational> {
        self.fubini_prob(n, &ratio(-1, 2))
    }

    /// `d^Y_{n,λ}(x) = n! Σ_{k≤n} E[(x-Y)_{k,λ}] / k!`.
    pub fn derange_prob(&self, n: usize, x: &Rational) -> Result<Rational> {
        self.check(n)?;
        let shifted = self.shifted_moments(x);
        let sum: Rational = (0..=n).map(|k| &shifted[k] / factorial_q(k)).sum();
        Ok(sum * factorial_q(n))
    }

    /// All of `d^Y_{k,λ}(x)` for `k = 0..=n_max`.
    pub fn derange_prob_all(&self, x: &Rational) -> Vec<Rational> {
        let shifted = self.shifted_moments(x);
        let mut partial = Rational::zero();
        shifted
            .iter()
            .enumerate()
            .map(|(k, m)| {
                partial += m / factorial_q(k);
                &partial * factorial_q(k)
            })
            .collect()
    }

    /// r-derangement numbers: zero below `r`, otherwise
    /// `n! Σ_{k=r}^{n} C(k,r) (-1)^{n-k} E[<Y>_{n-k,λ}] / (n-k)!`.
    pub fn derange_prob_r(&self, r: usize, n: usize) -> Result<Rational> {
        self.check(n)?;
        if n < r {
            return Ok(Rational::zero());
        }
        let sum: Rational = (r..=n)
            .map(|k| binomial_q(k, r) * sign(n - k) * &self.rising[n - k] / factorial_q(n - k))
            .sum();
        Ok(sum * factorial_q(n))
    }

    /// Second-kind polynomial `D^Y_{n,λ}(x) = n! Σ_k (-1)^k E[<Y>_{k,λ}] x^{n-k} / k!`.
    pub fn derange2_prob(&self, n: usize, x: &Rational) -> Result<Rational> {
        self.check(n)?;
        let sum: Rational = (0..=n)
            .map(|k| sign(k) * &self.rising[k] * pow(x, n - k) / factorial_q(k))
            .sum();
        Ok(sum * factorial_q(n))
    }
}

/// `(1)_{n,λ}` and `<1>_{n,λ}` show up in several identities.
pub fn unit_falling(n: usize, lambda: &Rational) -> Rational {
    falling_deg(&Rational::one(), n, lambda)
}

pub fn unit_rising(n: usize, lambda: &Rational) -> Rational {
    crate::combinatorics::rising_deg(&Rational::one(), n, lambda)
}
