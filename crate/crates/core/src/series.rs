//! Truncated formal power series over exact rationals.
//!
//! Coefficients use the ordinary convention: index `n` holds the `t^n`
//! coefficient. The `n!` factor of exponential generating functions is only
//! applied by [`Series::egf_coeff`]. Every binary operation truncates to the
//! smaller of the two orders.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial_q, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    /// Series with coefficients `c_0..c_N`; an empty vector is treated as the
    /// order-0 zero series.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Rational::zero());
        }
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Series::constant(Rational::one(), order)
    }

    /// `c·t^k`, truncated.
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut s = Series::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The identity substitution `t`.
    pub fn variable(order: usize) -> Self {
        Series::monomial(Rational::one(), 1, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `t^n`; zero beyond the stored order is *not* assumed,
    /// so this panics past the truncation order.
    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    /// `n!·[t^n]`.
    pub fn egf_coeff(&self, n: usize) -> Rational {
        &self.coeffs[n] * factorial_q(n)
    }

    pub fn truncate(&self, order: usize) -> Series {
        let order = order.min(self.order());
        Series {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `t^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Series {
        let n = self.order();
        let mut out = Series::zero(n);
        for i in k..=n {
            out.coeffs[i] = self.coeffs[i - k].clone();
        }
        out
    }

    /// Cauchy product.
    pub fn mul_series(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|k| {
                (0..=k).fold(Rational::zero(), |acc, i| {
                    if self.coeffs[i].is_zero() || other.coeffs[k - i].is_zero() {
                        acc
                    } else {
                        acc + &self.coeffs[i] * &other.coeffs[k - i]
                    }
                })
            })
            .collect();
        Series { coeffs }
    }

    /// Quotient `self / divisor`; the divisor needs a nonzero constant term.
    pub fn div_series(&self, divisor: &Series) -> Result<Series> {
        let b0 = &divisor.coeffs[0];
        if b0.is_zero() {
            return Err(Error::NonInvertible);
        }
        let n = self.order().min(divisor.order());
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for i in 1..=k {
                if !divisor.coeffs[i].is_zero() {
                    acc -= &divisor.coeffs[i] * &out[k - i];
                }
            }
            out.push(acc / b0);
        }
        Ok(Series { coeffs: out })
    }

    pub fn recip(&self) -> Result<Series> {
        Series::one(self.order()).div_series(self)
    }

    /// `outer(inner(t))`; the inner series must have zero constant term.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonZeroInnerConstant);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        // Horner in the inner series.
        let mut acc = Series::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = acc.mul_series(&inner);
            acc.coeffs[0] += &self.coeffs[k];
        }
        Ok(acc)
    }

    /// `self^m` by repeated squaring.
    pub fn pow(&self, mut m: u64) -> Series {
        let mut base = self.clone();
        let mut acc = Series::one(self.order());
        while m > 0 {
            if m & 1 == 1 {
                acc = acc.mul_series(&base);
            }
            m >>= 1;
            if m > 0 {
                base = base.mul_series(&base);
            }
        }
        acc
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let n = self.order().min(rhs.order());
        Series {
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let n = self.order().min(rhs.order());
        Series {
            coeffs: (0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        self.mul_series(rhs)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Series {
            type Output = Series;
            fn $method(self, rhs: Series) -> Series {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// `(1+t)^q` with generalized binomial coefficients.
pub fn binomial_pow(q: &Rational, order: usize) -> Series {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = Rational::one();
    coeffs.push(c.clone());
    for k in 1..=order {
        c = c * (q - int(k as i64 - 1)) / int(k as i64);
        coeffs.push(c.clone());
    }
    Series { coeffs }
}

/// Degenerate exponential `e_λ^x(t) = (1+λt)^{x/λ}`; coefficient `k` is
/// `(x)_{k,λ}/k!`.
pub fn deg_exp_series(x: &Rational, lambda: &Rational, order: usize) -> Result<Series> {
    if lambda.is_zero() {
        return Err(Error::ZeroLambda("the degenerate exponential"));
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = Rational::one();
    coeffs.push(c.clone());
    for k in 1..=order {
        c = c * (x - lambda * int(k as i64 - 1)) / int(k as i64);
        coeffs.push(c.clone());
    }
    Ok(Series { coeffs })
}

/// Degenerate logarithm `log_λ(1+s) = ((1+s)^λ - 1)/λ` as a series in `s`,
/// the compositional inverse of `e_λ(t) - 1`.
pub fn deg_log_series(lambda: &Rational, order: usize) -> Result<Series> {
    if lambda.is_zero() {
        return Err(Error::ZeroLambda("the degenerate logarithm"));
    }
    let mut s = binomial_pow(lambda, order);
    s.coeffs[0] = Rational::zero();
    Ok(s.scale(&lambda.recip()))
}

/// Classical exponential `e^{xt}`.
pub fn exp_series(x: &Rational, order: usize) -> Series {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = Rational::one();
    coeffs.push(c.clone());
    for k in 1..=order {
        c = c * x / int(k as i64);
        coeffs.push(c.clone());
    }
    Series { coeffs }
}

/// Classical `log(1+s)`.
pub fn log1p_series(order: usize) -> Series {
    let mut s = Series::zero(order);
    for k in 1..=order {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        s.coeffs[k] = Rational::new(sign.into(), (k as i64).into());
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn ints(v: &[i64]) -> Series {
        Series::from_coeffs(v.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn binomial_square() {
        let a = ints(&[1, 1, 0]);
        assert_eq!(&a * &a, ints(&[1, 2, 1]));
    }

    #[test]
    fn multiplicative_identity() {
        let a = Series::from_coeffs(vec![ratio(1, 3), int(-2), ratio(5, 7), int(4)]);
        assert_eq!(&a * &Series::one(3), a);
    }

    #[test]
    fn geometric_times_one_minus_t_telescopes() {
        let n = 9;
        let geo = Series::from_coeffs(vec![int(1); n + 1]);
        let prod = &geo * &ints(&[1, -1, 0, 0, 0, 0, 0, 0, 0, 0]);
        // Direct convolution: c_k = 1 - 1 for k >= 1.
        assert_eq!(prod, Series::one(n));
    }

    #[test]
    fn order_is_minimum() {
        let a = Series::one(5);
        let b = Series::one(3);
        assert_eq!((&a * &b).order(), 3);
        assert_eq!((&a + &b).order(), 3);
    }

    #[test]
    fn geometric_division() {
        let q = Series::one(6).div_series(&ints(&[1, -1, 0, 0, 0, 0, 0])).unwrap();
        assert_eq!(q, Series::from_coeffs(vec![int(1); 7]));
        let q = Series::one(5).div_series(&ints(&[1, 1, 0, 0, 0, 0])).unwrap();
        assert_eq!(q, ints(&[1, -1, 1, -1, 1, -1]));
    }

    #[test]
    fn self_division_is_one() {
        let a = Series::from_coeffs(vec![int(1), ratio(2, 3), int(-5), ratio(1, 9)]);
        assert_eq!(a.div_series(&a).unwrap(), Series::one(3));
    }

    #[test]
    fn zero_constant_divisor_rejected() {
        assert_eq!(
            Series::one(3).div_series(&Series::variable(3)),
            Err(Error::NonInvertible)
        );
    }

    #[test]
    fn compose_identity_and_geometric() {
        let outer = Series::from_coeffs(vec![int(3), ratio(1, 2), int(-1), int(7)]);
        assert_eq!(outer.compose(&Series::variable(3)).unwrap(), outer);

        let geo = Series::from_coeffs(vec![int(1); 8]);
        let two_t = Series::monomial(int(2), 1, 7);
        assert_eq!(
            geo.compose(&two_t).unwrap(),
            ints(&[1, 2, 4, 8, 16, 32, 64, 128])
        );
    }

    #[test]
    fn compose_exp_with_negation_alternates() {
        let e = exp_series(&int(1), 7);
        let minus_t = Series::monomial(int(-1), 1, 7);
        let got = e.compose(&minus_t).unwrap();
        assert_eq!(got, exp_series(&int(-1), 7));
    }

    #[test]
    fn compose_rejects_nonzero_inner_constant() {
        assert_eq!(
            Series::one(2).compose(&Series::one(2)),
            Err(Error::NonZeroInnerConstant)
        );
    }

    #[test]
    fn binomial_pow_cases() {
        assert_eq!(binomial_pow(&int(2), 4), ints(&[1, 2, 1, 0, 0]));
        assert_eq!(
            binomial_pow(&ratio(1, 2), 3),
            Series::from_coeffs(vec![int(1), ratio(1, 2), ratio(-1, 8), ratio(1, 16)])
        );
        let inv = Series::one(6).div_series(&ints(&[1, 1, 0, 0, 0, 0, 0])).unwrap();
        assert_eq!(binomial_pow(&int(-1), 6), inv);
    }

    #[test]
    fn deg_exp_cases() {
        assert_eq!(
            deg_exp_series(&int(2), &int(1), 4).unwrap(),
            ints(&[1, 2, 1, 0, 0])
        );
        assert_eq!(
            deg_exp_series(&int(1), &int(1), 5).unwrap(),
            ints(&[1, 1, 0, 0, 0, 0])
        );
        let s = deg_exp_series(&int(1), &ratio(1, 2), 3).unwrap();
        assert_eq!(s.coeff(2), &ratio(1, 4));
        assert!(matches!(
            deg_exp_series(&int(1), &int(0), 3),
            Err(Error::ZeroLambda(_))
        ));
    }

    #[test]
    fn deg_exp_is_binomial_power_of_lambda_t() {
        let (x, l) = (ratio(3, 5), ratio(-2, 7));
        let via_pow = binomial_pow(&(&x / &l), 8)
            .compose(&Series::monomial(l.clone(), 1, 8))
            .unwrap();
        assert_eq!(deg_exp_series(&x, &l, 8).unwrap(), via_pow);
    }

    #[test]
    fn deg_log_cases() {
        assert_eq!(deg_log_series(&int(1), 4).unwrap(), Series::variable(4));
        assert_eq!(
            deg_log_series(&int(2), 3).unwrap(),
            Series::from_coeffs(vec![int(0), int(1), ratio(1, 2), int(0)])
        );
        let l = ratio(1, 3);
        let e_minus_one = &deg_exp_series(&int(1), &l, 10).unwrap() - &Series::one(10);
        let round = deg_log_series(&l, 10).unwrap().compose(&e_minus_one).unwrap();
        assert_eq!(round, Series::variable(10));
        assert!(deg_log_series(&int(0), 3).is_err());
    }

    #[test]
    fn pow_matches_repeated_product() {
        let a = Series::from_coeffs(vec![int(1), ratio(1, 2), ratio(-1, 3), int(2), int(0), int(1)]);
        let mut slow = Series::one(5);
        for m in 0..=9u64 {
            assert_eq!(a.pow(m), slow);
            slow = &slow * &a;
        }
    }

    #[test]
    fn log1p_inverts_exp() {
        let e_minus_one = &exp_series(&int(1), 8) - &Series::one(8);
        assert_eq!(log1p_series(8).compose(&e_minus_one).unwrap(), Series::variable(8));
    }
}
