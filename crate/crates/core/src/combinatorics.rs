//! Degenerate factorials, Stirling triangles, derangement and Fubini
//! polynomials, evaluated at rational points.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial_q, int, pow, Rational};
use crate::series::{deg_log_series, Series};

/// `x(x-λ)...(x-(n-1)λ)`; 1 for `n = 0`.
pub fn falling_deg(x: &Rational, n: usize, lambda: &Rational) -> Rational {
    (0..n).fold(Rational::one(), |acc, i| acc * (x - lambda * int(i as i64)))
}

/// `x(x+λ)...(x+(n-1)λ)`; 1 for `n = 0`.
pub fn rising_deg(x: &Rational, n: usize, lambda: &Rational) -> Rational {
    (0..n).fold(Rational::one(), |acc, i| acc * (x + lambda * int(i as i64)))
}

/// Ordinary falling factorial `(x)_n`.
pub fn falling(x: &Rational, n: usize) -> Rational {
    falling_deg(x, n, &Rational::one())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriangleKind {
    /// Signed Stirling numbers of the first kind.
    Stirling1,
    /// Degenerate Stirling numbers of the second kind.
    Stirling2Degenerate,
    /// Unsigned degenerate Stirling numbers of the first kind.
    Stirling1UnsignedDegenerate,
}

/// A lower-triangular table `(n, k)`, `0 <= k <= n <= n_max`, for one kind and
/// one exact λ.
#[derive(Debug, Clone)]
pub struct TriangleCache {
    kind: TriangleKind,
    lambda: Rational,
    table: Vec<Vec<Rational>>,
}

impl TriangleCache {
    pub fn build(kind: TriangleKind, lambda: &Rational, n_max: usize) -> Self {
        let table = match kind {
            TriangleKind::Stirling1 => build_stirling1(n_max),
            TriangleKind::Stirling2Degenerate => build_stirling2_deg(lambda, n_max),
            TriangleKind::Stirling1UnsignedDegenerate => build_stirling1_unsigned_deg(lambda, n_max),
        };
        TriangleCache {
            kind,
            lambda: lambda.clone(),
            table,
        }
    }

    pub fn kind(&self) -> TriangleKind {
        self.kind
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn n_max(&self) -> usize {
        self.table.len() - 1
    }

    /// Entry `(n, k)`; zero for `k > n`. Panics past `n_max`.
    pub fn get(&self, n: usize, k: usize) -> Rational {
        if k > n {
            Rational::zero()
        } else {
            self.table[n][k].clone()
        }
    }

    pub fn row(&self, n: usize) -> &[Rational] {
        &self.table[n]
    }
}

fn build_stirling1(n_max: usize) -> Vec<Vec<Rational>> {
    let mut table = vec![vec![Rational::one()]];
    for n in 0..n_max {
        let prev = &table[n];
        let row = (0..=n + 1)
            .map(|k| {
                let left = if k >= 1 { prev[k - 1].clone() } else { Rational::zero() };
                let here = if k <= n { &prev[k] * int(n as i64) } else { Rational::zero() };
                left - here
            })
            .collect();
        table.push(row);
    }
    table
}

// Solves (m)_{n,λ} = Σ_k S(n,k)(m)_k at m = 0..=n; the system is triangular
// because (m)_k = 0 for k > m.
fn build_stirling2_deg(lambda: &Rational, n_max: usize) -> Vec<Vec<Rational>> {
    let mut table = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut row: Vec<Rational> = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let point = int(m as i64);
            let mut rhs = falling_deg(&point, n, lambda);
            for (k, s) in row.iter().enumerate() {
                rhs -= s * falling(&point, k);
            }
            row.push(rhs / factorial_q(m));
        }
        table.push(row);
    }
    table
}

// j!·[t^j] (1/l!)(-log_λ(1-t))^l; λ = 0 falls back to the classical -log(1-t).
fn build_stirling1_unsigned_deg(lambda: &Rational, n_max: usize) -> Vec<Vec<Rational>> {
    let gen = neg_log_one_minus(lambda, n_max);
    let mut table: Vec<Vec<Rational>> = (0..=n_max).map(|j| vec![Rational::zero(); j + 1]).collect();
    let mut power = Series::one(n_max);
    for l in 0..=n_max {
        let inv_l = factorial_q(l).recip();
        for (j, row) in table.iter_mut().enumerate().skip(l) {
            row[l] = power.egf_coeff(j) * &inv_l;
        }
        power = &power * &gen;
    }
    table
}

/// `-log_λ(1-t) = (1-(1-t)^λ)/λ`, or `-log(1-t)` at λ = 0.
pub fn neg_log_one_minus(lambda: &Rational, order: usize) -> Series {
    let minus_t = Series::monomial(-Rational::one(), 1, order);
    if lambda.is_zero() {
        let mut s = Series::zero(order);
        for k in 1..=order {
            s = &s + &Series::monomial(Rational::new(1.into(), (k as i64).into()), k, order);
        }
        s
    } else {
        let log = deg_log_series(lambda, order).expect("nonzero lambda");
        -&log.compose(&minus_t).expect("zero constant term")
    }
}

type CacheKey = (TriangleKind, Rational);

fn cache() -> &'static RwLock<HashMap<CacheKey, Arc<TriangleCache>>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, Arc<TriangleCache>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Memoized triangle covering at least rows `0..=n`.
pub fn triangle(kind: TriangleKind, lambda: &Rational, n: usize) -> Arc<TriangleCache> {
    let lambda = match kind {
        TriangleKind::Stirling1 => Rational::zero(),
        _ => lambda.clone(),
    };
    let key = (kind, lambda);
    if let Some(t) = cache().read().expect("triangle cache poisoned").get(&key) {
        if t.n_max() >= n {
            return Arc::clone(t);
        }
    }
    let mut guard = cache().write().expect("triangle cache poisoned");
    if let Some(t) = guard.get(&key) {
        if t.n_max() >= n {
            return Arc::clone(t);
        }
    }
    let size = guard.get(&key).map_or(16, |t| 2 * t.n_max()).max(n);
    let built = Arc::new(TriangleCache::build(kind, &key.1, size));
    guard.insert(key, Arc::clone(&built));
    built
}

fn check_indices(n: usize, k: usize) -> Result<()> {
    if k > n {
        Err(Error::Index(format!("k = {k} exceeds n = {n}")))
    } else {
        Ok(())
    }
}

pub fn stirling1(n: usize, k: usize) -> Result<Rational> {
    check_indices(n, k)?;
    Ok(triangle(TriangleKind::Stirling1, &Rational::zero(), n).get(n, k))
}

pub fn stirling2_deg(n: usize, k: usize, lambda: &Rational) -> Result<Rational> {
    check_indices(n, k)?;
    Ok(triangle(TriangleKind::Stirling2Degenerate, lambda, n).get(n, k))
}

pub fn stirling1_deg_unsigned(j: usize, l: usize, lambda: &Rational) -> Result<Rational> {
    check_indices(j, l)?;
    Ok(triangle(TriangleKind::Stirling1UnsignedDegenerate, lambda, j).get(j, l))
}

/// `d_n(x) = n! Σ_{k≤n} (x-1)^k / k!`.
pub fn derangement_poly(n: usize, x: &Rational) -> Rational {
    let shifted = x - Rational::one();
    let sum = (0..=n).fold(Rational::zero(), |acc, k| acc + pow(&shifted, k) / factorial_q(k));
    sum * factorial_q(n)
}

/// `d_{n,λ}(x) = n! Σ_{k≤n} (x-1)_{k,λ} / k!`.
pub fn derangement_deg_poly(n: usize, x: &Rational, lambda: &Rational) -> Rational {
    let shifted = x - Rational::one();
    let mut term = Rational::one();
    let mut sum = Rational::one();
    for k in 1..=n {
        term = term * (&shifted - lambda * int(k as i64 - 1)) / int(k as i64);
        sum += &term;
    }
    sum * factorial_q(n)
}

/// `D_{n,λ}(x) = n! Σ_{k≤n} ((-1)_{k,λ}/k!) x^{n-k}`.
pub fn derangement2_deg_poly(n: usize, x: &Rational, lambda: &Rational) -> Rational {
    let minus_one = -Rational::one();
    let sum = (0..=n).fold(Rational::zero(), |acc, k| {
        acc + falling_deg(&minus_one, k, lambda) / factorial_q(k) * pow(x, n - k)
    });
    sum * factorial_q(n)
}

/// `F_{n,λ}(x) = Σ_k {n brace k}_λ k! x^k`.
pub fn fubini_deg(n: usize, x: &Rational, lambda: &Rational) -> Rational {
    let tri = triangle(TriangleKind::Stirling2Degenerate, lambda, n);
    (0..=n).fold(Rational::zero(), |acc, k| {
        acc + tri.get(n, k) * factorial_q(k) * pow(x, k)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::series::deg_exp_series;

    #[test]
    fn falling_and_rising() {
        assert_eq!(falling_deg(&int(3), 2, &ratio(1, 2)), ratio(15, 2));
        assert_eq!(falling_deg(&ratio(7, 3), 0, &int(5)), int(1));
        assert_eq!(falling_deg(&int(2), 3, &int(1)), int(0));
        assert_eq!(rising_deg(&int(2), 3, &int(1)), int(24));
        assert_eq!(rising_deg(&ratio(-4, 9), 0, &int(2)), int(1));
        let (x, l) = (ratio(1, 3), ratio(1, 5));
        assert_eq!(rising_deg(&x, 4, &l), falling_deg(&-x.clone(), 4, &l));
        assert_eq!(rising_deg(&x, 3, &l), -falling_deg(&-x, 3, &l));
    }

    #[test]
    fn stirling1_values() {
        assert_eq!(stirling1(4, 2).unwrap(), int(11));
        assert_eq!(stirling1(4, 1).unwrap(), int(-6));
        for n in 0..=12 {
            assert_eq!(stirling1(n, n).unwrap(), int(1));
            for k in 0..=n {
                let unsigned = stirling1(n, k).unwrap() * crate::rational::sign(n - k);
                assert!(unsigned >= int(0));
            }
        }
        assert!(stirling1(2, 3).is_err());
    }

    #[test]
    fn stirling2_deg_values() {
        let l = ratio(2, 7);
        assert_eq!(stirling2_deg(2, 1, &l).unwrap(), int(1) - &l);
        assert_eq!(stirling2_deg(2, 2, &l).unwrap(), int(1));
        for n in 1..=8 {
            assert_eq!(stirling2_deg(n, 1, &l).unwrap(), falling_deg(&int(1), n, &l));
        }
        assert_eq!(stirling2_deg(3, 2, &int(0)).unwrap(), int(3));
        assert!(stirling2_deg(1, 2, &l).is_err());
    }

    #[test]
    fn stirling2_deg_matches_generating_function() {
        // n!·[t^n] (1/k!)(e_λ(t)-1)^k
        let l = ratio(-3, 4);
        let order = 10;
        let base = &deg_exp_series(&int(1), &l, order).unwrap() - &Series::one(order);
        let mut power = Series::one(order);
        for k in 0..=order {
            for n in k..=order {
                let want = power.egf_coeff(n) / factorial_q(k);
                assert_eq!(stirling2_deg(n, k, &l).unwrap(), want, "({n},{k})");
            }
            power = &power * &base;
        }
    }

    #[test]
    fn stirling1_unsigned_deg_values() {
        let l = ratio(5, 11);
        assert_eq!(stirling1_deg_unsigned(2, 1, &l).unwrap(), int(1) - &l);
        assert_eq!(stirling1_deg_unsigned(4, 2, &int(0)).unwrap(), int(11));
        assert_eq!(stirling1_deg_unsigned(0, 0, &l).unwrap(), int(1));
        for j in 1..=6 {
            assert_eq!(stirling1_deg_unsigned(j, 0, &l).unwrap(), int(0));
        }
    }

    #[test]
    fn stirling1_unsigned_deg_recurrence() {
        // [n+1, k] = [n, k-1] + (n - kλ)[n, k]
        let l = ratio(-2, 3);
        for n in 0..10usize {
            for k in 1..=n + 1 {
                let lhs = stirling1_deg_unsigned(n + 1, k, &l).unwrap();
                let a = stirling1_deg_unsigned(n, k - 1, &l).unwrap();
                let b = if k <= n { stirling1_deg_unsigned(n, k, &l).unwrap() } else { int(0) };
                assert_eq!(lhs, a + (int(n as i64) - &l * int(k as i64)) * b);
            }
        }
    }

    #[test]
    fn unsigned_degenerate_at_zero_is_classical() {
        for n in 0..=10 {
            for k in 0..=n {
                assert_eq!(
                    stirling1_deg_unsigned(n, k, &int(0)).unwrap(),
                    stirling1(n, k).unwrap() * crate::rational::sign(n - k)
                );
            }
        }
    }

    #[test]
    fn basis_conversion_round_trip() {
        for l in [ratio(1, 3), ratio(-5, 2), ratio(7, 9), int(2), ratio(-1, 64)] {
            for n in 0..=10 {
                for xi in 0..=n {
                    let x = ratio(2 * xi as i64 - 3, 5);
                    let expanded = (0..=n).fold(int(0), |acc, k| {
                        acc + stirling2_deg(n, k, &l).unwrap() * falling(&x, k)
                    });
                    assert_eq!(expanded, falling_deg(&x, n, &l));
                }
            }
        }
    }

    #[test]
    fn orthogonality_at_zero() {
        for n in 0..=10 {
            for m in 0..=10 {
                let s = (0..=n).fold(int(0), |acc, k| {
                    let s1 = if m <= k { stirling1(k, m).unwrap() } else { int(0) };
                    acc + stirling2_deg(n, k, &int(0)).unwrap() * s1
                });
                assert_eq!(s, if n == m { int(1) } else { int(0) });
            }
        }
    }

    #[test]
    fn derangement_values() {
        assert_eq!(derangement_poly(2, &ratio(1, 2)), ratio(5, 4));
        assert_eq!(derangement_poly(4, &int(0)), int(9));
        for n in 0..=8 {
            assert_eq!(derangement_poly(n, &int(1)), factorial_q(n));
        }
        for n in 2..=10 {
            let d = |m| derangement_poly(m, &int(0));
            assert_eq!(d(n), int(n as i64 - 1) * (d(n - 1) + d(n - 2)));
        }
    }

    #[test]
    fn degenerate_derangement_values() {
        let l = ratio(1, 3);
        let x = ratio(-7, 4);
        assert_eq!(derangement_deg_poly(1, &x, &l), x);
        assert_eq!(derangement_deg_poly(2, &int(0), &l), ratio(4, 3));
        let x = ratio(2, 7);
        for n in 0..=10 {
            assert_eq!(derangement_deg_poly(n, &x, &int(0)), derangement_poly(n, &x));
        }
    }

    #[test]
    fn degenerate_derangement_matches_series() {
        let (x, l) = (ratio(3, 4), ratio(-2, 5));
        let order = 12;
        let num = deg_exp_series(&(&x - int(1)), &l, order).unwrap();
        let den = Series::from_coeffs(
            (0..=order).map(|k| match k { 0 => int(1), 1 => int(-1), _ => int(0) }).collect(),
        );
        let s = num.div_series(&den).unwrap();
        for n in 0..=order {
            assert_eq!(derangement_deg_poly(n, &x, &l), s.egf_coeff(n));
        }
    }

    #[test]
    fn second_kind_values() {
        let l = ratio(2, 9);
        let x = ratio(-3, 5);
        let want = int(2) * &x * &x - int(2) * &x + int(1) + &l;
        assert_eq!(derangement2_deg_poly(2, &x, &l), want);
        assert_eq!(derangement2_deg_poly(0, &x, &l), int(1));
        let l = ratio(3, 5);
        for n in 0..=12 {
            assert_eq!(derangement2_deg_poly(n, &int(1), &l), derangement_deg_poly(n, &int(0), &l));
        }
    }

    #[test]
    fn fubini_values() {
        let (x, l) = (ratio(5, 3), ratio(1, 6));
        assert_eq!(fubini_deg(2, &x, &l), (int(1) - &l) * &x + int(2) * &x * &x);
        assert_eq!(fubini_deg(2, &int(1), &int(0)), int(3));
        for n in 0..=6 {
            assert_eq!(fubini_deg(n, &int(0), &l), if n == 0 { int(1) } else { int(0) });
        }
    }

    #[test]
    fn fubini_matches_series() {
        let (x, l) = (ratio(-1, 2), ratio(3, 7));
        let order = 12;
        let e = &deg_exp_series(&int(1), &l, order).unwrap() - &Series::one(order);
        let s = Series::one(order).div_series(&(&Series::one(order) - &e.scale(&x))).unwrap();
        for n in 0..=order {
            assert_eq!(fubini_deg(n, &x, &l), s.egf_coeff(n));
        }
    }

    #[test]
    fn cache_grows_on_demand() {
        let l = ratio(13, 17);
        let small = triangle(TriangleKind::Stirling2Degenerate, &l, 3);
        assert!(small.n_max() >= 3);
        let big = triangle(TriangleKind::Stirling2Degenerate, &l, 40);
        assert!(big.n_max() >= 40);
        assert_eq!(big.lambda(), &l);
        assert_eq!(small.get(3, 2), big.get(3, 2));
    }
}
