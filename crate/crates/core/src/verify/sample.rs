//! Deterministic pseudo-random sample points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::moments::MomentProfile;
use crate::rational::{int, ratio, Rational};
use crate::verify::theorems::TheoremId;
use crate::verify::EvalPoint;

const MAX_DEN: i64 = 12;

fn small_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    let den = rng.random_range(1..=MAX_DEN);
    let num = rng.random_range(-bound * den..=bound * den);
    ratio(num, den)
}

fn nonzero_unit(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let q = small_rational(rng, 1);
        if q != int(0) {
            return q;
        }
    }
}

fn catalog_member(rng: &mut ChaCha8Rng, slot: usize) -> MomentProfile {
    match slot % 6 {
        0 => MomentProfile::constant(ratio(rng.random_range(-8..=8), rng.random_range(1..=4))),
        1 => MomentProfile::bernoulli(ratio(rng.random_range(1..=7), 8)).expect("p in (0,1)"),
        2 => {
            let atoms = rng.random_range(2..=3usize);
            let cuts: Vec<i64> = {
                let mut c: Vec<i64> = (0..atoms - 1).map(|_| rng.random_range(1..=7)).collect();
                c.sort_unstable();
                c.dedup();
                c
            };
            let mut weights = Vec::new();
            let mut prev = 0;
            for c in cuts.iter().chain(std::iter::once(&8)) {
                weights.push(ratio(c - prev, 8));
                prev = *c;
            }
            let values = weights
                .iter()
                .map(|_| ratio(rng.random_range(-6..=6), rng.random_range(1..=3)))
                .collect::<Vec<_>>();
            MomentProfile::discrete(values.into_iter().zip(weights).collect()).expect("weights sum to 1")
        }
        3 => MomentProfile::poisson(ratio(rng.random_range(1..=8), 4)).expect("positive rate"),
        4 => MomentProfile::gamma(ratio(rng.random_range(1..=6), 2), ratio(rng.random_range(1..=4), 2))
            .expect("positive parameters"),
        _ => MomentProfile::uniform01(),
    }
}

/// `count` points for `theorem`: λ in `[-1,1]\{0}`, x in `[-2,2]`, both with
/// denominators at most 12, and Y rotating through the catalog. The gamma
/// expansion always gets Gamma(1,1); the r-derangement identities draw r from
/// 0..=3.
pub fn sample_points(seed: u64, count: usize, theorem: TheoremId) -> Vec<EvalPoint> {
    let ordinal = theorem.ordinal();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (ordinal as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    (0..count)
        .map(|i| {
            let lambda = nonzero_unit(&mut rng);
            let x = small_rational(&mut rng, 2);
            let slot = i + ordinal + (seed % 6) as usize;
            let profile = if theorem == TheoremId::GammaExpansion {
                MomentProfile::gamma(int(1), int(1)).expect("unit gamma")
            } else {
                catalog_member(&mut rng, slot)
            };
            let r = if theorem.uses_r() { rng.random_range(0..=3) } else { 0 };
            EvalPoint::new(lambda, x, profile).with_r(r)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn reproducible() {
        let a = sample_points(42, 3, TheoremId::ExplicitSum);
        let b = sample_points(42, 3, TheoremId::ExplicitSum);
        assert_eq!(a, b);
        assert_eq!(a.len(), 3);
        assert_ne!(a, sample_points(43, 3, TheoremId::ExplicitSum));
    }

    #[test]
    fn ranges_and_preconditions() {
        for id in TheoremId::ALL {
            for p in sample_points(7, 24, id) {
                assert!(p.lambda != int(0) && p.lambda.abs() <= int(1));
                assert!(p.x.abs() <= int(2));
                assert!(p.lambda.denom() <= &MAX_DEN.into() && p.x.denom() <= &MAX_DEN.into());
                if id == TheoremId::GammaExpansion {
                    assert!(p.profile.is_unit_gamma());
                }
                if !id.uses_r() {
                    assert_eq!(p.r, 0);
                }
            }
        }
    }

    #[test]
    fn r_branches_exercised() {
        let rs: Vec<usize> = sample_points(1, 40, TheoremId::RExplicit).iter().map(|p| p.r).collect();
        for r in 0..=3 {
            assert!(rs.contains(&r));
        }
    }

    #[test]
    fn catalog_rotates() {
        let kinds: std::collections::HashSet<String> = sample_points(0, 6, TheoremId::ExplicitSum)
            .iter()
            .map(|p| p.profile.to_string().split(':').next().unwrap().to_string())
            .collect();
        assert_eq!(kinds.len(), 6);
    }
}
