use serde::Serialize;

use super::{direct_sum_complexes, generic_rank, ProjDecomp, TwoComplex};
use crate::field::{Scalar, SeedStream};
use crate::quiver::Algebra;

/// Estimates of `r(P_1^t, P_0^t)` for `t = 1..=t_max`.
#[derive(Clone, Debug, Serialize)]
pub struct RankScanReport {
    pub r: Vec<usize>,
    pub certified: Vec<bool>,
    /// Every `t` with `r_t > t * r_1`.
    pub violations: Vec<usize>,
    pub seed: u64,
    pub trials: usize,
    pub field: String,
}

/// Scans `t = 1..=t_max`. Each `t` also ranks the block sums
/// `w_s ⊕ w_{t-s}` of earlier witnesses, so the reported sequence is
/// superadditive by construction. Step `t` draws from `seed.split(t)`.
pub fn additivity_scan<F: Scalar>(
    alg: &Algebra<F>,
    p1: &ProjDecomp,
    p0: &ProjDecomp,
    t_max: usize,
    trials: usize,
    seed: u64,
) -> RankScanReport {
    assert!(t_max >= 1);
    let stream = SeedStream::new(seed);
    let mut witnesses: Vec<TwoComplex<F>> = Vec::new();
    let mut r = Vec::new();
    let mut certified = Vec::new();
    for t in 1..=t_max {
        let extras: Vec<_> = (1..t)
            .filter(|s| *s <= t - s)
            .map(|s| direct_sum_complexes(alg, &[witnesses[s - 1].clone(), witnesses[t - s - 1].clone()]).map)
            .collect();
        let g = generic_rank(alg, &p1.scaled(t), &p0.scaled(t), trials, stream.split(t as u64).seed(), &extras);
        r.push(g.value);
        certified.push(g.certified);
        witnesses.push(g.witness);
    }
    let violations = (1..=t_max).filter(|&t| r[t - 1] > t * r[0]).collect();
    RankScanReport { r, certified, violations, seed, trials, field: F::field_tag() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::fixtures::Fixture;

    #[test]
    fn alg_a_violates_at_two() {
        let a = Fixture::AlgA.algebra::<Q>().unwrap();
        let rep = additivity_scan(&a, &ProjDecomp::single(3, 1), &ProjDecomp::single(3, 2), 2, 8, 42);
        assert_eq!(rep.r, vec![3, 8]);
        assert_eq!(rep.violations, vec![2]);
        assert_eq!(rep.certified, vec![true, true]);
    }

    #[test]
    fn zero_target_scans_to_zero() {
        let k = Fixture::AlgK.algebra::<Q>().unwrap();
        let rep = additivity_scan(&k, &ProjDecomp::new(vec![1, 2]), &ProjDecomp::zero(2), 3, 2, 1);
        assert_eq!(rep.r, vec![0, 0, 0]);
        assert!(rep.violations.is_empty());
    }

    #[test]
    fn kronecker_is_additive() {
        let k = Fixture::AlgK.algebra::<Q>().unwrap();
        let rep = additivity_scan(&k, &ProjDecomp::new(vec![2, 1]), &ProjDecomp::new(vec![1, 2]), 4, 8, 42);
        assert!(rep.violations.is_empty());
        assert!(rep.certified.iter().all(|&c| c));
    }
}
