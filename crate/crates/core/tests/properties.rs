use proptest::prelude::*;

use taureg_core::ar::{e_invariant_self, self_extension, tau};
use taureg_core::field::{poly_rank, Matrix, PolyBudget, PolyMatrix, Scalar};
use taureg_core::fixtures::Fixture;
use taureg_core::present::{generic_rank, min_presentation, ProjDecomp};
use taureg_core::quiver::{annihilator, quotient_algebra};
use taureg_core::rep::{
    combine, direct_sum, ext1_dim, hom_basis, hom_dim, is_faithful, projective, projective_cover, Representation,
};
use taureg_core::sampling::{random_module, scramble};
use taureg_core::{Algebra, SeedStream, Q};

fn int_matrix(rows: usize, cols: usize, entries: &[i64]) -> Matrix<Q> {
    Matrix::from_fn(rows, cols, |r, c| Q::from_i64(entries[(r * cols + c) % entries.len()]))
}

fn fixture(i: usize) -> (Fixture, Algebra<Q>) {
    let fx = Fixture::ALL[i % Fixture::ALL.len()];
    (fx, fx.algebra().unwrap())
}

fn module(alg: &Algebra<Q>, seed: u64) -> Representation<Q> {
    random_module(alg, &mut SeedStream::new(seed).rng(), 7)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_is_transpose_invariant(rows in 1usize..6, cols in 1usize..6, entries in prop::collection::vec(-3i64..4, 1..36)) {
        let m = int_matrix(rows, cols, &entries);
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rank_nullity(rows in 1usize..6, cols in 1usize..6, entries in prop::collection::vec(-3i64..4, 1..36)) {
        let m = int_matrix(rows, cols, &entries);
        let ker = m.kernel_basis();
        prop_assert_eq!(cols, m.rank() + ker.len());
        for v in &ker {
            prop_assert!(m.apply(v).iter().all(Scalar::is_zero));
        }
        prop_assert!(m.rank_lower_bound() <= m.rank());
    }

    #[test]
    fn solve_is_consistent(rows in 1usize..5, cols in 1usize..5, entries in prop::collection::vec(-3i64..4, 1..25), x in prop::collection::vec(-5i64..6, 5)) {
        let m = int_matrix(rows, cols, &entries);
        let x: Vec<Q> = x[..cols].iter().map(|&v| Q::from_i64(v)).collect();
        let b = m.apply(&x);
        let sol = m.solve(&b).unwrap().expect("consistent system");
        prop_assert_eq!(m.apply(&sol), b);
    }

    #[test]
    fn poly_rank_dominates_specializations(
        mats in prop::collection::vec(prop::collection::vec(-1i64..2, 9), 1..4),
        point in prop::collection::vec(-4i64..5, 3),
    ) {
        let ms: Vec<Matrix<Q>> = mats.iter().map(|e| int_matrix(3, 3, e)).collect();
        let pm = PolyMatrix::linear_combination(&ms, 3, 3);
        let generic = poly_rank(&pm, &PolyBudget::default()).unwrap();
        let pt: Vec<Q> = point[..ms.len()].iter().map(|&v| Q::from_i64(v)).collect();
        prop_assert!(generic >= pm.specialize(&pt).rank());
    }

    #[test]
    fn hom_dims_read_composition_factors(fi in 0usize..5, seed in any::<u64>()) {
        let (_, alg) = fixture(fi);
        let m = module(&alg, seed);
        for i in 0..alg.num_vertices() {
            prop_assert_eq!(hom_dim(&alg, &projective(&alg, i), &m), m.dim(i));
        }
    }

    #[test]
    fn hom_is_additive(fi in 0usize..5, s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (_, alg) = fixture(fi);
        let (m, m2, n) = (module(&alg, s1), module(&alg, s2), module(&alg, s3));
        let sum = direct_sum(&alg, &[m.clone(), m2.clone()]);
        prop_assert_eq!(hom_dim(&alg, &sum, &n), hom_dim(&alg, &m, &n) + hom_dim(&alg, &m2, &n));
    }

    #[test]
    fn ext_ignores_summand_order(fi in 0usize..5, s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (_, alg) = fixture(fi);
        let (m, m2, n) = (module(&alg, s1), module(&alg, s2), module(&alg, s3));
        let a = direct_sum(&alg, &[m.clone(), m2.clone()]);
        let b = direct_sum(&alg, &[m2, m]);
        prop_assert_eq!(ext1_dim(&alg, &a, &n), ext1_dim(&alg, &b, &n));
    }

    #[test]
    fn composition_rank_bound(fi in 0usize..5, s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>(), c in any::<u64>()) {
        let (_, alg) = fixture(fi);
        let (x, y, z) = (module(&alg, s1), module(&alg, s2), module(&alg, s3));
        let mut rng = SeedStream::new(c).rng();
        let fb = hom_basis(&alg, &x, &y);
        let gb = hom_basis(&alg, &y, &z);
        let f = combine(&fb, &fb.iter().map(|_| Q::sample(&mut rng, 3)).collect::<Vec<_>>(), &x, &y);
        let g = combine(&gb, &gb.iter().map(|_| Q::sample(&mut rng, 3)).collect::<Vec<_>>(), &y, &z);
        let gf = f.then(&g);
        prop_assert!(gf.intertwines(&alg));
        prop_assert!(gf.rank() <= f.rank().min(g.rank()));
    }

    #[test]
    fn presentation_rank_is_iso_invariant(fi in 0usize..5, seed in any::<u64>()) {
        let (_, alg) = fixture(fi);
        let m = module(&alg, seed);
        let m2 = scramble(&alg, &mut SeedStream::new(seed ^ 1).rng(), &m);
        prop_assert_eq!(min_presentation(&alg, &m).rank(), min_presentation(&alg, &m2).rank());
    }

    #[test]
    fn cover_is_onto(fi in 0usize..5, seed in any::<u64>()) {
        let (_, alg) = fixture(fi);
        let m = module(&alg, seed);
        let (_, epi) = projective_cover(&alg, &m);
        prop_assert!(epi.intertwines(&alg));
        prop_assert_eq!(epi.rank(), m.total_dim());
    }

    #[test]
    fn e_at_most_big_e(fi in 0usize..5, seed in any::<u64>()) {
        let (_, alg) = fixture(fi);
        let m = module(&alg, seed);
        prop_assert!(self_extension(&alg, &m) <= e_invariant_self(&alg, &m));
        prop_assert!(tau(&alg, &m).check_relations(&alg).is_ok());
    }

    #[test]
    fn quotient_by_annihilator_is_faithful(fi in 0usize..5, seed in any::<u64>()) {
        let (_, alg) = fixture(fi);
        let m = module(&alg, seed);
        let ideal = annihilator(&alg, &m);
        for x in ideal.basis() {
            prop_assert!(taureg_core::rep::act(&alg, &x, &m).is_zero());
        }
        let (b, _) = quotient_algebra(&alg, &ideal).unwrap();
        let mb = taureg_core::ar::transport(&alg, &m, &ideal).unwrap().1;
        prop_assert!(is_faithful(&b, &mb));
    }

    #[test]
    fn generic_rank_is_monotone_in_trials(fi in 0usize..5, a in prop::collection::vec(0usize..2, 3), b in prop::collection::vec(0usize..2, 3), seed in any::<u64>()) {
        let (_, alg) = fixture(fi);
        let n = alg.num_vertices();
        let (p1, p0) = (ProjDecomp::new(a[..n].to_vec()), ProjDecomp::new(b[..n].to_vec()));
        let few = generic_rank(&alg, &p1, &p0, 2, seed, &[]);
        let many = generic_rank(&alg, &p1, &p0, 8, seed, &[]);
        prop_assert!(many.value >= few.value);
        let again = generic_rank(&alg, &p1, &p0, 4, seed, std::slice::from_ref(&few.witness.map));
        prop_assert!(again.value >= few.value);
    }
}

#[test]
fn algebra_dimension_identity() {
    for fx in Fixture::ALL {
        let alg: Algebra<Q> = fx.algebra().unwrap();
        let total: usize = (0..alg.num_vertices()).map(|i| projective(&alg, i).total_dim()).sum();
        assert_eq!(total, alg.dim(), "{}", fx.name());
    }
}
