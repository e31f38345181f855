//! Random modules and random two-complexes for property sweeps.

use rand::Rng;

use crate::field::{Matrix, Scalar};
use crate::present::{ProjDecomp, TwoComplex};
use crate::quiver::Algebra;
use crate::rep::{cokernel, direct_sum, injective, kernel, projective, simple, Morphism, Representation};

/// Small integer, zero about a third of the time.
fn small<F: Scalar, R: Rng + ?Sized>(rng: &mut R) -> F {
    if rng.random_range(0..3) == 0 {
        F::zero()
    } else {
        F::sample(rng, 2)
    }
}

fn random_decomp<R: Rng + ?Sized>(rng: &mut R, vertices: usize, max_mult: usize) -> ProjDecomp {
    ProjDecomp::new((0..vertices).map(|_| rng.random_range(0..=max_mult)).collect())
}

/// A two-complex with small multiplicities and sparse small coefficients,
/// so identity and zero summands occur often.
pub fn random_complex<F: Scalar, R: Rng + ?Sized>(alg: &Algebra<F>, rng: &mut R, max_mult: usize) -> TwoComplex<F> {
    let n = alg.num_vertices();
    let p1 = random_decomp(rng, n, max_mult);
    let p0 = random_decomp(rng, n, max_mult);
    let (s1, s0) = (p1.summands(), p0.summands());
    let entries: Vec<Vec<Vec<F>>> = s1
        .iter()
        .map(|&i| {
            s0.iter()
                .map(|&j| {
                    let mut x = alg.zero_element();
                    for b in alg.basis_between(j, i) {
                        x[b] = small(rng);
                    }
                    x
                })
                .collect()
        })
        .collect();
    TwoComplex::from_entries(alg, p1, p0, &entries)
}

/// An invertible `n x n` matrix with small entries.
pub fn random_invertible<F: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix<F> {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| F::sample(rng, 3));
        if m.is_invertible() {
            return m;
        }
    }
}

/// `M` under a random change of basis at every vertex.
pub fn scramble<F: Scalar, R: Rng + ?Sized>(alg: &Algebra<F>, rng: &mut R, m: &Representation<F>) -> Representation<F> {
    let g: Vec<Matrix<F>> = m.dims().iter().map(|&d| random_invertible(rng, d)).collect();
    m.conjugate(alg, &g)
}

fn basic_piece<F: Scalar, R: Rng + ?Sized>(alg: &Algebra<F>, rng: &mut R) -> Representation<F> {
    let v = rng.random_range(0..alg.num_vertices());
    match rng.random_range(0..3) {
        0 => simple(alg, v),
        1 => projective(alg, v),
        _ => injective(alg, v),
    }
}

fn candidate<F: Scalar, R: Rng + ?Sized>(alg: &Algebra<F>, rng: &mut R) -> Representation<F> {
    match rng.random_range(0..4) {
        0 => {
            let k = rng.random_range(1..=3);
            let parts: Vec<_> = (0..k).map(|_| basic_piece(alg, rng)).collect();
            direct_sum(alg, &parts)
        }
        1 => cokernel(alg, &random_complex(alg, rng, 2).map).0,
        2 => {
            // kernel of a random map of injectives, dual to a cokernel
            let c = random_complex(alg.op(), rng, 2);
            let f: Morphism<F> = c.map.dual();
            kernel(alg, &f).0
        }
        _ => {
            let c = random_complex(alg, rng, 2);
            let m = cokernel(alg, &c.map).0;
            direct_sum(alg, &[m, basic_piece(alg, rng)])
        }
    }
}

/// A nonzero module of total dimension at most `max_dim`, scrambled by a
/// random change of basis.
pub fn random_module<F: Scalar, R: Rng + ?Sized>(alg: &Algebra<F>, rng: &mut R, max_dim: usize) -> Representation<F> {
    loop {
        let m = candidate(alg, rng);
        if m.total_dim() > 0 && m.total_dim() <= max_dim {
            return scramble(alg, rng, &m);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{SeedStream, Q};
    use crate::fixtures::Fixture;

    #[test]
    fn sampled_objects_are_valid() {
        let mut rng = SeedStream::new(5).rng();
        for fx in Fixture::ALL {
            let alg = fx.algebra::<Q>().unwrap();
            for _ in 0..10 {
                let m = random_module(&alg, &mut rng, 9);
                assert!(m.total_dim() <= 9 && m.total_dim() > 0);
                m.check_relations(&alg).unwrap();
                let c = random_complex(&alg, &mut rng, 2);
                assert!(c.map.intertwines(&alg));
            }
        }
    }
}
