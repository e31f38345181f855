use serde::Serialize;

use super::hom::{quotient_representation, subrepresentation};
use super::{combine, direct_sum, from_projective, hom_basis, hom_dim, kernel, Morphism, Representation};
use crate::field::{Matrix, Scalar, SeedStream};
use crate::quiver::{annihilator, Algebra};

/// Columns spanning `rad M` at each vertex: the sum of the images of all
/// arrows ending there.
fn radical_bases<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>) -> Vec<Matrix<F>> {
    (0..alg.num_vertices())
        .map(|v| {
            let mut acc = Matrix::zeros(m.dim(v), 0);
            for (a, arrow) in alg.arrows().iter().enumerate() {
                if arrow.target == v {
                    acc = acc.hstack(m.map(a));
                }
            }
            acc.column_space()
        })
        .collect()
}

/// `rad M` with its inclusion.
pub fn radical_of<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>) -> (Representation<F>, Morphism<F>) {
    subrepresentation(alg, m, radical_bases(alg, m))
}

/// `top M = M / rad M` with its projection.
pub fn top<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>) -> (Representation<F>, Morphism<F>) {
    quotient_representation(alg, m, &radical_bases(alg, m))
}

/// `soc M`: the joint kernel of all arrows leaving each vertex.
pub fn socle<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>) -> (Representation<F>, Morphism<F>) {
    let bases = (0..alg.num_vertices())
        .map(|v| {
            let mut acc = Matrix::zeros(0, m.dim(v));
            for (a, arrow) in alg.arrows().iter().enumerate() {
                if arrow.source == v {
                    acc = acc.vstack(m.map(a));
                }
            }
            Matrix::from_columns(&acc.kernel_basis(), m.dim(v))
        })
        .collect();
    subrepresentation(alg, m, bases)
}

/// Projective cover `P_0 -> M`. `P_0 = ⊕_v P(v)^{m_v}` with summands in
/// vertex order; the top generators are the standard basis vectors that
/// extend a basis of `rad M_v`, taken greedily in index order.
pub fn projective_cover<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>) -> (Representation<F>, Morphism<F>) {
    let rad = radical_bases(alg, m);
    let mut parts = Vec::new();
    for v in 0..alg.num_vertices() {
        let d = m.dim(v);
        let mut span = rad[v].clone();
        let mut rank = span.cols();
        for k in 0..d {
            if rank == d {
                break;
            }
            let mut e = vec![F::zero(); d];
            e[k] = F::one();
            let trial = span.hstack(&Matrix::from_columns(&[e.clone()], d));
            if trial.rank() > rank {
                span = trial;
                rank += 1;
                parts.push(from_projective(alg, v, m, &e));
            }
        }
    }
    let p0 = direct_sum(alg, &parts.iter().map(|f| f.source().clone()).collect::<Vec<_>>());
    let maps = (0..alg.num_vertices())
        .map(|w| {
            let mut acc = Matrix::zeros(m.dim(w), 0);
            for f in &parts {
                acc = acc.hstack(f.map(w));
            }
            acc
        })
        .collect();
    let epi = Morphism::from_parts(p0.clone(), m.clone(), maps);
    (p0, epi)
}

/// Multiplicities `m_v` of `P(v)` in the projective cover (the top's
/// dimension vector).
pub fn top_multiplicities<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>) -> Vec<usize> {
    radical_bases(alg, m).iter().enumerate().map(|(v, r)| m.dim(v) - r.cols()).collect()
}

/// Injective envelope `M -> I_0`, dual to the projective cover of `D M`
/// over the opposite algebra.
pub fn injective_envelope<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>) -> (Representation<F>, Morphism<F>) {
    let (_, epi) = projective_cover(alg.op(), &m.dual());
    let mono = epi.dual();
    (mono.target().clone(), mono)
}

/// `Ω M`, the kernel of the projective cover, with its inclusion into `P_0`.
pub fn syzygy<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>) -> (Representation<F>, Morphism<F>) {
    let (_, epi) = projective_cover(alg, m);
    kernel(alg, &epi)
}

pub fn is_projective<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>) -> bool {
    let (p0, _) = projective_cover(alg, m);
    p0.total_dim() == m.total_dim()
}

/// `dim Ext^1(M, N)` from `0 -> Ω M -> P_0 -> M -> 0`.
pub fn ext1_dim<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>, n: &Representation<F>) -> usize {
    let mult = top_multiplicities(alg, m);
    let (omega, _) = syzygy(alg, m);
    let hom_p0: usize = mult.iter().enumerate().map(|(v, k)| k * n.dim(v)).sum();
    hom_dim(alg, &omega, n) + hom_dim(alg, m, n) - hom_p0
}

/// Outcome of a projective dimension computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum ProjDim {
    Finite(usize),
    /// `Ω^from M` is a direct summand of `Ω^to M` (`from < to`, both nonzero).
    Infinite { from: usize, to: usize },
    /// No decision within the cap; the dimension is at least this value.
    AtLeast(usize),
}

impl ProjDim {
    pub fn at_most(&self, k: usize) -> Option<bool> {
        match *self {
            ProjDim::Finite(d) => Some(d <= k),
            ProjDim::Infinite { .. } => Some(false),
            ProjDim::AtLeast(d) if d > k => Some(false),
            ProjDim::AtLeast(_) => None,
        }
    }
}

impl std::fmt::Display for ProjDim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProjDim::Finite(d) => write!(f, "{d}"),
            ProjDim::Infinite { .. } => write!(f, "infinite"),
            ProjDim::AtLeast(d) => write!(f, ">= {d}"),
        }
    }
}

/// Syzygies larger than this stop the search.
const SYZYGY_SIZE_LIMIT: usize = 400;

/// Projective dimension by iterated minimal syzygies. Infinite dimension is
/// certified when an earlier nonzero syzygy reappears as a direct summand
/// of a later one (then its projective dimension would exceed itself).
pub fn proj_dim<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>, cap: usize) -> ProjDim {
    if m.is_zero() {
        return ProjDim::Finite(0);
    }
    let mut syzygies = vec![m.clone()];
    for k in 0..=cap {
        let (next, _) = syzygy(alg, &syzygies[k]);
        if next.is_zero() {
            return ProjDim::Finite(k);
        }
        if next.total_dim() > SYZYGY_SIZE_LIMIT {
            return ProjDim::AtLeast(k + 1);
        }
        let stream = SeedStream::new(0x5e55_10e0 ^ k as u64);
        for (i, earlier) in syzygies.iter().enumerate() {
            if is_direct_summand(alg, earlier, &next, stream.split(i as u64)) {
                return ProjDim::Infinite { from: i, to: k + 1 };
            }
        }
        syzygies.push(next);
    }
    ProjDim::AtLeast(cap + 1)
}

/// Searches for `f: X -> Y`, `g: Y -> X` with `g ∘ f` invertible. A `true`
/// answer is certified; `false` only means no splitting was found.
pub fn is_direct_summand<F: Scalar>(alg: &Algebra<F>, x: &Representation<F>, y: &Representation<F>, seed: SeedStream) -> bool {
    if x.is_zero() {
        return true;
    }
    if x.dims().iter().zip(y.dims()).any(|(a, b)| a > b) {
        return false;
    }
    let fs = hom_basis(alg, x, y);
    let gs = hom_basis(alg, y, x);
    if fs.is_empty() || gs.is_empty() {
        return false;
    }
    for t in 0..8 {
        let mut rng = seed.split(t).rng();
        let cf: Vec<F> = fs.iter().map(|_| F::sample(&mut rng, 1000)).collect();
        let cg: Vec<F> = gs.iter().map(|_| F::sample(&mut rng, 1000)).collect();
        let f = combine(&fs, &cf, x, y);
        let g = combine(&gs, &cg, y, x);
        if f.then(&g).is_iso() {
            return true;
        }
    }
    false
}

/// Whether `M ≅ N`: random elements of `Hom(M, N)` are tested for
/// invertibility (8 draws), then an exhaustive grid when the Hom space has
/// at most 6 parameters.
pub fn iso_test<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>, n: &Representation<F>) -> bool {
    if m.dims() != n.dims() {
        return false;
    }
    if m.is_zero() {
        return true;
    }
    let basis = hom_basis(alg, m, n);
    if basis.is_empty() || hom_dim(alg, m, m) != basis.len() || hom_dim(alg, n, n) != basis.len() {
        return false;
    }
    let stream = SeedStream::new(0x1507);
    for t in 0..8 {
        let mut rng = stream.split(t).rng();
        let c: Vec<F> = basis.iter().map(|_| F::sample(&mut rng, 1000)).collect();
        if combine(&basis, &c, m, n).is_iso() {
            return true;
        }
    }
    if basis.len() <= 6 {
        let grid: Vec<F> = [-1i64, 0, 1, 2].iter().map(|&v| F::from_i64(v)).collect();
        let k = basis.len();
        let mut idx = vec![0usize; k];
        loop {
            let c: Vec<F> = idx.iter().map(|&i| grid[i].clone()).collect();
            if combine(&basis, &c, m, n).is_iso() {
                return true;
            }
            let mut pos = 0;
            while pos < k {
                idx[pos] += 1;
                if idx[pos] < grid.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == k {
                break;
            }
        }
    }
    false
}

pub fn is_sincere<F: Scalar>(m: &Representation<F>) -> bool {
    m.dims().iter().all(|&d| d > 0)
}

pub fn is_faithful<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>) -> bool {
    annihilator(alg, m).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::fixtures::Fixture;
    use crate::rep::{direct_sum, injective, projective, simple};

    #[test]
    fn tops_and_socles() {
        let a = Fixture::AlgA.algebra::<Q>().unwrap();
        for i in 0..3 {
            assert!(iso_test(&a, &top(&a, &projective(&a, i)).0, &simple(&a, i)));
            assert!(iso_test(&a, &socle(&a, &injective(&a, i)).0, &simple(&a, i)));
            assert!(radical_of(&a, &simple(&a, i)).0.is_zero());
        }
    }

    #[test]
    fn covers() {
        let b = Fixture::AlgB.algebra::<Q>().unwrap();
        for i in 0..3 {
            let (p, epi) = projective_cover(&b, &simple(&b, i));
            assert_eq!(p, projective(&b, i));
            assert!(epi.intertwines(&b));
            let (p, epi) = projective_cover(&b, &projective(&b, i));
            assert_eq!(p, projective(&b, i));
            assert!(epi.is_iso());
        }
        let m = direct_sum(&b, &[simple(&b, 1), simple(&b, 2)]);
        let (p, _) = projective_cover(&b, &m);
        assert!(iso_test(&b, &p, &direct_sum(&b, &[projective(&b, 1), projective(&b, 2)])));
        let (i0, mono) = injective_envelope(&b, &simple(&b, 1));
        assert_eq!(i0, injective(&b, 1));
        assert_eq!(mono.rank(), 1);
    }

    #[test]
    fn ext_examples() {
        let b = Fixture::AlgB.algebra::<Q>().unwrap();
        assert_eq!(ext1_dim(&b, &simple(&b, 1), &simple(&b, 0)), 1);
        // only b: 3 -> 2 links the two summands: Ext^1(S(3), S(2)) = 1, the rest vanish
        let m = direct_sum(&b, &[simple(&b, 1), simple(&b, 2)]);
        assert_eq!(ext1_dim(&b, &m, &m), 1);
        assert_eq!(ext1_dim(&b, &projective(&b, 2), &m), 0);
    }

    #[test]
    fn projective_dimensions() {
        let b = Fixture::AlgB.algebra::<Q>().unwrap();
        assert_eq!(proj_dim(&b, &projective(&b, 1), 10), ProjDim::Finite(0));
        let m = direct_sum(&b, &[simple(&b, 1), simple(&b, 2)]);
        assert_eq!(proj_dim(&b, &m, 10), ProjDim::Finite(2));
        let c = Fixture::AlgC.algebra::<Q>().unwrap();
        let n = direct_sum(&c, &[simple(&c, 0), simple(&c, 1)]);
        assert!(matches!(proj_dim(&c, &n, 10), ProjDim::Infinite { .. }));
        assert!(matches!(proj_dim(&c, &simple(&c, 0), 10), ProjDim::Infinite { .. }));
    }

    #[test]
    fn isomorphism_tests() {
        let b = Fixture::AlgB.algebra::<Q>().unwrap();
        let m = direct_sum(&b, &[simple(&b, 0), simple(&b, 1)]);
        assert!(iso_test(&b, &m, &m));
        assert!(!iso_test(&b, &m, &simple(&b, 0)));
        // the indecomposable with a acting as 1 is P(2)
        assert!(!iso_test(&b, &m, &projective(&b, 1)));
    }

    #[test]
    fn sincere_and_faithful() {
        let b = Fixture::AlgB.algebra::<Q>().unwrap();
        let regular = direct_sum(&b, &(0..3).map(|v| projective(&b, v)).collect::<Vec<_>>());
        assert!(is_sincere(&regular) && is_faithful(&b, &regular));
        let m = direct_sum(&b, &[simple(&b, 1), simple(&b, 2)]);
        assert!(!is_sincere(&m));
    }
}
