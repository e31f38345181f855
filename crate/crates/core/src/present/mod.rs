//! Two-complexes of projectives, minimal presentations, maximal ranks and
//! the additivity scanner.

mod generic;
mod scan;

pub use generic::{generic_rank, Certificate, GenericRank, HomSpace};
pub use scan::{additivity_scan, RankScanReport};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Matrix, Scalar};
use crate::quiver::{Algebra, Element};
use crate::rep::{cokernel, kernel, projective, projective_cover, radical_of, Morphism, Representation};

/// `⊕_v P(v)^{m_v}`, realized with summands in vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct ProjDecomp {
    mult: Vec<usize>,
}

impl ProjDecomp {
    pub fn new(mult: Vec<usize>) -> Self {
        ProjDecomp { mult }
    }

    pub fn zero(vertices: usize) -> Self {
        ProjDecomp { mult: vec![0; vertices] }
    }

    /// A single copy of `P(v)`.
    pub fn single(vertices: usize, v: usize) -> Self {
        let mut mult = vec![0; vertices];
        mult[v] = 1;
        ProjDecomp { mult }
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.mult
    }

    pub fn is_zero(&self) -> bool {
        self.mult.iter().all(|&m| m == 0)
    }

    /// Vertex of each summand, in layout order.
    pub fn summands(&self) -> Vec<usize> {
        self.mult.iter().enumerate().flat_map(|(v, &m)| std::iter::repeat_n(v, m)).collect()
    }

    pub fn scaled(&self, t: usize) -> Self {
        ProjDecomp { mult: self.mult.iter().map(|m| m * t).collect() }
    }

    pub fn plus(&self, other: &Self) -> Self {
        ProjDecomp { mult: self.mult.iter().zip(&other.mult).map(|(a, b)| a + b).collect() }
    }

    /// `self ⊖ other`, or `None` if some multiplicity would go negative.
    pub fn checked_minus(&self, other: &Self) -> Option<Self> {
        let mult = self.mult.iter().zip(&other.mult).map(|(a, b)| a.checked_sub(*b)).collect::<Option<_>>()?;
        Some(ProjDecomp { mult })
    }

    pub fn dims<F: Scalar>(&self, alg: &Algebra<F>) -> Vec<usize> {
        (0..alg.num_vertices())
            .map(|w| self.mult.iter().enumerate().map(|(v, m)| m * alg.basis_between(v, w).len()).sum())
            .collect()
    }

    pub fn total_dim<F: Scalar>(&self, alg: &Algebra<F>) -> usize {
        self.dims(alg).iter().sum()
    }

    pub fn realize<F: Scalar>(&self, alg: &Algebra<F>) -> Representation<F> {
        let parts: Vec<_> = self.summands().into_iter().map(|v| projective(alg, v)).collect();
        crate::rep::direct_sum(alg, &parts)
    }
}

impl std::fmt::Display for ProjDecomp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(v, &m)| if m == 1 { format!("P({})", v + 1) } else { format!("P({})^{m}", v + 1) })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Row offsets of each summand inside the realized sum, per vertex:
/// `offsets[w][k]`.
pub(crate) fn summand_offsets<F: Scalar>(alg: &Algebra<F>, summands: &[usize]) -> Vec<Vec<usize>> {
    (0..alg.num_vertices())
        .map(|w| {
            let mut acc = 0;
            summands
                .iter()
                .map(|&v| {
                    let o = acc;
                    acc += alg.basis_between(v, w).len();
                    o
                })
                .collect()
        })
        .collect()
}

/// Vertex matrices of `P(i) -> P(j)`, `p ↦ p x`, for `x ∈ e_i A e_j`.
pub(crate) fn entry_blocks<F: Scalar>(alg: &Algebra<F>, i: usize, j: usize, x: &[F]) -> Vec<Matrix<F>> {
    (0..alg.num_vertices())
        .map(|w| {
            let src = alg.basis_between(i, w);
            let tgt = alg.basis_between(j, w);
            let mut m = Matrix::zeros(tgt.len(), src.len());
            for (c, &b) in src.iter().enumerate() {
                let y = alg.multiply(&alg.basis_vector(b), x);
                for (r, &t) in tgt.iter().enumerate() {
                    m[(r, c)] = y[t].clone();
                }
            }
            m
        })
        .collect()
}

/// A morphism `P_1 -> P_0` between realized sums of indecomposable
/// projectives.
#[derive(Clone, Debug)]
pub struct TwoComplex<F> {
    pub p1: ProjDecomp,
    pub p0: ProjDecomp,
    pub map: Morphism<F>,
    /// Coordinates of `map` in the parameter basis of [`HomSpace`], when known.
    pub coeffs: Option<Vec<F>>,
}

impl<F: Scalar> TwoComplex<F> {
    pub fn zero(alg: &Algebra<F>, p1: ProjDecomp, p0: ProjDecomp) -> Self {
        let map = Morphism::zero(&p1.realize(alg), &p0.realize(alg));
        TwoComplex { p1, p0, map, coeffs: None }
    }

    /// `f(e_{i_k}) = sum_l x_{kl}` with `x_{kl} ∈ e_{i_k} A e_{j_l}`.
    pub fn from_entries(alg: &Algebra<F>, p1: ProjDecomp, p0: ProjDecomp, entries: &[Vec<Element<F>>]) -> Self {
        let s1 = p1.summands();
        let s0 = p0.summands();
        let o1 = summand_offsets(alg, &s1);
        let o0 = summand_offsets(alg, &s0);
        let source = p1.realize(alg);
        let target = p0.realize(alg);
        let mut maps: Vec<Matrix<F>> =
            (0..alg.num_vertices()).map(|w| Matrix::zeros(target.dim(w), source.dim(w))).collect();
        for (k, &i) in s1.iter().enumerate() {
            for (l, &j) in s0.iter().enumerate() {
                let x = &entries[k][l];
                if x.iter().all(|c| c.is_zero()) {
                    continue;
                }
                for (w, b) in entry_blocks(alg, i, j, x).into_iter().enumerate() {
                    maps[w].set_block(o0[w][l], o1[w][k], &b);
                }
            }
        }
        let map = Morphism::from_parts(source, target, maps);
        TwoComplex { p1, p0, map, coeffs: None }
    }

    /// The algebra-entry matrix, read off by evaluating on top generators.
    pub fn entries(&self, alg: &Algebra<F>) -> Vec<Vec<Element<F>>> {
        let s1 = self.p1.summands();
        let s0 = self.p0.summands();
        let o1 = summand_offsets(alg, &s1);
        let o0 = summand_offsets(alg, &s0);
        s1.iter()
            .enumerate()
            .map(|(k, &i)| {
                let top = alg.basis_between(i, i).iter().position(|&b| alg.basis()[b].is_idempotent()).expect("idempotent");
                let image = self.map.map(i).column(o1[i][k] + top);
                s0.iter()
                    .enumerate()
                    .map(|(l, &j)| {
                        let mut x = alg.zero_element();
                        for (r, b) in alg.basis_between(j, i).into_iter().enumerate() {
                            x[b] = image[o0[i][l] + r].clone();
                        }
                        x
                    })
                    .collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.map.rank()
    }
}

/// Minimal projective presentation `P_1 -> P_0 -> M -> 0`.
pub fn min_presentation<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>) -> TwoComplex<F> {
    let (p0_rep, epi) = projective_cover(alg, m);
    let (k, incl) = kernel(alg, &epi);
    let (_, epi1) = projective_cover(alg, &k);
    let map = epi1.then(&incl);
    let p0 = ProjDecomp::new(crate::rep::top_multiplicities(alg, m));
    let p1 = ProjDecomp::new(crate::rep::top_multiplicities(alg, &k));
    debug_assert_eq!(map.target(), &p0_rep);
    let (rad, rad_incl) = radical_of(alg, &p0_rep);
    for v in 0..alg.num_vertices() {
        let span = rad_incl.map(v).hstack(map.map(v));
        assert_eq!(span.rank(), rad.dim(v), "presentation image leaves the radical");
    }
    let (cok, _) = cokernel(alg, &map);
    assert_eq!(cok.dims(), m.dims(), "presentation cokernel differs from the module");
    TwoComplex { p1, p0, map, coeffs: None }
}

/// Direct sum of complexes, re-laid out so summands stay in vertex order.
pub fn direct_sum_complexes<F: Scalar>(alg: &Algebra<F>, parts: &[TwoComplex<F>]) -> TwoComplex<F> {
    let n = alg.num_vertices();
    let p1 = parts.iter().fold(ProjDecomp::zero(n), |acc, c| acc.plus(&c.p1));
    let p0 = parts.iter().fold(ProjDecomp::zero(n), |acc, c| acc.plus(&c.p0));
    // position of (part, summand) in the merged layout
    let place = |sel: fn(&TwoComplex<F>) -> &ProjDecomp| {
        let mut next: Vec<usize> = {
            let total: Vec<usize> = (0..n).map(|v| parts.iter().map(|c| sel(c).mult[v]).sum()).collect();
            let mut start = vec![0; n];
            for v in 1..n {
                start[v] = start[v - 1] + total[v - 1];
            }
            start
        };
        parts
            .iter()
            .map(|c| {
                sel(c)
                    .summands()
                    .into_iter()
                    .map(|v| {
                        let p = next[v];
                        next[v] += 1;
                        p
                    })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
    };
    let pos1 = place(|c| &c.p1);
    let pos0 = place(|c| &c.p0);
    let mut entries = vec![vec![alg.zero_element(); p0.summands().len()]; p1.summands().len()];
    for (idx, c) in parts.iter().enumerate() {
        for (k, row) in c.entries(alg).into_iter().enumerate() {
            for (l, x) in row.into_iter().enumerate() {
                entries[pos1[idx][k]][pos0[idx][l]] = x;
            }
        }
    }
    TwoComplex::from_entries(alg, p1, p0, &entries)
}

/// `c^{⊕t}`.
pub fn direct_sum_complex<F: Scalar>(alg: &Algebra<F>, c: &TwoComplex<F>, t: usize) -> TwoComplex<F> {
    assert!(t >= 1);
    let out = direct_sum_complexes(alg, &vec![c.clone(); t]);
    assert_eq!(out.rank(), t * c.rank(), "block-diagonal rank is not additive");
    out
}

/// Splitting `c ≅ c_min ⊕ (P --1--> P) ⊕ (P' -> 0)`.
#[derive(Clone, Debug)]
pub struct Reduction<F> {
    pub minimal: TwoComplex<F>,
    /// The `P` of the identity part and its total dimension.
    pub identity_part: ProjDecomp,
    pub identity_dim: usize,
    pub zero_part: ProjDecomp,
}

pub fn reduce_presentation<F: Scalar>(alg: &Algebra<F>, c: &TwoComplex<F>) -> Result<Reduction<F>> {
    let (cok, _) = cokernel(alg, &c.map);
    let minimal = min_presentation(alg, &cok);
    let identity_part = c
        .p0
        .checked_minus(&minimal.p0)
        .ok_or_else(|| Error::Internal("identity part has negative multiplicity".into()))?;
    let zero_part = c
        .p1
        .checked_minus(&minimal.p1)
        .and_then(|r| r.checked_minus(&identity_part))
        .ok_or_else(|| Error::Internal("zero part has negative multiplicity".into()))?;
    let identity_dim = identity_part.total_dim(alg);
    if c.rank() != minimal.rank() + identity_dim {
        return Err(Error::Internal(format!(
            "rank {} differs from {} + {}",
            c.rank(),
            minimal.rank(),
            identity_dim
        )));
    }
    Ok(Reduction { minimal, identity_part, identity_dim, zero_part })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::fixtures::{alg_a_f, s2_s3, Fixture};
    use crate::rep::{iso_test, simple};

    #[test]
    fn presentations_of_projectives_and_simples() {
        let b = Fixture::AlgB.algebra::<Q>().unwrap();
        for i in 0..3 {
            let c = min_presentation(&b, &projective(&b, i));
            assert!(c.p1.is_zero());
            assert_eq!(c.p0, ProjDecomp::single(3, i));
        }
        let c = min_presentation(&b, &simple(&b, 1));
        assert_eq!((c.p1.clone(), c.p0.clone(), c.rank()), (ProjDecomp::single(3, 0), ProjDecomp::single(3, 1), 1));
        let c = min_presentation(&b, &s2_s3(&b));
        assert_eq!(c.p1, ProjDecomp::new(vec![1, 1, 0]));
        assert_eq!(c.p0, ProjDecomp::new(vec![0, 1, 1]));
        assert_eq!(c.rank(), 2);
    }

    #[test]
    fn entries_round_trip() {
        let a = Fixture::AlgA.algebra::<Q>().unwrap();
        let f = alg_a_f(&a, [2, -1, 3]);
        let c = TwoComplex { p1: ProjDecomp::single(3, 1), p0: ProjDecomp::single(3, 2), map: f.clone(), coeffs: None };
        let rebuilt = TwoComplex::from_entries(&a, c.p1.clone(), c.p0.clone(), &c.entries(&a));
        assert_eq!(rebuilt.map, f);
        assert!(rebuilt.map.intertwines(&a));
    }

    #[test]
    fn direct_sums() {
        let a = Fixture::AlgA.algebra::<Q>().unwrap();
        let c = TwoComplex { p1: ProjDecomp::single(3, 1), p0: ProjDecomp::single(3, 2), map: alg_a_f(&a, [1, 0, 0]), coeffs: None };
        assert_eq!(direct_sum_complex(&a, &c, 1).map, c.map);
        let d = direct_sum_complex(&a, &c, 2);
        assert_eq!(d.rank(), 6);
        assert!(d.map.intertwines(&a));
        let z = TwoComplex::zero(&a, ProjDecomp::single(3, 0), ProjDecomp::zero(3));
        assert_eq!(direct_sum_complex(&a, &z, 3).rank(), 0);
        // mixed layout: (P(1) -> P(3)) ⊕ (P(2) -> P(3)) reorders summands
        let e = TwoComplex::zero(&a, ProjDecomp::single(3, 0), ProjDecomp::single(3, 2));
        let s = direct_sum_complexes(&a, &[c.clone(), e]);
        assert_eq!(s.p1, ProjDecomp::new(vec![1, 1, 0]));
        assert_eq!(s.rank(), 3);
        assert!(s.map.intertwines(&a));
    }

    #[test]
    fn reductions() {
        let b = Fixture::AlgB.algebra::<Q>().unwrap();
        let p = ProjDecomp::single(3, 1);
        let id = TwoComplex { p1: p.clone(), p0: p.clone(), map: Morphism::identity(&p.realize(&b)), coeffs: None };
        let r = reduce_presentation(&b, &id).unwrap();
        assert!(r.minimal.p0.is_zero() && r.minimal.p1.is_zero());
        assert_eq!((r.identity_dim, r.zero_part.is_zero()), (2, true));
        let z = TwoComplex::zero(&b, p.clone(), ProjDecomp::zero(3));
        let r = reduce_presentation(&b, &z).unwrap();
        assert_eq!((r.identity_dim, r.zero_part.clone()), (0, p));

        let a = Fixture::AlgA.algebra::<Q>().unwrap();
        let c = TwoComplex { p1: ProjDecomp::single(3, 1), p0: ProjDecomp::single(3, 2), map: alg_a_f(&a, [3, 1, -2]), coeffs: None };
        let r = reduce_presentation(&a, &c).unwrap();
        assert_eq!((r.minimal.p1.clone(), r.minimal.p0.clone()), (c.p1.clone(), c.p0.clone()));
        assert_eq!((r.identity_dim, r.zero_part.is_zero()), (0, true));
        assert!(iso_test(&a, &cokernel(&a, &r.minimal.map).0, &cokernel(&a, &c.map).0));
    }
}
