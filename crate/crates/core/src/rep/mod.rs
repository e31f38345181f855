//! Modules as quiver representations and the morphisms between them.
//!
//! A representation of `A` assigns a vector space `M_v` to every vertex
//! and a matrix `M_a : M_source -> M_target` (`dim target x dim source`)
//! to every arrow. Left modules throughout: `P(i) = A e_i` has basis the
//! paths starting at `i`.

mod cover;
mod hom;

pub use cover::{
    ext1_dim, injective_envelope, is_direct_summand, is_faithful, is_projective, is_sincere, iso_test, proj_dim,
    projective_cover, radical_of, socle, syzygy, top, top_multiplicities, ProjDim,
};
pub use hom::{cokernel, hom_basis, hom_dim, image, kernel, rank_of, stable_hom_dim_inj};

use crate::error::{Error, Result};
use crate::field::{Matrix, Scalar};
use crate::quiver::Algebra;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation<F> {
    dims: Vec<usize>,
    maps: Vec<Matrix<F>>,
}

impl<F: Scalar> Representation<F> {
    /// Builds a representation, checking shapes and that every relation
    /// of `alg` acts as zero.
    pub fn new(alg: &Algebra<F>, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Result<Self> {
        if dims.len() != alg.num_vertices() {
            return Err(Error::Shape(format!("{} dimensions for {} vertices", dims.len(), alg.num_vertices())));
        }
        if maps.len() != alg.arrows().len() {
            return Err(Error::Shape(format!("{} matrices for {} arrows", maps.len(), alg.arrows().len())));
        }
        for (a, (arrow, m)) in alg.arrows().iter().zip(&maps).enumerate() {
            if m.rows() != dims[arrow.target] || m.cols() != dims[arrow.source] {
                return Err(Error::Shape(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    alg.arrows()[a].name,
                    dims[arrow.target],
                    dims[arrow.source],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let rep = Representation { dims, maps };
        rep.check_relations(alg)?;
        Ok(rep)
    }

    pub(crate) fn from_parts(dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Self {
        Representation { dims, maps }
    }

    pub fn zero(alg: &Algebra<F>) -> Self {
        let dims = vec![0; alg.num_vertices()];
        let maps = alg.arrows().iter().map(|_| Matrix::zeros(0, 0)).collect();
        Representation { dims, maps }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn map(&self, arrow: usize) -> &Matrix<F> {
        &self.maps[arrow]
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    /// Offset of vertex `v`'s block inside `⊕_v M_v`.
    pub fn offset(&self, v: usize) -> usize {
        self.dims[..v].iter().sum()
    }

    /// Applies a basis element (a path residue) to a vector of `M_source`.
    pub fn apply_path(&self, alg: &Algebra<F>, basis_index: usize, v: &[F]) -> Vec<F> {
        let b = &alg.basis()[basis_index];
        let mut x = v.to_vec();
        for &a in b.word.iter().rev() {
            x = self.maps[a].apply(&x);
        }
        x
    }

    /// Checks that `a -> act(a)` is an algebra homomorphism `A -> End(M)`
    /// agreeing with the arrow matrices.
    pub fn check_relations(&self, alg: &Algebra<F>) -> Result<()> {
        let acts: Vec<Matrix<F>> = (0..alg.dim()).map(|i| act_basis(alg, self, i)).collect();
        let combine = |x: &[F]| {
            let n = self.total_dim();
            let mut m = Matrix::zeros(n, n);
            for (c, a) in x.iter().zip(&acts) {
                m.add_scaled(c, a);
            }
            m
        };
        for (a, arrow) in alg.arrows().iter().enumerate() {
            let mut embedded = Matrix::zeros(self.total_dim(), self.total_dim());
            embedded.set_block(self.offset(arrow.target), self.offset(arrow.source), &self.maps[a]);
            if combine(alg.arrow_element(a)) != embedded {
                return Err(Error::RelationViolation(format!("arrow {} is inconsistent with its residue", arrow.name)));
            }
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                if alg.basis()[i].source != alg.basis()[j].target {
                    continue;
                }
                let mut prod = alg.zero_element();
                for (k, c) in alg.basis_product(i, j) {
                    prod[*k] = c.clone();
                }
                if acts[i].mul(&acts[j]) != combine(&prod) {
                    return Err(Error::RelationViolation(format!(
                        "{} * {} does not act as its product",
                        alg.basis_name(i),
                        alg.basis_name(j)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Same module over the opposite algebra's dual: `D M`.
    pub fn dual(&self) -> Representation<F> {
        Representation { dims: self.dims.clone(), maps: self.maps.iter().map(Matrix::transpose).collect() }
    }

    /// Applies an invertible change of basis `g_v` at each vertex.
    pub fn conjugate(&self, alg: &Algebra<F>, g: &[Matrix<F>]) -> Representation<F> {
        let maps = alg
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(arrow, m)| {
                let inv = g[arrow.source].right_inverse().expect("invertible change of basis");
                g[arrow.target].mul(m).mul(&inv)
            })
            .collect();
        Representation { dims: self.dims.clone(), maps }
    }
}

/// Action of basis element `i` on `⊕_v M_v`.
pub fn act_basis<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>, i: usize) -> Matrix<F> {
    let n = m.total_dim();
    let b = &alg.basis()[i];
    let mut block = Matrix::identity(m.dims[b.source]);
    for &a in b.word.iter().rev() {
        block = m.maps[a].mul(&block);
    }
    let mut out = Matrix::zeros(n, n);
    out.set_block(m.offset(b.target), m.offset(b.source), &block);
    out
}

/// Action of an arbitrary element on `⊕_v M_v`.
pub fn act<F: Scalar>(alg: &Algebra<F>, x: &[F], m: &Representation<F>) -> Matrix<F> {
    let n = m.total_dim();
    let mut out = Matrix::zeros(n, n);
    for (i, c) in x.iter().enumerate() {
        if !c.is_zero() {
            out.add_scaled(c, &act_basis(alg, m, i));
        }
    }
    out
}

/// A module homomorphism given by one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism<F> {
    source: Representation<F>,
    target: Representation<F>,
    maps: Vec<Matrix<F>>,
}

impl<F: Scalar> Morphism<F> {
    /// Checks shapes and `N_a f_source(a) = f_target(a) M_a` for every arrow.
    pub fn new(
        alg: &Algebra<F>,
        source: Representation<F>,
        target: Representation<F>,
        maps: Vec<Matrix<F>>,
    ) -> Result<Self> {
        let f = Morphism { source, target, maps };
        if f.maps.len() != alg.num_vertices()
            || f.maps.iter().enumerate().any(|(v, m)| m.rows() != f.target.dims[v] || m.cols() != f.source.dims[v])
        {
            return Err(Error::Shape("vertex maps do not match the dimension vectors".into()));
        }
        if !f.intertwines(alg) {
            return Err(Error::Shape("vertex maps do not commute with the arrows".into()));
        }
        Ok(f)
    }

    pub(crate) fn from_parts(source: Representation<F>, target: Representation<F>, maps: Vec<Matrix<F>>) -> Self {
        Morphism { source, target, maps }
    }

    pub fn intertwines(&self, alg: &Algebra<F>) -> bool {
        alg.arrows().iter().enumerate().all(|(a, arrow)| {
            self.target.maps[a].mul(&self.maps[arrow.source]) == self.maps[arrow.target].mul(&self.source.maps[a])
        })
    }

    pub fn zero(source: &Representation<F>, target: &Representation<F>) -> Self {
        let maps = (0..source.dims.len()).map(|v| Matrix::zeros(target.dims[v], source.dims[v])).collect();
        Morphism { source: source.clone(), target: target.clone(), maps }
    }

    pub fn identity(m: &Representation<F>) -> Self {
        let maps = m.dims.iter().map(|&d| Matrix::identity(d)).collect();
        Morphism { source: m.clone(), target: m.clone(), maps }
    }

    pub fn source(&self) -> &Representation<F> {
        &self.source
    }

    pub fn target(&self) -> &Representation<F> {
        &self.target
    }

    pub fn map(&self, v: usize) -> &Matrix<F> {
        &self.maps[v]
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    pub fn rank(&self) -> usize {
        self.maps.iter().map(Matrix::rank).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    pub fn is_iso(&self) -> bool {
        self.maps.iter().all(Matrix::is_invertible)
    }

    /// `g ∘ f` where `self = f` and `g` starts at `f`'s target.
    pub fn then(&self, g: &Morphism<F>) -> Morphism<F> {
        assert_eq!(self.target.dims, g.source.dims, "composition of incompatible morphisms");
        let maps = self.maps.iter().zip(&g.maps).map(|(f, g)| g.mul(f)).collect();
        Morphism { source: self.source.clone(), target: g.target.clone(), maps }
    }

    pub fn add(&self, other: &Morphism<F>) -> Morphism<F> {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect();
        Morphism { source: self.source.clone(), target: self.target.clone(), maps }
    }

    pub fn scale(&self, c: &F) -> Morphism<F> {
        let maps = self.maps.iter().map(|a| a.scale(c)).collect();
        Morphism { source: self.source.clone(), target: self.target.clone(), maps }
    }

    /// `D f : D N -> D M`, a morphism over the opposite algebra.
    pub fn dual(&self) -> Morphism<F> {
        Morphism {
            source: self.target.dual(),
            target: self.source.dual(),
            maps: self.maps.iter().map(Matrix::transpose).collect(),
        }
    }

    /// Flattened coordinates (vertex by vertex, row-major).
    pub fn coordinates(&self) -> Vec<F> {
        self.maps.iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }
}

/// Linear combination `sum_k c_k f_k` of parallel morphisms.
pub fn combine<F: Scalar>(basis: &[Morphism<F>], coeffs: &[F], source: &Representation<F>, target: &Representation<F>) -> Morphism<F> {
    let mut out = Morphism::zero(source, target);
    for (f, c) in basis.iter().zip(coeffs) {
        for (m, fm) in out.maps.iter_mut().zip(&f.maps) {
            m.add_scaled(c, fm);
        }
    }
    out
}

/// The simple module `S(i)`.
pub fn simple<F: Scalar>(alg: &Algebra<F>, i: usize) -> Representation<F> {
    let mut dims = vec![0; alg.num_vertices()];
    dims[i] = 1;
    let maps = alg.arrows().iter().map(|a| Matrix::zeros(dims[a.target], dims[a.source])).collect();
    Representation { dims, maps }
}

/// The indecomposable projective `P(i) = A e_i`; at vertex `v` its basis is
/// `alg.basis_between(i, v)` and arrows act by left multiplication.
pub fn projective<F: Scalar>(alg: &Algebra<F>, i: usize) -> Representation<F> {
    let n = alg.num_vertices();
    let spaces: Vec<Vec<usize>> = (0..n).map(|v| alg.basis_between(i, v)).collect();
    let dims: Vec<usize> = spaces.iter().map(Vec::len).collect();
    let maps = alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            let (src, tgt) = (&spaces[arrow.source], &spaces[arrow.target]);
            let mut m = Matrix::zeros(tgt.len(), src.len());
            for (c, &x) in src.iter().enumerate() {
                let y = alg.multiply(alg.arrow_element(a), &alg.basis_vector(x));
                for (r, &t) in tgt.iter().enumerate() {
                    m[(r, c)] = y[t].clone();
                }
            }
            m
        })
        .collect();
    Representation { dims, maps }
}

/// The indecomposable injective `I(i) = D(e_i A)`, realized as the dual of
/// the opposite algebra's projective at `i`.
pub fn injective<F: Scalar>(alg: &Algebra<F>, i: usize) -> Representation<F> {
    projective(alg.op(), i).dual()
}

/// Block-diagonal direct sum.
pub fn direct_sum<F: Scalar>(alg: &Algebra<F>, parts: &[Representation<F>]) -> Representation<F> {
    let n = alg.num_vertices();
    let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
    let maps = (0..alg.arrows().len()).map(|a| Matrix::block_diag(&parts.iter().map(|p| p.maps[a].clone()).collect::<Vec<_>>())).collect();
    Representation { dims, maps }
}

/// Block-diagonal direct sum of morphisms.
pub fn direct_sum_morphisms<F: Scalar>(alg: &Algebra<F>, parts: &[Morphism<F>]) -> Morphism<F> {
    let source = direct_sum(alg, &parts.iter().map(|f| f.source.clone()).collect::<Vec<_>>());
    let target = direct_sum(alg, &parts.iter().map(|f| f.target.clone()).collect::<Vec<_>>());
    let maps = (0..alg.num_vertices())
        .map(|v| Matrix::block_diag(&parts.iter().map(|f| f.maps[v].clone()).collect::<Vec<_>>()))
        .collect();
    Morphism { source, target, maps }
}

/// `M^t`.
pub fn power<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>, t: usize) -> Representation<F> {
    direct_sum(alg, &vec![m.clone(); t])
}

/// The morphism `P(v) -> M` sending `e_v` to `m ∈ M_v`.
pub fn from_projective<F: Scalar>(alg: &Algebra<F>, v: usize, m: &Representation<F>, gen: &[F]) -> Morphism<F> {
    let p = projective(alg, v);
    let maps = (0..alg.num_vertices())
        .map(|w| {
            let cols: Vec<Vec<F>> = alg.basis_between(v, w).into_iter().map(|b| m.apply_path(alg, b, gen)).collect();
            Matrix::from_columns(&cols, m.dims[w])
        })
        .collect();
    Morphism { source: p, target: m.clone(), maps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::fixtures::Fixture;

    #[test]
    fn projective_dimension_vectors() {
        let a = Fixture::AlgA.algebra::<Q>().unwrap();
        let dims: Vec<Vec<usize>> = (0..3).map(|i| projective(&a, i).dims().to_vec()).collect();
        assert_eq!(dims, vec![vec![1, 0, 0], vec![3, 1, 0], vec![3, 3, 1]]);
        for i in 0..3 {
            projective(&a, i).check_relations(&a).unwrap();
            injective(&a, i).check_relations(&a).unwrap();
        }
    }

    #[test]
    fn injective_dimension_vectors() {
        let b = Fixture::AlgB.algebra::<Q>().unwrap();
        let dims: Vec<Vec<usize>> = (0..3).map(|i| injective(&b, i).dims().to_vec()).collect();
        assert_eq!(dims, vec![vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]]);
    }

    #[test]
    fn semisimple_modules_coincide() {
        let s = Fixture::semisimple::<Q>(3);
        for i in 0..3 {
            assert_eq!(projective(&s, i), simple(&s, i));
            assert_eq!(injective(&s, i), simple(&s, i));
        }
    }

    #[test]
    fn direct_sum_dims() {
        let b = Fixture::AlgB.algebra::<Q>().unwrap();
        let m = direct_sum(&b, &[simple(&b, 1), simple(&b, 2)]);
        assert_eq!(m.dims(), &[0, 1, 1]);
        let z = direct_sum(&b, &[m.clone(), Representation::zero(&b)]);
        assert_eq!(z, m);
        let a = Fixture::AlgA.algebra::<Q>().unwrap();
        assert_eq!(power(&a, &projective(&a, 1), 2).dims(), &[6, 2, 0]);
    }

    #[test]
    fn action_of_idempotents_and_relations() {
        let b = Fixture::AlgB.algebra::<Q>().unwrap();
        let m = direct_sum(&b, &[projective(&b, 2), injective(&b, 0), simple(&b, 1)]);
        assert_eq!(act(&b, &b.unit(), &m), Matrix::identity(m.total_dim()));
        let e2 = act(&b, &b.basis_vector(b.idempotent(1)), &m);
        let mut proj = Matrix::zeros(m.total_dim(), m.total_dim());
        proj.set_block(m.offset(1), m.offset(1), &Matrix::identity(m.dim(1)));
        assert_eq!(e2, proj);
        let (ia, ib) = (b.arrow_index("a").unwrap(), b.arrow_index("b").unwrap());
        let ab = b.multiply(b.arrow_element(ia), b.arrow_element(ib));
        assert!(act(&b, &ab, &m).is_zero());
    }

    #[test]
    fn relation_violation_detected() {
        let b = Fixture::AlgB.algebra::<Q>().unwrap();
        let one = Matrix::identity(1);
        let err = Representation::new(&b, vec![1, 1, 1], vec![one.clone(), one]);
        assert!(matches!(err, Err(Error::RelationViolation(_))));
    }
}
