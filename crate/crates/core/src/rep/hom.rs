use super::{injective_envelope, Morphism, Representation};
use crate::field::{Matrix, Scalar};
use crate::quiver::Algebra;

/// Coefficient matrix of the intertwining equations
/// `N_a f_u - f_w M_a = 0` in the unknown entries of `(f_v)_v`.
fn intertwiner_system<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>, n: &Representation<F>) -> (Matrix<F>, Vec<usize>) {
    let nv = alg.num_vertices();
    let mut offsets = Vec::with_capacity(nv + 1);
    let mut total = 0;
    for v in 0..nv {
        offsets.push(total);
        total += n.dim(v) * m.dim(v);
    }
    offsets.push(total);
    let eq_count: usize = alg.arrows().iter().map(|a| n.dim(a.target) * m.dim(a.source)).sum();
    let mut sys = Matrix::<F>::zeros(eq_count, total);
    let mut row0 = 0;
    for (a, arrow) in alg.arrows().iter().enumerate() {
        let (u, w) = (arrow.source, arrow.target);
        let (na, ma) = (n.map(a), m.map(a));
        for r in 0..n.dim(w) {
            for c in 0..m.dim(u) {
                let row = row0 + r * m.dim(u) + c;
                // (N_a f_u)[r][c] = sum_k N_a[r][k] f_u[k][c]
                for k in 0..n.dim(u) {
                    let coeff = &na[(r, k)];
                    if !coeff.is_zero() {
                        let col = offsets[u] + k * m.dim(u) + c;
                        sys[(row, col)] = sys[(row, col)].plus(coeff);
                    }
                }
                // (f_w M_a)[r][c] = sum_k f_w[r][k] M_a[k][c]
                for k in 0..m.dim(w) {
                    let coeff = &ma[(k, c)];
                    if !coeff.is_zero() {
                        let col = offsets[w] + r * m.dim(w) + k;
                        sys[(row, col)] = sys[(row, col)].minus(coeff);
                    }
                }
            }
        }
        row0 += n.dim(w) * m.dim(u);
    }
    (sys, offsets)
}

/// Basis of `Hom_A(M, N)`.
pub fn hom_basis<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>, n: &Representation<F>) -> Vec<Morphism<F>> {
    let (sys, offsets) = intertwiner_system(alg, m, n);
    sys.kernel_basis()
        .into_iter()
        .map(|sol| {
            let maps = (0..alg.num_vertices())
                .map(|v| {
                    let chunk = sol[offsets[v]..offsets[v + 1]].to_vec();
                    Matrix::new(n.dim(v), m.dim(v), chunk).expect("block size")
                })
                .collect();
            Morphism::from_parts(m.clone(), n.clone(), maps)
        })
        .collect()
}

pub fn hom_dim<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>, n: &Representation<F>) -> usize {
    let (sys, _) = intertwiner_system(alg, m, n);
    sys.cols() - sys.rank()
}

/// `rk(f)`: the dimension of the image, summed over vertices.
pub fn rank_of<F: Scalar>(f: &Morphism<F>) -> usize {
    f.rank()
}

/// Subrepresentation spanned at each vertex by the columns of `bases[v]`
/// (assumed full column rank and arrow-stable), with its inclusion.
pub(crate) fn subrepresentation<F: Scalar>(
    alg: &Algebra<F>,
    m: &Representation<F>,
    bases: Vec<Matrix<F>>,
) -> (Representation<F>, Morphism<F>) {
    let left: Vec<Matrix<F>> = bases.iter().map(|b| b.left_inverse().unwrap_or_else(|| Matrix::zeros(0, b.rows()))).collect();
    let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    let maps = alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arrow)| left[arrow.target].mul(&m.map(a).mul(&bases[arrow.source])))
        .collect();
    let sub = Representation::from_parts(dims, maps);
    let incl = Morphism::from_parts(sub.clone(), m.clone(), bases);
    (sub, incl)
}

/// Quotient of `m` by the arrow-stable subspaces spanned by `bases[v]`,
/// with its projection.
pub(crate) fn quotient_representation<F: Scalar>(
    alg: &Algebra<F>,
    m: &Representation<F>,
    bases: &[Matrix<F>],
) -> (Representation<F>, Morphism<F>) {
    let proj: Vec<Matrix<F>> = bases
        .iter()
        .enumerate()
        .map(|(v, b)| if b.cols() == 0 { Matrix::identity(m.dim(v)) } else { b.left_kernel() })
        .collect();
    let sections: Vec<Matrix<F>> =
        proj.iter().map(|q| q.right_inverse().unwrap_or_else(|| Matrix::zeros(q.cols(), 0))).collect();
    let dims: Vec<usize> = proj.iter().map(Matrix::rows).collect();
    let maps = alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arrow)| proj[arrow.target].mul(&m.map(a).mul(&sections[arrow.source])))
        .collect();
    let quo = Representation::from_parts(dims, maps);
    let p = Morphism::from_parts(m.clone(), quo.clone(), proj);
    (quo, p)
}

/// `ker f` with its inclusion into `f.source()`.
pub fn kernel<F: Scalar>(alg: &Algebra<F>, f: &Morphism<F>) -> (Representation<F>, Morphism<F>) {
    let bases = f
        .maps()
        .iter()
        .map(|fv| {
            let k = fv.kernel_basis();
            Matrix::from_columns(&k, fv.cols())
        })
        .collect();
    subrepresentation(alg, f.source(), bases)
}

/// `im f` with the corestriction `M -> im f` and the inclusion `im f -> N`.
pub fn image<F: Scalar>(alg: &Algebra<F>, f: &Morphism<F>) -> (Representation<F>, Morphism<F>, Morphism<F>) {
    let bases: Vec<Matrix<F>> = f.maps().iter().map(Matrix::column_space).collect();
    let (im, incl) = subrepresentation(alg, f.target(), bases.clone());
    let coimage_maps = bases
        .iter()
        .zip(f.maps())
        .map(|(b, fv)| match b.left_inverse() {
            Some(l) => l.mul(fv),
            None => Matrix::zeros(0, fv.cols()),
        })
        .collect();
    let onto = Morphism::from_parts(f.source().clone(), im.clone(), coimage_maps);
    (im, onto, incl)
}

/// `cok f` with the projection `N -> cok f`.
pub fn cokernel<F: Scalar>(alg: &Algebra<F>, f: &Morphism<F>) -> (Representation<F>, Morphism<F>) {
    let bases: Vec<Matrix<F>> = f.maps().iter().map(Matrix::column_space).collect();
    quotient_representation(alg, f.target(), &bases)
}

/// `dim Hom(N, X)` minus the morphisms factoring through the injective
/// envelope of `N`.
pub fn stable_hom_dim_inj<F: Scalar>(alg: &Algebra<F>, n: &Representation<F>, x: &Representation<F>) -> usize {
    let total = hom_dim(alg, n, x);
    if total == 0 || n.is_zero() {
        return total;
    }
    let (_, iota) = injective_envelope(alg, n);
    let through: Vec<Vec<F>> = hom_basis(alg, iota.target(), x).iter().map(|g| iota.then(g).coordinates()).collect();
    if through.is_empty() {
        return total;
    }
    let width = through[0].len();
    total - Matrix::from_rows(through, width).expect("uniform width").rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::fixtures::Fixture;
    use crate::rep::{direct_sum, injective, projective, simple};

    #[test]
    fn hom_dims_alg_a() {
        let a = Fixture::AlgA.algebra::<Q>().unwrap();
        assert_eq!(hom_dim(&a, &projective(&a, 1), &projective(&a, 2)), 3);
        assert_eq!(hom_dim(&a, &projective(&a, 2), &projective(&a, 2)), 1);
        assert_eq!(hom_dim(&a, &simple(&a, 0), &simple(&a, 1)), 0);
        for f in hom_basis(&a, &projective(&a, 1), &projective(&a, 2)) {
            assert!(f.intertwines(&a));
        }
    }

    #[test]
    fn kernel_image_cokernel() {
        let b = Fixture::AlgB.algebra::<Q>().unwrap();
        let m = direct_sum(&b, &[projective(&b, 2), simple(&b, 0)]);
        let id = Morphism::identity(&m);
        assert!(cokernel(&b, &id).0.is_zero());
        let zero = Morphism::zero(&m, &injective(&b, 1));
        assert_eq!(kernel(&b, &zero).0, m);
        let (im, onto, incl) = image(&b, &id);
        assert_eq!(im.dims(), m.dims());
        assert!(onto.intertwines(&b) && incl.intertwines(&b));
    }

    #[test]
    fn stable_hom_examples() {
        let b = Fixture::AlgB.algebra::<Q>().unwrap();
        assert_eq!(stable_hom_dim_inj(&b, &simple(&b, 0), &simple(&b, 0)), 1);
        let i = injective(&b, 1);
        assert_eq!(stable_hom_dim_inj(&b, &i, &i), 0);
    }
}
