use super::algebra::{Algebra, Arrow, BasisElement, Element};
use super::dsl::{parse_combination, PathRef};
use super::Quiver;
use crate::error::{Error, Result};
use crate::field::{from_rational, Matrix, Scalar};
use crate::rep::{act_basis, Representation};

/// A two-sided ideal, stored as an echelonized spanning set over the
/// algebra's ordered basis (so equality is a normal-form comparison).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal<F> {
    dim: usize,
    rows: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Scalar> Ideal<F> {
    fn from_vectors(dim: usize, vectors: Vec<Element<F>>) -> Self {
        let vectors: Vec<_> = vectors.into_iter().filter(|v| v.iter().any(|x| !x.is_zero())).collect();
        if vectors.is_empty() {
            return Ideal { dim, rows: Matrix::zeros(0, dim), pivots: Vec::new() };
        }
        let (red, pivots) = Matrix::from_rows(vectors, dim).expect("uniform width").rref();
        let rows = red.block(0, 0, pivots.len(), dim);
        Ideal { dim, rows, pivots }
    }

    pub fn zero(alg: &Algebra<F>) -> Self {
        Self::from_vectors(alg.dim(), Vec::new())
    }

    pub fn whole(alg: &Algebra<F>) -> Self {
        Self::from_vectors(alg.dim(), (0..alg.dim()).map(|i| alg.basis_vector(i)).collect())
    }

    /// The two-sided ideal generated by `generators`.
    pub fn generated(alg: &Algebra<F>, generators: &[Element<F>]) -> Self {
        let mut ideal = Self::from_vectors(alg.dim(), generators.to_vec());
        loop {
            let mut vectors = ideal.basis();
            let before = ideal.dim();
            for x in ideal.basis() {
                for i in 0..alg.dim() {
                    let b = alg.basis_vector(i);
                    vectors.push(alg.multiply(&b, &x));
                    vectors.push(alg.multiply(&x, &b));
                }
            }
            ideal = Self::from_vectors(alg.dim(), vectors);
            if ideal.dim() == before {
                return ideal;
            }
        }
    }

    /// Treats the span of `vectors` as an ideal after checking closure.
    pub fn from_span(alg: &Algebra<F>, vectors: Vec<Element<F>>) -> Result<Self> {
        let ideal = Self::from_vectors(alg.dim(), vectors);
        if Self::generated(alg, &ideal.basis()) != ideal {
            return Err(Error::Internal("span is not a two-sided ideal".into()));
        }
        Ok(ideal)
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn basis(&self) -> Vec<Element<F>> {
        (0..self.rows.rows()).map(|r| self.rows.row(r).to_vec()).collect()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `x` against the echelon basis; zero iff `x` lies in the ideal.
    pub fn reduce(&self, x: &[F]) -> Element<F> {
        let mut v = x.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (j, e) in self.rows.row(r).iter().enumerate() {
                if !e.is_zero() {
                    v[j] = v[j].minus(&c.times(e));
                }
            }
        }
        v
    }

    pub fn contains(&self, x: &[F]) -> bool {
        self.reduce(x).iter().all(|v| v.is_zero())
    }

    pub fn intersect(&self, other: &Ideal<F>) -> Ideal<F> {
        assert_eq!(self.dim, other.dim, "ideals of different algebras");
        if self.is_zero() || other.is_zero() {
            return Ideal { dim: self.dim, rows: Matrix::zeros(0, self.dim), pivots: Vec::new() };
        }
        // x = U^T a = W^T b  <=>  [U^T | -W^T] (a, b) = 0
        let ut = self.rows.transpose();
        let wt = other.rows.transpose().scale(&F::one().negated());
        let kernel = ut.hstack(&wt).kernel_basis();
        let k = self.rows.rows();
        let vectors = kernel.into_iter().map(|z| ut.apply(&z[..k])).collect();
        Self::from_vectors(self.dim, vectors)
    }

    pub fn sum(&self, other: &Ideal<F>) -> Ideal<F> {
        let mut v = self.basis();
        v.extend(other.basis());
        Self::from_vectors(self.dim, v)
    }
}

/// The annihilator `{ a in A | aM = 0 }`, solved directly as a linear
/// system on the coordinates of `a`.
pub fn annihilator<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>) -> Ideal<F> {
    let n = m.total_dim();
    if n == 0 {
        return Ideal::whole(alg);
    }
    let actions: Vec<Matrix<F>> = (0..alg.dim()).map(|i| act_basis(alg, m, i)).collect();
    let system = Matrix::from_fn(n * n, alg.dim(), |r, c| actions[c].entries()[r].clone());
    Ideal::from_vectors(alg.dim(), system.kernel_basis())
}

/// Correspondence between `A` and a quotient `B = A/I`.
#[derive(Clone, Debug)]
pub struct QuotientMap<F> {
    pub ideal: Ideal<F>,
    /// Vertex of `B` for each vertex of `A` (`None` when `e_v` lies in `I`).
    pub vertex_map: Vec<Option<usize>>,
    /// Arrow of `B` for each arrow of `A` (`None` when the arrow dies).
    pub arrow_map: Vec<Option<usize>>,
    /// For each basis element of `B`, the basis element of `A` it comes from.
    pub basis_origin: Vec<usize>,
}

impl<F: Scalar> QuotientMap<F> {
    /// Image of an element of `A` in `B`.
    pub fn project(&self, x: &[F]) -> Element<F> {
        let r = self.ideal.reduce(x);
        self.basis_origin.iter().map(|&i| r[i].clone()).collect()
    }
}

/// `B = A/I` with its projection. Vertices with `e_v in I` and arrows whose
/// residue vanishes are dropped.
pub fn quotient_algebra<F: Scalar>(alg: &Algebra<F>, ideal: &Ideal<F>) -> Result<(Algebra<F>, QuotientMap<F>)> {
    if ideal.dim() == alg.dim() {
        return Err(Error::WholeAlgebra);
    }
    let is_pivot = {
        let mut v = vec![false; alg.dim()];
        for &p in ideal.pivots() {
            v[p] = true;
        }
        v
    };
    let basis_origin: Vec<usize> = (0..alg.dim()).filter(|&i| !is_pivot[i]).collect();
    let mut vertex_map = vec![None; alg.num_vertices()];
    let mut vertices = Vec::new();
    for v in 0..alg.num_vertices() {
        if !is_pivot[alg.idempotent(v)] {
            vertex_map[v] = Some(vertices.len());
            vertices.push(alg.vertex_labels()[v].clone());
        }
    }
    let proto = QuotientMap { ideal: ideal.clone(), vertex_map: vertex_map.clone(), arrow_map: Vec::new(), basis_origin };
    let mut arrow_map = vec![None; alg.arrows().len()];
    let mut arrows = Vec::new();
    let mut arrow_elements = Vec::new();
    for (a, arrow) in alg.arrows().iter().enumerate() {
        let image = proto.project(alg.arrow_element(a));
        if image.iter().all(|x| x.is_zero()) {
            continue;
        }
        let (Some(s), Some(t)) = (vertex_map[arrow.source], vertex_map[arrow.target]) else {
            return Err(Error::Internal("arrow survives at a dropped vertex".into()));
        };
        arrow_map[a] = Some(arrows.len());
        arrows.push(Arrow { name: arrow.name.clone(), source: s, target: t });
        arrow_elements.push(image);
    }
    let basis: Vec<BasisElement> = proto
        .basis_origin
        .iter()
        .map(|&i| {
            let b = &alg.basis()[i];
            let word = b.word.iter().map(|&a| arrow_map[a]).collect::<Option<Vec<_>>>();
            match (word, vertex_map[b.source], vertex_map[b.target]) {
                (Some(word), Some(source), Some(target)) => Ok(BasisElement { source, target, word }),
                _ => Err(Error::Internal("surviving basis element passes through a dead arrow".into())),
            }
        })
        .collect::<Result<_>>()?;
    let nb = basis.len();
    let mut products = vec![Vec::new(); nb * nb];
    for (i, &oi) in proto.basis_origin.iter().enumerate() {
        for (j, &oj) in proto.basis_origin.iter().enumerate() {
            let p = alg.multiply(&alg.basis_vector(oi), &alg.basis_vector(oj));
            products[i * nb + j] =
                proto.project(&p).into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        }
    }
    // radical residues must stay in the radical
    for &i in &alg.radical_basis() {
        let img = proto.project(&alg.basis_vector(i));
        if img.iter().enumerate().any(|(k, c)| !c.is_zero() && basis[k].is_idempotent()) {
            return Err(Error::Internal("quotient mixes idempotents into the radical".into()));
        }
    }
    let quotient = Algebra::from_parts(vertices, arrows, arrow_elements, basis, products)?;
    Ok((quotient, QuotientMap { arrow_map, ..proto }))
}

/// Parses an ideal file: one generator per line in relation syntax;
/// paths may have any positive length and `e<vertex>` names an idempotent.
pub fn parse_ideal<F: Scalar>(quiver: &Quiver, alg: &Algebra<F>, text: &str) -> Result<Ideal<F>> {
    let mut after = true;
    let mut generators = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("convention:") {
            after = rest.trim() != "before";
            continue;
        }
        let line = line.strip_prefix("generators:").unwrap_or(line).trim();
        if line.is_empty() {
            continue;
        }
        let combo = parse_combination(quiver, line, idx + 1, after, true)?;
        let mut x = alg.zero_element();
        for (c, path) in combo.terms {
            let c: F = from_rational(&c).ok_or_else(|| Error::Quiver("coefficient undefined in field".into()))?;
            let p = match path {
                PathRef::Idempotent(v) => alg.basis_vector(alg.idempotent(v)),
                PathRef::Arrows(w) => alg.path_element(&w),
            };
            for (xi, pi) in x.iter_mut().zip(&p) {
                xi.add_mul(&c, pi);
            }
        }
        generators.push(x);
    }
    Ok(Ideal::generated(alg, &generators))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::fixtures::{self, Fixture};
    use crate::rep;

    #[test]
    fn annihilator_of_simple() {
        let b = Fixture::AlgB.algebra::<Q>().unwrap();
        let i = annihilator(&b, &rep::simple(&b, 0));
        assert_eq!(i.dim(), 4);
        let e1 = b.basis_vector(b.idempotent(0));
        assert!(!i.contains(&e1));
        let regular = rep::direct_sum(&b, &(0..3).map(|v| rep::projective(&b, v)).collect::<Vec<_>>());
        assert!(annihilator(&b, &regular).is_zero());
    }

    #[test]
    fn intersection_of_simple_annihilators_is_radical() {
        let b = Fixture::AlgB.algebra::<Q>().unwrap();
        let mut i = Ideal::whole(&b);
        for v in 0..3 {
            i = i.intersect(&annihilator(&b, &rep::simple(&b, v)));
        }
        let rad = Ideal::from_span(&b, b.radical_basis().into_iter().map(|k| b.basis_vector(k)).collect()).unwrap();
        assert_eq!(i, rad);
        assert_eq!(i.dim(), 2);
        assert_eq!(i.intersect(&Ideal::whole(&b)), i);
        assert!(i.intersect(&Ideal::zero(&b)).is_zero());
    }

    #[test]
    fn quotients() {
        let b0 = Fixture::AlgB0.algebra::<Q>().unwrap();
        let (same, map) = quotient_algebra(&b0, &Ideal::zero(&b0)).unwrap();
        assert_eq!(same.dim(), b0.dim());
        assert_eq!(map.vertex_map, vec![Some(0), Some(1), Some(2)]);

        let (q, _) = crate::quiver::parse_quiver_file(fixtures::ALG_B0).unwrap();
        let ab = parse_ideal(&q, &b0, "a*b\n").unwrap();
        assert_eq!(ab.dim(), 1);
        let (b, _) = quotient_algebra(&b0, &ab).unwrap();
        assert_eq!(b.dim(), 5);

        let c = Fixture::AlgC.algebra::<Q>().unwrap();
        let (qc, _) = crate::quiver::parse_quiver_file(fixtures::ALG_C).unwrap();
        let ideal = parse_ideal(&qc, &c, "a").unwrap();
        let (k, map) = quotient_algebra(&c, &ideal).unwrap();
        assert_eq!((k.num_vertices(), k.dim()), (2, 4));
        assert_eq!(k.arrow_count(1, 0), 2);
        assert_eq!(k.arrow_count(0, 1), 0);
        assert_eq!(map.arrow_map[qc.arrow_index("a").unwrap()], None);

        assert!(matches!(quotient_algebra(&c, &Ideal::whole(&c)), Err(Error::WholeAlgebra)));
    }

    #[test]
    fn dropped_vertex() {
        let b = Fixture::AlgB.algebra::<Q>().unwrap();
        let (q, _) = crate::quiver::parse_quiver_file(fixtures::ALG_B).unwrap();
        let i = parse_ideal(&q, &b, "e3").unwrap();
        let (quo, map) = quotient_algebra(&b, &i).unwrap();
        assert_eq!(map.vertex_map, vec![Some(0), Some(1), None]);
        assert_eq!(quo.dim(), 3);
    }
}
