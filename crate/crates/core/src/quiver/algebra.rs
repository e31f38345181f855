use std::collections::HashMap;
use std::sync::OnceLock;

use super::{Quiver, RelationPoly};
use crate::error::{Error, Result};
use crate::field::{from_rational, Matrix, Scalar};

/// Default bound on path length when detecting finite dimensionality.
pub const DEFAULT_MAX_LEN: usize = 30;

/// Dense coordinates of an algebra element in the algebra's basis.
pub type Element<F> = Vec<F>;

type Sparse<F> = Vec<(usize, F)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A basis element: the residue of a path. `word` lists arrow indices
/// outermost first; the empty word is the idempotent at `source == target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub source: usize,
    pub target: usize,
    pub word: Vec<usize>,
}

impl BasisElement {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_idempotent(&self) -> bool {
        self.word.is_empty()
    }
}

/// A basic finite-dimensional algebra given by structure constants on a
/// basis of path residues.
#[derive(Clone, Debug)]
pub struct Algebra<F> {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    arrow_elements: Vec<Element<F>>,
    basis: Vec<BasisElement>,
    products: Vec<Sparse<F>>,
    idempotents: Vec<usize>,
    opposite: OnceLock<Box<Algebra<F>>>,
}

impl<F: Scalar> Algebra<F> {
    pub(crate) fn from_parts(
        vertices: Vec<String>,
        arrows: Vec<Arrow>,
        arrow_elements: Vec<Element<F>>,
        basis: Vec<BasisElement>,
        products: Vec<Sparse<F>>,
    ) -> Result<Self> {
        let mut idempotents = vec![usize::MAX; vertices.len()];
        for (i, b) in basis.iter().enumerate() {
            if b.is_idempotent() {
                idempotents[b.source] = i;
            }
        }
        if idempotents.contains(&usize::MAX) {
            return Err(Error::Internal("vertex without idempotent".into()));
        }
        let alg = Algebra { vertices, arrows, arrow_elements, basis, products, idempotents, opposite: OnceLock::new() };
        alg.check_associative()?;
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn arrow_element(&self, a: usize) -> &Element<F> {
        &self.arrow_elements[a]
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    /// Basis index of the idempotent `e_v`.
    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    /// Indices of basis elements spanning `e_target A e_source`
    /// (residues of paths from `source` to `target`).
    pub fn basis_between(&self, source: usize, target: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].source == source && self.basis[i].target == target).collect()
    }

    pub fn zero_element(&self) -> Element<F> {
        vec![F::zero(); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Element<F> {
        let mut v = self.zero_element();
        v[i] = F::one();
        v
    }

    pub fn unit(&self) -> Element<F> {
        let mut v = self.zero_element();
        for &e in &self.idempotents {
            v[e] = F::one();
        }
        v
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, F)] {
        &self.products[i * self.dim() + j]
    }

    pub fn multiply(&self, x: &[F], y: &[F]) -> Element<F> {
        let mut out = self.zero_element();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi.times(yj);
                for (k, s) in self.basis_product(i, j) {
                    out[*k].add_mul(&c, s);
                }
            }
        }
        out
    }

    /// The residue of a path given by arrow indices, outermost first.
    pub fn path_element(&self, word: &[usize]) -> Element<F> {
        let Some(&innermost) = word.last() else {
            panic!("empty word has no well-defined vertex; use idempotent()")
        };
        let mut x = self.basis_vector(self.idempotent(self.arrows[innermost].source));
        for &a in word.iter().rev() {
            x = self.multiply(&self.arrow_elements[a], &x);
        }
        x
    }

    /// Span of the basis elements of positive path length.
    pub fn radical_basis(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.basis[i].is_idempotent()).collect()
    }

    /// Number of essential arrows from `source` to `target`:
    /// `dim e_t (rad A / rad^2 A) e_s`.
    pub fn arrow_count(&self, source: usize, target: usize) -> usize {
        let rad: Vec<usize> = self.radical_basis();
        let mut rad2: Vec<Element<F>> = Vec::new();
        for &i in &rad {
            for &j in &rad {
                let p = self.multiply(&self.basis_vector(i), &self.basis_vector(j));
                if p.iter().any(|x| !x.is_zero()) {
                    rad2.push(p);
                }
            }
        }
        let between: Vec<Element<F>> = self
            .basis_between(source, target)
            .into_iter()
            .filter(|&i| !self.basis[i].is_idempotent())
            .map(|i| self.basis_vector(i))
            .collect();
        let span = |vs: &[Element<F>]| {
            if vs.is_empty() {
                0
            } else {
                Matrix::from_rows(vs.to_vec(), self.dim()).expect("widths").rank()
            }
        };
        let mut all = rad2.clone();
        all.extend(between);
        span(&all) - span(&rad2)
    }

    /// The opposite algebra, computed once and cached.
    pub fn op(&self) -> &Algebra<F> {
        self.opposite.get_or_init(|| Box::new(self.opposite()))
    }

    /// Same basis, reversed arrows, transposed multiplication.
    pub fn opposite(&self) -> Algebra<F> {
        let n = self.dim();
        let mut products = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                products[i * n + j] = self.products[j * n + i].clone();
            }
        }
        Algebra {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
                .collect(),
            arrow_elements: self.arrow_elements.clone(),
            basis: self
                .basis
                .iter()
                .map(|b| BasisElement {
                    source: b.target,
                    target: b.source,
                    word: b.word.iter().rev().copied().collect(),
                })
                .collect(),
            products,
            idempotents: self.idempotents.clone(),
            opposite: OnceLock::new(),
        }
    }

    /// Human-readable name of a basis element, e.g. `a1*b2` or `e3`.
    pub fn basis_name(&self, i: usize) -> String {
        let b = &self.basis[i];
        if b.is_idempotent() {
            format!("e{}", self.vertices[b.source])
        } else {
            b.word.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
        }
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.dim();
        let sum_of = |terms: &mut dyn Iterator<Item = (usize, F)>, k: usize, left: bool| {
            let mut out = vec![F::zero(); n];
            for (m, c) in terms {
                let prod = if left { self.basis_product(m, k) } else { self.basis_product(k, m) };
                for (t, s) in prod {
                    out[*t].add_mul(&c, s);
                }
            }
            out
        };
        for i in 0..n {
            for j in 0..n {
                if self.basis[i].source != self.basis[j].target {
                    continue;
                }
                for k in 0..n {
                    if self.basis[j].source != self.basis[k].target {
                        continue;
                    }
                    let lhs = sum_of(&mut self.basis_product(i, j).iter().cloned(), k, true);
                    let rhs = sum_of(&mut self.basis_product(j, k).iter().cloned(), i, false);
                    if lhs != rhs {
                        return Err(Error::Internal(format!(
                            "multiplication not associative on ({}, {}, {})",
                            self.basis_name(i),
                            self.basis_name(j),
                            self.basis_name(k)
                        )));
                    }
                }
            }
        }
        // e_1 + ... + e_n acts as the identity
        let one = self.unit();
        for i in 0..n {
            let b = self.basis_vector(i);
            if self.multiply(&one, &b) != b || self.multiply(&b, &one) != b {
                return Err(Error::Internal("idempotents do not sum to the identity".into()));
            }
        }
        Ok(())
    }
}

fn apply_arrows<F: Scalar>(left: &[Vec<Sparse<F>>], word: &[usize], start: usize) -> Sparse<F> {
    let mut x: Sparse<F> = vec![(start, F::one())];
    for &a in word.iter().rev() {
        let mut acc: HashMap<usize, F> = HashMap::new();
        for (p, c) in &x {
            for (q, d) in &left[*p][a] {
                let e = acc.entry(*q).or_insert_with(F::zero);
                e.add_mul(c, d);
            }
        }
        x = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        x.sort_by_key(|(i, _)| *i);
    }
    x
}

/// Builds `KQ/I` length by length. Paths of each length are residues of
/// `arrow * (basis path of the previous length)`; relations are closed
/// under right multiplication by surviving basis paths and echelonized,
/// with later candidates eliminated first.
pub fn build_algebra<F: Scalar>(quiver: &Quiver, relations: &[RelationPoly], max_len: usize) -> Result<Algebra<F>> {
    if max_len == 0 {
        return Err(Error::Quiver("max_len must be at least 1".into()));
    }
    let na = quiver.arrows.len();
    let mut basis: Vec<BasisElement> = Vec::new();
    let mut left: Vec<Vec<Sparse<F>>> = Vec::new();
    let mut levels: Vec<Vec<usize>> = Vec::new();

    let rels: Vec<Vec<(F, Vec<usize>)>> = relations
        .iter()
        .map(|r| {
            r.terms
                .iter()
                .map(|(c, w)| {
                    from_rational::<F>(c)
                        .map(|f| (f, w.clone()))
                        .ok_or_else(|| Error::Quiver(format!("coefficient {c} is undefined in {}", F::field_tag())))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let mut level0 = Vec::new();
    for v in 0..quiver.vertices.len() {
        level0.push(basis.len());
        basis.push(BasisElement { source: v, target: v, word: vec![] });
        left.push(vec![Vec::new(); na]);
    }
    levels.push(level0);
    let mut level1 = Vec::new();
    for (a, spec) in quiver.arrows.iter().enumerate() {
        let idx = basis.len();
        level1.push(idx);
        basis.push(BasisElement { source: spec.source, target: spec.target, word: vec![a] });
        left.push(vec![Vec::new(); na]);
        left[levels[0][spec.source]][a] = vec![(idx, F::one())];
    }
    let nonempty = !level1.is_empty();
    levels.push(level1);

    let mut finished = !nonempty;
    for len in 2..=max_len + 1 {
        if finished {
            break;
        }
        if len > max_len {
            return Err(Error::NotFiniteDimensional(max_len));
        }
        let prev = levels[len - 1].clone();
        let mut candidates: Vec<(usize, usize)> = Vec::new();
        let mut cand_index: HashMap<(usize, usize), usize> = HashMap::new();
        for (a, spec) in quiver.arrows.iter().enumerate() {
            for &p in &prev {
                if basis[p].target == spec.source {
                    cand_index.insert((a, p), candidates.len());
                    candidates.push((a, p));
                }
            }
        }
        let nc = candidates.len();
        let mut rows: Vec<Vec<F>> = Vec::new();
        for (rel, spec) in rels.iter().zip(relations) {
            let rlen = spec.len();
            if rlen > len {
                continue;
            }
            let src = spec.source(quiver);
            for &v in &levels[len - rlen] {
                if basis[v].target != src {
                    continue;
                }
                let mut row = vec![F::zero(); nc];
                for (c, w) in rel {
                    for (p, d) in apply_arrows(&left, &w[1..], v) {
                        let ci = cand_index[&(w[0], p)];
                        row[nc - 1 - ci].add_mul(c, &d);
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        // columns are stored in reverse candidate order
        let (red, pivots) = if rows.is_empty() {
            (Matrix::zeros(0, nc), Vec::new())
        } else {
            Matrix::from_rows(rows, nc)?.rref()
        };
        let mut pivot_row: HashMap<usize, usize> = HashMap::new();
        for (r, &c) in pivots.iter().enumerate() {
            pivot_row.insert(nc - 1 - c, r);
        }
        let mut survivor_index: HashMap<usize, usize> = HashMap::new();
        let mut level = Vec::new();
        for (ci, &(a, p)) in candidates.iter().enumerate() {
            if pivot_row.contains_key(&ci) {
                continue;
            }
            let idx = basis.len();
            let mut word = vec![a];
            word.extend_from_slice(&basis[p].word);
            basis.push(BasisElement { source: basis[p].source, target: quiver.arrows[a].target, word });
            left.push(vec![Vec::new(); na]);
            survivor_index.insert(ci, idx);
            level.push(idx);
        }
        for (ci, &(a, p)) in candidates.iter().enumerate() {
            let nf: Sparse<F> = match pivot_row.get(&ci) {
                None => vec![(survivor_index[&ci], F::one())],
                Some(&r) => survivor_index
                    .iter()
                    .filter_map(|(&cj, &idx)| {
                        let v = &red[(r, nc - 1 - cj)];
                        (!v.is_zero()).then(|| (idx, v.negated()))
                    })
                    .collect(),
            };
            left[p][a] = nf;
        }
        finished = level.is_empty();
        levels.push(level);
    }

    let n = basis.len();
    let mut products = vec![Vec::new(); n * n];
    for i in 0..n {
        for j in 0..n {
            if basis[i].source != basis[j].target {
                continue;
            }
            products[i * n + j] = apply_arrows(&left, &basis[i].word, j);
        }
    }
    let arrow_elements = (0..na)
        .map(|a| {
            let mut v = vec![F::zero(); n];
            v[levels[1][a]] = F::one();
            v
        })
        .collect();
    let arrows =
        quiver.arrows.iter().map(|s| Arrow { name: s.name.clone(), source: s.source, target: s.target }).collect();
    Algebra::from_parts(quiver.vertices.clone(), arrows, arrow_elements, basis, products)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::fixtures;
    use crate::quiver::parse_quiver_file;

    fn alg(src: &str) -> Algebra<Q> {
        let (q, r) = parse_quiver_file(src).unwrap();
        build_algebra(&q, &r, DEFAULT_MAX_LEN).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(alg(fixtures::ALG_A).dim(), 12);
        assert_eq!(alg(fixtures::ALG_B).dim(), 5);
        assert_eq!(alg(fixtures::ALG_B0).dim(), 6);
        assert_eq!(alg(fixtures::ALG_C).dim(), 5);
        assert_eq!(alg(fixtures::ALG_K).dim(), 4);
        assert_eq!(alg("vertices: 1 2 3 4\n").dim(), 4);
    }

    #[test]
    fn alg_a_relations_hold() {
        let a = alg(fixtures::ALG_A);
        let idx = |n: &str| a.arrow_index(n).unwrap();
        let p = |x: &str, y: &str| a.path_element(&[idx(x), idx(y)]);
        assert_eq!(p("a1", "b2"), p("a2", "b1"));
        assert_eq!(p("a1", "b3"), p("a3", "b1").iter().map(|x| x.negated()).collect::<Vec<_>>());
        assert_eq!(p("a2", "b3"), p("a3", "b2"));
        assert!(p("a1", "b1").iter().all(|x| x.is_zero()));
        assert_eq!(a.basis_between(2, 0).len(), 3);
        // surviving length-2 basis: the lexicographically first path of each class
        let names: Vec<String> = a.basis_between(2, 0).into_iter().map(|i| a.basis_name(i)).collect();
        assert_eq!(names, vec!["a1*b2", "a1*b3", "a2*b3"]);
    }

    #[test]
    fn alg_b_product_vanishes() {
        let b = alg(fixtures::ALG_B);
        let (ia, ib) = (b.arrow_index("a").unwrap(), b.arrow_index("b").unwrap());
        let ab = b.multiply(b.arrow_element(ia), b.arrow_element(ib));
        assert!(ab.iter().all(|x| x.is_zero()));
        let e = b.basis_vector(b.idempotent(1));
        assert_eq!(b.multiply(&e, &e), e);
    }

    #[test]
    fn infinite_dimension_detected() {
        let src = "vertices: 1\narrow x: 1 -> 1\n";
        let (q, r) = parse_quiver_file(src).unwrap();
        assert!(matches!(build_algebra::<Q>(&q, &r, 10), Err(Error::NotFiniteDimensional(10))));
        let src = "vertices: 1\narrow x: 1 -> 1\nrelations:\nx*x*x\n";
        let (q, r) = parse_quiver_file(src).unwrap();
        assert_eq!(build_algebra::<Q>(&q, &r, 10).unwrap().dim(), 3);
    }

    #[test]
    fn opposite_reverses() {
        let b = alg(fixtures::ALG_B);
        let op = b.opposite();
        let a = op.arrow_index("a").unwrap();
        assert_eq!((op.arrows()[a].source, op.arrows()[a].target), (0, 1));
        let back = op.opposite();
        assert_eq!(back.basis(), b.basis());
        assert_eq!(back.arrows(), b.arrows());
        // in the opposite algebra b∘a is the zero path 1 -> 2 -> 3
        let (ia, ib) = (op.arrow_index("a").unwrap(), op.arrow_index("b").unwrap());
        assert!(op.multiply(op.arrow_element(ib), op.arrow_element(ia)).iter().all(|x| x.is_zero()));
        assert_eq!(op.arrow_count(0, 1), 1);
        assert_eq!(op.arrow_count(1, 2), 1);
        assert_eq!(op.arrow_count(1, 0), 0);
    }

    #[test]
    fn dimension_identity() {
        for src in fixtures::ALL_SOURCES {
            let a = alg(src);
            let total: usize = (0..a.num_vertices())
                .flat_map(|i| (0..a.num_vertices()).map(move |j| (i, j)))
                .map(|(i, j)| a.basis_between(i, j).len())
                .sum();
            assert_eq!(total, a.dim());
        }
    }
}
