use serde::Serialize;

use super::{entry_blocks, summand_offsets, ProjDecomp, TwoComplex};
use crate::field::{poly_rank, Matrix, PolyBudget, PolyMatrix, Scalar, SeedStream};
use crate::quiver::Algebra;
use crate::rep::Morphism;

/// Coefficient range for random parameters over Q.
pub const SAMPLE_RANGE: u64 = 1000;

type Sparse<F> = Vec<(usize, usize, F)>;

/// Extra draws made when the oracle reports a larger rank than sampled.
const EXTRA_DRAWS: u64 = 64;

/// One parameter: the basis element `basis ∈ e_{i_k} A e_{j_l}` placed in
/// entry `(k, l)` of the algebra-entry matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Param {
    pub k: usize,
    pub l: usize,
    pub basis: usize,
}

/// `Hom_A(P_1, P_0)` with one parameter per basis element of each
/// `e_{i_k} A e_{j_l}`.
#[derive(Clone, Debug)]
pub struct HomSpace<F> {
    pub p1: ProjDecomp,
    pub p0: ProjDecomp,
    pub params: Vec<Param>,
    /// `mats[p][v]`: nonzero entries `(row, col, value)` of the vertex-`v`
    /// matrix of parameter `p`.
    mats: Vec<Vec<Sparse<F>>>,
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl<F: Scalar> HomSpace<F> {
    pub fn new(alg: &Algebra<F>, p1: &ProjDecomp, p0: &ProjDecomp) -> Self {
        let s1 = p1.summands();
        let s0 = p0.summands();
        let o1 = summand_offsets(alg, &s1);
        let o0 = summand_offsets(alg, &s0);
        let rows = p0.dims(alg);
        let cols = p1.dims(alg);
        let mut params = Vec::new();
        let mut mats = Vec::new();
        for (k, &i) in s1.iter().enumerate() {
            for (l, &j) in s0.iter().enumerate() {
                for b in alg.basis_between(j, i) {
                    let blocks = entry_blocks(alg, i, j, &alg.basis_vector(b));
                    let full = blocks
                        .iter()
                        .enumerate()
                        .map(|(w, blk)| {
                            let mut entries = Vec::new();
                            for r in 0..blk.rows() {
                                for c in 0..blk.cols() {
                                    if !blk[(r, c)].is_zero() {
                                        entries.push((o0[w][l] + r, o1[w][k] + c, blk[(r, c)].clone()));
                                    }
                                }
                            }
                            entries
                        })
                        .collect();
                    params.push(Param { k, l, basis: b });
                    mats.push(full);
                }
            }
        }
        HomSpace { p1: p1.clone(), p0: p0.clone(), params, mats, rows, cols }
    }

    pub fn num_params(&self) -> usize {
        self.params.len()
    }

    /// Vertex matrices of `sum_p c_p f_p`.
    pub fn vertex_maps(&self, coeffs: &[F]) -> Vec<Matrix<F>> {
        (0..self.rows.len())
            .map(|v| {
                let mut m = Matrix::<F>::zeros(self.rows[v], self.cols[v]);
                for (c, mats) in coeffs.iter().zip(&self.mats) {
                    if !c.is_zero() {
                        for (r, col, x) in &mats[v] {
                            m[(*r, *col)].add_mul(c, x);
                        }
                    }
                }
                m
            })
            .collect()
    }

    pub fn complex(&self, alg: &Algebra<F>, coeffs: Vec<F>) -> TwoComplex<F> {
        let maps = self.vertex_maps(&coeffs);
        let map = Morphism::from_parts(self.p1.realize(alg), self.p0.realize(alg), maps);
        TwoComplex { p1: self.p1.clone(), p0: self.p0.clone(), map, coeffs: Some(coeffs) }
    }

    /// Parameter coordinates of a morphism `P_1 -> P_0`.
    pub fn coordinates(&self, alg: &Algebra<F>, f: &Morphism<F>) -> Vec<F> {
        let c = TwoComplex { p1: self.p1.clone(), p0: self.p0.clone(), map: f.clone(), coeffs: None };
        let entries = c.entries(alg);
        self.params.iter().map(|p| entries[p.k][p.l][p.basis].clone()).collect()
    }

    /// The generic vertex-`v` matrix over the parameters that occur there.
    pub fn poly_matrix(&self, v: usize) -> PolyMatrix<F> {
        let used: Vec<Matrix<F>> = self
            .mats
            .iter()
            .filter(|m| !m[v].is_empty())
            .map(|m| self.dense(&m[v], v))
            .collect();
        PolyMatrix::linear_combination(&used, self.rows[v], self.cols[v])
    }

    fn dense(&self, entries: &Sparse<F>, v: usize) -> Matrix<F> {
        let mut m = Matrix::zeros(self.rows[v], self.cols[v]);
        for (r, c, x) in entries {
            m[(*r, *c)] = x.clone();
        }
        m
    }

    /// Per-vertex `min(dim P_1, dim P_0)`.
    pub fn vertex_bounds(&self) -> Vec<usize> {
        self.rows.iter().zip(&self.cols).map(|(r, c)| *r.min(c)).collect()
    }

    /// The maximal rank computed symbolically, vertex by vertex; `None`
    /// when the field has positive characteristic or a vertex exceeds the
    /// budget.
    pub fn symbolic_rank(&self, budget: &PolyBudget) -> Option<usize> {
        if !F::CHAR_ZERO {
            return None;
        }
        (0..self.rows.len()).map(|v| poly_rank(&self.poly_matrix(v), budget).ok()).sum()
    }

    fn vertex_oracle(&self, v: usize, budget: &PolyBudget) -> Option<usize> {
        if !F::CHAR_ZERO || self.num_params() > budget.max_vars {
            return None;
        }
        poly_rank(&self.poly_matrix(v), budget).ok()
    }

    /// Whether the second Wong sequence of `b` stays inside `im b`. If so
    /// the limit `U` satisfies `dim U - dim L(U) = dim ker b`, which bounds
    /// the rank of every member of the space by `rank b`.
    fn shrunk_subspace(&self, v: usize, b: &Matrix<F>) -> bool {
        let n = b.cols();
        let im_b = b.column_space();
        let rb = im_b.cols();
        let mut u = Matrix::from_columns(&b.kernel_basis(), n);
        loop {
            let mut images = Vec::new();
            for m in self.mats.iter().filter(|m| !m[v].is_empty()) {
                for j in 0..u.cols() {
                    let mut y = vec![F::zero(); b.rows()];
                    for (r, c, x) in &m[v] {
                        y[*r].add_mul(x, &u[(*c, j)]);
                    }
                    if y.iter().any(|e| !e.is_zero()) {
                        images.push(y);
                    }
                }
            }
            let w = Matrix::from_columns(&images, b.rows()).column_space();
            if im_b.hstack(&w).rank() > rb {
                return false;
            }
            let pre: Vec<Vec<F>> = b.hstack(&w).kernel_basis().into_iter().map(|x| x[..n].to_vec()).collect();
            let next = Matrix::from_columns(&pre, n).column_space();
            if next.cols() == u.cols() {
                return true;
            }
            u = next;
        }
    }
}

/// How a vertex's rank was shown to be maximal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    DimensionBound,
    Oracle,
    ShrunkSubspace,
}

#[derive(Clone, Debug)]
pub struct GenericRank<F> {
    pub value: usize,
    pub witness: TwoComplex<F>,
    pub certified: bool,
    /// Per-vertex certificates (`None` where none was found).
    pub certificates: Vec<Option<Certificate>>,
    pub params: usize,
    /// Whether the symbolic oracle was consulted at some vertex.
    pub oracle_ran: bool,
    /// Index of the draw attaining `value`: trials first, then extras,
    /// then additional draws.
    pub witness_index: usize,
}

impl<F> GenericRank<F> {
    pub fn used(&self, c: Certificate) -> bool {
        self.certificates.contains(&Some(c))
    }
}

fn draw<F: Scalar>(space: &HomSpace<F>, seed: SeedStream) -> Vec<F> {
    let mut rng = seed.rng();
    (0..space.num_params()).map(|_| F::sample(&mut rng, SAMPLE_RANGE)).collect()
}

fn screened_ranks<F: Scalar>(maps: &[Matrix<F>]) -> Vec<usize> {
    maps.iter().map(Matrix::rank_lower_bound).collect()
}

/// Exact ranks, skipping vertices whose screened rank meets the bound.
fn exact_ranks<F: Scalar>(maps: &[Matrix<F>], screened: &[usize], bounds: &[usize]) -> Vec<usize> {
    maps.iter().zip(screened.iter().zip(bounds)).map(|(m, (s, b))| if s == b { *s } else { m.rank() }).collect()
}

/// Estimates `r(P_1, P_0)`: draw `i < trials` uses `seed.split(i)`, then
/// every morphism in `extras` is ranked; the witness is the first draw
/// attaining the maximum.
pub fn generic_rank<F: Scalar>(
    alg: &Algebra<F>,
    p1: &ProjDecomp,
    p0: &ProjDecomp,
    trials: usize,
    seed: u64,
    extras: &[Morphism<F>],
) -> GenericRank<F> {
    generic_rank_with(alg, p1, p0, trials, seed, extras, &PolyBudget::default())
}

pub fn generic_rank_with<F: Scalar>(
    alg: &Algebra<F>,
    p1: &ProjDecomp,
    p0: &ProjDecomp,
    trials: usize,
    seed: u64,
    extras: &[Morphism<F>],
    budget: &PolyBudget,
) -> GenericRank<F> {
    assert!(trials >= 1);
    let space = HomSpace::new(alg, p1, p0);
    let stream = SeedStream::new(seed);
    let bounds = space.vertex_bounds();
    // draws are compared by screened rank; only the chosen one is ranked exactly
    let mut best: Option<(usize, usize, Vec<F>, Vec<usize>)> = None;
    let consider = |idx: usize, coeffs: Vec<F>, best: &mut Option<(usize, usize, Vec<F>, Vec<usize>)>| {
        let ranks = screened_ranks(&space.vertex_maps(&coeffs));
        let total: usize = ranks.iter().sum();
        if best.as_ref().is_none_or(|b| total > b.0) {
            *best = Some((total, idx, coeffs, ranks));
        }
    };
    for i in 0..trials {
        consider(i, draw(&space, stream.split(i as u64)), &mut best);
    }
    for (e, f) in extras.iter().enumerate() {
        consider(trials + e, space.coordinates(alg, f), &mut best);
    }
    let (_, mut witness_index, mut coeffs, screened) = best.expect("at least one draw");
    let mut ranks = exact_ranks(&space.vertex_maps(&coeffs), &screened, &bounds);
    let oracle: Vec<Option<usize>> = ranks
        .iter()
        .enumerate()
        .map(|(v, &r)| if r < bounds[v] { space.vertex_oracle(v, budget) } else { None })
        .collect();
    let oracle_ran = oracle.iter().any(Option::is_some);
    let short = |ranks: &[usize]| ranks.iter().zip(&oracle).any(|(r, o)| o.is_some_and(|o| o > *r));
    if short(&ranks) {
        let base = trials + extras.len();
        for j in 0..EXTRA_DRAWS {
            let c = draw(&space, stream.split((base as u64) + j));
            let maps = space.vertex_maps(&c);
            let r = exact_ranks(&maps, &screened_ranks(&maps), &bounds);
            if !short(&r) {
                (witness_index, coeffs, ranks) = (base + j as usize, c, r);
                break;
            }
        }
    }
    let value = ranks.iter().sum();
    let witness = space.complex(alg, coeffs);
    let certificates: Vec<Option<Certificate>> = (0..ranks.len())
        .map(|v| {
            if ranks[v] == bounds[v] {
                Some(Certificate::DimensionBound)
            } else if oracle[v] == Some(ranks[v]) {
                Some(Certificate::Oracle)
            } else if oracle[v].is_none() && space.shrunk_subspace(v, witness.map.map(v)) {
                Some(Certificate::ShrunkSubspace)
            } else {
                None
            }
        })
        .collect();
    let certified = certificates.iter().all(Option::is_some);
    GenericRank { value, witness, certified, certificates, params: space.num_params(), oracle_ran, witness_index }
}
