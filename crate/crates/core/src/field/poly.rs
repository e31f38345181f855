use std::collections::BTreeMap;

use super::{Matrix, Scalar};
use crate::error::{Error, Result};

type Monomial = Vec<u32>;

/// Multivariate polynomial with exact coefficients, terms keyed by
/// exponent vectors in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<F> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Scalar> Poly<F> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// `c * x_i`
    pub fn var(nvars: usize, i: usize, c: F) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            let mut m = vec![0; nvars];
            m[i] = 1;
            p.terms.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.plus(&c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.negated());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca.times(cb));
            }
        }
        out
    }

    /// Exact quotient `self / d`; errors if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (lm, lc) = d.terms.iter().next_back().ok_or_else(|| Error::Internal("division by zero polynomial".into()))?;
        let lc_inv = lc.inverse().expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((rm, rc)) = rem.terms.iter().next_back() {
            if rm.iter().zip(lm).any(|(a, b)| a < b) {
                return Err(Error::Internal("inexact polynomial division".into()));
            }
            let qm: Monomial = rm.iter().zip(lm).map(|(a, b)| a - b).collect();
            let qc = rc.times(&lc_inv);
            for (dm, dc) in &d.terms {
                let m = dm.iter().zip(&qm).map(|(a, b)| a + b).collect();
                rem.add_term(m, qc.times(dc).negated());
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars);
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    t = t.times(x);
                }
            }
            acc = acc.plus(&t);
        }
        acc
    }
}

/// Matrix of polynomials in `nvars` indeterminates.
#[derive(Clone, Debug)]
pub struct PolyMatrix<F> {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<Poly<F>>,
}

impl<F: Scalar> PolyMatrix<F> {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        PolyMatrix { rows, cols, nvars, entries: vec![Poly::zero(nvars); rows * cols] }
    }

    /// The linear matrix `sum_k x_k * mats[k]`.
    pub fn linear_combination(mats: &[Matrix<F>], rows: usize, cols: usize) -> Self {
        let nvars = mats.len();
        let mut pm = Self::zeros(rows, cols, nvars);
        for (k, m) in mats.iter().enumerate() {
            assert_eq!((m.rows(), m.cols()), (rows, cols));
            for r in 0..rows {
                for c in 0..cols {
                    let v = &m[(r, c)];
                    if !v.is_zero() {
                        let e = &mut pm.entries[r * cols + c];
                        *e = e.add(&Poly::var(nvars, k, v.clone()));
                    }
                }
            }
        }
        pm
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly<F> {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Poly<F>) {
        assert_eq!(p.nvars, self.nvars);
        self.entries[r * self.cols + c] = p;
    }

    pub fn specialize(&self, point: &[F]) -> Matrix<F> {
        Matrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c).eval(point))
    }
}

/// Size limits for the symbolic rank oracle.
#[derive(Clone, Copy, Debug)]
pub struct PolyBudget {
    pub max_vars: usize,
    pub max_dim: usize,
    /// Abort once any intermediate entry exceeds this many terms.
    pub max_terms: usize,
}

impl Default for PolyBudget {
    fn default() -> Self {
        PolyBudget { max_vars: 12, max_dim: 40, max_terms: 50_000 }
    }
}

/// Rank over the rational function field by fraction-free (Bareiss)
/// elimination with full pivoting.
pub fn poly_rank<F: Scalar>(pm: &PolyMatrix<F>, budget: &PolyBudget) -> Result<usize> {
    if pm.nvars > budget.max_vars || pm.rows > budget.max_dim || pm.cols > budget.max_dim {
        return Err(Error::Budget(format!(
            "{}x{} matrix in {} indeterminates exceeds the oracle budget",
            pm.rows, pm.cols, pm.nvars
        )));
    }
    let (rows, cols) = (pm.rows, pm.cols);
    let mut a: Vec<Vec<Poly<F>>> =
        (0..rows).map(|r| (0..cols).map(|c| pm.get(r, c).clone()).collect()).collect();
    let mut prev = Poly::constant(pm.nvars, F::one());
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        // Sparsest nonzero pivot keeps intermediate growth down.
        let pivot = (k..rows)
            .flat_map(|r| (k..cols).map(move |c| (r, c)))
            .filter(|&(r, c)| !a[r][c].is_zero())
            .min_by_key(|&(r, c)| (a[r][c].num_terms(), a[r][c].degree()));
        let Some((pr, pc)) = pivot else { break };
        a.swap(k, pr);
        for row in a.iter_mut() {
            row.swap(k, pc);
        }
        rank += 1;
        let pivot = a[k][k].clone();
        for i in k + 1..rows {
            let lead = a[i][k].clone();
            for j in k + 1..cols {
                let num = if lead.is_zero() {
                    pivot.mul(&a[i][j])
                } else {
                    pivot.mul(&a[i][j]).sub(&lead.mul(&a[k][j]))
                };
                let v = num.div_exact(&prev)?;
                if v.num_terms() > budget.max_terms {
                    return Err(Error::Budget(format!(
                        "intermediate entry with {} terms exceeds the oracle budget",
                        v.num_terms()
                    )));
                }
                a[i][j] = v;
            }
            a[i][k] = Poly::zero(pm.nvars);
        }
        prev = pivot;
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    fn x(n: usize, i: usize) -> Poly<Q> {
        Poly::var(n, i, Q::from_i64(1))
    }

    #[test]
    fn exact_division() {
        let (a, b) = (x(2, 0), x(2, 1));
        let p = a.add(&b).mul(&a.sub(&b));
        assert_eq!(p.div_exact(&a.sub(&b)).unwrap(), a.add(&b));
        assert!(a.div_exact(&b).is_err());
    }

    #[test]
    fn rank_examples() {
        let budget = PolyBudget::default();
        let mut pm = PolyMatrix::zeros(1, 1, 1);
        pm.set(0, 0, x(1, 0));
        assert_eq!(poly_rank(&pm, &budget).unwrap(), 1);

        let mut pm = PolyMatrix::zeros(2, 2, 2);
        pm.set(0, 0, x(2, 0));
        pm.set(0, 1, x(2, 1));
        pm.set(1, 0, x(2, 1));
        pm.set(1, 1, x(2, 0));
        assert_eq!(poly_rank(&pm, &budget).unwrap(), 2);

        // [[x, y], [x, y]] is singular.
        let mut pm = PolyMatrix::zeros(2, 2, 2);
        pm.set(0, 0, x(2, 0));
        pm.set(0, 1, x(2, 1));
        pm.set(1, 0, x(2, 0));
        pm.set(1, 1, x(2, 1));
        assert_eq!(poly_rank(&pm, &budget).unwrap(), 1);
    }

    #[test]
    fn budget_refusal() {
        let pm = PolyMatrix::<Q>::zeros(50, 2, 1);
        assert!(matches!(poly_rank(&pm, &PolyBudget::default()), Err(Error::Budget(_))));
    }
}
