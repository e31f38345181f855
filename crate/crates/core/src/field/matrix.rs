use std::fmt;

use super::{mul_mod, pow_mod, Scalar};
use crate::error::{Error, Result};

/// The Mersenne prime `2^61 - 1`, used to screen ranks over Q.
pub const SCREEN_PRIME: u64 = (1 << 61) - 1;

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:?}", self[(r, c)])?;
            }
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl<F: Scalar> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries given for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows; `cols` is needed when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::Shape(format!("row of length {} in a matrix with {cols} columns", row.len())));
            }
            data.extend(row);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<F>], rows: usize) -> Self {
        Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out.data[i * other.cols + j].add_mul(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = F::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    acc.add_mul(a, b);
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.plus(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.minus(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &F) -> Matrix<F> {
        let data = self.data.iter().map(|a| a.times(s)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: &F, other: &Matrix<F>) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            a.add_mul(s, b);
        }
    }

    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Matrix<F> {
        Self::from_fn(nr, nc, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix<F>) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self[(r0 + r, c0 + c)] = b[(r, c)].clone();
            }
        }
    }

    pub fn hstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        out
    }

    pub fn vstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn block_diag(blocks: &[Matrix<F>]) -> Matrix<F> {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = self[(r, c)].inverse().expect("nonzero pivot");
            for j in c..cols {
                let v = self[(r, j)].times(&inv);
                self[(r, j)] = v;
            }
            for i in 0..rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let factor = self[(i, c)].clone();
                for j in c..cols {
                    if self[(r, j)].is_zero() {
                        continue;
                    }
                    let v = self[(i, j)].minus(&factor.times(&self[(r, j)]));
                    self[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Rank modulo `p` of the residues, or `None` when some entry has
    /// no residue. For matrices over Q this never exceeds the true rank.
    pub fn rank_mod(&self, p: u64) -> Option<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut m: Vec<u64> = self.data.iter().map(|x| x.residue(p)).collect::<Option<_>>()?;
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| m[i * cols + c] != 0) else {
                continue;
            };
            for j in 0..cols {
                m.swap(piv * cols + j, r * cols + j);
            }
            let inv = pow_mod(m[r * cols + c], p - 2, p);
            for i in r + 1..rows {
                let lead = m[i * cols + c];
                if lead == 0 {
                    continue;
                }
                let factor = mul_mod(lead, inv, p);
                for j in c..cols {
                    let sub = mul_mod(factor, m[r * cols + j], p);
                    m[i * cols + j] = (m[i * cols + j] + p - sub) % p;
                }
            }
            r += 1;
        }
        Some(r)
    }

    /// A cheap lower bound for the rank: over characteristic zero the rank
    /// modulo a 61-bit prime, otherwise the exact rank.
    pub fn rank_lower_bound(&self) -> usize {
        if F::CHAR_ZERO {
            if let Some(r) = self.rank_mod(SCREEN_PRIME) {
                return r;
            }
        }
        self.rank()
    }

    /// Rank by forward elimination (no back substitution).
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    m.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = m[(r, c)].inverse().expect("nonzero pivot");
            for i in r + 1..rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].times(&inv);
                for j in c..cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = m[(i, j)].minus(&factor.times(&m[(r, j)]));
                    m[(i, j)] = v;
                }
            }
            r += 1;
        }
        r
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let (red, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![F::zero(); self.cols];
                v[free] = F::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = red[(i, free)].negated();
                }
                v
            })
            .collect()
    }

    /// Rows spanning the left null space (`y * self = 0`).
    pub fn left_kernel(&self) -> Matrix<F> {
        let basis = self.transpose().kernel_basis();
        Matrix::from_rows(basis, self.rows).expect("consistent widths")
    }

    /// A particular solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[F]) -> Result<Option<Vec<F>>> {
        if b.len() != self.rows {
            return Err(Error::Shape(format!(
                "right-hand side of length {} for a {}x{} system",
                b.len(),
                self.rows,
                self.cols
            )));
        }
        let aug = self.hstack(&Matrix::from_columns(&[b.to_vec()], self.rows));
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red[(i, self.cols)].clone();
        }
        Ok(Some(x))
    }

    /// Solves `self * X = B` column by column.
    pub fn solve_matrix(&self, b: &Matrix<F>) -> Result<Option<Matrix<F>>> {
        if b.rows != self.rows {
            return Err(Error::Shape("solve_matrix row mismatch".into()));
        }
        let aug = self.hstack(b);
        let (red, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(p, j)] = red[(i, self.cols + j)].clone();
            }
        }
        Ok(Some(x))
    }

    /// `X` with `self * X = I`; requires full row rank.
    pub fn right_inverse(&self) -> Option<Matrix<F>> {
        self.solve_matrix(&Matrix::identity(self.rows)).ok().flatten()
    }

    /// `X` with `X * self = I`; requires full column rank.
    pub fn left_inverse(&self) -> Option<Matrix<F>> {
        self.transpose().right_inverse().map(|x| x.transpose())
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Echelonized basis of the column space, as columns.
    pub fn column_space(&self) -> Matrix<F> {
        let (red, pivots) = self.transpose().rref();
        Matrix::from_fn(self.rows, pivots.len(), |r, c| red[(c, r)].clone())
    }
}

#[cfg(test)]
mod tests {
    #[test]
    fn modular_rank_bounds_rational_rank() {
        let q = |v: i64| Q::from_i64(v);
        let m = Matrix::from_rows(vec![vec![q(3), q(6)], vec![q(1), q(2)]], 2).unwrap();
        assert_eq!(m.rank_mod(SCREEN_PRIME), Some(1));
        let m = Matrix::from_rows(vec![vec![q(7), q(0)], vec![q(0), q(1)]], 2).unwrap();
        assert_eq!((m.rank(), m.rank_mod(7), m.rank_lower_bound()), (2, Some(1), 2));
        let half = Q::new(1.into(), 2.into());
        let m = Matrix::from_rows(vec![vec![half]], 1).unwrap();
        assert_eq!(m.rank_mod(2), None);
        assert_eq!(m.rank_lower_bound(), 1);
    }

    use super::*;
    use crate::field::Q;

    fn q(rows: &[&[i64]]) -> Matrix<Q> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| Q::from_i64(v)).collect()).collect(),
            cols,
        )
        .unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::<Q>::identity(4).rank(), 4);
        assert_eq!(Matrix::<Q>::zeros(3, 5).rank(), 0);
        assert_eq!(q(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::<Q>::zeros(2, 3).kernel_basis().len(), 3);
        assert!(Matrix::<Q>::identity(3).kernel_basis().is_empty());
        let k = q(&[&[1, 1]]).kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0], k[0][1].negated());
        assert!(!k[0][0].is_zero());
    }

    #[test]
    fn solve_examples() {
        let b = vec![Q::from_i64(3), Q::from_i64(-1)];
        assert_eq!(Matrix::<Q>::identity(2).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(Matrix::<Q>::zeros(2, 2).solve(&b).unwrap(), None);
        let x = q(&[&[2]]).solve(&[Q::from_i64(1)]).unwrap().unwrap();
        assert_eq!(x, vec![Q::new(1.into(), 2.into())]);
        assert!(matches!(q(&[&[2]]).solve(&b), Err(Error::Shape(_))));
    }

    #[test]
    fn inverses() {
        let m = q(&[&[1, 2, 3], &[0, 1, 4]]);
        let r = m.right_inverse().unwrap();
        assert_eq!(m.mul(&r), Matrix::identity(2));
        let l = m.transpose().left_inverse().unwrap();
        assert_eq!(l.mul(&m.transpose()), Matrix::identity(2));
        assert!(q(&[&[1, 2], &[2, 4]]).right_inverse().is_none());
    }

    #[test]
    fn left_kernel_annihilates() {
        let m = q(&[&[1, 0], &[1, 0], &[0, 1]]);
        let y = m.left_kernel();
        assert_eq!(y.rows(), 1);
        assert!(y.mul(&m).is_zero());
    }
}
