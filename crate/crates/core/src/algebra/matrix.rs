use std::fmt;

use super::field::Field;
use crate::error::{Error, Result};

/// Relative threshold below which a floating pivot counts as zero.
pub(crate) const NUMERIC_RANK_RTOL: f64 = 1e-9;

/// Dense row-major matrix over a field.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds from rows; `cols` is needed to type a matrix with no rows.
    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension(format!(
                "row of length {} in a {cols}-column matrix",
                bad.len()
            )));
        }
        let n = rows.len();
        Self::new(n, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| F::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    /// Square diagonal matrix.
    pub fn diagonal(entries: &[F]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                F::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_zero)
    }

    pub fn map<G>(&self, f: impl FnMut(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Plain (non-conjugating) transpose.
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(F, F) -> F, what: &str) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Dimension(format!(
                "cannot {what} {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| f(a.clone(), b.clone()))
                .collect(),
        })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b, "add")
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b, "subtract")
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    /// Submatrix with the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, cols)
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows {
            return Err(Error::Dimension(format!(
                "hstack of {} and {} rows",
                self.rows, rhs.rows
            )));
        }
        Ok(Self::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs.get(i, j - self.cols).clone()
            }
        }))
    }

    /// Block placement helper: writes `block` with its top-left corner at
    /// `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    /// Largest entry magnitude; `None` for exact fields.
    pub fn max_magnitude(&self) -> Option<f64> {
        if Self::is_exact() {
            return None;
        }
        Some(
            self.data
                .iter()
                .filter_map(Field::magnitude)
                .fold(0.0, f64::max),
        )
    }

    /// Frobenius norm; `None` for exact fields.
    pub fn frobenius_norm(&self) -> Option<f64> {
        if Self::is_exact() {
            return None;
        }
        Some(
            self.data
                .iter()
                .filter_map(Field::magnitude)
                .map(|m| m * m)
                .sum::<f64>()
                .sqrt(),
        )
    }

    pub(crate) fn is_exact() -> bool {
        F::zero().magnitude().is_none()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Chooses the pivot row for column `col` among rows `from..`.
    fn find_pivot(&self, col: usize, from: usize, tol: f64) -> Option<usize> {
        if Self::is_exact() {
            (from..self.rows).find(|&i| !self.get(i, col).is_zero())
        } else {
            let (best, mag) = (from..self.rows)
                .map(|i| (i, self.get(i, col).magnitude().unwrap_or(0.0)))
                .fold((None, 0.0_f64), |(bi, bm), (i, m)| {
                    if m > bm {
                        (Some(i), m)
                    } else {
                        (bi, bm)
                    }
                });
            best.filter(|_| mag > tol)
        }
    }

    fn tolerance(&self) -> f64 {
        self.max_magnitude().map_or(0.0, |m| m * NUMERIC_RANK_RTOL)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let tol = self.tolerance();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = m.find_pivot(c, r, tol) else {
                if !Self::is_exact() {
                    for i in r..m.rows {
                        m.set(i, c, F::zero());
                    }
                }
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j).clone() - f.clone() * m.get(r, j).clone();
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Lexicographically first set of columns spanning the column space.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rref().1
    }

    /// Rank over the fraction field of the entries.
    pub fn rank(&self) -> usize {
        self.pivot_columns().len()
    }

    /// Basis of the right kernel, as columns of a `cols × nullity` matrix.
    pub fn kernel(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(self.cols, free.len());
        for (idx, &f) in free.iter().enumerate() {
            k.set(f, idx, F::one());
            for (row, &p) in pivots.iter().enumerate() {
                k.set(p, idx, -r.get(row, f).clone());
            }
        }
        k
    }

    /// Determinant: fraction-free Bareiss elimination for exact fields,
    /// partial pivoting for floating entries. The 0×0 determinant is 1.
    pub fn det(&self) -> Result<F> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(F::one());
        }
        if Self::is_exact() {
            Ok(self.det_bareiss())
        } else {
            Ok(self.det_partial_pivot())
        }
    }

    fn det_bareiss(&self) -> F {
        let n = self.rows;
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = F::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        negate = !negate;
                    }
                    None => return F::zero(),
                }
            }
            let pivot = m.get(k, k).clone();
            for i in k + 1..n {
                let mik = m.get(i, k).clone();
                for j in k + 1..n {
                    let num =
                        m.get(i, j).clone() * pivot.clone() - mik.clone() * m.get(k, j).clone();
                    let v = num.checked_div(&prev).expect("Bareiss pivot is nonzero");
                    m.set(i, j, v);
                }
                m.set(i, k, F::zero());
            }
            prev = pivot;
        }
        let d = m.get(n - 1, n - 1).clone();
        if negate {
            -d
        } else {
            d
        }
    }

    fn det_partial_pivot(&self) -> F {
        let n = self.rows;
        let mut m = self.clone();
        let mut acc = F::one();
        for k in 0..n {
            let Some(p) = m.find_pivot(k, k, 0.0) else {
                return F::zero();
            };
            if p != k {
                m.swap_rows(k, p);
                acc = -acc;
            }
            let pivot = m.get(k, k).clone();
            let inv = pivot.inv().expect("nonzero pivot");
            acc = acc * pivot;
            for i in k + 1..n {
                let f = m.get(i, k).clone() * inv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    let v = m.get(i, j).clone() - f.clone() * m.get(k, j).clone();
                    m.set(i, j, v);
                }
            }
        }
        acc
    }

    /// Inverse, `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Self::zeros(0, 0));
        }
        let aug = self.hstack(&Self::identity(n)).ok()?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(r.select(&rows, &cols))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Complex64, GaussianRational as Q, LaurentPoly, RatFunc};

    fn q(rows: &[&[i64]]) -> Matrix<Q> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Q::from_int(x)).collect())
                .collect(),
            cols,
        )
        .unwrap()
    }

    fn zm1() -> RatFunc {
        RatFunc::from_poly(LaurentPoly::from_int_coeffs(&[-1, 1]))
    }

    #[test]
    fn det_examples() {
        assert_eq!(q(&[&[5]]).det().unwrap(), Q::from_int(5));
        assert_eq!(q(&[&[1, 1], &[0, 1]]).det().unwrap(), Q::from_int(1));
        let m = Matrix::from_rows(vec![vec![zm1()]], 1).unwrap();
        assert_eq!(m.det().unwrap(), zm1());
        assert_eq!(Matrix::<Q>::zeros(0, 0).det().unwrap(), Q::from_int(1));
        assert!(matches!(q(&[&[1, 2]]).det(), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn det_needs_row_swap() {
        assert_eq!(q(&[&[0, 1], &[1, 0]]).det().unwrap(), Q::from_int(-1));
        assert_eq!(
            q(&[&[0, 1, 2], &[0, 3, 4], &[5, 6, 7]]).det().unwrap(),
            Q::from_int(-10)
        );
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::<Q>::zeros(2, 3).rank(), 0);
        assert_eq!(q(&[&[1, 0], &[0, 1]]).rank(), 2);
        let m = Matrix::from_rows(vec![vec![zm1(), zm1()]], 2).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(Matrix::<Q>::zeros(0, 0).rank(), 0);
    }

    #[test]
    fn pivot_examples() {
        assert_eq!(q(&[&[0, 1], &[0, 2]]).pivot_columns(), vec![1]);
        assert_eq!(Matrix::<Q>::identity(3).pivot_columns(), vec![0, 1, 2]);
        assert_eq!(q(&[&[1, 2], &[2, 4]]).pivot_columns(), vec![0]);
    }

    #[test]
    fn kernel_is_annihilated() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = m.kernel();
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).unwrap().is_zero());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = q(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        assert!(q(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn numeric_det_and_rank() {
        let c = |x: f64| Complex64::new(x, 0.0);
        let m = Matrix::from_rows(vec![vec![c(2.0), c(1.0)], vec![c(1.0), c(1.0)]], 2).unwrap();
        assert!((m.det().unwrap() - c(1.0)).norm() < 1e-14);
        let s =
            Matrix::from_rows(vec![vec![c(1.0), c(2.0)], vec![c(2.0), c(4.0 + 1e-15)]], 2).unwrap();
        assert_eq!(s.rank(), 1);
    }
}
