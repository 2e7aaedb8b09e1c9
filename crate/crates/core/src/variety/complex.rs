use std::fmt;

use crate::algebra::{Field, Matrix};
use crate::error::{Error, Result};

/// Relative tolerance for `d^{i+1} d^i = 0` on floating complexes.
pub const NUMERIC_D2_RTOL: f64 = 1e-10;

/// Ranks `(k_0, …, k_n)` of the cochain groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shape(pub Vec<usize>);

impl Shape {
    pub fn new(k: Vec<usize>) -> Result<Self> {
        if k.is_empty() {
            return Err(Error::Dimension("a shape has at least one entry".into()));
        }
        Ok(Shape(k))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Ranks `r_i = k_i − r_{i−1}` the differentials of an acyclic complex
    /// of this shape must have, if those are all non-negative.
    pub fn acyclic_ranks(&self) -> Option<Vec<usize>> {
        let mut ranks = Vec::with_capacity(self.0.len());
        let mut prev = 0i64;
        for &k in &self.0 {
            let r = k as i64 - prev;
            if r < 0 {
                return None;
            }
            ranks.push(r as usize);
            prev = r;
        }
        Some(ranks)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Cohomology dimensions `(b_0, …, b_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BettiString(pub Vec<usize>);

impl BettiString {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }
}

/// A cochain complex `0 → C^0 → C^1 → ⋯ → C^n → 0` with `C^i = F^{k_i}`.
///
/// `diffs[i]` is the `k_{i+1} × k_i` matrix of `d^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct CochainComplex<F> {
    shape: Shape,
    diffs: Vec<Matrix<F>>,
}

impl<F: Field> CochainComplex<F> {
    /// Validates dimensions and `d² = 0` (exactly, or within
    /// [`NUMERIC_D2_RTOL`] for floating entries).
    pub fn new(shape: Shape, diffs: Vec<Matrix<F>>) -> Result<Self> {
        let c = Self::new_unchecked(shape, diffs)?;
        c.check_d2()?;
        Ok(c)
    }

    /// Validates dimensions only.
    pub fn new_unchecked(shape: Shape, diffs: Vec<Matrix<F>>) -> Result<Self> {
        if shape.is_empty() {
            return Err(Error::Dimension("empty shape".into()));
        }
        if diffs.len() + 1 != shape.len() {
            return Err(Error::Dimension(format!(
                "{} differentials for a shape of length {}",
                diffs.len(),
                shape.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.rows() != shape.0[i + 1] || d.cols() != shape.0[i] {
                return Err(Error::Dimension(format!(
                    "d^{i} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    shape.0[i + 1],
                    shape.0[i]
                )));
            }
        }
        Ok(Self { shape, diffs })
    }

    /// The complex of the given shape with all differentials zero.
    pub fn zero(shape: Shape) -> Self {
        let diffs = shape
            .0
            .windows(2)
            .map(|w| Matrix::zeros(w[1], w[0]))
            .collect();
        Self { shape, diffs }
    }

    fn check_d2(&self) -> Result<()> {
        for (i, w) in self.diffs.windows(2).enumerate() {
            let prod = w[1].mul(&w[0])?;
            let ok = match (
                prod.frobenius_norm(),
                w[0].frobenius_norm(),
                w[1].frobenius_norm(),
            ) {
                (Some(p), Some(a), Some(b)) => p <= NUMERIC_D2_RTOL * a * b,
                _ => prod.is_zero(),
            };
            if !ok {
                return Err(Error::Dimension(format!("d^{} d^{i} is not zero", i + 1)));
            }
        }
        Ok(())
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Top degree `n`.
    pub fn top(&self) -> usize {
        self.shape.len() - 1
    }

    pub fn diffs(&self) -> &[Matrix<F>] {
        &self.diffs
    }

    /// `d^i`, or `None` outside `0..n`.
    pub fn diff(&self, i: usize) -> Option<&Matrix<F>> {
        self.diffs.get(i)
    }

    /// `d^i` with the zero maps `0 → C^0` and `C^n → 0` filled in for `i = −1, n`.
    pub(crate) fn diff_or_zero(&self, i: isize) -> Matrix<F> {
        let k = &self.shape.0;
        let n = k.len() as isize;
        if i < 0 {
            Matrix::zeros(k[0], 0)
        } else if i >= n - 1 {
            Matrix::zeros(0, k[(n - 1) as usize])
        } else {
            self.diffs[i as usize].clone()
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> CochainComplex<G> {
        CochainComplex {
            shape: self.shape.clone(),
            diffs: self.diffs.iter().map(|d| d.map(&f)).collect(),
        }
    }

    /// Replaces `d^i` by `A_{i+1} d^i A_i^{-1}`.
    pub fn change_basis(&self, a: &[Matrix<F>]) -> Result<Self> {
        if a.len() != self.shape.len() {
            return Err(Error::Dimension(
                "one basis change per degree required".into(),
            ));
        }
        let mut diffs = Vec::with_capacity(self.diffs.len());
        for (i, d) in self.diffs.iter().enumerate() {
            let inv = a[i]
                .inverse()
                .ok_or_else(|| Error::Dimension(format!("basis change A_{i} is singular")))?;
            diffs.push(a[i + 1].mul(d)?.mul(&inv)?);
        }
        Self::new_unchecked(self.shape.clone(), diffs)
    }

    /// Ranks of `d^0, …, d^{n−1}`.
    pub fn ranks(&self) -> Vec<usize> {
        self.diffs.iter().map(|d| d.rank()).collect()
    }
}

/// True iff the alternating sum of `k` vanishes and every truncated
/// alternating sum `k_j − k_{j−1} + ⋯ ± k_0` is non-negative.
pub fn is_admissible(k: &Shape) -> bool {
    let mut partial: i64 = 0;
    for &kj in &k.0 {
        partial = kj as i64 - partial;
        if partial < 0 {
            return false;
        }
    }
    partial == 0
}

/// Cohomology dimensions `b_i = k_i − rank d^i − rank d^{i−1}`.
pub fn betti<F: Field>(c: &CochainComplex<F>) -> BettiString {
    let ranks = c.ranks();
    let b = c
        .shape
        .0
        .iter()
        .enumerate()
        .map(|(i, &k)| {
            let out = ranks.get(i).copied().unwrap_or(0);
            let inc = if i > 0 { ranks[i - 1] } else { 0 };
            k - out - inc
        })
        .collect();
    BettiString(b)
}

pub fn is_acyclic<F: Field>(c: &CochainComplex<F>) -> bool {
    betti(c).is_zero()
}

/// Dimension of the variety of complexes of shape `k` with cohomology `b`:
/// `Σ_j (k_j − b_j)(k_j − Σ_{i≤j} (−1)^{i+j}(k_i − b_i))`.
pub fn dim_db(k: &Shape, b: &BettiString) -> Result<usize> {
    if k.len() != b.0.len() {
        return Err(Error::Admissibility(format!(
            "shape {k} and betti string of length {}",
            b.0.len()
        )));
    }
    if k.0.iter().zip(&b.0).any(|(k, b)| b > k) {
        return Err(Error::Admissibility(format!(
            "betti numbers {:?} exceed shape {k}",
            b.0
        )));
    }
    let reduced = Shape(k.0.iter().zip(&b.0).map(|(k, b)| k - b).collect());
    if !is_admissible(&reduced) {
        return Err(Error::Admissibility(format!(
            "k − b = {reduced} is not admissible"
        )));
    }
    let mut total: i64 = 0;
    for j in 0..k.len() {
        let kj = k.0[j] as i64;
        let mut alt = 0i64;
        for i in 0..=j {
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            alt += sign * reduced.0[i] as i64;
        }
        total += reduced.0[j] as i64 * (kj - alt);
    }
    Ok(total as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GaussianRational as Q, LaurentPoly, RatFunc};

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    #[test]
    fn admissibility() {
        assert!(is_admissible(&Shape(vec![1, 2, 1])));
        assert!(!is_admissible(&Shape(vec![1, 0])));
        assert!(is_admissible(&Shape(vec![0, 0, 0])));
        assert!(!is_admissible(&Shape(vec![2, 1, 0])));
    }

    #[test]
    fn betti_examples() {
        let zero = CochainComplex::<Q>::zero(Shape(vec![2, 3]));
        assert_eq!(betti(&zero), BettiString(vec![2, 3]));
        let iso = CochainComplex::<Q>::new(Shape(vec![1, 1]), vec![Matrix::identity(1)]).unwrap();
        assert_eq!(betti(&iso), BettiString(vec![0, 0]));
        let z1 = RatFunc::from_poly(LaurentPoly::from_int_coeffs(&[-1, 1]));
        let c = CochainComplex::new(Shape(vec![1, 1]), vec![Matrix::diagonal(&[z1])]).unwrap();
        assert_eq!(betti(&c), BettiString(vec![0, 0]));
    }

    #[test]
    fn rejects_nonzero_square() {
        let d0 = Matrix::from_rows(vec![vec![q(1)], vec![q(0)]], 1).unwrap();
        let d1 = Matrix::from_rows(vec![vec![q(1), q(0)]], 2).unwrap();
        assert!(CochainComplex::new(Shape(vec![1, 2, 1]), vec![d0, d1]).is_err());
    }

    #[test]
    fn dim_db_examples() {
        assert_eq!(
            dim_db(&Shape(vec![1, 1]), &BettiString(vec![0, 0])).unwrap(),
            1
        );
        assert_eq!(
            dim_db(&Shape(vec![0, 0, 0]), &BettiString(vec![0, 0, 0])).unwrap(),
            0
        );
        assert_eq!(
            dim_db(&Shape(vec![1, 2, 1]), &BettiString(vec![0, 0, 0])).unwrap(),
            3
        );
        assert!(dim_db(&Shape(vec![1, 0]), &BettiString(vec![0, 0])).is_err());
    }
}
