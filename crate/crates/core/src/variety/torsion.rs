use super::complex::{betti, CochainComplex};
use crate::algebra::{Field, Matrix};
use crate::error::{Error, Result};

/// Milnor torsion of an acyclic complex.
///
/// For each degree `i` let `b_i` be the columns of `d^{i−1}` at its pivot
/// columns (a basis of `B^i`) and `b̄_{i+1}` the standard basis vectors at
/// the pivot columns of `d^i`, which `d^i` maps onto `b_{i+1}`. Then
///
/// ```text
/// τ(C) = −∏_i det[b_i, b̄_{i+1}]^{(−1)^{i+1}}
/// ```
///
/// The leading sign is the `N = 0` convention; only `τ²` is sign free.
/// With this exponent `τ` of `0 → F →(d) F → 0` is `−d`, and under
/// `d^i ↦ A_{i+1} d^i A_i^{-1}` the torsion picks up `∏ det(A_i)^{(−1)^{i+1}}`.
pub fn milnor_torsion<F: Field>(c: &CochainComplex<F>) -> Result<F> {
    let b = betti(c);
    if !b.is_zero() {
        return Err(Error::NotAcyclic(b.0));
    }
    let k = &c.shape().0;
    let pivots: Vec<Vec<usize>> = c.diffs().iter().map(|d| d.pivot_columns()).collect();
    let mut num = F::one();
    let mut den = F::one();
    for i in 0..k.len() {
        let mut basis = Matrix::zeros(k[i], k[i]);
        let mut col = 0;
        if i > 0 {
            let d = &c.diffs()[i - 1];
            for &p in &pivots[i - 1] {
                for r in 0..k[i] {
                    basis.set(r, col, d.get(r, p).clone());
                }
                col += 1;
            }
        }
        if let Some(piv) = pivots.get(i) {
            for &p in piv {
                basis.set(p, col, F::one());
                col += 1;
            }
        }
        debug_assert_eq!(col, k[i]);
        let det = basis.det()?;
        if det.is_zero() {
            return Err(Error::NotAcyclic(vec![0; k.len()]));
        }
        if i % 2 == 1 {
            num = num * det;
        } else {
            den = den * det;
        }
    }
    let ratio = num.checked_div(&den).expect("nonzero determinants");
    Ok(-ratio)
}

/// Combinatorial Laplacians `P_i = d^{i−1}(d^{i−1})ᵗ + (d^i)ᵗ d^i`
/// with the plain (bilinear) transpose.
pub fn laplacians<F: Field>(c: &CochainComplex<F>) -> Result<Vec<Matrix<F>>> {
    let n = c.shape().len() as isize;
    (0..n)
        .map(|i| {
            let before = c.diff_or_zero(i - 1);
            let after = c.diff_or_zero(i);
            before
                .mul(&before.transpose())?
                .add(&after.transpose().mul(&after)?)
        })
        .collect()
}

/// `Sτ(C) = (∏_{i even} det(P_i)^i / ∏_{i odd} det(P_i)^i)^{-1}`.
pub fn s_torsion<F: Field>(c: &CochainComplex<F>) -> Result<F> {
    let mut acc = F::one();
    for (i, p) in laplacians(c)?.iter().enumerate() {
        let det = p.det()?;
        if det.is_zero() || sigma_by_rank(p) {
            return Err(Error::OnSigma(i));
        }
        let e = i as i64;
        let factor = det
            .pow(if i % 2 == 0 { -e } else { e })
            .ok_or(Error::OnSigma(i))?;
        acc = acc * factor;
    }
    Ok(acc)
}

/// For floating entries a determinant is rarely exactly zero; a Laplacian
/// counts as singular when it is numerically rank deficient.
fn sigma_by_rank<F: Field>(p: &Matrix<F>) -> bool {
    p.max_magnitude().is_some() && p.rank() < p.rows()
}

/// True iff some Laplacian `P_i` is singular.
pub fn on_sigma<F: Field>(c: &CochainComplex<F>) -> Result<bool> {
    for p in laplacians(c)? {
        if p.det()?.is_zero() || sigma_by_rank(&p) {
            return Ok(true);
        }
    }
    Ok(false)
}
