//! Floating complex matrices used by numeric oracles and the spectral split.

use nalgebra::{DMatrix, Schur, SVD};
use num_complex::Complex64;

use super::field::Field;
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// Dense matrix of double-precision complex numbers.
pub type NumericMatrix = Matrix<Complex64>;

pub(crate) fn to_na(m: &NumericMatrix) -> DMatrix<Complex64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.entries())
}

pub(crate) fn from_na(m: &DMatrix<Complex64>) -> NumericMatrix {
    Matrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

pub(crate) fn frobenius(m: &NumericMatrix) -> f64 {
    m.entries().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Determinant by LU with partial pivoting.
pub fn det_numeric(m: &NumericMatrix) -> Result<Complex64> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.rows() == 0 {
        return Ok(Complex64::one());
    }
    Ok(to_na(m).lu().determinant())
}

/// Numerical rank from singular values, relative tolerance `rtol`.
pub fn numeric_rank(m: &NumericMatrix, rtol: f64) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    let svd = SVD::new(to_na(m), false, false);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    if smax == 0.0 {
        return 0;
    }
    svd.singular_values
        .iter()
        .filter(|&&s| s > rtol * smax)
        .count()
}

/// Number of singular values above the absolute threshold `tol`.
pub(crate) fn numeric_rank_abs(m: &NumericMatrix, tol: f64) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    SVD::new(to_na(m), false, false)
        .singular_values
        .iter()
        .filter(|&&s| s > tol)
        .count()
}

/// Orthonormal (Hermitian) basis of the range of a rank-`rank` projector,
/// as columns, from a column-pivoted QR factorization.
pub(crate) fn projector_range_basis(p: &NumericMatrix, rank: usize) -> NumericMatrix {
    let n = p.rows();
    if n == 0 || rank == 0 {
        return Matrix::zeros(n, 0);
    }
    let q = to_na(p).col_piv_qr().q();
    Matrix::from_fn(n, rank, |i, j| q[(i, j)])
}

pub(crate) fn conj_transpose(m: &NumericMatrix) -> NumericMatrix {
    Matrix::from_fn(m.cols(), m.rows(), |i, j| m.get(j, i).conj())
}

pub(crate) fn eigenvalues(m: &NumericMatrix) -> Result<Vec<Complex64>> {
    if m.rows() == 0 {
        return Ok(Vec::new());
    }
    let schur = Schur::try_new(to_na(m), 1e-15, 10_000)
        .ok_or_else(|| Error::Dimension("Schur decomposition did not converge".into()))?;
    let ev = schur
        .eigenvalues()
        .ok_or_else(|| Error::Dimension("eigenvalues unavailable".into()))?;
    Ok(ev.iter().copied().collect())
}

/// Complementary spectral projectors of a square matrix.
#[derive(Clone, Debug)]
pub struct SpectralSplit {
    /// Projector onto generalized eigenspaces with `|λ| < radius`.
    pub small: NumericMatrix,
    /// Projector onto generalized eigenspaces with `|λ| > radius`.
    pub large: NumericMatrix,
    /// Number of eigenvalues (with multiplicity) inside the circle.
    pub small_dim: usize,
}

/// Splits `m` along the circle `|λ| = radius`.
///
/// The Cayley transform `W = (m + r)(m − r)^{-1}` sends the open disk to the
/// left half plane; the matrix sign of `W` (scaled Newton iteration) then
/// gives the projector `(I − sign W)/2` onto the small part.
pub fn eigen_split(m: &NumericMatrix, radius: f64) -> Result<SpectralSplit> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    assert!(radius > 0.0, "radius must be positive");
    let n = m.rows();
    let norm = frobenius(m).max(f64::MIN_POSITIVE);
    let ev = eigenvalues(m)?;
    let mut small_dim = 0;
    for l in &ev {
        if (l.norm() - radius).abs() <= 1e-8 * norm {
            return Err(Error::SplitTooClose {
                eigenvalue: format!("{l}"),
                radius,
            });
        }
        if l.norm() < radius {
            small_dim += 1;
        }
    }
    if small_dim == 0 || small_dim == n {
        let id = Matrix::identity(n);
        let zero = Matrix::zeros(n, n);
        return Ok(if small_dim == 0 {
            SpectralSplit {
                small: zero,
                large: id,
                small_dim,
            }
        } else {
            SpectralSplit {
                small: id,
                large: zero,
                small_dim,
            }
        });
    }
    let a = to_na(m);
    let r = Complex64::new(radius, 0.0);
    let id = DMatrix::<Complex64>::identity(n, n);
    let minus = &a - &id * r;
    let plus = &a + &id * r;
    let minus_inv = minus.try_inverse().ok_or_else(|| Error::SplitTooClose {
        eigenvalue: format!("{radius}"),
        radius,
    })?;
    let mut s = plus * minus_inv;
    for it in 0..200 {
        let inv = s
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::SplitTooClose {
                eigenvalue: "sign iteration".into(),
                radius,
            })?;
        let scale = if it < 10 {
            let d = s.clone().lu().determinant().norm();
            let di = inv.clone().lu().determinant().norm();
            if d > 0.0 && di > 0.0 && d.is_finite() && di.is_finite() {
                (di / d).powf(0.5 / n as f64)
            } else {
                1.0
            }
        } else {
            1.0
        };
        let next = (&s * Complex64::new(scale, 0.0) + inv * Complex64::new(1.0 / scale, 0.0))
            * Complex64::new(0.5, 0.0);
        let delta = (&next - &s).norm();
        s = next;
        if delta <= 1e-14 * s.norm() {
            break;
        }
    }
    let small = (&id - &s) * Complex64::new(0.5, 0.0);
    let large = (&id + &s) * Complex64::new(0.5, 0.0);
    Ok(SpectralSplit {
        small: from_na(&small),
        large: from_na(&large),
        small_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(rows: &[&[f64]]) -> NumericMatrix {
        let cols = rows[0].len();
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
            cols,
        )
        .unwrap()
    }

    fn close(a: &NumericMatrix, b: &NumericMatrix, tol: f64) -> bool {
        frobenius(&a.sub(b).unwrap()) <= tol
    }

    #[test]
    fn det_examples() {
        assert!((det_numeric(&real(&[&[2.0, 1.0], &[1.0, 1.0]])).unwrap() - 1.0).norm() < 1e-14);
        let id: NumericMatrix = Matrix::identity(4);
        assert!((det_numeric(&id).unwrap() - 1.0).norm() < 1e-15);
        assert_eq!(
            det_numeric(&real(&[&[0.0]])).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        assert!(det_numeric(&real(&[&[1.0, 2.0]])).is_err());
    }

    #[test]
    fn split_diagonal() {
        let m = real(&[&[0.1, 0.0], &[0.0, 9.0]]);
        let s = eigen_split(&m, 1.0).unwrap();
        assert!(close(&s.small, &real(&[&[1.0, 0.0], &[0.0, 0.0]]), 1e-12));
        assert!(close(&s.large, &real(&[&[0.0, 0.0], &[0.0, 1.0]]), 1e-12));
    }

    #[test]
    fn split_identity_radius_two() {
        let id: NumericMatrix = Matrix::identity(3);
        let s = eigen_split(&id, 2.0).unwrap();
        assert!(close(&s.small, &id, 1e-15));
        assert!(s.large.entries().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn split_cat_map() {
        let m = real(&[&[2.0, 1.0], &[1.0, 1.0]]);
        let s = eigen_split(&m, 1.0).unwrap();
        assert_eq!(s.small_dim, 1);
        // eigenvector of (3 - sqrt5)/2 is (1, (-1 - sqrt5)/2) up to scale
        let l = (3.0 - 5f64.sqrt()) / 2.0;
        let v = [1.0, l - 2.0];
        let nv = v[0] * v[0] + v[1] * v[1];
        let expected = real(&[
            &[v[0] * v[0] / nv, v[0] * v[1] / nv],
            &[v[1] * v[0] / nv, v[1] * v[1] / nv],
        ]);
        assert!(close(&s.small, &expected, 1e-10));
        let p2 = s.small.mul(&s.small).unwrap();
        assert!(close(&p2, &s.small, 1e-10));
        let pm = s.small.mul(&m).unwrap();
        let mp = m.mul(&s.small).unwrap();
        assert!(close(&pm, &mp, 1e-10));
    }

    #[test]
    fn split_rejects_eigenvalue_on_circle() {
        let m = real(&[&[1.0, 0.0], &[0.0, 3.0]]);
        assert!(matches!(
            eigen_split(&m, 1.0),
            Err(Error::SplitTooClose { .. })
        ));
    }
}
