//! Splitting `Sτ` along a circle in the spectrum of the Laplacians.
//!
//! The Laplacians commute with the differentials, so each cochain group
//! splits as `S^i ⊕ L^i` (eigenvalues of `P_i` inside or outside the
//! circle) and `d` preserves both pieces. The large part contributes plain
//! determinants of the restricted Laplacians; the small part contributes
//! the square of the Milnor torsion of the finite subcomplex `S`, which is
//! the finite analogue of the analytic torsion of the small-eigenvalue
//! complex.

use num_complex::Complex64;

use super::complex::{CochainComplex, Shape};
use super::torsion::{laplacians, milnor_torsion};
use crate::algebra::matrix::NUMERIC_RANK_RTOL;
use crate::algebra::numeric::{conj_transpose, eigenvalues, projector_range_basis};
use crate::algebra::{det_numeric, eigen_split, Field};
use crate::error::{Error, Result};

/// The pieces of a spectral split, kept for diagnostics.
#[derive(Clone, Debug)]
pub struct SplitReport {
    /// `det(P_i|L^i)` per degree.
    pub large_dets: Vec<Complex64>,
    /// The small subcomplex in orthonormal (Hermitian) coordinates.
    pub small: CochainComplex<Complex64>,
    /// `det(B_iᵗ B_i)` of the chosen bases of `S^i`.
    pub gram_dets: Vec<Complex64>,
    /// `Sτ` assembled from the pieces.
    pub value: Complex64,
}

/// `Sτ(C)` recomputed as
/// `(∏_{i even} det(P_i|L)^i / ∏_{i odd} det(P_i|L)^i)^{-1} · τ(S)²`.
///
/// `τ(S)` is taken in a basis of `S` that is orthonormal for the bilinear
/// form `xᵗy`; the code uses a Hermitian-orthonormal basis `B_i` and
/// corrects by `∏ det(B_iᵗ B_i)^{(−1)^{i+1}}`.
pub fn spectral_split_storsion(c: &CochainComplex<Complex64>, radius: f64) -> Result<Complex64> {
    Ok(spectral_split_report(c, radius)?.value)
}

pub fn spectral_split_report(c: &CochainComplex<Complex64>, radius: f64) -> Result<SplitReport> {
    let lap = laplacians(c)?;
    let mut large_dets = Vec::with_capacity(lap.len());
    let mut bases = Vec::with_capacity(lap.len());
    for p in &lap {
        let split = eigen_split(p, radius)?;
        let restricted = p.mul(&split.large)?.add(&split.small)?;
        large_dets.push(det_numeric(&restricted)?);
        bases.push(projector_range_basis(&split.small, split.small_dim));
    }
    // Restrictions of differentials that vanish on the small part come out
    // as round-off; flush them against the scale of the whole complex.
    let scale = c
        .diffs()
        .iter()
        .filter_map(|d| d.frobenius_norm())
        .fold(0.0, f64::max);
    let floor = scale * NUMERIC_RANK_RTOL;
    let mut diffs = Vec::with_capacity(c.diffs().len());
    for (i, d) in c.diffs().iter().enumerate() {
        let delta = conj_transpose(&bases[i + 1]).mul(d)?.mul(&bases[i])?;
        diffs.push(delta.map(|x| {
            if x.norm() <= floor {
                Complex64::new(0.0, 0.0)
            } else {
                *x
            }
        }));
    }
    let small =
        CochainComplex::new_unchecked(Shape(bases.iter().map(|b| b.cols()).collect()), diffs)?;
    let tau = milnor_torsion(&small)?;
    let gram_dets = bases
        .iter()
        .map(|b| b.transpose().mul(b).and_then(|g| det_numeric(&g)))
        .collect::<Result<Vec<_>>>()?;

    let mut value = tau * tau;
    for (i, (l, g)) in large_dets.iter().zip(&gram_dets).enumerate() {
        let e = i as i32;
        value *= if i % 2 == 0 { l.powi(-e) } else { l.powi(e) };
        value *= if i % 2 == 0 {
            Field::inv(g).ok_or(Error::OnSigma(i))?
        } else {
            *g
        };
    }
    Ok(SplitReport {
        large_dets,
        small,
        gram_dets,
        value,
    })
}

/// Up to `count` radii safely separated from the spectra of all Laplacians:
/// geometric midpoints of the widest gaps between consecutive eigenvalue
/// moduli, then radii below and above the whole spectrum.
pub fn admissible_radii(c: &CochainComplex<Complex64>, count: usize) -> Result<Vec<f64>> {
    let mut moduli = Vec::new();
    for p in laplacians(c)? {
        moduli.extend(eigenvalues(&p)?.iter().map(|l| l.norm()));
    }
    moduli.retain(|m| *m > 0.0);
    moduli.sort_by(f64::total_cmp);
    if moduli.is_empty() {
        // No spectrum at all: every radius is admissible.
        return Ok([1.0, 0.5, 2.0, 0.25, 4.0]
            .into_iter()
            .cycle()
            .take(count)
            .collect());
    }
    let mut gaps: Vec<(f64, f64)> = moduli
        .windows(2)
        .filter(|w| w[1] > w[0] * 1.01)
        .map(|w| (w[1] / w[0], (w[0] * w[1]).sqrt()))
        .collect();
    gaps.sort_by(|a, b| b.0.total_cmp(&a.0));
    // Interior radii exercise the split, so they come first.
    let mut radii: Vec<f64> = gaps.iter().map(|g| g.1).collect();
    // Then alternately below and above the spectrum, further out each time.
    let (lo, hi) = (moduli[0], moduli[moduli.len() - 1]);
    let mut factor = 2.0;
    while radii.len() < count {
        radii.push(lo / factor);
        radii.push(hi * factor);
        factor *= 2.0;
    }
    radii.truncate(count);
    Ok(radii)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Matrix;
    use crate::variety::s_torsion;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    /// A 3-term complex built from the cat-map matrix: d⁰ = (2, 1)ᵗ and
    /// d¹ = (1, −2), so that d¹d⁰ = 0.
    fn cat_complex() -> CochainComplex<Complex64> {
        let d0 = Matrix::from_fn(2, 1, |i, _| c([2.0, 1.0][i]));
        let d1 = Matrix::from_fn(1, 2, |_, j| c([1.0, -2.0][j]));
        CochainComplex::new(Shape(vec![1, 2, 1]), vec![d0, d1]).unwrap()
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn matches_s_torsion_at_every_radius() {
        let cx = cat_complex();
        let s = s_torsion(&cx).unwrap();
        for r in [0.1, 1.0, 6.0, 100.0] {
            let v = spectral_split_storsion(&cx, r).unwrap();
            assert!(rel(v, s) < 1e-8, "radius {r}: {v} vs {s}");
        }
    }

    #[test]
    fn extreme_radii() {
        let cx = cat_complex();
        let tau = milnor_torsion(&cx).unwrap();
        let high = spectral_split_storsion(&cx, 1e3).unwrap();
        assert!(rel(high, tau * tau) < 1e-10);
        let low = spectral_split_report(&cx, 1e-3).unwrap();
        assert_eq!(low.small.shape().total(), 0);
    }

    #[test]
    fn too_close_is_reported() {
        let cx = cat_complex();
        // P_0 = 5, so a circle of radius 5 touches the spectrum.
        assert!(matches!(
            spectral_split_storsion(&cx, 5.0),
            Err(Error::SplitTooClose { .. })
        ));
    }
}
