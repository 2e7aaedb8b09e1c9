//! Random acyclic complexes, built as `A_{i+1} D^i A_i^{-1}` from a
//! standard acyclic complex `D` and random invertible changes of basis.

use num_complex::Complex64;
use rand::Rng;

use super::complex::{CochainComplex, Shape};
use crate::algebra::{Field, GaussianRational, LaurentPoly, Matrix, RatFunc};

/// A random admissible shape with `2..=max_len` entries, each at most `max_k`.
pub fn random_acyclic_shape<R: Rng>(rng: &mut R, max_len: usize, max_k: usize) -> Shape {
    let len = rng.random_range(2..=max_len.max(2));
    let mut ranks = Vec::with_capacity(len);
    let mut prev = 0;
    for i in 0..len {
        let r = if i + 1 == len {
            0
        } else {
            rng.random_range(0..=max_k - prev)
        };
        ranks.push(r);
        prev = r;
    }
    let mut k = Vec::with_capacity(len);
    let mut before = 0;
    for &r in &ranks {
        k.push(before + r);
        before = r;
    }
    Shape(k)
}

/// The acyclic complex whose `d^i` sends the basis vectors of `C^i` after
/// the image of `d^{i−1}` onto the first basis vectors of `C^{i+1}`.
///
/// Returns `None` if the shape is not admissible.
pub fn standard_acyclic<F: Field>(shape: &Shape) -> Option<CochainComplex<F>> {
    let ranks = shape.acyclic_ranks()?;
    if ranks.last() != Some(&0) {
        return None;
    }
    let k = &shape.0;
    let mut diffs = Vec::with_capacity(k.len() - 1);
    for i in 0..k.len() - 1 {
        let before = if i > 0 { ranks[i - 1] } else { 0 };
        let mut d = Matrix::zeros(k[i + 1], k[i]);
        for j in 0..ranks[i] {
            d.set(j, before + j, F::one());
        }
        diffs.push(d);
    }
    CochainComplex::new(shape.clone(), diffs).ok()
}

/// The standard complex with one differential's rank lowered, so that it
/// has cohomology and all its Laplacians are singular somewhere.
pub fn standard_singular<F: Field>(shape: &Shape, degree: usize) -> Option<CochainComplex<F>> {
    let c = standard_acyclic::<F>(shape)?;
    let mut diffs = c.diffs().to_vec();
    let d = diffs.get_mut(degree)?;
    let before = if degree > 0 {
        shape.acyclic_ranks()?[degree - 1]
    } else {
        0
    };
    if d.rank() == 0 {
        return None;
    }
    d.set(0, before, F::zero());
    CochainComplex::new(shape.clone(), diffs).ok()
}

fn conjugate<F: Field, R: Rng>(
    rng: &mut R,
    shape: &Shape,
    mut entry: impl FnMut(&mut R) -> F,
    mut unit: impl FnMut(&mut R) -> F,
) -> (CochainComplex<F>, Vec<Matrix<F>>) {
    let standard = standard_acyclic::<F>(shape).expect("admissible shape");
    let changes: Vec<Matrix<F>> = shape
        .0
        .iter()
        .map(|&n| random_invertible(rng, n, &mut entry, &mut unit))
        .collect();
    let c = standard
        .change_basis(&changes)
        .expect("invertible basis change");
    (c, changes)
}

/// `L · diag(u) · U` with unit triangular `L`, `U` and random units `u`.
pub fn random_invertible<F: Field, R: Rng>(
    rng: &mut R,
    n: usize,
    mut entry: impl FnMut(&mut R) -> F,
    mut unit: impl FnMut(&mut R) -> F,
) -> Matrix<F> {
    let mut l = Matrix::identity(n);
    let mut u = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, entry(rng));
            u.set(j, i, entry(rng));
        }
    }
    let diag: Vec<F> = (0..n).map(|_| unit(rng)).collect();
    l.mul(&Matrix::diagonal(&diag))
        .and_then(|m| m.mul(&u))
        .expect("square factors")
}

fn small_int<R: Rng>(rng: &mut R) -> GaussianRational {
    GaussianRational::from_int(rng.random_range(-3..=3))
}

fn nonzero_rational<R: Rng>(rng: &mut R) -> GaussianRational {
    let num = *[-3, -2, -1, 1, 2, 3]
        .get(rng.random_range(0..6))
        .unwrap_or(&1);
    GaussianRational::from_ratio(num, rng.random_range(1..=3))
}

/// A random acyclic complex over ℚ of the given shape, together with the
/// basis changes used to build it.
pub fn random_acyclic_rational<R: Rng>(
    rng: &mut R,
    shape: &Shape,
) -> (
    CochainComplex<GaussianRational>,
    Vec<Matrix<GaussianRational>>,
) {
    conjugate(rng, shape, small_int, nonzero_rational)
}

fn linear_poly<R: Rng>(rng: &mut R) -> RatFunc {
    let a = rng.random_range(-2..=2);
    let b = rng.random_range(-2..=2);
    RatFunc::from_poly(LaurentPoly::from_int_coeffs(&[a, b]))
}

fn unit_ratfunc<R: Rng>(rng: &mut R) -> RatFunc {
    match rng.random_range(0..4) {
        0 => RatFunc::constant(1, nonzero_rational(rng)),
        1 => RatFunc::monomial(1, nonzero_rational(rng), vec![rng.random_range(-1..=1)]),
        _ => {
            let c = rng.random_range(1..=3) * if rng.random_bool(0.5) { 1 } else { -1 };
            RatFunc::from_poly(LaurentPoly::from_int_coeffs(&[c, 1]))
        }
    }
}

/// A random acyclic complex over ℚ(z).
pub fn random_acyclic_ratfunc<R: Rng>(
    rng: &mut R,
    shape: &Shape,
) -> (CochainComplex<RatFunc>, Vec<Matrix<RatFunc>>) {
    conjugate(rng, shape, linear_poly, unit_ratfunc)
}

/// A random acyclic complex with real floating entries.
pub fn random_acyclic_numeric<R: Rng>(rng: &mut R, shape: &Shape) -> CochainComplex<Complex64> {
    let entry = |rng: &mut R| Complex64::new(rng.random_range(-1.0..1.0), 0.0);
    let unit = |rng: &mut R| {
        let m: f64 = rng.random_range(0.5..2.0);
        Complex64::new(if rng.random_bool(0.5) { m } else { -m }, 0.0)
    };
    conjugate(rng, shape, entry, unit).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variety::{betti, is_admissible, on_sigma};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn shapes_are_admissible() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let s = random_acyclic_shape(&mut rng, 5, 6);
            assert!(is_admissible(&s), "{s}");
            assert!(s.0.iter().all(|&k| k <= 6));
        }
    }

    #[test]
    fn random_complexes_are_acyclic() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let s = random_acyclic_shape(&mut rng, 4, 4);
            let (c, _) = random_acyclic_rational(&mut rng, &s);
            assert!(betti(&c).is_zero());
        }
    }

    #[test]
    fn singular_complexes_lie_on_sigma() {
        let s = Shape(vec![1, 3, 3, 1]);
        for deg in 0..3 {
            let c = standard_singular::<GaussianRational>(&s, deg).unwrap();
            assert!(on_sigma(&c).unwrap());
        }
    }
}
