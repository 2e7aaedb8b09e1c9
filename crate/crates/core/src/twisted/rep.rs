use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::complex::{GroupRingComplex, GroupRingMatrix};
use super::word::{GroupRingElt, Word};
use crate::algebra::matrix::NUMERIC_RANK_RTOL;
use crate::algebra::numeric::{frobenius, numeric_rank_abs};
use crate::algebra::{
    Field, GaussianRational, LaurentPoly, Matrix, NumericMatrix, RatFunc, VarNames,
};
use crate::error::{Error, Result};
use crate::variety::{CochainComplex, NUMERIC_D2_RTOL};

/// Residual allowed in `‖ρ(R) − I‖` for numeric matrix representations.
pub const RELATOR_TOL: f64 = 1e-9;

/// A rank-one representation sending generator `g` to the monomial
/// `c_g · t^{v_g}` in the coordinate ring of `(ℂ*)^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rank1Rep {
    names: VarNames,
    images: Vec<(GaussianRational, Vec<i64>)>,
}

impl Rank1Rep {
    /// Each `c_g` must be a root of unity in ℚ(i) (so `±1, ±i`) and every
    /// exponent vector must have length `names.len()`.
    pub fn new(names: VarNames, images: Vec<(GaussianRational, Vec<i64>)>) -> Result<Self> {
        for (g, (c, v)) in images.iter().enumerate() {
            if !c.is_root_of_unity() {
                return Err(Error::InvalidRepresentation(format!(
                    "coefficient {c} of generator {} is not a root of unity",
                    g + 1
                )));
            }
            if v.len() != names.len() {
                return Err(Error::InvalidRepresentation(format!(
                    "generator {} has {} exponents for {} variables",
                    g + 1,
                    v.len(),
                    names.len()
                )));
            }
        }
        Ok(Self { names, images })
    }

    /// Every generator to the single variable `t` (abelianization of a
    /// knot group).
    pub fn abelian(generators: usize, name: &str) -> Self {
        let images = vec![(GaussianRational::one(), vec![1]); generators];
        Self {
            names: VarNames::new([name]),
            images,
        }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &VarNames {
        &self.names
    }

    pub fn generators(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[(GaussianRational, Vec<i64>)] {
        &self.images
    }

    /// `ρ(w)^{-1}` as a coefficient and exponent vector.
    pub fn word_inverse(&self, w: &Word) -> (GaussianRational, Vec<i64>) {
        let mut c = GaussianRational::one();
        let mut e = vec![0; self.nvars()];
        for &l in w.letters() {
            let (cg, vg) = &self.images[l.unsigned_abs() as usize - 1];
            // The inverse image of a letter l is ρ(g)^{-sign l}.
            let s = -(l.signum() as i64);
            c = c * cg.pow(s).expect("unit");
            for (ei, vi) in e.iter_mut().zip(vg) {
                *ei += s * vi;
            }
        }
        (c, e)
    }

    /// `Σ n_w ρ(w)^{-1}`.
    pub fn eval_elt(&self, x: &GroupRingElt) -> LaurentPoly {
        let n = self.nvars();
        let mut p = LaurentPoly::zero(n);
        for (w, coeff) in x.terms() {
            let (c, e) = self.word_inverse(w);
            let q = GaussianRational::new(
                coeff.clone(),
                num_rational::BigRational::from_integer(0.into()),
            );
            p = &p + &LaurentPoly::monomial(n, c * q, e);
        }
        p
    }

    /// The numeric representation at a point of `(ℂ*)^k`.
    pub fn at(&self, point: &[Complex64]) -> Result<NumericRep> {
        if point.len() != self.nvars() {
            return Err(Error::InvalidRepresentation(format!(
                "point has {} coordinates for {} variables",
                point.len(),
                self.nvars()
            )));
        }
        if point.iter().any(|z| z.norm() == 0.0 || !z.is_finite()) {
            return Err(Error::InvalidRepresentation(
                "point must lie in (C*)^k".into(),
            ));
        }
        let mats = self
            .images
            .iter()
            .map(|(c, v)| {
                let m = LaurentPoly::monomial(self.nvars(), c.clone(), v.clone()).eval(point);
                Matrix::from_fn(1, 1, |_, _| m)
            })
            .collect();
        NumericRep::new(mats, Some(point.to_vec()))
    }
}

/// A representation by invertible complex matrices, with optional torus
/// coordinates used to evaluate Euler-shift monomials.
#[derive(Clone, Debug)]
pub struct NumericRep {
    matrices: Vec<NumericMatrix>,
    inverses: Vec<NumericMatrix>,
    coords: Option<Vec<Complex64>>,
}

impl NumericRep {
    pub fn new(matrices: Vec<NumericMatrix>, coords: Option<Vec<Complex64>>) -> Result<Self> {
        let dim = matrices.first().map_or(1, |m| m.rows());
        let mut inverses = Vec::with_capacity(matrices.len());
        for (g, m) in matrices.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidRepresentation(format!(
                    "image of generator {} is not {dim}x{dim}",
                    g + 1
                )));
            }
            if m.entries().iter().any(|z| !z.is_finite()) {
                return Err(Error::InvalidRepresentation(format!(
                    "image of generator {} is not finite",
                    g + 1
                )));
            }
            let inv = m.inverse().ok_or_else(|| {
                Error::InvalidRepresentation(format!("image of generator {} is singular", g + 1))
            })?;
            inverses.push(inv);
        }
        Ok(Self {
            matrices,
            inverses,
            coords,
        })
    }

    pub fn dim(&self) -> usize {
        self.matrices.first().map_or(1, |m| m.rows())
    }

    pub fn generators(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrices(&self) -> &[NumericMatrix] {
        &self.matrices
    }

    pub fn coords(&self) -> Option<&[Complex64]> {
        self.coords.as_deref()
    }

    /// `ρ(w)`.
    pub fn word(&self, w: &Word) -> NumericMatrix {
        let mut acc = Matrix::identity(self.dim());
        for &l in w.letters() {
            let g = l.unsigned_abs() as usize - 1;
            let m = if l > 0 {
                &self.matrices[g]
            } else {
                &self.inverses[g]
            };
            acc = acc.mul(m).expect("square blocks");
        }
        acc
    }

    /// `ρ(w)^{-1}`.
    pub fn word_inverse(&self, w: &Word) -> NumericMatrix {
        self.word(&w.inverse())
    }

    /// Checks `‖ρ(R) − I‖ ≤ RELATOR_TOL` for every relator.
    pub fn check_relators(&self, relators: &[Word]) -> Result<()> {
        let id = Matrix::identity(self.dim());
        for r in relators {
            if r.max_generator() > self.generators() {
                return Err(Error::InvalidRepresentation(format!(
                    "relator {r} uses an undefined generator"
                )));
            }
            let res = frobenius(&self.word(r).sub(&id)?);
            if res > RELATOR_TOL {
                return Err(Error::InvalidRepresentation(format!(
                    "relator {r} has residual {res:.3e}"
                )));
            }
        }
        Ok(())
    }

    /// The `dim V` block of `Σ n_w ρ(w)^{-1}`, transposed so that products
    /// of group-ring matrices evaluate to products of block matrices.
    pub fn eval_elt(&self, x: &GroupRingElt) -> NumericMatrix {
        let n = self.dim();
        let mut acc = Matrix::zeros(n, n);
        for (w, c) in x.terms() {
            let c = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
            acc = acc
                .add(&self.word_inverse(w).scale(&c))
                .expect("square blocks");
        }
        acc.transpose()
    }
}

/// A point of the representation variety.
#[derive(Clone, Debug)]
pub enum Representation {
    Rank1(Rank1Rep),
    Numeric(NumericRep),
}

impl Representation {
    pub fn dim(&self) -> usize {
        match self {
            Representation::Rank1(_) => 1,
            Representation::Numeric(r) => r.dim(),
        }
    }

    pub fn generators(&self) -> usize {
        match self {
            Representation::Rank1(r) => r.generators(),
            Representation::Numeric(r) => r.generators(),
        }
    }
}

/// The cochain complex `C ⊗ V` at a representation.
#[derive(Clone, Debug)]
pub enum EvaluatedComplex {
    Symbolic(CochainComplex<RatFunc>),
    Numeric(CochainComplex<Complex64>),
}

fn check_generators(c: &GroupRingComplex, available: usize) -> Result<()> {
    let used = c
        .diffs()
        .iter()
        .map(GroupRingMatrix::max_generator)
        .max()
        .unwrap_or(0);
    if used > available {
        return Err(Error::InvalidRepresentation(format!(
            "complex uses generator {used} but the representation defines {available}"
        )));
    }
    Ok(())
}

fn d2_failure(e: Error) -> Error {
    match e {
        Error::Dimension(msg) => Error::InvalidRepresentation(format!("{msg} after evaluation")),
        other => other,
    }
}

/// Evaluates a group-ring complex at a rank-one representation, giving a
/// complex over the rational functions on the torus.
pub fn evaluate_rank1(c: &GroupRingComplex, rho: &Rank1Rep) -> Result<CochainComplex<RatFunc>> {
    check_generators(c, rho.generators())?;
    let diffs = c
        .diffs()
        .iter()
        .map(|d| {
            Matrix::from_fn(d.rows(), d.cols(), |i, j| {
                RatFunc::from_poly(rho.eval_elt(d.get(i, j)))
            })
        })
        .collect();
    CochainComplex::new(c.shape().clone(), diffs).map_err(d2_failure)
}

/// Evaluates at a matrix representation: each entry becomes a `dim V` block.
///
/// `d² = 0` is checked relative to the term magnitudes `Σ |n_w| ‖ρ(w)^{-1}‖`
/// rather than the evaluated norms, which may themselves be the result of
/// cancellation (near a pole of the torsion, for example).
pub fn evaluate_numeric(
    c: &GroupRingComplex,
    rho: &NumericRep,
) -> Result<CochainComplex<Complex64>> {
    evaluate_numeric_scaled(c, rho).map(|(e, _)| e)
}

/// The evaluated complex with the term-magnitude scale of each differential.
fn evaluate_numeric_scaled(
    c: &GroupRingComplex,
    rho: &NumericRep,
) -> Result<(CochainComplex<Complex64>, Vec<f64>)> {
    check_generators(c, rho.generators())?;
    let n = rho.dim();
    let shape = crate::variety::Shape(c.shape().0.iter().map(|k| k * n).collect());
    let mut scales = Vec::with_capacity(c.diffs().len());
    let diffs = c
        .diffs()
        .iter()
        .map(|d| {
            let mut m = Matrix::zeros(d.rows() * n, d.cols() * n);
            let mut scale = 0.0;
            for i in 0..d.rows() {
                for j in 0..d.cols() {
                    let x = d.get(i, j);
                    m.set_block(i * n, j * n, &rho.eval_elt(x));
                    let size: f64 = x
                        .terms()
                        .map(|(w, c)| {
                            c.to_f64().unwrap_or(f64::INFINITY).abs()
                                * frobenius(&rho.word_inverse(w))
                        })
                        .sum();
                    scale += size * size;
                }
            }
            scales.push(scale.sqrt());
            m
        })
        .collect::<Vec<_>>();
    for (i, w) in diffs.windows(2).enumerate() {
        let residual = frobenius(&w[1].mul(&w[0])?);
        if residual > NUMERIC_D2_RTOL * scales[i] * scales[i + 1] {
            return Err(Error::InvalidRepresentation(format!(
                "d^{} d^{i} is not zero after evaluation (residual {residual:.3e})",
                i + 1
            )));
        }
    }
    Ok((CochainComplex::new_unchecked(shape, diffs)?, scales))
}

pub fn evaluate(c: &GroupRingComplex, rho: &Representation) -> Result<EvaluatedComplex> {
    match rho {
        Representation::Rank1(r) => evaluate_rank1(c, r).map(EvaluatedComplex::Symbolic),
        Representation::Numeric(r) => evaluate_numeric(c, r).map(EvaluatedComplex::Numeric),
    }
}

/// True iff `C ⊗ V` has no cohomology at `ρ`.
///
/// Numeric ranks count singular values above `1e-9` times the term
/// magnitude of each differential, so entries that vanish by cancellation
/// are recognized as zero.
pub fn is_acyclic_rep(c: &GroupRingComplex, rho: &Representation) -> Result<bool> {
    match rho {
        Representation::Rank1(r) => Ok(crate::variety::is_acyclic(&evaluate_rank1(c, r)?)),
        Representation::Numeric(r) => {
            let (e, scales) = evaluate_numeric_scaled(c, r)?;
            let ranks: Vec<usize> = e
                .diffs()
                .iter()
                .zip(&scales)
                .map(|(d, s)| numeric_rank_abs(d, NUMERIC_RANK_RTOL * s))
                .collect();
            Ok(e.shape().0.iter().enumerate().all(|(i, &k)| {
                let incoming = if i == 0 { 0 } else { ranks[i - 1] };
                let outgoing = ranks.get(i).copied().unwrap_or(0);
                k == incoming + outgoing
            }))
        }
    }
}
