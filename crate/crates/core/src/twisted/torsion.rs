use std::fmt;

use num_complex::Complex64;
use num_traits::Signed;

use super::complex::{presentation_complex, GroupRingComplex, Presentation};
use super::rep::{evaluate, EvaluatedComplex, Rank1Rep, Representation};
use crate::algebra::{Field, GaussianRational, LaurentPoly, RatFunc, VarNames};
use crate::error::{Error, Result};
use crate::variety::milnor_torsion;

/// Integral Euler-structure shift `e₂ − e₁`, in coordinates of the free
/// part of `H₁`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EulerShift(pub Vec<i64>);

impl EulerShift {
    pub fn zero(nvars: usize) -> Self {
        EulerShift(vec![0; nvars])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
}

/// Homology orientation, exposed as a sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OrientationSign {
    #[default]
    Plus,
    Minus,
}

impl OrientationSign {
    pub fn from_i64(s: i64) -> Result<Self> {
        match s {
            1 => Ok(Self::Plus),
            -1 => Ok(Self::Minus),
            other => Err(Error::Parse(format!(
                "orientation must be +1 or -1, got {other}"
            ))),
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Self::Plus => 1,
            Self::Minus => -1,
        }
    }

    /// `o^n`.
    pub fn power(self, n: usize) -> i64 {
        if self == Self::Minus && n % 2 == 1 {
            -1
        } else {
            1
        }
    }
}

/// A torsion value: a rational function on the rank-one torus, or a
/// number at a numeric representation.
#[derive(Clone, Debug, PartialEq)]
pub enum TorsionValue {
    Symbolic(RatFunc),
    Numeric(Complex64),
}

impl TorsionValue {
    pub fn as_symbolic(&self) -> Option<&RatFunc> {
        match self {
            Self::Symbolic(f) => Some(f),
            Self::Numeric(_) => None,
        }
    }

    pub fn as_numeric(&self) -> Option<Complex64> {
        match self {
            Self::Numeric(z) => Some(*z),
            Self::Symbolic(_) => None,
        }
    }
}

impl fmt::Display for TorsionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Symbolic(r) => write!(f, "{r}"),
            Self::Numeric(z) => write!(
                f,
                "{} {} {}i",
                z.re,
                if z.im < 0.0 { "-" } else { "+" },
                z.im.abs()
            ),
        }
    }
}

/// `det_a = t^a` on the rank-one torus.
pub fn det_a(shift: &EulerShift, rho: &Rank1Rep) -> Result<RatFunc> {
    if shift.0.len() != rho.nvars() {
        return Err(Error::Dimension(format!(
            "Euler shift of length {} for {} variables",
            shift.0.len(),
            rho.nvars()
        )));
    }
    Ok(RatFunc::monomial(
        rho.nvars(),
        GaussianRational::one(),
        shift.0.clone(),
    ))
}

/// `det_a` at torus coordinates.
pub fn det_a_at(shift: &EulerShift, coords: &[Complex64]) -> Result<Complex64> {
    if shift.0.len() != coords.len() {
        return Err(Error::Dimension(format!(
            "Euler shift of length {} for {} coordinates",
            shift.0.len(),
            coords.len()
        )));
    }
    Ok(coords
        .iter()
        .zip(&shift.0)
        .map(|(z, &a)| z.powi(a as i32))
        .product())
}

/// Milnor–Turaev torsion `o^{dim V} · det_a(ρ) · τ(C ⊗ V)`.
///
/// A zero shift needs no torus coordinates; otherwise a numeric
/// representation must carry them.
pub fn milnor_turaev(
    c: &GroupRingComplex,
    rho: &Representation,
    shift: &EulerShift,
    o: OrientationSign,
) -> Result<TorsionValue> {
    let sign = o.power(rho.dim());
    match (evaluate(c, rho)?, rho) {
        (EvaluatedComplex::Symbolic(e), Representation::Rank1(r)) => {
            let tau = milnor_torsion(&e)?;
            let unit = det_a(shift, r)?;
            let value = tau * unit;
            Ok(TorsionValue::Symbolic(if sign < 0 {
                -value
            } else {
                value
            }))
        }
        (EvaluatedComplex::Numeric(e), Representation::Numeric(r)) => {
            let tau = milnor_torsion(&e)?;
            let unit = if shift.is_zero() {
                Complex64::new(1.0, 0.0)
            } else {
                let coords = r.coords().ok_or_else(|| {
                    Error::InvalidRepresentation(
                        "a nonzero Euler shift needs torus coordinates".into(),
                    )
                })?;
                det_a_at(shift, coords)?
            };
            Ok(TorsionValue::Numeric(tau * unit * sign as f64))
        }
        _ => unreachable!("evaluation preserves the representation kind"),
    }
}

/// Normalizes a univariate Laurent polynomial up to `±t^m`: no negative
/// powers, nonzero constant term, positive leading coefficient.
pub fn normalize_up_to_units(p: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        return p.clone();
    }
    let shift: Vec<i64> = p.min_exponents().iter().map(|x| -x).collect();
    let q = p.shift(&shift);
    let top = q.max_degree_in(0).unwrap_or(0);
    let lead = q.coeff(&[top]);
    if lead.re.is_negative()
        || (lead.re == num_rational::BigRational::from_integer(0.into()) && lead.im.is_negative())
    {
        q.scale(&GaussianRational::from_int(-1))
    } else {
        q
    }
}

/// Alexander polynomial of a knot group from the torsion of its
/// presentation complex at the abelianization `g ↦ t`.
///
/// With inverse transport the torsion is `(t^{-1} − 1)/Δ(t^{-1})` up to
/// units, so `Δ` is `(t − 1)/τ` normalized by [`normalize_up_to_units`].
pub fn alexander_from_torsion(p: &Presentation) -> Result<LaurentPoly> {
    let rho = Rank1Rep::abelian(p.generators(), "t");
    let c = presentation_complex(p);
    let tau = milnor_turaev(
        &c,
        &Representation::Rank1(rho),
        &EulerShift::zero(1),
        OrientationSign::Plus,
    )?;
    let tau = tau
        .as_symbolic()
        .expect("rank-one torsion is symbolic")
        .clone();
    let t_minus_1 = RatFunc::from_poly(LaurentPoly::from_int_coeffs(&[-1, 1]));
    let quotient = t_minus_1
        .checked_div(&tau)
        .expect("acyclic torsion is nonzero");
    let poly = quotient.as_laurent().ok_or_else(|| {
        Error::InvalidRepresentation(format!(
            "(t - 1)/torsion = {} is not a Laurent polynomial; not a knot group presentation",
            quotient.display_with(&VarNames::new(["t"]))
        ))
    })?;
    Ok(normalize_up_to_units(poly))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twisted::Word;

    fn w(l: &[i32]) -> Word {
        Word::new(l.iter().copied()).unwrap()
    }

    fn circle() -> GroupRingComplex {
        presentation_complex(&Presentation::new(1, vec![]).unwrap())
    }

    fn z_rep() -> Representation {
        Representation::Rank1(
            Rank1Rep::new(
                VarNames::new(["z"]),
                vec![(GaussianRational::one(), vec![1])],
            )
            .unwrap(),
        )
    }

    fn poly(c: &[i64]) -> RatFunc {
        RatFunc::from_poly(LaurentPoly::from_int_coeffs(c))
    }

    #[test]
    fn circle_torsion() {
        let t = milnor_turaev(
            &circle(),
            &z_rep(),
            &EulerShift(vec![0]),
            OrientationSign::Plus,
        )
        .unwrap();
        let zinv_minus_1 = RatFunc::monomial(1, GaussianRational::one(), vec![-1]) - poly(&[1]);
        assert_eq!(t, TorsionValue::Symbolic(-zinv_minus_1.clone()));
        let shifted = milnor_turaev(
            &circle(),
            &z_rep(),
            &EulerShift(vec![1]),
            OrientationSign::Plus,
        )
        .unwrap();
        // ±z(z⁻¹ − 1) = ±(1 − z)
        assert_eq!(shifted, TorsionValue::Symbolic(poly(&[-1, 1])));
        let flipped = milnor_turaev(
            &circle(),
            &z_rep(),
            &EulerShift(vec![0]),
            OrientationSign::Minus,
        )
        .unwrap();
        assert_eq!(flipped, TorsionValue::Symbolic(zinv_minus_1));
    }

    #[test]
    fn det_a_examples() {
        let rho = Rank1Rep::new(
            VarNames::new(["z", "w"]),
            vec![
                (GaussianRational::one(), vec![1, 0]),
                (GaussianRational::one(), vec![0, 1]),
            ],
        )
        .unwrap();
        let d = det_a(&EulerShift(vec![1, -2]), &rho).unwrap();
        assert_eq!(
            d,
            RatFunc::monomial(2, GaussianRational::one(), vec![1, -2])
        );
        assert_eq!(
            det_a(&EulerShift(vec![0, 0]), &rho).unwrap(),
            RatFunc::monomial(2, GaussianRational::one(), vec![0, 0])
        );
        assert!(det_a(&EulerShift(vec![1]), &rho).is_err());
    }

    #[test]
    fn alexander_polynomials() {
        let trefoil = Presentation::new(2, vec![w(&[1, 2, 1, -2, -1, -2])]).unwrap();
        assert_eq!(
            alexander_from_torsion(&trefoil).unwrap(),
            LaurentPoly::from_int_coeffs(&[1, -1, 1])
        );
        let unknot = Presentation::new(1, vec![]).unwrap();
        assert_eq!(
            alexander_from_torsion(&unknot).unwrap(),
            LaurentPoly::from_int_coeffs(&[1])
        );
    }

    #[test]
    fn numeric_circle_not_acyclic_at_one() {
        let rho = Rank1Rep::new(
            VarNames::new(["z"]),
            vec![(GaussianRational::one(), vec![1])],
        )
        .unwrap();
        let at_one = Representation::Numeric(rho.at(&[Complex64::new(1.0, 0.0)]).unwrap());
        let r = milnor_turaev(
            &circle(),
            &at_one,
            &EulerShift(vec![0]),
            OrientationSign::Plus,
        );
        assert!(matches!(r, Err(Error::NotAcyclic(_))));
    }
}
