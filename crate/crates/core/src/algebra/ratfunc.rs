use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use super::field::Field;
use super::gaussian::GaussianRational;
use super::gcd::{div_exact, poly_gcd};
use super::laurent::{LaurentPoly, VarNames};

/// A rational function `num / den` on the torus (ℂ*)^n.
///
/// Canonical form: `den` is a polynomial not divisible by any variable with
/// graded-lex leading coefficient 1, `num` is a Laurent polynomial, and the
/// two are coprime. Every rational function has exactly one such
/// representative, so derived equality is equality of functions.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    /// Builds and reduces `num / den`. Panics if `den` is zero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = match (num.nvars(), den.nvars()) {
            (a, b) if a == b => (num, den),
            (0, b) => (num.lift(b), den),
            (a, 0) => (num, den.lift(a)),
            (a, b) => panic!("variable count mismatch: {a} vs {b}"),
        };
        let n = num.nvars();
        if num.is_zero() {
            return Self::from_poly(LaurentPoly::zero(n));
        }
        let mn = num.min_exponents();
        let md = den.min_exponents();
        let neg = |v: &[i64]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let mut p = num.shift(&neg(&mn));
        let mut q = den.shift(&neg(&md));
        if !q.is_constant() && !p.is_constant() {
            let g = poly_gcd(&p, &q);
            if !g.is_constant() {
                p = div_exact(&p, &g).expect("gcd divides numerator");
                q = div_exact(&q, &g).expect("gcd divides denominator");
            }
        }
        let lc = q.leading_term().map(|(_, c)| c.clone()).expect("nonzero");
        let lc_inv = lc.inv().expect("nonzero");
        let shift: Vec<i64> = mn.iter().zip(&md).map(|(a, b)| a - b).collect();
        Self {
            num: p.scale(&lc_inv).shift(&shift),
            den: q.scale(&lc_inv),
        }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let n = p.nvars();
        Self {
            num: p,
            den: LaurentPoly::one(n),
        }
    }

    pub fn constant(nvars: usize, c: GaussianRational) -> Self {
        Self::from_poly(LaurentPoly::constant(nvars, c))
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Self::from_poly(LaurentPoly::var(nvars, index))
    }

    pub fn monomial(nvars: usize, c: GaussianRational, exps: Vec<i64>) -> Self {
        Self::from_poly(LaurentPoly::monomial(nvars, c, exps))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    /// Laurent polynomial value if the denominator is 1.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.den.is_constant().then_some(&self.num)
    }

    /// `Some((c, e))` when this function is the unit `c·t^e`.
    pub fn as_unit(&self) -> Option<(GaussianRational, Vec<i64>)> {
        if !self.den.is_constant() {
            return None;
        }
        self.num.as_monomial().map(|(c, e)| (c.clone(), e.clone()))
    }

    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        self.num.eval(point) / self.den.eval(point)
    }

    /// Exact value, `None` at a pole.
    pub fn eval_exact(&self, point: &[GaussianRational]) -> Option<GaussianRational> {
        let d = self.den.eval_exact(point)?;
        let n = self.num.eval_exact(point)?;
        n.checked_div(&d)
    }

    /// Partial derivative with respect to `var`.
    pub fn derivative(&self, var: usize) -> Self {
        let n = &(&self.num.derivative(var) * &self.den) - &(&self.num * &self.den.derivative(var));
        Self::new(n, &self.den * &self.den)
    }

    /// Substitutes `t_j ↦ t_j^{-1}`.
    pub fn invert_variables(&self) -> Self {
        Self::new(self.num.invert_variables(), self.den.invert_variables())
    }

    /// Multiplies by `t^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        Self {
            num: self.num.shift(shift),
            den: self.den.clone(),
        }
    }

    /// Embeds into a ring with more variables, see [`LaurentPoly::embed`].
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Self {
        Self::new(self.num.embed(nvars, map), self.den.embed(nvars, map))
    }

    /// Decides whether `self = c·t^m·other` for a unit `c ∈ {±1, ±i}` and
    /// some monomial, returning `(c, m)`.
    pub fn unit_ratio(&self, other: &Self) -> Option<(GaussianRational, Vec<i64>)> {
        let q = self.clone().checked_div(other)?;
        let (c, e) = q.as_unit()?;
        c.is_root_of_unity().then_some((c, e))
    }

    pub fn display_with<'a>(&'a self, names: &'a VarNames) -> impl fmt::Display + 'a {
        RatDisplay { f: self, names }
    }
}

struct RatDisplay<'a> {
    f: &'a RatFunc,
    names: &'a VarNames,
}

impl fmt::Display for RatDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.f.num.display_with(self.names);
        if self.f.den.is_constant() {
            write!(f, "{num}")
        } else {
            let den = self.f.den.display_with(self.names);
            write!(f, "({num}) / ({den})")
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = VarNames::default_for(self.nvars());
        let shown = self.display_with(&names);
        write!(f, "{shown}")
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: Self) -> RatFunc {
        if self.den == rhs.den {
            if self.den.is_constant() {
                return RatFunc::from_poly(&self.num + &rhs.num);
            }
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: Self) -> RatFunc {
        if self.den.is_constant() && rhs.den.is_constant() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: Self) -> RatFunc {
        self + &(-rhs)
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: Self) -> RatFunc {
        &self + &rhs
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: Self) -> RatFunc {
        &self - &rhs
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: Self) -> RatFunc {
        &self * &rhs
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero.
    fn div(self, rhs: Self) -> RatFunc {
        self.checked_div(&rhs)
            .expect("division by zero rational function")
    }
}

impl Field for RatFunc {
    /// Zero in the one-variable field; arithmetic with a zero of a different
    /// arity adopts the other operand's variable count.
    fn zero() -> Self {
        RatFunc::from_poly(LaurentPoly::zero(0))
    }
    fn one() -> Self {
        RatFunc::from_poly(LaurentPoly::one(0))
    }
    fn from_i64(n: i64) -> Self {
        RatFunc::constant(0, GaussianRational::from_int(n))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.den.is_constant() && self.num.as_constant().is_some_and(|c| c.is_one())
    }
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(RatFunc::new(self.den.clone(), self.num.clone()))
    }
}
