use std::borrow::Cow;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Signed;

use super::field::Field;
use super::gaussian::GaussianRational;

/// Exponent vector of a Laurent monomial; entries may be negative.
pub type Exponents = Vec<i64>;

/// A Laurent polynomial in `nvars` variables with Gaussian-rational
/// coefficients. Zero coefficients are never stored.
///
/// A polynomial in zero variables is a constant and combines with
/// polynomials of any arity; this is how generic `Field::zero()` and
/// `Field::one()` values enter symbolic computations.
#[derive(Clone)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, GaussianRational>,
}

/// Graded lexicographic order on exponent vectors.
pub(crate) fn grlex(a: &[i64], b: &[i64]) -> Ordering {
    let da: i64 = a.iter().sum();
    let db: i64 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.nvars == other.nvars {
            return self.terms == other.terms;
        }
        match (self.nvars, other.nvars) {
            (0, _) | (_, 0) => {
                self.is_constant()
                    && other.is_constant()
                    && self.as_constant() == other.as_constant()
            }
            _ => false,
        }
    }
}

impl Eq for LaurentPoly {}

/// Brings two operands to a common arity, lifting zero-variable constants.
fn unify<'a>(
    a: &'a LaurentPoly,
    b: &'a LaurentPoly,
) -> (Cow<'a, LaurentPoly>, Cow<'a, LaurentPoly>) {
    match (a.nvars, b.nvars) {
        (x, y) if x == y => (Cow::Borrowed(a), Cow::Borrowed(b)),
        (0, n) => (Cow::Owned(a.lift(n)), Cow::Borrowed(b)),
        (n, 0) => (Cow::Borrowed(a), Cow::Owned(b.lift(n))),
        (x, y) => panic!("variable count mismatch: {x} vs {y}"),
    }
}

impl LaurentPoly {
    /// Reinterprets a zero-variable constant in `n` variables.
    pub(crate) fn lift(&self, n: usize) -> Self {
        assert_eq!(self.nvars, 0, "only constants can be lifted");
        let mut p = Self::zero(n);
        if let Some(c) = self.terms.get(&Vec::new()) {
            p.add_term(vec![0; n], c.clone());
        }
        p
    }

    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: GaussianRational) -> Self {
        Self::monomial(nvars, c, vec![0; nvars])
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, GaussianRational::one())
    }

    /// The variable `t_index`.
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[index] = 1;
        Self::monomial(nvars, GaussianRational::one(), e)
    }

    pub fn monomial(nvars: usize, c: GaussianRational, exps: Exponents) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { nvars, terms }
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs, merging
    /// repeated monomials.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (GaussianRational, Exponents)>,
    {
        let mut p = Self::zero(nvars);
        for (c, e) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Univariate polynomial from integer coefficients, lowest degree first.
    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(
            1,
            coeffs
                .iter()
                .enumerate()
                .map(|(d, &c)| (GaussianRational::from_int(c), vec![d as i64])),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i64]) -> GaussianRational {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, exps: Exponents, c: GaussianRational) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        if self.is_zero() {
            return Some(GaussianRational::zero());
        }
        if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    /// `Some((c, e))` if this is a single nonzero term `c·t^e`.
    pub fn as_monomial(&self) -> Option<(&GaussianRational, &Exponents)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (c, e))
        } else {
            None
        }
    }

    /// Leading term in graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Exponents, &GaussianRational)> {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0))
    }

    /// Componentwise minimum exponent (zero vector for the zero polynomial).
    pub fn min_exponents(&self) -> Exponents {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.nvars];
        };
        let mut m = first.clone();
        for e in it {
            for (mi, &ei) in m.iter_mut().zip(e) {
                *mi = (*mi).min(ei);
            }
        }
        m
    }

    pub fn max_degree_in(&self, var: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn min_degree_in(&self, var: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[var]).min()
    }

    /// True if no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// Multiplies by the monomial `t^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        assert_eq!(shift.len(), self.nvars);
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `t_j ↦ t_j^{-1}` in every variable.
    pub fn invert_variables(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone()))
                .collect(),
        }
    }

    /// Embeds into a ring with `nvars` variables, sending variable `j` to
    /// variable `map[j]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        let mut p = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; nvars];
            for (j, &x) in e.iter().enumerate() {
                ne[map[j]] += x;
            }
            p.add_term(ne, c.clone());
        }
        p
    }

    /// Partial derivative with respect to `var`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] != 0 {
                let mut ne = e.clone();
                ne[var] -= 1;
                p.add_term(ne, c * &GaussianRational::from_int(e[var]));
            }
        }
        p
    }

    /// Floating-point evaluation at a point of (ℂ*)^n.
    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut m = c.to_complex();
            for (x, &k) in point.iter().zip(e) {
                m *= x.powi(k as i32);
            }
            acc += m;
        }
        acc
    }

    /// Exact evaluation; `None` when a negative power of zero is needed.
    pub fn eval_exact(&self, point: &[GaussianRational]) -> Option<GaussianRational> {
        assert_eq!(point.len(), self.nvars);
        let mut acc = GaussianRational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (x, &k) in point.iter().zip(e) {
                m = m * x.pow(k)?;
            }
            acc = acc + m;
        }
        Some(acc)
    }

    pub fn display_with<'a>(&'a self, names: &'a VarNames) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, names }
    }
}

/// Names used when printing polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarNames(pub Vec<String>);

impl VarNames {
    /// `z` for one variable, `z, w` for two, `t1, t2, ...` beyond.
    pub fn default_for(nvars: usize) -> Self {
        let names: Vec<String> = match nvars {
            1 => vec!["z".into()],
            2 => vec!["z".into(), "w".into()],
            n => (1..=n).map(|i| format!("t{i}")).collect(),
        };
        Self(names)
    }

    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Self(names.into_iter().map(Into::into).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

struct PolyDisplay<'a> {
    poly: &'a LaurentPoly,
    names: &'a VarNames,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.poly.terms.iter().collect();
        terms.sort_by(|a, b| grlex(a.0, b.0));
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let negative = c.is_real() && c.re.is_negative();
            let abs = if negative { -c.clone() } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(j, &x)| {
                    let name = self
                        .names
                        .0
                        .get(j)
                        .cloned()
                        .unwrap_or_else(|| format!("t{}", j + 1));
                    if x == 1 {
                        name
                    } else if x < 0 {
                        format!("{name}^({x})")
                    } else {
                        format!("{name}^{x}")
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = VarNames::default_for(self.nvars);
        let shown = self.display_with(&names);
        write!(f, "{shown}")
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: Self) -> LaurentPoly {
        let (a, b) = unify(self, rhs);
        let (a, b) = (a.as_ref(), b.as_ref());
        let (big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = big.clone();
        for (e, c) in &small.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: Self) -> LaurentPoly {
        let (a, b) = unify(self, rhs);
        let mut out = a.into_owned();
        for (e, c) in &b.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: Self) -> LaurentPoly {
        let (a, b) = unify(self, rhs);
        let mut out = LaurentPoly::zero(a.nvars);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: Self) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: Self) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: Self) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> LaurentPoly {
        LaurentPoly::var(1, 0)
    }

    #[test]
    fn arithmetic_cancels_terms() {
        let one = LaurentPoly::one(1);
        let p = &z() - &one;
        let q = &p + &one;
        assert_eq!(q, z());
        assert_eq!((&p - &p).len(), 0);
    }

    #[test]
    fn product_of_laurent_monomials() {
        let zi = z().invert_variables();
        assert_eq!(&z() * &zi, LaurentPoly::one(1));
    }

    #[test]
    fn derivative_and_eval() {
        let p = LaurentPoly::from_int_coeffs(&[1, -3, 1]);
        assert_eq!(p.derivative(0), LaurentPoly::from_int_coeffs(&[-3, 2]));
        let v = p.eval(&[Complex64::new(2.0, 0.0)]);
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn display_ascending() {
        let p = LaurentPoly::from_int_coeffs(&[1, -3, 1]);
        assert_eq!(p.to_string(), "1 - 3*z + z^2");
        let q = &z().invert_variables() - &LaurentPoly::one(1);
        assert_eq!(q.to_string(), "z^(-1) - 1");
    }
}
