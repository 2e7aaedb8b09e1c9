use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::Field;
use crate::error::{Error, Result};

/// An element `re + im·i` of the Gaussian rationals ℚ(i).
///
/// Both parts are kept in lowest terms with positive denominators by
/// `BigRational`, so derived equality is exact equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn from_parts(re: (i64, i64), im: (i64, i64)) -> Self {
        Self::new(
            BigRational::new(re.0.into(), re.1.into()),
            BigRational::new(im.0.into(), im.1.into()),
        )
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    /// `e^{2πi p/q}` when it lies in ℚ(i), i.e. when its order divides 4.
    pub fn root_of_unity(p: i64, q: i64) -> Result<Self> {
        if q <= 0 {
            return Err(Error::Format(format!(
                "root of unity denominator {q} must be positive"
            )));
        }
        let quarter_turns = (4 * p).rem_euclid(4 * q);
        if quarter_turns % q != 0 {
            return Err(Error::Format(format!(
                "e^(2πi·{p}/{q}) is not a Gaussian rational"
            )));
        }
        Ok(match quarter_turns / q {
            0 => Self::from_int(1),
            1 => Self::i(),
            2 => Self::from_int(-1),
            _ => -Self::i(),
        })
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// A unit of ℚ(i) of finite order: one of ±1, ±i.
    pub fn is_root_of_unity(&self) -> bool {
        let one = BigRational::one();
        (self.im.is_zero() && self.re.abs() == one) || (self.re.is_zero() && self.im.abs() == one)
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write_rational(f, &self.re),
            (true, false) => {
                write_rational(f, &self.im)?;
                write!(f, "i")
            }
            (false, false) => {
                write!(f, "(")?;
                write_rational(f, &self.re)?;
                if self.im.is_negative() {
                    write!(f, " - ")?;
                    write_rational(f, &-self.im.clone())?;
                } else {
                    write!(f, " + ")?;
                    write_rational(f, &self.im)?;
                }
                write!(f, "i)")
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses an exact rational: an integer, `p/q`, or a finite decimal such
/// as `-0.125` (converted exactly).
pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational number '{s}'"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    if frac_part.len() > 1000 {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer =
        BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let q = BigRational::new(numer, denom);
    Ok(if neg { -q } else { q })
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Accepts `a`, `a,b` (real and imaginary parts) with each part an
    /// exact rational literal.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(',') {
            Some((re, im)) => Ok(Self::new(parse_rational(re)?, parse_rational(im)?)),
            None => Ok(Self::new(parse_rational(s)?, BigRational::zero())),
        }
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::new(&self.re * &rhs.re, BigRational::zero());
        }
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Div for GaussianRational {
    type Output = Self;
    /// Panics on division by zero.
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero")
    }
}

impl Field for GaussianRational {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::from_int(1)
    }
    fn from_i64(n: i64) -> Self {
        Self::from_int(n)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Self::new(self.re.recip(), BigRational::zero()));
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_gaussian() {
        let z = GaussianRational::from_parts((1, 1), (2, 1));
        let w = z.inv().unwrap();
        assert_eq!(z * w, GaussianRational::one());
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(
            GaussianRational::root_of_unity(1, 4).unwrap(),
            GaussianRational::i()
        );
        assert_eq!(
            GaussianRational::root_of_unity(1, 2).unwrap(),
            GaussianRational::from_int(-1)
        );
        assert_eq!(
            GaussianRational::root_of_unity(-1, 4).unwrap(),
            -GaussianRational::i()
        );
        assert_eq!(
            GaussianRational::root_of_unity(3, 1).unwrap(),
            GaussianRational::one()
        );
        assert!(GaussianRational::root_of_unity(1, 3).is_err());
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(
            parse_rational("0.1").unwrap(),
            BigRational::new(1.into(), 10.into())
        );
        assert_eq!(
            parse_rational("-3/6").unwrap(),
            BigRational::new((-1).into(), 2.into())
        );
        assert_eq!(
            parse_rational("7").unwrap(),
            BigRational::from_integer(7.into())
        );
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
        let z: GaussianRational = "1/2,-1".parse().unwrap();
        assert_eq!(z, GaussianRational::from_parts((1, 2), (-1, 1)));
    }

    #[test]
    fn display() {
        assert_eq!(GaussianRational::from_ratio(-3, 4).to_string(), "-3/4");
        assert_eq!(
            GaussianRational::from_parts((1, 1), (-1, 2)).to_string(),
            "(1 - 1/2i)"
        );
        assert_eq!(GaussianRational::i().to_string(), "1i");
    }
}
