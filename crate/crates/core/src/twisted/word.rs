use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A freely reduced word in the generators `1..=n` and their inverses
/// (negative indices).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<i32>);

impl Word {
    /// Freely reduces `letters`. Zero is not a valid letter.
    pub fn new(letters: impl IntoIterator<Item = i32>) -> Result<Self> {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            if l == 0 {
                return Err(Error::Format("generator index 0 in a word".into()));
            }
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Ok(Word(out))
    }

    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: i32) -> Self {
        Word(vec![g])
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut out = self.0.clone();
        for &l in &other.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Largest generator index used.
    pub fn max_generator(&self) -> usize {
        self.0
            .iter()
            .map(|l| l.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Exponent sum of each generator, i.e. the image in `ℤ^n`.
    pub fn abelianize(&self, generators: usize) -> Vec<i64> {
        let mut v = vec![0; generators];
        for &l in &self.0 {
            v[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        v
    }
}

pub(crate) fn generator_name(g: usize) -> String {
    if (1..=26).contains(&g) {
        ((b'a' + (g - 1) as u8) as char).to_string()
    } else {
        format!("g{g}")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for &l in &self.0 {
            write!(f, "{}", generator_name(l.unsigned_abs() as usize))?;
            if l < 0 {
                write!(f, "⁻¹")?;
            }
        }
        Ok(())
    }
}

/// An element `Σ n_w · w` of the rational group ring of a free group.
///
/// Words are only freely reduced; relators are never applied.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GroupRingElt {
    terms: BTreeMap<Word, BigRational>,
}

impl GroupRingElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::identity())
    }

    pub fn from_word(w: Word) -> Self {
        Self::term(BigRational::one(), w)
    }

    pub fn term(c: BigRational, w: Word) -> Self {
        let mut e = Self::zero();
        e.add_term(c, w);
        e
    }

    /// `g − 1` for a signed generator index.
    pub fn generator_minus_one(g: i32) -> Self {
        Self::from_word(Word::generator(g)) - Self::one()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BigRational, Word)>) -> Self {
        let mut e = Self::zero();
        for (c, w) in terms {
            e.add_term(c, w);
        }
        e
    }

    pub fn add_term(&mut self, c: BigRational, w: Word) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(w.clone())
            .or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_generator(&self) -> usize {
        self.terms
            .keys()
            .map(Word::max_generator)
            .max()
            .unwrap_or(0)
    }

    /// Applies a map on words (a free-group homomorphism, say) linearly.
    pub fn map_words(&self, f: impl Fn(&Word) -> Word) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (c.clone(), f(w))))
    }
}

impl fmt::Display for GroupRingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let neg = c < &BigRational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if w.is_identity() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}

impl Add for GroupRingElt {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (w, c) in rhs.terms {
            self.add_term(c, w);
        }
        self
    }
}

impl Neg for GroupRingElt {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect(),
        }
    }
}

impl Sub for GroupRingElt {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for &GroupRingElt {
    type Output = GroupRingElt;
    fn mul(self, rhs: &GroupRingElt) -> GroupRingElt {
        let mut out = GroupRingElt::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(a * b, u.concat(v));
            }
        }
        out
    }
}

impl Mul for GroupRingElt {
    type Output = GroupRingElt;
    fn mul(self, rhs: GroupRingElt) -> GroupRingElt {
        &self * &rhs
    }
}

/// Left Fox derivative `∂w/∂g`: `∂(uv) = ∂u + u·∂v`, `∂g = 1`,
/// `∂g⁻¹ = −g⁻¹`.
pub fn fox_derivative(w: &Word, gen: usize) -> GroupRingElt {
    let g = gen as i32;
    let mut out = GroupRingElt::zero();
    let mut prefix = Word::identity();
    for &l in w.letters() {
        if l == g {
            out.add_term(BigRational::one(), prefix.clone());
        } else if l == -g {
            out.add_term(-BigRational::one(), prefix.concat(&Word::generator(l)));
        }
        prefix = prefix.concat(&Word::generator(l));
    }
    out
}
