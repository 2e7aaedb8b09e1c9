use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{Field, GaussianRational, Matrix, RatFunc};
use crate::error::{Error, Result};
use crate::twisted::{
    fox_derivative, GroupRingComplex, GroupRingElt, GroupRingMatrix, Presentation, Word,
};
use crate::variety::Shape;

/// A cellular self-map of a group-ring complex over `Γ₀`, lifted along the
/// monodromy `α: Γ₀ → Γ₀`.
///
/// `maps[q]` is the `k_q × k_q` matrix of `φ#` in degree `q`; `monodromy[g]`
/// is the word `α(g)`. Compatibility with the differentials is not assumed:
/// it is checked as `D² = 0` whenever the mapping torus is evaluated.
#[derive(Clone, Debug)]
pub struct ChainMapData {
    base: GroupRingComplex,
    maps: Vec<GroupRingMatrix>,
    monodromy: Vec<Word>,
}

impl ChainMapData {
    pub fn new(
        base: GroupRingComplex,
        maps: Vec<GroupRingMatrix>,
        monodromy: Vec<Word>,
    ) -> Result<Self> {
        let k = &base.shape().0;
        if maps.len() != k.len() {
            return Err(Error::Dimension(format!(
                "{} chain maps for a shape of length {}",
                maps.len(),
                k.len()
            )));
        }
        for (q, (m, &kq)) in maps.iter().zip(k).enumerate() {
            if m.rows() != kq || m.cols() != kq {
                return Err(Error::Dimension(format!(
                    "phi_{q} is {}x{}, expected {kq}x{kq}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.max_generator() > base.generators() {
                return Err(Error::Dimension(format!(
                    "phi_{q} uses a generator beyond {}",
                    base.generators()
                )));
            }
        }
        if monodromy.len() != base.generators() {
            return Err(Error::Dimension(format!(
                "monodromy has {} images for {} generators",
                monodromy.len(),
                base.generators()
            )));
        }
        if monodromy
            .iter()
            .any(|w| w.max_generator() > base.generators())
        {
            return Err(Error::Dimension(
                "monodromy image uses an undefined generator".into(),
            ));
        }
        Ok(Self {
            base,
            maps,
            monodromy,
        })
    }

    /// The identity self-map.
    pub fn identity(base: GroupRingComplex) -> Self {
        let maps = base
            .shape()
            .0
            .iter()
            .map(|&k| {
                GroupRingMatrix::from_fn(k, k, |i, j| {
                    if i == j {
                        GroupRingElt::one()
                    } else {
                        GroupRingElt::zero()
                    }
                })
            })
            .collect();
        let monodromy = (1..=base.generators() as i32)
            .map(Word::generator)
            .collect();
        Self {
            base,
            maps,
            monodromy,
        }
    }

    pub fn base(&self) -> &GroupRingComplex {
        &self.base
    }

    pub fn maps(&self) -> &[GroupRingMatrix] {
        &self.maps
    }

    pub fn monodromy(&self) -> &[Word] {
        &self.monodromy
    }

    /// The index of the new generator `s` in the mapping torus group.
    pub fn suspension_generator(&self) -> usize {
        self.base.generators() + 1
    }
}

/// The one-point complex: shape `(1)`, no generators.
pub fn point_complex() -> GroupRingComplex {
    GroupRingComplex::new(0, vec![], Shape(vec![1]), vec![]).expect("point complex")
}

fn word_power(g: i32, n: i64) -> impl Iterator<Item = i32> {
    std::iter::repeat_n(if n < 0 { -g } else { g }, n.unsigned_abs() as usize)
}

/// `α ∘ β` for endomorphisms of the free group given by generator images.
fn compose(alpha: &[Word; 2], beta: &[Word; 2]) -> Result<[Word; 2]> {
    let apply = |w: &Word| {
        let mut out = Word::identity();
        for &l in w.letters() {
            let image = &alpha[l.unsigned_abs() as usize - 1];
            out = out.concat(&if l > 0 {
                image.clone()
            } else {
                image.inverse()
            });
        }
        out
    };
    Ok([apply(&beta[0]), apply(&beta[1])])
}

/// An automorphism of `F(a, b)` inducing `A ∈ GL₂(ℤ)` on the
/// abelianization, with column `j` the exponents of `α(g_j)`.
///
/// Euclid's algorithm on the first column writes `A` as a product of
/// elementary Nielsen moves and a diagonal sign matrix. A naive lift such as
/// `a ↦ a³b², b ↦ ab` need not be an automorphism.
fn automorphism_lift(a: [[i64; 2]; 2]) -> Result<[Word; 2]> {
    let mut m = a.map(|row| row.map(i128::from));
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det.abs() != 1 {
        return Err(Error::InvalidRepresentation(format!(
            "{a:?} is not invertible over the integers"
        )));
    }
    let power = |g: i32, n: i128| Word::new(word_power(g, n as i64));
    let swap = [Word::generator(2), Word::generator(1)];
    let mut moves = Vec::new();
    while m[1][0] != 0 {
        if m[0][0] == 0 || m[0][0].abs() > m[1][0].abs() {
            m.swap(0, 1);
            moves.push(swap.clone());
        }
        let q = m[1][0] / m[0][0];
        m[1] = [m[1][0] - q * m[0][0], m[1][1] - q * m[0][1]];
        // Undoing row1 -= q·row0 is a ↦ a b^q.
        moves.push([Word::generator(1).concat(&power(2, q)?), Word::generator(2)]);
    }
    let q = m[0][1] * m[1][1];
    // Undoing row0 -= q·row1 is b ↦ a^q b.
    let mut lift = [power(1, m[0][0])?, power(2, m[1][1])?];
    let clear = [Word::generator(1), power(1, q)?.concat(&Word::generator(2))];
    lift = compose(&clear, &lift)?;
    for mv in moves.iter().rev() {
        lift = compose(mv, &lift)?;
    }
    Ok(lift)
}

/// The self-map of the presentation complex of `⟨a, b | aba⁻¹b⁻¹⟩` induced
/// by an automorphism `α` of the free group lifting `A ∈ GL₂(ℤ)`.
///
/// Degree 1 is the Fox Jacobian of `α`. In degree 2, `α(r)` is written as a
/// conjugate `w r^{±1} w⁻¹`, which gives `φ₂ = ±w`.
pub fn torus_chain_map(a: [[i64; 2]; 2]) -> Result<ChainMapData> {
    let r = Word::new([1, 2, -1, -2])?;
    let base = crate::twisted::presentation_complex(&Presentation::new(2, vec![r.clone()])?);
    let images = automorphism_lift(a)?;
    let phi0 = GroupRingMatrix::from_fn(1, 1, |_, _| GroupRingElt::one());
    // Cochain degree 1 is indexed by generators; row i carries ∂α(g_i)/∂g_j.
    let phi1 = GroupRingMatrix::from_fn(2, 2, |i, j| fox_derivative(&images[i], j + 1));
    let image_r = images[0]
        .concat(&images[1])
        .concat(&images[0].inverse())
        .concat(&images[1].inverse());
    let (w, sign) = conjugator(&image_r, &r).ok_or_else(|| {
        Error::InvalidRepresentation(format!(
            "alpha(r) = {image_r} is not a conjugate of r^(+-1) in the free group"
        ))
    })?;
    let phi2 = GroupRingMatrix::from_fn(1, 1, |_, _| {
        GroupRingElt::term(BigRational::from_integer(BigInt::from(sign)), w.clone())
    });
    ChainMapData::new(base, vec![phi0, phi1, phi2], images.to_vec())
}

/// Finds `w` and `±1` with `x = w r^{±1} w⁻¹` in the free group.
fn conjugator(x: &Word, r: &Word) -> Option<(Word, i64)> {
    let letters = x.letters();
    let mut lo = 0;
    let mut hi = letters.len();
    while hi - lo >= 2 && letters[lo] == -letters[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    let prefix = Word::new(letters[..lo].iter().copied()).ok()?;
    let core = &letters[lo..hi];
    for (target, sign) in [(r.clone(), 1), (r.inverse(), -1)] {
        let t = target.letters();
        if t.len() != core.len() {
            continue;
        }
        for shift in 0..t.len().max(1) {
            // core = t[shift..] t[..shift] = v⁻¹ t v with v = t[..shift].
            if core.iter().eq(t[shift..].iter().chain(&t[..shift])) {
                let v = Word::new(t[..shift].iter().copied()).ok()?;
                return Some((prefix.concat(&v.inverse()), sign));
            }
        }
    }
    None
}

/// The algebraic mapping torus over `Γ = Γ₀ ⋊_α ℤ`.
///
/// Degree `q` is `C^{q−1} ⊕ C^q` and the differential is
/// `[[−d^{q−1}, s·φ_q − id], [0, d^q]]`, so that the point with `φ = id`
/// gives the circle complex `(s − 1)`. Generator `s` is appended after the
/// base generators, with relators `s⁻¹ g s α(g)⁻¹`.
pub fn mapping_torus_complex(d: &ChainMapData) -> Result<GroupRingComplex> {
    let k = &d.base.shape().0;
    let n = k.len();
    let s = d.suspension_generator() as i32;
    let s_word = Word::generator(s);
    let kk = |q: isize| {
        if q < 0 || q as usize >= n {
            0
        } else {
            k[q as usize]
        }
    };
    let shape: Vec<usize> = (0..=n as isize).map(|q| kk(q - 1) + kk(q)).collect();
    let mut diffs = Vec::with_capacity(n);
    for q in 0..n as isize {
        let (rows, cols) = (shape[q as usize + 1], shape[q as usize]);
        let (prev, cur, next) = (kk(q - 1), kk(q), kk(q + 1));
        let mut m = GroupRingMatrix::zeros(rows, cols);
        if q >= 1 {
            let dq1 = &d.base.diffs()[q as usize - 1];
            for i in 0..cur {
                for j in 0..prev {
                    m.set(i, j, -dq1.get(i, j).clone());
                }
            }
        }
        let phi = &d.maps[q as usize];
        for i in 0..cur {
            for j in 0..cur {
                let mut e = phi.get(i, j).map_words(|w| s_word.concat(w));
                if i == j {
                    e = e - GroupRingElt::one();
                }
                m.set(i, prev + j, e);
            }
        }
        if (q as usize) < n - 1 {
            let dq = &d.base.diffs()[q as usize];
            for i in 0..next {
                for j in 0..cur {
                    m.set(cur + i, prev + j, dq.get(i, j).clone());
                }
            }
        }
        diffs.push(m);
    }
    let mut relators = d.base.relators().to_vec();
    for (g, image) in d.monodromy.iter().enumerate() {
        let g = g as i32 + 1;
        let rel = Word::new([-s, g, s])?.concat(&image.inverse());
        if !rel.is_identity() {
            relators.push(rel);
        }
    }
    GroupRingComplex::new(d.suspension_generator(), relators, Shape(shape), diffs)
}

/// The action `f^k` of a self-map on the cohomology groups `H^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct CohomologyAction<F: Field> {
    maps: Vec<Matrix<F>>,
}

impl<F: Field> CohomologyAction<F> {
    pub fn new(maps: Vec<Matrix<F>>) -> Result<Self> {
        if let Some(m) = maps.iter().find(|m| !m.is_square()) {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        Ok(Self { maps })
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> CohomologyAction<G> {
        CohomologyAction {
            maps: self.maps.iter().map(|m| m.map(&f)).collect(),
        }
    }

    /// `det(I − z f^k)` for each degree.
    pub fn factors(&self, z: &F) -> Vec<F> {
        self.maps
            .iter()
            .map(|f| {
                let n = f.rows();
                Matrix::identity(n)
                    .sub(&f.scale(z))
                    .expect("square")
                    .det()
                    .expect("square")
            })
            .collect()
    }
}

/// The action of a toral automorphism `A` on `H^*(T²)`: `(1), A, (det A)`.
pub fn torus_action(a: [[i64; 2]; 2]) -> CohomologyAction<GaussianRational> {
    let q = |x: i64| GaussianRational::from_int(x);
    let f1 = Matrix::from_fn(2, 2, |i, j| q(a[i][j]));
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    CohomologyAction {
        maps: vec![
            Matrix::identity(1),
            f1,
            Matrix::from_fn(1, 1, |_, _| q(det)),
        ],
    }
}

/// The cat map `[[2, 1], [1, 1]]`.
pub const CAT_MAP: [[i64; 2]; 2] = [[2, 1], [1, 1]];

/// `ζ_f(z) = ∏_{k even} det(I − z f^k) / ∏_{k odd} det(I − z f^k)`.
pub fn lefschetz_zeta<F: Field>(act: &CohomologyAction<F>, z: &F) -> Result<F> {
    let mut num = F::one();
    let mut den = F::one();
    for (k, f) in act.factors(z).into_iter().enumerate() {
        if k % 2 == 0 {
            num = num * f;
        } else {
            den = den * f;
        }
    }
    let inv = if den.magnitude().is_some_and(|m| m < 1e-300) {
        None
    } else {
        den.inv()
    };
    inv.map(|d| num * d)
        .ok_or_else(|| Error::SingularSample(format!("{z:?} is a pole of the zeta function")))
}

/// The zeta function as a rational function of one variable.
pub fn lefschetz_zeta_symbolic(act: &CohomologyAction<GaussianRational>) -> RatFunc {
    let lifted = act.map(|x| RatFunc::constant(1, x.clone()));
    lefschetz_zeta(&lifted, &RatFunc::var(1, 0)).expect("det(I - z f) is a nonzero polynomial")
}

/// The Wang criterion: the mapping torus is acyclic iff `det(I − f^k) ≠ 0`
/// in every degree.
pub fn wang_acyclic<F: Field>(act: &CohomologyAction<F>) -> bool {
    act.maps
        .iter()
        .all(|f| Matrix::identity(f.rows()).sub(f).expect("square").rank() == f.rows())
}
