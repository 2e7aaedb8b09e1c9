use num_complex::Complex64;

use crate::algebra::numeric::frobenius;
use crate::algebra::{det_numeric, Matrix};
use crate::error::{Error, Result};
use crate::twisted::{evaluate_numeric, GroupRingComplex, NumericRep, OrientationSign, Word};
use crate::variety::milnor_torsion;

/// One aggregated entry of closed-orbit data: `count` closed trajectories
/// sharing class, period, sign, parities and filtration.
///
/// `parity_minus` is the parity of the number of real eigenvalues of the
/// return map below −1, `parity_plus` of those above +1.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedOrbit {
    pub word: Word,
    pub period: u32,
    pub sign: i8,
    pub parity_minus: bool,
    pub parity_plus: bool,
    pub filtration: f64,
    pub count: u64,
}

impl ClosedOrbit {
    pub fn new(
        word: Word,
        period: u32,
        sign: i8,
        parity_minus: bool,
        parity_plus: bool,
        filtration: f64,
    ) -> Result<Self> {
        let o = Self {
            word,
            period,
            sign,
            parity_minus,
            parity_plus,
            filtration,
            count: 1,
        };
        o.validate()?;
        Ok(o)
    }

    pub fn with_count(mut self, count: u64) -> Result<Self> {
        self.count = count;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.period == 0 {
            return Err(Error::Format(format!(
                "orbit {}: period must be at least 1",
                self.word
            )));
        }
        if self.sign != 1 && self.sign != -1 {
            return Err(Error::Format(format!(
                "orbit {}: sign must be +1 or -1",
                self.word
            )));
        }
        if !(self.filtration.is_finite() && self.filtration > 0.0) {
            return Err(Error::Format(format!(
                "orbit {}: filtration must be positive",
                self.word
            )));
        }
        if self.count == 0 {
            return Err(Error::Format(format!(
                "orbit {}: count must be positive",
                self.word
            )));
        }
        Ok(())
    }

    /// `ε/p · tr(ρ(θ)^{-1})`, times the multiplicity.
    fn series_term(&self, rho: &NumericRep) -> Complex64 {
        let tr: Complex64 = {
            let m = rho.word_inverse(&self.word);
            (0..m.rows()).map(|i| *m.get(i, i)).sum()
        };
        tr * (self.count as f64 * self.sign as f64 / self.period as f64)
    }
}

/// Closed-orbit data sorted by filtration.
///
/// A suspension of a hyperbolic toral automorphism records its matrix, which
/// makes truncation tail bounds available.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct OrbitSeries {
    orbits: Vec<ClosedOrbit>,
    suspension: Option<[[i64; 2]; 2]>,
}

impl OrbitSeries {
    /// Validates each orbit and sorts by filtration.
    pub fn new(mut orbits: Vec<ClosedOrbit>) -> Result<Self> {
        for o in &orbits {
            o.validate()?;
        }
        orbits.sort_by(|a, b| a.filtration.total_cmp(&b.filtration));
        Ok(Self {
            orbits,
            suspension: None,
        })
    }

    pub fn with_suspension(mut self, a: [[i64; 2]; 2]) -> Result<Self> {
        hyperbolic_eigenvalues(a)?;
        self.suspension = Some(a);
        Ok(self)
    }

    pub fn orbits(&self) -> &[ClosedOrbit] {
        &self.orbits
    }

    pub fn suspension(&self) -> Option<[[i64; 2]; 2]> {
        self.suspension
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    fn below(&self, bound: f64) -> impl Iterator<Item = &ClosedOrbit> {
        self.orbits
            .iter()
            .take_while(move |o| o.filtration <= bound)
    }

    /// Largest filtration present, or 0 for an empty series.
    pub fn max_filtration(&self) -> f64 {
        self.orbits.last().map_or(0.0, |o| o.filtration)
    }

    /// Bound on `|P_X − P_{X;R}|` for a suspension series, where `R` is the
    /// smaller of `bound` and the recorded maximum period.
    ///
    /// With `λ` the expanding eigenvalue, `|det(I − Aⁿ)| ≤ 4|λ|ⁿ` and
    /// `|tr ρ(s)ⁿ| ≤ dim V · ‖ρ(s)‖ⁿ`, so the tail is dominated by a
    /// geometric series in `r = |λ|·‖ρ(s)‖`. An empty series without
    /// suspension data describes a flow with no closed orbits, with tail 0.
    /// `None` for other series without suspension data; infinity when
    /// `r ≥ 1`.
    pub fn tail_bound(&self, rho: &NumericRep, bound: f64) -> Option<f64> {
        if self.suspension.is_none() && self.is_empty() {
            return Some(0.0);
        }
        let a = self.suspension?;
        let (lambda, _) = hyperbolic_eigenvalues(a).ok()?;
        let s = rho.matrices().get(SUSPENSION_GENERATOR - 1)?;
        let n = bound.min(self.max_filtration()).floor().max(0.0);
        let r = lambda.abs() * frobenius(s);
        if r >= 1.0 {
            return Some(f64::INFINITY);
        }
        Some(4.0 * rho.dim() as f64 * r.powf(n + 1.0) / ((n + 1.0) * (1.0 - r)))
    }
}

/// Index of the suspension generator `s` in the mapping-torus group of the
/// two-torus, after `a` and `b`.
pub const SUSPENSION_GENERATOR: usize = 3;

fn hyperbolic_eigenvalues(a: [[i64; 2]; 2]) -> Result<(f64, f64)> {
    let tr = a[0][0] + a[1][1];
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    let hyperbolic = match det {
        1 => tr.abs() > 2,
        -1 => tr != 0,
        _ => {
            return Err(Error::InvalidRepresentation(format!(
                "det = {det}: not a toral automorphism"
            )))
        }
    };
    if !hyperbolic {
        return Err(Error::NotNct(tr.abs()));
    }
    let (tr, det) = (tr as f64, det as f64);
    let disc = (tr * tr - 4.0 * det).sqrt();
    let big = if tr >= 0.0 {
        (tr + disc) / 2.0
    } else {
        (tr - disc) / 2.0
    };
    Ok((big, det / big))
}

fn mat_mul(x: [[i128; 2]; 2], y: [[i128; 2]; 2]) -> Option<[[i128; 2]; 2]> {
    let mut out = [[0i128; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = x[i][0]
                .checked_mul(y[0][j])?
                .checked_add(x[i][1].checked_mul(y[1][j])?)?;
        }
    }
    Some(out)
}

/// Lefschetz numbers `L_n = det(I − Aⁿ)` for `n = 1..=max`.
pub fn lefschetz_numbers(a: [[i64; 2]; 2], max: u32) -> Result<Vec<i128>> {
    let a = a.map(|r| r.map(i128::from));
    let mut p = [[1, 0], [0, 1]];
    let mut out = Vec::with_capacity(max as usize);
    for n in 1..=max {
        p = mat_mul(p, a).ok_or_else(|| Error::Dimension(format!("A^{n} overflows")))?;
        let l = (1 - p[0][0]) * (1 - p[1][1]) - p[0][1] * p[1][0];
        out.push(l);
    }
    Ok(out)
}

fn mobius(mut n: u32) -> i128 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Closed orbits of the suspension flow of a hyperbolic toral automorphism,
/// for total periods `m ≤ max_period`.
///
/// The fixed points of `φᵐ` number `|det(I − Aᵐ)|` and all have sign
/// `ε = sign det(I − Aᵐ)`. A periodic orbit of least period `n` contributes,
/// for `m = kn`, a closed trajectory of multiplicity `p = k` in class `s^{-m}`
/// with filtration `m`; orbits of equal `(n, k)` are aggregated into one
/// entry whose count is the number of primitive orbits
/// `(1/n) Σ_{d | n} μ(n/d) |det(I − A^d)|`. Classes record only their image
/// in the base circle, which is exact for representations trivial on the
/// fiber group.
pub fn suspension_orbits(a: [[i64; 2]; 2], max_period: u32) -> Result<OrbitSeries> {
    let (lambda, _) = hyperbolic_eigenvalues(a)?;
    let l = lefschetz_numbers(a, max_period)?;
    let primitive: Vec<i128> = (1..=max_period)
        .map(|n| {
            let sum: i128 = (1..=n)
                .filter(|d| n % d == 0)
                .map(|d| mobius(n / d) * l[d as usize - 1].abs())
                .sum();
            debug_assert_eq!(sum % n as i128, 0);
            sum / n as i128
        })
        .collect();
    let s = SUSPENSION_GENERATOR as i32;
    let mut orbits = Vec::new();
    for m in 1..=max_period {
        let lm = l[m as usize - 1];
        let sign = if lm < 0 { -1 } else { 1 };
        let expanding_positive = lambda > 0.0 || m % 2 == 0;
        for n in (1..=m).filter(|n| m % n == 0) {
            let count = primitive[n as usize - 1];
            if count == 0 {
                continue;
            }
            let count = u64::try_from(count)
                .map_err(|_| Error::Dimension(format!("orbit count overflows at period {m}")))?;
            let word = Word::new(std::iter::repeat_n(-s, m as usize))?;
            orbits.push(
                ClosedOrbit::new(
                    word,
                    m / n,
                    sign,
                    !expanding_positive,
                    expanding_positive,
                    m as f64,
                )?
                .with_count(count)?,
            );
        }
    }
    OrbitSeries::new(orbits)?.with_suspension(a)
}

/// `Σ_{m | n}` of signed fixed-point contributions `count · ε · (m/p)` over
/// entries with filtration `n`: the Lefschetz number of `φⁿ` for a
/// suspension series.
pub fn aggregate_lefschetz(orbits: &OrbitSeries, n: u32) -> i128 {
    orbits
        .orbits()
        .iter()
        .filter(|o| o.filtration == n as f64)
        .map(|o| o.count as i128 * o.sign as i128 * (n / o.period) as i128)
        .sum()
}

/// `P_{X;R}(ρ) = Σ_{filtration ≤ R} (ε/p) tr(ρ(θ)^{-1})`.
pub fn p_series_truncated(orbits: &OrbitSeries, rho: &NumericRep, bound: f64) -> Complex64 {
    orbits.below(bound).map(|o| o.series_term(rho)).sum()
}

/// `det(id − (−1)^{ε₋} ρ(α)^{-1})^{(−1)^{ε₋+ε₊}}`, raised to the orbit's
/// multiplicity.
pub fn llet_factor(orbit: &ClosedOrbit, rho: &NumericRep) -> Result<Complex64> {
    let (log, _) = llet_log(orbit, rho)?;
    Ok(log.exp())
}

/// Principal log of the llet factor and the factor's base determinant.
fn llet_log(orbit: &ClosedOrbit, rho: &NumericRep) -> Result<(Complex64, Complex64)> {
    let inv = rho.word_inverse(&orbit.word);
    let flip = if orbit.parity_minus { -1.0 } else { 1.0 };
    let m = Matrix::identity(rho.dim()).sub(&inv.scale(&Complex64::new(flip, 0.0)))?;
    let det = det_numeric(&m)?;
    let scale = 1.0 + frobenius(&inv).powi(rho.dim() as i32);
    if det.norm() <= 1e-12 * scale {
        return Err(Error::ZeroFactor(orbit.word.to_string()));
    }
    let exponent = if orbit.parity_minus != orbit.parity_plus {
        -1.0
    } else {
        1.0
    };
    Ok((det.ln() * (exponent * orbit.count as f64), det))
}

/// `Σ log llet` over simple orbits with filtration `≤ bound`: a branch of
/// `log ζ_R` that stays accurate when the product itself would overflow.
pub fn log_zeta_r(orbits: &OrbitSeries, rho: &NumericRep, bound: f64) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for o in orbits.below(bound).filter(|o| o.period == 1) {
        acc += llet_log(o, rho)?.0;
    }
    Ok(acc)
}

/// `ζ_R = ∏ llet` over simple orbits with filtration `≤ bound`.
pub fn zeta_r(orbits: &OrbitSeries, rho: &NumericRep, bound: f64) -> Result<Complex64> {
    Ok(log_zeta_r(orbits, rho, bound)?.exp())
}

/// Truncated dynamical torsion with its ingredients.
#[derive(Clone, Debug, PartialEq)]
pub struct DynamicalTorsion {
    pub value: Complex64,
    /// Torsion of the rest-point complex (1 without rest points).
    pub rest_torsion: Complex64,
    /// `P_{X;R}(ρ)`.
    pub series: Complex64,
    /// Bound on `|P_X − P_{X;R}|`, when the series carries growth data.
    pub series_tail: Option<f64>,
    /// The induced bound `|value|·(e^{tail} − 1)` on the change of `value`.
    pub value_tail: Option<f64>,
}

/// `T_{X;R} = τ(rest-point complex) · exp(P_{X;R})`.
///
/// `None` for `rest` means the flow has no rest points, and the first
/// factor is 1. `o` is the rest-point orientation flag, entering as
/// `o^{dim V}`.
pub fn dynamical_torsion_truncated(
    rest: Option<&GroupRingComplex>,
    orbits: &OrbitSeries,
    rho: &NumericRep,
    bound: f64,
    o: OrientationSign,
) -> Result<DynamicalTorsion> {
    if !(bound >= 0.0) {
        return Err(Error::Parse(format!(
            "bound must be non-negative, got {bound}"
        )));
    }
    let rest_torsion = match rest {
        Some(c) => milnor_torsion(&evaluate_numeric(c, rho)?)? * o.power(rho.dim()) as f64,
        None => Complex64::new(1.0, 0.0),
    };
    let series = p_series_truncated(orbits, rho, bound);
    let value = rest_torsion * series.exp();
    let series_tail = orbits.tail_bound(rho, bound);
    let value_tail = series_tail.map(|t| value.norm() * t.exp_m1());
    Ok(DynamicalTorsion {
        value,
        rest_torsion,
        series,
        series_tail,
        value_tail,
    })
}
