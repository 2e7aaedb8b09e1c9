//! The phase invariant: the change of `arg T` along a path of acyclic
//! representations, taken mod π.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::algebra::{LaurentPoly, RatFunc};
use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 40;
const ZERO_RTOL: f64 = 1e-12;

/// 8-point Gauss–Legendre nodes and weights on [−1, 1].
const GL_NODES: [(f64, f64); 8] = [
    (-0.960_289_856_497_536_2, 0.101_228_536_290_376_26),
    (-0.796_666_477_413_626_7, 0.222_381_034_453_374_47),
    (-0.525_532_409_916_329, 0.313_706_645_877_887_3),
    (-0.183_434_642_495_649_8, 0.362_683_783_378_362),
    (0.183_434_642_495_649_8, 0.362_683_783_378_362),
    (0.525_532_409_916_329, 0.313_706_645_877_887_3),
    (0.796_666_477_413_626_7, 0.222_381_034_453_374_47),
    (0.960_289_856_497_536_2, 0.101_228_536_290_376_26),
];

fn near_zero(p: &LaurentPoly, z: Complex64) -> bool {
    let scale: f64 = p
        .terms()
        .map(|(e, c)| c.to_complex().norm() * z.norm().powi(e[0] as i32))
        .sum();
    p.eval(&[z]).norm() <= ZERO_RTOL * scale
}

struct LogDerivative<'a> {
    t: &'a RatFunc,
    dt: RatFunc,
}

impl LogDerivative<'_> {
    fn value(&self, z: Complex64) -> Complex64 {
        self.t.eval(&[z])
    }

    fn log_derivative(&self, z: Complex64) -> Complex64 {
        self.dt.eval(&[z]) / self.t.eval(&[z])
    }

    /// `Im ∫_a^b T'/T dz` along the straight segment.
    fn quadrature(&self, a: Complex64, b: Complex64) -> f64 {
        let half = (b - a) * 0.5;
        let mid = (a + b) * 0.5;
        let s: Complex64 = GL_NODES
            .iter()
            .map(|&(x, w)| self.log_derivative(mid + half * x) * w)
            .sum();
        (s * half).im
    }

    fn segment(&self, a: Complex64, b: Complex64, depth: u32) -> Result<f64> {
        let ta = self.value(a);
        let tb = self.value(b);
        let direct = (tb / ta).arg();
        if direct.abs() < PI / 2.0 {
            let q = self.quadrature(a, b);
            if (q - direct).abs() < 1e-10 {
                return Ok(q);
            }
        }
        if depth >= MAX_DEPTH || (b - a).norm() < 1e-300 {
            return Err(Error::PathResolution(format!("{a}"), format!("{b}")));
        }
        let m = (a + b) * 0.5;
        if !self.value(m).is_finite() || self.value(m).norm() == 0.0 {
            return Err(Error::PathResolution(format!("{a}"), format!("{b}")));
        }
        Ok(self.segment(a, m, depth + 1)? + self.segment(m, b, depth + 1)?)
    }
}

/// Total change of `arg T` along the polygonal path, as `Im ∫ T'/T dz`.
///
/// Each segment is bisected until the change of `log T` on every piece is
/// below π/2 and an 8-point Gauss–Legendre rule reproduces it.
pub fn arg_change(t: &RatFunc, path: &[Complex64]) -> Result<f64> {
    if path.len() < 2 {
        return Err(Error::Parse("a path needs at least two points".into()));
    }
    if t.nvars() > 1 {
        return Err(Error::Dimension(format!(
            "phase needs a function of one variable, got {}",
            t.nvars()
        )));
    }
    if t.nvars() == 0 || t.as_laurent().is_some_and(|p| p.is_constant()) {
        return Ok(0.0);
    }
    for &z in path {
        if !z.is_finite() || z.norm() == 0.0 || near_zero(t.numer(), z) || near_zero(t.denom(), z) {
            return Err(Error::SingularSample(format!("{z}")));
        }
    }
    let ld = LogDerivative {
        t,
        dt: t.derivative(0),
    };
    let mut total = 0.0;
    for w in path.windows(2) {
        total += ld.segment(w[0], w[1], 0)?;
    }
    Ok(total)
}

/// The phase invariant: [`arg_change`] reduced to `[0, π)`.
pub fn arg_invariant(t: &RatFunc, path: &[Complex64]) -> Result<f64> {
    Ok(reduce_mod_pi(arg_change(t, path)?))
}

/// Reduces an angle to `[0, π)`.
pub fn reduce_mod_pi(x: f64) -> f64 {
    let r = x.rem_euclid(PI);
    if r >= PI {
        0.0
    } else {
        r
    }
}

/// Distance between two angles mod π.
pub fn distance_mod_pi(a: f64, b: f64) -> f64 {
    let d = reduce_mod_pi(a - b);
    d.min(PI - d)
}
