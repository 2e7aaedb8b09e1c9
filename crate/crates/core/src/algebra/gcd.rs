//! Multivariate polynomial gcd over ℚ(i).
//!
//! Inputs are Laurent polynomials with no negative exponents. The gcd is
//! computed recursively: content/primitive-part splitting in the main
//! variable, then a primitive pseudo-remainder sequence.

use std::collections::BTreeMap;

use super::field::Field;
use super::gaussian::GaussianRational;
use super::laurent::LaurentPoly;

/// Exact quotient `a / b` of polynomials, or `None` if `b` does not divide
/// `a`. Uses division by leading terms in lexicographic order.
pub(crate) fn div_exact(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    assert!(!b.is_zero(), "division by zero polynomial");
    let n = a.nvars();
    if let Some((c, e)) = b.as_monomial() {
        let inv = c.inv()?;
        let shift: Vec<i64> = e.iter().map(|x| -x).collect();
        let q = a.shift(&shift).scale(&inv);
        return q.is_polynomial().then_some(q);
    }
    let (lb_exp, lb_c) = lex_leading(b);
    let lb_inv = lb_c.inv()?;
    let mut r = a.clone();
    let mut q = LaurentPoly::zero(n);
    while !r.is_zero() {
        let (lr_exp, lr_c) = lex_leading(&r);
        let e: Vec<i64> = lr_exp.iter().zip(&lb_exp).map(|(x, y)| x - y).collect();
        if e.iter().any(|&x| x < 0) {
            return None;
        }
        let c = &lr_c * &lb_inv;
        let t = LaurentPoly::monomial(n, c, e);
        r = &r - &(&t * b);
        q = &q + &t;
    }
    Some(q)
}

fn lex_leading(p: &LaurentPoly) -> (Vec<i64>, GaussianRational) {
    let (e, c) = p.terms().last().expect("nonzero polynomial");
    (e.clone(), c.clone())
}

/// Scales `p` so its graded-lex leading coefficient is 1.
pub(crate) fn make_monic(p: &LaurentPoly) -> LaurentPoly {
    match p.leading_term() {
        Some((_, c)) if !c.is_one() => p.scale(&c.inv().expect("nonzero")),
        _ => p.clone(),
    }
}

fn coeffs_in(p: &LaurentPoly, var: usize) -> BTreeMap<i64, LaurentPoly> {
    let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
    for (e, c) in p.terms() {
        let mut ne = e.clone();
        let d = ne[var];
        ne[var] = 0;
        out.entry(d)
            .or_insert_with(|| LaurentPoly::zero(p.nvars()))
            .add_term(ne, c.clone());
    }
    out
}

fn degree_in(p: &LaurentPoly, var: usize) -> i64 {
    p.max_degree_in(var).unwrap_or(-1)
}

fn leading_coeff_in(p: &LaurentPoly, var: usize) -> LaurentPoly {
    let d = degree_in(p, var);
    coeffs_in(p, var)
        .remove(&d)
        .unwrap_or_else(|| LaurentPoly::zero(p.nvars()))
}

fn content_in(p: &LaurentPoly, var: usize, rest: &[usize]) -> LaurentPoly {
    let mut g: Option<LaurentPoly> = None;
    for c in coeffs_in(p, var).into_values() {
        g = Some(match g {
            None => make_monic(&c),
            Some(g) => gcd_rec(&g, &c, rest),
        });
        if g.as_ref().is_some_and(|g| g.is_constant()) {
            break;
        }
    }
    g.unwrap_or_else(|| LaurentPoly::zero(p.nvars()))
}

/// Pseudo-remainder of `a` by `b` as polynomials in `var`.
fn prem(a: &LaurentPoly, b: &LaurentPoly, var: usize) -> LaurentPoly {
    let n = a.nvars();
    let db = degree_in(b, var);
    let lb = leading_coeff_in(b, var);
    let mut r = a.clone();
    while !r.is_zero() && degree_in(&r, var) >= db {
        let dr = degree_in(&r, var);
        let lr = leading_coeff_in(&r, var);
        let mut e = vec![0; n];
        e[var] = dr - db;
        let x = LaurentPoly::monomial(n, GaussianRational::one(), e);
        r = &(&lb * &r) - &(&(&lr * &x) * b);
    }
    r
}

fn gcd_rec(a: &LaurentPoly, b: &LaurentPoly, vars: &[usize]) -> LaurentPoly {
    let n = a.nvars();
    if a.is_zero() {
        return make_monic(b);
    }
    if b.is_zero() {
        return make_monic(a);
    }
    if a.is_constant() || b.is_constant() {
        return LaurentPoly::one(n);
    }
    if a == b {
        return make_monic(a);
    }
    let Some(pos) = vars
        .iter()
        .rposition(|&v| degree_in(a, v) > 0 || degree_in(b, v) > 0)
    else {
        return LaurentPoly::one(n);
    };
    let var = vars[pos];
    let rest: Vec<usize> = vars.iter().copied().filter(|&v| v != var).collect();
    if degree_in(a, var) == 0 {
        return gcd_rec(a, &content_in(b, var, &rest), &rest);
    }
    if degree_in(b, var) == 0 {
        return gcd_rec(&content_in(a, var, &rest), b, &rest);
    }
    let ca = content_in(a, var, &rest);
    let cb = content_in(b, var, &rest);
    // Scalars are units, so each primitive part is also made monic; this
    // keeps the rational coefficients of the remainder sequence small.
    let mut pa = make_monic(&div_exact(a, &ca).expect("content divides"));
    let mut pb = make_monic(&div_exact(b, &cb).expect("content divides"));
    let c = gcd_rec(&ca, &cb, &rest);
    if degree_in(&pa, var) < degree_in(&pb, var) {
        std::mem::swap(&mut pa, &mut pb);
    }
    let g = loop {
        let r = prem(&pa, &pb, var);
        if r.is_zero() {
            break pb;
        }
        if degree_in(&r, var) == 0 {
            break LaurentPoly::one(n);
        }
        let cr = content_in(&r, var, &rest);
        pa = pb;
        pb = make_monic(&div_exact(&r, &cr).expect("content divides"));
    };
    make_monic(&(&c * &g))
}

/// Monic gcd of two polynomials (no negative exponents).
pub(crate) fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    debug_assert!(a.is_polynomial() && b.is_polynomial());
    let vars: Vec<usize> = (0..a.nvars()).collect();
    gcd_rec(a, b, &vars)
}
