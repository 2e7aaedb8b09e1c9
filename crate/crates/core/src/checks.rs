//! Seeded invariant suites, reported one line per invariant.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    numeric_rank, parse_ratfunc, Field, GaussianRational, LaurentPoly, Matrix, RatFunc,
};
use crate::dynamics::{
    aggregate_lefschetz, lefschetz_numbers, lefschetz_zeta, lefschetz_zeta_symbolic,
    mapping_torus_complex, p_series_truncated, suspension_orbits, torus_action, torus_chain_map,
    wang_acyclic, CohomologyAction, CAT_MAP, SUSPENSION_GENERATOR,
};
use crate::error::{Error, Result};
use crate::io::{self, ActionFile, ComplexFile, ExpectedFile, OrbitFile, RepFile};
use crate::twisted::{
    alexander_from_torsion, arg_change, distance_mod_pi, fox_derivative, is_acyclic_rep,
    milnor_turaev, presentation_complex, EulerShift, GroupRingElt, NumericRep, OrientationSign,
    Presentation, Rank1Rep, Representation, Word,
};
use crate::variety::random::{
    random_acyclic_numeric, random_acyclic_ratfunc, random_acyclic_rational, random_acyclic_shape,
};
use crate::variety::{admissible_radii, milnor_torsion, s_torsion, spectral_split_storsion};

/// Trefoil relator `a b a b⁻¹ a⁻¹ b⁻¹`.
pub const TREFOIL: [i32; 6] = [1, 2, 1, -2, -1, -2];
/// Figure-eight relator, the two-bridge form `a w b⁻¹ w⁻¹` with `w = b a⁻¹ b⁻¹ a`.
pub const FIGURE_EIGHT: [i32; 10] = [1, 2, -1, -2, 1, -2, -1, 2, 1, -2];

/// Outcome of one invariant over a batch of cases.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckLine {
    pub name: String,
    pub passed: usize,
    pub total: usize,
    /// First failure, if any.
    pub detail: Option<String>,
}

impl CheckLine {
    fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: 0,
            total: 0,
            detail: None,
        }
    }

    fn record(&mut self, outcome: std::result::Result<(), String>) {
        self.total += 1;
        match outcome {
            Ok(()) => self.passed += 1,
            Err(e) => {
                if self.detail.is_none() {
                    self.detail = Some(e);
                }
            }
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.record(if ok { Ok(()) } else { Err(what()) });
    }

    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {}/{} {}",
            self.name,
            self.passed,
            self.total,
            if self.ok() { "pass" } else { "FAIL" }
        )?;
        if let Some(d) = &self.detail {
            write!(f, " (first failure: {d})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub lines: Vec<CheckLine>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.lines.iter().all(CheckLine::ok)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Algebra,
    Torsion,
    Dynamics,
    Corpus,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "algebra" => Suite::Algebra,
            "torsion" => Suite::Torsion,
            "dynamics" => Suite::Dynamics,
            "corpus" => Suite::Corpus,
            _ => {
                return Err(Error::Parse(format!(
                    "unknown suite '{s}' (all, algebra, torsion, dynamics, corpus)"
                )))
            }
        })
    }
}

/// Runs a suite. Random cases are drawn from a ChaCha stream seeded by
/// `seed`, so reports are reproducible.
pub fn run_suite(suite: Suite, seed: u64, corpus: &Path) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lines = Vec::new();
    if matches!(suite, Suite::All | Suite::Algebra) {
        lines.extend(algebra_suite(&mut rng));
    }
    if matches!(suite, Suite::All | Suite::Torsion) {
        lines.extend(torsion_suite(&mut rng));
    }
    if matches!(suite, Suite::All | Suite::Dynamics) {
        lines.extend(dynamics_suite());
    }
    if matches!(suite, Suite::All | Suite::Corpus) {
        lines.extend(
            io::CORPUS
                .iter()
                .map(|name| check_corpus_entry(corpus, name)),
        );
    }
    Report { lines }
}

type Q = GaussianRational;

fn small_matrix(rng: &mut ChaCha8Rng, n: usize, m: usize, range: i64) -> Matrix<Q> {
    Matrix::from_fn(n, m, |_, _| Q::from_int(rng.random_range(-range..=range)))
}

fn random_laurent(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let coeffs: Vec<i64> = (0..rng.random_range(1..=4))
        .map(|_| rng.random_range(-3..=3))
        .collect();
    LaurentPoly::from_int_coeffs(&coeffs).shift(&[rng.random_range(-2..=2)])
}

pub fn algebra_suite(rng: &mut ChaCha8Rng) -> Vec<CheckLine> {
    let mut det = CheckLine::new("det multiplicativity over ℚ");
    for _ in 0..50 {
        let a = small_matrix(rng, 4, 4, 3);
        let b = small_matrix(rng, 4, 4, 3);
        let lhs = a.mul(&b).and_then(|ab| ab.det());
        let rhs = a.det().and_then(|x| b.det().map(|y| x * y));
        det.check(lhs.is_ok() && lhs == rhs, || format!("{a:?} {b:?}"));
    }

    let mut inv = CheckLine::new("rational function inverse");
    for _ in 0..50 {
        let (p, q) = (random_laurent(rng), random_laurent(rng));
        if p.is_zero() || q.is_zero() {
            continue;
        }
        let f = RatFunc::new(p, q);
        let ok = f.inv().map(|g| (f.clone() * g).is_one()).unwrap_or(false);
        inv.check(ok, || f.to_string());
    }

    let mut round_trip = CheckLine::new("rational function display parses back");
    for _ in 0..50 {
        let (p, q) = (random_laurent(rng), random_laurent(rng));
        if q.is_zero() {
            continue;
        }
        let f = RatFunc::new(p, q);
        let back = parse_ratfunc(
            &f.to_string(),
            Some(&crate::algebra::VarNames::default_for(1)),
        );
        round_trip.check(matches!(&back, Ok((g, _)) if *g == f), || f.to_string());
    }

    let mut rank = CheckLine::new("exact rank = numeric rank");
    for _ in 0..50 {
        let a = small_matrix(rng, 4, 5, 1);
        let numeric = a.map(|x| x.to_complex());
        rank.check(a.rank() == numeric_rank(&numeric, 1e-9), || {
            format!("{a:?}")
        });
    }
    vec![det, inv, round_trip, rank]
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn knot(relator: &[i32]) -> Presentation {
    Presentation::new(
        2,
        vec![Word::new(relator.iter().copied()).expect("valid word")],
    )
    .expect("valid presentation")
}

fn symbolic_torsion(p: &Presentation, shift: i64) -> Result<RatFunc> {
    let rho = Representation::Rank1(Rank1Rep::abelian(p.generators(), "t"));
    let v = milnor_turaev(
        &presentation_complex(p),
        &rho,
        &EulerShift(vec![shift]),
        OrientationSign::Plus,
    )?;
    Ok(v.as_symbolic()
        .expect("rank-one torsion is symbolic")
        .clone())
}

/// A straight path of 16 samples of length at most `0.4`, or `None` when
/// it passes within `0.15` of one of `avoid`.
fn short_path(rng: &mut ChaCha8Rng, avoid: &[Complex64]) -> Option<Vec<Complex64>> {
    let start = Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
    let step = Complex64::from_polar(
        rng.random_range(0.05..0.4),
        rng.random_range(0.0..std::f64::consts::TAU),
    );
    let path: Vec<Complex64> = (0..16).map(|k| start + step * (k as f64 / 15.0)).collect();
    let near = |p: &Complex64| avoid.iter().any(|a| (p - a).norm() < 0.15);
    (!path.iter().any(near)).then_some(path)
}

pub fn torsion_suite(rng: &mut ChaCha8Rng) -> Vec<CheckLine> {
    let mut tau_q = CheckLine::new("τ²=Sτ");
    for _ in 0..200 {
        let shape = random_acyclic_shape(rng, 5, 6);
        let (c, _) = random_acyclic_rational(rng, &shape);
        let ok = matches!((milnor_torsion(&c), s_torsion(&c)), (Ok(t), Ok(s)) if t.clone() * t.clone() == s);
        tau_q.check(ok, || format!("shape {shape}"));
    }

    let mut tau_qz = CheckLine::new("τ²=Sτ over ℚ(z)");
    for _ in 0..20 {
        let shape = random_acyclic_shape(rng, 5, 4);
        let (c, _) = random_acyclic_ratfunc(rng, &shape);
        let ok = matches!((milnor_torsion(&c), s_torsion(&c)), (Ok(t), Ok(s)) if t.clone() * t.clone() == s);
        tau_qz.check(ok, || format!("shape {shape}"));
    }

    let mut basis = CheckLine::new("basis-change law");
    for _ in 0..50 {
        let shape = random_acyclic_shape(rng, 4, 4);
        let (c, _) = random_acyclic_rational(rng, &shape);
        let (_, a) = random_acyclic_rational(rng, &shape);
        let moved = c.change_basis(&a);
        let mut factor = Q::one();
        for (i, ai) in a.iter().enumerate() {
            let d = ai.det().expect("square");
            factor = factor * d.pow(if i % 2 == 0 { -1 } else { 1 }).expect("invertible");
        }
        let ok = match (moved.and_then(|m| milnor_torsion(&m)), milnor_torsion(&c)) {
            (Ok(t1), Ok(t0)) => t1 == t0 * factor,
            _ => false,
        };
        basis.check(ok, || format!("shape {shape}"));
    }

    let mut split = CheckLine::new("spectral split = Sτ");
    for _ in 0..20 {
        let shape = random_acyclic_shape(rng, 5, 4);
        let c = random_acyclic_numeric(rng, &shape);
        let s = match s_torsion(&c) {
            Ok(s) => s,
            Err(e) => {
                split.record(Err(e.to_string()));
                continue;
            }
        };
        match admissible_radii(&c, 3) {
            Ok(radii) => {
                for r in radii {
                    let v = spectral_split_storsion(&c, r);
                    split.check(matches!(v, Ok(v) if rel(v, s) <= 1e-7), || {
                        format!("shape {shape}, radius {r}")
                    });
                }
            }
            Err(e) => split.record(Err(e.to_string())),
        }
    }

    let circle = Presentation::new(1, vec![]).expect("valid presentation");
    let trefoil = knot(&TREFOIL);
    let mut euler = CheckLine::new("Euler-shift law");
    for k in 0..50 {
        let p = if k % 2 == 0 { &circle } else { &trefoil };
        let a = rng.random_range(-20..=20);
        let ok = match (symbolic_torsion(p, 0), symbolic_torsion(p, a)) {
            (Ok(t0), Ok(ta)) => ta == t0.shift(&[a]),
            _ => false,
        };
        euler.check(ok, || format!("shift {a}"));
    }

    let mut fox = CheckLine::new("Fox fundamental identity");
    for r in [&TREFOIL[..], &FIGURE_EIGHT[..], &[1, 2, -1, -2][..]] {
        let w = Word::new(r.iter().copied()).expect("valid word");
        let mut sum = GroupRingElt::zero();
        for g in 1..=2 {
            sum = sum + fox_derivative(&w, g) * GroupRingElt::generator_minus_one(g as i32);
        }
        fox.check(
            sum == GroupRingElt::from_word(w.clone()) - GroupRingElt::one(),
            || w.to_string(),
        );
    }

    let mut alexander = CheckLine::new("Alexander polynomials");
    for (r, coeffs) in [(&TREFOIL[..], [1, -1, 1]), (&FIGURE_EIGHT[..], [1, -3, 1])] {
        let got = alexander_from_torsion(&knot(r));
        alexander.check(
            matches!(&got, Ok(p) if *p == LaurentPoly::from_int_coeffs(&coeffs)),
            || format!("{got:?}"),
        );
    }

    let mut anchor = CheckLine::new("circle anchor |T|·|z|^(-m-1/2) = |(1-z)/z^(1/2)|");
    match symbolic_torsion(&circle, 0) {
        Ok(t) => {
            let one_minus_z = RatFunc::from_poly(LaurentPoly::from_int_coeffs(&[1, -1]));
            match t.unit_ratio(&one_minus_z) {
                Some((c, m)) if c == Q::one() || c == -Q::one() => {
                    for k in 0..10 {
                        let z = Complex64::from_polar(
                            0.5,
                            0.3 + k as f64 * std::f64::consts::TAU / 10.0,
                        );
                        let lhs = t.eval(&[z]).norm() * z.norm().powf(-(m[0] as f64) - 0.5);
                        let rhs = ((Complex64::new(1.0, 0.0) - z) / z.sqrt()).norm();
                        anchor.check((lhs - rhs).abs() <= 1e-9 * rhs, || format!("z = {z}"));
                    }
                }
                _ => anchor.record(Err(format!("{t} is not ±(1 - z)·z^m"))),
            }
        }
        Err(e) => anchor.record(Err(e.to_string())),
    }

    let mut phase = CheckLine::new("phase quadrature = direct ratio");
    let mut additivity = CheckLine::new("phase additivity");
    let unit_roots = [
        Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_3),
        Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_3),
    ];
    let targets: Vec<(RatFunc, Vec<Complex64>)> = vec![
        (RatFunc::var(1, 0), vec![Complex64::new(0.0, 0.0)]),
        (
            RatFunc::from_poly(LaurentPoly::from_int_coeffs(&[1, -1])),
            vec![Complex64::new(1.0, 0.0)],
        ),
        (
            symbolic_torsion(&trefoil, 0).unwrap_or_else(|_| RatFunc::var(1, 0)),
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                unit_roots[0],
                unit_roots[1],
            ],
        ),
    ];
    for (t, avoid) in &targets {
        let mut done = 0;
        while done < 20 {
            let Some(path) = short_path(rng, avoid) else {
                continue;
            };
            done += 1;
            let (a, b) = (path[0], path[path.len() - 1]);
            let direct = (t.eval(&[b]) / t.eval(&[a])).arg();
            let q = arg_change(t, &path);
            phase.check(
                matches!(q, Ok(q) if distance_mod_pi(q, direct) <= 1e-6),
                || format!("{t} from {a} to {b}"),
            );
            let (first, second) = path.split_at(8);
            let mut second = second.to_vec();
            second.insert(0, first[7]);
            let parts = arg_change(t, first).and_then(|x| arg_change(t, &second).map(|y| x + y));
            additivity.check(
                matches!((q, parts), (Ok(q), Ok(p)) if distance_mod_pi(q, p) <= 2e-6),
                || format!("{t} from {a} to {b}"),
            );
        }
    }
    vec![
        tau_q, tau_qz, basis, split, euler, fox, alexander, anchor, phase, additivity,
    ]
}

fn det_i_minus_power(a: [[i64; 2]; 2], n: u32) -> i128 {
    let m: Matrix<Q> = Matrix::from_fn(2, 2, |i, j| Q::from_int(a[i][j]));
    let mut p = Matrix::identity(2);
    for _ in 0..n {
        p = p.mul(&m).expect("square");
    }
    let d = Matrix::<Q>::identity(2)
        .sub(&p)
        .expect("square")
        .det()
        .expect("square");
    d.re.to_integer().to_i128().expect("small determinant")
}

/// Rank-one representation of the torus suspension, trivial on the fiber
/// with `s ↦ u`.
fn fiber_trivial_symbolic() -> Result<Rank1Rep> {
    let mut images = vec![(Q::one(), vec![0]); SUSPENSION_GENERATOR];
    images[SUSPENSION_GENERATOR - 1].1 = vec![1];
    Rank1Rep::new(crate::algebra::VarNames::new(["u"]), images)
}

fn fiber_trivial(u: f64) -> Result<NumericRep> {
    fiber_trivial_symbolic()?.at(&[Complex64::new(u, 0.0)])
}

pub fn dynamics_suite() -> Vec<CheckLine> {
    let matrices = [
        CAT_MAP,
        [[3, 1], [2, 1]],
        [[5, 2], [2, 1]],
        [[-3, 1], [-1, 0]],
        [[1, 1], [1, 0]],
    ];
    let mut agg = CheckLine::new("Lefschetz aggregation");
    for a in matrices {
        match suspension_orbits(a, 10) {
            Ok(s) => {
                for n in 1..=10 {
                    let (got, want) = (aggregate_lefschetz(&s, n), det_i_minus_power(a, n));
                    agg.check(got == want, || format!("{a:?}, n = {n}: {got} vs {want}"));
                }
            }
            Err(e) => agg.record(Err(e.to_string())),
        }
    }

    let mut lef = CheckLine::new("Lefschetz numbers = det(I - A^n)");
    for a in matrices {
        match lefschetz_numbers(a, 10) {
            Ok(l) => {
                for (k, x) in l.iter().enumerate() {
                    let want = det_i_minus_power(a, k as u32 + 1);
                    lef.check(*x == want, || format!("{a:?}, n = {}", k + 1));
                }
            }
            Err(e) => lef.record(Err(e.to_string())),
        }
    }

    let mut torus = CheckLine::new("mapping torus = zeta");
    for a in matrices.iter().copied().chain([[[1, 0], [0, 1]]]) {
        let outcome = (|| -> Result<bool> {
            let c = mapping_torus_complex(&torus_chain_map(a)?)?;
            let rho = fiber_trivial_symbolic()?;
            let t = milnor_turaev(
                &c,
                &Representation::Rank1(rho),
                &EulerShift(vec![0]),
                OrientationSign::Plus,
            )?;
            let zeta = lefschetz_zeta_symbolic(&torus_action(a)).invert_variables();
            let t = t
                .as_symbolic()
                .expect("rank-one torsion is symbolic")
                .clone();
            Ok(matches!(t.unit_ratio(&zeta), Some((c, _)) if c == Q::one() || c == -Q::one()))
        })();
        torus.check(matches!(outcome, Ok(true)), || {
            format!("{a:?}: {outcome:?}")
        });
    }

    let mut wang = CheckLine::new("Wang criterion = acyclicity");
    let golden = (3.0 - 5f64.sqrt()) / 2.0;
    let cat = torus_action(CAT_MAP);
    for u in [0.3, golden, 1.0, -0.7, 2.0] {
        let outcome = (|| -> Result<bool> {
            let c = mapping_torus_complex(&torus_chain_map(CAT_MAP)?)?;
            let rho = fiber_trivial(u)?;
            let scaled: CohomologyAction<Complex64> = cat.map(|x| x.to_complex() * u);
            Ok(wang_acyclic(&scaled) == is_acyclic_rep(&c, &Representation::Numeric(rho))?)
        })();
        wang.check(matches!(outcome, Ok(true)), || {
            format!("u = {u}: {outcome:?}")
        });
    }

    let mut series = CheckLine::new("exp(P_X;30) = 1/zeta");
    match suspension_orbits(CAT_MAP, 30) {
        Ok(orbits) => {
            let act = cat.map(|x| x.to_complex());
            for u in [0.05, 0.1, 0.2] {
                let outcome = (|| -> Result<f64> {
                    let p = p_series_truncated(&orbits, &fiber_trivial(u)?, 30.0);
                    let z = lefschetz_zeta(&act, &Complex64::new(u, 0.0))?;
                    Ok((p.exp() * z - 1.0).norm())
                })();
                series.check(matches!(outcome, Ok(d) if d <= 1e-6), || {
                    format!("u = {u}: {outcome:?}")
                });
            }
        }
        Err(e) => series.record(Err(e.to_string())),
    }
    vec![agg, lef, torus, wang, series]
}

fn expect_ratfunc(
    line: &mut CheckLine,
    what: &str,
    want: &io::ExpectedRatFunc,
    got: Result<RatFunc>,
) {
    let outcome = got.and_then(|f| want.matches(&f).map(|ok| (ok, f)));
    line.check(matches!(outcome, Ok((true, _))), || match &outcome {
        Ok((_, f)) => format!("{what}: got {f}, expected {}", want.expr),
        Err(e) => format!("{what}: {e}"),
    });
}

fn round_trips(line: &mut CheckLine, path: &Path, reencode: impl FnOnce(&str) -> Result<String>) {
    let outcome = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(e.to_string()))
        .and_then(|text| reencode(&text).map(|again| again == text));
    line.check(matches!(outcome, Ok(true)), || {
        format!("{} does not round-trip: {outcome:?}", path.display())
    });
}

/// Validates one corpus entry against its expected-value sidecar.
///
/// Every file of the entry must parse and re-serialize to identical bytes.
pub fn check_corpus_entry(dir: &Path, name: &str) -> CheckLine {
    let mut line = CheckLine::new(format!("corpus {name}"));
    let file = |kind: &str| io::corpus_file(dir, name, kind);
    let complex = match io::read_json::<ComplexFile>(&file("complex")).and_then(|f| f.to_complex())
    {
        Ok(c) => c,
        Err(e) => {
            line.record(Err(e.to_string()));
            return line;
        }
    };
    let expected = match io::read_json::<ExpectedFile>(&file("expected")) {
        Ok(e) => e,
        Err(e) => {
            line.record(Err(e.to_string()));
            return line;
        }
    };
    round_trips(&mut line, &file("complex"), |t| {
        Ok(io::to_json(&io::from_json::<ComplexFile>(t)?))
    });
    round_trips(&mut line, &file("expected"), |t| {
        Ok(io::to_json(&io::from_json::<ExpectedFile>(t)?))
    });

    let rep = if file("rep").exists() {
        round_trips(&mut line, &file("rep"), |t| {
            Ok(io::to_json(&RepFile::from_spec(
                &io::from_json::<RepFile>(t)?.to_spec()?,
            )?))
        });
        Some(
            io::read_json::<RepFile>(&file("rep"))
                .and_then(|f| f.to_spec())
                .and_then(|s| s.check_against(&complex).and_then(|_| s.representation())),
        )
    } else {
        None
    };
    match (&rep, expected.acyclic) {
        (Some(rho), Some(want)) => {
            let got = rho.clone().and_then(|r| is_acyclic_rep(&complex, &r));
            line.check(got == Ok(want), || {
                format!("acyclic: got {got:?}, expected {want}")
            });
        }
        (None, Some(_)) => line.record(Err("acyclic expected but no rep file".into())),
        _ => {}
    }
    if let Some(want) = &expected.torsion {
        let got = match &rep {
            Some(Ok(rho)) => milnor_turaev(
                &complex,
                rho,
                &EulerShift(vec![0; rho_vars(rho)]),
                OrientationSign::Plus,
            )
            .and_then(|t| {
                t.as_symbolic()
                    .cloned()
                    .ok_or_else(|| Error::Format("torsion expected from a numeric rep".into()))
            }),
            Some(Err(e)) => Err(e.clone()),
            None => Err(Error::Format("torsion expected but no rep file".into())),
        };
        expect_ratfunc(&mut line, "torsion", want, got);
    }
    if let Some(want) = &expected.alexander {
        let got = Presentation::new(complex.generators(), complex.relators().to_vec())
            .and_then(|p| alexander_from_torsion(&p));
        let want_poly = LaurentPoly::from_int_coeffs(want);
        line.check(matches!(&got, Ok(p) if *p == want_poly), || {
            format!("alexander: got {got:?}, expected {want:?}")
        });
    }

    let action = if file("action").exists() {
        round_trips(&mut line, &file("action"), |t| {
            Ok(io::to_json(&ActionFile::from_action(
                &io::from_json::<ActionFile>(t)?.to_action()?,
            )))
        });
        Some(io::read_json::<ActionFile>(&file("action")).and_then(|f| f.to_action()))
    } else {
        None
    };
    if let Some(want) = &expected.zeta {
        let got = match &action {
            Some(a) => a.clone().map(|a| lefschetz_zeta_symbolic(&a)),
            None => Err(Error::Format("zeta expected but no action file".into())),
        };
        expect_ratfunc(&mut line, "zeta", want, got);
    }

    let orbits = if file("orbits").exists() {
        round_trips(&mut line, &file("orbits"), |t| {
            Ok(io::to_json(&OrbitFile::from_series(
                &io::from_json::<OrbitFile>(t)?.to_series()?,
            )))
        });
        Some(io::read_json::<OrbitFile>(&file("orbits")).and_then(|f| f.to_series()))
    } else {
        None
    };
    if let Some(want) = &expected.lefschetz {
        match &action {
            Some(Ok(a)) => {
                for (k, w) in want.iter().enumerate() {
                    let got = trace_lefschetz(a, k + 1);
                    line.check(got == Q::from_int(*w), || {
                        format!("Lefschetz number {}: trace formula gives {got}", k + 1)
                    });
                }
            }
            Some(Err(e)) => line.record(Err(e.to_string())),
            None => {}
        }
        match &orbits {
            Some(Ok(s)) => {
                for (k, w) in want.iter().enumerate() {
                    let got = aggregate_lefschetz(s, k as u32 + 1);
                    line.check(got == *w as i128, || {
                        format!("Lefschetz number {}: orbits give {got}", k + 1)
                    });
                }
            }
            Some(Err(e)) => line.record(Err(e.to_string())),
            None => {}
        }
    }
    if file("point").exists() {
        round_trips(&mut line, &file("point"), |t| {
            Ok(io::to_json(&RepFile::from_spec(
                &io::from_json::<RepFile>(t)?.to_spec()?,
            )?))
        });
    }
    line
}

fn rho_vars(rho: &Representation) -> usize {
    match rho {
        Representation::Rank1(r) => r.nvars(),
        Representation::Numeric(r) => r.coords().map_or(0, <[Complex64]>::len),
    }
}

/// `L(f^n) = Σ_q (−1)^q tr f_q^n`.
fn trace_lefschetz(a: &CohomologyAction<Q>, n: usize) -> Q {
    let mut total = Q::zero();
    for (q, m) in a.maps().iter().enumerate() {
        let mut p = Matrix::identity(m.rows());
        for _ in 0..n {
            p = p.mul(m).expect("square");
        }
        let tr = (0..p.rows()).fold(Q::zero(), |acc, i| acc + p.get(i, i).clone());
        total = if q % 2 == 0 { total + tr } else { total - tr };
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        assert_eq!("torsion".parse::<Suite>().unwrap(), Suite::Torsion);
        assert!(matches!("nope".parse::<Suite>(), Err(Error::Parse(_))));
    }

    #[test]
    fn line_format() {
        let mut l = CheckLine::new("τ²=Sτ");
        l.record(Ok(()));
        l.record(Ok(()));
        assert_eq!(l.to_string(), "τ²=Sτ: 2/2 pass");
        l.record(Err("shape (1, 1)".into()));
        assert_eq!(
            l.to_string(),
            "τ²=Sτ: 2/3 FAIL (first failure: shape (1, 1))"
        );
    }

    #[test]
    fn dynamics_suite_passes() {
        let lines = dynamics_suite();
        assert!(lines.iter().all(CheckLine::ok), "{lines:#?}");
    }

    #[test]
    fn algebra_suite_passes() {
        let lines = algebra_suite(&mut ChaCha8Rng::seed_from_u64(1));
        assert!(lines.iter().all(CheckLine::ok), "{lines:#?}");
    }
}
