use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use torsionlab::algebra::{
    det_numeric, eigen_split, parse_ratfunc, Field, GaussianRational as Q, LaurentPoly, Matrix,
    NumericMatrix, RatFunc, VarNames,
};

fn random_q(rng: &mut ChaCha8Rng) -> Q {
    Q::from_parts(
        (rng.random_range(-9..=9), rng.random_range(1..=5)),
        (rng.random_range(-2..=2), rng.random_range(1..=3)),
    )
}

fn random_laurent(rng: &mut ChaCha8Rng, nvars: usize, terms: usize) -> LaurentPoly {
    LaurentPoly::from_terms(
        nvars,
        (0..terms).map(|_| {
            (
                Q::from_int(rng.random_range(-4..=4)),
                (0..nvars).map(|_| rng.random_range(-2..=3)).collect(),
            )
        }),
    )
}

fn random_ratfunc(rng: &mut ChaCha8Rng, nvars: usize) -> RatFunc {
    loop {
        let num = random_laurent(rng, nvars, 3);
        let den = random_laurent(rng, nvars, 2);
        if !den.is_zero() {
            return RatFunc::new(num, den);
        }
    }
}

#[test]
fn det_examples() {
    let m = Matrix::from_fn(1, 1, |_, _| Q::from_int(5));
    assert_eq!(m.det().unwrap(), Q::from_int(5));
    let u =
        Matrix::from_rows(vec![vec![Q::one(), Q::one()], vec![Q::zero(), Q::one()]], 2).unwrap();
    assert_eq!(u.det().unwrap(), Q::one());
    let z = parse_ratfunc("z - 1", None).unwrap().0;
    assert_eq!(Matrix::from_fn(1, 1, |_, _| z.clone()).det().unwrap(), z);
    assert_eq!(Matrix::<Q>::zeros(0, 0).det().unwrap(), Q::one());
    assert!(Matrix::<Q>::zeros(2, 3).det().is_err());
}

#[test]
fn det_is_multiplicative_over_q() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let a = Matrix::from_fn(4, 4, |_, _| random_q(&mut rng));
        let b = Matrix::from_fn(4, 4, |_, _| random_q(&mut rng));
        assert_eq!(
            a.mul(&b).unwrap().det().unwrap(),
            a.det().unwrap() * b.det().unwrap()
        );
    }
}

#[test]
fn det_is_multiplicative_over_qz() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..5 {
        let a = Matrix::from_fn(4, 4, |_, _| {
            RatFunc::from_poly(random_laurent(&mut rng, 1, 2))
        });
        let b = Matrix::from_fn(4, 4, |_, _| {
            RatFunc::from_poly(random_laurent(&mut rng, 1, 2))
        });
        assert_eq!(
            a.mul(&b).unwrap().det().unwrap(),
            a.det().unwrap() * b.det().unwrap()
        );
    }
}

/// Rank as the size of the largest nonvanishing minor, with integer
/// cofactor expansion.
fn minor_rank(m: &[Vec<i64>]) -> usize {
    fn det(m: &[Vec<i64>], rows: &[usize], cols: &[usize]) -> i64 {
        if rows.len() == 1 {
            return m[rows[0]][cols[0]];
        }
        let sub_rows = &rows[1..];
        (0..cols.len())
            .map(|j| {
                let rest: Vec<usize> = cols
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, &c)| c)
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[rows[0]][cols[j]] * det(m, sub_rows, &rest)
            })
            .sum()
    }
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|s| s.count_ones() as usize == k)
            .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
            .collect()
    }
    let (r, c) = (m.len(), m[0].len());
    (1..=r.min(c))
        .rev()
        .find(|&k| {
            subsets(r, k)
                .iter()
                .any(|rows| subsets(c, k).iter().any(|cols| det(m, rows, cols) != 0))
        })
        .unwrap_or(0)
}

#[test]
fn rank_matches_minor_oracle_exhaustively() {
    for rows in 1..=3 {
        for cols in 1..=4 {
            let n = rows * cols;
            for code in 0..3usize.pow(n as u32) {
                let mut c = code;
                let ints: Vec<Vec<i64>> = (0..rows)
                    .map(|_| {
                        (0..cols)
                            .map(|_| {
                                let v = (c % 3) as i64 - 1;
                                c /= 3;
                                v
                            })
                            .collect()
                    })
                    .collect();
                let m = Matrix::from_fn(rows, cols, |i, j| Q::from_int(ints[i][j]));
                assert_eq!(m.rank(), minor_rank(&ints), "{ints:?}");
            }
        }
    }
}

#[test]
fn rank_and_pivot_examples() {
    assert_eq!(Matrix::<Q>::zeros(2, 3).rank(), 0);
    assert_eq!(Matrix::<Q>::identity(2).rank(), 2);
    let z1 = parse_ratfunc("z - 1", None).unwrap().0;
    assert_eq!(Matrix::from_fn(1, 2, |_, _| z1.clone()).rank(), 1);
    let q = |rows: &[&[i64]]| {
        Matrix::from_fn(rows.len(), rows[0].len(), |i, j| Q::from_int(rows[i][j]))
    };
    assert_eq!(q(&[&[0, 1], &[0, 2]]).pivot_columns(), vec![1]);
    assert_eq!(Matrix::<Q>::identity(3).pivot_columns(), vec![0, 1, 2]);
    assert_eq!(q(&[&[1, 2], &[2, 4]]).pivot_columns(), vec![0]);
}

#[test]
fn ratfunc_inverse_and_canonical_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for nvars in 1..=2 {
        for _ in 0..40 {
            let f = random_ratfunc(&mut rng, nvars);
            if f.numer().is_zero() {
                continue;
            }
            let g = RatFunc::new(f.denom().clone(), f.numer().clone());
            assert!((f.clone() * g).is_one());
            let again = RatFunc::new(f.numer().clone(), f.denom().clone());
            assert_eq!(again.numer(), f.numer());
            assert_eq!(again.denom(), f.denom());
        }
    }
}

#[test]
fn display_parses_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let names = VarNames::new(["z", "w"]);
    for _ in 0..40 {
        let f = random_ratfunc(&mut rng, 2);
        let shown = f.display_with(&names).to_string();
        let (back, _) = parse_ratfunc(&shown, Some(&names)).unwrap();
        assert_eq!(back, f, "{shown}");
    }
}

#[test]
fn numeric_det_examples() {
    let c = |x: f64| Complex64::new(x, 0.0);
    let m = Matrix::from_rows(vec![vec![c(2.0), c(1.0)], vec![c(1.0), c(1.0)]], 2).unwrap();
    assert!((det_numeric(&m).unwrap() - 1.0).norm() < 1e-12);
    assert!((det_numeric(&NumericMatrix::identity(5)).unwrap() - 1.0).norm() < 1e-12);
    assert_eq!(
        det_numeric(&Matrix::from_fn(1, 1, |_, _| c(0.0))).unwrap(),
        c(0.0)
    );
}

proptest! {
    #[test]
    fn spectral_projectors(entries in proptest::collection::vec(-3.0f64..3.0, 16), radius in 0.2f64..4.0) {
        let m: NumericMatrix = Matrix::from_fn(4, 4, |i, j| Complex64::new(entries[4 * i + j], 0.0));
        // Inputs with an eigenvalue near the circle are rejected, not split.
        if let Ok(s) = eigen_split(&m, radius) {
            let scale = 1.0 + s.small.frobenius_norm().unwrap();
            let res = |a: &NumericMatrix, b: &NumericMatrix| a.sub(b).unwrap().frobenius_norm().unwrap();
            prop_assert!(res(&s.small.mul(&s.small).unwrap(), &s.small) <= 1e-8 * scale * scale);
            prop_assert!(res(&s.small.mul(&m).unwrap(), &m.mul(&s.small).unwrap()) <= 1e-8 * scale * (1.0 + m.frobenius_norm().unwrap()));
            prop_assert!(res(&s.small.add(&s.large).unwrap(), &NumericMatrix::identity(4)) <= 1e-8 * scale);
        }
    }

    #[test]
    fn gaussian_field_axioms(a in -50i64..50, b in 1i64..20, c in -50i64..50, d in 1i64..20) {
        let x = Q::from_parts((a, b), (c, d));
        if !x.is_zero() {
            prop_assert!((x.clone() * x.inv().unwrap()).is_one());
        }
        prop_assert_eq!(x.clone() - x.clone(), Q::zero());
    }
}
