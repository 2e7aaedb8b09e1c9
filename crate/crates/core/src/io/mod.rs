//! Versioned JSON formats for complexes, representations, orbit data,
//! cohomology actions and rational functions, plus the bundled corpus.
//!
//! Every document carries `"format": 1` and rejects unknown fields. Exact
//! data uses integers or exact rational strings, never floats.

use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::algebra::{parse_ratfunc, GaussianRational, Matrix, RatFunc, VarNames};
use crate::dynamics::{ClosedOrbit, CohomologyAction, OrbitSeries};
use crate::error::{Error, Result};
use crate::twisted::{
    GroupRingComplex, GroupRingElt, GroupRingMatrix, NumericRep, Rank1Rep, Representation, Word,
};
use crate::variety::Shape;

pub const FORMAT_VERSION: u32 = 1;

/// Environment variable overriding the corpus directory.
pub const CORPUS_ENV: &str = "TORSIONLAB_CORPUS";

/// Largest accepted input document, in bytes.
pub const MAX_DOCUMENT: usize = 16 << 20;

fn check_format(found: u32) -> Result<()> {
    if found != FORMAT_VERSION {
        return Err(Error::Format(format!(
            "unsupported format {found}, expected {FORMAT_VERSION}"
        )));
    }
    Ok(())
}

/// Parses a JSON document of one of the formats below.
pub fn from_json<T: DeserializeOwned + Versioned>(text: &str) -> Result<T> {
    if text.len() > MAX_DOCUMENT {
        return Err(Error::Format(format!(
            "document exceeds {MAX_DOCUMENT} bytes"
        )));
    }
    let doc: T = serde_json::from_str(text)?;
    check_format(doc.format())?;
    Ok(doc)
}

/// Canonical serialization: pretty-printed with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn read_json<T: DeserializeOwned + Versioned>(path: &Path) -> Result<T> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    from_json(&text).map_err(|e| match e {
        Error::Format(msg) => Error::Format(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn write_json<T: Serialize>(path: &Path, doc: &T) -> Result<()> {
    std::fs::write(path, to_json(doc)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Documents with a format version.
pub trait Versioned {
    fn format(&self) -> u32;
}

macro_rules! versioned {
    ($($t:ty),*) => {
        $(impl Versioned for $t {
            fn format(&self) -> u32 {
                self.format
            }
        })*
    };
}

versioned!(
    ComplexFile,
    OrbitFile,
    ActionFile,
    RatFuncFile,
    ExpectedFile
);

impl Versioned for RepFile {
    fn format(&self) -> u32 {
        match self {
            RepFile::Rank1Symbolic { format, .. }
            | RepFile::Rank1Numeric { format, .. }
            | RepFile::Matrix { format, .. } => *format,
        }
    }
}

fn word(letters: &[i32]) -> Result<Word> {
    Word::new(letters.iter().copied()).map_err(|e| Error::Format(e.to_string()))
}

fn rational(num: i64, den: i64) -> Result<BigRational> {
    if den == 0 {
        return Err(Error::Format("zero denominator".into()));
    }
    Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

fn small(q: &BigRational) -> Result<(i64, i64)> {
    match (q.numer().to_i64(), q.denom().to_i64()) {
        (Some(n), Some(d)) => Ok((n, d)),
        _ => Err(Error::Format(format!(
            "coefficient {q} does not fit in 64 bits"
        ))),
    }
}

/// One term `num/den · word` of a group-ring entry.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term(pub i64, pub i64, pub Vec<i32>);

/// A group-ring complex: shape, differentials (row-major lists of entries,
/// each a list of terms) and informational relators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub format: u32,
    pub generators: usize,
    pub relators: Vec<Vec<i32>>,
    pub shape: Vec<usize>,
    pub diffs: Vec<Vec<Vec<Vec<Term>>>>,
}

impl ComplexFile {
    pub fn from_complex(c: &GroupRingComplex) -> Result<Self> {
        let diffs = c
            .diffs()
            .iter()
            .map(|d| {
                (0..d.rows())
                    .map(|i| {
                        (0..d.cols())
                            .map(|j| {
                                d.get(i, j)
                                    .terms()
                                    .map(|(w, q)| {
                                        small(q).map(|(n, den)| Term(n, den, w.letters().to_vec()))
                                    })
                                    .collect::<Result<Vec<_>>>()
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            format: FORMAT_VERSION,
            generators: c.generators(),
            relators: c.relators().iter().map(|w| w.letters().to_vec()).collect(),
            shape: c.shape().0.clone(),
            diffs,
        })
    }

    pub fn to_complex(&self) -> Result<GroupRingComplex> {
        if self.shape.is_empty() {
            return Err(Error::Format("empty shape".into()));
        }
        if self.diffs.len() + 1 != self.shape.len() {
            return Err(Error::Format(format!(
                "{} differentials for a shape of length {}",
                self.diffs.len(),
                self.shape.len()
            )));
        }
        let check_letters = |letters: &[i32]| -> Result<()> {
            match letters
                .iter()
                .find(|l| **l == 0 || l.unsigned_abs() as usize > self.generators)
            {
                Some(l) => Err(Error::Format(format!(
                    "letter {l} outside generators 1..={}",
                    self.generators
                ))),
                None => Ok(()),
            }
        };
        let relators = self
            .relators
            .iter()
            .map(|r| {
                check_letters(r)?;
                let w = word(r)?;
                if w.is_identity() {
                    return Err(Error::Format(
                        "relators must be nonempty after free reduction".into(),
                    ));
                }
                Ok(w)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut diffs = Vec::with_capacity(self.diffs.len());
        for (i, rows) in self.diffs.iter().enumerate() {
            let (r, c) = (self.shape[i + 1], self.shape[i]);
            if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                return Err(Error::Format(format!("d^{i} must be {r}x{c}")));
            }
            let mut entries = Vec::with_capacity(r * c);
            for row in rows {
                for entry in row {
                    let mut e = GroupRingElt::zero();
                    for Term(n, den, letters) in entry {
                        check_letters(letters)?;
                        e.add_term(rational(*n, *den)?, word(letters)?);
                    }
                    entries.push(e);
                }
            }
            diffs.push(GroupRingMatrix::new(r, c, entries)?);
        }
        GroupRingComplex::new(self.generators, relators, Shape(self.shape.clone()), diffs)
            .map_err(|e| Error::Format(e.to_string()))
    }
}

/// Rank-one image `e^{2πi p/q} · t^v`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rank1Image {
    pub root_of_unity: [i64; 2],
    pub exponents: Vec<i64>,
}

/// A representation file. Complex numbers are `[re, im]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RepFile {
    Rank1Symbolic {
        format: u32,
        variables: Vec<String>,
        images: Vec<Rank1Image>,
    },
    /// Symbolic images together with a point of the torus.
    Rank1Numeric {
        format: u32,
        variables: Vec<String>,
        images: Vec<Rank1Image>,
        point: Vec<[f64; 2]>,
    },
    Matrix {
        format: u32,
        images: Vec<Vec<Vec<[f64; 2]>>>,
    },
}

/// A loaded representation.
#[derive(Clone, Debug)]
pub enum RepSpec {
    Rank1Symbolic(Rank1Rep),
    Rank1Numeric(Rank1Rep, Vec<Complex64>),
    Matrix(NumericRep),
}

fn root_code(c: &GaussianRational) -> Result<[i64; 2]> {
    for code in [[0, 1], [1, 4], [1, 2], [3, 4]] {
        if GaussianRational::root_of_unity(code[0], code[1])? == *c {
            return Ok(code);
        }
    }
    Err(Error::Format(format!(
        "{c} is not a Gaussian root of unity"
    )))
}

fn rank1_from_file(variables: &[String], images: &[Rank1Image]) -> Result<Rank1Rep> {
    let names = VarNames::new(variables.iter().cloned());
    let mut seen = std::collections::HashSet::new();
    if variables.iter().any(|v| !valid_name(v) || !seen.insert(v)) {
        return Err(Error::Format(
            "variable names must be distinct identifiers other than 'i'".into(),
        ));
    }
    let images = images
        .iter()
        .map(|im| {
            if im.exponents.len() != variables.len() {
                return Err(Error::Format(format!(
                    "image has {} exponents for {} variables",
                    im.exponents.len(),
                    variables.len()
                )));
            }
            Ok((
                GaussianRational::root_of_unity(im.root_of_unity[0], im.root_of_unity[1])?,
                im.exponents.clone(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Rank1Rep::new(names, images).map_err(|e| Error::Format(e.to_string()))
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
        && s != "i"
}

fn rank1_to_file(r: &Rank1Rep) -> Result<(Vec<String>, Vec<Rank1Image>)> {
    let images = r
        .images()
        .iter()
        .map(|(c, e)| {
            Ok(Rank1Image {
                root_of_unity: root_code(c)?,
                exponents: e.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((r.names().0.clone(), images))
}

fn complex(p: [f64; 2]) -> Result<Complex64> {
    if !(p[0].is_finite() && p[1].is_finite()) {
        return Err(Error::Format("complex entries must be finite".into()));
    }
    Ok(Complex64::new(p[0], p[1]))
}

impl RepFile {
    pub fn to_spec(&self) -> Result<RepSpec> {
        match self {
            RepFile::Rank1Symbolic {
                variables, images, ..
            } => Ok(RepSpec::Rank1Symbolic(rank1_from_file(variables, images)?)),
            RepFile::Rank1Numeric {
                variables,
                images,
                point,
                ..
            } => {
                let r = rank1_from_file(variables, images)?;
                if point.len() != variables.len() {
                    return Err(Error::Format(format!(
                        "point has {} coordinates for {} variables",
                        point.len(),
                        variables.len()
                    )));
                }
                let point = point
                    .iter()
                    .map(|&p| complex(p))
                    .collect::<Result<Vec<_>>>()?;
                Ok(RepSpec::Rank1Numeric(r, point))
            }
            RepFile::Matrix { images, .. } => {
                let matrices = images
                    .iter()
                    .map(|rows| {
                        let n = rows.len();
                        if rows.iter().any(|row| row.len() != n) {
                            return Err(Error::Format("matrix images must be square".into()));
                        }
                        let entries = rows
                            .iter()
                            .flatten()
                            .map(|&p| complex(p))
                            .collect::<Result<Vec<_>>>()?;
                        Matrix::new(n, n, entries)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(RepSpec::Matrix(
                    NumericRep::new(matrices, None).map_err(|e| Error::Format(e.to_string()))?,
                ))
            }
        }
    }

    pub fn from_spec(spec: &RepSpec) -> Result<Self> {
        Ok(match spec {
            RepSpec::Rank1Symbolic(r) => {
                let (variables, images) = rank1_to_file(r)?;
                RepFile::Rank1Symbolic {
                    format: FORMAT_VERSION,
                    variables,
                    images,
                }
            }
            RepSpec::Rank1Numeric(r, point) => {
                let (variables, images) = rank1_to_file(r)?;
                let point = point.iter().map(|z| [z.re, z.im]).collect();
                RepFile::Rank1Numeric {
                    format: FORMAT_VERSION,
                    variables,
                    images,
                    point,
                }
            }
            RepSpec::Matrix(m) => RepFile::Matrix {
                format: FORMAT_VERSION,
                images: m
                    .matrices()
                    .iter()
                    .map(|a| {
                        (0..a.rows())
                            .map(|i| a.row(i).iter().map(|z| [z.re, z.im]).collect())
                            .collect()
                    })
                    .collect(),
            },
        })
    }
}

impl RepSpec {
    /// The representation to evaluate with.
    pub fn representation(&self) -> Result<Representation> {
        Ok(match self {
            RepSpec::Rank1Symbolic(r) => Representation::Rank1(r.clone()),
            RepSpec::Rank1Numeric(r, p) => Representation::Numeric(r.at(p)?),
            RepSpec::Matrix(m) => Representation::Numeric(m.clone()),
        })
    }

    /// Checks that every relator of `c` maps to the identity: exactly for
    /// rank-one images, within [`RELATOR_TOL`](crate::twisted::RELATOR_TOL) for matrices.
    pub fn check_against(&self, c: &GroupRingComplex) -> Result<()> {
        match self {
            RepSpec::Rank1Symbolic(r) | RepSpec::Rank1Numeric(r, _) => {
                for w in c.relators() {
                    if w.max_generator() > r.generators() {
                        return Err(Error::InvalidRepresentation(format!(
                            "relator {w} uses an undefined generator"
                        )));
                    }
                    let (coeff, exps) = r.word_inverse(w);
                    if coeff != GaussianRational::from_int(1) || exps.iter().any(|&e| e != 0) {
                        return Err(Error::InvalidRepresentation(format!(
                            "relator {w} does not map to 1"
                        )));
                    }
                }
                Ok(())
            }
            RepSpec::Matrix(m) => m.check_relators(c.relators()),
        }
    }

    /// A numeric representation, substituting `point` into symbolic images
    /// when given.
    pub fn numeric(&self, point: Option<&[Complex64]>) -> Result<NumericRep> {
        match (self, point) {
            (RepSpec::Rank1Symbolic(r) | RepSpec::Rank1Numeric(r, _), Some(p)) => r.at(p),
            (RepSpec::Rank1Numeric(r, p), None) => r.at(p),
            (RepSpec::Matrix(m), None) => Ok(m.clone()),
            (RepSpec::Matrix(_), Some(_)) => Err(Error::Parse(
                "a matrix representation takes no point".into(),
            )),
            (RepSpec::Rank1Symbolic(_), None) => Err(Error::Parse(
                "a symbolic representation needs a point for numeric evaluation".into(),
            )),
        }
    }
}

/// One orbit entry; `count` defaults to 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitEntry {
    pub word: Vec<i32>,
    pub period: u32,
    pub sign: i8,
    pub par_minus: bool,
    pub par_plus: bool,
    pub filtration: f64,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub count: u64,
}

fn one() -> u64 {
    1
}

fn is_one(n: &u64) -> bool {
    *n == 1
}

/// Closed-orbit data, sorted by filtration. A suspension of a toral
/// automorphism may record its matrix for tail bounds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitFile {
    pub format: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suspension: Option<[[i64; 2]; 2]>,
    pub orbits: Vec<OrbitEntry>,
}

impl OrbitFile {
    pub fn from_series(s: &OrbitSeries) -> Self {
        Self {
            format: FORMAT_VERSION,
            suspension: s.suspension(),
            orbits: s
                .orbits()
                .iter()
                .map(|o| OrbitEntry {
                    word: o.word.letters().to_vec(),
                    period: o.period,
                    sign: o.sign,
                    par_minus: o.parity_minus,
                    par_plus: o.parity_plus,
                    filtration: o.filtration,
                    count: o.count,
                })
                .collect(),
        }
    }

    pub fn to_series(&self) -> Result<OrbitSeries> {
        if self
            .orbits
            .windows(2)
            .any(|w| !(w[0].filtration <= w[1].filtration))
        {
            return Err(Error::Format(
                "orbits must be sorted by ascending filtration".into(),
            ));
        }
        let orbits = self
            .orbits
            .iter()
            .map(|e| {
                ClosedOrbit::new(
                    word(&e.word)?,
                    e.period,
                    e.sign,
                    e.par_minus,
                    e.par_plus,
                    e.filtration,
                )?
                .with_count(e.count)
            })
            .collect::<Result<Vec<_>>>()?;
        let series = OrbitSeries::new(orbits)?;
        match self.suspension {
            Some(a) => series
                .with_suspension(a)
                .map_err(|e| Error::Format(e.to_string())),
            None => Ok(series),
        }
    }
}

/// A cohomology action with exact entries such as `"2"`, `"-1/3"` or
/// `"1/2,3"` (real and imaginary parts).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionFile {
    pub format: u32,
    pub maps: Vec<Vec<Vec<String>>>,
}

fn exact_string(q: &GaussianRational) -> String {
    let part = |x: &BigRational| {
        if x.denom() == &BigInt::from(1) {
            x.numer().to_string()
        } else {
            x.to_string()
        }
    };
    if q.im.is_zero() {
        part(&q.re)
    } else {
        format!("{},{}", part(&q.re), part(&q.im))
    }
}

impl ActionFile {
    pub fn from_action(a: &CohomologyAction<GaussianRational>) -> Self {
        Self {
            format: FORMAT_VERSION,
            maps: a
                .maps()
                .iter()
                .map(|m| {
                    (0..m.rows())
                        .map(|i| m.row(i).iter().map(exact_string).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_action(&self) -> Result<CohomologyAction<GaussianRational>> {
        let maps = self
            .maps
            .iter()
            .map(|rows| {
                let n = rows.len();
                if rows.iter().any(|r| r.len() != n) {
                    return Err(Error::Format("action matrices must be square".into()));
                }
                let entries = rows
                    .iter()
                    .flatten()
                    .map(|s| s.parse())
                    .collect::<Result<Vec<GaussianRational>>>()?;
                Matrix::new(n, n, entries)
            })
            .collect::<Result<Vec<_>>>()?;
        CohomologyAction::new(maps)
    }
}

/// A rational function as an expression over named variables.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatFuncFile {
    pub format: u32,
    pub variables: Vec<String>,
    pub expr: String,
}

impl RatFuncFile {
    pub fn new(f: &RatFunc, names: &VarNames) -> Self {
        Self {
            format: FORMAT_VERSION,
            variables: names.0.clone(),
            expr: f.display_with(names).to_string(),
        }
    }

    pub fn to_ratfunc(&self) -> Result<(RatFunc, VarNames)> {
        let names = VarNames::new(self.variables.iter().cloned());
        let (f, _) = parse_ratfunc(&self.expr, Some(&names))?;
        Ok((f, names))
    }
}

/// A rational function expected either exactly or up to `±monomial`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedRatFunc {
    pub variables: Vec<String>,
    pub expr: String,
    #[serde(default)]
    pub up_to_units: bool,
}

impl ExpectedRatFunc {
    /// Whether `f` matches, and a description of the mismatch otherwise.
    pub fn matches(&self, f: &RatFunc) -> Result<bool> {
        let names = VarNames::new(self.variables.iter().cloned());
        let (want, _) = parse_ratfunc(&self.expr, Some(&names))?;
        if want.nvars() != f.nvars() && want.nvars() != 0 && f.nvars() != 0 {
            return Ok(false);
        }
        if self.up_to_units {
            Ok(
                matches!(f.unit_ratio(&want), Some((c, _)) if c == GaussianRational::from_int(1) || c == GaussianRational::from_int(-1)),
            )
        } else {
            Ok(*f == want)
        }
    }
}

/// Expected-value sidecar of a corpus entry. Every present field is checked.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedFile {
    pub format: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub acyclic: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torsion: Option<ExpectedRatFunc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alexander: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta: Option<ExpectedRatFunc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lefschetz: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Names of the bundled corpus entries.
pub const CORPUS: [&str; 5] = ["circle", "torus", "trefoil", "figure-eight", "cat-map"];

/// The corpus directory: `$TORSIONLAB_CORPUS`, else the one shipped with
/// the sources.
pub fn corpus_dir() -> PathBuf {
    match std::env::var_os(CORPUS_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus"),
    }
}

/// `<dir>/<name>.json` for the complex, `<dir>/<name>.<kind>.json` for
/// companion files such as `rep`, `expected`, `orbits` or `action`.
pub fn corpus_file(dir: &Path, name: &str, kind: &str) -> PathBuf {
    if kind.is_empty() || kind == "complex" {
        dir.join(format!("{name}.json"))
    } else {
        dir.join(format!("{name}.{kind}.json"))
    }
}
