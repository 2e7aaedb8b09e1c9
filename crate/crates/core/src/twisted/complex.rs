use super::word::{fox_derivative, GroupRingElt, Word};
use crate::error::{Error, Result};
use crate::variety::Shape;

/// A finite presentation `⟨g_1, …, g_n | R_1, …, R_m⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: usize,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: usize, relators: Vec<Word>) -> Result<Self> {
        for r in &relators {
            if r.is_identity() {
                return Err(Error::Format(
                    "relators must be nonempty after free reduction".into(),
                ));
            }
            if r.max_generator() > generators {
                return Err(Error::Format(format!(
                    "relator {r} uses a generator beyond {generators}"
                )));
            }
        }
        Ok(Self {
            generators,
            relators,
        })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }
}

/// Dense matrix of group-ring elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GroupRingElt>,
}

impl GroupRingMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<GroupRingElt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![GroupRingElt::zero(); rows * cols],
        }
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> GroupRingElt,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingElt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GroupRingElt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[GroupRingElt] {
        &self.entries
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(GroupRingElt::zero(), |acc, k| {
                acc + self.get(i, k) * rhs.get(k, j)
            })
        }))
    }

    pub fn map(&self, f: impl Fn(&GroupRingElt) -> GroupRingElt) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn max_generator(&self) -> usize {
        self.entries
            .iter()
            .map(GroupRingElt::max_generator)
            .max()
            .unwrap_or(0)
    }
}

/// A cochain complex of free modules over the group ring.
///
/// `shape` counts cells per degree; `diffs[i]` has size `k_{i+1} × k_i`.
/// Relators are informational: `d² = 0` is checked after evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingComplex {
    generators: usize,
    relators: Vec<Word>,
    shape: Shape,
    diffs: Vec<GroupRingMatrix>,
}

impl GroupRingComplex {
    pub fn new(
        generators: usize,
        relators: Vec<Word>,
        shape: Shape,
        diffs: Vec<GroupRingMatrix>,
    ) -> Result<Self> {
        if shape.is_empty() || diffs.len() + 1 != shape.len() {
            return Err(Error::Dimension(format!(
                "{} differentials for a shape of length {}",
                diffs.len(),
                shape.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.rows() != shape.0[i + 1] || d.cols() != shape.0[i] {
                return Err(Error::Dimension(format!(
                    "d^{i} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    shape.0[i + 1],
                    shape.0[i]
                )));
            }
            if d.max_generator() > generators {
                return Err(Error::Dimension(format!(
                    "d^{i} uses a generator beyond {generators}"
                )));
            }
        }
        for r in &relators {
            if r.max_generator() > generators {
                return Err(Error::Dimension(format!(
                    "relator {r} uses a generator beyond {generators}"
                )));
            }
        }
        Ok(Self {
            generators,
            relators,
            shape,
            diffs,
        })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn diffs(&self) -> &[GroupRingMatrix] {
        &self.diffs
    }
}

/// The cochain complex of the presentation 2-complex: shape
/// `(1, #generators, #relators)`, `d⁰` the column `(g_i − 1)` and `d¹` the
/// Fox Jacobian `(∂R_j/∂g_i)`.
pub fn presentation_complex(p: &Presentation) -> GroupRingComplex {
    let n = p.generators();
    let m = p.relators().len();
    let d0 = GroupRingMatrix::from_fn(n, 1, |i, _| GroupRingElt::generator_minus_one(i as i32 + 1));
    let d1 = GroupRingMatrix::from_fn(m, n, |j, i| fox_derivative(&p.relators()[j], i + 1));
    GroupRingComplex::new(n, p.relators().to_vec(), Shape(vec![1, n, m]), vec![d0, d1])
        .expect("presentation complex is well formed")
}
