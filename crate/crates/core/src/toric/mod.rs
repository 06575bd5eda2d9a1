//! Toric ideals, value semigroups and their polytopes.

mod fm;
mod polytope;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groebner::{saturate_by_variable, GroebnerError, Ideal};
use crate::intlat::{iota_images, kernel_lattice, IntMatrix, LatticeError};
use crate::polycore::{Coeff, Exponent, Grading, PolyError, Polynomial, VarList};

pub use polytope::{HalfSpaces, PolytopeQ};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("semigroup has no generators")]
    Empty,
    #[error("generators have different lengths")]
    Ragged,
    #[error("generator {0} has non-positive degree")]
    NonPositiveDegree(usize),
    #[error("semigroup is not generated in degree one")]
    NotDegreeOneGenerated,
    #[error("torus parameter {0} is zero")]
    ZeroParameter(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Finitely generated semigroup in `ℤ^{1+r}`. `degree_coord` names the
/// grading coordinate; `None` means the grading is by total degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Semigroup {
    #[serde(default = "default_degree_coord")]
    degree_coord: Option<usize>,
    gens: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

fn default_degree_coord() -> Option<usize> {
    Some(0)
}

impl Semigroup {
    /// Validates and deduplicates (keeping first occurrences) the generators.
    pub fn new(gens: Vec<Vec<i64>>, degree_coord: Option<usize>, labels: Option<Vec<String>>) -> Result<Self, ToricError> {
        let len = gens.first().ok_or(ToricError::Empty)?.len();
        if gens.iter().any(|g| g.len() != len) {
            return Err(ToricError::Ragged);
        }
        if let Some(l) = &labels {
            if l.len() != gens.len() {
                return Err(ToricError::DimensionMismatch {
                    expected: gens.len(),
                    found: l.len(),
                });
            }
        }
        if let Some(c) = degree_coord {
            if c >= len {
                return Err(ToricError::InvalidArgument(format!("degree coordinate {c} out of range")));
            }
        }
        let mut out_g: Vec<Vec<i64>> = Vec::new();
        let mut out_l: Vec<String> = Vec::new();
        for (i, g) in gens.into_iter().enumerate() {
            if out_g.contains(&g) {
                continue;
            }
            if let Some(l) = &labels {
                out_l.push(l[i].clone());
            }
            out_g.push(g);
        }
        let s = Semigroup {
            degree_coord,
            gens: out_g,
            labels: labels.map(|_| out_l),
        };
        for i in 0..s.gens.len() {
            if s.degree(i) <= 0 {
                return Err(ToricError::NonPositiveDegree(i));
            }
        }
        Ok(s)
    }

    /// Semigroup generated by the columns of `m`.
    pub fn from_columns(m: &IntMatrix, degree_coord: Option<usize>, labels: Option<Vec<String>>) -> Result<Self, ToricError> {
        let gens = (0..m.cols()).map(|j| m.column_i64(j)).collect::<Result<Vec<_>, _>>()?;
        Self::new(gens, degree_coord, labels)
    }

    /// Columns `(1, a_j)` for value vectors `a_j`.
    pub fn from_values(values: &[Vec<i64>], labels: Option<Vec<String>>) -> Result<Self, ToricError> {
        let gens = values
            .iter()
            .map(|a| std::iter::once(1).chain(a.iter().copied()).collect())
            .collect();
        Self::new(gens, Some(0), labels)
    }

    pub fn gens(&self) -> &[Vec<i64>] {
        &self.gens
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn degree_coord(&self) -> Option<usize> {
        self.degree_coord
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Length of the generator vectors, `1 + r`.
    pub fn ambient_len(&self) -> usize {
        self.gens[0].len()
    }

    pub fn degree(&self, i: usize) -> i64 {
        match self.degree_coord {
            Some(c) => self.gens[i][c],
            None => self.gens[i].iter().sum(),
        }
    }

    /// Generator `i` without its degree coordinate.
    pub fn value_part(&self, i: usize) -> Vec<i64> {
        match self.degree_coord {
            Some(c) => self.gens[i]
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != c)
                .map(|(_, &x)| x)
                .collect(),
            None => self.gens[i].clone(),
        }
    }

    pub fn is_degree_one_generated(&self) -> bool {
        (0..self.len()).all(|i| self.degree(i) == 1)
    }

    /// Generators as the columns of a matrix.
    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(&self.gens).expect("rectangular")
    }

    pub fn rank(&self) -> usize {
        self.matrix().rank()
    }

    fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("g{i}"),
        }
    }
}

/// Lattice ideal of `ker A`: kernel-basis binomials saturated by each variable.
pub fn toric_ideal(a: &IntMatrix, names: &VarList) -> Result<Ideal, ToricError> {
    if names.len() != a.cols() {
        return Err(ToricError::DimensionMismatch {
            expected: a.cols(),
            found: names.len(),
        });
    }
    let n = a.cols();
    let mut gens = Vec::new();
    for u in kernel_lattice(a) {
        let mut plus = vec![0u32; n];
        let mut minus = vec![0u32; n];
        for (j, x) in u.iter().enumerate() {
            let e = x.abs().to_u32().ok_or(PolyError::ExponentOverflow)?;
            if x.is_positive() {
                plus[j] = e;
            } else {
                minus[j] = e;
            }
        }
        gens.push(Polynomial::binomial(names, Exponent::new(plus), Exponent::new(minus)));
    }
    let mut ideal = Ideal::new(names, gens)?;
    if !ideal.is_zero() {
        for v in 0..n {
            ideal = saturate_by_variable(&ideal, v)?;
        }
    }
    let grading = positive_row(a);
    Ok(ideal.clone().with_grading(grading).unwrap_or(ideal))
}

/// A row of `a` with all entries positive, as a grading (standard if constant).
fn positive_row(a: &IntMatrix) -> Option<Grading> {
    let rows = a.to_i64_rows().ok()?;
    let row = rows.into_iter().find(|r| !r.is_empty() && r.iter().all(|&x| x > 0))?;
    if row.iter().all(|&x| x == row[0]) {
        return None;
    }
    Grading::new(row).ok()
}

/// `Δ(S)`: hull of `a_i / n_i` over generators `(n_i, a_i)`.
pub fn delta_polytope(s: &Semigroup) -> PolytopeQ {
    let pts: Vec<Vec<Coeff>> = (0..s.len())
        .map(|i| {
            let d = BigInt::from(s.degree(i));
            s.value_part(i)
                .into_iter()
                .map(|x| Coeff::new(BigInt::from(x), d.clone()))
                .collect()
        })
        .collect();
    let dim = pts[0].len();
    PolytopeQ::hull(pts, dim)
}

/// All sums of `n` generators, deduplicated. When every sum has degree
/// divisible by `n` the degree coordinate is divided by `n`.
pub fn veronese(s: &Semigroup, n: usize) -> Result<Semigroup, ToricError> {
    if n == 0 {
        return Err(ToricError::InvalidArgument("Veronese degree must be positive".into()));
    }
    let k = s.len();
    let len = s.ambient_len();
    let mut sums: Vec<Vec<i64>> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let mut v = vec![0i64; len];
        for &i in &idx {
            for (x, y) in v.iter_mut().zip(&s.gens[i]) {
                *x = x
                    .checked_add(*y)
                    .ok_or_else(|| ToricError::InvalidArgument("entry overflow".into()))?;
            }
        }
        sums.push(v);
        labels.push(idx.iter().map(|&i| s.label(i)).collect::<Vec<_>>().join("*"));
        // next non-decreasing index tuple
        let Some(p) = (0..n).rev().find(|&p| idx[p] + 1 < k) else { break };
        let next = idx[p] + 1;
        for q in idx.iter_mut().skip(p) {
            *q = next;
        }
    }
    let n64 = n as i64;
    let renormalize = sums.iter().all(|v| match s.degree_coord {
        Some(c) => v[c] % n64 == 0,
        None => false,
    });
    if renormalize {
        let c = s.degree_coord.expect("checked");
        for v in &mut sums {
            v[c] /= n64;
        }
    }
    let labels = s.labels.as_ref().map(|_| labels);
    Semigroup::new(sums, s.degree_coord, labels)
}

/// `(N, ι(S))` with `N = max Σa` over generators (at least 1); the image is
/// graded by total degree.
pub fn embed_semigroup(s: &Semigroup) -> Result<(BigInt, Semigroup), ToricError> {
    if !s.is_degree_one_generated() {
        return Err(ToricError::NotDegreeOneGenerated);
    }
    let c = s.degree_coord.ok_or(ToricError::NotDegreeOneGenerated)?;
    let n = (0..s.len())
        .map(|i| s.value_part(i).iter().sum::<i64>())
        .max()
        .unwrap_or(0)
        .max(1);
    let n = BigInt::from(n);
    // put the degree coordinate first so ι acts on (1, a)
    let cols: Vec<Vec<i64>> = (0..s.len())
        .map(|i| std::iter::once(s.gens[i][c]).chain(s.value_part(i)).collect())
        .collect();
    let images = iota_images(&n, &IntMatrix::from_columns(&cols)?)?;
    let image = Semigroup::from_columns(&images, None, s.labels.clone())?;
    Ok((n, image))
}

/// `[∏_i t_i^{A[i][j]}]_j`, normalized so the first nonzero coordinate is 1.
pub fn torus_point(a: &IntMatrix, t: &[Coeff]) -> Result<Vec<Coeff>, ToricError> {
    if t.len() != a.rows() {
        return Err(ToricError::DimensionMismatch {
            expected: a.rows(),
            found: t.len(),
        });
    }
    if let Some(i) = t.iter().position(|x| x.is_zero()) {
        return Err(ToricError::ZeroParameter(i));
    }
    let mut pt = Vec::with_capacity(a.cols());
    for j in 0..a.cols() {
        let mut v = Coeff::one();
        for (i, ti) in t.iter().enumerate() {
            let e = a.get(i, j);
            let k = e.abs().to_usize().ok_or(LatticeError::OutOfRange)?;
            let p = num_traits::pow(ti.clone(), k);
            if e.is_negative() {
                v /= p;
            } else {
                v *= p;
            }
        }
        pt.push(v);
    }
    let first = pt[0].clone();
    if !first.is_zero() {
        for x in &mut pt {
            *x /= &first;
        }
    }
    Ok(pt)
}
