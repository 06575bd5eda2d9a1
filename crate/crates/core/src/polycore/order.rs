//! Monomial orders.
//!
//! Every order here is induced by linear functionals, so it is compatible with
//! multiplication. `Greater` always means "preferred as leading term".
//!
//! Weight and matrix orders carry a [`Convention`]. Under `Min` the terms of
//! smallest weight lead (this matches the exponent of `t` in a Gröbner family);
//! under `Max` the largest weight leads.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{Exponent, PolyError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    #[default]
    Min,
    Max,
}

impl Convention {
    /// Weight vector expressed in the canonical `Min` convention.
    pub fn to_min(self, w: &[i64]) -> Vec<i64> {
        match self {
            Convention::Min => w.to_vec(),
            Convention::Max => w.iter().map(|x| -x).collect(),
        }
    }

    pub fn is_flipped(self) -> bool {
        self == Convention::Max
    }
}

impl std::str::FromStr for Convention {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "min" => Ok(Convention::Min),
            "max" => Ok(Convention::Max),
            other => Err(format!("unknown convention `{other}` (expected min|max)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TermOrder {
    /// Lexicographic; `perm[0]` is the most significant variable.
    Lex(Vec<usize>),
    /// Degree reverse lexicographic with `perm[0]` the largest variable.
    DegRevLex(Vec<usize>),
    Weight {
        weights: Vec<i64>,
        convention: Convention,
        tie: Box<TermOrder>,
    },
    Matrix {
        rows: Vec<Vec<i64>>,
        convention: Convention,
        tie: Box<TermOrder>,
    },
    /// Two-block elimination order: variables flagged `true` form the first
    /// (dominant) block; degrevlex inside each block.
    Elimination(Vec<bool>),
}

impl TermOrder {
    /// `x0 > x1 > ... > x_{n-1}`.
    pub fn lex(nvars: usize) -> Self {
        TermOrder::Lex((0..nvars).collect())
    }

    pub fn degrevlex(nvars: usize) -> Self {
        TermOrder::DegRevLex((0..nvars).collect())
    }

    /// Default tie-break for weight orders: lex with `x_{n-1} > ... > x0`.
    pub fn default_tie(nvars: usize) -> Self {
        TermOrder::Lex((0..nvars).rev().collect())
    }

    pub fn weight(weights: Vec<i64>, convention: Convention) -> Self {
        let n = weights.len();
        TermOrder::Weight {
            weights,
            convention,
            tie: Box::new(Self::default_tie(n)),
        }
    }

    pub fn matrix(rows: Vec<Vec<i64>>, convention: Convention, nvars: usize) -> Self {
        TermOrder::Matrix {
            rows,
            convention,
            tie: Box::new(Self::default_tie(nvars)),
        }
    }

    pub fn elimination(nvars: usize, eliminated: &[usize]) -> Self {
        let mut mask = vec![false; nvars];
        for &i in eliminated {
            mask[i] = true;
        }
        TermOrder::Elimination(mask)
    }

    /// Number of variables the order is defined on, if internally consistent.
    pub fn nvars(&self) -> Option<usize> {
        match self {
            TermOrder::Lex(p) | TermOrder::DegRevLex(p) => {
                let mut seen = vec![false; p.len()];
                for &i in p {
                    if i >= p.len() || seen[i] {
                        return None;
                    }
                    seen[i] = true;
                }
                Some(p.len())
            }
            TermOrder::Weight { weights, tie, .. } => {
                (tie.nvars()? == weights.len()).then_some(weights.len())
            }
            TermOrder::Matrix { rows, tie, .. } => {
                let n = tie.nvars()?;
                rows.iter().all(|r| r.len() == n).then_some(n)
            }
            TermOrder::Elimination(mask) => Some(mask.len()),
        }
    }

    /// Compares two exponents of matching length. Lengths are not checked here;
    /// use [`compare_monomials`] for a checked comparison.
    pub fn cmp(&self, a: &Exponent, b: &Exponent) -> Ordering {
        match self {
            TermOrder::Lex(perm) => {
                for &i in perm {
                    match a.get(i).cmp(&b.get(i)) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            TermOrder::DegRevLex(perm) => degrevlex_on(a, b, perm.iter().copied()),
            TermOrder::Weight {
                weights,
                convention,
                tie,
            } => match weight_cmp(a, b, weights, *convention) {
                Ordering::Equal => tie.cmp(a, b),
                o => o,
            },
            TermOrder::Matrix {
                rows,
                convention,
                tie,
            } => {
                for row in rows {
                    match weight_cmp(a, b, row, *convention) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                tie.cmp(a, b)
            }
            TermOrder::Elimination(mask) => {
                let first = (0..mask.len()).filter(|&i| mask[i]);
                match degrevlex_on(a, b, first) {
                    Ordering::Equal => degrevlex_on(a, b, (0..mask.len()).filter(|&i| !mask[i])),
                    o => o,
                }
            }
        }
    }

    /// True when every variable is larger than 1, i.e. the order is a well-order
    /// on monomials and Buchberger terminates on arbitrary input.
    pub fn is_well_ordering(&self, nvars: usize) -> bool {
        let one = Exponent::zero(nvars);
        (0..nvars).all(|i| self.cmp(&Exponent::unit(nvars, i), &one) == Ordering::Greater)
    }
}

fn weight_cmp(a: &Exponent, b: &Exponent, w: &[i64], convention: Convention) -> Ordering {
    let (wa, wb) = (a.dot(w), b.dot(w));
    match convention {
        Convention::Min => wb.cmp(&wa),
        Convention::Max => wa.cmp(&wb),
    }
}

/// Degrevlex restricted to the listed variables, listed from largest to smallest.
fn degrevlex_on(a: &Exponent, b: &Exponent, vars: impl DoubleEndedIterator<Item = usize> + Clone) -> Ordering {
    let da: u64 = vars.clone().map(|i| a.get(i) as u64).sum();
    let db: u64 = vars.clone().map(|i| b.get(i) as u64).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in vars.rev() {
        match a.get(i).cmp(&b.get(i)) {
            Ordering::Equal => continue,
            // smaller exponent in the smallest variable wins
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

/// Checked comparison of two monomials under `order`.
pub fn compare_monomials(order: &TermOrder, a: &Exponent, b: &Exponent) -> Result<Ordering, PolyError> {
    let n = order.nvars().ok_or(PolyError::InvalidOrder)?;
    for e in [a, b] {
        if e.len() != n {
            return Err(PolyError::DimensionMismatch {
                expected: n,
                found: e.len(),
            });
        }
    }
    Ok(order.cmp(a, b))
}
