use std::cmp::Ordering;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::fm::{hull_constraints, in_hull};
use crate::polycore::Coeff;

/// Convex hull of finitely many rational points, stored by its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeQ {
    vertices: Vec<Vec<Coeff>>,
    dim_ambient: usize,
}

/// Half-space description `eqs: a·x = b`, `ineqs: a·x ≤ b`.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfSpaces {
    pub eqs: Vec<(Vec<f64>, f64)>,
    pub ineqs: Vec<(Vec<f64>, f64)>,
}

impl HalfSpaces {
    /// Largest constraint violation at `x` (0 when inside).
    pub fn violation(&self, x: &[f64]) -> f64 {
        let dot = |a: &[f64]| a.iter().zip(x).map(|(p, q)| p * q).sum::<f64>();
        let e = self.eqs.iter().map(|(a, b)| (dot(a) - b).abs() / norm(a));
        let i = self.ineqs.iter().map(|(a, b)| ((dot(a) - b) / norm(a)).max(0.0));
        e.chain(i).fold(0.0, f64::max)
    }
}

fn norm(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt().max(f64::MIN_POSITIVE)
}

fn lex_cmp(a: &[Coeff], b: &[Coeff]) -> Ordering {
    a.iter().cmp(b.iter())
}

impl PolytopeQ {
    /// Hull of `points`; keeps exactly the points outside the hull of the
    /// others, sorted lexicographically.
    pub fn hull(points: Vec<Vec<Coeff>>, dim_ambient: usize) -> Self {
        let mut pts = points;
        pts.sort_by(|a, b| lex_cmp(a, b));
        pts.dedup();
        let vertices = (0..pts.len())
            .filter(|&i| {
                let others: Vec<Vec<Coeff>> = pts
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, p)| p.clone())
                    .collect();
                !in_hull(&others, &pts[i])
            })
            .map(|i| pts[i].clone())
            .collect();
        PolytopeQ { vertices, dim_ambient }
    }

    pub fn vertices(&self) -> &[Vec<Coeff>] {
        &self.vertices
    }

    pub fn dim_ambient(&self) -> usize {
        self.dim_ambient
    }

    pub fn contains(&self, p: &[Coeff]) -> bool {
        p.len() == self.dim_ambient && in_hull(&self.vertices, p)
    }

    pub fn is_vertex(&self, p: &[Coeff]) -> bool {
        self.vertices.iter().any(|v| v.as_slice() == p)
    }

    /// `max_{v} ⟨dir, v⟩`.
    pub fn support(&self, dir: &[Coeff]) -> Coeff {
        self.vertices
            .iter()
            .map(|v| v.iter().zip(dir).map(|(a, b)| a * b).sum::<Coeff>())
            .max()
            .unwrap_or_else(Coeff::zero)
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> usize {
        if self.vertices.len() <= 1 {
            return 0;
        }
        let base = &self.vertices[0];
        let mut rows: Vec<Vec<Coeff>> = self.vertices[1..]
            .iter()
            .map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        rational_rank(&mut rows)
    }

    pub fn scaled(&self, k: &Coeff) -> PolytopeQ {
        let mut vertices: Vec<Vec<Coeff>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x * k).collect())
            .collect();
        if k.is_negative() {
            vertices.sort_by(|a, b| lex_cmp(a, b));
        }
        PolytopeQ {
            vertices,
            dim_ambient: self.dim_ambient,
        }
    }

    /// Float half-space description, for containment tests on samples.
    pub fn half_spaces(&self) -> HalfSpaces {
        let to_f = |a: &[Coeff]| a.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect::<Vec<_>>();
        if self.vertices.is_empty() {
            return HalfSpaces {
                eqs: Vec::new(),
                ineqs: vec![(vec![0.0; self.dim_ambient], -1.0)],
            };
        }
        let sys = hull_constraints(&self.vertices, self.dim_ambient);
        HalfSpaces {
            eqs: sys.eqs.iter().map(|r| (to_f(&r.a), r.b.to_f64().unwrap_or(f64::NAN))).collect(),
            ineqs: sys
                .ineqs
                .iter()
                .map(|r| (to_f(&r.a), r.b.to_f64().unwrap_or(f64::NAN)))
                .collect(),
        }
    }

    /// Vertices as floats.
    pub fn vertices_f64(&self) -> Vec<Vec<f64>> {
        self.vertices
            .iter()
            .map(|v| v.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
            .collect()
    }

    /// Vertices of the projection to coordinates `(i, j)` in counter-clockwise
    /// order (exact monotone chain). Degenerate projections give one or two points.
    pub fn outline_2d(&self, i: usize, j: usize) -> Vec<(Coeff, Coeff)> {
        let mut pts: Vec<(Coeff, Coeff)> = self
            .vertices
            .iter()
            .map(|v| (v[i].clone(), v[j].clone()))
            .collect();
        pts.sort();
        pts.dedup();
        if pts.len() <= 2 {
            return pts;
        }
        let cross = |o: &(Coeff, Coeff), a: &(Coeff, Coeff), b: &(Coeff, Coeff)| {
            (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
        };
        let mut lower: Vec<(Coeff, Coeff)> = Vec::new();
        for p in &pts {
            while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<(Coeff, Coeff)> = Vec::new();
        for p in pts.iter().rev() {
            while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
                upper.pop();
            }
            upper.push(p.clone());
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        lower
    }
}

/// Rank over ℚ by Gaussian elimination (destroys `rows`).
pub(crate) fn rational_rank(rows: &mut [Vec<Coeff>]) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let piv = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let k = &rows[r][c] / &piv;
                let src = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(&src) {
                    *x -= &k * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn coeff_string(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl Serialize for PolytopeQ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let verts: Vec<Vec<String>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(coeff_string).collect())
            .collect();
        let mut st = s.serialize_struct("PolytopeQ", 2)?;
        st.serialize_field("dim_ambient", &self.dim_ambient)?;
        st.serialize_field("vertices", &verts)?;
        st.end()
    }
}
