//! Moment maps of torus orbits, sampled in double precision.

mod svg;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::intlat::IntMatrix;
use crate::toric::PolytopeQ;

pub use svg::{emit_svg, render_svg};

/// Half-width of the interval the log-moduli of torus parameters are drawn from.
pub const LOG_MODULUS_RANGE: f64 = 3.0;

#[derive(Debug, Error)]
pub enum MomentError {
    #[error("point has no nonzero coordinate")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("weight matrix entry does not fit in 64 bits")]
    EntryTooLarge,
    #[error("projection index {0} out of range")]
    BadProjection(usize),
    #[error("writing svg: {0}")]
    Io(#[from] std::io::Error),
}

/// Point of projective space, rescaled so the largest modulus is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPoint {
    coords: Vec<Complex64>,
}

impl ComplexPoint {
    pub fn new(coords: Vec<Complex64>) -> Result<Self, MomentError> {
        let max = coords.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if max <= 0.0 || !max.is_finite() {
            return Err(MomentError::ZeroVector);
        }
        Ok(ComplexPoint {
            coords: coords.into_iter().map(|z| z / max).collect(),
        })
    }

    pub fn from_real(coords: &[f64]) -> Result<Self, MomentError> {
        Self::new(coords.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentSample {
    pub value: Vec<f64>,
    /// Torus parameter as `(re, im)` pairs.
    pub source_t: Vec<(f64, f64)>,
}

/// Fraction of samples in the polytope and how far its vertices are from the
/// nearest sample.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ImageComparison {
    pub inside_fraction: f64,
    pub coverage_gap: f64,
}

fn weight_rows(a: &IntMatrix) -> Result<Vec<Vec<i64>>, MomentError> {
    a.to_i64_rows().map_err(|_| MomentError::EntryTooLarge)
}

/// `Σ |z_j|² a_j / Σ |z_j|²` for the columns `a_j` of `a`.
pub fn moment(a: &IntMatrix, z: &ComplexPoint) -> Result<Vec<f64>, MomentError> {
    if a.cols() != z.len() {
        return Err(MomentError::DimensionMismatch {
            expected: a.cols(),
            found: z.len(),
        });
    }
    let rows = weight_rows(a)?;
    let sq: Vec<f64> = z.coords.iter().map(|c| c.norm_sqr()).collect();
    moment_from_squares(&rows, &sq)
}

fn moment_from_squares(rows: &[Vec<i64>], sq: &[f64]) -> Result<Vec<f64>, MomentError> {
    let total: f64 = sq.iter().sum();
    if total <= 0.0 || total.is_nan() {
        return Err(MomentError::ZeroVector);
    }
    Ok(rows
        .iter()
        .map(|row| row.iter().zip(sq).map(|(&a, &s)| a as f64 * s).sum::<f64>() / total)
        .collect())
}

/// Orbit point `(t^{a_0} : … : t^{a_q})`, computed through logarithms so that
/// large exponents do not overflow.
pub fn torus_point_f64(a: &IntMatrix, t: &[Complex64]) -> Result<ComplexPoint, MomentError> {
    if t.len() != a.rows() {
        return Err(MomentError::DimensionMismatch {
            expected: a.rows(),
            found: t.len(),
        });
    }
    if t.iter().any(|x| x.norm() == 0.0) {
        return Err(MomentError::ZeroVector);
    }
    let rows = weight_rows(a)?;
    let (logs, args) = orbit_logs(&rows, t, a.cols());
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    ComplexPoint::new(
        logs.iter()
            .zip(&args)
            .map(|(&l, &th)| Complex64::from_polar((l - top).exp(), th))
            .collect(),
    )
}

fn orbit_logs(rows: &[Vec<i64>], t: &[Complex64], cols: usize) -> (Vec<f64>, Vec<f64>) {
    let mut logs = vec![0.0; cols];
    let mut args = vec![0.0; cols];
    for (row, ti) in rows.iter().zip(t) {
        let (r, th) = ti.to_polar();
        let lr = r.ln();
        for j in 0..cols {
            logs[j] += row[j] as f64 * lr;
            args[j] += row[j] as f64 * th;
        }
    }
    (logs, args)
}

/// `n` moment values of orbit points. Sample 0 is taken at `t = 1`; the rest
/// draw log-moduli uniformly from `[-L, L]` and uniform phases, using ChaCha8
/// seeded with `seed`.
pub fn sample_moment_image(a: &IntMatrix, n: usize, seed: u64) -> Result<Vec<MomentSample>, MomentError> {
    let rows = weight_rows(a)?;
    let r = a.rows();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let t: Vec<Complex64> = if k == 0 {
            vec![Complex64::new(1.0, 0.0); r]
        } else {
            (0..r)
                .map(|_| {
                    let lm = rng.gen_range(-LOG_MODULUS_RANGE..=LOG_MODULUS_RANGE);
                    let ph = rng.gen_range(0.0..std::f64::consts::TAU);
                    Complex64::from_polar(lm.exp(), ph)
                })
                .collect()
        };
        let (logs, _) = orbit_logs(&rows, &t, a.cols());
        let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let sq: Vec<f64> = logs.iter().map(|&l| (2.0 * (l - top)).exp()).collect();
        out.push(MomentSample {
            value: moment_from_squares(&rows, &sq)?,
            source_t: t.iter().map(|c| (c.re, c.im)).collect(),
        });
    }
    Ok(out)
}

/// Containment within `eps` of `p` and the largest distance from a vertex of
/// `p` to its nearest sample. An empty sample list gives fraction 1 and an
/// infinite gap.
pub fn image_vs_polytope(samples: &[MomentSample], p: &PolytopeQ, eps: f64) -> Result<ImageComparison, MomentError> {
    let d = p.dim_ambient();
    if let Some(s) = samples.iter().find(|s| s.value.len() != d) {
        return Err(MomentError::DimensionMismatch {
            expected: d,
            found: s.value.len(),
        });
    }
    let hs = p.half_spaces();
    let inside = samples.iter().filter(|s| hs.violation(&s.value) <= eps).count();
    let inside_fraction = if samples.is_empty() {
        1.0
    } else {
        inside as f64 / samples.len() as f64
    };
    let coverage_gap = p
        .vertices_f64()
        .iter()
        .map(|v| {
            samples
                .iter()
                .map(|s| s.value.iter().zip(v).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    Ok(ImageComparison {
        inside_fraction,
        coverage_gap,
    })
}
