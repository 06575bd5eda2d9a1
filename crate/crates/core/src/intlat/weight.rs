use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{IntMatrix, LatticeError};
use crate::groebner::{buchberger, initial_ideal, Ideal, InitialSpec};
use crate::polycore::{initial_form, initial_form_matrix, Convention, TermOrder};

/// Largest base tried by [`weight_from_matrix`].
pub const DEFAULT_WEIGHT_BOUND: i64 = 1 << 20;

/// Adds a new first row so that every column sums to the largest column sum
/// `c` of `a`.
pub fn homogenize_matrix(a: &IntMatrix) -> Result<IntMatrix, LatticeError> {
    if a.cols() == 0 {
        return Err(LatticeError::Empty);
    }
    let sums = a.column_sums();
    let c = sums.iter().max().expect("nonempty").clone();
    if !c.is_positive() {
        return Err(LatticeError::NegativeEntryUnresolvable(c));
    }
    let top: Vec<BigInt> = sums.iter().map(|s| &c - s).collect();
    let mut rows = vec![top];
    rows.extend(a.row_vecs());
    IntMatrix::from_big_rows(rows)
}

/// `(r+1)×(r+1)` matrix with first row `(N, -1, ..., -1)` and identity below,
/// sending `(1, a)` to `(N - Σa, a)`.
pub fn iota_matrix(n: &BigInt, r: usize) -> Result<IntMatrix, LatticeError> {
    if r == 0 {
        return Err(LatticeError::Empty);
    }
    let mut m = IntMatrix::identity(r + 1);
    m.set(0, 0, n.clone());
    for j in 1..=r {
        m.set(0, j, -BigInt::one());
    }
    Ok(m)
}

/// Images under ι of the columns of `gens`, whose row 0 is the degree.
/// Fails with `NTooSmall` when an image has a negative entry.
pub fn iota_images(n: &BigInt, gens: &IntMatrix) -> Result<IntMatrix, LatticeError> {
    if gens.rows() < 2 {
        return Err(LatticeError::Empty);
    }
    let iota = iota_matrix(n, gens.rows() - 1)?;
    // ι acts on (deg, a); generators of degree d map to (dN - Σa, a)
    let images = iota.mul(gens)?;
    for j in 0..images.cols() {
        if images.column(j).iter().any(|x| x.is_negative()) {
            return Err(LatticeError::NTooSmall {
                n: n.clone(),
                generator: j,
            });
        }
    }
    Ok(images)
}

/// Integer weight `w` with `in_w(J) = in_M(J)`, searching bases `B = 2, 4, …`
/// up to [`DEFAULT_WEIGHT_BOUND`].
pub fn weight_from_matrix(ideal: &Ideal, m: &IntMatrix, convention: Convention) -> Result<Vec<i64>, LatticeError> {
    weight_from_matrix_with_bound(ideal, m, convention, DEFAULT_WEIGHT_BOUND)
}

pub fn weight_from_matrix_with_bound(
    ideal: &Ideal,
    m: &IntMatrix,
    convention: Convention,
    bound: i64,
) -> Result<Vec<i64>, LatticeError> {
    let n = ideal.nvars();
    if m.cols() != n {
        return Err(LatticeError::DimensionMismatch {
            expected: n,
            found: m.cols(),
        });
    }
    let rows = m.to_i64_rows()?;
    if rows.is_empty() {
        return Ok(vec![0; n]);
    }
    let target = initial_ideal(
        ideal,
        &InitialSpec::Matrix {
            rows: rows.clone(),
            convention,
        },
    )?;
    let marked = buchberger(ideal, &TermOrder::matrix(rows.clone(), convention, n))?.elements();
    let mut expected = Vec::with_capacity(marked.len());
    for g in &marked {
        expected.push(initial_form_matrix(g, &rows, convention).map_err(crate::groebner::GroebnerError::from)?);
    }
    let d = rows.len();
    let mut base: i64 = 2;
    while base <= bound {
        let Some(w) = combine(&rows, base) else { break };
        let mut agrees = true;
        for (g, e) in marked.iter().zip(&expected) {
            if &initial_form(g, &w, convention).map_err(crate::groebner::GroebnerError::from)? != e {
                agrees = false;
                break;
            }
        }
        if agrees || d == 1 {
            let got = initial_ideal(
                ideal,
                &InitialSpec::Weight {
                    w: w.clone(),
                    convention,
                },
            )?;
            if got.gens() == target.gens() {
                return Ok(w);
            }
        }
        base = match base.checked_mul(2) {
            Some(b) => b,
            None => break,
        };
    }
    Err(LatticeError::NoCertificate { bound })
}

/// `Σ_k base^{d-1-k} · row_k`, or `None` on overflow.
fn combine(rows: &[Vec<i64>], base: i64) -> Option<Vec<i64>> {
    let d = rows.len();
    let n = rows[0].len();
    let mut w = vec![BigInt::zero(); n];
    let mut scale = BigInt::one();
    for k in (0..d).rev() {
        for (wj, &r) in w.iter_mut().zip(&rows[k]) {
            *wj += &scale * r;
        }
        scale *= base;
    }
    w.iter().map(|x| x.to_i64()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elliptic_homogenization() {
        let a = IntMatrix::from_rows(&[vec![0, 1, 3]]).unwrap();
        let h = homogenize_matrix(&a).unwrap();
        assert_eq!(h, IntMatrix::from_rows(&[vec![3, 2, 0], vec![0, 1, 3]]).unwrap());
    }

    #[test]
    fn equal_column_sums_get_zero_row() {
        let a = IntMatrix::from_rows(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        let h = homogenize_matrix(&a).unwrap();
        assert_eq!(h.row(0), &[BigInt::zero(), BigInt::zero(), BigInt::zero()]);
    }

    #[test]
    fn negative_column_sums_rejected() {
        let a = IntMatrix::from_rows(&[vec![-1, -2]]).unwrap();
        assert!(matches!(
            homogenize_matrix(&a),
            Err(LatticeError::NegativeEntryUnresolvable(_))
        ));
    }

    #[test]
    fn iota_on_elliptic_semigroup() {
        let gens = IntMatrix::from_columns(&[vec![1, 0], vec![1, 1], vec![1, 3]]).unwrap();
        let img = iota_images(&BigInt::from(3), &gens).unwrap();
        assert_eq!(img, IntMatrix::from_columns(&[vec![3, 0], vec![2, 1], vec![0, 3]]).unwrap());
        assert!(matches!(
            iota_images(&BigInt::from(2), &gens),
            Err(LatticeError::NTooSmall { generator: 2, .. })
        ));
        let one = IntMatrix::from_columns(&[vec![1, 0]]).unwrap();
        assert_eq!(iota_images(&BigInt::one(), &one).unwrap(), one);
    }

    #[test]
    fn iota_determinant() {
        for n in 1..6 {
            for r in 1..5 {
                let m = iota_matrix(&BigInt::from(n), r).unwrap();
                assert_eq!(m.determinant().unwrap(), BigInt::from(n));
            }
        }
    }

    #[test]
    fn single_row_is_returned() {
        let j = Ideal::parse(&["x", "y", "z"], &["y^2*z - x^3 + x*z^2"]).unwrap();
        let m = IntMatrix::from_rows(&[vec![1, 0, 3]]).unwrap();
        assert_eq!(weight_from_matrix(&j, &m, Convention::Min).unwrap(), vec![1, 0, 3]);
    }

    #[test]
    fn two_rows_combine() {
        let j = Ideal::parse(&["x", "y", "z"], &["y^2*z - x^3 + x*z^2"]).unwrap();
        // first row ties all three terms; the second separates x*z^2
        let m = IntMatrix::from_rows(&[vec![1, 1, 1], vec![1, 0, 3]]).unwrap();
        let w = weight_from_matrix(&j, &m, Convention::Min).unwrap();
        let a = initial_ideal(&j, &InitialSpec::Weight { w, convention: Convention::Min }).unwrap();
        assert_eq!(a.gens()[0].to_string(), "x^3 - y^2*z");
    }

    #[test]
    fn dimension_checked() {
        let j = Ideal::parse(&["x", "y"], &["x - y"]).unwrap();
        let m = IntMatrix::from_rows(&[vec![1, 0, 3]]).unwrap();
        assert!(matches!(
            weight_from_matrix(&j, &m, Convention::Min),
            Err(LatticeError::DimensionMismatch { .. })
        ));
    }
}
