use serde::Serialize;

use super::{DegenError, DegenOptions};
use crate::groebner::{initial_ideal, Ideal, InitialSpec};
use crate::intlat::{weight_from_matrix, IntMatrix};
use crate::polycore::Convention;
use crate::toric::{toric_ideal, Semigroup};

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub w: Vec<i64>,
    pub convention: Convention,
    pub init: Ideal,
    pub semigroup: Semigroup,
    pub toric: Ideal,
    pub binomial_prime: bool,
}

/// `m` with a degree row: the first row of ones if `m` has one, otherwise
/// a prepended row of the ideal's degrees. Returns the matrix and the index
/// of its degree row.
pub(crate) fn graded_value_matrix(ideal: &Ideal, m: &IntMatrix) -> Result<(IntMatrix, usize), DegenError> {
    if m.cols() != ideal.nvars() {
        return Err(DegenError::InvalidArgument(format!(
            "matrix has {} columns for {} variables",
            m.cols(),
            ideal.nvars()
        )));
    }
    let rows = m.to_i64_rows()?;
    if let Some(r) = rows.iter().position(|row| row.iter().all(|&x| x == 1)) {
        return Ok((m.clone(), r));
    }
    let degrees = ideal.effective_grading().weights().to_vec();
    Ok((IntMatrix::from_rows(&[degrees])?.vstack(m)?, 0))
}

/// Value semigroup generated by the columns of [`graded_value_matrix`],
/// labelled by the variables.
pub fn value_semigroup(ideal: &Ideal, m: &IntMatrix) -> Result<Semigroup, DegenError> {
    let (g, r) = graded_value_matrix(ideal, m)?;
    Ok(Semigroup::from_columns(&g, Some(r), Some(ideal.vars().to_vec()))?)
}

/// Certified weight, initial ideal and the comparison of the initial ideal
/// with the toric ideal of the value semigroup.
pub fn valuation_pipeline(ideal: &Ideal, m: &IntMatrix, opts: &DegenOptions) -> Result<PipelineReport, DegenError> {
    let (graded, _) = graded_value_matrix(ideal, m)?;
    let semigroup = value_semigroup(ideal, m)?;
    opts.check()?;
    let w = weight_from_matrix(ideal, m, opts.convention)?;
    opts.check()?;
    let init = initial_ideal(
        ideal,
        &InitialSpec::Weight {
            w: w.clone(),
            convention: opts.convention,
        },
    )?;
    opts.check()?;
    let toric = toric_ideal(&graded, ideal.vars())?;
    let binomial_prime = init.gens() == toric.gens();
    Ok(PipelineReport {
        w,
        convention: opts.convention,
        init,
        semigroup,
        toric,
        binomial_prime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_matrix_keeps_ideal() {
        let j = Ideal::parse(&["a", "b", "c"], &["a*c - b^2"]).unwrap();
        let m = IntMatrix::from_rows(&[vec![0, 0, 0]]).unwrap();
        let r = valuation_pipeline(&j, &m, &DegenOptions::default()).unwrap();
        assert_eq!(r.w, vec![0, 0, 0]);
        assert!(r.init.same_ideal(&j).unwrap());
        // all columns equal (1, 0): the toric ideal is (a - b, b - c)
        assert!(!r.binomial_prime);
    }

    #[test]
    fn conic_with_values() {
        // a, b, c ↦ values 0, 1, 2: in(J) = J itself and k[S] = k[a,b,c]/(ac - b^2)
        let j = Ideal::parse(&["a", "b", "c"], &["a*c - b^2"]).unwrap();
        let m = IntMatrix::from_rows(&[vec![0, 1, 2]]).unwrap();
        let r = valuation_pipeline(&j, &m, &DegenOptions::default()).unwrap();
        assert!(r.binomial_prime);
        assert_eq!(r.semigroup.gens(), &[vec![1, 0], vec![1, 1], vec![1, 2]]);
    }
}
