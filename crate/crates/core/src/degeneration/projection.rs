use serde::Serialize;

use super::DegenError;
use crate::groebner::{
    eliminate, graded_dimensions, in_radical, initial_ideal, intersect, saturate_by_ideal, Ideal, InitialSpec,
};
use crate::polycore::{Convention, Exponent, Polynomial, VarList};

/// Limit of the projection family and its decomposition.
#[derive(Clone, Debug, Serialize)]
pub struct ProjectionReport {
    pub kept: Vec<String>,
    pub w: Vec<i64>,
    pub limit: Ideal,
    /// Saturation of the limit by the ideal of the dropped variables.
    pub cone_part: Ideal,
    /// `I ∩ k[kept]`.
    pub closure: Ideal,
    /// The limit with dropped variables set to zero equals the closure.
    pub scheme_check: bool,
    /// `I + (kept)` has only the origin as zero set.
    pub base_locus_empty: bool,
    /// When the base locus is empty: the limit has the same zero set as
    /// `(closure + dropped) ∩ cone_part`.
    pub setwise_check: Option<bool>,
}

/// Degenerates `I` with weight 0 on `kept` and -1 on the other variables.
pub fn projection_limit(ideal: &Ideal, kept: &[usize]) -> Result<ProjectionReport, DegenError> {
    let n = ideal.nvars();
    let mut kept = kept.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.is_empty() || kept.len() >= n || kept.iter().any(|&i| i >= n) {
        return Err(DegenError::InvalidArgument(
            "kept variables must be a nonempty proper subset".into(),
        ));
    }
    let dropped: Vec<usize> = (0..n).filter(|i| !kept.contains(i)).collect();
    let w: Vec<i64> = (0..n).map(|i| if kept.contains(&i) { 0 } else { -1 }).collect();
    let limit = initial_ideal(
        ideal,
        &InitialSpec::Weight {
            w: w.clone(),
            convention: Convention::Min,
        },
    )?
    .with_grading(ideal.grading().cloned())?;
    let center = Ideal::new(
        ideal.vars(),
        dropped.iter().map(|&v| Polynomial::var(ideal.vars(), v)).collect(),
    )?;
    let cone_part = saturate_by_ideal(&limit, &center)?;
    let closure = eliminate(ideal, &kept)?;
    let restricted = restrict_to_kept(&limit, &kept, closure.vars())?;
    let scheme_check = restricted.gens() == closure.gens();

    let vars = ideal.vars();
    let with_kept = ideal.sum(&Ideal::new(vars, kept.iter().map(|&v| Polynomial::var(vars, v)).collect())?)?;
    let mut base_locus_empty = true;
    for &v in &dropped {
        if !in_radical(&with_kept, &Polynomial::var(vars, v))? {
            base_locus_empty = false;
            break;
        }
    }
    let setwise_check = if base_locus_empty {
        let lifted = lift_from_kept(&closure, &kept, vars)?.sum(&center)?;
        let union = intersect(&lifted, &cone_part)?;
        Some(same_radical(&limit, &union)?)
    } else {
        None
    };
    Ok(ProjectionReport {
        kept: kept.iter().map(|&i| ideal.vars()[i].clone()).collect(),
        w,
        limit,
        cone_part,
        closure,
        scheme_check,
        base_locus_empty,
        setwise_check,
    })
}

/// Extends an ideal of `k[kept]` to the full ring.
fn lift_from_kept(ideal: &Ideal, kept: &[usize], vars: &VarList) -> Result<Ideal, DegenError> {
    let gens = ideal.gens().iter().map(|g| g.remap(vars, kept)).collect();
    Ok(Ideal::new(vars, gens)?)
}

fn same_radical(a: &Ideal, b: &Ideal) -> Result<bool, DegenError> {
    for (x, y) in [(a, b), (b, a)] {
        for g in x.gens() {
            if !in_radical(y, g)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Image of `I` in `k[kept]` under dropped variables ↦ 0, canonical.
fn restrict_to_kept(ideal: &Ideal, kept: &[usize], target: &VarList) -> Result<Ideal, DegenError> {
    let gens = ideal
        .gens()
        .iter()
        .map(|g| {
            Polynomial::from_terms(
                target,
                g.terms()
                    .iter()
                    .filter(|t| (0..t.exp.len()).all(|v| t.exp.get(v) == 0 || kept.contains(&v)))
                    .map(|t| {
                        let e: Vec<u32> = kept.iter().map(|&v| t.exp.get(v)).collect();
                        (t.coeff.clone(), Exponent::new(e))
                    }),
            )
        })
        .collect();
    Ok(Ideal::new(target, gens)?.canonical()?)
}

/// `(m, dim (S/I)_m, dim (S/J)_m)` for each listed degree.
pub fn hilbert_witness(a: &Ideal, b: &Ideal, degrees: &[i64]) -> Result<Vec<(i64, usize, usize)>, DegenError> {
    if !a.vars().same(b.vars()) {
        return Err(DegenError::InvalidArgument("ideals live in different rings".into()));
    }
    if !a.is_homogeneous() || !b.is_homogeneous() {
        return Err(DegenError::NotHomogeneous);
    }
    let top = degrees.iter().copied().max().unwrap_or(0).max(0);
    let da = graded_dimensions(a, top)?;
    let db = graded_dimensions(b, top)?;
    Ok(degrees
        .iter()
        .map(|&m| {
            if m < 0 {
                (m, 0, 0)
            } else {
                (m, da[m as usize], db[m as usize])
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(i: &Ideal) -> Vec<String> {
        i.gens().iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn hyperbola() {
        let i = Ideal::parse(&["x", "y", "z"], &["x*y - z^2"]).unwrap();
        let r = projection_limit(&i, &[0, 2]).unwrap();
        assert_eq!(strings(&r.limit), vec!["x*y"]);
        assert_eq!(strings(&r.cone_part), vec!["x"]);
        assert!(r.closure.is_zero());
        assert!(r.scheme_check);
        assert!(!r.base_locus_empty);
        assert_eq!(r.setwise_check, None);
    }

    #[test]
    fn twisted_cubic_decomposes() {
        let i = Ideal::parse(&["u3", "u2", "u1", "u0"], &["u2^2 - u3*u1", "u1^2 - u2*u0", "u2*u1 - u3*u0"]).unwrap();
        let r = projection_limit(&i, &[0, 1, 3]).unwrap();
        assert!(r.cone_part.is_unit().unwrap());
        assert!(r.scheme_check);
        assert!(r.base_locus_empty);
        assert_eq!(r.setwise_check, Some(true));
    }

    #[test]
    fn ideal_in_kept_variables_is_its_own_limit() {
        let i = Ideal::parse(&["a", "b", "c"], &["a^2 - b^2"]).unwrap();
        let r = projection_limit(&i, &[0, 1]).unwrap();
        assert!(r.limit.same_ideal(&i).unwrap());
        assert!(r.scheme_check);
        assert_eq!(strings(&r.closure), vec!["a^2 - b^2"]);
    }

    #[test]
    fn rejects_improper_subsets() {
        let i = Ideal::parse(&["a", "b"], &["a - b"]).unwrap();
        assert!(projection_limit(&i, &[]).is_err());
        assert!(projection_limit(&i, &[0, 1]).is_err());
    }

    #[test]
    fn witness_of_identical_ideals() {
        let i = Ideal::parse(&["x", "y", "z"], &["x*y - z^2"]).unwrap();
        let w = hilbert_witness(&i, &i, &[0, 1, 2, 3]).unwrap();
        assert!(w.iter().all(|(_, a, b)| a == b));
        assert_eq!(w[3], (3, 7, 7));
    }
}
