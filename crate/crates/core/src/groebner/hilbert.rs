use super::{buchberger, GroebnerBasis, GroebnerError, Ideal};
use crate::polycore::{Exponent, Grading, TermOrder};

/// Monomials of the given degree outside the leading-term ideal of `gb`,
/// in descending order for the basis order.
pub fn standard_monomials(gb: &GroebnerBasis, grading: &Grading, degree: i64) -> Vec<Exponent> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; grading.weights().len()];
    enumerate(grading.weights(), 0, degree, &mut cur, &mut |e| {
        let e = Exponent::new(e.to_vec());
        if gb.is_standard(&e) {
            out.push(e);
        }
    });
    out.sort_by(|a, b| gb.order().cmp(b, a));
    out
}

fn enumerate(w: &[i64], i: usize, left: i64, cur: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if i == w.len() {
        if left == 0 {
            f(cur);
        }
        return;
    }
    let mut k = 0u32;
    while k as i64 * w[i] <= left {
        cur[i] = k;
        enumerate(w, i + 1, left - k as i64 * w[i], cur, f);
        k += 1;
    }
    cur[i] = 0;
}

fn graded_basis(ideal: &Ideal) -> Result<(GroebnerBasis, Grading), GroebnerError> {
    if !ideal.is_homogeneous() {
        return Err(GroebnerError::NotHomogeneous);
    }
    let gb = buchberger(ideal, &TermOrder::degrevlex(ideal.nvars()))?;
    Ok((gb, ideal.effective_grading()))
}

/// `dim_k (R/I)_degree` for the ideal's grading (standard if none declared).
pub fn graded_dimension(ideal: &Ideal, degree: i64) -> Result<usize, GroebnerError> {
    let (gb, g) = graded_basis(ideal)?;
    Ok(count(&gb, &g, degree))
}

/// `dim_k (R/I)_d` for `d = 0..=max_degree`, sharing one Gröbner basis.
pub fn graded_dimensions(ideal: &Ideal, max_degree: i64) -> Result<Vec<usize>, GroebnerError> {
    let (gb, g) = graded_basis(ideal)?;
    Ok((0..=max_degree).map(|d| count(&gb, &g, d)).collect())
}

fn count(gb: &GroebnerBasis, g: &Grading, degree: i64) -> usize {
    if degree < 0 {
        return 0;
    }
    let mut n = 0;
    let mut cur = vec![0u32; g.weights().len()];
    enumerate(g.weights(), 0, degree, &mut cur, &mut |e| {
        if gb.is_standard(&Exponent::new(e.to_vec())) {
            n += 1;
        }
    });
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_cubic_hilbert_function() {
        let i = Ideal::parse(&["x", "y", "z"], &["y^2*z - x^3 - x*z^2"]).unwrap();
        assert_eq!(graded_dimensions(&i, 5).unwrap(), vec![1, 3, 6, 9, 12, 15]);
    }

    #[test]
    fn weighted_grading() {
        let v = crate::polycore::VarList::new(["a", "b"]);
        let i = Ideal::graded(&v, vec![], Grading::new(vec![1, 2]).unwrap()).unwrap();
        // monomials of weighted degree 4: a^4, a^2 b, b^2
        assert_eq!(graded_dimension(&i, 4).unwrap(), 3);
    }

    #[test]
    fn inhomogeneous_rejected() {
        let i = Ideal::parse(&["x", "y"], &["x - y^2"]).unwrap();
        assert_eq!(graded_dimension(&i, 2), Err(GroebnerError::NotHomogeneous));
    }

    #[test]
    fn standard_monomials_listed() {
        let i = Ideal::parse(&["x", "y"], &["x*y"]).unwrap();
        let gb = buchberger(&i, &TermOrder::degrevlex(2)).unwrap();
        let m = standard_monomials(&gb, &Grading::standard(2), 2);
        assert_eq!(m, vec![Exponent::new(vec![2, 0]), Exponent::new(vec![0, 2])]);
    }
}
