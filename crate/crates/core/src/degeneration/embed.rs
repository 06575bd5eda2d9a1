use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::pipeline::graded_value_matrix;
use super::{valuation_pipeline, DegenError, DegenOptions};
use crate::groebner::{buchberger, graded_dimensions, ring_map_kernel, Ideal};
use crate::intlat::{iota_images, IntMatrix};
use crate::polycore::{Coeff, Exponent, Polynomial, TermOrder, VarList};
use crate::toric::{toric_ideal, PolytopeQ, Semigroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimCheck {
    pub m: i64,
    pub dim_r: usize,
    pub dim_semigroup: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImageEntry {
    pub label: String,
    pub exponent: Exponent,
    pub monomial: String,
}

/// Result of embedding `k[S]` into the coordinate ring by monomials in a set
/// of independent variables.
#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingReport {
    pub w: Vec<i64>,
    pub independent_vars: Vec<usize>,
    pub independent_names: Vec<String>,
    /// The quotient by `in(J)` is finite over the selected variables.
    pub integral: bool,
    #[serde(rename = "N")]
    pub n: i64,
    /// `ι(S)` before dropping coordinates that vanish on every generator.
    pub image_semigroup: Semigroup,
    pub used_coords: Vec<usize>,
    pub images: Vec<ImageEntry>,
    pub kernel_check: Ideal,
    pub kernel_matches: bool,
    pub dims_checked: Vec<DimCheck>,
}

/// Embeds the value semigroup algebra of `(J, M)` into `k[x]/J`, verifying the
/// kernel and the graded dimensions up to `opts.degree_bound`.
pub fn embed_value_semigroup(ideal: &Ideal, m: &IntMatrix, opts: &DegenOptions) -> Result<EmbeddingReport, DegenError> {
    let report = valuation_pipeline(ideal, m, opts)?;
    if !report.binomial_prime {
        return Err(DegenError::VerificationFailed(
            "initial ideal differs from the toric ideal of the value semigroup".into(),
        ));
    }
    let nv = ideal.nvars();
    let (graded, deg_row) = graded_value_matrix(ideal, m)?;
    let rows = graded.to_i64_rows()?;
    if rows[deg_row].iter().any(|&d| d != 1) {
        return Err(DegenError::NotDegreeOneGenerated);
    }
    // per-variable columns (1, a_j), degree first
    let cols: Vec<Vec<i64>> = (0..nv)
        .map(|j| {
            std::iter::once(1)
                .chain((0..rows.len()).filter(|&r| r != deg_row).map(|r| rows[r][j]))
                .collect()
        })
        .collect();
    let n = cols
        .iter()
        .map(|c| c[1..].iter().sum::<i64>())
        .max()
        .unwrap_or(0)
        .max(1);
    let images = iota_images(&BigInt::from(n), &IntMatrix::from_columns(&cols)?)?;
    let image_cols: Vec<Vec<i64>> = (0..nv).map(|j| images.column_i64(j)).collect::<Result<_, _>>()?;
    let image_semigroup = Semigroup::new(image_cols.clone(), None, Some(ideal.vars().to_vec()))?;
    let used_coords: Vec<usize> = (0..images.rows())
        .filter(|&k| image_cols.iter().any(|c| c[k] != 0))
        .collect();
    let rank = graded.rank();
    if used_coords.len() != rank {
        return Err(DegenError::InvalidArgument(format!(
            "embedded semigroup uses {} coordinates but has rank {rank}",
            used_coords.len()
        )));
    }
    let k = rank;
    let trimmed: Vec<Vec<i64>> = image_cols
        .iter()
        .map(|c| used_coords.iter().map(|&i| c[i]).collect())
        .collect();

    // candidate order: vertices of Δ(S) first
    let points: Vec<Vec<Coeff>> = cols
        .iter()
        .map(|c| c[1..].iter().map(|&x| Coeff::from_integer(x.into())).collect())
        .collect();
    let delta = PolytopeQ::hull(points.clone(), cols[0].len() - 1);
    let mut candidates: Vec<usize> = (0..nv).filter(|&j| delta.is_vertex(&points[j])).collect();
    let rest: Vec<usize> = (0..nv).filter(|j| !candidates.contains(j)).collect();
    candidates.extend(rest);

    let monomial_of = |sel: &[usize], c: &[i64]| -> Exponent {
        let mut e = vec![0u32; nv];
        for (pos, &v) in sel.iter().enumerate() {
            e[v] = c[pos] as u32;
        }
        Exponent::new(e)
    };

    // first independent subset over which the quotient is finite; otherwise the
    // first independent one, reported as not integral
    let mut fallback: Option<Vec<usize>> = None;
    let mut chosen: Option<Vec<usize>> = None;
    for subset in k_subsets(&candidates, k) {
        opts.check()?;
        let mut sel = subset;
        sel.sort_unstable();
        if graded.select_columns(&sel).rank() != k {
            continue;
        }
        if is_finite_over(&report.init, &sel)? {
            chosen = Some(sel);
            break;
        }
        if fallback.is_none() {
            fallback = Some(sel);
        }
    }
    let (sel, integral) = match (chosen, fallback) {
        (Some(c), _) => (c, true),
        (None, Some(f)) => (f, false),
        (None, None) => return Err(DegenError::NoIndependentSubset),
    };
    opts.check()?;
    if !images_standard(ideal, &report.w, opts, &sel, &trimmed, &monomial_of)? {
        return Err(DegenError::VerificationFailed(
            "an image monomial is not standard for the refined order".into(),
        ));
    }

    let image_entries: Vec<ImageEntry> = trimmed
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let e = monomial_of(&sel, c);
            let p = Polynomial::monomial(ideal.vars(), Coeff::one(), e.clone());
            ImageEntry {
                label: ideal.vars()[j].clone(),
                exponent: e,
                monomial: p.to_string(),
            }
        })
        .collect();

    opts.check()?;
    let source = VarList::new(ideal.vars().iter().cloned());
    let polys: Vec<Polynomial> = image_entries
        .iter()
        .map(|e| Polynomial::monomial(ideal.vars(), Coeff::one(), e.exponent.clone()))
        .collect();
    let kernel_check = ring_map_kernel(&source, &polys, ideal)?;
    let trimmed_matrix = IntMatrix::from_columns(&trimmed)?;
    let expected = toric_ideal(&trimmed_matrix, &source)?;
    let kernel_matches = kernel_check.gens() == expected.gens();
    if !kernel_matches {
        return Err(DegenError::VerificationFailed(
            "kernel of the monomial map differs from the toric ideal of the image".into(),
        ));
    }

    opts.check()?;
    let dims_r = graded_dimensions(ideal, opts.degree_bound)?;
    let mut dims_checked = Vec::new();
    let mut level: BTreeSet<Vec<i64>> = BTreeSet::from([vec![0i64; k]]);
    for mdeg in 1..=opts.degree_bound {
        level = level
            .iter()
            .flat_map(|s| trimmed.iter().map(move |c| s.iter().zip(c).map(|(a, b)| a + b).collect()))
            .collect();
        let check = DimCheck {
            m: mdeg,
            dim_r: dims_r[mdeg as usize],
            dim_semigroup: level.len(),
        };
        if check.dim_r != check.dim_semigroup {
            return Err(DegenError::VerificationFailed(format!(
                "graded dimensions differ at m = {mdeg}: {} vs {}",
                check.dim_r, check.dim_semigroup
            )));
        }
        dims_checked.push(check);
    }

    Ok(EmbeddingReport {
        w: report.w,
        independent_names: sel.iter().map(|&v| ideal.vars()[v].clone()).collect(),
        independent_vars: sel,
        integral,
        n: BigInt::from(n).to_i64().expect("fits"),
        image_semigroup,
        used_coords,
        images: image_entries,
        kernel_check,
        kernel_matches,
        dims_checked,
    })
}

/// `k`-element subsets of `items` in lexicographic order of positions.
fn k_subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let n = items.len();
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let Some(p) = (0..k).rev().find(|&p| idx[p] < n - k + p) else { break };
        idx[p] += 1;
        for q in p + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
    out
}

/// Every variable has a pure power among the leading terms of `in(J) + (sel)`.
fn is_finite_over(init: &Ideal, sel: &[usize]) -> Result<bool, DegenError> {
    let vars = init.vars();
    let mut gens = init.gens().to_vec();
    gens.extend(sel.iter().map(|&v| Polynomial::var(vars, v)));
    let gb = buchberger(&Ideal::new(vars, gens)?, &TermOrder::degrevlex(vars.len()))?;
    let lts = gb.leading_exponents();
    Ok((0..vars.len()).all(|v| {
        lts.iter()
            .any(|e| e.get(v) > 0 && (0..e.len()).all(|u| u == v || e.get(u) == 0))
    }))
}

/// Image monomials avoid the leading terms of `J` under `w` refined by lex with
/// the unselected variables largest.
fn images_standard(
    ideal: &Ideal,
    w: &[i64],
    opts: &DegenOptions,
    sel: &[usize],
    trimmed: &[Vec<i64>],
    monomial_of: &impl Fn(&[usize], &[i64]) -> Exponent,
) -> Result<bool, DegenError> {
    let nv = ideal.nvars();
    let mut perm: Vec<usize> = (0..nv).rev().filter(|v| !sel.contains(v)).collect();
    perm.extend(sel.iter().rev());
    let order = TermOrder::Weight {
        weights: w.to_vec(),
        convention: opts.convention,
        tie: Box::new(TermOrder::Lex(perm)),
    };
    let gb = buchberger(ideal, &order)?;
    Ok(trimmed.iter().all(|c| gb.is_standard(&monomial_of(sel, c))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_in_order() {
        assert_eq!(
            k_subsets(&[5, 1, 2], 2),
            vec![vec![5, 1], vec![5, 2], vec![1, 2]]
        );
        assert_eq!(k_subsets(&[1], 2), Vec::<Vec<usize>>::new());
    }

    #[test]
    fn elliptic_images() {
        let j = Ideal::parse(&["x", "y", "z"], &["y^2*z - x^3 + x*z^2"]).unwrap();
        let m = IntMatrix::from_rows(&[vec![1, 0, 3]]).unwrap();
        let opts = DegenOptions {
            degree_bound: 5,
            ..DegenOptions::default()
        };
        let r = embed_value_semigroup(&j, &m, &opts).unwrap();
        assert_eq!(r.n, 3);
        assert_eq!(r.independent_names, vec!["y", "z"]);
        let mons: Vec<&str> = r.images.iter().map(|e| e.monomial.as_str()).collect();
        assert_eq!(mons, vec!["y^2*z", "y^3", "z^3"]);
        assert!(r.integral);
        assert_eq!(r.dims_checked.len(), 5);
        assert!(r.dims_checked.iter().all(|d| d.dim_r == d.dim_semigroup));
    }

    #[test]
    fn identity_embedding_of_polynomial_ring() {
        let j = Ideal::zero(&VarList::new(["a", "b"]));
        let m = IntMatrix::from_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        let opts = DegenOptions {
            degree_bound: 4,
            ..DegenOptions::default()
        };
        let r = embed_value_semigroup(&j, &m, &opts).unwrap();
        assert!(r.kernel_check.is_zero());
        let mons: Vec<&str> = r.images.iter().map(|e| e.monomial.as_str()).collect();
        assert_eq!(mons, vec!["a", "b"]);
    }
}
