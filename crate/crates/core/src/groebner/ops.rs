use num_traits::One;

use super::{buchberger, GroebnerError, Ideal};
use crate::polycore::{
    initial_form, initial_form_matrix, Coeff, Convention, Grading, PolyError, Polynomial, TermOrder,
    VarList,
};

/// Which initial ideal to take.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InitialSpec {
    /// Monomial initial ideal for a term order.
    Order(TermOrder),
    /// `in_w(I)`, refined by the default tie-break for the Gröbner computation.
    Weight { w: Vec<i64>, convention: Convention },
    /// Initial ideal for rows compared lexicographically.
    Matrix { rows: Vec<Vec<i64>>, convention: Convention },
}

/// Initial ideal, returned in canonical form.
pub fn initial_ideal(ideal: &Ideal, spec: &InitialSpec) -> Result<Ideal, GroebnerError> {
    let n = ideal.nvars();
    let gens = match spec {
        InitialSpec::Order(order) => {
            let gb = buchberger(ideal, order)?;
            gb.leading_exponents()
                .into_iter()
                .map(|e| Polynomial::monomial(ideal.vars(), Coeff::one(), e))
                .collect()
        }
        InitialSpec::Weight { w, convention } => {
            if w.len() != n {
                return Err(PolyError::DimensionMismatch { expected: n, found: w.len() }.into());
            }
            let gb = buchberger(ideal, &TermOrder::weight(w.clone(), *convention))?;
            gb.elements()
                .iter()
                .map(|g| initial_form(g, w, *convention))
                .collect::<Result<Vec<_>, _>>()?
        }
        InitialSpec::Matrix { rows, convention } => {
            if let Some(r) = rows.iter().find(|r| r.len() != n) {
                return Err(PolyError::DimensionMismatch { expected: n, found: r.len() }.into());
            }
            let gb = buchberger(ideal, &TermOrder::matrix(rows.clone(), *convention, n))?;
            gb.elements()
                .iter()
                .map(|g| initial_form_matrix(g, rows, *convention))
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    Ideal::new(ideal.vars(), gens)?.canonical()
}

/// `I ∩ k[keep]`, over the kept variables in their declared order.
pub fn eliminate(ideal: &Ideal, keep: &[usize]) -> Result<Ideal, GroebnerError> {
    let n = ideal.nvars();
    let mut kept = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if let Some(&bad) = kept.iter().find(|&&i| i >= n) {
        return Err(GroebnerError::InvalidArgument(format!("variable index {bad} out of range")));
    }
    let dropped: Vec<usize> = (0..n).filter(|i| !kept.contains(i)).collect();
    let gb = buchberger(ideal, &TermOrder::elimination(n, &dropped))?;
    let target = VarList::new(kept.iter().map(|&i| ideal.vars()[i].clone()));
    let mut map = vec![0usize; n];
    for (pos, &i) in kept.iter().enumerate() {
        map[i] = pos;
    }
    let gens = gb
        .elements()
        .into_iter()
        .filter(|g| g.support().iter().all(|v| kept.contains(v)))
        .map(|g| g.remap(&target, &map))
        .collect();
    let grading = ideal
        .grading()
        .map(|g| Grading::new(kept.iter().map(|&i| g.weights()[i]).collect()))
        .transpose()?;
    Ideal::new(&target, gens)?.with_grading(grading)?.canonical()
}

/// [`eliminate`] keeping the named variables.
pub fn eliminate_names(ideal: &Ideal, keep: &[&str]) -> Result<Ideal, GroebnerError> {
    let idx = keep
        .iter()
        .map(|name| {
            ideal
                .vars()
                .index_of(name)
                .ok_or_else(|| GroebnerError::from(PolyError::UnknownVariable(name.to_string())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    eliminate(ideal, &idx)
}

/// Adds one variable at the end of the ring; returns the enlarged ideal and the
/// embedding of the old generators.
fn extend_ring(ideal: &Ideal, base: &str) -> (VarList, Vec<Polynomial>) {
    let name = ideal.vars().fresh_name(base);
    let vars = ideal.vars().extended(&[name]);
    let map: Vec<usize> = (0..ideal.nvars()).collect();
    let gens = ideal.gens().iter().map(|g| g.remap(&vars, &map)).collect();
    (vars, gens)
}

/// `(I : f^∞)` via `I + (1 - y f)` and elimination of `y`.
pub fn saturate(ideal: &Ideal, f: &Polynomial) -> Result<Ideal, GroebnerError> {
    if !f.vars().same(ideal.vars()) {
        return Err(PolyError::VariableMismatch.into());
    }
    if f.is_zero() {
        return Err(GroebnerError::InvalidArgument("saturation by the zero polynomial".into()));
    }
    let n = ideal.nvars();
    let (vars, mut gens) = extend_ring(ideal, "sat_y");
    let map: Vec<usize> = (0..n).collect();
    let fy = &f.remap(&vars, &map) * &Polynomial::var(&vars, n);
    gens.push(&Polynomial::one(&vars) - &fy);
    let big = Ideal::new(&vars, gens)?;
    let out = eliminate(&big, &map)?.rename_into(ideal.vars())?;
    let grading = ideal.grading().cloned();
    let graded = grading.as_ref().is_some_and(|g| f.is_homogeneous(g));
    let out = out.canonical()?;
    Ok(if graded { out.with_grading(grading)? } else { out })
}

/// Whether `f` lies in the radical of `I`: `1 ∈ I + (1 - y f)`.
pub fn in_radical(ideal: &Ideal, f: &Polynomial) -> Result<bool, GroebnerError> {
    if !f.vars().same(ideal.vars()) {
        return Err(PolyError::VariableMismatch.into());
    }
    if f.is_zero() {
        return Ok(true);
    }
    let n = ideal.nvars();
    let (vars, mut gens) = extend_ring(ideal, "rad_y");
    let map: Vec<usize> = (0..n).collect();
    let fy = &f.remap(&vars, &map) * &Polynomial::var(&vars, n);
    gens.push(&Polynomial::one(&vars) - &fy);
    Ok(buchberger(&Ideal::new(&vars, gens)?, &TermOrder::degrevlex(n + 1))?.is_unit())
}

/// `(I : x_i^∞)`. Homogeneous input uses a single degrevlex basis with `x_i`
/// smallest, dividing each element by its largest power of `x_i`.
pub fn saturate_by_variable(ideal: &Ideal, var: usize) -> Result<Ideal, GroebnerError> {
    let n = ideal.nvars();
    if var >= n {
        return Err(GroebnerError::InvalidArgument(format!("variable index {var} out of range")));
    }
    let std = Grading::standard(n);
    if !ideal.gens().iter().all(|g| g.is_homogeneous(&std)) {
        return saturate(ideal, &Polynomial::var(ideal.vars(), var));
    }
    let mut perm: Vec<usize> = (0..n).filter(|&i| i != var).collect();
    perm.push(var);
    let gb = buchberger(ideal, &TermOrder::DegRevLex(perm))?;
    let gens: Vec<Polynomial> = gb
        .elements()
        .into_iter()
        .map(|g| {
            let k = g.terms().iter().map(|t| t.exp.get(var)).min().unwrap_or(0);
            if k == 0 {
                return g;
            }
            Polynomial::from_terms(
                ideal.vars(),
                g.terms()
                    .iter()
                    .map(|t| (t.coeff.clone(), t.exp.with(var, t.exp.get(var) - k))),
            )
        })
        .collect();
    Ideal::new(ideal.vars(), gens)?
        .with_grading(ideal.grading().cloned())?
        .canonical()
}

/// `(I : J^∞)` as the intersection of the saturations by each generator of `J`.
pub fn saturate_by_ideal(ideal: &Ideal, by: &Ideal) -> Result<Ideal, GroebnerError> {
    if !by.vars().same(ideal.vars()) {
        return Err(PolyError::VariableMismatch.into());
    }
    let mut acc: Option<Ideal> = None;
    for g in by.gens() {
        let s = match single_variable(g) {
            Some(v) => saturate_by_variable(ideal, v)?,
            None => saturate(ideal, g)?,
        };
        acc = Some(match acc {
            None => s,
            Some(a) => intersect(&a, &s)?,
        });
    }
    match acc {
        Some(a) => Ok(a),
        None => ideal.canonical(),
    }
}

fn single_variable(p: &Polynomial) -> Option<usize> {
    if p.len() != 1 || !p.terms()[0].coeff.is_one() {
        return None;
    }
    let e = &p.terms()[0].exp;
    let support: Vec<usize> = (0..e.len()).filter(|&i| e.get(i) > 0).collect();
    (support.len() == 1 && e.get(support[0]) == 1).then(|| support[0])
}

/// `I ∩ J` via `s I + (1 - s) J` and elimination of `s`.
pub fn intersect(a: &Ideal, b: &Ideal) -> Result<Ideal, GroebnerError> {
    if !a.vars().same(b.vars()) {
        return Err(PolyError::VariableMismatch.into());
    }
    let n = a.nvars();
    let (vars, ga) = extend_ring(a, "int_s");
    let map: Vec<usize> = (0..n).collect();
    let s = Polynomial::var(&vars, n);
    let one_minus_s = &Polynomial::one(&vars) - &s;
    let mut gens: Vec<Polynomial> = ga.iter().map(|g| g * &s).collect();
    gens.extend(b.gens().iter().map(|g| &g.remap(&vars, &map) * &one_minus_s));
    let out = eliminate(&Ideal::new(&vars, gens)?, &map)?.rename_into(a.vars())?;
    let grading = if a.grading() == b.grading() { a.grading().cloned() } else { None };
    out.canonical()?.with_grading(grading)
}

/// Kernel of `k[source] → k[target.vars]/target`, `x_i ↦ images[i]`.
pub fn ring_map_kernel(source: &VarList, images: &[Polynomial], target: &Ideal) -> Result<Ideal, GroebnerError> {
    if images.len() != source.len() {
        return Err(PolyError::DimensionMismatch {
            expected: source.len(),
            found: images.len(),
        }
        .into());
    }
    if images.iter().any(|p| !p.vars().same(target.vars())) {
        return Err(PolyError::VariableMismatch.into());
    }
    let m = target.nvars();
    let mut names: Vec<String> = target.vars().to_vec();
    for s in source.iter() {
        let mut name = s.clone();
        while names.contains(&name) {
            name.push('_');
        }
        names.push(name);
    }
    let vars = VarList::new(names);
    let tmap: Vec<usize> = (0..m).collect();
    let mut gens: Vec<Polynomial> = target.gens().iter().map(|g| g.remap(&vars, &tmap)).collect();
    for (i, img) in images.iter().enumerate() {
        let x = Polynomial::var(&vars, m + i);
        gens.push(&x - &img.remap(&vars, &tmap));
    }
    let keep: Vec<usize> = (m..m + source.len()).collect();
    let k = eliminate(&Ideal::new(&vars, gens)?, &keep)?;
    let smap: Vec<usize> = (0..source.len()).collect();
    let gens = k.gens().iter().map(|g| g.remap(source, &smap)).collect();
    let degrees: Option<Vec<i64>> = images
        .iter()
        .map(|p| {
            let g = target.effective_grading();
            let d = p.terms().first().map(|t| g.degree(&t.exp))?;
            (d > 0 && p.is_homogeneous(&g)).then_some(d)
        })
        .collect();
    let out = Ideal::new(source, gens)?.canonical()?;
    let grading = degrees
        .filter(|d| d.iter().any(|&x| x != d[0]))
        .map(Grading::new)
        .transpose()?;
    Ok(out.clone().with_grading(grading).unwrap_or(out))
}
