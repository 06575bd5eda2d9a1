use serde::Serialize;

use super::DegenError;
use crate::groebner::{buchberger, Ideal};
use crate::polycore::{Coeff, Convention, Exponent, PolyError, Polynomial, TermOrder, VarList};

/// `Ĵ_w ⊆ k[x, t]`: each reduced-basis element with `t` recording how far a
/// term is from the `w`-extremal weight. `t` is the last variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyIdeal {
    pub vars: VarList,
    pub gens: Vec<Polynomial>,
    #[serde(skip)]
    pub base: Ideal,
    pub w: Vec<i64>,
    pub convention: Convention,
}

impl FamilyIdeal {
    pub fn t_index(&self) -> usize {
        self.vars.len() - 1
    }

    pub fn t_name(&self) -> &str {
        &self.vars[self.t_index()]
    }

    pub fn as_ideal(&self) -> Ideal {
        Ideal::new(&self.vars, self.gens.clone()).expect("same variables")
    }
}

/// Family over `k[t]` whose fiber at `t = 1` is `J` and at `t = 0` is `in_w(J)`.
pub fn family_ideal(ideal: &Ideal, w: &[i64], convention: Convention) -> Result<FamilyIdeal, DegenError> {
    let n = ideal.nvars();
    if w.len() != n {
        return Err(PolyError::DimensionMismatch { expected: n, found: w.len() }.into());
    }
    let gb = buchberger(ideal, &TermOrder::weight(w.to_vec(), convention))?;
    let t = ideal.vars().fresh_name("t");
    let vars = ideal.vars().extended(&[t]);
    let mut gens = Vec::with_capacity(gb.len());
    for g in gb.elements() {
        let ws: Vec<i128> = g.terms().iter().map(|term| term.exp.dot(w)).collect();
        let extremal = match convention {
            Convention::Min => *ws.iter().min().expect("nonzero"),
            Convention::Max => *ws.iter().max().expect("nonzero"),
        };
        let terms = g
            .terms()
            .iter()
            .zip(&ws)
            .map(|(term, &wt)| -> Result<(Coeff, Exponent), DegenError> {
                let k = u32::try_from((wt - extremal).abs()).map_err(|_| PolyError::ExponentOverflow)?;
                let mut e = term.exp.entries().to_vec();
                e.push(k);
                Ok((term.coeff.clone(), Exponent::new(e)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        gens.push(Polynomial::from_terms(&vars, terms));
    }
    Ok(FamilyIdeal {
        vars,
        gens,
        base: ideal.clone(),
        w: w.to_vec(),
        convention,
    })
}

/// Fiber at `t = t0`, in canonical form over the base variables.
pub fn fiber(family: &FamilyIdeal, t0: &Coeff) -> Result<Ideal, DegenError> {
    let base_vars = family.base.vars();
    let map: Vec<usize> = (0..base_vars.len()).collect();
    let gens = family
        .gens
        .iter()
        .map(|g| {
            let s = g.substitute(family.t_index(), t0);
            // drop the now-unused t coordinate
            Polynomial::from_terms(
                base_vars,
                s.terms().iter().map(|term| {
                    (term.coeff.clone(), Exponent::new(term.exp.entries()[..map.len()].to_vec()))
                }),
            )
        })
        .collect();
    let grading = family.base.grading().cloned();
    let ideal = Ideal::new(base_vars, gens)?.canonical()?;
    Ok(ideal.clone().with_grading(grading).unwrap_or(ideal))
}
