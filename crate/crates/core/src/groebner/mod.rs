//! Gröbner bases over ℚ and the ideal operations built on them.
//!
//! Every ideal returned by this module is given by its reduced Gröbner basis
//! under degrevlex on the declared variable order, so two results can be
//! compared generator by generator.

mod basis;
mod hilbert;
mod ops;

use thiserror::Error;

use crate::polycore::{parse_polynomial, Grading, PolyError, Polynomial, TermOrder, VarList};

pub use basis::{buchberger, buchberger_with, BuchbergerOptions, GroebnerBasis};
pub use hilbert::{graded_dimension, graded_dimensions, standard_monomials};
pub use ops::{
    eliminate, eliminate_names, in_radical, initial_ideal, intersect, ring_map_kernel, saturate, saturate_by_ideal,
    saturate_by_variable, InitialSpec,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("exponent overflow while reducing")]
    DegreeOverflow,
    #[error("ideal is not homogeneous with respect to its grading")]
    NotHomogeneous,
    #[error("term order is not a well-ordering and the input is not homogeneous")]
    NotWellOrdered,
    #[error("computation cancelled")]
    Cancelled,
    #[error("{0}")]
    InvalidArgument(String),
}

/// Ideal in `k[vars]` given by generators, optionally with a positive grading
/// for which all generators are homogeneous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    vars: VarList,
    gens: Vec<Polynomial>,
    grading: Option<Grading>,
}

impl Ideal {
    /// Ideal without a declared grading. Zero generators are dropped.
    pub fn new(vars: &VarList, gens: Vec<Polynomial>) -> Result<Self, GroebnerError> {
        for g in &gens {
            if !g.vars().same(vars) {
                return Err(PolyError::VariableMismatch.into());
            }
        }
        Ok(Ideal {
            vars: vars.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            grading: None,
        })
    }

    /// Ideal whose generators must be homogeneous for `grading`.
    pub fn graded(vars: &VarList, gens: Vec<Polynomial>, grading: Grading) -> Result<Self, GroebnerError> {
        if grading.weights().len() != vars.len() {
            return Err(PolyError::DimensionMismatch {
                expected: vars.len(),
                found: grading.weights().len(),
            }
            .into());
        }
        let mut ideal = Ideal::new(vars, gens)?;
        if !ideal.gens.iter().all(|g| g.is_homogeneous(&grading)) {
            return Err(GroebnerError::NotHomogeneous);
        }
        ideal.grading = Some(grading);
        Ok(ideal)
    }

    pub fn zero(vars: &VarList) -> Self {
        Ideal {
            vars: vars.clone(),
            gens: Vec::new(),
            grading: None,
        }
    }

    pub fn unit(vars: &VarList) -> Self {
        Ideal {
            vars: vars.clone(),
            gens: vec![Polynomial::one(vars)],
            grading: None,
        }
    }

    /// Parses generators given as text over the named variables.
    pub fn parse(vars: &[&str], gens: &[&str]) -> Result<Self, GroebnerError> {
        let vl = VarList::new(vars.iter().copied());
        let polys = gens
            .iter()
            .map(|g| parse_polynomial(g, &vl))
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(&vl, polys)
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn grading(&self) -> Option<&Grading> {
        self.grading.as_ref()
    }

    /// Declared grading, or the standard one.
    pub fn effective_grading(&self) -> Grading {
        self.grading.clone().unwrap_or_else(|| Grading::standard(self.nvars()))
    }

    pub fn with_grading(mut self, grading: Option<Grading>) -> Result<Self, GroebnerError> {
        if let Some(g) = &grading {
            if !self.gens.iter().all(|p| p.is_homogeneous(g)) {
                return Err(GroebnerError::NotHomogeneous);
            }
        }
        self.grading = grading;
        Ok(self)
    }

    pub fn is_homogeneous(&self) -> bool {
        let g = self.effective_grading();
        self.gens.iter().all(|p| p.is_homogeneous(&g))
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Reduced degrevlex Gröbner basis as an ideal (the canonical form).
    pub fn canonical(&self) -> Result<Ideal, GroebnerError> {
        let gb = buchberger(self, &TermOrder::degrevlex(self.nvars()))?;
        Ok(gb.to_ideal(self.grading.clone()))
    }

    /// Whether the canonical form is `(1)`.
    pub fn is_unit(&self) -> Result<bool, GroebnerError> {
        let c = self.canonical()?;
        Ok(c.gens.len() == 1 && c.gens[0].is_constant())
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool, GroebnerError> {
        let gb = buchberger(self, &TermOrder::degrevlex(self.nvars()))?;
        Ok(gb.normal_form(p)?.is_zero())
    }

    /// Ideal equality, decided by comparing reduced Gröbner bases.
    pub fn same_ideal(&self, other: &Ideal) -> Result<bool, GroebnerError> {
        if !self.vars.same(&other.vars) {
            return Ok(false);
        }
        Ok(self.canonical()?.gens == other.canonical()?.gens)
    }

    /// Every generator of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &Ideal) -> Result<bool, GroebnerError> {
        if !self.vars.same(&other.vars) {
            return Err(PolyError::VariableMismatch.into());
        }
        let gb = buchberger(other, &TermOrder::degrevlex(other.nvars()))?;
        for g in &self.gens {
            if !gb.normal_form(g)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Sum of ideals over the same ring.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal, GroebnerError> {
        if !self.vars.same(&other.vars) {
            return Err(PolyError::VariableMismatch.into());
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        let grading = if self.grading == other.grading { self.grading.clone() } else { None };
        Ideal::new(&self.vars, gens)?.with_grading(grading)
    }

    /// Moves the ideal to another variable list, matching variables by name.
    pub fn rename_into(&self, target: &VarList) -> Result<Ideal, GroebnerError> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.rename_into(target))
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(target, gens)
    }

    /// All generators are binomials `m1 - m2` (or monomials are absent).
    pub fn is_binomial(&self) -> bool {
        self.gens.iter().all(|g| g.is_binomial())
    }
}

impl serde::Serialize for Ideal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        let mut st = s.serialize_struct("Ideal", 3)?;
        st.serialize_field("vars", self.vars.names())?;
        st.serialize_field("gens", &gens)?;
        if let Some(g) = &self.grading {
            st.serialize_field("grading", g)?;
        }
        st.end()
    }
}

impl std::fmt::Display for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.gens.is_empty() {
            return f.write_str("(0)");
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}
