use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Deref, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Convention, Exponent, PolyError, TermOrder};

pub type Coeff = BigRational;

pub fn rational(n: i64, d: i64) -> Coeff {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

/// Ordered list of variable names, shared between polynomials of one ring.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VarList(Arc<Vec<String>>);

impl VarList {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        VarList(Arc::new(names.into_iter().map(Into::into).collect()))
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn same(&self, other: &VarList) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }

    /// A name not already in the list, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        while self.index_of(&name).is_some() {
            name.push('_');
        }
        name
    }

    pub fn extended(&self, extra: &[String]) -> VarList {
        VarList::new(self.0.iter().chain(extra).cloned())
    }
}

impl Deref for VarList {
    type Target = [String];
    fn deref(&self) -> &[String] {
        &self.0
    }
}

impl fmt::Debug for VarList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Positive integer grading, one weight per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Grading(Vec<i64>);

impl Grading {
    pub fn new(weights: Vec<i64>) -> Result<Self, PolyError> {
        if weights.iter().any(|&w| w <= 0) {
            return Err(PolyError::NonPositiveGrading);
        }
        Ok(Grading(weights))
    }

    pub fn standard(nvars: usize) -> Self {
        Grading(vec![1; nvars])
    }

    pub fn weights(&self) -> &[i64] {
        &self.0
    }

    pub fn degree(&self, e: &Exponent) -> i64 {
        e.dot(&self.0) as i64
    }

    pub fn is_standard(&self) -> bool {
        self.0.iter().all(|&w| w == 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Coeff,
    pub exp: Exponent,
}

/// Sparse polynomial with exact rational coefficients.
///
/// Terms are kept sorted in descending degrevlex order on the declared
/// variable order, without zero coefficients, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    vars: VarList,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(vars: &VarList) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(vars: &VarList, c: Coeff) -> Self {
        Self::monomial(vars, c, Exponent::zero(vars.len()))
    }

    pub fn one(vars: &VarList) -> Self {
        Self::constant(vars, Coeff::one())
    }

    pub fn var(vars: &VarList, i: usize) -> Self {
        Self::monomial(vars, Coeff::one(), Exponent::unit(vars.len(), i))
    }

    pub fn monomial(vars: &VarList, coeff: Coeff, exp: Exponent) -> Self {
        debug_assert_eq!(exp.len(), vars.len());
        let terms = if coeff.is_zero() {
            Vec::new()
        } else {
            vec![Term { coeff, exp }]
        };
        Polynomial {
            vars: vars.clone(),
            terms,
        }
    }

    /// Builds a canonical polynomial, merging like terms and dropping zeros.
    pub fn from_terms(vars: &VarList, terms: impl IntoIterator<Item = (Coeff, Exponent)>) -> Self {
        let mut acc: BTreeMap<Exponent, Coeff> = BTreeMap::new();
        for (c, e) in terms {
            debug_assert_eq!(e.len(), vars.len());
            *acc.entry(e).or_insert_with(Coeff::zero) += c;
        }
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exp, coeff)| Term { coeff, exp })
            .collect();
        let ord = TermOrder::degrevlex(vars.len());
        terms.sort_by(|a, b| ord.cmp(&b.exp, &a.exp));
        Polynomial {
            vars: vars.clone(),
            terms,
        }
    }

    /// Binomial `x^plus - x^minus`.
    pub fn binomial(vars: &VarList, plus: Exponent, minus: Exponent) -> Self {
        Self::from_terms(vars, [(Coeff::one(), plus), (-Coeff::one(), minus)])
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.exp.is_constant())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// A difference of two monomials with opposite unit coefficients, up to scaling.
    pub fn is_binomial(&self) -> bool {
        self.terms.len() == 2 && (&self.terms[0].coeff + &self.terms[1].coeff).is_zero()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|t| t.exp.degree()).max()
    }

    pub fn leading_term(&self, order: &TermOrder) -> Option<&Term> {
        self.terms.iter().max_by(|a, b| order.cmp(&a.exp, &b.exp))
    }

    pub fn is_homogeneous(&self, grading: &Grading) -> bool {
        let mut degs = self.terms.iter().map(|t| grading.degree(&t.exp));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Variables that occur with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.iter().any(|t| t.exp.get(i) > 0))
            .collect()
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    exp: t.exp.clone(),
                })
                .collect(),
        }
    }

    /// Scales so the coefficient of the largest term (canonical order) is one.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some(t) => self.scale(&t.coeff.recip()),
        }
    }

    fn check_vars(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.vars.same(&other.vars) {
            Ok(())
        } else if self.nvars() != other.nvars() {
            Err(PolyError::DimensionMismatch {
                expected: self.nvars(),
                found: other.nvars(),
            })
        } else {
            Err(PolyError::VariableMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_vars(other)?;
        Ok(self.merge(other, &Coeff::one()))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_vars(other)?;
        Ok(self.merge(other, &-Coeff::one()))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_vars(other)?;
        let mut acc: BTreeMap<Exponent, Coeff> = BTreeMap::new();
        for a in &self.terms {
            for b in &other.terms {
                let e = a.exp.mul(&b.exp).ok_or(PolyError::ExponentOverflow)?;
                *acc.entry(e).or_insert_with(Coeff::zero) += &a.coeff * &b.coeff;
            }
        }
        Ok(Polynomial::from_terms(&self.vars, acc.into_iter().map(|(e, c)| (c, e))))
    }

    pub fn checked_pow(&self, k: u32) -> Result<Polynomial, PolyError> {
        let mut acc = Polynomial::one(&self.vars);
        for _ in 0..k {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// `self + factor * other`, both already canonical.
    fn merge(&self, other: &Polynomial, factor: &Coeff) -> Polynomial {
        let ord = TermOrder::degrevlex(self.nvars());
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let pick = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => ord.cmp(&a.exp, &b.exp),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match pick {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let t = &other.terms[j];
                    out.push(Term {
                        coeff: &t.coeff * factor,
                        exp: t.exp.clone(),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].coeff + &other.terms[j].coeff * factor;
                    if !c.is_zero() {
                        out.push(Term {
                            coeff: c,
                            exp: self.terms[i].exp.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: out,
        }
    }

    /// Substitutes `value` for variable `var`; the variable list is unchanged.
    pub fn substitute(&self, var: usize, value: &Coeff) -> Polynomial {
        Polynomial::from_terms(
            &self.vars,
            self.terms.iter().map(|t| {
                let k = t.exp.get(var);
                let c = if k == 0 {
                    t.coeff.clone()
                } else {
                    &t.coeff * num_traits::pow(value.clone(), k as usize)
                };
                (c, t.exp.with(var, 0))
            }),
        )
    }

    /// Exact evaluation at a point.
    pub fn eval(&self, point: &[Coeff]) -> Coeff {
        let mut acc = Coeff::zero();
        for t in &self.terms {
            let mut m = t.coeff.clone();
            for (i, &k) in t.exp.entries().iter().enumerate() {
                if k > 0 {
                    m *= num_traits::pow(point[i].clone(), k as usize);
                }
            }
            acc += m;
        }
        acc
    }

    /// Moves the polynomial into `target` with variable `i` renamed to `map[i]`.
    pub fn remap(&self, target: &VarList, map: &[usize]) -> Polynomial {
        Polynomial::from_terms(
            target,
            self.terms
                .iter()
                .map(|t| (t.coeff.clone(), t.exp.remap(map, target.len()))),
        )
    }

    /// Moves the polynomial into `target`, matching variables by name.
    pub fn rename_into(&self, target: &VarList) -> Result<Polynomial, PolyError> {
        let mut map = Vec::with_capacity(self.nvars());
        for (i, name) in self.vars.iter().enumerate() {
            match target.index_of(name) {
                Some(j) => map.push(j),
                None => {
                    if self.terms.iter().any(|t| t.exp.get(i) > 0) {
                        return Err(PolyError::UnknownVariable(name.clone()));
                    }
                    map.push(usize::MAX);
                }
            }
        }
        // unused variables missing from the target are harmless
        let used: Vec<usize> = map.iter().map(|&j| if j == usize::MAX { 0 } else { j }).collect();
        Ok(self.remap(target, &used))
    }
}

/// Terms of `p` attaining the extremal `w`-weight under `convention`.
pub fn initial_form(p: &Polynomial, w: &[i64], convention: Convention) -> Result<Polynomial, PolyError> {
    initial_form_matrix(p, std::slice::from_ref(&w.to_vec()), convention)
}

/// Initial form with respect to the rows of a weight matrix compared
/// lexicographically.
pub fn initial_form_matrix(p: &Polynomial, rows: &[Vec<i64>], convention: Convention) -> Result<Polynomial, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    for r in rows {
        if r.len() != p.nvars() {
            return Err(PolyError::DimensionMismatch {
                expected: p.nvars(),
                found: r.len(),
            });
        }
    }
    let key = |e: &Exponent| -> Vec<i128> {
        rows.iter()
            .map(|r| match convention {
                Convention::Min => e.dot(r),
                Convention::Max => -e.dot(r),
            })
            .collect()
    };
    let best = p.terms.iter().map(|t| key(&t.exp)).min().expect("nonzero");
    Ok(Polynomial {
        vars: p.vars.clone(),
        terms: p.terms.iter().filter(|t| key(&t.exp) == best).cloned().collect(),
    })
}

fn format_coeff_and_monomial(out: &mut String, coeff: &Coeff, exp: &Exponent, vars: &[String], first: bool) {
    let neg = coeff.is_negative();
    let abs = coeff.abs();
    match (first, neg) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
    let mut factors: Vec<String> = Vec::new();
    for (i, &k) in exp.entries().iter().enumerate() {
        match k {
            0 => {}
            1 => factors.push(vars[i].clone()),
            _ => factors.push(format!("{}^{}", vars[i], k)),
        }
    }
    if factors.is_empty() {
        out.push_str(&abs.to_string());
    } else {
        if !abs.is_one() {
            out.push_str(&abs.to_string());
            out.push('*');
        }
        out.push_str(&factors.join("*"));
    }
}

/// Prints `p` with terms in descending `order`.
pub fn format_polynomial(p: &Polynomial, order: &TermOrder) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<&Term> = p.terms.iter().collect();
    terms.sort_by(|a, b| order.cmp(&b.exp, &a.exp));
    let mut out = String::new();
    for (k, t) in terms.iter().enumerate() {
        format_coeff_and_monomial(&mut out, &t.coeff, &t.exp, p.vars(), k == 0);
    }
    out
}

/// Serialized as its printed form.
impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_polynomial(self, &TermOrder::degrevlex(self.nvars())))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

// Operator sugar for callers that already know both sides share a ring.
// Mismatched rings are a programming error here; use the `checked_*` methods
// at API boundaries.

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomials over different rings")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomials over different rings")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomials over different rings or exponent overflow")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Coeff::one())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
}

/// Exact ring operation between two polynomials over the same variables.
pub fn poly_arith(op: ArithOp, a: &Polynomial, b: &Polynomial) -> Result<Polynomial, PolyError> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Mul => a.checked_mul(b),
    }
}
