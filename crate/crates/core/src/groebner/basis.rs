use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GroebnerError, Ideal};
use crate::polycore::{Coeff, Exponent, Grading, PolyError, Polynomial, TermOrder, VarList};

/// Terms sorted in descending order for a fixed term order.
pub(crate) type Terms = Vec<(Exponent, Coeff)>;

#[derive(Clone, Debug, Default)]
pub struct BuchbergerOptions {
    /// Picks S-pairs in a seeded random order instead of the normal strategy.
    pub pair_shuffle_seed: Option<u64>,
    /// Checked between S-pair reductions.
    pub cancel: Option<Arc<AtomicBool>>,
}

/// Reduced Gröbner basis: monic, sorted by leading monomial, descending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    vars: VarList,
    order: TermOrder,
    elems: Vec<Terms>,
}

pub(crate) fn to_terms(p: &Polynomial, order: &TermOrder) -> Terms {
    let mut t: Terms = p.terms().iter().map(|t| (t.exp.clone(), t.coeff.clone())).collect();
    t.sort_by(|a, b| order.cmp(&b.0, &a.0));
    t
}

fn from_terms(vars: &VarList, t: &[(Exponent, Coeff)]) -> Polynomial {
    Polynomial::from_terms(vars, t.iter().map(|(e, c)| (c.clone(), e.clone())))
}

fn make_monic(t: &mut Terms) {
    if let Some((_, lc)) = t.first() {
        if !lc.is_one() {
            let inv = lc.recip();
            for (_, c) in t.iter_mut() {
                *c *= &inv;
            }
        }
    }
}

/// `a - factor * x^shift * b`, both inputs sorted descending.
fn sub_scaled(
    order: &TermOrder,
    a: &[(Exponent, Coeff)],
    b: &[(Exponent, Coeff)],
    factor: &Coeff,
    shift: &Exponent,
) -> Result<Terms, GroebnerError> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bi = b.iter().map(|(e, c)| -> Result<(Exponent, Coeff), GroebnerError> {
        let e = e.mul(shift).ok_or(GroebnerError::DegreeOverflow)?;
        Ok((e, -(c * factor)))
    });
    let mut next_b = bi.next().transpose()?;
    while let Some((eb, cb)) = next_b.take() {
        while i < a.len() && order.cmp(&a[i].0, &eb) == Ordering::Greater {
            out.push(a[i].clone());
            i += 1;
        }
        if i < a.len() && a[i].0 == eb {
            let c = &a[i].1 + cb;
            if !c.is_zero() {
                out.push((eb, c));
            }
            i += 1;
        } else {
            out.push((eb, cb));
        }
        next_b = bi.next().transpose()?;
    }
    out.extend_from_slice(&a[i..]);
    Ok(out)
}

fn shifted(t: &[(Exponent, Coeff)], shift: &Exponent) -> Result<Terms, GroebnerError> {
    t.iter()
        .map(|(e, c)| Ok((e.mul(shift).ok_or(GroebnerError::DegreeOverflow)?, c.clone())))
        .collect()
}

/// Full reduction of `p` by monic `basis`.
pub(crate) fn reduce(order: &TermOrder, p: Terms, basis: &[Terms]) -> Result<Terms, GroebnerError> {
    let mut rem = Vec::new();
    let mut cur = p;
    let mut start = 0;
    while start < cur.len() {
        let e = &cur[start].0;
        match basis.iter().find(|g| g[0].0.divides(e)) {
            Some(g) => {
                let shift = g[0].0.quotient_of(e).expect("divisor");
                let factor = cur[start].1.clone();
                cur = sub_scaled(order, &cur[start + 1..], &g[1..], &factor, &shift)?;
                start = 0;
            }
            None => {
                rem.push(cur[start].clone());
                start += 1;
            }
        }
    }
    Ok(rem)
}

fn spoly(order: &TermOrder, f: &Terms, g: &Terms) -> Result<Terms, GroebnerError> {
    let l = f[0].0.lcm(&g[0].0);
    let sf = f[0].0.quotient_of(&l).expect("lcm");
    let sg = g[0].0.quotient_of(&l).expect("lcm");
    let a = shifted(&f[1..], &sf)?;
    sub_scaled(order, &a, &g[1..], &Coeff::one(), &sg)
}

struct Engine {
    grading: Grading,
    basis: Vec<Terms>,
    // (sugar-free degree of lcm, j, i) with i < j
    pending: BTreeSet<(i64, usize, usize)>,
}

impl Engine {
    fn key(&self, i: usize, j: usize) -> (i64, usize, usize) {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let l = self.basis[i][0].0.lcm(&self.basis[j][0].0);
        (self.grading.degree(&l), j, i)
    }

    fn add(&mut self, mut h: Terms) {
        make_monic(&mut h);
        let k = self.basis.len();
        self.basis.push(h);
        for i in 0..k {
            let key = self.key(i, k);
            self.pending.insert(key);
        }
    }

    fn chain_skip(&self, i: usize, j: usize) -> bool {
        let l = self.basis[i][0].0.lcm(&self.basis[j][0].0);
        (0..self.basis.len()).any(|k| {
            k != i
                && k != j
                && self.basis[k][0].0.divides(&l)
                && !self.pending.contains(&self.key(i, k))
                && !self.pending.contains(&self.key(j, k))
        })
    }
}

/// Reduced Gröbner basis with the default strategy.
pub fn buchberger(ideal: &Ideal, order: &TermOrder) -> Result<GroebnerBasis, GroebnerError> {
    buchberger_with(ideal, order, &BuchbergerOptions::default())
}

pub fn buchberger_with(
    ideal: &Ideal,
    order: &TermOrder,
    opts: &BuchbergerOptions,
) -> Result<GroebnerBasis, GroebnerError> {
    let n = ideal.nvars();
    match order.nvars() {
        None => return Err(PolyError::InvalidOrder.into()),
        Some(m) if m != n => return Err(PolyError::DimensionMismatch { expected: n, found: m }.into()),
        _ => {}
    }
    if !order.is_well_ordering(n) {
        let own = ideal.is_homogeneous();
        let std = Grading::standard(n);
        if !own && !ideal.gens().iter().all(|g| g.is_homogeneous(&std)) {
            return Err(GroebnerError::NotWellOrdered);
        }
    }
    let grading = if ideal.is_homogeneous() {
        ideal.effective_grading()
    } else {
        Grading::standard(n)
    };
    let mut eng = Engine {
        grading,
        basis: Vec::new(),
        pending: BTreeSet::new(),
    };
    let mut gens: Vec<Terms> = ideal.gens().iter().map(|g| to_terms(g, order)).collect();
    gens.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    for g in gens {
        let h = reduce(order, g, &eng.basis)?;
        if !h.is_empty() {
            eng.add(h);
        }
    }
    let mut rng = opts.pair_shuffle_seed.map(ChaCha8Rng::seed_from_u64);
    while !eng.pending.is_empty() {
        if let Some(flag) = &opts.cancel {
            if flag.load(AtomicOrdering::Relaxed) {
                return Err(GroebnerError::Cancelled);
            }
        }
        let key = match rng.as_mut() {
            Some(r) => {
                let idx = r.gen_range(0..eng.pending.len());
                *eng.pending.iter().nth(idx).expect("index in range")
            }
            None => *eng.pending.iter().next().expect("nonempty"),
        };
        eng.pending.remove(&key);
        let (_, j, i) = key;
        if eng.basis[i][0].0.is_coprime(&eng.basis[j][0].0) || eng.chain_skip(i, j) {
            continue;
        }
        let s = spoly(order, &eng.basis[i], &eng.basis[j])?;
        let h = reduce(order, s, &eng.basis)?;
        if !h.is_empty() {
            if h[0].0.is_constant() {
                return Ok(GroebnerBasis {
                    vars: ideal.vars().clone(),
                    order: order.clone(),
                    elems: vec![vec![(Exponent::zero(n), Coeff::one())]],
                });
            }
            eng.add(h);
        }
    }
    let elems = interreduce(order, eng.basis)?;
    Ok(GroebnerBasis {
        vars: ideal.vars().clone(),
        order: order.clone(),
        elems,
    })
}

fn interreduce(order: &TermOrder, basis: Vec<Terms>) -> Result<Vec<Terms>, GroebnerError> {
    let mut minimal: Vec<Terms> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lt = &g[0].0;
        let redundant = basis.iter().enumerate().any(|(m, h)| {
            m != k && h[0].0.divides(lt) && (h[0].0 != *lt || m < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Terms> = minimal
            .iter()
            .enumerate()
            .filter(|&(m, _)| m != k)
            .map(|(_, h)| h.clone())
            .collect();
        let head = minimal[k][0].clone();
        let tail = reduce(order, minimal[k][1..].to_vec(), &others)?;
        let mut g = vec![head];
        g.extend(tail);
        make_monic(&mut g);
        out.push(g);
    }
    out.sort_by(|a, b| order.cmp(&b[0].0, &a[0].0));
    Ok(out)
}

impl GroebnerBasis {
    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// The basis elements as polynomials.
    pub fn elements(&self) -> Vec<Polynomial> {
        self.elems.iter().map(|t| from_terms(&self.vars, t)).collect()
    }

    pub fn leading_exponents(&self) -> Vec<Exponent> {
        self.elems.iter().map(|t| t[0].0.clone()).collect()
    }

    /// Elements as `(exponent, coefficient)` lists in descending order.
    pub fn marked(&self) -> &[Terms] {
        &self.elems
    }

    pub fn is_unit(&self) -> bool {
        self.elems.len() == 1 && self.elems[0][0].0.is_constant()
    }

    /// Remainder of `p` on division by the basis.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial, GroebnerError> {
        if !p.vars().same(&self.vars) {
            return Err(PolyError::VariableMismatch.into());
        }
        let r = reduce(&self.order, to_terms(p, &self.order), &self.elems)?;
        Ok(from_terms(&self.vars, &r))
    }

    /// Whether `e` is divisible by no leading monomial.
    pub fn is_standard(&self, e: &Exponent) -> bool {
        !self.elems.iter().any(|g| g[0].0.divides(e))
    }

    pub fn to_ideal(&self, grading: Option<Grading>) -> Ideal {
        let gens = self.elements();
        let ideal = Ideal::new(&self.vars, gens).expect("same variables");
        ideal.clone().with_grading(grading).unwrap_or(ideal)
    }

    /// Generators printed under the basis order, one per line.
    pub fn lines(&self) -> Vec<String> {
        self.elements()
            .iter()
            .map(|p| crate::polycore::format_polynomial(p, &self.order))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{parse_polynomial, Convention};

    fn gb_strings(vars: &[&str], gens: &[&str], order: &TermOrder) -> Vec<String> {
        let i = Ideal::parse(vars, gens).unwrap();
        buchberger(&i, order).unwrap().lines()
    }

    #[test]
    fn twisted_cubic_lex() {
        let g = gb_strings(&["x", "y", "z"], &["y - x^2", "z - x^3"], &TermOrder::lex(3));
        assert_eq!(g, vec!["x^2 - y", "x*y - z", "x*z - y^2", "y^3 - z^2"]);
    }

    #[test]
    fn unit_ideal() {
        let i = Ideal::parse(&["x", "y"], &["x*y - 1", "x"]).unwrap();
        let gb = buchberger(&i, &TermOrder::degrevlex(2)).unwrap();
        assert!(gb.is_unit());
        assert_eq!(gb.lines(), vec!["1"]);
    }

    #[test]
    fn zero_ideal() {
        let i = Ideal::parse(&["x"], &["0"]).unwrap();
        assert!(buchberger(&i, &TermOrder::lex(1)).unwrap().is_empty());
    }

    #[test]
    fn normal_form_reduces_members_to_zero() {
        let i = Ideal::parse(&["x", "y", "z"], &["x*y - z", "y^2 - x*z"]).unwrap();
        let gb = buchberger(&i, &TermOrder::degrevlex(3)).unwrap();
        let p = parse_polynomial("x^2*y - x*z + y^3 - x*y*z", i.vars()).unwrap();
        assert!(gb.normal_form(&p).unwrap().is_zero());
        let q = parse_polynomial("x + 1", i.vars()).unwrap();
        assert_eq!(gb.normal_form(&q).unwrap(), q);
    }

    #[test]
    fn weight_order_on_homogeneous_input() {
        let i = Ideal::parse(&["x", "y", "z"], &["y^2*z - x^3 - x*z^2"]).unwrap();
        let o = TermOrder::weight(vec![0, -1, -1], Convention::Min);
        assert!(o.is_well_ordering(3));
        let gb = buchberger(&i, &o).unwrap();
        assert_eq!(gb.lines(), vec!["y^2*z - x*z^2 - x^3"]);
        // under max the same weights make y and z smaller than 1
        let o = TermOrder::weight(vec![0, -1, -1], Convention::Max);
        assert!(!o.is_well_ordering(3));
        let gb = buchberger(&i, &o).unwrap();
        assert_eq!(gb.lines(), vec!["x^3 + x*z^2 - y^2*z"]);
        let bad = Ideal::parse(&["x", "y", "z"], &["y - x^2"]).unwrap();
        assert_eq!(buchberger(&bad, &o), Err(GroebnerError::NotWellOrdered));
    }

    #[test]
    fn order_size_checked() {
        let i = Ideal::parse(&["x", "y"], &["x"]).unwrap();
        assert!(matches!(
            buchberger(&i, &TermOrder::lex(3)),
            Err(GroebnerError::Poly(PolyError::DimensionMismatch { .. }))
        ));
    }

    #[test]
    fn cancellation_flag() {
        let i = Ideal::parse(&["x", "y", "z"], &["x*y - z", "y^2 - x*z", "z^2 - x"]).unwrap();
        let flag = Arc::new(AtomicBool::new(true));
        let opts = BuchbergerOptions {
            pair_shuffle_seed: None,
            cancel: Some(flag),
        };
        assert_eq!(
            buchberger_with(&i, &TermOrder::lex(3), &opts),
            Err(GroebnerError::Cancelled)
        );
    }

    #[test]
    fn shuffled_pairs_give_same_basis() {
        let i = Ideal::parse(
            &["a", "b", "c", "d"],
            &["a*d - b*c", "a*c - b^2", "b*d - c^2"],
        )
        .unwrap();
        let o = TermOrder::lex(4);
        let base = buchberger(&i, &o).unwrap();
        for seed in 0..20 {
            let opts = BuchbergerOptions {
                pair_shuffle_seed: Some(seed),
                cancel: None,
            };
            assert_eq!(buchberger_with(&i, &o, &opts).unwrap(), base);
        }
    }

    #[test]
    fn exponent_overflow_reported() {
        let i = Ideal::parse(&["x", "y"], &["x*y^4294967295 + y^4294967295", "x^2 + y"]).unwrap();
        assert_eq!(
            buchberger(&i, &TermOrder::lex(2)),
            Err(GroebnerError::DegreeOverflow)
        );
    }
}
