//! Exact rational linear systems: hull membership by phase-one simplex, and
//! projection by Gaussian elimination on equalities and Fourier–Motzkin on
//! inequalities.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::polycore::Coeff;

/// `a · x (= or ≤) b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Row {
    pub a: Vec<Coeff>,
    pub b: Coeff,
}

impl Row {
    fn is_constant(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }

    /// `self - k * other`.
    fn minus(&self, k: &Coeff, other: &Row) -> Row {
        Row {
            a: self.a.iter().zip(&other.a).map(|(x, y)| x - k * y).collect(),
            b: &self.b - k * &other.b,
        }
    }

    fn scaled(&self, k: &Coeff) -> Row {
        Row {
            a: self.a.iter().map(|x| x * k).collect(),
            b: &self.b * k,
        }
    }

    /// Positive rescaling making the first nonzero coefficient ±1.
    fn normalized(self) -> Row {
        match self.a.iter().find(|x| !x.is_zero()) {
            Some(lead) => {
                let k = lead.abs().recip();
                self.scaled(&k)
            }
            None => self,
        }
    }
}

/// Constraint system with equalities and `≤` inequalities.
#[derive(Clone, Debug, Default)]
pub(crate) struct System {
    pub eqs: Vec<Row>,
    pub ineqs: Vec<Row>,
}

impl System {
    /// Removes constant rows; `false` if one of them is violated.
    fn settle(&mut self) -> bool {
        let mut ok = true;
        self.eqs.retain(|r| {
            if r.is_constant() {
                ok &= r.b.is_zero();
                false
            } else {
                true
            }
        });
        self.ineqs.retain(|r| {
            if r.is_constant() {
                ok &= !r.b.is_negative();
                false
            } else {
                true
            }
        });
        let set: BTreeSet<Row> = self.ineqs.drain(..).map(Row::normalized).collect();
        self.ineqs = set.into_iter().collect();
        ok
    }

    /// Eliminates variable `v`; `false` when the system is found infeasible.
    fn eliminate(&mut self, v: usize) -> bool {
        if let Some(k) = self.eqs.iter().position(|e| !e.a[v].is_zero()) {
            let e = self.eqs.remove(k);
            let piv = e.a[v].clone();
            for r in self.eqs.iter_mut().chain(self.ineqs.iter_mut()) {
                if !r.a[v].is_zero() {
                    let k = &r.a[v] / &piv;
                    *r = r.minus(&k, &e);
                }
            }
        } else {
            let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
            for r in self.ineqs.drain(..) {
                if r.a[v].is_positive() {
                    pos.push(r);
                } else if r.a[v].is_negative() {
                    neg.push(r);
                } else {
                    rest.push(r);
                }
            }
            for p in &pos {
                let p = p.scaled(&p.a[v].recip());
                for n in &neg {
                    let n = n.scaled(&(-n.a[v].recip()));
                    let mut sum = Row {
                        a: p.a.iter().zip(&n.a).map(|(x, y)| x + y).collect(),
                        b: &p.b + &n.b,
                    };
                    sum.a[v] = Coeff::zero();
                    rest.push(sum);
                }
            }
            self.ineqs = rest;
        }
        self.settle()
    }

    /// Projects away the listed variables. `None` means infeasible.
    pub fn project(mut self, vars: &[usize]) -> Option<System> {
        if !self.settle() {
            return None;
        }
        for &v in vars {
            if !self.eliminate(v) {
                return None;
            }
        }
        Some(self)
    }
}

/// Whether `p` lies in the convex hull of `points`: feasibility of
/// `Σ λ_j q_j = p, Σ λ_j = 1, λ ≥ 0` by phase-one simplex with Bland's rule.
pub(crate) fn in_hull(points: &[Vec<Coeff>], p: &[Coeff]) -> bool {
    let k = points.len();
    if k == 0 {
        return false;
    }
    let mut rows: Vec<Vec<Coeff>> = Vec::with_capacity(p.len() + 1);
    for (i, pi) in p.iter().enumerate() {
        let mut r: Vec<Coeff> = points.iter().map(|q| q[i].clone()).collect();
        r.push(pi.clone());
        rows.push(r);
    }
    rows.push(vec![Coeff::one(); k + 1]);
    phase_one_feasible(rows)
}

/// `rows[r] = (a_r | b_r)`; decides whether `A λ = b, λ ≥ 0` has a solution.
fn phase_one_feasible(mut rows: Vec<Vec<Coeff>>) -> bool {
    let m = rows.len();
    let n = rows[0].len() - 1;
    // tableau columns: n structural, m artificial, rhs
    let width = n + m + 1;
    let mut t: Vec<Vec<Coeff>> = rows
        .drain(..)
        .enumerate()
        .map(|(r, row)| {
            let sign = if row[n].is_negative() { -Coeff::one() } else { Coeff::one() };
            let mut out = vec![Coeff::zero(); width];
            for j in 0..n {
                out[j] = &row[j] * &sign;
            }
            out[n + r] = Coeff::one();
            out[width - 1] = &row[n] * &sign;
            out
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    // reduced costs of Σ artificials
    let mut cost = vec![Coeff::zero(); width];
    for row in &t {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[width - 1] -= &row[width - 1];
    }
    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Coeff)> = None;
        for r in 0..m {
            if t[r][enter].is_positive() {
                let ratio = &t[r][width - 1] / &t[r][enter];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*l]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        // the phase-one objective is bounded below by 0
        let (r, _) = leave.expect("bounded phase-one problem");
        let piv = t[r][enter].clone();
        for x in t[r].iter_mut() {
            *x /= &piv;
        }
        let src = t[r].clone();
        for (q, row) in t.iter_mut().enumerate() {
            if q != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, y) in row.iter_mut().zip(&src) {
                    *x -= &f * y;
                }
            }
        }
        let f = cost[enter].clone();
        for (x, y) in cost.iter_mut().zip(&src) {
            *x -= &f * y;
        }
        basis[r] = enter;
    }
    cost[width - 1].is_zero()
}

/// Equalities and inequalities in `x` describing `conv(points)`.
pub(crate) fn hull_constraints(points: &[Vec<Coeff>], dim: usize) -> System {
    let k = points.len();
    // variables: x_0..x_{dim-1}, then λ_0..λ_{k-1}
    let n = dim + k;
    let mut sys = System::default();
    for i in 0..dim {
        let mut a = vec![Coeff::zero(); n];
        a[i] = -Coeff::one();
        for (j, q) in points.iter().enumerate() {
            a[dim + j] = q[i].clone();
        }
        sys.eqs.push(Row { a, b: Coeff::zero() });
    }
    let mut a = vec![Coeff::zero(); n];
    for j in 0..k {
        a[dim + j] = Coeff::one();
    }
    sys.eqs.push(Row {
        a,
        b: Coeff::one(),
    });
    for j in 0..k {
        let mut a = vec![Coeff::zero(); n];
        a[dim + j] = -Coeff::one();
        sys.ineqs.push(Row { a, b: Coeff::zero() });
    }
    let lambdas: Vec<usize> = (dim..n).collect();
    let mut out = sys.project(&lambdas).expect("hull of a nonempty set is nonempty");
    for r in out.eqs.iter_mut().chain(out.ineqs.iter_mut()) {
        r.a.truncate(dim);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{integer, rational};

    fn pt(v: &[i64]) -> Vec<Coeff> {
        v.iter().map(|&x| integer(x)).collect()
    }

    #[test]
    fn square_membership() {
        let sq = vec![pt(&[0, 0]), pt(&[2, 0]), pt(&[0, 2]), pt(&[2, 2])];
        assert!(in_hull(&sq, &pt(&[1, 1])));
        assert!(in_hull(&sq, &pt(&[2, 0])));
        assert!(!in_hull(&sq, &pt(&[3, 1])));
        assert!(!in_hull(&sq, &[rational(5, 2), integer(0)]));
    }

    #[test]
    fn segment_in_plane() {
        let seg = vec![pt(&[0, 0]), pt(&[2, 2])];
        assert!(in_hull(&seg, &pt(&[1, 1])));
        assert!(!in_hull(&seg, &pt(&[1, 0])));
    }

    #[test]
    fn triangle_constraints() {
        let tri = vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1])];
        let sys = hull_constraints(&tri, 2);
        assert!(sys.eqs.is_empty());
        assert_eq!(sys.ineqs.len(), 3);
        let inside = |x: &[Coeff]| {
            sys.ineqs
                .iter()
                .all(|r| r.a.iter().zip(x).map(|(a, b)| a * b).sum::<Coeff>() <= r.b)
        };
        assert!(inside(&[rational(1, 3), rational(1, 3)]));
        assert!(!inside(&[integer(1), integer(1)]));
    }
}
