use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent vector of a monomial over a fixed variable list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(entries: Vec<u32>) -> Self {
        Exponent(entries)
    }

    pub fn zero(nvars: usize) -> Self {
        Exponent(vec![0; nvars])
    }

    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        Exponent(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Total (standard) degree.
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn dot(&self, weights: &[i64]) -> i128 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i128 * w as i128)
            .sum()
    }

    /// Product of monomials; `None` on `u32` overflow.
    pub fn mul(&self, other: &Exponent) -> Option<Exponent> {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Vec<_>>>()
            .map(Exponent)
    }

    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &Exponent) -> Option<Exponent> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| b.checked_sub(*a))
            .collect::<Option<Vec<_>>>()
            .map(Exponent)
    }

    pub fn lcm(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn with(&self, var: usize, value: u32) -> Exponent {
        let mut e = self.0.clone();
        e[var] = value;
        Exponent(e)
    }

    /// Exponent restricted to / re-indexed by `map[i]` = position in the new list.
    pub fn remap(&self, map: &[usize], new_len: usize) -> Exponent {
        let mut e = vec![0; new_len];
        for (i, &x) in self.0.iter().enumerate() {
            if x != 0 {
                e[map[i]] = x;
            }
        }
        Exponent(e)
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<u32>> for Exponent {
    fn from(v: Vec<u32>) -> Self {
        Exponent(v)
    }
}

impl From<&[u32]> for Exponent {
    fn from(v: &[u32]) -> Self {
        Exponent(v.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lcm_and_division() {
        let a = Exponent::new(vec![2, 0, 1]);
        let b = Exponent::new(vec![1, 3, 0]);
        assert_eq!(a.lcm(&b), Exponent::new(vec![2, 3, 1]));
        assert!(a.divides(&a.lcm(&b)));
        assert_eq!(a.quotient_of(&a.lcm(&b)), Some(Exponent::new(vec![0, 3, 0])));
        assert_eq!(a.quotient_of(&b), None);
        assert!(!a.is_coprime(&b));
        assert!(Exponent::new(vec![1, 0]).is_coprime(&Exponent::new(vec![0, 4])));
    }

    #[test]
    fn overflow_is_detected() {
        let a = Exponent::new(vec![u32::MAX]);
        assert_eq!(a.mul(&Exponent::new(vec![1])), None);
    }
}
