use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

fn row_axpy(m: &mut IntMatrix, target: usize, q: &BigInt, src: usize) {
    // row_target -= q * row_src
    let srow = m.row(src).to_vec();
    for (t, s) in m.row_mut(target).iter_mut().zip(srow) {
        *t -= q * s;
    }
}

fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    let ra = m.row(a).to_vec();
    let rb = m.row(b).to_vec();
    m.row_mut(a).clone_from_slice(&rb);
    m.row_mut(b).clone_from_slice(&ra);
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for x in m.row_mut(r) {
        *x = -std::mem::take(x);
    }
}

/// Row-style Hermite normal form: returns `(H, U)` with `H = U·A`, `U`
/// unimodular, pivots positive and entries above each pivot in `[0, pivot)`.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut r = 0;
    for col in 0..n {
        if r == m {
            break;
        }
        loop {
            let best = (r..m)
                .filter(|&i| !h.get(i, col).is_zero())
                .min_by(|&i, &j| h.get(i, col).abs().cmp(&h.get(j, col).abs()));
            let Some(k) = best else { break };
            swap_rows(&mut h, r, k);
            swap_rows(&mut u, r, k);
            let p = h.get(r, col).clone();
            let mut done = true;
            for i in r + 1..m {
                if h.get(i, col).is_zero() {
                    continue;
                }
                let q = h.get(i, col).div_floor(&p);
                row_axpy(&mut h, i, &q, r);
                row_axpy(&mut u, i, &q, r);
                if !h.get(i, col).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(r, col).is_zero() {
            continue;
        }
        if h.get(r, col).is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        let p = h.get(r, col).clone();
        for i in 0..r {
            let q = h.get(i, col).div_floor(&p);
            if !q.is_zero() {
                row_axpy(&mut h, i, &q, r);
                row_axpy(&mut u, i, &q, r);
            }
        }
        r += 1;
    }
    (h, u)
}

/// Basis of `{u ∈ ℤ^cols : A u = 0}`, in Hermite normal form.
pub fn kernel_lattice(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let n = a.cols();
    if n == 0 {
        return Vec::new();
    }
    let (h, u) = hermite_normal_form(&a.transpose());
    let basis: Vec<Vec<BigInt>> = (0..n)
        .filter(|&i| h.row(i).iter().all(|x| x.is_zero()))
        .map(|i| u.row(i).to_vec())
        .collect();
    if basis.is_empty() {
        return basis;
    }
    let (hb, _) = hermite_normal_form(&IntMatrix::from_big_rows(basis).expect("rectangular"));
    (0..hb.rows())
        .map(|i| hb.row(i).to_vec())
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identity_is_fixed() {
        let i = IntMatrix::identity(3);
        let (h, u) = hermite_normal_form(&i);
        assert_eq!(h, i);
        assert_eq!(u, i);
    }

    #[test]
    fn gcd_pivot() {
        let a = IntMatrix::from_rows(&[vec![6], vec![4]]).unwrap();
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(h, IntMatrix::from_rows(&[vec![2], vec![0]]).unwrap());
        assert_eq!(u.determinant().unwrap().abs(), BigInt::one());
    }

    #[test]
    fn reduces_above_pivots() {
        let a = IntMatrix::from_rows(&[vec![2, 3, 6], vec![0, 5, 1]]).unwrap();
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(u.mul(&a).unwrap(), h);
        // pivot 5 in column 1; entry above lies in [0, 5)
        assert_eq!(h.get(0, 0), &BigInt::from(2));
        assert_eq!(h.get(1, 1), &BigInt::from(5));
        assert!(h.get(0, 1) >= &BigInt::zero() && h.get(0, 1) < &BigInt::from(5));
    }

    #[test]
    fn elliptic_kernel() {
        let a = IntMatrix::from_rows(&[vec![1, 1, 1], vec![0, 1, 3]]).unwrap();
        assert_eq!(kernel_lattice(&a), vec![big(&[2, -3, 1])]);
    }

    #[test]
    fn twisted_cubic_kernel() {
        let a = IntMatrix::from_columns(&[vec![1, 3], vec![1, 2], vec![1, 1], vec![1, 0]]).unwrap();
        let k = kernel_lattice(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
        // (1,-2,1,0) and (0,1,-2,1) lie in the lattice: it has index 1 in their span
        let span = IntMatrix::from_big_rows(vec![big(&[1, -2, 1, 0]), big(&[0, 1, -2, 1])]).unwrap();
        let (hs, _) = hermite_normal_form(&span);
        let kb = IntMatrix::from_big_rows(k).unwrap();
        assert_eq!(hs, kb);
    }

    #[test]
    fn full_column_rank_has_trivial_kernel() {
        assert!(kernel_lattice(&IntMatrix::identity(4)).is_empty());
    }

    #[test]
    fn saturated_kernel() {
        // 2x + 4y = 0 has kernel generated by (2,-1), not (4,-2)
        let a = IntMatrix::from_rows(&[vec![2, 4]]).unwrap();
        assert_eq!(kernel_lattice(&a), vec![big(&[2, -1])]);
    }
}
