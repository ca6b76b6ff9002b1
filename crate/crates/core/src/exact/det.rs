use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{ExactMatrix, Scalar};

/// Fraction-free (Bareiss) determinant of a row-major integer matrix.
pub fn bareiss_det(entries: &[BigInt], order: usize) -> BigInt {
    assert_eq!(entries.len(), order * order);
    let mut a = entries.to_vec();
    let idx = |i: usize, j: usize| i * order + j;
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..order {
        if a[idx(k, k)].is_zero() {
            let Some(swap) = (k + 1..order).find(|&r| !a[idx(r, k)].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..order {
                a.swap(idx(k, j), idx(swap, j));
            }
            sign = -sign;
        }
        for i in k + 1..order {
            for j in k + 1..order {
                let v = &a[idx(i, j)] * &a[idx(k, k)] - &a[idx(i, k)] * &a[idx(k, j)];
                // exact by Sylvester's identity
                a[idx(i, j)] = v / &prev;
            }
        }
        prev = a[idx(k, k)].clone();
    }
    sign * &a[idx(order - 1, order - 1)]
}

/// Determinant by Gaussian elimination over the rationals.
pub fn gaussian_det(m: &ExactMatrix) -> Scalar {
    let n = m.order();
    let mut work = m.clone();
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !work.get(r, col).is_zero()) else {
            return Scalar::zero();
        };
        if pivot != col {
            work.swap_rows(pivot, col);
            det = -det;
        }
        let p = work.get(col, col).clone();
        det *= &p;
        for r in col + 1..n {
            if work.get(r, col).is_zero() {
                continue;
            }
            let factor = work.get(r, col) / &p;
            for j in col..n {
                let v = work.get(r, j) - &factor * work.get(col, j);
                work.set(r, j, v);
            }
        }
    }
    det
}
