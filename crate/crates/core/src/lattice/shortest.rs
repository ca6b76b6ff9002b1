//! Exact ℓ∞ minimum distance of a p-ary lattice.
//!
//! Two independent routes:
//! * coset scan: every coset of `pZ^n` in `Λ` has a shortest member whose
//!   coordinates are the centered residues, because the ∞-norm minimizes
//!   coordinate by coordinate. Needs `|det B|` cosets enumerated.
//! * coefficient box: a lattice vector `v = Ax` with `‖v‖∞ ≤ U` has
//!   `x = Bv/p`, so `|x_i| ≤ U·Σ_j|B_ij| / p`. Enumerating that box for a
//!   doubling sequence of `U` finds the minimum without touching the
//!   quotient group, which keeps huge `p` tractable.

use std::ops::{AddAssign, Mul, SubAssign};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{centered, LatticeError, PAryLattice, SubgroupSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LambdaMethod {
    CosetScan,
    CoefficientBox,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaInf {
    pub value: BigInt,
    pub method: LambdaMethod,
}

/// Minimum over nonzero elements of `S` of the centered ∞-norm, and `p`
/// for the zero coset.
pub fn lambda_inf_coset_scan(subgroup: &SubgroupSet) -> u64 {
    let p = subgroup.modulus();
    subgroup
        .iter()
        .filter(|e| e.iter().any(|&x| x != 0))
        .map(|e| {
            e.iter()
                .map(|&x| centered(x, p).unsigned_abs() as u64)
                .max()
                .unwrap_or(0)
        })
        .fold(p, u64::min)
}

/// Coefficient-box enumeration; `cap` bounds the number of coefficient
/// vectors visited in a single round.
pub fn lambda_inf_coefficient_box(lattice: &PAryLattice, cap: u64) -> Result<BigInt, LatticeError> {
    let n = lattice.dim();
    let a = lattice.basis().to_integers().ok_or(LatticeError::NonIntegral)?;
    let b = lattice.witness().to_integers().ok_or(LatticeError::NonIntegral)?;
    let p = lattice.modulus().clone();
    let row_sums: Vec<BigInt> = (0..n)
        .map(|i| (0..n).map(|j| b[i * n + j].abs()).sum())
        .collect();

    let mut bound = BigInt::from(1);
    loop {
        let halfwidths: Vec<BigInt> = row_sums.iter().map(|r| &bound * r / &p).collect();
        if halfwidths.iter().all(Zero::is_zero) {
            bound = next_bound(&bound, &p);
            continue;
        }
        let mut volume = BigInt::from(1);
        for h in &halfwidths {
            volume *= 2 * h + 1;
        }
        if volume > BigInt::from(cap) {
            return Err(LatticeError::CapExceeded {
                what: "coefficient box",
                cap,
            });
        }
        let h: Vec<i64> = halfwidths
            .iter()
            .map(|h| h.to_i64().expect("bounded by cap"))
            .collect();

        // largest |v_i| reachable inside the box decides the integer width
        let reach = (0..n)
            .map(|i| (0..n).map(|j| a[i * n + j].abs() * (2 * h[j] + 1)).sum::<BigInt>())
            .max()
            .unwrap_or_default();
        let best = if reach.bits() < 120 {
            let a128: Vec<i128> = a.iter().map(|x| x.to_i128().expect("fits")).collect();
            box_minimum(&a128, n, &h).map(BigInt::from)
        } else {
            box_minimum(&a, n, &h)
        };
        if let Some(best) = best {
            if best <= bound {
                return Ok(best);
            }
        }
        bound = next_bound(&bound, &p);
    }
}

fn next_bound(bound: &BigInt, p: &BigInt) -> BigInt {
    let doubled = bound * 2;
    if &doubled > p {
        p.clone()
    } else {
        doubled
    }
}

/// Smallest `‖Ax‖∞` over nonzero integer `x` with `|x_j| ≤ h_j`, walking the
/// box in odometer order and updating `Ax` one column at a time.
fn box_minimum<T>(a: &[T], n: usize, h: &[i64]) -> Option<T>
where
    T: Clone + Ord + Signed + From<i64> + for<'x> AddAssign<&'x T> + for<'x> SubAssign<&'x T>,
    for<'x> &'x T: Mul<&'x T, Output = T>,
{
    let col = |j: usize| -> Vec<T> { (0..n).map(|i| a[i * n + j].clone()).collect() };
    let cols: Vec<Vec<T>> = (0..n).map(col).collect();
    let wraps: Vec<Vec<T>> = (0..n)
        .map(|j| {
            let w = T::from(2 * h[j]);
            cols[j].iter().map(|c| c * &w).collect()
        })
        .collect();

    let mut x: Vec<i64> = h.iter().map(|&v| -v).collect();
    let mut v: Vec<T> = (0..n)
        .map(|i| {
            let mut acc = T::zero();
            for j in 0..n {
                acc += &(&a[i * n + j] * &T::from(x[j]));
            }
            acc
        })
        .collect();
    let mut best: Option<T> = None;
    loop {
        if x.iter().any(|&c| c != 0) {
            let mut norm = T::zero();
            let mut pruned = false;
            for c in &v {
                let m = c.abs();
                if m > norm {
                    norm = m;
                    if best.as_ref().is_some_and(|b| &norm >= b) {
                        pruned = true;
                        break;
                    }
                }
            }
            if !pruned {
                best = Some(norm);
            }
        }
        let mut j = 0;
        loop {
            if j == n {
                return best;
            }
            if x[j] < h[j] {
                x[j] += 1;
                for (vi, ci) in v.iter_mut().zip(&cols[j]) {
                    *vi += ci;
                }
                break;
            }
            x[j] = -h[j];
            for (vi, wi) in v.iter_mut().zip(&wraps[j]) {
                *vi -= wi;
            }
            j += 1;
        }
    }
}

/// `λ∞(Λ)`: coset scan when the quotient has at most `enumeration_cap`
/// elements and `p` fits in 64 bits, coefficient box otherwise.
pub fn lambda_inf(
    lattice: &PAryLattice,
    enumeration_cap: u64,
    box_cap: u64,
) -> Result<LambdaInf, LatticeError> {
    if lattice.modulus().to_u64().is_some() && lattice.index() <= BigInt::from(enumeration_cap) {
        let s = lattice.subgroup(enumeration_cap)?;
        return Ok(LambdaInf {
            value: BigInt::from(lambda_inf_coset_scan(&s)),
            method: LambdaMethod::CosetScan,
        });
    }
    Ok(LambdaInf {
        value: lambda_inf_coefficient_box(lattice, box_cap)?,
        method: LambdaMethod::CoefficientBox,
    })
}
