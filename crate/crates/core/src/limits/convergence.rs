use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::construction::{derive, ConstructionError, ConstructionParams};
use crate::exact::{big, int, pow_int, scalar_to_string, to_decimal, Scalar};

use super::{nth_root_interval, RootInterval, ROOT_DIGITS};

/// One row of the convergence table for a target `x`.
#[derive(Debug, Clone)]
pub struct ConvergenceRow {
    pub x: Scalar,
    pub epsilon: Scalar,
    pub b: u64,
    pub m: BigInt,
    pub r: u64,
    pub n_m: u32,
    pub params: ConstructionParams,
    pub a: BigInt,
    pub p: BigInt,
    pub q: BigInt,
    /// Enclosure of the certified lower bound `p^{1/n}`.
    pub root: RootInterval,
    /// Upper end of `x − p^{1/n}`.
    pub gap: Scalar,
    /// `6b²/(n_m + 1)`.
    pub delta_bound: Scalar,
    /// `ε + 24/(n_m·ε²)`.
    pub gap_bound: Scalar,
    /// `n_m = 1`: no power of `b` beyond the first fits under `x`.
    pub degenerate: bool,
}

fn invalid(msg: String) -> ConstructionError {
    ConstructionError::InvalidParams(msg)
}

/// For each `x`: `b = ⌊1/ε⌋ + 1`, `m = ⌊x⌋`, `r = ⌊b(x − m)⌋`,
/// `n_m = max{n : b^n ≤ m}` and the family member
/// `(n_m + 1, 1, b, r, m − b^{n_m})`, whose ratio `a/b = m + r/b` lies
/// within `1/b` below `x`.
pub fn convergence_table(xs: &[Scalar], epsilon: &Scalar) -> Result<Vec<ConvergenceRow>, ConstructionError> {
    if epsilon <= &Scalar::zero() || epsilon > &Scalar::one() {
        return Err(invalid(format!(
            "epsilon must lie in (0, 1], got {}",
            scalar_to_string(epsilon)
        )));
    }
    let b_big: BigInt = epsilon.recip().floor().to_integer() + 1;
    let b = b_big
        .to_u64()
        .ok_or_else(|| invalid("epsilon too small".into()))?;
    xs.iter().map(|x| row(x, epsilon, b)).collect()
}

fn row(x: &Scalar, epsilon: &Scalar, b: u64) -> Result<ConvergenceRow, ConstructionError> {
    let b_big = BigInt::from(b);
    if x < &big(b_big.clone()) {
        return Err(invalid(format!(
            "x = {} is below b = {b}",
            scalar_to_string(x)
        )));
    }
    let m = x.floor().to_integer();
    let r = (big(b_big.clone()) * (x - big(m.clone())))
        .floor()
        .to_integer()
        .to_u64()
        .expect("r < b");
    let mut n_m = 1u32;
    while pow_int(&b_big, n_m + 1) <= m {
        n_m += 1;
    }
    let s = (&m - pow_int(&b_big, n_m))
        .to_u64()
        .ok_or_else(|| invalid("x too large".into()))?;
    let params = ConstructionParams::new(n_m + 1, 1, b, r, s)?;
    let t = derive(&params)?;
    let root = nth_root_interval(&t.p, params.n, ROOT_DIGITS);
    let gap = x - &root.lower;
    let delta_bound = int(6) * big(&b_big * &b_big) / int(i64::from(n_m) + 1);
    let gap_bound = epsilon + int(24) / (int(i64::from(n_m)) * epsilon * epsilon);
    Ok(ConvergenceRow {
        x: x.clone(),
        epsilon: epsilon.clone(),
        b,
        m,
        r,
        n_m,
        params,
        a: t.a,
        p: t.p,
        q: t.q,
        root,
        gap,
        delta_bound,
        gap_bound,
        degenerate: n_m == 1,
    })
}

pub fn convergence_csv(rows: &[ConvergenceRow]) -> String {
    let mut out = String::from(
        "x,epsilon,b,m,r,n_m,n,k,s,a,p,q,root_lower,gap_upper,delta_bound,gap_bound,degenerate\n",
    );
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            scalar_to_string(&row.x),
            scalar_to_string(&row.epsilon),
            row.b,
            row.m,
            row.r,
            row.n_m,
            row.params.n,
            row.params.k,
            row.params.s,
            row.a,
            row.p,
            row.q,
            to_decimal(&row.root.lower, 12),
            to_decimal(&row.gap, 12),
            scalar_to_string(&row.delta_bound),
            scalar_to_string(&row.gap_bound),
            row.degenerate
        ));
    }
    out
}
